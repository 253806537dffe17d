#ifndef TFSCREEN_COMMON_HPP
#define TFSCREEN_COMMON_HPP

#include <functional>
#include <stdexcept>
#include <string>

namespace tfscreen {

inline constexpr const char* kVersion = "0.1.0";

/// Non-fatal diagnostics (deduplicated inputs, skipped rows, ...) are
/// reported through a sink so callers and tests can capture them.
using WarningSink = std::function<void(const std::string&)>;

void warn_to_stderr(const std::string& msg);

/// Collects warnings into a vector; handy in tests.
struct WarningCollector {
    std::vector<std::string> messages;
    WarningSink sink() {
        return [this](const std::string& m) { messages.push_back(m); };
    }
};

}  // namespace tfscreen

#endif
