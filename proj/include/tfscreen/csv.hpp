#ifndef TFSCREEN_CSV_HPP
#define TFSCREEN_CSV_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace tfscreen {

/// Read a whole file into memory, transparently inflating gzip.
std::string read_file(const std::string& path);

/// Split into lines; handles \n and \r\n, drops a trailing empty line.
std::vector<std::string> split_lines(const std::string& text);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

/// Parsed delimited table (RFC 4180 quoting for CSV).
struct ParsedTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column position, or throws naming the column and file.
    std::size_t col(const std::string& name, const std::string& context) const;
    /// Column position, or npos.
    std::size_t find_col(const std::string& name) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Parse CSV text (quotes, embedded separators/newlines). First record is
/// the header.
ParsedTable parse_csv(const std::string& text);
ParsedTable read_csv(const std::string& path);

/// One output cell; doubles are emitted with full round-trip precision.
using Cell = std::variant<std::string, double, std::int64_t, bool>;
using Row = std::vector<Cell>;

/// Write rows as CSV with a header, RFC 4180 quoting, byte-deterministic.
void write_table(const std::string& path, const std::vector<std::string>& columns,
                 const std::vector<Row>& rows);

/// Serialize one table to a string (write_table's backing).
std::string render_table(const std::vector<std::string>& columns, const std::vector<Row>& rows);

/// Write raw bytes (creates parent directories).
void write_file(const std::string& path, const std::string& bytes);

}  // namespace tfscreen

#endif
