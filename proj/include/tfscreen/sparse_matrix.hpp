#ifndef TFSCREEN_SPARSE_MATRIX_HPP
#define TFSCREEN_SPARSE_MATRIX_HPP

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tfscreen/common.hpp"

namespace tfscreen {

/// Row-major (cell-major) sparse matrix with named axes. Entries within a
/// row are sorted by gene index and strictly positive; absent entries are
/// zero. Instances are treated as immutable after construction, so they can
/// be shared freely across worker threads.
template <typename T>
class SparseMatrix {
public:
    SparseMatrix() = default;

    /// Build from per-entry triplets. Validates identifier uniqueness, index
    /// ranges, duplicate coordinates and (for counts) non-negativity.
    static SparseMatrix from_triplets(std::vector<std::string> cell_ids,
                                      std::vector<std::string> gene_ids,
                                      std::vector<std::tuple<std::uint32_t, std::uint32_t, T>> entries);

    std::size_t n_cells() const { return cell_ids_.size(); }
    std::size_t n_genes() const { return gene_ids_.size(); }
    std::size_t n_entries() const { return values_.size(); }

    const std::vector<std::string>& cell_ids() const { return cell_ids_; }
    const std::vector<std::string>& gene_ids() const { return gene_ids_; }

    /// Index of a cell id, or throws naming the id.
    std::size_t cell_index(const std::string& id) const;
    /// Index of a gene id, or npos when absent.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t find_gene(const std::string& id) const;
    std::size_t find_cell(const std::string& id) const;

    /// Entries of one row as parallel spans (gene indices ascending).
    std::span<const std::uint32_t> row_genes(std::size_t cell) const {
        return {col_idx_.data() + row_ptr_[cell], col_idx_.data() + row_ptr_[cell + 1]};
    }
    std::span<const T> row_values(std::size_t cell) const {
        return {values_.data() + row_ptr_[cell], values_.data() + row_ptr_[cell + 1]};
    }

    /// Value at (cell, gene); zero when the entry is absent.
    T at(std::size_t cell, std::size_t gene) const;

    double row_sum(std::size_t cell) const;

private:
    std::vector<std::string> cell_ids_;
    std::vector<std::string> gene_ids_;
    std::vector<std::size_t> row_ptr_;       // n_cells + 1
    std::vector<std::uint32_t> col_idx_;     // gene index per entry
    std::vector<T> values_;
    std::unordered_map<std::string, std::size_t> cell_lookup_;
    std::unordered_map<std::string, std::size_t> gene_lookup_;

    void build_lookups();

    template <typename U>
    friend class SparseMatrix;
    template <typename U>
    friend SparseMatrix<U> slice_cells_impl(const SparseMatrix<U>&, const std::unordered_set<std::string>&);
    template <typename U>
    friend SparseMatrix<U> slice_genes_impl(const SparseMatrix<U>&, const std::unordered_set<std::string>&);
    friend class MatrixAccess;
};

using CountMatrix = SparseMatrix<std::uint32_t>;
using ExprMatrix = SparseMatrix<double>;

/// Internal escape hatch for modules that assemble matrices directly
/// (normalization, merging, IO) without paying re-validation.
class MatrixAccess {
public:
    template <typename T>
    static SparseMatrix<T> assemble(std::vector<std::string> cell_ids,
                                    std::vector<std::string> gene_ids,
                                    std::vector<std::size_t> row_ptr,
                                    std::vector<std::uint32_t> col_idx,
                                    std::vector<T> values) {
        SparseMatrix<T> m;
        m.cell_ids_ = std::move(cell_ids);
        m.gene_ids_ = std::move(gene_ids);
        m.row_ptr_ = std::move(row_ptr);
        m.col_idx_ = std::move(col_idx);
        m.values_ = std::move(values);
        m.build_lookups();
        return m;
    }
};

/// Per-cell QC quantities, computed on raw counts.
struct CellStats {
    std::vector<std::uint32_t> genes_detected;
    std::vector<std::uint64_t> total_counts;
    std::vector<double> pct_mito;  // 0..100; an all-zero cell reports 0
};

/// Per-cell metadata carried alongside a matrix.
struct CellAnnotations {
    std::vector<std::string> cell_ids;
    std::vector<std::string> sample;
    std::vector<std::string> replicate;
};

/// Restrict to the given cells, keeping the matrix's original cell order.
template <typename T>
SparseMatrix<T> slice_cells(const SparseMatrix<T>& m, const std::unordered_set<std::string>& keep);

/// Restrict to the given genes, keeping the matrix's original gene order.
template <typename T>
SparseMatrix<T> slice_genes(const SparseMatrix<T>& m, const std::unordered_set<std::string>& keep);

struct GroupMeans {
    std::vector<std::string> groups;               // sorted
    std::vector<std::vector<double>> means;        // groups x genes
};

/// Mean expression per (group, gene), zeros included in the denominator.
/// Every cell must be labeled. Groups listed in expected_groups but holding
/// no cells raise an error naming the group.
GroupMeans group_means(const ExprMatrix& e,
                       const std::unordered_map<std::string, std::string>& labels,
                       const std::vector<std::string>& expected_groups = {});

/// QC statistics per cell; mito gene ids absent from the matrix are reported
/// through the warning sink and ignored.
CellStats per_cell_stats(const CountMatrix& m, const std::unordered_set<std::string>& mito_genes,
                         const WarningSink& warn = warn_to_stderr);

/// Consolidate samples: cell ids are prefixed with "<sample>_", the gene
/// axis becomes the lexicographically sorted union, missing genes fill with
/// zero. Returns the merged matrix plus sample/replicate annotations.
std::pair<CountMatrix, CellAnnotations> merge_samples(
    const std::vector<std::pair<std::string, CountMatrix>>& samples);

}  // namespace tfscreen

#endif
