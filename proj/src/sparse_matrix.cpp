#include "tfscreen/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <set>
#include <stdexcept>

namespace tfscreen {

void warn_to_stderr(const std::string& msg) { std::cerr << "[warn] " << msg << "\n"; }

namespace {

void check_unique(const std::vector<std::string>& ids, const char* what) {
    std::unordered_set<std::string> seen;
    seen.reserve(ids.size() * 2);
    for (const auto& id : ids) {
        if (!seen.insert(id).second)
            throw std::runtime_error(std::string("duplicate ") + what + " id: " + id);
    }
}

}  // namespace

template <typename T>
void SparseMatrix<T>::build_lookups() {
    cell_lookup_.clear();
    gene_lookup_.clear();
    cell_lookup_.reserve(cell_ids_.size() * 2);
    gene_lookup_.reserve(gene_ids_.size() * 2);
    for (std::size_t i = 0; i < cell_ids_.size(); ++i) cell_lookup_.emplace(cell_ids_[i], i);
    for (std::size_t i = 0; i < gene_ids_.size(); ++i) gene_lookup_.emplace(gene_ids_[i], i);
}

template <typename T>
SparseMatrix<T> SparseMatrix<T>::from_triplets(
    std::vector<std::string> cell_ids, std::vector<std::string> gene_ids,
    std::vector<std::tuple<std::uint32_t, std::uint32_t, T>> entries) {
    check_unique(cell_ids, "cell");
    check_unique(gene_ids, "gene");
    const std::size_t nc = cell_ids.size();
    const std::size_t ng = gene_ids.size();
    for (const auto& [c, g, v] : entries) {
        if (c >= nc) throw std::runtime_error("cell index out of range: " + std::to_string(c));
        if (g >= ng) throw std::runtime_error("gene index out of range: " + std::to_string(g));
        if constexpr (std::is_floating_point_v<T>) {
            if (!(v >= 0.0) || !std::isfinite(v))
                throw std::runtime_error("expression value must be finite and non-negative");
        }
    }
    std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
        return std::make_pair(std::get<0>(x), std::get<1>(x)) <
               std::make_pair(std::get<0>(y), std::get<1>(y));
    });
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (std::get<0>(entries[i]) == std::get<0>(entries[i - 1]) &&
            std::get<1>(entries[i]) == std::get<1>(entries[i - 1])) {
            throw std::runtime_error("duplicate (cell, gene) entry at cell index " +
                                     std::to_string(std::get<0>(entries[i])));
        }
    }

    SparseMatrix m;
    m.cell_ids_ = std::move(cell_ids);
    m.gene_ids_ = std::move(gene_ids);
    m.row_ptr_.assign(nc + 1, 0);
    m.col_idx_.reserve(entries.size());
    m.values_.reserve(entries.size());
    for (const auto& [c, g, v] : entries) {
        if (v == T{} ) continue;  // explicit zeros are dropped
        m.row_ptr_[c + 1]++;
        m.col_idx_.push_back(g);
        m.values_.push_back(v);
    }
    for (std::size_t i = 1; i <= nc; ++i) m.row_ptr_[i] += m.row_ptr_[i - 1];
    m.build_lookups();
    return m;
}

template <typename T>
std::size_t SparseMatrix<T>::cell_index(const std::string& id) const {
    auto it = cell_lookup_.find(id);
    if (it == cell_lookup_.end()) throw std::runtime_error("unknown cell id: " + id);
    return it->second;
}

template <typename T>
std::size_t SparseMatrix<T>::find_gene(const std::string& id) const {
    auto it = gene_lookup_.find(id);
    return it == gene_lookup_.end() ? npos : it->second;
}

template <typename T>
std::size_t SparseMatrix<T>::find_cell(const std::string& id) const {
    auto it = cell_lookup_.find(id);
    return it == cell_lookup_.end() ? npos : it->second;
}

template <typename T>
T SparseMatrix<T>::at(std::size_t cell, std::size_t gene) const {
    auto genes = row_genes(cell);
    auto it = std::lower_bound(genes.begin(), genes.end(), static_cast<std::uint32_t>(gene));
    if (it == genes.end() || *it != gene) return T{};
    return row_values(cell)[static_cast<std::size_t>(it - genes.begin())];
}

template <typename T>
double SparseMatrix<T>::row_sum(std::size_t cell) const {
    double s = 0.0;
    for (T v : row_values(cell)) s += static_cast<double>(v);
    return s;
}

template class SparseMatrix<std::uint32_t>;
template class SparseMatrix<double>;

template <typename T>
SparseMatrix<T> slice_cells_impl(const SparseMatrix<T>& m, const std::unordered_set<std::string>& keep) {
    for (const auto& id : keep) {
        if (m.find_cell(id) == SparseMatrix<T>::npos)
            throw std::runtime_error("unknown cell id: " + id);
    }
    SparseMatrix<T> out;
    out.gene_ids_ = m.gene_ids_;
    out.row_ptr_.push_back(0);
    for (std::size_t c = 0; c < m.n_cells(); ++c) {
        if (!keep.count(m.cell_ids_[c])) continue;
        out.cell_ids_.push_back(m.cell_ids_[c]);
        auto genes = m.row_genes(c);
        auto vals = m.row_values(c);
        out.col_idx_.insert(out.col_idx_.end(), genes.begin(), genes.end());
        out.values_.insert(out.values_.end(), vals.begin(), vals.end());
        out.row_ptr_.push_back(out.col_idx_.size());
    }
    out.build_lookups();
    return out;
}

template <typename T>
SparseMatrix<T> slice_genes_impl(const SparseMatrix<T>& m, const std::unordered_set<std::string>& keep) {
    for (const auto& id : keep) {
        if (m.find_gene(id) == SparseMatrix<T>::npos)
            throw std::runtime_error("unknown gene id: " + id);
    }
    std::vector<std::uint32_t> remap(m.n_genes(), static_cast<std::uint32_t>(-1));
    SparseMatrix<T> out;
    std::uint32_t next = 0;
    for (std::size_t g = 0; g < m.n_genes(); ++g) {
        if (keep.count(m.gene_ids_[g])) {
            remap[g] = next++;
            out.gene_ids_.push_back(m.gene_ids_[g]);
        }
    }
    out.cell_ids_ = m.cell_ids_;
    out.row_ptr_.push_back(0);
    for (std::size_t c = 0; c < m.n_cells(); ++c) {
        auto genes = m.row_genes(c);
        auto vals = m.row_values(c);
        for (std::size_t i = 0; i < genes.size(); ++i) {
            if (remap[genes[i]] != static_cast<std::uint32_t>(-1)) {
                out.col_idx_.push_back(remap[genes[i]]);
                out.values_.push_back(vals[i]);
            }
        }
        out.row_ptr_.push_back(out.col_idx_.size());
    }
    out.build_lookups();
    return out;
}

template <typename T>
SparseMatrix<T> slice_cells(const SparseMatrix<T>& m, const std::unordered_set<std::string>& keep) {
    return slice_cells_impl(m, keep);
}

template <typename T>
SparseMatrix<T> slice_genes(const SparseMatrix<T>& m, const std::unordered_set<std::string>& keep) {
    return slice_genes_impl(m, keep);
}

template SparseMatrix<std::uint32_t> slice_cells(const SparseMatrix<std::uint32_t>&,
                                                 const std::unordered_set<std::string>&);
template SparseMatrix<double> slice_cells(const SparseMatrix<double>&,
                                          const std::unordered_set<std::string>&);
template SparseMatrix<std::uint32_t> slice_genes(const SparseMatrix<std::uint32_t>&,
                                                 const std::unordered_set<std::string>&);
template SparseMatrix<double> slice_genes(const SparseMatrix<double>&,
                                          const std::unordered_set<std::string>&);

GroupMeans group_means(const ExprMatrix& e,
                       const std::unordered_map<std::string, std::string>& labels,
                       const std::vector<std::string>& expected_groups) {
    std::map<std::string, std::vector<std::size_t>> cells_of;
    for (const auto& g : expected_groups) cells_of[g];  // may stay empty -> error below
    for (std::size_t c = 0; c < e.n_cells(); ++c) {
        auto it = labels.find(e.cell_ids()[c]);
        if (it == labels.end())
            throw std::runtime_error("group_means: unlabeled cell: " + e.cell_ids()[c]);
        cells_of[it->second].push_back(c);
    }
    for (const auto& [g, cells] : cells_of) {
        if (cells.empty()) throw std::runtime_error("group_means: empty group: " + g);
    }
    GroupMeans out;
    for (const auto& [g, cells] : cells_of) {
        out.groups.push_back(g);
        std::vector<double> mean(e.n_genes(), 0.0);
        for (std::size_t c : cells) {
            auto genes = e.row_genes(c);
            auto vals = e.row_values(c);
            for (std::size_t i = 0; i < genes.size(); ++i) mean[genes[i]] += vals[i];
        }
        const double denom = static_cast<double>(cells.size());
        for (double& v : mean) v /= denom;
        out.means.push_back(std::move(mean));
    }
    return out;
}

CellStats per_cell_stats(const CountMatrix& m, const std::unordered_set<std::string>& mito_genes,
                         const WarningSink& warn) {
    std::vector<bool> is_mito(m.n_genes(), false);
    for (const auto& id : mito_genes) {
        const std::size_t g = m.find_gene(id);
        if (g == CountMatrix::npos) {
            if (warn) warn("mitochondrial gene not in matrix, ignored: " + id);
            continue;
        }
        is_mito[g] = true;
    }
    CellStats s;
    s.genes_detected.resize(m.n_cells());
    s.total_counts.resize(m.n_cells());
    s.pct_mito.resize(m.n_cells());
    for (std::size_t c = 0; c < m.n_cells(); ++c) {
        auto genes = m.row_genes(c);
        auto vals = m.row_values(c);
        std::uint64_t total = 0;
        std::uint64_t mito = 0;
        std::uint32_t detected = 0;
        for (std::size_t i = 0; i < genes.size(); ++i) {
            if (vals[i] > 0) ++detected;
            total += vals[i];
            if (is_mito[genes[i]]) mito += vals[i];
        }
        s.genes_detected[c] = detected;
        s.total_counts[c] = total;
        s.pct_mito[c] = total == 0 ? 0.0
                                   : 100.0 * static_cast<double>(mito) / static_cast<double>(total);
    }
    return s;
}

std::pair<CountMatrix, CellAnnotations> merge_samples(
    const std::vector<std::pair<std::string, CountMatrix>>& samples) {
    {
        std::unordered_set<std::string> names;
        for (const auto& [name, _] : samples) {
            if (!names.insert(name).second)
                throw std::runtime_error("duplicate sample name: " + name);
        }
    }
    std::set<std::string> gene_union;
    for (const auto& [_, m] : samples) {
        gene_union.insert(m.gene_ids().begin(), m.gene_ids().end());
    }
    std::vector<std::string> genes(gene_union.begin(), gene_union.end());
    std::unordered_map<std::string, std::uint32_t> gene_pos;
    gene_pos.reserve(genes.size() * 2);
    for (std::size_t i = 0; i < genes.size(); ++i) gene_pos.emplace(genes[i], i);

    std::vector<std::string> cells;
    std::vector<std::size_t> row_ptr{0};
    std::vector<std::uint32_t> col_idx;
    std::vector<std::uint32_t> values;
    CellAnnotations ann;
    for (const auto& [name, m] : samples) {
        std::vector<std::uint32_t> remap(m.n_genes());
        for (std::size_t g = 0; g < m.n_genes(); ++g) remap[g] = gene_pos.at(m.gene_ids()[g]);
        for (std::size_t c = 0; c < m.n_cells(); ++c) {
            cells.push_back(name + "_" + m.cell_ids()[c]);
            ann.cell_ids.push_back(cells.back());
            ann.sample.push_back(name);
            ann.replicate.push_back(name);
            auto row_genes = m.row_genes(c);
            auto row_vals = m.row_values(c);
            std::vector<std::pair<std::uint32_t, std::uint32_t>> row;
            row.reserve(row_genes.size());
            for (std::size_t i = 0; i < row_genes.size(); ++i)
                row.emplace_back(remap[row_genes[i]], row_vals[i]);
            std::sort(row.begin(), row.end());
            for (const auto& [g, v] : row) {
                col_idx.push_back(g);
                values.push_back(v);
            }
            row_ptr.push_back(col_idx.size());
        }
    }
    auto merged = MatrixAccess::assemble<std::uint32_t>(std::move(cells), std::move(genes),
                                                        std::move(row_ptr), std::move(col_idx),
                                                        std::move(values));
    return {std::move(merged), std::move(ann)};
}

}  // namespace tfscreen
