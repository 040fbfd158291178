#include "ipt/complex_matrix.hpp"

#include <algorithm>

namespace ipt {

ComplexMatrix ComplexMatrix::dense(std::size_t rows, std::size_t cols) {
    ComplexMatrix m;
    m.storage_ = Storage::Dense;
    m.rows_ = rows;
    m.cols_ = cols;
    m.dense_.assign(rows * cols, cplx{});
    return m;
}

ComplexMatrix ComplexMatrix::dense(std::size_t rows, std::size_t cols, cvec values) {
    if (values.size() != rows * cols)
        throw std::invalid_argument("dense: value count does not match shape");
    ComplexMatrix m;
    m.storage_ = Storage::Dense;
    m.rows_ = rows;
    m.cols_ = cols;
    m.dense_ = std::move(values);
    return m;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m = dense(n, n);
    for (std::size_t i = 0; i < n; ++i) m.dense_[i * n + i] = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const cvec& d) {
    ComplexMatrix m = dense(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.dense_[i * d.size() + i] = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::sparse_from_triplets(std::size_t rows, std::size_t cols,
                                                  std::vector<Triplet> entries) {
    for (const Triplet& t : entries) {
        if (t.row >= rows || t.col >= cols)
            throw std::invalid_argument("sparse_from_triplets: index out of bounds");
    }
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    for (std::size_t k = 1; k < entries.size(); ++k) {
        if (entries[k].row == entries[k - 1].row && entries[k].col == entries[k - 1].col)
            throw std::invalid_argument("sparse_from_triplets: duplicate entry");
    }

    ComplexMatrix m;
    m.storage_ = Storage::SparseCsr;
    m.rows_ = rows;
    m.cols_ = cols;
    m.row_offsets_.assign(rows + 1, 0);
    for (const Triplet& t : entries)
        if (t.value != cplx{}) ++m.row_offsets_[t.row + 1];
    for (std::size_t i = 0; i < rows; ++i) m.row_offsets_[i + 1] += m.row_offsets_[i];
    m.col_indices_.reserve(m.row_offsets_[rows]);
    m.values_.reserve(m.row_offsets_[rows]);
    for (const Triplet& t : entries) {
        if (t.value == cplx{}) continue;
        m.col_indices_.push_back(t.col);
        m.values_.push_back(t.value);
    }
    return m;
}

cplx* ComplexMatrix::data() {
    if (!is_dense()) throw std::logic_error("data(): matrix is not dense");
    return dense_.data();
}

const cplx* ComplexMatrix::data() const {
    if (!is_dense()) throw std::logic_error("data(): matrix is not dense");
    return dense_.data();
}

cplx& ComplexMatrix::at(std::size_t i, std::size_t j) {
    if (!is_dense()) throw std::logic_error("at(): matrix is not dense");
    return dense_[i * cols_ + j];
}

cplx ComplexMatrix::get(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("get: index out of range");
    if (is_dense()) return dense_[i * cols_ + j];
    const auto begin = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i]);
    const auto end = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i + 1]);
    const auto it = std::lower_bound(begin, end, j);
    if (it == end || *it != j) return cplx{};
    return values_[static_cast<std::size_t>(it - col_indices_.begin())];
}

std::size_t ComplexMatrix::nonzero_count() const {
    if (is_sparse()) return values_.size();
    std::size_t nnz = 0;
    for (const cplx& v : dense_)
        if (v != cplx{}) ++nnz;
    return nnz;
}

ComplexMatrix ComplexMatrix::to_dense() const {
    if (is_dense()) return *this;
    ComplexMatrix m = dense(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
            m.dense_[i * cols_ + col_indices_[k]] = values_[k];
    return m;
}

ComplexMatrix ComplexMatrix::to_sparse() const {
    if (is_sparse()) return *this;
    std::vector<Triplet> entries;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (dense_[i * cols_ + j] != cplx{}) entries.push_back({i, j, dense_[i * cols_ + j]});
    return sparse_from_triplets(rows_, cols_, std::move(entries));
}

ComplexMatrix ComplexMatrix::transposed() const {
    if (is_dense()) {
        ComplexMatrix m = dense(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m.dense_[j * rows_ + i] = dense_[i * cols_ + j];
        return m;
    }
    std::vector<Triplet> entries;
    entries.reserve(values_.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
            entries.push_back({col_indices_[k], i, values_[k]});
    return sparse_from_triplets(cols_, rows_, std::move(entries));
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m = transposed();
    if (m.is_dense())
        for (cplx& v : m.dense_) v = std::conj(v);
    else
        for (cplx& v : m.values_) v = std::conj(v);
    return m;
}

void ComplexMatrix::scale(cplx factor) {
    if (is_dense())
        for (cplx& v : dense_) v *= factor;
    else
        for (cplx& v : values_) v *= factor;
}

}  // namespace ipt
