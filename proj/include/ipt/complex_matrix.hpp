#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ipt {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

struct Triplet {
    std::size_t row = 0;
    std::size_t col = 0;
    cplx value{};
};

/// Square or rectangular complex matrix, stored either dense row-major or as
/// compressed sparse rows. Sparse storage never holds explicit zeros and keeps
/// column indices strictly increasing within each row.
class ComplexMatrix {
public:
    enum class Storage { Dense, SparseCsr };

    ComplexMatrix() = default;

    static ComplexMatrix dense(std::size_t rows, std::size_t cols);
    static ComplexMatrix dense(std::size_t rows, std::size_t cols, cvec values);
    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(const cvec& d);
    /// Builds CSR storage. Throws std::invalid_argument on out-of-range indices
    /// or duplicate positions; exact zeros are dropped.
    static ComplexMatrix sparse_from_triplets(std::size_t rows, std::size_t cols,
                                              std::vector<Triplet> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Storage storage() const { return storage_; }
    bool is_dense() const { return storage_ == Storage::Dense; }
    bool is_sparse() const { return storage_ == Storage::SparseCsr; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    // Dense access.
    cplx* data();
    const cplx* data() const;
    cplx* row(std::size_t i) { return data() + i * cols_; }
    const cplx* row(std::size_t i) const { return data() + i * cols_; }
    cplx& at(std::size_t i, std::size_t j);

    // Works for both layouts (binary search on sparse rows).
    cplx get(std::size_t i, std::size_t j) const;

    // Sparse access.
    const std::vector<std::size_t>& row_offsets() const { return row_offsets_; }
    const std::vector<std::size_t>& col_indices() const { return col_indices_; }
    const cvec& values() const { return values_; }
    std::size_t nonzero_count() const;

    ComplexMatrix to_dense() const;
    ComplexMatrix to_sparse() const;
    ComplexMatrix transposed() const;
    ComplexMatrix adjoint() const;

    void scale(cplx factor);

private:
    Storage storage_ = Storage::Dense;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    cvec dense_;                             // row-major, dense only
    std::vector<std::size_t> row_offsets_;   // CSR, size rows+1
    std::vector<std::size_t> col_indices_;
    cvec values_;
};

}  // namespace ipt
