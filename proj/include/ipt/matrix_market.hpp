#pragma once

#include <string>

#include "ipt/complex_matrix.hpp"

namespace ipt {

/// Reads coordinate or array files, real or complex, general or symmetric.
/// Symmetric files are expanded to full storage; indices are converted from
/// 1-based. Throws std::runtime_error on malformed headers, out-of-bounds
/// indices, or duplicate entries.
ComplexMatrix read_matrix_market(const std::string& path);

struct MatrixMarketOptions {
    /// coordinate for sparse matrices, array for dense unless overridden.
    enum class Format { Auto, Coordinate, Array } format = Format::Auto;
    /// Store only the lower triangle of an exactly symmetric matrix.
    bool write_symmetric = false;
};

/// Values are written with 17 significant digits, so write/read round-trips
/// reproduce doubles exactly.
void write_matrix_market(const ComplexMatrix& m, const std::string& path,
                         const MatrixMarketOptions& options = {});

}  // namespace ipt
