#pragma once

#include <cmath>

#include "ipt/complex_matrix.hpp"

namespace ipt::detail {

// f(z) = e_i + scale * g_i o (z w_i - w) with w = Delta z already computed.
// Shared by the plain and accelerated solvers so their iterates agree bitwise.
inline void assemble_single(const cvec& g_col, std::size_t anchor, const cvec& z, const cvec& w,
                            double scale, cvec& out) {
    const std::size_t n = z.size();
    const cplx wi = w[anchor];
    for (std::size_t j = 0; j < n; ++j) out[j] = scale * (g_col[j] * (z[j] * wi - w[j]));
    out[anchor] = 1.0;
}

inline double rel_step(const cvec& a, const cvec& b) {
    double diff = 0.0, base = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        diff += std::norm(a[j] - b[j]);
        base += std::norm(a[j]);
    }
    return std::sqrt(diff) / std::sqrt(base);
}

}  // namespace ipt::detail
