#pragma once

#include "ipt/complex_matrix.hpp"

namespace ipt {

/// Dense LU with partial pivoting, PA = LU with L unit lower triangular.
struct LuFactors {
    std::size_t n = 0;
    cvec lu;                        // packed L\U, row-major
    std::vector<std::size_t> perm; // perm[i] = source row of pivoted row i
    bool singular = false;
};

LuFactors lu_factor(const ComplexMatrix& a);

/// x = A^{-1} b.
cvec lu_solve(const LuFactors& f, const cvec& b);
/// x = A^{-H} b.
cvec lu_solve_adjoint(const LuFactors& f, const cvec& b);
/// Solves A X = B column-wise; B dense, returns dense X.
ComplexMatrix lu_solve_matrix(const LuFactors& f, const ComplexMatrix& b);

/// 1-norm condition estimate kappa_1(A) = |A|_1 * est(|A^{-1}|_1) using the
/// classic Hager power method on the factors. Returns +inf for singular A.
double condition_estimate_1norm(const LuFactors& f, const ComplexMatrix& a);

}  // namespace ipt
