#pragma once

#include "ipt/complex_matrix.hpp"

namespace ipt::kernels {

// Parallel kernels (OpenMP over rows). Summation order within a row is fixed,
// so results are identical for any thread count. The *_serial variants are the
// plain reference implementations kept for testing and benchmarking.

/// y = A x. A dense or sparse, x of length A.cols().
void matvec(const ComplexMatrix& a, const cplx* x, cplx* y);
void matvec_serial(const ComplexMatrix& a, const cplx* x, cplx* y);

/// y = A^H x (dense only; sparse callers materialize the adjoint once).
void adjoint_matvec_dense(const ComplexMatrix& a, const cplx* x, cplx* y);

/// C = A B with B and C dense; A dense or sparse. C is overwritten.
void matmul(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c);
void matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c);

double frobenius_norm(const ComplexMatrix& m);
double nrm2(const cvec& v);
double nrm2(const cplx* v, std::size_t n);
double max_abs(const cvec& v);

}  // namespace ipt::kernels
