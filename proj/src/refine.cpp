#include "ipt/refine.hpp"

#include <cmath>

#include "ipt/dense_eig.hpp"
#include "ipt/kernels.hpp"

namespace ipt {

namespace {

constexpr double kConditionGuard = 1e6;

template <typename R>
std::vector<std::complex<R>> to_precision(const ComplexMatrix& m) {
    ComplexMatrix d = m.to_dense();
    std::vector<std::complex<R>> out(m.rows() * m.cols());
    const cplx* src = d.data();
    for (std::size_t t = 0; t < out.size(); ++t)
        out[t] = std::complex<R>(static_cast<R>(src[t].real()), static_cast<R>(src[t].imag()));
    return out;
}

ComplexMatrix from_float(const std::vector<std::complex<float>>& v, std::size_t n) {
    cvec out(v.size());
    for (std::size_t t = 0; t < v.size(); ++t)
        out[t] = cplx(static_cast<double>(v[t].real()), static_cast<double>(v[t].imag()));
    return ComplexMatrix::dense(n, n, std::move(out));
}

}  // namespace

SingularSeed::SingularSeed(double cond)
    : std::runtime_error("seed basis is numerically singular (condition estimate " +
                         std::to_string(cond) + " exceeds guard)"),
      condition(cond) {}

EigDecomp dense_eigensolve(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("dense_eigensolve: square input required");
    const std::size_t n = m.rows();
    const auto a = to_precision<double>(m);
    const detail::DenseEig<double> dec = detail::dense_eig(a, n);
    EigDecomp out;
    out.converged = dec.converged;
    out.values.assign(dec.values.begin(), dec.values.end());
    out.vectors = ComplexMatrix::dense(n, n, cvec(dec.vectors.begin(), dec.vectors.end()));
    return out;
}

ComplexMatrix make_low_precision_seed(const ComplexMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("make_low_precision_seed: square input required");
    const std::size_t n = m.rows();
    const auto a = to_precision<float>(m);
    const detail::DenseEig<float> dec = detail::dense_eig(a, n);
    if (!dec.converged)
        throw std::runtime_error("make_low_precision_seed: low-precision eigensolve stalled");
    return from_float(dec.vectors, n);
}

RefinementResult refine_spectrum(const ComplexMatrix& m, const ComplexMatrix& seed,
                                 const IterationConfig& config) {
    if (m.rows() != m.cols() || seed.rows() != seed.cols() || m.rows() != seed.rows())
        throw std::invalid_argument("refine_spectrum: shape mismatch");
    const std::size_t n = m.rows();

    RefinementResult res;
    const ComplexMatrix z0 = seed.to_dense();
    const LuFactors f = lu_factor(z0);
    res.seed_condition_estimate = condition_estimate_1norm(f, z0);
    if (f.singular || !(res.seed_condition_estimate < kConditionGuard))
        throw SingularSeed(res.seed_condition_estimate);

    // M' = Z0^{-1} (M Z0), column-wise solves against the LU factors.
    ComplexMatrix mz0 = ComplexMatrix::dense(n, n);
    kernels::matmul(m, z0, mz0);
    const ComplexMatrix mprime = lu_solve_matrix(f, mz0);

    // Seed eigenvalue estimates are the diagonal of the transformed problem;
    // the seed residual measures M Z0 - Z0 diag(M') = Z0 (M' - D').
    const Partition p = partition(mprime);
    {
        ComplexMatrix r = ComplexMatrix::dense(n, n);
        kernels::matmul(z0, p.delta.to_dense(), r);
        res.seed_residual = kernels::frobenius_norm(r);
    }

    const InverseGaps g = build_gaps(p);
    res.inner_certificate = certify(p, g);
    const SpectrumResult inner = solve_full(p, g, config);
    res.status = inner.status;
    res.inner_iterations = inner.iterations;
    res.eigenvalues = inner.eigenvalues;

    res.Z = ComplexMatrix::dense(n, n);
    kernels::matmul(z0, inner.Z, res.Z);

    ComplexMatrix mz = ComplexMatrix::dense(n, n);
    kernels::matmul(m, res.Z, mz);
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            r2 += std::norm(mz.at(i, j) - res.Z.at(i, j) * res.eigenvalues[j]);
    res.refined_residual = std::sqrt(r2);
    return res;
}

}  // namespace ipt
