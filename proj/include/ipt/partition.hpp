#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "ipt/complex_matrix.hpp"

namespace ipt {

/// Sufficient-contraction threshold 3 - 2*sqrt(2) for the product |G||Delta|.
inline const double kContractionThreshold = 3.0 - 2.0 * std::sqrt(2.0);

/// Diagonal-plus-residual split M = diag(d) + delta.
struct Partition {
    cvec d;
    ComplexMatrix delta;

    std::size_t size() const { return d.size(); }
};

/// Thrown when two diagonal entries are closer than the degeneracy tolerance,
/// which would make the inverse gaps blow up.
struct DegenerateDiagonal : std::runtime_error {
    DegenerateDiagonal(std::size_t i_, std::size_t j_, double gap_, double tol_);
    std::size_t i, j;
    double gap, tol;
};

/// Inverse gaps G_jk = 1/(d_j - d_k), zero diagonal. Construction validates
/// that all pairwise gaps exceed the degeneracy tolerance; entries and columns
/// are produced on demand so large sparse problems never pay O(n^2) memory.
class InverseGaps {
public:
    InverseGaps() = default;
    InverseGaps(cvec d, double degeneracy_tol);

    std::size_t size() const { return d_.size(); }
    const cvec& diagonal() const { return d_; }
    double degeneracy_tolerance() const { return tol_; }

    cplx entry(std::size_t j, std::size_t k) const {
        return j == k ? cplx{} : 1.0 / (d_[j] - d_[k]);
    }
    /// Column i: (g_i)_j = 1/(d_j - d_i).
    cvec column(std::size_t i) const;
    ComplexMatrix to_matrix() const;

private:
    cvec d_;
    double tol_ = 0.0;
};

struct ConvergenceCertificate {
    double g_norm = 0.0;
    double delta_norm = 0.0;
    double product = 0.0;
    bool certified = false;
    double estimator_tolerance = 0.0;
};

/// Split m into its diagonal and the zero-diagonal residual.
Partition partition(const ComplexMatrix& m);

/// Rebuild diag(d) + delta (dense); used by tests and the CLI echo paths.
ComplexMatrix reconstruct(const Partition& p);

/// degeneracy_tol < 0 selects the default 1e-12 * max_j |d_j|.
InverseGaps build_gaps(const Partition& p, double degeneracy_tol = -1.0);

/// Largest singular value estimated by power iteration on A^H A. Falls back to
/// the Frobenius norm (an upper bound) when the iteration does not settle.
double spectral_norm(const ComplexMatrix& m, double tol = 1e-6, int max_iters = 200);

struct SpectralNormEstimate {
    double value = 0.0;
    bool converged = false;  // false means the Frobenius fallback was used
};
SpectralNormEstimate spectral_norm_estimate(const ComplexMatrix& m, double tol = 1e-6,
                                            int max_iters = 200);

/// Norm estimate of the inverse-gaps operator, applied entrywise on the fly.
SpectralNormEstimate gaps_spectral_norm_estimate(const InverseGaps& g, double tol = 1e-6,
                                                 int max_iters = 200);

/// Evaluates the sufficient contraction condition |G||Delta| < 3 - 2*sqrt(2).
/// Norm estimates that fail to settle degrade to conservative upper bounds, so
/// the certificate can under-approve but never falsely approve.
ConvergenceCertificate certify(const Partition& p, const InverseGaps& g, double tol = 1e-6,
                               int max_iters = 200);

}  // namespace ipt
