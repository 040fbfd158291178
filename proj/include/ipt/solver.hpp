#pragma once

#include <limits>
#include <optional>

#include "ipt/partition.hpp"

namespace ipt {

struct IterationConfig {
    /// Relative step tolerance eta on |z - f(z)|/|z| (or the Frobenius analog).
    double tolerance = 100.0 * std::numeric_limits<double>::epsilon();
    int max_iterations = 1000;
    /// Iterate norm beyond which the run is declared divergent.
    double divergence_threshold = 1e8;
    bool record_trace = false;
    /// Absolute residual |M z - lambda z| target used by the accelerated
    /// single-eigenpair solver; the plain solvers stop on the step test.
    double residual_tolerance = 1e-8;
};

enum class SolveStatus { Converged, MaxIterations, Diverged };

const char* to_string(SolveStatus s);

/// One eigenvector in the chart z[anchor] = 1, with its eigenvalue
/// lambda = d[anchor] + (Delta z)[anchor].
struct EigenpairResult {
    cvec z;
    cplx eigenvalue{};
    std::size_t anchor = 0;
    int iterations = 0;
    double final_step = 0.0;
    double residual = 0.0;  // |M z - lambda z|_2 / |z|_2
    SolveStatus status = SolveStatus::MaxIterations;
    std::vector<double> trace;  // per-iteration relative steps, if recorded
    long matvec_count = 0;
};

/// Full candidate eigenbasis with unit diagonal; eigenvalues
/// Lambda = d + diag(Delta Z).
struct SpectrumResult {
    ComplexMatrix Z;
    cvec eigenvalues;
    int iterations = 0;
    double final_step = 0.0;
    double residual_frobenius = 0.0;  // |M Z - Z Lambda|_F
    double min_singular_value_estimate = 0.0;
    SolveStatus status = SolveStatus::MaxIterations;
    std::vector<double> trace;
    long matmul_count = 0;
};

/// One application of the single-column map
///   f_i(z) = e_i + g_i o (z (Delta z)_i - Delta z),
/// whose fixed points are the eigenvectors of diag(d) + Delta with z_i = 1.
/// The output coordinate at the anchor is exactly 1.
cvec apply_map_single(const Partition& p, const InverseGaps& g, std::size_t anchor, const cvec& z);

/// Fixed-point iteration of f_i from e_i (or a warm start, renormalized so the
/// anchor coordinate is 1). One residual matvec per iteration.
EigenpairResult solve_single(const Partition& p, const InverseGaps& g, std::size_t anchor,
                             const IterationConfig& config = {},
                             const cvec* warm_start = nullptr);

/// One application of the full-spectrum map
///   F(Z) = I + G o (Z D(Delta Z) - Delta Z),
/// costing one matrix product; the result has exactly unit diagonal.
ComplexMatrix apply_map_full(const Partition& p, const InverseGaps& g, const ComplexMatrix& Z);

/// Fixed-point iteration of F from Z = I (or a warm start with columns
/// renormalized to unit diagonal). Each loop costs one product Delta*Z; the
/// next iterate doubles as the convergence test. On exit the result carries
/// the Frobenius residual |M Z - Z Lambda|_F and an estimate of the smallest
/// singular value of Z obtained by inverse power iteration on Z^H Z.
SpectrumResult solve_full(const Partition& p, const InverseGaps& g,
                          const IterationConfig& config = {},
                          const ComplexMatrix* warm_start = nullptr);

/// Nonautonomous variant: step k applies the map with the residual scaled by
/// (1 - alpha^k), ramping the effective perturbation up to its target. The
/// schedule is snapped to 1 once alpha^k falls below the step tolerance, after
/// which the plain convergence test applies. Enlarges the reachable basin at
/// the cost of roughly log(eta)/log(alpha) extra ramp iterations.
EigenpairResult solve_single_continuation(const Partition& p, const InverseGaps& g,
                                          std::size_t anchor, const IterationConfig& config = {},
                                          double shrink_alpha = 0.9);

/// Estimate of sigma_min(Z) by inverse power iteration on Z^H Z.
double smallest_singular_value_estimate(const ComplexMatrix& z, int max_iters = 50,
                                        double tol = 1e-4);

}  // namespace ipt
