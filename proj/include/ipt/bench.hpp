#pragma once

#include "ipt/solver.hpp"

namespace ipt {

/// Timing harness normalized by the cost of the primitive operations: the
/// full-spectrum solve is reported relative to one matrix-matrix product and
/// the single-pair solve relative to one matrix-vector product. Ratios are
/// machine-independent, unlike absolute timings.
struct BenchOptions {
    int repetitions = 3;
    std::size_t anchor = 0;
    /// Self-test knob: each timed phase is padded by elapsed*slowdown_factor
    /// of sleep, emulating a uniformly slower machine. Ratios must not move.
    double slowdown_factor = 0.0;
};

struct BenchSample {
    double t_eig = 0.0;   // full-spectrum solve, seconds
    double t_mm = 0.0;    // one matrix-matrix product
    double t_eigs = 0.0;  // single-eigenpair solve
    double t_mv = 0.0;    // one matrix-vector product
};

struct BenchResult {
    std::vector<BenchSample> samples;
    double median_t_eig = 0.0;
    double median_t_mm = 0.0;
    double median_t_eigs = 0.0;
    double median_t_mv = 0.0;
    double eig_over_mm = 0.0;
    double eigs_over_mv = 0.0;
    int full_iterations = 0;
    int single_iterations = 0;
    long matmul_products = 0;
    long matvec_products = 0;
    SolveStatus full_status = SolveStatus::MaxIterations;
    SolveStatus single_status = SolveStatus::MaxIterations;
};

BenchResult bench(const ComplexMatrix& m, const IterationConfig& config = {},
                  const BenchOptions& options = {});

}  // namespace ipt
