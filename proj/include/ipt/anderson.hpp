#pragma once

#include <deque>

#include "ipt/solver.hpp"

namespace ipt {

/// Anderson mixing state for one fixed-point solve. Keeps up to memory+1
/// previous (iterate, image) pairs; each step solves the standard
/// difference-form least-squares problem and returns the affine combination
/// of previous images. The combination weights always sum to exactly 1.
class AndersonState {
public:
    /// regularization <= 0 selects the default Tikhonov retry factor
    /// 1e-12 * |difference matrix|_F used when the plain QR solve is
    /// rank-deficient.
    explicit AndersonState(int memory, std::size_t anchor, double regularization = 0.0);

    int memory() const { return memory_; }
    std::size_t anchor() const { return anchor_; }
    std::size_t history_size() const { return zs_.size(); }
    /// Mixing weights applied at the most recent step (affine, sum to 1).
    const cvec& last_weights() const { return weights_; }

    void reset();

    cvec step(const cvec& z, const cvec& fz);

private:
    int memory_;
    std::size_t anchor_;
    double regularization_;
    std::deque<cvec> zs_;   // previous iterates
    std::deque<cvec> fzs_;  // images f(z) of the same iterates
    cvec weights_;
    double previous_residual_ = -1.0;
    int worsening_streak_ = 0;
};

/// One accelerated update: mixes fz with the stored history and re-pins the
/// anchor coordinate to 1. Falls back to plain fz when the difference matrix
/// is rank-deficient even after regularization.
cvec anderson_step(AndersonState& state, const cvec& z, const cvec& fz);

/// Single-eigenpair solve with Anderson mixing interposed. Convergence is
/// declared on the true residual |M z - lambda z|_2 <= config.residual_tolerance
/// (evaluated with the same matvec that drives the map, so the total number of
/// residual products equals the iteration count plus one).
EigenpairResult solve_single_accelerated(const Partition& p, const InverseGaps& g,
                                         std::size_t anchor, const IterationConfig& config = {},
                                         int memory = 5);

}  // namespace ipt
