#pragma once

#include <limits>
#include <optional>

#include "ipt/partition.hpp"

namespace ipt {

enum class PointClass { ConvergedFixedPoint, PeriodicCycle, BoundedNonperiodic, Diverged };

const char* to_string(PointClass c);

/// Scan of the complex eps-plane for the family diag(d) + eps*Delta0, column
/// `anchor`. Classification per point, in order: step-size convergence, escape
/// beyond the divergence threshold, recurrence of period >= 2 within the
/// trailing window, otherwise bounded non-periodic (chaotic or long-period).
struct ScanSpec {
    cvec d;
    ComplexMatrix delta0;
    std::size_t anchor = 0;
    double re_min = -1.0, re_max = 1.0;
    double im_min = -1.0, im_max = 1.0;
    std::size_t nx = 101, ny = 101;
    int max_iterations = 1000;
    double divergence_threshold = 1e8;
    double step_tolerance = 100.0 * std::numeric_limits<double>::epsilon();
    int period_window = 64;
    double period_tolerance = 1e-9;
    std::optional<double> continuation_alpha;  // ramp schedule, if enabled
};

struct ScanCell {
    cplx eps{};
    PointClass classification = PointClass::BoundedNonperiodic;
    int period = 0;            // set for PeriodicCycle
    int escape_step = -1;      // set for Diverged
    int steps_to_converge = -1;  // set for ConvergedFixedPoint
};

/// Pure function of eps: iterates the anchored single-column map and labels
/// the orbit. Grid cells never seed each other, so the scanned set is
/// independent of traversal order (basin boundaries can be fractal).
ScanCell classify_point(const ScanSpec& spec, cplx eps);

struct ScanResult {
    std::size_t nx = 0, ny = 0;
    std::vector<ScanCell> cells;  // row-major, y (imaginary) outer

    const ScanCell& at(std::size_t ix, std::size_t iy) const { return cells[iy * nx + ix]; }
};

/// classify_point over the rectangle; embarrassingly parallel, deterministic.
ScanResult scan_grid(const ScanSpec& spec);

}  // namespace ipt
