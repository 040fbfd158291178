#include "ipt/explorer.hpp"

#include <cmath>
#include <cstdint>
#include <deque>

#include "ipt/kernels.hpp"

namespace ipt {

const char* to_string(PointClass c) {
    switch (c) {
        case PointClass::ConvergedFixedPoint: return "fixed_point";
        case PointClass::PeriodicCycle: return "periodic";
        case PointClass::BoundedNonperiodic: return "bounded";
        case PointClass::Diverged: return "diverged";
    }
    return "unknown";
}

namespace {

void validate(const ScanSpec& spec) {
    if (spec.d.size() != spec.delta0.rows() || spec.delta0.rows() != spec.delta0.cols())
        throw std::invalid_argument("scan: family shapes disagree");
    if (spec.anchor >= spec.d.size()) throw std::invalid_argument("scan: anchor out of range");
    if (spec.nx < 1 || spec.ny < 1) throw std::invalid_argument("scan: grid must be at least 1x1");
    if (!(std::isfinite(spec.re_min) && std::isfinite(spec.re_max) && std::isfinite(spec.im_min) &&
          std::isfinite(spec.im_max)))
        throw std::invalid_argument("scan: grid bounds must be finite");
    if (spec.period_window < 2) throw std::invalid_argument("scan: period window too small");
    if (spec.continuation_alpha &&
        !(*spec.continuation_alpha >= 0.0 && *spec.continuation_alpha < 1.0))
        throw std::invalid_argument("scan: continuation factor must lie in [0, 1)");
}

}  // namespace

ScanCell classify_point(const ScanSpec& spec, cplx eps) {
    validate(spec);
    const std::size_t n = spec.d.size();
    const std::size_t anchor = spec.anchor;
    cvec g_col(n);
    for (std::size_t j = 0; j < n; ++j)
        g_col[j] = j == anchor ? cplx{} : 1.0 / (spec.d[j] - spec.d[anchor]);

    ScanCell cell;
    cell.eps = eps;

    cvec z(n, cplx{}), w(n), fz(n);
    z[anchor] = 1.0;

    const std::size_t window = static_cast<std::size_t>(spec.period_window);
    std::deque<cvec> tail;

    const double alpha = spec.continuation_alpha.value_or(0.0);
    const bool ramp = spec.continuation_alpha.has_value();
    const double snap = 0.25 * spec.step_tolerance;
    double ak = 1.0;

    for (int k = 0; k < spec.max_iterations; ++k) {
        cplx scale = eps;
        bool sched_done = true;
        if (ramp) {
            if (k > 0) ak *= alpha;
            if (ak > snap) {
                scale = eps * (1.0 - ak);
                sched_done = false;
            }
        }
        kernels::matvec(spec.delta0, z.data(), w.data());
        const cplx wi = scale * w[anchor];
        for (std::size_t j = 0; j < n; ++j) fz[j] = g_col[j] * (z[j] * wi - scale * w[j]);
        fz[anchor] = 1.0;

        double diff = 0.0, base = 0.0, next = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            diff += std::norm(z[j] - fz[j]);
            base += std::norm(z[j]);
            next += std::norm(fz[j]);
        }
        z.swap(fz);
        const double step = std::sqrt(diff) / std::sqrt(base);
        const double zn = std::sqrt(next);
        if (!std::isfinite(zn) || zn > spec.divergence_threshold) {
            cell.classification = PointClass::Diverged;
            cell.escape_step = k + 1;
            return cell;
        }
        if (sched_done && step <= spec.step_tolerance) {
            cell.classification = PointClass::ConvergedFixedPoint;
            cell.steps_to_converge = k + 1;
            return cell;
        }
        tail.push_back(z);
        if (tail.size() > window + 1) tail.pop_front();
    }

    // Bounded but not settled: look for the smallest recurrence of period >= 2
    // between the final iterate and its predecessors in the trailing window.
    const cvec& last = tail.back();
    for (std::size_t p = 2; p < tail.size(); ++p) {
        const cvec& prev = tail[tail.size() - 1 - p];
        double diff = 0.0;
        for (std::size_t j = 0; j < n; ++j) diff += std::norm(last[j] - prev[j]);
        if (std::sqrt(diff) <= spec.period_tolerance) {
            cell.classification = PointClass::PeriodicCycle;
            cell.period = static_cast<int>(p);
            return cell;
        }
    }
    cell.classification = PointClass::BoundedNonperiodic;
    return cell;
}

ScanResult scan_grid(const ScanSpec& spec) {
    validate(spec);
    ScanResult result;
    result.nx = spec.nx;
    result.ny = spec.ny;
    result.cells.resize(spec.nx * spec.ny);
    const double dx = spec.nx > 1 ? (spec.re_max - spec.re_min) / static_cast<double>(spec.nx - 1) : 0.0;
    const double dy = spec.ny > 1 ? (spec.im_max - spec.im_min) / static_cast<double>(spec.ny - 1) : 0.0;
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(spec.nx * spec.ny); ++t) {
        const std::size_t ix = static_cast<std::size_t>(t) % spec.nx;
        const std::size_t iy = static_cast<std::size_t>(t) / spec.nx;
        const cplx eps(spec.re_min + dx * static_cast<double>(ix),
                       spec.im_min + dy * static_cast<double>(iy));
        result.cells[static_cast<std::size_t>(t)] = classify_point(spec, eps);
    }
    return result;
}

}  // namespace ipt
