#include "ipt/solver.hpp"

#include <cmath>
#include <cstdint>

#include "ipt/detail/single_step.hpp"
#include "ipt/kernels.hpp"
#include "ipt/lu.hpp"

namespace ipt {

namespace {

using i64 = std::int64_t;
using detail::assemble_single;
using detail::rel_step;

void validate(const IterationConfig& cfg) {
    if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("config: tolerance must be positive");
    if (cfg.max_iterations <= 0) throw std::invalid_argument("config: max_iterations must be positive");
    if (!(cfg.divergence_threshold > 1.0))
        throw std::invalid_argument("config: divergence_threshold must exceed 1");
}

void check_anchor(const Partition& p, const InverseGaps& g, std::size_t anchor) {
    if (p.size() != g.size()) throw std::invalid_argument("solver: partition/gaps size mismatch");
    if (p.delta.rows() != p.size() || p.delta.cols() != p.size())
        throw std::invalid_argument("solver: residual must be square of matching size");
    if (anchor >= p.size()) throw std::invalid_argument("solver: anchor out of range");
}

cvec start_vector(const Partition& p, std::size_t anchor, const cvec* warm) {
    const std::size_t n = p.size();
    cvec z(n, cplx{});
    if (warm == nullptr) {
        z[anchor] = 1.0;
        return z;
    }
    if (warm->size() != n) throw std::invalid_argument("solver: warm start size mismatch");
    const cplx za = (*warm)[anchor];
    if (za == cplx{}) throw std::invalid_argument("solver: warm start has zero anchor coordinate");
    for (std::size_t j = 0; j < n; ++j) z[j] = (*warm)[j] / za;
    z[anchor] = 1.0;
    return z;
}

// Shared single-column loop; schedule(k) gives the residual scaling at step k
// and schedule_done(k) gates the convergence test.
template <typename Schedule, typename Done>
EigenpairResult run_single(const Partition& p, const InverseGaps& g, std::size_t anchor,
                           const IterationConfig& cfg, const cvec* warm, Schedule&& schedule,
                           Done&& schedule_done) {
    validate(cfg);
    check_anchor(p, g, anchor);
    const std::size_t n = p.size();
    const cvec g_col = g.column(anchor);

    EigenpairResult res;
    res.anchor = anchor;
    res.z = start_vector(p, anchor, warm);

    cvec w(n), fz(n);
    for (int k = 0; k < cfg.max_iterations; ++k) {
        kernels::matvec(p.delta, res.z.data(), w.data());
        ++res.matvec_count;
        assemble_single(g_col, anchor, res.z, w, schedule(k), fz);
        const double step = rel_step(res.z, fz);
        res.z.swap(fz);
        res.iterations = k + 1;
        res.final_step = step;
        if (cfg.record_trace) res.trace.push_back(step);
        const double zn = kernels::nrm2(res.z);
        if (!std::isfinite(zn) || zn > cfg.divergence_threshold) {
            res.status = SolveStatus::Diverged;
            break;
        }
        if (schedule_done(k) && step <= cfg.tolerance) {
            res.status = SolveStatus::Converged;
            break;
        }
    }

    kernels::matvec(p.delta, res.z.data(), w.data());
    ++res.matvec_count;
    res.eigenvalue = p.d[anchor] + w[anchor];
    double rnorm = 0.0, znorm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        rnorm += std::norm(p.d[j] * res.z[j] + w[j] - res.eigenvalue * res.z[j]);
        znorm += std::norm(res.z[j]);
    }
    res.residual = std::sqrt(rnorm) / std::sqrt(znorm);
    return res;
}

cvec deterministic_unit(std::size_t n) {
    cvec v(n);
    std::uint64_t x = 0x243f6a8885a308d3ull;
    for (std::size_t i = 0; i < n; ++i) {
        x += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z ^= z >> 31;
        v[i] = cplx(0.5 + static_cast<double>(z >> 40) / static_cast<double>(1 << 24), 0.0);
    }
    const double nv = kernels::nrm2(v);
    for (cplx& c : v) c /= nv;
    return v;
}

}  // namespace

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::MaxIterations: return "max_iterations";
        case SolveStatus::Diverged: return "diverged";
    }
    return "unknown";
}

cvec apply_map_single(const Partition& p, const InverseGaps& g, std::size_t anchor,
                      const cvec& z) {
    check_anchor(p, g, anchor);
    if (z.size() != p.size()) throw std::invalid_argument("apply_map_single: size mismatch");
    cvec w(p.size()), out(p.size());
    kernels::matvec(p.delta, z.data(), w.data());
    assemble_single(g.column(anchor), anchor, z, w, 1.0, out);
    return out;
}

EigenpairResult solve_single(const Partition& p, const InverseGaps& g, std::size_t anchor,
                             const IterationConfig& config, const cvec* warm_start) {
    return run_single(
        p, g, anchor, config, warm_start, [](int) { return 1.0; }, [](int) { return true; });
}

EigenpairResult solve_single_continuation(const Partition& p, const InverseGaps& g,
                                          std::size_t anchor, const IterationConfig& config,
                                          double shrink_alpha) {
    if (!(shrink_alpha >= 0.0 && shrink_alpha < 1.0))
        throw std::invalid_argument("continuation: shrink factor must lie in [0, 1)");
    validate(config);
    // alpha^k tracked incrementally; once it dips below a fraction of the step
    // tolerance the schedule snaps to 1 and the plain stopping rule applies.
    const double snap = 0.25 * config.tolerance;
    double ak = 1.0;
    auto schedule = [&ak, shrink_alpha, snap](int k) {
        if (k > 0) ak *= shrink_alpha;
        return ak <= snap ? 1.0 : 1.0 - ak;
    };
    auto done = [&ak, snap](int) { return ak <= snap; };
    return run_single(p, g, anchor, config, nullptr, schedule, done);
}

ComplexMatrix apply_map_full(const Partition& p, const InverseGaps& g, const ComplexMatrix& Z) {
    check_anchor(p, g, 0);
    if (Z.rows() != p.size() || Z.cols() != p.size())
        throw std::invalid_argument("apply_map_full: size mismatch");
    const std::size_t n = p.size();
    ComplexMatrix zd = Z.to_dense();
    ComplexMatrix w = ComplexMatrix::dense(n, n);
    kernels::matmul(p.delta, zd, w);
    cvec wd(n);
    for (std::size_t j = 0; j < n; ++j) wd[j] = w.at(j, j);
    ComplexMatrix out = ComplexMatrix::dense(n, n);
    const cvec& d = p.d;
#pragma omp parallel for schedule(static)
    for (i64 i = 0; i < static_cast<i64>(n); ++i) {
        const std::size_t ii = static_cast<std::size_t>(i);
        const cplx* zr = zd.row(ii);
        const cplx* wr = w.row(ii);
        cplx* fr = out.row(ii);
        for (std::size_t j = 0; j < n; ++j)
            fr[j] = ii == j ? cplx(1.0) : (zr[j] * wd[j] - wr[j]) / (d[ii] - d[j]);
    }
    return out;
}

SpectrumResult solve_full(const Partition& p, const InverseGaps& g, const IterationConfig& config,
                          const ComplexMatrix* warm_start) {
    validate(config);
    check_anchor(p, g, 0);
    const std::size_t n = p.size();
    const cvec& d = p.d;

    SpectrumResult res;
    if (warm_start == nullptr) {
        res.Z = ComplexMatrix::identity(n);
    } else {
        res.Z = warm_start->to_dense();
        if (res.Z.rows() != n || res.Z.cols() != n)
            throw std::invalid_argument("solve_full: warm start size mismatch");
        for (std::size_t j = 0; j < n; ++j) {
            const cplx zjj = res.Z.at(j, j);
            if (zjj == cplx{})
                throw std::invalid_argument("solve_full: warm start has zero diagonal entry");
            for (std::size_t i = 0; i < n; ++i) res.Z.at(i, j) /= zjj;
            res.Z.at(j, j) = 1.0;
        }
    }

    ComplexMatrix w = ComplexMatrix::dense(n, n);
    ComplexMatrix fz = ComplexMatrix::dense(n, n);
    cvec wd(n);
    std::vector<double> row_diff(n), row_cur(n), row_new(n);

    for (int k = 0; k < config.max_iterations; ++k) {
        kernels::matmul(p.delta, res.Z, w);
        ++res.matmul_count;
        for (std::size_t j = 0; j < n; ++j) wd[j] = w.at(j, j);
#pragma omp parallel for schedule(static)
        for (i64 i = 0; i < static_cast<i64>(n); ++i) {
            const std::size_t ii = static_cast<std::size_t>(i);
            const cplx* zr = res.Z.row(ii);
            const cplx* wr = w.row(ii);
            cplx* fr = fz.row(ii);
            double diff = 0.0, cur = 0.0, next = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const cplx f = ii == j ? cplx(1.0) : (zr[j] * wd[j] - wr[j]) / (d[ii] - d[j]);
                diff += std::norm(f - zr[j]);
                cur += std::norm(zr[j]);
                next += std::norm(f);
                fr[j] = f;
            }
            row_diff[ii] = diff;
            row_cur[ii] = cur;
            row_new[ii] = next;
        }
        double diff2 = 0.0, cur2 = 0.0, new2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            diff2 += row_diff[i];
            cur2 += row_cur[i];
            new2 += row_new[i];
        }
        const double step = std::sqrt(diff2) / std::sqrt(cur2);
        std::swap(res.Z, fz);
        res.iterations = k + 1;
        res.final_step = step;
        if (config.record_trace) res.trace.push_back(step);
        const double zn = std::sqrt(new2);
        if (!std::isfinite(zn) || zn > config.divergence_threshold) {
            res.status = SolveStatus::Diverged;
            break;
        }
        if (step <= config.tolerance) {
            res.status = SolveStatus::Converged;
            break;
        }
    }

    // Eigenvalues and residual from one final product with the settled basis.
    kernels::matmul(p.delta, res.Z, w);
    ++res.matmul_count;
    res.eigenvalues.resize(n);
    for (std::size_t j = 0; j < n; ++j) res.eigenvalues[j] = d[j] + w.at(j, j);
    std::vector<double> row_res(n);
#pragma omp parallel for schedule(static)
    for (i64 i = 0; i < static_cast<i64>(n); ++i) {
        const std::size_t ii = static_cast<std::size_t>(i);
        const cplx* zr = res.Z.row(ii);
        const cplx* wr = w.row(ii);
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            s += std::norm(d[ii] * zr[j] + wr[j] - zr[j] * res.eigenvalues[j]);
        row_res[ii] = s;
    }
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) r2 += row_res[i];
    res.residual_frobenius = std::sqrt(r2);
    res.min_singular_value_estimate = smallest_singular_value_estimate(res.Z);
    return res;
}

double smallest_singular_value_estimate(const ComplexMatrix& z, int max_iters, double tol) {
    const std::size_t n = z.rows();
    if (n == 0 || z.cols() != n)
        throw std::invalid_argument("smallest_singular_value_estimate: square input required");
    ComplexMatrix h = ComplexMatrix::dense(n, n);
    kernels::matmul(z.adjoint(), z.to_dense(), h);
    const LuFactors f = lu_factor(h);
    if (f.singular) return 0.0;
    cvec v = deterministic_unit(n);
    double rho = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        cvec u = lu_solve(f, v);
        const double un = kernels::nrm2(u);
        if (!std::isfinite(un) || un == 0.0) return 0.0;
        for (std::size_t i = 0; i < n; ++i) v[i] = u[i] / un;
        if (it > 0 && std::abs(un - rho) <= tol * un) {
            rho = un;
            break;
        }
        rho = un;
    }
    return 1.0 / std::sqrt(rho);
}

}  // namespace ipt
