#include "ipt/anderson.hpp"

#include <cmath>

#include "ipt/detail/single_step.hpp"
#include "ipt/kernels.hpp"
#include "ipt/lu.hpp"

namespace ipt {

namespace {

// Least squares min |rhs - A gamma| via modified Gram-Schmidt with
// reorthogonalization. Returns false when a column is numerically dependent.
bool qr_least_squares(const std::vector<cvec>& cols, const cvec& rhs, cvec& gamma) {
    const std::size_t h = cols.size();
    const std::size_t n = rhs.size();
    double fro = 0.0;
    for (const cvec& c : cols)
        for (const cplx& v : c) fro += std::norm(v);
    fro = std::sqrt(fro);
    const double rank_tol = 1e-13 * fro;

    std::vector<cvec> q(h, cvec(n));
    std::vector<cvec> r(h, cvec(h, cplx{}));
    for (std::size_t j = 0; j < h; ++j) {
        cvec v = cols[j];
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < j; ++i) {
                cplx c{};
                for (std::size_t t = 0; t < n; ++t) c += std::conj(q[i][t]) * v[t];
                r[i][j] += c;
                for (std::size_t t = 0; t < n; ++t) v[t] -= c * q[i][t];
            }
        }
        const double vn = kernels::nrm2(v);
        if (!(vn > rank_tol)) return false;
        r[j][j] = vn;
        for (std::size_t t = 0; t < n; ++t) q[j][t] = v[t] / vn;
    }

    cvec b(h, cplx{});
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t t = 0; t < n; ++t) b[i] += std::conj(q[i][t]) * rhs[t];
    gamma.assign(h, cplx{});
    for (std::size_t ii = h; ii-- > 0;) {
        cplx s = b[ii];
        for (std::size_t j = ii + 1; j < h; ++j) s -= r[ii][j] * gamma[j];
        gamma[ii] = s / r[ii][ii];
    }
    return true;
}

// Tikhonov-regularized normal equations, used when plain QR is rank-deficient.
bool regularized_least_squares(const std::vector<cvec>& cols, const cvec& rhs, double reg_factor,
                               cvec& gamma) {
    const std::size_t h = cols.size();
    const std::size_t n = rhs.size();
    ComplexMatrix normal = ComplexMatrix::dense(h, h);
    cvec b(h, cplx{});
    double scale = 0.0;
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = 0; j < h; ++j) {
            cplx s{};
            for (std::size_t t = 0; t < n; ++t) s += std::conj(cols[i][t]) * cols[j][t];
            normal.at(i, j) = s;
            if (i == j) scale = std::max(scale, std::abs(s));
        }
        for (std::size_t t = 0; t < n; ++t) b[i] += std::conj(cols[i][t]) * rhs[t];
    }
    const double lambda = reg_factor * scale;
    for (std::size_t i = 0; i < h; ++i) normal.at(i, i) += lambda;
    const LuFactors f = lu_factor(normal);
    if (f.singular) return false;
    gamma = lu_solve(f, b);
    for (const cplx& v : gamma)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

}  // namespace

AndersonState::AndersonState(int memory, std::size_t anchor, double regularization)
    : memory_(memory), anchor_(anchor), regularization_(regularization) {
    if (memory < 0) throw std::invalid_argument("anderson: memory must be non-negative");
}

void AndersonState::reset() {
    zs_.clear();
    fzs_.clear();
    worsening_streak_ = 0;
    previous_residual_ = -1.0;
}

cvec AndersonState::step(const cvec& z, const cvec& fz) {
    const std::size_t n = z.size();

    // Restart when the fixed-point residual grows three steps in a row; stale
    // history mixes in directions from the wrong side of a basin boundary.
    double res = 0.0;
    for (std::size_t t = 0; t < n; ++t) res += std::norm(fz[t] - z[t]);
    res = std::sqrt(res);
    if (previous_residual_ >= 0.0 && res > previous_residual_) {
        if (++worsening_streak_ >= 3) {
            zs_.clear();
            fzs_.clear();
            worsening_streak_ = 0;
        }
    } else {
        worsening_streak_ = 0;
    }
    previous_residual_ = res;

    const std::size_t h = zs_.size();
    if (memory_ == 0 || h == 0) {
        weights_.assign(1, cplx(1.0));
        if (memory_ > 0) {
            zs_.push_back(z);
            fzs_.push_back(fz);
        }
        return fz;
    }

    // Difference columns of the residuals g_j = f(z_j) - z_j over the stored
    // sequence extended by the current pair.
    std::vector<cvec> cols(h, cvec(n));
    cvec g_cur(n);
    for (std::size_t t = 0; t < n; ++t) g_cur[t] = fz[t] - z[t];
    for (std::size_t j = 0; j < h; ++j) {
        const cvec& z_a = zs_[j];
        const cvec& f_a = fzs_[j];
        const cvec& z_b = (j + 1 < h) ? zs_[j + 1] : z;
        const cvec& f_b = (j + 1 < h) ? fzs_[j + 1] : fz;
        for (std::size_t t = 0; t < n; ++t) cols[j][t] = (f_b[t] - z_b[t]) - (f_a[t] - z_a[t]);
    }

    cvec gamma;
    bool ok = qr_least_squares(cols, g_cur, gamma);
    if (!ok) {
        const double reg = regularization_ > 0.0 ? regularization_ : 1e-12;
        ok = regularized_least_squares(cols, g_cur, reg, gamma);
    }

    cvec next;
    if (!ok) {
        weights_.assign(1, cplx(1.0));
        next = fz;
    } else {
        // Affine weights on the images: alpha_0 = gamma_0,
        // alpha_j = gamma_j - gamma_{j-1}, alpha_h = 1 - gamma_{h-1}.
        weights_.assign(h + 1, cplx{});
        weights_[0] = gamma[0];
        for (std::size_t j = 1; j < h; ++j) weights_[j] = gamma[j] - gamma[j - 1];
        weights_[h] = cplx(1.0) - gamma[h - 1];
        next.assign(n, cplx{});
        for (std::size_t j = 0; j <= h; ++j) {
            const cvec& img = (j < h) ? fzs_[j] : fz;
            const cplx wgt = weights_[j];
            for (std::size_t t = 0; t < n; ++t) next[t] += wgt * img[t];
        }
    }

    // Re-pin the chart coordinate. Affine mixing preserves it exactly in exact
    // arithmetic; renormalizing absorbs rounding drift.
    const cplx za = next[anchor_];
    if (za != cplx{} && za != cplx(1.0)) {
        for (std::size_t t = 0; t < n; ++t) next[t] /= za;
    }
    next[anchor_] = 1.0;

    zs_.push_back(z);
    fzs_.push_back(fz);
    while (static_cast<int>(zs_.size()) > memory_) {
        zs_.pop_front();
        fzs_.pop_front();
    }
    return next;
}

cvec anderson_step(AndersonState& state, const cvec& z, const cvec& fz) {
    return state.step(z, fz);
}

EigenpairResult solve_single_accelerated(const Partition& p, const InverseGaps& g,
                                         std::size_t anchor, const IterationConfig& config,
                                         int memory) {
    if (!(config.tolerance > 0.0)) throw std::invalid_argument("config: tolerance must be positive");
    if (config.max_iterations <= 0)
        throw std::invalid_argument("config: max_iterations must be positive");
    if (p.size() != g.size()) throw std::invalid_argument("solver: partition/gaps size mismatch");
    if (anchor >= p.size()) throw std::invalid_argument("solver: anchor out of range");

    const std::size_t n = p.size();
    const cvec g_col = g.column(anchor);
    AndersonState state(memory, anchor);

    EigenpairResult res;
    res.anchor = anchor;
    res.z.assign(n, cplx{});
    res.z[anchor] = 1.0;

    cvec w(n), fz(n);
    bool finished = false;
    for (int k = 0; k < config.max_iterations; ++k) {
        kernels::matvec(p.delta, res.z.data(), w.data());
        ++res.matvec_count;
        res.iterations = k + 1;  // one map evaluation per pass, counting the last
        const cplx lambda = p.d[anchor] + w[anchor];
        double rnorm = 0.0, znorm = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            rnorm += std::norm(p.d[j] * res.z[j] + w[j] - lambda * res.z[j]);
            znorm += std::norm(res.z[j]);
        }
        rnorm = std::sqrt(rnorm);
        znorm = std::sqrt(znorm);
        if (rnorm <= config.residual_tolerance) {
            res.eigenvalue = lambda;
            res.residual = rnorm / znorm;
            res.status = SolveStatus::Converged;
            finished = true;
            break;
        }
        detail::assemble_single(g_col, anchor, res.z, w, 1.0, fz);
        const double step = detail::rel_step(res.z, fz);
        res.z = anderson_step(state, res.z, fz);
        res.final_step = step;
        if (config.record_trace) res.trace.push_back(step);
        const double zn = kernels::nrm2(res.z);
        if (!std::isfinite(zn) || zn > config.divergence_threshold) {
            res.status = SolveStatus::Diverged;
            break;
        }
    }

    if (!finished) {
        kernels::matvec(p.delta, res.z.data(), w.data());
        ++res.matvec_count;
        res.eigenvalue = p.d[anchor] + w[anchor];
        double rnorm = 0.0, znorm = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            rnorm += std::norm(p.d[j] * res.z[j] + w[j] - res.eigenvalue * res.z[j]);
            znorm += std::norm(res.z[j]);
        }
        res.residual = std::sqrt(rnorm) / std::sqrt(znorm);
    }
    return res;
}

}  // namespace ipt
