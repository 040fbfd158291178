#include "ipt/partition.hpp"

#include <algorithm>
#include <numeric>

#include "ipt/kernels.hpp"

namespace ipt {

DegenerateDiagonal::DegenerateDiagonal(std::size_t i_, std::size_t j_, double gap_, double tol_)
    : std::runtime_error("degenerate diagonal: |d[" + std::to_string(i_) + "] - d[" +
                         std::to_string(j_) + "]| = " + std::to_string(gap_) +
                         " <= tolerance " + std::to_string(tol_)),
      i(i_), j(j_), gap(gap_), tol(tol_) {}

Partition partition(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("partition: matrix must be square");
    const std::size_t n = m.rows();
    Partition p;
    p.d.resize(n);
    if (m.is_dense()) {
        ComplexMatrix delta = m;
        for (std::size_t i = 0; i < n; ++i) {
            p.d[i] = delta.at(i, i);
            delta.at(i, i) = cplx{};
        }
        p.delta = std::move(delta);
    } else {
        std::vector<Triplet> off;
        off.reserve(m.nonzero_count());
        const auto& offs = m.row_offsets();
        const auto& cols = m.col_indices();
        const auto& vals = m.values();
        for (std::size_t i = 0; i < n; ++i) {
            p.d[i] = cplx{};
            for (std::size_t k = offs[i]; k < offs[i + 1]; ++k) {
                if (cols[k] == i)
                    p.d[i] = vals[k];
                else
                    off.push_back({i, cols[k], vals[k]});
            }
        }
        p.delta = ComplexMatrix::sparse_from_triplets(n, n, std::move(off));
    }
    return p;
}

ComplexMatrix reconstruct(const Partition& p) {
    ComplexMatrix m = p.delta.to_dense();
    for (std::size_t i = 0; i < p.size(); ++i) m.at(i, i) += p.d[i];
    return m;
}

InverseGaps::InverseGaps(cvec d, double degeneracy_tol) : d_(std::move(d)), tol_(degeneracy_tol) {
    const std::size_t n = d_.size();
    // Pairs closer than tol must satisfy |Re d_i - Re d_j| <= tol, so a sweep
    // over real-part-sorted entries finds every offender without O(n^2) work.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
        if (d_[a].real() != d_[b].real()) return d_[a].real() < d_[b].real();
        return d_[a].imag() < d_[b].imag();
    });
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (d_[order[b]].real() - d_[order[a]].real() > tol_) break;
            const double gap = std::abs(d_[order[a]] - d_[order[b]]);
            if (gap <= tol_) {
                const std::size_t i = std::min(order[a], order[b]);
                const std::size_t j = std::max(order[a], order[b]);
                throw DegenerateDiagonal(i, j, gap, tol_);
            }
        }
    }
}

cvec InverseGaps::column(std::size_t i) const {
    cvec g(d_.size());
    for (std::size_t j = 0; j < d_.size(); ++j) g[j] = entry(j, i);
    return g;
}

ComplexMatrix InverseGaps::to_matrix() const {
    const std::size_t n = d_.size();
    ComplexMatrix g = ComplexMatrix::dense(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) g.at(j, k) = entry(j, k);
    return g;
}

InverseGaps build_gaps(const Partition& p, double degeneracy_tol) {
    if (degeneracy_tol < 0.0) degeneracy_tol = 1e-12 * kernels::max_abs(p.d);
    return InverseGaps(p.d, degeneracy_tol);
}

namespace {

// Deterministic pseudo-random start vector; any fixed non-degenerate direction
// works for the power iteration.
cvec power_start(std::size_t n) {
    cvec v(n);
    std::uint64_t x = 0x9e3779b97f4a7c15ull;
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

template <typename Apply, typename ApplyAdj>
SpectralNormEstimate power_norm(std::size_t n, Apply&& apply, ApplyAdj&& apply_adj,
                                double fro_fallback, double tol, int max_iters) {
    if (n == 0) return {0.0, true};
    cvec v = power_start(n), w(n), u(n);
    double sigma = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        apply(v.data(), w.data());
        const double s = kernels::nrm2(w);
        if (s == 0.0) return {0.0, true};  // operator annihilates the iterate
        apply_adj(w.data(), u.data());
        const double un = kernels::nrm2(u);
        if (un == 0.0) return {s, true};
        for (std::size_t i = 0; i < n; ++i) v[i] = u[i] / un;
        if (it > 0 && std::abs(s - sigma) <= tol * s) return {s, true};
        sigma = s;
    }
    return {fro_fallback, false};
}

}  // namespace

SpectralNormEstimate spectral_norm_estimate(const ComplexMatrix& m, double tol, int max_iters) {
    if (m.empty()) throw std::invalid_argument("spectral_norm: empty matrix");
    const double fro = kernels::frobenius_norm(m);
    if (fro == 0.0) return {0.0, true};
    if (m.is_dense()) {
        return power_norm(
            m.cols(), [&](const cplx* x, cplx* y) { kernels::matvec(m, x, y); },
            [&](const cplx* x, cplx* y) { kernels::adjoint_matvec_dense(m, x, y); }, fro, tol,
            max_iters);
    }
    const ComplexMatrix mh = m.adjoint();
    return power_norm(
        m.cols(), [&](const cplx* x, cplx* y) { kernels::matvec(m, x, y); },
        [&](const cplx* x, cplx* y) { kernels::matvec(mh, x, y); }, fro, tol, max_iters);
}

double spectral_norm(const ComplexMatrix& m, double tol, int max_iters) {
    return spectral_norm_estimate(m, tol, max_iters).value;
}

SpectralNormEstimate gaps_spectral_norm_estimate(const InverseGaps& g, double tol, int max_iters) {
    const std::size_t n = g.size();
    double fro = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) fro += std::norm(g.entry(j, k));
    fro = std::sqrt(fro);
    if (fro == 0.0) return {0.0, true};
    auto apply = [&](const cplx* x, cplx* y) {
        for (std::size_t j = 0; j < n; ++j) {
            cplx s{};
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) s += x[k] / (g.diagonal()[j] - g.diagonal()[k]);
            y[j] = s;
        }
    };
    auto apply_adj = [&](const cplx* x, cplx* y) {
        for (std::size_t k = 0; k < n; ++k) {
            cplx s{};
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) s += std::conj(1.0 / (g.diagonal()[j] - g.diagonal()[k])) * x[j];
            y[k] = s;
        }
    };
    return power_norm(n, apply, apply_adj, fro, tol, max_iters);
}

ConvergenceCertificate certify(const Partition& p, const InverseGaps& g, double tol,
                               int max_iters) {
    ConvergenceCertificate cert;
    cert.estimator_tolerance = tol;
    const double dfro = kernels::frobenius_norm(p.delta);
    if (dfro == 0.0) {
        cert.g_norm = gaps_spectral_norm_estimate(g, tol, max_iters).value;
        cert.delta_norm = 0.0;
    } else {
        cert.g_norm = gaps_spectral_norm_estimate(g, tol, max_iters).value;
        cert.delta_norm = spectral_norm_estimate(p.delta, tol, max_iters).value;
    }
    cert.product = cert.g_norm * cert.delta_norm;
    cert.certified = cert.product < kContractionThreshold;
    return cert;
}

}  // namespace ipt
