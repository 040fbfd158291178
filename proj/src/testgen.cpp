#include "ipt/testgen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "ipt/rng.hpp"

namespace ipt {

namespace {

// Draw order: values row-major. Streams: 0 = dense values / sparse diagonal,
// 1 = sparse positions, 2 = sparse values.
std::vector<double> normal_block(Rng& rng, std::size_t count) {
    std::vector<double> v(count);
    for (double& x : v) x = rng.normal();
    return v;
}

// Unordered pairs (i < j), sampled uniformly without replacement via
// rejection into an ordered set; emitted ascending, so the pattern is a pure
// function of the seed.
std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(Rng& rng, std::size_t n,
                                                              std::size_t count) {
    const std::size_t universe = n * (n - 1) / 2;
    if (count > universe) count = universe;
    std::set<std::uint64_t> keys;
    while (keys.size() < count) {
        const std::size_t i = rng.below(n);
        const std::size_t j = rng.below(n);
        if (i == j) continue;
        const std::size_t a = std::min(i, j), b = std::max(i, j);
        keys.insert(static_cast<std::uint64_t>(a) * n + b);
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(count);
    for (std::uint64_t k : keys) pairs.emplace_back(k / n, k % n);
    return pairs;
}

std::vector<std::pair<std::size_t, std::size_t>> sample_ordered(Rng& rng, std::size_t n,
                                                                std::size_t count) {
    const std::size_t universe = n * (n - 1);
    if (count > universe) count = universe;
    std::set<std::uint64_t> keys;
    while (keys.size() < count) {
        const std::size_t i = rng.below(n);
        const std::size_t j = rng.below(n);
        if (i == j) continue;
        keys.insert(static_cast<std::uint64_t>(i) * n + j);
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(count);
    for (std::uint64_t k : keys) pairs.emplace_back(k / n, k % n);
    return pairs;
}

}  // namespace

ComplexMatrix gen_near_diagonal(const NearDiagonalSpec& spec) {
    const std::size_t n = spec.n;
    if (n < 2) throw std::invalid_argument("gen_near_diagonal: n must be at least 2");
    if (spec.sparse_density && !(*spec.sparse_density > 0.0 && *spec.sparse_density <= 1.0))
        throw std::invalid_argument("gen_near_diagonal: density must lie in (0, 1]");

    if (!spec.sparse_density) {
        Rng rng(Rng::stream_seed(spec.seed, 0));
        std::vector<double> r = normal_block(rng, n * n);
        if (spec.symmetric) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    const double s = 0.5 * (r[i * n + j] + r[j * n + i]);
                    r[i * n + j] = s;
                    r[j * n + i] = s;
                }
        }
        ComplexMatrix m = ComplexMatrix::dense(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double v = spec.eps * r[i * n + j];
                if (i == j) v += static_cast<double>(i + 1);
                m.at(i, j) = v;
            }
        return m;
    }

    Rng diag_rng(Rng::stream_seed(spec.seed, 0));
    Rng pos_rng(Rng::stream_seed(spec.seed, 1));
    Rng val_rng(Rng::stream_seed(spec.seed, 2));
    std::vector<Triplet> entries;
    for (std::size_t i = 0; i < n; ++i) {
        double v = static_cast<double>(i + 1);
        if (spec.include_diagonal) v += spec.eps * diag_rng.normal();
        entries.push_back({i, i, v});
    }
    const double target = *spec.sparse_density * static_cast<double>(n) * static_cast<double>(n);
    if (spec.symmetric) {
        const auto pairs = sample_pairs(pos_rng, n, static_cast<std::size_t>(target / 2.0 + 0.5));
        for (const auto& [i, j] : pairs) {
            const double v = spec.eps * val_rng.normal();
            entries.push_back({i, j, v});
            entries.push_back({j, i, v});
        }
    } else {
        const auto pos = sample_ordered(pos_rng, n, static_cast<std::size_t>(target + 0.5));
        for (const auto& [i, j] : pos) entries.push_back({i, j, spec.eps * val_rng.normal()});
    }
    return ComplexMatrix::sparse_from_triplets(n, n, std::move(entries));
}

ComplexMatrix gen_ill_conditioned(std::size_t n, double alpha, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("gen_ill_conditioned: n must be at least 2");
    if (alpha < 0.0) throw std::invalid_argument("gen_ill_conditioned: alpha must be non-negative");
    if (alpha == 0.0) return ComplexMatrix::identity(n);  // any similarity fixes the identity

    Rng rng(Rng::stream_seed(seed, 0));
    std::vector<double> a = normal_block(rng, n * n);

    // Householder QR; Q accumulated explicitly, column signs fixed so the
    // R diagonal is positive (Haar-like distribution).
    std::vector<double> q(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) q[i * n + i] = 1.0;
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < n; ++i) norm += a[i * n + k] * a[i * n + k];
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        const double akk = a[k * n + k];
        const double sign = akk >= 0.0 ? 1.0 : -1.0;
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < n; ++i) {
            v[i] = a[i * n + k] + (i == k ? sign * norm : 0.0);
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 == 0.0) continue;
        for (std::size_t j = k; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < n; ++i) dot += v[i] * a[i * n + j];
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < n; ++i) a[i * n + j] -= f * v[i];
        }
        for (std::size_t j = 0; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < n; ++i) dot += v[i] * q[j * n + i];
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < n; ++i) q[j * n + i] -= f * v[i];
        }
    }
    // q now holds Q with columns as reflected basis (row-major, q[j*n+i] = Q_ji).
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k * n + k] < 0.0)
            for (std::size_t j = 0; j < n; ++j) q[j * n + k] = -q[j * n + k];
    }

    std::vector<double> dvals(n);
    for (std::size_t k = 0; k < n; ++k)
        dvals[k] = std::pow(10.0, -alpha * static_cast<double>(k + 1) / static_cast<double>(n));

    // J = Q^T D Q built on the upper triangle and mirrored, exactly symmetric.
    ComplexMatrix m = ComplexMatrix::dense(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += q[k * n + i] * dvals[k] * q[k * n + j];
            m.at(i, j) = s;
            m.at(j, i) = s;
        }
    return m;
}

ComplexMatrix gen_fci_like(std::size_t n, double density, double gap_scale, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("gen_fci_like: n must be at least 2");
    if (density < 0.0 || density > 1.0)
        throw std::invalid_argument("gen_fci_like: density must lie in [0, 1]");

    std::vector<Triplet> entries;
    for (std::size_t i = 0; i < n; ++i)
        entries.push_back({i, i, gap_scale * static_cast<double>(i + 1)});
    if (density > 0.0) {
        Rng pos_rng(Rng::stream_seed(seed, 1));
        Rng val_rng(Rng::stream_seed(seed, 2));
        const double target = density * static_cast<double>(n) * static_cast<double>(n);
        const auto pairs = sample_pairs(pos_rng, n, static_cast<std::size_t>(target / 2.0 + 0.5));
        for (const auto& [i, j] : pairs) {
            const double v = val_rng.normal();
            entries.push_back({i, j, v});
            entries.push_back({j, i, v});
        }
    }
    return ComplexMatrix::sparse_from_triplets(n, n, std::move(entries));
}

Partition explicit_2x2(cplx eps) {
    Partition p;
    p.d = {cplx(0.0), cplx(1.0)};
    p.delta = ComplexMatrix::dense(2, 2, {cplx{}, eps, eps, cplx{}});
    return p;
}

Partition explicit_3x3(cplx eps) {
    Partition p;
    p.d = {cplx(0.0), cplx(1.0), cplx(3.0)};
    p.delta = ComplexMatrix::dense(
        3, 3, {cplx{}, eps * 1.0, eps * 2.0, eps * 1.0, cplx{}, eps * 3.0, eps * 2.0, eps * 3.0,
               cplx{}});
    return p;
}

}  // namespace ipt
