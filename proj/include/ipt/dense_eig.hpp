#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

namespace ipt::detail {

// Direct dense eigensolvers templated on the working real type, so the same
// code provides the reduced-precision (float) seed path and the full-precision
// baseline. Hermitian inputs go through cyclic Jacobi; general matrices through
// Hessenberg reduction and explicitly shifted QR with Schur back-substitution.

template <typename R>
struct DenseEig {
    std::vector<std::complex<R>> values;
    std::vector<std::complex<R>> vectors;  // row-major n x n, columns are eigenvectors
    bool converged = false;
};

template <typename R>
bool is_hermitian(const std::vector<std::complex<R>>& a, std::size_t n, R tol) {
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(a[i * n + i].imag()) > tol) return false;
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(a[i * n + j] - std::conj(a[j * n + i])) > tol) return false;
    }
    return true;
}

template <typename R>
DenseEig<R> jacobi_hermitian(std::vector<std::complex<R>> a, std::size_t n, int max_sweeps = 60) {
    using C = std::complex<R>;
    DenseEig<R> out;
    out.vectors.assign(n * n, C{});
    for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + i] = R(1);

    R fro = R(0);
    for (const C& v : a) fro += std::norm(v);
    fro = std::sqrt(fro);
    const R tol = std::numeric_limits<R>::epsilon() * static_cast<R>(n) * (fro + R(1));

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        R off = R(0);
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a[p * n + q]);
        off = std::sqrt(R(2) * off);
        if (off <= tol) {
            out.converged = true;
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const C beta = a[p * n + q];
                const R babs = std::abs(beta);
                if (babs <= tol / static_cast<R>(n)) continue;
                const C phase = beta / babs;
                const R alpha = a[p * n + p].real();
                const R gamma = a[q * n + q].real();
                R t;
                if (alpha == gamma) {
                    t = R(1);
                } else {
                    const R tau = (alpha - gamma) / (R(2) * babs);
                    t = (tau >= R(0) ? R(1) : R(-1)) / (std::abs(tau) + std::sqrt(R(1) + tau * tau));
                }
                const R c = R(1) / std::sqrt(R(1) + t * t);
                const R s = t * c;
                const C sp = s * phase;             // applied with the phase of beta
                const C spc = s * std::conj(phase);

                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const C arp = a[r * n + p];
                    const C arq = a[r * n + q];
                    a[r * n + p] = c * arp + spc * arq;
                    a[r * n + q] = -sp * arp + c * arq;
                    a[p * n + r] = std::conj(a[r * n + p]);
                    a[q * n + r] = std::conj(a[r * n + q]);
                }
                const R app = c * c * alpha + R(2) * c * s * babs + s * s * gamma;
                const R aqq = s * s * alpha - R(2) * c * s * babs + c * c * gamma;
                a[p * n + p] = app;
                a[q * n + q] = aqq;
                a[p * n + q] = C{};
                a[q * n + p] = C{};
                for (std::size_t r = 0; r < n; ++r) {
                    const C vrp = out.vectors[r * n + p];
                    const C vrq = out.vectors[r * n + q];
                    out.vectors[r * n + p] = c * vrp + spc * vrq;
                    out.vectors[r * n + q] = -sp * vrp + c * vrq;
                }
            }
        }
    }

    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = C(a[i * n + i].real(), R(0));

    // Ascending eigenvalue order keeps seeds and comparisons deterministic.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return out.values[x].real() < out.values[y].real(); });
    DenseEig<R> sorted;
    sorted.converged = out.converged;
    sorted.values.resize(n);
    sorted.vectors.assign(n * n, C{});
    for (std::size_t k = 0; k < n; ++k) {
        sorted.values[k] = out.values[order[k]];
        for (std::size_t r = 0; r < n; ++r) sorted.vectors[r * n + k] = out.vectors[r * n + order[k]];
    }
    return sorted;
}

template <typename R>
struct Givens {
    R c;
    std::complex<R> s;
};

template <typename R>
Givens<R> make_givens(std::complex<R> a, std::complex<R> b) {
    using C = std::complex<R>;
    const R aa = std::abs(a), bb = std::abs(b);
    if (bb == R(0)) return {R(1), C{}};
    if (aa == R(0)) return {R(0), std::conj(b) / bb};
    const R r = std::hypot(aa, bb);
    return {aa / r, (a / aa) * std::conj(b) / r};
}

template <typename R>
DenseEig<R> qr_general(std::vector<std::complex<R>> h, std::size_t n) {
    using C = std::complex<R>;
    const R eps = std::numeric_limits<R>::epsilon();
    DenseEig<R> out;
    out.vectors.assign(n * n, C{});
    std::vector<C> q(n * n, C{});
    for (std::size_t i = 0; i < n; ++i) q[i * n + i] = R(1);

    // Householder reduction to Hessenberg form, accumulating the transform.
    for (std::size_t k = 0; k + 2 < n; ++k) {
        R colnorm = R(0);
        for (std::size_t i = k + 1; i < n; ++i) colnorm += std::norm(h[i * n + k]);
        colnorm = std::sqrt(colnorm);
        if (colnorm == R(0)) continue;
        const C x0 = h[(k + 1) * n + k];
        const C phase = std::abs(x0) == R(0) ? C(1) : x0 / std::abs(x0);
        std::vector<C> v(n, C{});
        R vnorm2 = R(0);
        for (std::size_t i = k + 1; i < n; ++i) v[i] = h[i * n + k];
        v[k + 1] += phase * colnorm;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == R(0)) continue;
        // H <- P H P with P = I - 2 v v^H / (v^H v)
        for (std::size_t j = 0; j < n; ++j) {
            C dot{};
            for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * h[i * n + j];
            const C f = R(2) * dot / vnorm2;
            for (std::size_t i = k + 1; i < n; ++i) h[i * n + j] -= f * v[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            C dot{};
            for (std::size_t j = k + 1; j < n; ++j) dot += h[i * n + j] * v[j];
            const C f = R(2) * dot / vnorm2;
            for (std::size_t j = k + 1; j < n; ++j) h[i * n + j] -= f * std::conj(v[j]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            C dot{};
            for (std::size_t j = k + 1; j < n; ++j) dot += q[i * n + j] * v[j];
            const C f = R(2) * dot / vnorm2;
            for (std::size_t j = k + 1; j < n; ++j) q[i * n + j] -= f * std::conj(v[j]);
        }
    }

    // Shifted QR on the Hessenberg matrix, deflating from the bottom.
    std::size_t hi = n == 0 ? 0 : n - 1;
    long budget = 40 * static_cast<long>(n) + 100;
    out.converged = true;
    while (hi > 0) {
        if (--budget < 0) {
            out.converged = false;
            break;
        }
        std::size_t lo = hi;
        while (lo > 0) {
            const R sub = std::abs(h[lo * n + lo - 1]);
            if (sub <= eps * (std::abs(h[(lo - 1) * n + lo - 1]) + std::abs(h[lo * n + lo]))) {
                h[lo * n + lo - 1] = C{};
                break;
            }
            --lo;
        }
        if (lo == hi) {
            --hi;
            continue;
        }

        // Wilkinson shift: trailing 2x2 eigenvalue nearest the corner entry.
        const C a11 = h[(hi - 1) * n + hi - 1], a12 = h[(hi - 1) * n + hi];
        const C a21 = h[hi * n + hi - 1], a22 = h[hi * n + hi];
        const C tr = a11 + a22;
        const C det = a11 * a22 - a12 * a21;
        const C disc = std::sqrt(tr * tr - R(4) * det);
        const C mu1 = (tr + disc) / R(2), mu2 = (tr - disc) / R(2);
        const C mu = std::abs(mu1 - a22) < std::abs(mu2 - a22) ? mu1 : mu2;

        for (std::size_t i = lo; i <= hi; ++i) h[i * n + i] -= mu;
        std::vector<Givens<R>> rots;
        rots.reserve(hi - lo);
        for (std::size_t k = lo; k < hi; ++k) {
            const Givens<R> gk = make_givens(h[k * n + k], h[(k + 1) * n + k]);
            rots.push_back(gk);
            for (std::size_t j = k; j < n; ++j) {
                const C x = h[k * n + j], y = h[(k + 1) * n + j];
                h[k * n + j] = gk.c * x + gk.s * y;
                h[(k + 1) * n + j] = -std::conj(gk.s) * x + gk.c * y;
            }
        }
        for (std::size_t k = lo; k < hi; ++k) {
            const Givens<R>& gk = rots[k - lo];
            const std::size_t top = std::min(k + 2, hi + 1);
            for (std::size_t i = 0; i < top; ++i) {
                const C u = h[i * n + k], v2 = h[i * n + k + 1];
                h[i * n + k] = u * gk.c + v2 * std::conj(gk.s);
                h[i * n + k + 1] = -u * gk.s + v2 * gk.c;
            }
            for (std::size_t i = 0; i < n; ++i) {
                const C u = q[i * n + k], v2 = q[i * n + k + 1];
                q[i * n + k] = u * gk.c + v2 * std::conj(gk.s);
                q[i * n + k + 1] = -u * gk.s + v2 * gk.c;
            }
        }
        for (std::size_t i = lo; i <= hi; ++i) h[i * n + i] += mu;
    }

    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = h[i * n + i];

    // Eigenvectors of the triangular factor by back-substitution, rotated back.
    R tnorm = R(0);
    for (const C& v : h) tnorm = std::max(tnorm, std::abs(v));
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<C> y(n, C{});
        y[k] = R(1);
        for (std::size_t ii = k; ii-- > 0;) {
            C s{};
            for (std::size_t j = ii + 1; j <= k; ++j) s += h[ii * n + j] * y[j];
            C den = h[ii * n + ii] - h[k * n + k];
            if (std::abs(den) < eps * tnorm) den = C(eps * tnorm, R(0));
            y[ii] = -s / den;
        }
        R vn = R(0);
        for (std::size_t i = 0; i < n; ++i) {
            C s{};
            for (std::size_t j = 0; j <= k; ++j) s += q[i * n + j] * y[j];
            out.vectors[i * n + k] = s;
            vn += std::norm(s);
        }
        vn = std::sqrt(vn);
        if (vn > R(0))
            for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + k] /= vn;
    }
    return out;
}

template <typename R>
DenseEig<R> dense_eig(const std::vector<std::complex<R>>& a, std::size_t n) {
    const R htol = std::numeric_limits<R>::epsilon();
    if (is_hermitian(a, n, htol * R(8))) return jacobi_hermitian(a, n);
    return qr_general(a, n);
}

}  // namespace ipt::detail
