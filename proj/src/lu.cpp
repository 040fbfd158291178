#include "ipt/lu.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ipt {

LuFactors lu_factor(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("lu_factor: matrix must be square");
    const std::size_t n = a.rows();
    LuFactors f;
    f.n = n;
    ComplexMatrix work = a.to_dense();
    f.lu.assign(work.data(), work.data() + n * n);
    f.perm.resize(n);
    std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});

    double scale = 0.0;
    for (const cplx& v : f.lu) scale = std::max(scale, std::abs(v));
    const double tiny = scale * std::numeric_limits<double>::epsilon() * static_cast<double>(n);

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(f.lu[k * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(f.lu[i * n + k]);
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best <= tiny) {
            f.singular = true;
            continue;
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(f.lu[k * n + j], f.lu[piv * n + j]);
            std::swap(f.perm[k], f.perm[piv]);
        }
        const cplx pivot = f.lu[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx m = f.lu[i * n + k] / pivot;
            f.lu[i * n + k] = m;
            if (m != cplx{})
                for (std::size_t j = k + 1; j < n; ++j) f.lu[i * n + j] -= m * f.lu[k * n + j];
        }
    }
    return f;
}

cvec lu_solve(const LuFactors& f, const cvec& b) {
    const std::size_t n = f.n;
    if (b.size() != n) throw std::invalid_argument("lu_solve: size mismatch");
    cvec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (std::size_t i = 1; i < n; ++i) {
        cplx s = x[i];
        for (std::size_t j = 0; j < i; ++j) s -= f.lu[i * n + j] * x[j];
        x[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
        cplx s = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= f.lu[ii * n + j] * x[j];
        x[ii] = s / f.lu[ii * n + ii];
    }
    return x;
}

cvec lu_solve_adjoint(const LuFactors& f, const cvec& b) {
    // A = P^T L U, so A^H x = b solves U^H w = b, L^H v = w, x = P^T v.
    const std::size_t n = f.n;
    if (b.size() != n) throw std::invalid_argument("lu_solve_adjoint: size mismatch");
    cvec w(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx s = b[i];
        for (std::size_t j = 0; j < i; ++j) s -= std::conj(f.lu[j * n + i]) * w[j];
        w[i] = s / std::conj(f.lu[i * n + i]);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        cplx s = w[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= std::conj(f.lu[j * n + ii]) * w[j];
        w[ii] = s;
    }
    cvec x(n);
    for (std::size_t i = 0; i < n; ++i) x[f.perm[i]] = w[i];
    return x;
}

ComplexMatrix lu_solve_matrix(const LuFactors& f, const ComplexMatrix& b) {
    const std::size_t n = f.n;
    if (b.rows() != n) throw std::invalid_argument("lu_solve_matrix: size mismatch");
    ComplexMatrix bd = b.to_dense();
    ComplexMatrix x = ComplexMatrix::dense(n, b.cols());
    cvec col(n), sol(n);
    for (std::size_t j = 0; j < b.cols(); ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = bd.at(i, j);
        sol = lu_solve(f, col);
        for (std::size_t i = 0; i < n; ++i) x.at(i, j) = sol[i];
    }
    return x;
}

double condition_estimate_1norm(const LuFactors& f, const ComplexMatrix& a) {
    if (f.singular) return std::numeric_limits<double>::infinity();
    const std::size_t n = f.n;
    ComplexMatrix ad = a.to_dense();
    double a1 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += std::abs(ad.at(i, j));
        a1 = std::max(a1, s);
    }

    cvec x(n, cplx(1.0 / static_cast<double>(n), 0.0));
    double inv1 = 0.0;
    for (int pass = 0; pass < 5; ++pass) {
        const cvec y = lu_solve(f, x);
        double y1 = 0.0;
        for (const cplx& v : y) y1 += std::abs(v);
        inv1 = std::max(inv1, y1);
        cvec xi(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double m = std::abs(y[i]);
            xi[i] = m == 0.0 ? cplx(1.0, 0.0) : y[i] / m;
        }
        const cvec z = lu_solve_adjoint(f, xi);
        std::size_t jmax = 0;
        double zmax = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double m = std::abs(z[i]);
            if (m > zmax) {
                zmax = m;
                jmax = i;
            }
        }
        double zx = 0.0;
        for (std::size_t i = 0; i < n; ++i) zx += std::abs(z[i] * x[i]);
        if (zmax <= zx) break;
        x.assign(n, cplx{});
        x[jmax] = 1.0;
    }
    return a1 * inv1;
}

}  // namespace ipt
