#include "ipt/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace ipt::kernels {

namespace {

using i64 = std::int64_t;

void check_matmul_shapes(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimensions differ");
    if (!b.is_dense()) throw std::invalid_argument("matmul: right factor must be dense");
    if (!c.is_dense() || c.rows() != a.rows() || c.cols() != b.cols())
        c = ComplexMatrix::dense(a.rows(), b.cols());
}

// Real row-major gemm, c = a * b, parallel over row pairs of c. Each output
// row is produced by one thread with k ascending, so the result does not
// depend on the thread count.
void dgemm(i64 m, i64 n, i64 k, const double* a, const double* b, double* c) {
#pragma omp parallel for schedule(static)
    for (i64 i = 0; i < m; i += 2) {
        double* c0 = c + i * n;
        double* c1 = (i + 1 < m) ? c + (i + 1) * n : nullptr;
        for (i64 j = 0; j < n; ++j) c0[j] = 0.0;
        if (c1)
            for (i64 j = 0; j < n; ++j) c1[j] = 0.0;
        const double* a0 = a + i * k;
        const double* a1 = a0 + k;
        for (i64 p = 0; p < k; ++p) {
            const double* bp = b + p * n;
            const double a0p = a0[p];
            if (c1) {
                const double a1p = a1[p];
                for (i64 j = 0; j < n; ++j) {
                    c0[j] += a0p * bp[j];
                    c1[j] += a1p * bp[j];
                }
            } else {
                for (i64 j = 0; j < n; ++j) c0[j] += a0p * bp[j];
            }
        }
    }
}

struct Planar {
    std::vector<double> re, im;
};

Planar split(const cplx* v, std::size_t count) {
    Planar p;
    p.re.resize(count);
    p.im.resize(count);
#pragma omp parallel for schedule(static)
    for (i64 t = 0; t < static_cast<i64>(count); ++t) {
        p.re[static_cast<std::size_t>(t)] = v[t].real();
        p.im[static_cast<std::size_t>(t)] = v[t].imag();
    }
    return p;
}

// Dense complex gemm via four real products: re = ArBr - AiBi, im = ArBi + AiBr.
void matmul_dense_parallel(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c) {
    const i64 m = static_cast<i64>(a.rows());
    const i64 k = static_cast<i64>(a.cols());
    const i64 n = static_cast<i64>(b.cols());
    const Planar pa = split(a.data(), a.rows() * a.cols());
    const Planar pb = split(b.data(), b.rows() * b.cols());
    std::vector<double> t0(static_cast<std::size_t>(m * n)), t1(static_cast<std::size_t>(m * n));
    cplx* out = c.data();

    dgemm(m, n, k, pa.re.data(), pb.re.data(), t0.data());
    dgemm(m, n, k, pa.im.data(), pb.im.data(), t1.data());
#pragma omp parallel for schedule(static)
    for (i64 t = 0; t < m * n; ++t)
        out[t] = cplx(t0[static_cast<std::size_t>(t)] - t1[static_cast<std::size_t>(t)], 0.0);

    dgemm(m, n, k, pa.re.data(), pb.im.data(), t0.data());
    dgemm(m, n, k, pa.im.data(), pb.re.data(), t1.data());
#pragma omp parallel for schedule(static)
    for (i64 t = 0; t < m * n; ++t)
        out[t] += cplx(0.0, t0[static_cast<std::size_t>(t)] + t1[static_cast<std::size_t>(t)]);
}

void matmul_sparse_parallel(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c) {
    const i64 m = static_cast<i64>(a.rows());
    const std::size_t n = b.cols();
    const auto& off = a.row_offsets();
    const auto& col = a.col_indices();
    const auto& val = a.values();
#pragma omp parallel for schedule(static)
    for (i64 i = 0; i < m; ++i) {
        cplx* ci = c.row(static_cast<std::size_t>(i));
        for (std::size_t j = 0; j < n; ++j) ci[j] = cplx{};
        for (std::size_t p = off[static_cast<std::size_t>(i)]; p < off[static_cast<std::size_t>(i) + 1]; ++p) {
            const cplx av = val[p];
            const cplx* brow = b.row(col[p]);
            const double ar = av.real(), ai = av.imag();
            for (std::size_t j = 0; j < n; ++j) {
                const double br = brow[j].real(), bi = brow[j].imag();
                ci[j] += cplx(ar * br - ai * bi, ar * bi + ai * br);
            }
        }
    }
}

}  // namespace

void matvec(const ComplexMatrix& a, const cplx* x, cplx* y) {
    const i64 m = static_cast<i64>(a.rows());
    if (a.is_dense()) {
        const std::size_t n = a.cols();
#pragma omp parallel for schedule(static)
        for (i64 i = 0; i < m; ++i) {
            const cplx* row = a.row(static_cast<std::size_t>(i));
            double sr = 0.0, si = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double ar = row[j].real(), ai = row[j].imag();
                const double xr = x[j].real(), xi = x[j].imag();
                sr += ar * xr - ai * xi;
                si += ar * xi + ai * xr;
            }
            y[i] = cplx(sr, si);
        }
    } else {
        const auto& off = a.row_offsets();
        const auto& col = a.col_indices();
        const auto& val = a.values();
#pragma omp parallel for schedule(static)
        for (i64 i = 0; i < m; ++i) {
            cplx s{};
            for (std::size_t p = off[static_cast<std::size_t>(i)]; p < off[static_cast<std::size_t>(i) + 1]; ++p)
                s += val[p] * x[col[p]];
            y[i] = s;
        }
    }
}

void matvec_serial(const ComplexMatrix& a, const cplx* x, cplx* y) {
    const std::size_t m = a.rows();
    if (a.is_dense()) {
        const std::size_t n = a.cols();
        for (std::size_t i = 0; i < m; ++i) {
            const cplx* row = a.row(i);
            cplx s{};
            for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
            y[i] = s;
        }
    } else {
        const auto& off = a.row_offsets();
        const auto& col = a.col_indices();
        const auto& val = a.values();
        for (std::size_t i = 0; i < m; ++i) {
            cplx s{};
            for (std::size_t p = off[i]; p < off[i + 1]; ++p) s += val[p] * x[col[p]];
            y[i] = s;
        }
    }
}

void adjoint_matvec_dense(const ComplexMatrix& a, const cplx* x, cplx* y) {
    if (!a.is_dense()) throw std::invalid_argument("adjoint_matvec_dense: sparse input");
    const std::size_t m = a.rows(), n = a.cols();
    for (std::size_t j = 0; j < n; ++j) y[j] = cplx{};
    for (std::size_t i = 0; i < m; ++i) {
        const cplx* row = a.row(i);
        const cplx xi = x[i];
        for (std::size_t j = 0; j < n; ++j) y[j] += std::conj(row[j]) * xi;
    }
}

void matmul(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c) {
    check_matmul_shapes(a, b, c);
    if (a.is_dense())
        matmul_dense_parallel(a, b, c);
    else
        matmul_sparse_parallel(a, b, c);
}

void matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c) {
    check_matmul_shapes(a, b, c);
    const std::size_t m = a.rows(), n = b.cols();
    for (std::size_t i = 0; i < m; ++i) {
        cplx* ci = c.row(i);
        for (std::size_t j = 0; j < n; ++j) ci[j] = cplx{};
    }
    if (a.is_dense()) {
        const std::size_t kk = a.cols();
        for (std::size_t i = 0; i < m; ++i) {
            cplx* ci = c.row(i);
            const cplx* ai = a.row(i);
            for (std::size_t p = 0; p < kk; ++p) {
                const cplx ap = ai[p];
                const cplx* bp = b.row(p);
                for (std::size_t j = 0; j < n; ++j) ci[j] += ap * bp[j];
            }
        }
    } else {
        const auto& off = a.row_offsets();
        const auto& col = a.col_indices();
        const auto& val = a.values();
        for (std::size_t i = 0; i < m; ++i) {
            cplx* ci = c.row(i);
            for (std::size_t p = off[i]; p < off[i + 1]; ++p) {
                const cplx ap = val[p];
                const cplx* bp = b.row(col[p]);
                for (std::size_t j = 0; j < n; ++j) ci[j] += ap * bp[j];
            }
        }
    }
}

double frobenius_norm(const ComplexMatrix& m) {
    double s = 0.0;
    if (m.is_dense()) {
        const cplx* v = m.data();
        const std::size_t count = m.rows() * m.cols();
        for (std::size_t t = 0; t < count; ++t) s += std::norm(v[t]);
    } else {
        for (const cplx& v : m.values()) s += std::norm(v);
    }
    return std::sqrt(s);
}

double nrm2(const cplx* v, std::size_t n) {
    double s = 0.0;
    for (std::size_t t = 0; t < n; ++t) s += std::norm(v[t]);
    return std::sqrt(s);
}

double nrm2(const cvec& v) { return nrm2(v.data(), v.size()); }

double max_abs(const cvec& v) {
    double s = 0.0;
    for (const cplx& x : v) s = std::max(s, std::abs(x));
    return s;
}

}  // namespace ipt::kernels
