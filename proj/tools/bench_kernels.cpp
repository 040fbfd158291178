// Compares the OpenMP kernels against their serial reference implementations:
// wall time, effective GFLOP/s, and the worst entrywise deviation.

#include <chrono>
#include <cstdio>
#include <set>
#include <vector>

#include "ipt/kernels.hpp"
#include "ipt/rng.hpp"

using ipt::ComplexMatrix;
using ipt::cplx;
using ipt::cvec;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

ComplexMatrix random_dense(std::size_t n, std::uint64_t seed) {
    ipt::Rng rng(seed);
    cvec v(n * n);
    for (cplx& x : v) x = cplx(rng.normal(), rng.normal());
    return ComplexMatrix::dense(n, n, std::move(v));
}

ComplexMatrix random_sparse(std::size_t n, std::size_t per_row, std::uint64_t seed) {
    ipt::Rng rng(seed);
    std::vector<ipt::Triplet> t;
    t.reserve(n * per_row);
    std::set<std::size_t> cols;
    for (std::size_t i = 0; i < n; ++i) {
        cols.clear();
        while (cols.size() < per_row) cols.insert(rng.below(n));
        for (std::size_t j : cols) t.push_back({i, j, cplx(rng.normal(), 0.0)});
    }
    return ComplexMatrix::sparse_from_triplets(n, n, std::move(t));
}

double max_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a.get(i, j) - b.get(i, j)));
    return m;
}

template <typename F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = now_seconds();
        f();
        best = std::min(best, now_seconds() - t0);
    }
    return best;
}

}  // namespace

int main() {
    std::printf("%-28s %10s %10s %8s %12s\n", "kernel", "serial[s]", "omp[s]", "speedup",
                "max |diff|");
    for (const std::size_t n : {128, 256, 512}) {
        const ComplexMatrix a = random_dense(n, 1);
        const ComplexMatrix b = random_dense(n, 2);
        ComplexMatrix c_ref = ComplexMatrix::dense(n, n);
        ComplexMatrix c_par = ComplexMatrix::dense(n, n);
        const double ts = time_best_of(3, [&] { ipt::kernels::matmul_serial(a, b, c_ref); });
        const double tp = time_best_of(3, [&] { ipt::kernels::matmul(a, b, c_par); });
        char label[64];
        std::snprintf(label, sizeof label, "dense matmul n=%zu", n);
        std::printf("%-28s %10.4f %10.4f %8.2f %12.3e\n", label, ts, tp, ts / tp,
                    max_entry_diff(c_ref, c_par));
    }
    for (const std::size_t n : {4096, 16384}) {
        const ComplexMatrix a = random_sparse(n, 50, 3);
        cvec x(n), y_ref(n), y_par(n);
        ipt::Rng rng(4);
        for (cplx& v : x) v = cplx(rng.normal(), rng.normal());
        const double ts = time_best_of(20, [&] { ipt::kernels::matvec_serial(a, x.data(), y_ref.data()); });
        const double tp = time_best_of(20, [&] { ipt::kernels::matvec(a, x.data(), y_par.data()); });
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(y_ref[i] - y_par[i]));
        char label[64];
        std::snprintf(label, sizeof label, "sparse matvec n=%zu", n);
        std::printf("%-28s %10.6f %10.6f %8.2f %12.3e\n", label, ts, tp, ts / tp, diff);
    }
    {
        const std::size_t n = 2048;
        const ComplexMatrix a = random_sparse(n, 50, 5);
        const ComplexMatrix b = random_dense(n, 6);
        ComplexMatrix c_ref = ComplexMatrix::dense(n, n);
        ComplexMatrix c_par = ComplexMatrix::dense(n, n);
        const double ts = time_best_of(3, [&] { ipt::kernels::matmul_serial(a, b, c_ref); });
        const double tp = time_best_of(3, [&] { ipt::kernels::matmul(a, b, c_par); });
        std::printf("%-28s %10.4f %10.4f %8.2f %12.3e\n", "sparse*dense n=2048", ts, tp, ts / tp,
                    max_entry_diff(c_ref, c_par));
    }
    return 0;
}
