#include "ipt/bench.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

#include "ipt/kernels.hpp"
#include "ipt/rng.hpp"

namespace ipt {

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

class PhaseTimer {
public:
    explicit PhaseTimer(double slowdown) : slowdown_(slowdown) {}

    template <typename F>
    double time(F&& f) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        double elapsed = std::chrono::duration<double>(t1 - t0).count();
        if (slowdown_ > 0.0) {
            std::this_thread::sleep_for(std::chrono::duration<double>(elapsed * slowdown_));
            elapsed *= 1.0 + slowdown_;
        }
        return elapsed;
    }

private:
    double slowdown_;
};

ComplexMatrix random_dense(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    cvec v(n * n);
    for (cplx& x : v) x = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
    return ComplexMatrix::dense(n, n, std::move(v));
}

}  // namespace

BenchResult bench(const ComplexMatrix& m, const IterationConfig& config,
                  const BenchOptions& options) {
    if (options.repetitions < 1) throw std::invalid_argument("bench: repetitions must be positive");
    const std::size_t n = m.rows();
    const Partition p = partition(m);
    const InverseGaps g = build_gaps(p);
    const ComplexMatrix b = random_dense(n, 0xb0b5eedULL);
    cvec x(n), y(n);
    {
        Rng rng(0x5eedca11ULL);
        for (cplx& v : x) v = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
    }

    BenchResult result;
    PhaseTimer timer(options.slowdown_factor);
    ComplexMatrix c = ComplexMatrix::dense(n, n);
    for (int rep = 0; rep < options.repetitions; ++rep) {
        BenchSample s;
        SpectrumResult full;
        EigenpairResult single;
        s.t_eig = timer.time([&] { full = solve_full(p, g, config); });
        s.t_mm = timer.time([&] { kernels::matmul(p.delta, b, c); });
        s.t_eigs = timer.time([&] { single = solve_single(p, g, options.anchor, config); });
        s.t_mv = timer.time([&] { kernels::matvec(p.delta, x.data(), y.data()); });
        result.samples.push_back(s);
        if (rep == 0) {
            result.full_iterations = full.iterations;
            result.single_iterations = single.iterations;
            result.matmul_products = full.matmul_count;
            result.matvec_products = single.matvec_count;
            result.full_status = full.status;
            result.single_status = single.status;
        }
    }

    std::vector<double> te, tm, ts, tv;
    for (const BenchSample& s : result.samples) {
        te.push_back(s.t_eig);
        tm.push_back(s.t_mm);
        ts.push_back(s.t_eigs);
        tv.push_back(s.t_mv);
    }
    result.median_t_eig = median(te);
    result.median_t_mm = median(tm);
    result.median_t_eigs = median(ts);
    result.median_t_mv = median(tv);
    result.eig_over_mm = result.median_t_eig / result.median_t_mm;
    result.eigs_over_mv = result.median_t_eigs / result.median_t_mv;
    return result;
}

}  // namespace ipt
