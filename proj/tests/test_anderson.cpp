#include <doctest.h>

#include "ipt/anderson.hpp"
#include "ipt/testgen.hpp"

using namespace ipt;

TEST_CASE("memory 0 reproduces the plain iterates bitwise") {
    const Partition p = explicit_2x2(0.08);
    const InverseGaps g = build_gaps(p);
    IterationConfig cfg;
    cfg.max_iterations = 25;
    cfg.tolerance = 1e-300;       // run the full budget
    cfg.residual_tolerance = 0.0;
    const EigenpairResult plain = solve_single(p, g, 0, cfg);
    const EigenpairResult accel = solve_single_accelerated(p, g, 0, cfg, 0);
    REQUIRE(plain.z.size() == accel.z.size());
    for (std::size_t i = 0; i < plain.z.size(); ++i) CHECK(plain.z[i] == accel.z[i]);
}

TEST_CASE("secant exactness on an affine map with memory 1") {
    // Scalar map f(x) = a x + b lifted to the non-anchor coordinate.
    auto affine = [](cplx a, cplx b, const cvec& z) { return cvec{cplx(1.0), a * z[1] + b}; };
    for (const auto& [a, b] : std::vector<std::pair<cplx, cplx>>{
             {cplx(0.5, 0.0), cplx(1.0, 0.0)},
             {cplx(-0.7, 0.2), cplx(0.3, -1.0)},
             {cplx(0.0, 0.6), cplx(2.0, 0.5)}}) {
        const cplx fixed_point = b / (cplx(1.0) - a);
        AndersonState state(1, 0);
        cvec z{cplx(1.0), cplx(0.0)};
        bool reached = false;
        for (int k = 0; k < 3; ++k) {
            const cvec fz = affine(a, b, z);
            z = anderson_step(state, z, fz);
            cplx wsum{};
            for (const cplx& w : state.last_weights()) wsum += w;
            CHECK(std::abs(wsum - cplx(1.0)) <= 1e-12);
            if (std::abs(z[1] - fixed_point) <= 1e-12) {
                reached = true;
                break;
            }
        }
        CHECK(reached);
    }
}

TEST_CASE("weights sum to one at every step of a real solve") {
    const Partition p = explicit_3x3(0.05);
    const InverseGaps g = build_gaps(p);
    const cvec g_col = g.column(0);
    AndersonState state(5, 0);
    cvec z{cplx(1), cplx(0), cplx(0)};
    cvec w(3), fz(3);
    for (int k = 0; k < 12; ++k) {
        for (std::size_t j = 0; j < 3; ++j) {
            w[j] = cplx{};
            for (std::size_t t = 0; t < 3; ++t) w[j] += p.delta.get(j, t) * z[t];
        }
        for (std::size_t j = 0; j < 3; ++j) fz[j] = g_col[j] * (z[j] * w[0] - w[j]);
        fz[0] = 1.0;
        z = anderson_step(state, z, fz);
        cplx wsum{};
        for (const cplx& wt : state.last_weights()) wsum += wt;
        CHECK(std::abs(wsum - cplx(1.0)) <= 1e-12);
        CHECK(z[0] == cplx(1.0));
    }
}

TEST_CASE("accelerated solve on a sparse symmetric instance") {
    const ComplexMatrix m = gen_fci_like(512, 50.0 / 512.0, 20.0, 99);
    const Partition p = partition(m);
    const InverseGaps g = build_gaps(p);
    IterationConfig cfg;
    cfg.residual_tolerance = 1e-8;
    const EigenpairResult accel = solve_single_accelerated(p, g, 0, cfg, 5);
    CHECK(accel.status == SolveStatus::Converged);
    CHECK(accel.residual <= 1e-8);

    const EigenpairResult plain = solve_single(p, g, 0, cfg);
    CHECK(plain.status == SolveStatus::Converged);
    CHECK(accel.matvec_count < plain.matvec_count);
}

TEST_CASE("converged results satisfy the residual test on the returned vector") {
    const ComplexMatrix m = gen_fci_like(128, 0.1, 10.0, 5);
    const Partition p = partition(m);
    const InverseGaps g = build_gaps(p);
    IterationConfig cfg;
    cfg.residual_tolerance = 1e-9;
    const EigenpairResult r = solve_single_accelerated(p, g, 0, cfg, 5);
    REQUIRE(r.status == SolveStatus::Converged);
    // recompute the residual of the returned vector directly
    cvec mz(128, cplx{});
    for (std::size_t i = 0; i < 128; ++i)
        for (std::size_t j = 0; j < 128; ++j) mz[i] += m.get(i, j) * r.z[j];
    double rn = 0.0, zn = 0.0;
    for (std::size_t i = 0; i < 128; ++i) {
        rn += std::norm(mz[i] - r.eigenvalue * r.z[i]);
        zn += std::norm(r.z[i]);
    }
    CHECK(std::sqrt(rn) <= cfg.residual_tolerance * (1.0 + 1e-9));
    CHECK(r.residual == doctest::Approx(std::sqrt(rn) / std::sqrt(zn)).epsilon(1e-9));
}

TEST_CASE("zero residual converges in one evaluation") {
    const Partition p{{cplx(0), cplx(1), cplx(2)}, ComplexMatrix::dense(3, 3)};
    const EigenpairResult r = solve_single_accelerated(p, build_gaps(p), 1, {}, 5);
    CHECK(r.status == SolveStatus::Converged);
    CHECK(r.iterations == 1);
    CHECK(r.z == cvec{cplx(0), cplx(1), cplx(0)});
}

TEST_CASE("memory 5 converges where the certificate fails but dynamics are stable") {
    const Partition p = explicit_2x2(0.4);
    const InverseGaps g = build_gaps(p);
    CHECK_FALSE(certify(p, g).certified);
    const EigenpairResult r = solve_single_accelerated(p, g, 0, {}, 5);
    CHECK(r.status == SolveStatus::Converged);
    CHECK(r.residual <= 1e-8);
}

TEST_CASE("matvec count equals iterations plus at most one") {
    const ComplexMatrix m = gen_fci_like(64, 0.1, 15.0, 3);
    const Partition p = partition(m);
    const InverseGaps g = build_gaps(p);
    const EigenpairResult r = solve_single_accelerated(p, g, 0, {}, 5);
    CHECK(r.matvec_count <= r.iterations + 1);
    CHECK(r.matvec_count >= r.iterations);
}
