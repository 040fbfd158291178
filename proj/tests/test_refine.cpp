#include <doctest.h>

#include "ipt/kernels.hpp"
#include "ipt/refine.hpp"
#include "ipt/rng.hpp"
#include "ipt/testgen.hpp"
#include "oracles.hpp"

using namespace ipt;

namespace {

ComplexMatrix random_symmetric(std::size_t n, double gap, std::uint64_t seed) {
    Rng rng(seed);
    ComplexMatrix m = ComplexMatrix::dense(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = cplx(static_cast<double>(i) * gap + 0.1 * rng.normal());
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.02 * rng.normal();
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    }
    return m;
}

double max_angle_between_columns(const ComplexMatrix& a, const ComplexMatrix& b) {
    double worst = 0.0;
    const std::size_t n = a.rows();
    for (std::size_t j = 0; j < n; ++j) {
        cplx dot{};
        double na = 0.0, nb = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dot += std::conj(a.get(i, j)) * b.get(i, j);
            na += std::norm(a.get(i, j));
            nb += std::norm(b.get(i, j));
        }
        const double c = std::min(1.0, std::abs(dot) / std::sqrt(na * nb));
        worst = std::max(worst, std::acos(c));
    }
    return worst;
}

}  // namespace

TEST_CASE("direct dense eigensolver sanity") {
    SUBCASE("symmetric path reproduces a known spectrum") {
        const ComplexMatrix m = gen_ill_conditioned(16, 2.0, 7);
        const EigDecomp dec = dense_eigensolve(m);
        REQUIRE(dec.converged);
        cvec expected(16);
        for (std::size_t k = 0; k < 16; ++k)
            expected[k] = std::pow(10.0, -2.0 * static_cast<double>(k + 1) / 16.0);
        CHECK(oracles::pair_spectra(dec.values, expected) <= 1e-12);
        CHECK(oracles::residual_frobenius(m, dec.vectors, dec.values) <= 1e-13);
    }
    SUBCASE("general complex path solves a non-symmetric instance") {
        Rng rng(12);
        const std::size_t n = 9;
        ComplexMatrix m = ComplexMatrix::dense(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m.at(i, j) = cplx(static_cast<double>(i == j ? 2 * i + 1 : 0), 0) +
                             0.3 * cplx(rng.normal(), rng.normal());
        const EigDecomp dec = dense_eigensolve(m);
        REQUIRE(dec.converged);
        CHECK(oracles::residual_frobenius(m, dec.vectors, dec.values) <=
              1e-11 * kernels::frobenius_norm(m));
    }
}

TEST_CASE("low-precision seed") {
    SUBCASE("diagonal input gives the identity") {
        const ComplexMatrix seed =
            make_low_precision_seed(ComplexMatrix::diagonal({cplx(1), cplx(2), cplx(4)}));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) CHECK(seed.get(i, j) == cplx(i == j ? 1.0 : 0.0));
    }
    SUBCASE("entries survive a float round trip unchanged") {
        const ComplexMatrix seed = make_low_precision_seed(random_symmetric(8, 0.5, 3));
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j) {
                const cplx v = seed.get(i, j);
                CHECK(static_cast<double>(static_cast<float>(v.real())) == v.real());
                CHECK(static_cast<double>(static_cast<float>(v.imag())) == v.imag());
            }
    }
    SUBCASE("seed residual sits at single-precision scale, refinement removes it") {
        const ComplexMatrix m = random_symmetric(8, 0.5, 21);
        const ComplexMatrix seed = make_low_precision_seed(m);
        const RefinementResult r = refine_spectrum(m, seed);
        REQUIRE(r.status == SolveStatus::Converged);
        const double scale = kernels::frobenius_norm(m);
        CHECK(r.seed_residual <= 1e-4 * scale);
        CHECK(r.seed_residual >= 1e-9 * scale);  // genuinely low-precision input
        CHECK(r.refined_residual <= 1e-12 * scale);
        CHECK(r.refined_residual <= r.seed_residual / 100.0);
    }
}

TEST_CASE("refinement on the clustered-spectrum family") {
    SUBCASE("alpha = 1 at N = 64") {
        const ComplexMatrix m = gen_ill_conditioned(64, 1.0, 11);
        const RefinementResult r = refine_spectrum(m, make_low_precision_seed(m));
        REQUIRE(r.status == SolveStatus::Converged);
        CHECK(r.refined_residual <= 1e-10 * kernels::frobenius_norm(m));
        CHECK(r.refined_residual <= r.seed_residual / 100.0);
    }
    SUBCASE("alpha = 4 at N = 128 remains applicable") {
        const ComplexMatrix m = gen_ill_conditioned(128, 4.0, 11);
        const RefinementResult r = refine_spectrum(m, make_low_precision_seed(m));
        CHECK(r.status == SolveStatus::Converged);
        CHECK(r.refined_residual <= r.seed_residual);
    }
    SUBCASE("alpha = 6 at N = 128 fails: gaps below seed resolution") {
        const ComplexMatrix m = gen_ill_conditioned(128, 6.0, 11);
        bool failed = false;
        try {
            const RefinementResult r = refine_spectrum(m, make_low_precision_seed(m));
            failed = r.status != SolveStatus::Converged;
        } catch (const SingularSeed&) {
            failed = true;
        } catch (const DegenerateDiagonal&) {
            failed = true;
        }
        CHECK(failed);
    }
}

TEST_CASE("idempotence on an exact eigenbasis") {
    const ComplexMatrix m = random_symmetric(8, 0.5, 33);
    const EigDecomp exact = dense_eigensolve(m);
    REQUIRE(exact.converged);
    const RefinementResult r = refine_spectrum(m, exact.vectors);
    REQUIRE(r.status == SolveStatus::Converged);
    CHECK(r.inner_iterations <= 2);
    CHECK(max_angle_between_columns(exact.vectors, r.Z) <= 1e-12);
    CHECK(r.refined_residual <= r.seed_residual + 1e-13 * kernels::frobenius_norm(m));
}

TEST_CASE("eigenvalues match the direct solver regardless of seed quality") {
    const ComplexMatrix m = random_symmetric(8, 0.4, 55);
    const EigDecomp oracle = dense_eigensolve(m);
    REQUIRE(oracle.converged);
    const RefinementResult r = refine_spectrum(m, make_low_precision_seed(m));
    REQUIRE(r.status == SolveStatus::Converged);
    CHECK(oracles::pair_spectra(r.eigenvalues, oracle.values) <= 1e-10);
}

TEST_CASE("singular seeds are rejected") {
    const ComplexMatrix m = random_symmetric(4, 0.5, 66);
    ComplexMatrix bad = ComplexMatrix::dense(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        bad.at(i, 0) = 1.0;
        bad.at(i, 1) = 1.0;  // two identical columns
        bad.at(i, 2) = static_cast<double>(i);
        bad.at(i, 3) = static_cast<double>(i * i);
    }
    CHECK_THROWS_AS(refine_spectrum(m, bad), SingularSeed);
}

TEST_CASE("residual reduction on the near-diagonal family") {
    const ComplexMatrix m = gen_near_diagonal({64, 0.05, true, {}, false, 77});
    const RefinementResult r = refine_spectrum(m, make_low_precision_seed(m));
    REQUIRE(r.status == SolveStatus::Converged);
    CHECK(r.refined_residual <= r.seed_residual / 100.0);
}
