#include <doctest.h>

#include <cmath>

#include "ipt/explorer.hpp"
#include "ipt/testgen.hpp"

using namespace ipt;

namespace {

ScanSpec spec_2x2() {
    const Partition unit = explicit_2x2(1.0);
    ScanSpec s;
    s.d = unit.d;
    s.delta0 = unit.delta;
    s.anchor = 0;
    return s;
}

ScanSpec spec_3x3(std::size_t anchor) {
    const Partition unit = explicit_3x3(1.0);
    ScanSpec s;
    s.d = unit.d;
    s.delta0 = unit.delta;
    s.anchor = anchor;
    return s;
}

}  // namespace

TEST_CASE("pointwise classification of the scalar quadratic family") {
    ScanSpec s = spec_2x2();
    s.max_iterations = 20000;
    SUBCASE("inside the real stability interval") {
        const ScanCell c = classify_point(s, cplx(0.5, 0.0));
        CHECK(c.classification == PointClass::ConvergedFixedPoint);
        CHECK(c.steps_to_converge > 0);
    }
    SUBCASE("past the flip the orbit settles on a 2-cycle") {
        const ScanCell c = classify_point(s, cplx(0.9, 0.0));
        CHECK(c.classification == PointClass::PeriodicCycle);
        CHECK(c.period == 2);
    }
    SUBCASE("past the fold on the imaginary axis the fixed point is gone") {
        const ScanCell c = classify_point(s, cplx(0.0, 0.6));
        CHECK(c.classification != PointClass::ConvergedFixedPoint);
    }
    SUBCASE("zero coupling converges immediately") {
        const ScanCell c = classify_point(s, cplx(0.0, 0.0));
        CHECK(c.classification == PointClass::ConvergedFixedPoint);
        CHECK(c.steps_to_converge <= 2);
    }
    SUBCASE("far out on the real axis the orbit escapes") {
        const ScanCell c = classify_point(s, cplx(3.0, 0.0));
        CHECK(c.classification == PointClass::Diverged);
        CHECK(c.escape_step >= 1);
    }
}

TEST_CASE("conjugation symmetry is exact for real families") {
    ScanSpec s = spec_3x3(0);
    s.max_iterations = 3000;
    for (const cplx eps :
         {cplx(0.21, 0.13), cplx(-0.35, 0.4), cplx(0.52, 0.05), cplx(0.8, 0.61)}) {
        const ScanCell a = classify_point(s, eps);
        const ScanCell b = classify_point(s, std::conj(eps));
        CHECK(a.classification == b.classification);
        CHECK(a.period == b.period);
        CHECK(a.escape_step == b.escape_step);
        CHECK(a.steps_to_converge == b.steps_to_converge);
    }
}

TEST_CASE("scan of the quadratic family against its closed-form geometry") {
    ScanSpec s = spec_2x2();
    s.nx = 201;
    s.ny = 201;
    s.max_iterations = 2000;
    const ScanResult grid = scan_grid(s);
    REQUIRE(grid.cells.size() == 201 * 201);

    const Partition unit = explicit_2x2(1.0);
    const double gd = certify(unit, build_gaps(unit)).product;  // |G||Delta0| = 1

    for (const ScanCell& c : grid.cells) {
        // Certified inclusion: inside the contraction disk everything converges.
        if (std::abs(c.eps) * gd < kContractionThreshold)
            CHECK(c.classification == PointClass::ConvergedFixedPoint);
        // Real segment strictly inside the flip boundary.
        if (c.eps.imag() == 0.0 && std::abs(c.eps.real()) <= 0.85)
            CHECK(c.classification == PointClass::ConvergedFixedPoint);
    }

    // The real-axis crossing sits within one cell of sqrt(3)/2.
    ScanSpec axis = spec_2x2();
    axis.ny = 1;
    axis.im_min = axis.im_max = 0.0;
    axis.nx = 201;
    axis.re_min = 0.0;
    axis.re_max = 1.0;  // cell width 0.005
    axis.max_iterations = 50000;
    const ScanResult row = scan_grid(axis);
    double last_converged = 0.0;
    for (std::size_t ix = 0; ix < row.nx; ++ix)
        if (row.at(ix, 0).classification == PointClass::ConvergedFixedPoint)
            last_converged = std::max(last_converged, row.at(ix, 0).eps.real());
    CHECK(std::abs(last_converged - std::sqrt(3.0) / 2.0) <= 0.005 + 1e-12);
}

TEST_CASE("cardioid boundary separates convergence from failure") {
    // Stability boundary of the anchored quadratic map: 4 eps^2 = e^{it}(e^{it} - 2).
    ScanSpec s = spec_2x2();
    s.max_iterations = 400000;
    const double h = 1e-3;
    for (int j = 0; j < 32; ++j) {
        const double t = 2.0 * M_PI * (j + 0.5) / 32.0;
        auto boundary = [](double tt) {
            const cplx u = std::exp(cplx(0.0, tt));
            return std::sqrt(u * (u - 2.0)) / 2.0;
        };
        const cplx eps = boundary(t);
        // inward unit normal, oriented toward the origin
        const cplx tangent = (boundary(t + 1e-6) - boundary(t - 1e-6)) / 2e-6;
        cplx normal = cplx(0.0, 1.0) * tangent / std::abs(tangent);
        if ((std::conj(normal) * (-eps)).real() < 0.0) normal = -normal;

        const ScanCell inside = classify_point(s, eps + h * normal);
        const ScanCell outside = classify_point(s, eps - h * normal);
        CHECK(inside.classification == PointClass::ConvergedFixedPoint);
        CHECK(outside.classification != PointClass::ConvergedFixedPoint);
    }
}

TEST_CASE("divergence is stable under coarser tolerances") {
    ScanSpec s = spec_2x2();
    s.max_iterations = 3000;
    for (double re = 1.5; re <= 3.0; re += 0.25) {
        const ScanCell fine = classify_point(s, cplx(re, 0.0));
        if (fine.classification != PointClass::Diverged) continue;
        ScanSpec coarse = s;
        coarse.period_tolerance = 1e-6;
        coarse.step_tolerance = 1e-8;
        CHECK(classify_point(coarse, cplx(re, 0.0)).classification == PointClass::Diverged);
    }
}

TEST_CASE("continuation enlarges the converged set on the 3x3 family") {
    ScanSpec plain = spec_3x3(1);
    plain.re_min = -0.6;
    plain.re_max = 0.6;
    plain.im_min = -0.3;
    plain.im_max = 0.3;
    plain.nx = 41;
    plain.ny = 21;
    plain.max_iterations = 4000;
    ScanSpec ramped = plain;
    ramped.continuation_alpha = 0.9;

    const ScanResult a = scan_grid(plain);
    const ScanResult b = scan_grid(ramped);
    std::size_t plain_set = 0, ramped_set = 0, gained = 0;
    for (std::size_t t = 0; t < a.cells.size(); ++t) {
        const bool pa = a.cells[t].classification == PointClass::ConvergedFixedPoint;
        const bool pb = b.cells[t].classification == PointClass::ConvergedFixedPoint;
        if (pa) {
            ++plain_set;
            CHECK(pb);  // superset cell-by-cell
        }
        if (pb) ++ramped_set;
        if (pb && !pa) ++gained;
    }
    CHECK(plain_set > 0);
    CHECK(ramped_set >= plain_set);
    CHECK(gained > 0);  // the eroded cells are actually recovered
}

TEST_CASE("grid validation") {
    ScanSpec s = spec_2x2();
    s.nx = 0;
    CHECK_THROWS_AS(scan_grid(s), std::invalid_argument);
    s = spec_2x2();
    s.anchor = 5;
    CHECK_THROWS_AS(classify_point(s, 0.1), std::invalid_argument);
}
