#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ipt/bench.hpp"
#include "ipt/cli.hpp"
#include "ipt/matrix_market.hpp"
#include "ipt/report.hpp"
#include "ipt/rng.hpp"
#include "ipt/testgen.hpp"

using namespace ipt;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/ipt_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
}

}  // namespace

TEST_CASE("matrix market reader") {
    SUBCASE("coordinate real general") {
        TempFile f("coord.mtx");
        write_text(f.path,
                   "%%MatrixMarket matrix coordinate real general\n"
                   "% the 2x2 coupling family at 0.1\n"
                   "2 2 3\n"
                   "1 2 0.1\n"
                   "2 1 0.1\n"
                   "2 2 1.0\n");
        const ComplexMatrix m = read_matrix_market(f.path);
        CHECK(m.is_sparse());
        CHECK(m.get(0, 0) == cplx(0.0));
        CHECK(m.get(0, 1) == cplx(0.1));
        CHECK(m.get(1, 0) == cplx(0.1));
        CHECK(m.get(1, 1) == cplx(1.0));
    }
    SUBCASE("symmetric coordinate expands to full storage") {
        TempFile f("sym.mtx");
        write_text(f.path,
                   "%%MatrixMarket matrix coordinate real symmetric\n"
                   "3 3 4\n"
                   "1 1 2.0\n"
                   "2 1 -1.5\n"
                   "3 1 0.25\n"
                   "3 3 7.0\n");
        const ComplexMatrix m = read_matrix_market(f.path);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) CHECK(m.get(i, j) == m.get(j, i));
        CHECK(m.get(0, 1) == cplx(-1.5));
        CHECK(m.get(0, 2) == cplx(0.25));
    }
    SUBCASE("malformed inputs are rejected") {
        TempFile f("bad.mtx");
        write_text(f.path, "%%NotMatrixMarket nonsense\n1 1 0\n");
        CHECK_THROWS_AS(read_matrix_market(f.path), std::runtime_error);
        write_text(f.path,
                   "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n");
        CHECK_THROWS_AS(read_matrix_market(f.path), std::runtime_error);
        write_text(f.path,
                   "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n1 1 2.0\n");
        CHECK_THROWS_AS(read_matrix_market(f.path), std::runtime_error);
        CHECK_THROWS_AS(read_matrix_market("/tmp/ipt_no_such_file.mtx"), std::runtime_error);
    }
}

TEST_CASE("matrix market round trips") {
    SUBCASE("dense complex array, bitwise") {
        Rng rng(404);
        cvec v(4);
        for (cplx& x : v) x = cplx(rng.normal(), rng.normal());
        const ComplexMatrix m = ComplexMatrix::dense(2, 2, v);
        TempFile f("array.mtx");
        write_matrix_market(m, f.path);
        const ComplexMatrix back = read_matrix_market(f.path);
        REQUIRE(back.is_dense());
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) CHECK(back.get(i, j) == m.get(i, j));
    }
    SUBCASE("sparse real coordinate, bitwise") {
        const ComplexMatrix m = gen_near_diagonal({24, 0.07, false, 0.15, false, 11});
        TempFile f("sparse.mtx");
        write_matrix_market(m, f.path);
        const ComplexMatrix back = read_matrix_market(f.path);
        REQUIRE(back.is_sparse());
        for (std::size_t i = 0; i < 24; ++i)
            for (std::size_t j = 0; j < 24; ++j) CHECK(back.get(i, j) == m.get(i, j));
    }
    SUBCASE("symmetric storage option") {
        const ComplexMatrix m = gen_fci_like(16, 0.2, 3.0, 12);
        TempFile f("symopt.mtx");
        MatrixMarketOptions opt;
        opt.write_symmetric = true;
        write_matrix_market(m, f.path, opt);
        std::ifstream check(f.path);
        std::string header;
        std::getline(check, header);
        CHECK(header.find("symmetric") != std::string::npos);
        const ComplexMatrix back = read_matrix_market(f.path);
        for (std::size_t i = 0; i < 16; ++i)
            for (std::size_t j = 0; j < 16; ++j) CHECK(back.get(i, j) == m.get(i, j));
    }
}

TEST_CASE("run reports round-trip through JSON") {
    RunReport r;
    r.command = "solve --family near-diagonal:N=8,eps=0.01";
    r.config = to_json(IterationConfig{});
    r.timings = {{"solve", 0.125}, {"total", 0.25}};
    r.counters = {{"iterations", 12}, {"matmul_products", 13}};
    const Partition p = explicit_2x2(0.1);
    const SpectrumResult res = solve_full(p, build_gaps(p));
    r.results["spectrum"] = to_json(res, true);

    const nlohmann::json j = to_json(r);
    const RunReport back = report_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(to_json(back).dump() == j.dump());
}

TEST_CASE("scan CSV has exactly nx*ny data rows") {
    const Partition unit = explicit_2x2(1.0);
    ScanSpec spec;
    spec.d = unit.d;
    spec.delta0 = unit.delta;
    spec.nx = 21;
    spec.ny = 17;
    spec.max_iterations = 500;
    const ScanResult scan = scan_grid(spec);
    std::ostringstream out;
    write_scan_csv(scan, out);
    std::istringstream in(out.str());
    std::string line;
    std::size_t rows = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!header_seen) {
            CHECK(line == "eps_re,eps_im,class,period,escape_step,steps_to_converge");
            header_seen = true;
            continue;
        }
        ++rows;
    }
    CHECK(rows == spec.nx * spec.ny);
}

TEST_CASE("PGM raster is well-formed") {
    const Partition unit = explicit_2x2(1.0);
    ScanSpec spec;
    spec.d = unit.d;
    spec.delta0 = unit.delta;
    spec.nx = 11;
    spec.ny = 7;
    spec.max_iterations = 300;
    TempFile f("scan.pgm");
    write_scan_pgm(scan_grid(spec), f.path);
    std::ifstream in(f.path, std::ios::binary);
    std::string magic;
    in >> magic;
    CHECK(magic == "P5");
    std::size_t w = 0, h = 0;
    int maxval = 0;
    in >> w >> h >> maxval;
    CHECK(w == 11);
    CHECK(h == 7);
    CHECK(maxval == 255);
    in.get();  // single whitespace after the header
    std::vector<char> pixels(w * h);
    in.read(pixels.data(), static_cast<std::streamsize>(pixels.size()));
    CHECK(in.gcount() == static_cast<std::streamsize>(w * h));
}

TEST_CASE("command line contract") {
    SUBCASE("converged solve exits 0 and writes a JSON report") {
        TempFile out("solve.json");
        const int code = cli_main({"solve", "--family", "near-diagonal:N=16,eps=0.01,seed=3",
                                   "--output", out.path});
        CHECK(code == 0);
        std::ifstream f(out.path);
        nlohmann::json j;
        f >> j;
        CHECK(j.at("results").at("spectrum").at("status") == "converged");
        CHECK(j.at("counters").at("iterations").get<int>() >= 1);
    }
    SUBCASE("iteration starvation exits 2") {
        TempFile out("starved.json");
        const int code = cli_main({"solve", "--family", "near-diagonal:N=16,eps=0.01,seed=3",
                                   "--max-iters", "1", "--output", out.path});
        CHECK(code == 2);
    }
    SUBCASE("usage errors exit 1") {
        CHECK(cli_main({"solve"}) == 1);                          // no input
        CHECK(cli_main({"solve", "--family", "mystery:N=4"}) == 1);  // unknown family
        CHECK(cli_main({"frobnicate"}) == 1);                     // unknown subcommand
        CHECK(cli_main({"solve", "--matrix", "/tmp/ipt_absent.mtx"}) == 1);
    }
    SUBCASE("gen writes a readable matrix market file") {
        TempFile out("gen.mtx");
        CHECK(cli_main({"gen", "--family", "fci:N=32,density=0.1,gap=5", "--seed", "7",
                        "--output", out.path}) == 0);
        const ComplexMatrix m = read_matrix_market(out.path);
        CHECK(m.rows() == 32);
        const ComplexMatrix ref = gen_fci_like(32, 0.1, 5.0, 7);
        for (std::size_t i = 0; i < 32; ++i)
            for (std::size_t j = 0; j < 32; ++j) CHECK(m.get(i, j) == ref.get(i, j));
    }
    SUBCASE("scan emits csv rows") {
        TempFile out("scan.csv");
        CHECK(cli_main({"scan", "--family", "2x2:eps=1", "--grid", "-1,1,-1,1,9,9",
                        "--max-iters", "300", "--output", out.path}) == 0);
        std::ifstream f(out.path);
        std::size_t lines = 0;
        std::string line;
        while (std::getline(f, line)) ++lines;
        CHECK(lines == 1 + 81);
    }
    SUBCASE("solve-one with acceleration honors the residual flag") {
        TempFile out("one.json");
        const int code =
            cli_main({"solve-one", "--family", "fci:N=128,density=0.1,gap=10", "--seed", "5",
                      "--anchor", "0", "--anderson-m", "5", "--output", out.path});
        CHECK(code == 0);
        std::ifstream f(out.path);
        nlohmann::json j;
        f >> j;
        CHECK(j.at("results").at("eigenpair").at("residual").get<double>() <= 1e-8);
    }
}

TEST_CASE("bench ratios are invariant under uniform slowdown") {
    const ComplexMatrix m = gen_near_diagonal({96, 0.01, false, {}, false, 9});
    BenchOptions fast;
    fast.repetitions = 3;
    BenchOptions slow = fast;
    slow.slowdown_factor = 4.0;
    const BenchResult a = bench(m, {}, fast);
    const BenchResult b = bench(m, {}, slow);
    CHECK(a.full_status == SolveStatus::Converged);
    // The padded run is ~5x slower in absolute terms...
    CHECK(b.median_t_eig > 3.0 * a.median_t_eig);
    // ...but the matmul-normalized ratio stays put within timing noise.
    CHECK(b.eig_over_mm >= 0.4 * a.eig_over_mm);
    CHECK(b.eig_over_mm <= 2.5 * a.eig_over_mm);
}
