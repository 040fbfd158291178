#include "ipt/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ipt/anderson.hpp"
#include "ipt/bench.hpp"
#include "ipt/matrix_market.hpp"
#include "ipt/report.hpp"
#include "ipt/testgen.hpp"

namespace ipt {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::map<std::string, std::string> parse_kv(const std::string& spec, std::string& kind) {
    std::map<std::string, std::string> kv;
    const auto colon = spec.find(':');
    kind = spec.substr(0, colon);
    if (colon == std::string::npos) return kv;
    std::string rest = spec.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
        auto comma = rest.find(',', pos);
        if (comma == std::string::npos) comma = rest.size();
        const std::string item = rest.substr(pos, comma - pos);
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            kv[item] = "true";
        else
            kv[item.substr(0, eq)] = item.substr(eq + 1);
        pos = comma + 1;
    }
    return kv;
}

double kv_num(const std::map<std::string, std::string>& kv, const std::string& key, double dflt) {
    const auto it = kv.find(key);
    return it == kv.end() ? dflt : std::stod(it->second);
}

bool kv_flag(const std::map<std::string, std::string>& kv, const std::string& key) {
    const auto it = kv.find(key);
    return it != kv.end() && (it->second == "true" || it->second == "1" || it->second == "yes");
}

struct FamilyInstance {
    ComplexMatrix matrix;
    json meta;
};

FamilyInstance make_family(const std::string& spec, std::optional<std::uint64_t> seed_override) {
    std::string kind;
    const auto kv = parse_kv(spec, kind);
    const std::uint64_t seed =
        seed_override.value_or(static_cast<std::uint64_t>(kv_num(kv, "seed", 0)));
    FamilyInstance out;
    out.meta["family"] = spec;
    out.meta["seed"] = seed;
    if (kind == "near-diagonal") {
        NearDiagonalSpec nd;
        nd.n = static_cast<std::size_t>(kv_num(kv, "N", 64));
        nd.eps = kv_num(kv, "eps", 0.01);
        nd.symmetric = kv_flag(kv, "symmetric");
        if (kv.count("density")) nd.sparse_density = kv_num(kv, "density", 0.0);
        nd.include_diagonal = kv_flag(kv, "include_diagonal");
        nd.seed = seed;
        out.matrix = gen_near_diagonal(nd);
    } else if (kind == "ill") {
        const std::size_t n = static_cast<std::size_t>(kv_num(kv, "N", 64));
        out.matrix = gen_ill_conditioned(n, kv_num(kv, "alpha", 1.0), seed);
    } else if (kind == "fci") {
        const std::size_t n = static_cast<std::size_t>(kv_num(kv, "N", 1024));
        out.matrix =
            gen_fci_like(n, kv_num(kv, "density", 50.0 / static_cast<double>(n)),
                         kv_num(kv, "gap", 25.0), seed);
    } else if (kind == "2x2") {
        const cplx eps(kv_num(kv, "eps", 0.1), kv_num(kv, "eps_im", 0.0));
        out.matrix = reconstruct(explicit_2x2(eps));
    } else if (kind == "3x3") {
        const cplx eps(kv_num(kv, "eps", 0.05), kv_num(kv, "eps_im", 0.0));
        out.matrix = reconstruct(explicit_3x3(eps));
    } else {
        throw CLI::ValidationError("--family", "unknown family kind '" + kind + "'");
    }
    return out;
}

std::string join_args(const std::vector<std::string>& args) {
    std::string s;
    for (const std::string& a : args) {
        if (!s.empty()) s += ' ';
        s += a;
    }
    return s;
}

void emit_report(const RunReport& report, const std::string& out_path) {
    const std::string text = to_json(report).dump(2);
    if (out_path.empty()) {
        std::cout << text << '\n';
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot open output file " + out_path);
        f << text << '\n';
    }
}

int status_code(SolveStatus s) { return s == SolveStatus::Converged ? 0 : 2; }

struct CommonOpts {
    std::string matrix_path;
    std::string family;
    double tol = 100.0 * std::numeric_limits<double>::epsilon();
    int max_iters = 1000;
    std::string out_format = "json";
    std::string out_path;
    std::optional<std::uint64_t> seed;
    bool certify_flag = false;
    bool emit_vectors = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_input = true) {
    auto* mx = cmd->add_option("--matrix", o.matrix_path, "Matrix Market input file");
    auto* fam = cmd->add_option("--family", o.family,
                                "family spec, e.g. near-diagonal:N=256,eps=0.01");
    if (needs_input) {
        mx->excludes(fam);
        fam->excludes(mx);
    }
    cmd->add_option("--tol", o.tol, "relative step tolerance")->capture_default_str();
    cmd->add_option("--max-iters", o.max_iters, "iteration budget")->capture_default_str();
    cmd->add_option("--out", o.out_format, "output format: json|csv")->capture_default_str();
    cmd->add_option("--output", o.out_path, "write output to file instead of stdout");
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&o](const std::uint64_t& v) { o.seed = v; }, "generator seed override");
    cmd->add_flag("--certify", o.certify_flag, "evaluate the contraction certificate");
    cmd->add_flag("--emit-vectors", o.emit_vectors, "embed eigenvectors in the report");
}

ComplexMatrix load_input(const CommonOpts& o, json& meta) {
    if (!o.matrix_path.empty()) {
        meta["matrix"] = o.matrix_path;
        return read_matrix_market(o.matrix_path);
    }
    if (o.family.empty())
        throw CLI::ValidationError("input", "either --matrix or --family is required");
    FamilyInstance fam = make_family(o.family, o.seed);
    meta = fam.meta;
    return std::move(fam.matrix);
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
    if (const char* threads = std::getenv("IPT_THREADS")) {
#ifdef _OPENMP
        const int t = std::atoi(threads);
        if (t > 0) omp_set_num_threads(t);
#endif
    }

    CLI::App app{"iterative fixed-point eigensolver for near-diagonal matrices"};
    app.require_subcommand(1);

    CommonOpts solve_o, one_o, refine_o, scan_o, rs_o, gen_o, bench_o;

    auto* solve_cmd = app.add_subcommand("solve", "full spectrum solve");
    add_common(solve_cmd, solve_o);

    auto* one_cmd = app.add_subcommand("solve-one", "single eigenpair solve");
    add_common(one_cmd, one_o);
    std::size_t anchor = 0;
    int anderson_m = 0;
    double continuation_alpha = -1.0;
    double residual_tol = 1e-8;
    one_cmd->add_option("--anchor", anchor, "target basis index (0-based)")->capture_default_str();
    one_cmd->add_option("--anderson-m", anderson_m, "Anderson memory; 0 = plain iteration")
        ->capture_default_str();
    one_cmd->add_option("--continuation-alpha", continuation_alpha,
                        "ramp shrink factor in [0,1); negative disables");
    one_cmd->add_option("--residual-tol", residual_tol, "residual target for --anderson-m")
        ->capture_default_str();

    auto* refine_cmd = app.add_subcommand("refine", "mixed-precision refinement");
    add_common(refine_cmd, refine_o);

    auto* scan_cmd = app.add_subcommand("scan", "classify the complex eps-plane");
    add_common(scan_cmd, scan_o);
    std::vector<double> grid{-1.0, 1.0, -1.0, 1.0, 101, 101};
    std::size_t scan_anchor = 0;
    int period_window = 64;
    double period_tol = 1e-9;
    double scan_alpha = -1.0;
    std::string raster_path;
    scan_cmd->add_option("--grid", grid, "re0,re1,im0,im1,nx,ny")->delimiter(',')->expected(6);
    scan_cmd->add_option("--anchor", scan_anchor, "column to scan")->capture_default_str();
    scan_cmd->add_option("--period-window", period_window, "trailing recurrence window")
        ->capture_default_str();
    scan_cmd->add_option("--period-tol", period_tol, "recurrence tolerance")->capture_default_str();
    scan_cmd->add_option("--continuation-alpha", scan_alpha,
                         "ramp shrink factor in [0,1); negative disables");
    scan_cmd->add_option("--raster", raster_path, "also write a PGM image");
    scan_o.out_format = "csv";
    scan_o.max_iters = 2000;

    auto* rs_cmd = app.add_subcommand("rs-check", "series containment order fit");
    add_common(rs_cmd, rs_o);
    int rs_order = 3;
    std::vector<double> eps_grid_spec{1e-3, 1e-2, 8};
    rs_cmd->add_option("--order", rs_order, "highest order to fit")->capture_default_str();
    rs_cmd->add_option("--eps-grid", eps_grid_spec, "min,max,count (log-spaced)")
        ->delimiter(',')
        ->expected(3);

    auto* gen_cmd = app.add_subcommand("gen", "generate a family instance");
    add_common(gen_cmd, gen_o, false);
    bool mm_symmetric = false;
    gen_cmd->add_flag("--mm-symmetric", mm_symmetric, "store only the lower triangle");

    auto* bench_cmd = app.add_subcommand("bench", "normalized timing harness");
    add_common(bench_cmd, bench_o);
    int repetitions = 3;
    double slowdown = 0.0;
    std::size_t bench_anchor = 0;
    bench_cmd->add_option("--repetitions", repetitions, "timing repetitions")
        ->capture_default_str();
    bench_cmd->add_option("--slowdown", slowdown, "self-test slowdown factor")
        ->capture_default_str();
    bench_cmd->add_option("--anchor", bench_anchor, "anchor for the single-pair phase")
        ->capture_default_str();

    std::vector<char*> argv;
    std::vector<std::string> storage = args;
    storage.insert(storage.begin(), "ipt");
    argv.reserve(storage.size());
    for (std::string& s : storage) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        const auto t_start = Clock::now();
        RunReport report;
        report.command = join_args(args);

        auto run_solver_command = [&](const CommonOpts& o,
                                      auto&& solve_fn) -> int {
            json meta;
            const auto t_load = Clock::now();
            const ComplexMatrix m = load_input(o, meta);
            report.timings["load"] = seconds_since(t_load);

            IterationConfig cfg;
            cfg.tolerance = o.tol;
            cfg.max_iterations = o.max_iters;
            report.config = to_json(cfg);
            report.config["input"] = meta;

            const auto t_setup = Clock::now();
            const Partition p = partition(m);
            const InverseGaps g = build_gaps(p);
            report.timings["setup"] = seconds_since(t_setup);
            if (o.certify_flag) {
                const auto t_cert = Clock::now();
                report.results["certificate"] = to_json(certify(p, g));
                report.timings["certify"] = seconds_since(t_cert);
            }

            const auto t_solve = Clock::now();
            const int code = solve_fn(p, g, cfg, report);
            report.timings["solve"] = seconds_since(t_solve);
            report.timings["total"] = seconds_since(t_start);
            emit_report(report, o.out_path);
            return code;
        };

        if (*solve_cmd) {
            return run_solver_command(
                solve_o, [&](const Partition& p, const InverseGaps& g, const IterationConfig& cfg,
                             RunReport& r) {
                    const SpectrumResult res = solve_full(p, g, cfg);
                    r.results["spectrum"] = to_json(res, solve_o.emit_vectors);
                    r.counters["iterations"] = res.iterations;
                    r.counters["matmul_products"] = res.matmul_count;
                    return status_code(res.status);
                });
        }

        if (*one_cmd) {
            return run_solver_command(
                one_o, [&](const Partition& p, const InverseGaps& g, IterationConfig cfg,
                           RunReport& r) {
                    cfg.residual_tolerance = residual_tol;
                    r.config = to_json(cfg);
                    r.config["anchor"] = anchor;
                    EigenpairResult res;
                    if (anderson_m > 0 && continuation_alpha >= 0.0)
                        throw CLI::ValidationError(
                            "solve-one", "--anderson-m and --continuation-alpha are exclusive");
                    if (anderson_m > 0)
                        res = solve_single_accelerated(p, g, anchor, cfg, anderson_m);
                    else if (continuation_alpha >= 0.0)
                        res = solve_single_continuation(p, g, anchor, cfg, continuation_alpha);
                    else
                        res = solve_single(p, g, anchor, cfg);
                    r.results["eigenpair"] = to_json(res, one_o.emit_vectors);
                    r.counters["iterations"] = res.iterations;
                    r.counters["matvec_products"] = res.matvec_count;
                    return status_code(res.status);
                });
        }

        if (*refine_cmd) {
            json meta;
            const auto t_load = Clock::now();
            const ComplexMatrix m = load_input(refine_o, meta);
            report.timings["load"] = seconds_since(t_load);
            IterationConfig cfg;
            cfg.tolerance = refine_o.tol;
            cfg.max_iterations = refine_o.max_iters;
            report.config = to_json(cfg);
            report.config["input"] = meta;

            const auto t_seed = Clock::now();
            const ComplexMatrix seed = make_low_precision_seed(m);
            report.timings["seed"] = seconds_since(t_seed);
            const auto t_solve = Clock::now();
            const RefinementResult res = refine_spectrum(m, seed, cfg);
            report.timings["solve"] = seconds_since(t_solve);
            report.results["refinement"] = to_json(res, refine_o.emit_vectors);
            report.counters["inner_iterations"] = res.inner_iterations;
            report.timings["total"] = seconds_since(t_start);
            emit_report(report, refine_o.out_path);
            return status_code(res.status);
        }

        if (*scan_cmd) {
            json meta;
            const ComplexMatrix m = load_input(scan_o, meta);
            const Partition p = partition(m);
            ScanSpec spec;
            spec.d = p.d;
            spec.delta0 = p.delta;
            spec.anchor = scan_anchor;
            spec.re_min = grid[0];
            spec.re_max = grid[1];
            spec.im_min = grid[2];
            spec.im_max = grid[3];
            spec.nx = static_cast<std::size_t>(grid[4]);
            spec.ny = static_cast<std::size_t>(grid[5]);
            spec.max_iterations = scan_o.max_iters;
            spec.step_tolerance = scan_o.tol;
            spec.period_window = period_window;
            spec.period_tolerance = period_tol;
            if (scan_alpha >= 0.0) spec.continuation_alpha = scan_alpha;

            const auto t_scan = Clock::now();
            const ScanResult scan = scan_grid(spec);
            report.timings["scan"] = seconds_since(t_scan);
            if (!raster_path.empty()) write_scan_pgm(scan, raster_path);
            if (scan_o.out_format == "csv") {
                if (scan_o.out_path.empty()) {
                    write_scan_csv(scan, std::cout);
                } else {
                    std::ofstream f(scan_o.out_path);
                    if (!f) throw std::runtime_error("cannot open " + scan_o.out_path);
                    write_scan_csv(scan, f);
                }
            } else {
                report.config["input"] = meta;
                report.results["scan"] = scan_summary_json(scan);
                report.timings["total"] = seconds_since(t_start);
                emit_report(report, scan_o.out_path);
            }
            return 0;
        }

        if (*rs_cmd) {
            json meta;
            const ComplexMatrix m = load_input(rs_o, meta);
            const Partition unit = partition(m);
            const InverseGaps g = build_gaps(unit);
            std::vector<cplx> eps_grid;
            const int count = static_cast<int>(eps_grid_spec[2]);
            for (int i = 0; i < count; ++i) {
                const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
                eps_grid.push_back(
                    std::exp(std::log(eps_grid_spec[0]) +
                             t * (std::log(eps_grid_spec[1]) - std::log(eps_grid_spec[0]))));
            }
            const ContainmentReport rep = containment_check(unit, g, rs_order, eps_grid);
            report.config["input"] = meta;
            report.config["order"] = rs_order;
            report.results["containment"] = to_json(rep);
            report.timings["total"] = seconds_since(t_start);
            for (const auto& fit : rep.orders) {
                std::cerr << "order " << fit.k << ": ";
                if (fit.below_noise_floor)
                    std::cerr << "remainder at noise floor (" << fit.points_used << " points)\n";
                else
                    std::cerr << "slope " << fit.slope << " from " << fit.points_used
                              << " points\n";
            }
            emit_report(report, rs_o.out_path);
            return 0;
        }

        if (*gen_cmd) {
            if (gen_o.family.empty())
                throw CLI::ValidationError("gen", "--family is required");
            if (gen_o.out_path.empty())
                throw CLI::ValidationError("gen", "--output is required");
            FamilyInstance fam = make_family(gen_o.family, gen_o.seed);
            MatrixMarketOptions mm;
            mm.write_symmetric = mm_symmetric;
            write_matrix_market(fam.matrix, gen_o.out_path, mm);
            return 0;
        }

        if (*bench_cmd) {
            json meta;
            const ComplexMatrix m = load_input(bench_o, meta);
            IterationConfig cfg;
            cfg.tolerance = bench_o.tol;
            cfg.max_iterations = bench_o.max_iters;
            BenchOptions opt;
            opt.repetitions = repetitions;
            opt.slowdown_factor = slowdown;
            opt.anchor = bench_anchor;
            const BenchResult res = bench(m, cfg, opt);
            report.config = to_json(cfg);
            report.config["input"] = meta;
            report.config["repetitions"] = repetitions;
            json samples = json::array();
            for (const BenchSample& s : res.samples)
                samples.push_back(json{{"t_eig", s.t_eig},
                                       {"t_mm", s.t_mm},
                                       {"t_eigs", s.t_eigs},
                                       {"t_mv", s.t_mv}});
            report.results["bench"] = json{{"samples", samples},
                                           {"median_t_eig", res.median_t_eig},
                                           {"median_t_mm", res.median_t_mm},
                                           {"median_t_eigs", res.median_t_eigs},
                                           {"median_t_mv", res.median_t_mv},
                                           {"eig_over_mm", res.eig_over_mm},
                                           {"eigs_over_mv", res.eigs_over_mv},
                                           {"full_iterations", res.full_iterations},
                                           {"single_iterations", res.single_iterations},
                                           {"full_status", to_string(res.full_status)},
                                           {"single_status", to_string(res.single_status)}};
            report.counters["matmul_products"] = res.matmul_products;
            report.counters["matvec_products"] = res.matvec_products;
            report.timings["total"] = seconds_since(t_start);
            emit_report(report, bench_o.out_path);
            return 0;
        }

        return 1;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace ipt
