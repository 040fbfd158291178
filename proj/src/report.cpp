#include "ipt/report.hpp"

#include <fstream>
#include <ostream>

namespace ipt {

using nlohmann::json;

json complex_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

namespace {

json cvec_to_json(const cvec& v) {
    json a = json::array();
    for (const cplx& x : v) a.push_back(complex_to_json(x));
    return a;
}

json matrix_to_json(const ComplexMatrix& m) {
    const ComplexMatrix d = m.to_dense();
    json rows = json::array();
    for (std::size_t i = 0; i < d.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < d.cols(); ++j) r.push_back(complex_to_json(d.get(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace

json to_json(const RunReport& r) {
    return json{{"command", r.command},
                {"config", r.config},
                {"timings", r.timings},
                {"counters", r.counters},
                {"results", r.results}};
}

RunReport report_from_json(const json& j) {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.config = j.at("config");
    r.timings = j.at("timings").get<std::map<std::string, double>>();
    r.counters = j.at("counters").get<std::map<std::string, long>>();
    r.results = j.at("results");
    return r;
}

json to_json(const IterationConfig& c) {
    return json{{"tolerance", c.tolerance},
                {"max_iterations", c.max_iterations},
                {"divergence_threshold", c.divergence_threshold},
                {"record_trace", c.record_trace},
                {"residual_tolerance", c.residual_tolerance}};
}

json to_json(const ConvergenceCertificate& c) {
    return json{{"g_norm", c.g_norm},
                {"delta_norm", c.delta_norm},
                {"product", c.product},
                {"certified", c.certified},
                {"estimator_tolerance", c.estimator_tolerance}};
}

json to_json(const EigenpairResult& r, bool include_vector) {
    json j{{"status", to_string(r.status)},
           {"anchor", r.anchor},
           {"eigenvalue", complex_to_json(r.eigenvalue)},
           {"iterations", r.iterations},
           {"final_step", r.final_step},
           {"residual", r.residual},
           {"matvec_products", r.matvec_count}};
    if (include_vector) j["z"] = cvec_to_json(r.z);
    if (!r.trace.empty()) j["trace"] = r.trace;
    return j;
}

json to_json(const SpectrumResult& r, bool include_basis) {
    json j{{"status", to_string(r.status)},
           {"eigenvalues", cvec_to_json(r.eigenvalues)},
           {"iterations", r.iterations},
           {"final_step", r.final_step},
           {"residual_frobenius", r.residual_frobenius},
           {"min_singular_value_estimate", r.min_singular_value_estimate},
           {"matmul_products", r.matmul_count}};
    if (include_basis) j["Z"] = matrix_to_json(r.Z);
    if (!r.trace.empty()) j["trace"] = r.trace;
    return j;
}

json to_json(const RefinementResult& r, bool include_basis) {
    json j{{"status", to_string(r.status)},
           {"eigenvalues", cvec_to_json(r.eigenvalues)},
           {"seed_residual", r.seed_residual},
           {"refined_residual", r.refined_residual},
           {"seed_condition_estimate", r.seed_condition_estimate},
           {"inner_iterations", r.inner_iterations},
           {"inner_certificate", to_json(r.inner_certificate)}};
    if (include_basis) j["Z"] = matrix_to_json(r.Z);
    return j;
}

json to_json(const ContainmentReport& r) {
    json orders = json::array();
    for (const auto& fit : r.orders) {
        json o{{"k", fit.k},
               {"points_used", fit.points_used},
               {"below_noise_floor", fit.below_noise_floor}};
        if (fit.below_noise_floor)
            o["slope"] = nullptr;  // remainder indistinguishable from zero
        else
            o["slope"] = fit.slope;
        orders.push_back(std::move(o));
    }
    json j{{"orders", orders}};
    if (!r.excluded_points.empty()) {
        json ex = json::array();
        for (cplx e : r.excluded_points) ex.push_back(complex_to_json(e));
        j["excluded_points"] = ex;
    }
    return j;
}

json scan_summary_json(const ScanResult& r) {
    std::map<std::string, long> counts;
    for (const ScanCell& c : r.cells) ++counts[to_string(c.classification)];
    return json{{"nx", r.nx}, {"ny", r.ny}, {"cells", r.cells.size()}, {"counts", counts}};
}

void write_scan_csv(const ScanResult& r, std::ostream& out) {
    out << "eps_re,eps_im,class,period,escape_step,steps_to_converge\n";
    char buf[64];
    for (const ScanCell& c : r.cells) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g", c.eps.real(), c.eps.imag());
        out << buf << ',' << to_string(c.classification) << ',' << c.period << ','
            << c.escape_step << ',' << c.steps_to_converge << '\n';
    }
}

void write_scan_pgm(const ScanResult& r, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open raster file " + path);
    f << "P5\n" << r.nx << ' ' << r.ny << "\n255\n";
    for (std::size_t iy = r.ny; iy-- > 0;) {
        for (std::size_t ix = 0; ix < r.nx; ++ix) {
            const ScanCell& c = r.at(ix, iy);
            unsigned char v = 0;
            switch (c.classification) {
                case PointClass::ConvergedFixedPoint: v = 0; break;
                case PointClass::PeriodicCycle: v = 70; break;
                case PointClass::BoundedNonperiodic: v = 120; break;
                case PointClass::Diverged:
                    v = static_cast<unsigned char>(255 - std::min(80, c.escape_step));
                    break;
            }
            f.put(static_cast<char>(v));
        }
    }
    if (!f) throw std::runtime_error("raster write failed");
}

}  // namespace ipt
