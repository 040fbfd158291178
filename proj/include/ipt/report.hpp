#pragma once

#include <json.hpp>
#include <map>
#include <string>

#include "ipt/explorer.hpp"
#include "ipt/refine.hpp"
#include "ipt/rspt.hpp"
#include "ipt/solver.hpp"

namespace ipt {

/// Run manifest emitted by the CLI: command echo, effective configuration,
/// wall-clock timings per phase, counters, and the result payload. Serializes
/// losslessly: parse(serialize(x)) == x.
struct RunReport {
    std::string command;
    nlohmann::json config = nlohmann::json::object();
    std::map<std::string, double> timings;
    std::map<std::string, long> counters;
    nlohmann::json results = nlohmann::json::object();
};

nlohmann::json to_json(const RunReport& r);
RunReport report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const IterationConfig& c);
nlohmann::json to_json(const ConvergenceCertificate& c);
/// include_vector controls whether the full eigenvector is embedded.
nlohmann::json to_json(const EigenpairResult& r, bool include_vector = true);
/// include_basis controls whether the full eigenbasis is embedded.
nlohmann::json to_json(const SpectrumResult& r, bool include_basis = false);
nlohmann::json to_json(const RefinementResult& r, bool include_basis = false);
nlohmann::json to_json(const ContainmentReport& r);
nlohmann::json scan_summary_json(const ScanResult& r);

nlohmann::json complex_to_json(cplx v);

/// One data row per cell: eps_re, eps_im, class, period, escape_step,
/// steps_to_converge (absent fields as -1 or 0).
void write_scan_csv(const ScanResult& r, std::ostream& out);

/// Binary PGM: convergence black, cycles and bounded orbits grey, divergence
/// shaded by escape speed (darker = slower).
void write_scan_pgm(const ScanResult& r, const std::string& path);

}  // namespace ipt
