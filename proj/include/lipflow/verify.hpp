#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "lipflow/function_space.hpp"
#include "lipflow/orbit.hpp"
#include "lipflow/smoothing.hpp"

namespace lipflow {

/// Everything a run needs, with every default materialized so that the
/// echoed configuration fully describes the run.
struct RunConfig {
    nlohmann::json flow = {{"kind", "circle-rotation"},
                           {"params", {{"alpha", 0.41421356237309515}}}};
    nlohmann::json psi = {{"kind", "coordinate"}};
    OrbitConfig orbit;
    QuadConfig quad;
    MetricConfig metric_cfg;
    long long depth_k = 21;
    std::vector<State> states = {{0.0}};
    long long samples = 1000;
    std::uint64_t seed = 42;
    std::map<std::string, double> tolerance_overrides;

    static RunConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

/// One verified property: the measured worst defect against the analytic
/// budget that justifies its tolerance (never a bare magic number — the
/// justifying expression travels with the value).
struct PropertyResult {
    std::string name;
    std::string claim;
    long long samples = 0;
    double max_defect = 0.0;
    double budget = 0.0;
    std::string budget_expr;
    bool pass = true;
};

struct VerifyReport {
    nlohmann::json config_echo;
    std::vector<PropertyResult> properties;
    bool all_pass = true;

    /// Deterministic JSON rendering: byte-identical for identical configs.
    std::string to_json_string() const;
    /// Fixed-format text table.
    std::string to_text() const;
};

/// Runs every property suite (function space, flows, Hilbert embedding,
/// orbit map, smoothing) at the configured sample counts. Failures become
/// report entries, never exceptions; given the same config and seed the
/// report is byte-identical.
VerifyReport run_verify(const RunConfig& cfg);

} // namespace lipflow
