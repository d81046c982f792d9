#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lipflow/flows.hpp"
#include "lipflow/function_space.hpp"
#include "lipflow/hilbert.hpp"
#include "lipflow/smoothing.hpp"

namespace lipflow::io {

using json = nlohmann::json;

/// 17 significant digits; round-trips doubles exactly.
std::string format_double(double x);

// Func01 <-> CSV with header "t,value", one row per grid node.
void write_func01_csv(const Func01& f, const std::string& path);
Func01 read_func01_csv(const std::string& path);

// Func01 <-> {"window":[a,b], "step":h, "values":[...]}.
json func01_to_json(const Func01& f);
Func01 func01_from_json(const json& j);

json hilbert_to_json(const HilbertPoint& p);

/// One CSV per component plus "<stem>_manifest.json" in dir; returns the
/// manifest path.
std::string write_seqfunc(const SeqFunc& f, const std::string& dir, const std::string& stem);
SeqFunc read_seqfunc(const std::string& manifest_path);

/// One CSV per entry plus "manifest.json" in dir; returns the manifest path.
std::string write_universal(const UniversalPoint& up, const std::string& dir);
UniversalPoint read_universal(const std::string& manifest_path);

void write_trajectory_csv(const std::string& path, const std::vector<double>& times,
                          const std::vector<State>& states);

/// Flow loader for {"kind": ..., "params": {...}, "rk_step": ...} documents.
/// Kinds: "circle-rotation" (alpha), "torus-linear" (alphas),
/// "ode-annulus" (kappa, omega; rk_step at top level),
/// "rotation-skewed" (alpha, skew; a deliberately broken test flow).
FlowSystem flow_from_json(const json& j);

/// Embedding loader: {"kind":"coordinate"} or {"kind":"dense","count":M,"seed":S}.
HilbertEmbedding psi_from_json(const json& j, const Domain& domain, int min_depth);

} // namespace lipflow::io
