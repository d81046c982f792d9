// Command-line front end: wires flows -> embedding -> orbit -> smoothing,
// runs the property suites and emits reports and plot-ready data.
//
// Exit codes: 0 success, 1 validation/usage error, 2 numerical budget
// failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lipflow/errors.hpp"
#include "lipflow/io.hpp"
#include "lipflow/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

lipflow::RunConfig load_config(const std::string& path, long long depth_k_override,
                               long long seed_override) {
    json doc = json::object();
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) {
            throw lipflow::invalid_input("cannot open config: " + path);
        }
        try {
            in >> doc;
        } catch (const json::exception& e) {
            throw lipflow::invalid_input("malformed config JSON: " + std::string(e.what()));
        }
    }
    lipflow::RunConfig cfg = lipflow::RunConfig::from_json(doc);
    if (depth_k_override > 0) {
        cfg.depth_k = depth_k_override;
    }
    if (seed_override >= 0) {
        cfg.seed = static_cast<std::uint64_t>(seed_override);
    }
    return cfg;
}

int cmd_embed(const std::string& config_path, const std::string& out_dir,
              long long depth_k, long long seed) {
    const lipflow::RunConfig cfg = load_config(config_path, depth_k, seed);
    const lipflow::FlowSystem flow = lipflow::io::flow_from_json(cfg.flow);
    const lipflow::HilbertEmbedding psi =
        lipflow::io::psi_from_json(cfg.psi, flow.domain, cfg.orbit.hilbert_depth);

    // The averaging step consumes r_1 = 1/2 of window on the right; hand the
    // orbit map the total requirement up front.
    lipflow::OrbitConfig ocfg = cfg.orbit;
    const long long margin_cells =
        static_cast<long long>(std::ceil(0.5 / ocfg.step - 1e-12));
    ocfg.t_max = ocfg.t_max + static_cast<double>(margin_cells) * ocfg.step;

    fs::create_directories(out_dir);
    {
        std::ofstream echo((fs::path(out_dir) / "config_echo.json").string(), std::ios::binary);
        echo << cfg.to_json().dump(2) << '\n';
    }
    for (std::size_t s = 0; s < cfg.states.size(); ++s) {
        const lipflow::SeqFunc orbit = lipflow::orbit_embed(flow, psi, cfg.states[s], ocfg);
        const lipflow::UniversalPoint up = lipflow::universal_embed(orbit, cfg.depth_k, cfg.quad);
        for (const lipflow::UniversalEntry& entry : up.entries) {
            if (!lipflow::is_in_L(entry.fn, 0.0)) {
                std::cerr << "certificate violated for entry k=" << entry.k << "\n";
                return 2;
            }
        }
        char sub[32];
        std::snprintf(sub, sizeof(sub), "state_%03zu", s);
        const std::string manifest =
            lipflow::io::write_universal(up, (fs::path(out_dir) / sub).string());
        std::cout << manifest << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& config_path, const std::string& out_dir, long long seed) {
    const lipflow::RunConfig cfg = load_config(config_path, 0, seed);
    const lipflow::VerifyReport report = lipflow::run_verify(cfg);
    std::cout << report.to_text();
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        const std::string path = (fs::path(out_dir) / "report.json").string();
        std::ofstream out(path, std::ios::binary);
        out << report.to_json_string();
        std::cout << "report written to " << path << "\n";
    }
    return report.all_pass ? 0 : 2;
}

int cmd_enumerate(long long k_max, const std::string& out_path) {
    if (k_max < 1) {
        throw lipflow::invalid_input("enumerate: k-max must be >= 1");
    }
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) {
            throw lipflow::invalid_input("cannot open for writing: " + out_path);
        }
        out = &file;
    }
    (*out) << "k,i,j,r_j\n";
    for (long long k = 1; k <= k_max; ++k) {
        const lipflow::PairIndex p = lipflow::pair_of(k);
        (*out) << k << ',' << p.i << ',' << p.j << ','
               << lipflow::io::format_double(lipflow::r_of(p.j)) << '\n';
    }
    return 0;
}

int cmd_plotdata(const std::string& manifest_path, const std::string& selector,
                 const std::string& out_path) {
    json manifest;
    {
        std::ifstream in(manifest_path);
        if (!in) {
            throw lipflow::invalid_input("cannot open manifest: " + manifest_path);
        }
        try {
            in >> manifest;
        } catch (const json::exception& e) {
            throw lipflow::invalid_input("malformed manifest: " + std::string(e.what()));
        }
    }

    // Universal manifests carry "pairs"; orbit manifests carry "files".
    std::vector<std::pair<std::string, std::string>> series; // label, file
    if (manifest.contains("pairs")) {
        for (const auto& item : manifest.at("pairs")) {
            char label[32];
            std::snprintf(label, sizeof(label), "k=%lld", item.at("k").get<long long>());
            series.emplace_back(label, item.at("file").get<std::string>());
        }
    } else if (manifest.contains("files")) {
        int i = 0;
        for (const auto& item : manifest.at("files")) {
            char label[32];
            std::snprintf(label, sizeof(label), "component=%d", ++i);
            series.emplace_back(label, item.get<std::string>());
        }
    } else {
        throw lipflow::invalid_input("manifest carries neither 'pairs' nor 'files'");
    }

    std::vector<std::pair<std::string, std::string>> picked;
    if (selector == "all") {
        picked = series;
    } else {
        for (const auto& entry : series) {
            if (entry.first == selector) {
                picked.push_back(entry);
            }
        }
    }
    if (picked.empty()) {
        std::string available;
        for (const auto& entry : series) {
            available += (available.empty() ? "" : ", ") + entry.first;
        }
        throw lipflow::invalid_input("selector '" + selector +
                                     "' matches nothing; available: " + available + ", all");
    }

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) {
            throw lipflow::invalid_input("cannot open for writing: " + out_path);
        }
        out = &file;
    }
    const fs::path base = fs::path(manifest_path).parent_path();
    for (const auto& [label, csv] : picked) {
        const lipflow::Func01 f = lipflow::io::read_func01_csv((base / csv).string());
        (*out) << "# " << label << '\n' << "t,value\n";
        for (std::size_t k = 0; k < f.size(); ++k) {
            (*out) << lipflow::io::format_double(f.node(k)) << ','
                   << lipflow::io::format_double(f[k]) << '\n';
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"embedding of flows into the translation action on stacks of 1-Lipschitz functions"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string manifest_path;
    std::string selector;
    long long depth_k = 0;
    long long seed = -1;
    long long k_max = 21;

    CLI::App* embed = app.add_subcommand("embed", "run the full pipeline and write certified entries");
    embed->add_option("--config", config_path, "run configuration (JSON)");
    embed->add_option("--out", out_dir, "output directory")->required();
    embed->add_option("--depth-k", depth_k, "override the truncation depth");
    embed->add_option("--seed", seed, "override the run seed");

    CLI::App* verify = app.add_subcommand("verify", "run every property suite and report defects vs budgets");
    verify->add_option("--config", config_path, "run configuration (JSON)");
    verify->add_option("--out", out_dir, "directory for report.json");
    verify->add_option("--seed", seed, "override the run seed");

    CLI::App* enumerate = app.add_subcommand("enumerate", "print the triangular slot table (k,i,j,r_j)");
    enumerate->add_option("--k-max", k_max, "largest slot index");
    enumerate->add_option("--out", out_dir, "output CSV path (default stdout)");

    CLI::App* plot = app.add_subcommand("plot-data", "emit t,value series from a manifest");
    plot->add_option("--manifest", manifest_path, "manifest JSON path")->required();
    plot->add_option("--select", selector, "series label (e.g. k=1, component=2, all)");
    plot->add_option("--out", out_dir, "output path (default stdout)");

    try {
        app.parse(argc, argv);
        if (embed->parsed()) {
            return cmd_embed(config_path, out_dir, depth_k, seed);
        }
        if (verify->parsed()) {
            return cmd_verify(config_path, out_dir, seed);
        }
        if (enumerate->parsed()) {
            return cmd_enumerate(k_max, out_dir);
        }
        if (plot->parsed()) {
            return cmd_plotdata(manifest_path, selector.empty() ? "@missing@" : selector, out_dir);
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const lipflow::invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const lipflow::numeric_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
