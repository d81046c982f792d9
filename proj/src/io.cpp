#include "lipflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lipflow/errors.hpp"

namespace lipflow::io {

namespace fs = std::filesystem;

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // keep '\n' endings everywhere
    if (!out) {
        throw invalid_input("cannot open for writing: " + path);
    }
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw invalid_input("cannot open for reading: " + path);
    }
    return in;
}

double parse_double(const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) {
        throw invalid_input("malformed number: '" + text + "'");
    }
    return v;
}

json load_json(const std::string& path) {
    std::ifstream in = open_in(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw invalid_input("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

std::string sibling(const std::string& manifest_path, const std::string& file) {
    return (fs::path(manifest_path).parent_path() / file).string();
}

} // namespace

void write_func01_csv(const Func01& f, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "t,value\n";
    for (std::size_t k = 0; k < f.size(); ++k) {
        out << format_double(f.node(k)) << ',' << format_double(f[k]) << '\n';
    }
}

Func01 read_func01_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,value", 0) != 0) {
        throw invalid_input(path + ": expected header 't,value'");
    }
    std::vector<double> times;
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) {
            throw invalid_input(path + ": malformed row '" + line + "'");
        }
        times.push_back(parse_double(line.substr(0, comma)));
        values.push_back(parse_double(line.substr(comma + 1)));
    }
    if (times.size() < 2) {
        throw invalid_input(path + ": need at least two rows");
    }
    const double a = times.front();
    const double h = (times.back() - a) / static_cast<double>(times.size() - 1);
    if (!(h > 0.0)) {
        throw invalid_input(path + ": time column must be strictly increasing");
    }
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double expect = a + static_cast<double>(k) * h;
        if (std::abs(times[k] - expect) > 1e-9 * std::max(1.0, std::abs(expect))) {
            throw invalid_input(path + ": time column is not a uniform grid");
        }
    }
    return Func01::from_values(a, h, std::move(values));
}

json func01_to_json(const Func01& f) {
    return json{{"window", {f.a(), f.b()}}, {"step", f.step()}, {"values", f.values()}};
}

Func01 func01_from_json(const json& j) {
    try {
        const double a = j.at("window").at(0).get<double>();
        const double h = j.at("step").get<double>();
        std::vector<double> values = j.at("values").get<std::vector<double>>();
        return Func01::from_values(a, h, std::move(values));
    } catch (const json::exception& e) {
        throw invalid_input(std::string("Func01 JSON: ") + e.what());
    }
}

json hilbert_to_json(const HilbertPoint& p) {
    return json(p.coords);
}

std::string write_seqfunc(const SeqFunc& f, const std::string& dir, const std::string& stem) {
    fs::create_directories(dir);
    json manifest;
    manifest["depth"] = f.depth();
    manifest["window"] = {f.a(), f.b()};
    manifest["step"] = f.step();
    std::vector<std::string> files;
    for (int i = 1; i <= f.depth(); ++i) {
        char name[64];
        std::snprintf(name, sizeof(name), "%s_component_%03d.csv", stem.c_str(), i);
        write_func01_csv(f.component(i), (fs::path(dir) / name).string());
        files.emplace_back(name);
    }
    manifest["files"] = files;
    const std::string path = (fs::path(dir) / (stem + "_manifest.json")).string();
    std::ofstream out = open_out(path);
    out << manifest.dump(2) << '\n';
    return path;
}

SeqFunc read_seqfunc(const std::string& manifest_path) {
    const json manifest = load_json(manifest_path);
    std::vector<Func01> components;
    try {
        for (const auto& file : manifest.at("files")) {
            components.push_back(read_func01_csv(sibling(manifest_path, file.get<std::string>())));
        }
    } catch (const json::exception& e) {
        throw invalid_input(manifest_path + ": " + e.what());
    }
    return SeqFunc::from_components(std::move(components));
}

std::string write_universal(const UniversalPoint& up, const std::string& dir) {
    if (up.entries.empty()) {
        throw invalid_input("write_universal: empty point");
    }
    fs::create_directories(dir);
    json manifest;
    manifest["depth_k"] = up.depth();
    manifest["window"] = {up.entries.front().fn.a(), up.entries.front().fn.b()};
    manifest["step"] = up.entries.front().fn.step();
    json pairs = json::array();
    for (const UniversalEntry& entry : up.entries) {
        char name[64];
        std::snprintf(name, sizeof(name), "entry_%03lld.csv", static_cast<long long>(entry.k));
        write_func01_csv(entry.fn, (fs::path(dir) / name).string());
        pairs.push_back({{"k", entry.k},
                         {"i", entry.pair.i},
                         {"j", entry.pair.j},
                         {"r_j", entry.r},
                         {"file", name}});
    }
    manifest["pairs"] = pairs;
    const std::string path = (fs::path(dir) / "manifest.json").string();
    std::ofstream out = open_out(path);
    out << manifest.dump(2) << '\n';
    return path;
}

UniversalPoint read_universal(const std::string& manifest_path) {
    const json manifest = load_json(manifest_path);
    UniversalPoint up;
    try {
        for (const auto& item : manifest.at("pairs")) {
            up.entries.push_back(UniversalEntry{
                item.at("k").get<long long>(),
                {item.at("i").get<long long>(), item.at("j").get<long long>()},
                item.at("r_j").get<double>(),
                read_func01_csv(sibling(manifest_path, item.at("file").get<std::string>()))});
        }
    } catch (const json::exception& e) {
        throw invalid_input(manifest_path + ": " + e.what());
    }
    if (up.entries.empty()) {
        throw invalid_input(manifest_path + ": no entries");
    }
    return up;
}

void write_trajectory_csv(const std::string& path, const std::vector<double>& times,
                          const std::vector<State>& states) {
    if (times.size() != states.size() || states.empty()) {
        throw invalid_input("write_trajectory_csv: times and states must be matched and nonempty");
    }
    std::ofstream out = open_out(path);
    out << 't';
    for (std::size_t i = 1; i <= states.front().size(); ++i) {
        out << ",x" << i;
    }
    out << '\n';
    for (std::size_t k = 0; k < times.size(); ++k) {
        out << format_double(times[k]);
        for (double v : states[k]) {
            out << ',' << format_double(v);
        }
        out << '\n';
    }
}

FlowSystem flow_from_json(const json& j) {
    std::string kind;
    try {
        kind = j.at("kind").get<std::string>();
        const json params = j.value("params", json::object());
        if (kind == "circle-rotation") {
            return circle_rotation(params.at("alpha").get<double>());
        }
        if (kind == "torus-linear") {
            return torus_linear(params.at("alphas").get<std::vector<double>>());
        }
        if (kind == "ode-annulus") {
            return annulus_flow(params.value("kappa", 0.25), params.value("omega", 1.0),
                                j.value("rk_step", 1e-3));
        }
        if (kind == "rotation-skewed") {
            return broken_rotation(params.at("alpha").get<double>(),
                                   params.value("skew", 0.01));
        }
    } catch (const json::exception& e) {
        throw invalid_input(std::string("flow JSON: ") + e.what());
    }
    throw invalid_input("flow JSON: unknown kind '" + kind +
                        "' (expected circle-rotation, torus-linear, ode-annulus, rotation-skewed)");
}

HilbertEmbedding psi_from_json(const json& j, const Domain& domain, int min_depth) {
    std::string kind = "coordinate";
    try {
        kind = j.value("kind", std::string("coordinate"));
        if (kind == "coordinate") {
            return coordinate_embedding(domain, min_depth);
        }
        if (kind == "dense") {
            const int count = j.value("count", std::max(8, min_depth));
            if (count < min_depth) {
                throw invalid_input("psi JSON: dense count below the required depth " +
                                    std::to_string(min_depth));
            }
            return dense_embedding(DenseSet::random_in(domain, count,
                                                       j.value("seed", std::uint64_t{12345})));
        }
    } catch (const json::exception& e) {
        throw invalid_input(std::string("psi JSON: ") + e.what());
    }
    throw invalid_input("psi JSON: unknown kind '" + kind + "' (expected coordinate or dense)");
}

} // namespace lipflow::io
