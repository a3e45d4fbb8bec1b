#include "evoc/config_io.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace evoc {

using nlohmann::json;

std::vector<double> default_grid() {
    std::vector<double> g;
    for (int i = 1; i <= 10; ++i) g.push_back(i / 10.0);
    return g;
}

std::string to_string(Neighborhood n) { return n == Neighborhood::Moore ? "moore" : "von_neumann"; }

std::string to_string(InventionAssessment a) { return a == InventionAssessment::None ? "none" : "trend"; }

namespace {

double get_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError(key, "expected a number");
    return v.get<double>();
}

int get_int(const json& v, const std::string& key) {
    if (!v.is_number_integer()) throw ConfigError(key, "expected an integer");
    auto x = v.get<long long>();
    if (x < -2147483647LL || x > 2147483647LL) throw ConfigError(key, "integer out of range");
    return static_cast<int>(x);
}

bool get_bool(const json& v, const std::string& key) {
    if (!v.is_boolean()) throw ConfigError(key, "expected true or false");
    return v.get<bool>();
}

std::string get_string(const json& v, const std::string& key) {
    if (!v.is_string()) throw ConfigError(key, "expected a string");
    return v.get<std::string>();
}

std::vector<double> get_grid(const json& v, const std::string& key) {
    if (!v.is_array() || v.empty()) throw ConfigError(key, "expected a non-empty array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        double d = get_number(x, key);
        if (d < 0.0 || d > 1.0) throw ConfigError(key, "grid values must lie in [0, 1]");
        out.push_back(d);
    }
    return out;
}

void require_object(const json& v, const std::string& key) {
    if (!v.is_object()) throw ConfigError(key, "expected an object");
}

using Setter = std::function<void(const json&)>;

void apply(const json& obj, const std::string& prefix, const std::map<std::string, Setter>& setters) {
    for (const auto& [key, value] : obj.items()) {
        auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError(prefix + key, "unknown key");
        it->second(value);
    }
}

} // namespace

ExperimentConfig parse_config(const json& doc) {
    require_object(doc, "<root>");
    ExperimentConfig out;
    SimConfig& c = out.sim;

    const std::map<std::string, Setter> setters{
        {"grid_width", [&](const json& v) { c.grid_width = get_int(v, "grid_width"); }},
        {"grid_height", [&](const json& v) { c.grid_height = get_int(v, "grid_height"); }},
        {"parts", [&](const json& v) { c.parts = get_int(v, "parts"); }},
        {"steps_per_action", [&](const json& v) { c.steps_per_action = get_int(v, "steps_per_action"); }},
        {"creator_fraction", [&](const json& v) { c.creator_fraction = get_number(v, "creator_fraction"); }},
        {"creator_p_invent", [&](const json& v) { c.creator_p_invent = get_number(v, "creator_p_invent"); }},
        {"mutation_rate", [&](const json& v) { c.mutation_rate = get_number(v, "mutation_rate"); }},
        {"trend_bias_enabled", [&](const json& v) { c.trend_bias_enabled = get_bool(v, "trend_bias_enabled"); }},
        {"invention_assessment",
         [&](const json& v) {
             auto s = get_string(v, "invention_assessment");
             if (s == "trend") c.invention_assessment = InventionAssessment::Trend;
             else if (s == "none") c.invention_assessment = InventionAssessment::None;
             else throw ConfigError("invention_assessment", "expected \"trend\" or \"none\"");
         }},
        {"sr_enabled", [&](const json& v) { c.sr_enabled = get_bool(v, "sr_enabled"); }},
        {"sr_delta", [&](const json& v) { c.sr_delta = get_number(v, "sr_delta"); }},
        {"neighborhood",
         [&](const json& v) {
             auto s = get_string(v, "neighborhood");
             if (s == "von_neumann") c.neighborhood = Neighborhood::VonNeumann;
             else if (s == "moore") c.neighborhood = Neighborhood::Moore;
             else throw ConfigError("neighborhood", "expected \"von_neumann\" or \"moore\"");
         }},
        {"iterations", [&](const json& v) { c.iterations = get_int(v, "iterations"); }},
        {"threshold_fraction", [&](const json& v) { c.threshold_fraction = get_number(v, "threshold_fraction"); }},
        {"seed",
         [&](const json& v) {
             if (!v.is_number_unsigned()) throw ConfigError("seed", "expected a non-negative integer");
             c.seed = v.get<std::uint64_t>();
         }},
        {"fitness", [&](const json& v) { c.fitness = get_string(v, "fitness"); }},
        {"chain_beta", [&](const json& v) { c.chain_beta = get_number(v, "chain_beta"); }},
        {"output_dir", [&](const json& v) { out.output_dir = get_string(v, "output_dir"); }},
        {"sweep",
         [&](const json& v) {
             require_object(v, "sweep");
             SweepSpec s{default_grid(), default_grid(), 30};
             apply(v, "sweep.",
                   {{"C_grid", [&](const json& x) { s.c_grid = get_grid(x, "sweep.C_grid"); }},
                    {"p_grid", [&](const json& x) { s.p_grid = get_grid(x, "sweep.p_grid"); }},
                    {"replicates", [&](const json& x) { s.replicates = get_int(x, "sweep.replicates"); }}});
             if (s.replicates < 1) throw ConfigError("sweep.replicates", "must be >= 1");
             out.sweep = s;
         }},
        {"sr_compare",
         [&](const json& v) {
             require_object(v, "sr_compare");
             SRSpec s;
             apply(v, "sr_compare.",
                   {{"replicates", [&](const json& x) { s.replicates = get_int(x, "sr_compare.replicates"); }},
                    {"p_initial", [&](const json& x) { s.p_initial = get_number(x, "sr_compare.p_initial"); }}});
             if (s.replicates < 1) throw ConfigError("sr_compare.replicates", "must be >= 1");
             if (s.p_initial < 0.0 || s.p_initial > 1.0) throw ConfigError("sr_compare.p_initial", "must lie in [0, 1]");
             out.sr_compare = s;
         }},
    };

    apply(doc, "", setters);
    validate(c);
    return out;
}

ExperimentConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
    }
    return parse_config(doc);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigReadError("cannot read config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

json to_json(const SimConfig& c) {
    return json{
        {"grid_width", c.grid_width},
        {"grid_height", c.grid_height},
        {"parts", c.parts},
        {"steps_per_action", c.steps_per_action},
        {"creator_fraction", c.creator_fraction},
        {"creator_p_invent", c.creator_p_invent},
        {"mutation_rate", c.mutation_rate},
        {"trend_bias_enabled", c.trend_bias_enabled},
        {"invention_assessment", to_string(c.invention_assessment)},
        {"sr_enabled", c.sr_enabled},
        {"sr_delta", c.sr_delta},
        {"neighborhood", to_string(c.neighborhood)},
        {"iterations", c.iterations},
        {"threshold_fraction", c.threshold_fraction},
        {"seed", c.seed},
        {"fitness", c.fitness},
        {"chain_beta", c.chain_beta},
    };
}

} // namespace evoc
