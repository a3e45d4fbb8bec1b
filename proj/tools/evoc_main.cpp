// evoc: command-line front end for the cultural-evolution simulator.
//
//   evoc run        --config cfg.json [--seed N] --out DIR
//   evoc sweep      --config cfg.json --out DIR
//   evoc sr-compare --config cfg.json [--replicates N] --out DIR
//   evoc oracle     --fitness NAME [--steps T] [--beta B]
//   evoc plot       --in timeseries.csv --out plot.svg --columns a,b
//
// Exit codes: 0 success, 2 usage or config error, 3 I/O error.

#include "evoc/config_io.hpp"
#include "evoc/experiments.hpp"
#include "evoc/fitness.hpp"
#include "evoc/plot.hpp"
#include "evoc/report.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <locale>
#include <sstream>

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

fs::path resolve_out(const std::string& flag, const evoc::ExperimentConfig& cfg) {
    if (!flag.empty()) return flag;
    if (cfg.output_dir) return *cfg.output_dir;
    throw UsageError("--out is required (or set output_dir in the config)");
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir.string() + "'");
}

// Writes the whole artifact at once so a failed run leaves no partial file behind.
void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << contents;
    out.flush();
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

template <class F>
std::string render(F&& writer) {
    std::ostringstream ss;
    ss.imbue(std::locale::classic());
    writer(ss);
    return ss.str();
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed_flag, const std::string& out_flag) {
    auto cfg = evoc::load_config(config_path);
    const std::uint64_t seed = seed_flag.value_or(cfg.sim.seed);
    const fs::path dir = resolve_out(out_flag, cfg);
    ensure_dir(dir);

    const auto result = evoc::run_sim(cfg.sim, seed);
    write_file(dir / "timeseries.csv", render([&](std::ostream& o) { evoc::write_timeseries_csv(o, result.series); }));

    nlohmann::json meta{{"config", evoc::to_json(cfg.sim)}, {"seed", seed}};
    write_file(dir / "run_meta.json", meta.dump(2) + "\n");
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_flag) {
    auto cfg = evoc::load_config(config_path);
    if (!cfg.sweep) throw UsageError("config has no 'sweep' block");
    const fs::path dir = resolve_out(out_flag, cfg);
    ensure_dir(dir);

    const auto cells = evoc::sweep(cfg.sim, cfg.sweep->c_grid, cfg.sweep->p_grid, cfg.sweep->replicates);
    write_file(dir / "sweep.csv", render([&](std::ostream& o) { evoc::write_sweep_csv(o, cells); }));
    return kExitOk;
}

int cmd_sr_compare(const std::string& config_path, std::optional<int> replicates, const std::string& out_flag) {
    auto cfg = evoc::load_config(config_path);
    if (!cfg.sr_compare) throw UsageError("config has no 'sr_compare' block");
    const int reps = replicates.value_or(cfg.sr_compare->replicates);
    if (reps < 1) throw UsageError("--replicates must be >= 1");
    const fs::path dir = resolve_out(out_flag, cfg);
    ensure_dir(dir);

    const auto cmp = evoc::sr_compare(cfg.sim, cfg.sr_compare->p_initial, reps);
    write_file(dir / "sr_pairs.csv", render([&](std::ostream& o) { evoc::write_sr_pairs_csv(o, cmp.pairs); }));
    write_file(dir / "sr_summary.csv", render([&](std::ostream& o) { evoc::write_sr_summary_csv(o, cmp.summary); }));
    return kExitOk;
}

int cmd_oracle(const std::string& name, int steps, double beta) {
    if (!evoc::is_known_fitness(name)) throw UsageError("unknown fitness function '" + name + "'");
    if (steps < 1) throw UsageError("--steps must be >= 1");
    if (name == "ref6x3") {
        if (steps != 1) throw UsageError("ref6x3 is single-step");
        const auto r = evoc::global_optimum_enumerate(evoc::Ref6x3{}, 6);
        std::cout << fmt::format("max={:g} optima_count={}\n", r.max, r.count);
    } else {
        std::cout << fmt::format("max={:g}\n", evoc::chain_optimum_dp(steps, beta));
    }
    return kExitOk;
}

int cmd_plot(const std::string& in_path, const std::string& out_path, const std::string& columns_flag) {
    std::ifstream in(in_path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + in_path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();

    std::vector<std::string> columns;
    std::istringstream cs(columns_flag);
    for (std::string c; std::getline(cs, c, ',');)
        if (!c.empty()) columns.push_back(c);

    std::string svg;
    try {
        svg = evoc::render_svg(evoc::parse_csv(ss.str()), columns);
    } catch (const evoc::PlotError& e) {
        throw UsageError(e.what());
    }
    write_file(out_path, svg);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Agent-based simulator of cultural evolution by invention and imitation"};
    app.require_subcommand(1);

    std::string config_path, out_dir, in_path, columns, fitness_name;
    std::optional<std::uint64_t> seed;
    std::optional<int> replicates;
    int steps = 1;
    double beta = 2.0;

    auto* run = app.add_subcommand("run", "Single run; writes timeseries.csv and run_meta.json");
    run->add_option("--config", config_path, "JSON config file")->required();
    run->add_option("--seed", seed, "Override the config seed");
    run->add_option("--out", out_dir, "Output directory");

    auto* sweep = app.add_subcommand("sweep", "(C, p) grid sweep; writes sweep.csv");
    sweep->add_option("--config", config_path, "JSON config file with a sweep block")->required();
    sweep->add_option("--out", out_dir, "Output directory");

    auto* sr = app.add_subcommand("sr-compare", "Paired runs with and without social regulation");
    sr->add_option("--config", config_path, "JSON config file with an sr_compare block")->required();
    sr->add_option("--replicates", replicates, "Number of paired seeds");
    sr->add_option("--out", out_dir, "Output directory");

    auto* oracle = app.add_subcommand("oracle", "Global optimum of a fitness landscape");
    oracle->add_option("--fitness", fitness_name, "ref6x3 or chain6x3")->required();
    oracle->add_option("--steps", steps, "Steps per action (chain6x3)");
    oracle->add_option("--beta", beta, "Alternation weight (chain6x3)");

    auto* plot = app.add_subcommand("plot", "Render CSV columns as an SVG line chart");
    plot->add_option("--in", in_path, "Input CSV")->required();
    plot->add_option("--out", out_dir, "Output SVG path")->required();
    plot->add_option("--columns", columns, "Comma-separated column names")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*run) return cmd_run(config_path, seed, out_dir);
        if (*sweep) return cmd_sweep(config_path, out_dir);
        if (*sr) return cmd_sr_compare(config_path, replicates, out_dir);
        if (*oracle) return cmd_oracle(fitness_name, steps, beta);
        if (*plot) return cmd_plot(in_path, out_dir, columns);
    } catch (const evoc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const evoc::ConfigReadError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitUsage;
}
