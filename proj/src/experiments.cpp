#include "evoc/experiments.hpp"
#include "evoc/dynamics.hpp"
#include "evoc/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace evoc {

int env_thread_cap() {
    const char* raw = std::getenv("EVOC_THREADS");
    if (raw == nullptr || *raw == '\0') return 0;
    char* end = nullptr;
    long v = std::strtol(raw, &end, 10);
    if (*end != '\0' || v <= 0) return 0;
    return static_cast<int>(std::min<long>(v, 1024));
}

double SampleStats::standard_error() const { return n == 0 ? 0.0 : std / std::sqrt(static_cast<double>(n)); }

SampleStats stats_mean_std_ci(std::span<const double> values) {
    SampleStats s;
    s.n = values.size();
    if (s.n == 0) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(s.n);
    if (s.n > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.std = std::sqrt(ss / static_cast<double>(s.n - 1));
    }
    s.ci95 = 1.96 * s.std / std::sqrt(static_cast<double>(s.n));
    return s;
}

RunResult run_sim(const SimConfig& config, std::uint64_t seed) {
    validate(config);
    const auto fitness = make_fitness(config);
    Rng rng(seed);
    WorldState world = new_world(config, *fitness, rng);

    RunResult result;
    result.config = config;
    result.seed = seed;
    result.series.reserve(static_cast<std::size_t>(config.iterations) + 1);
    result.series.push_back(measure(world));
    for (int i = 0; i < config.iterations; ++i) result.series.push_back(step(world, config, *fitness, rng));
    return result;
}

std::vector<RunResult> run_batch(const std::vector<SimConfig>& configs, const std::vector<std::uint64_t>& seeds,
                                 const Execution& exec) {
    if (configs.size() != seeds.size()) throw std::invalid_argument("run_batch: configs and seeds differ in length");
    for (const auto& c : configs) validate(c);

    const auto jobs = static_cast<std::ptrdiff_t>(seeds.size());
    std::vector<RunResult> results(seeds.size());

    if (!exec.parallel) {
        for (std::ptrdiff_t j = 0; j < jobs; ++j) results[j] = run_sim(configs[j], seeds[j]);
        return results;
    }

#ifdef _OPENMP
    int threads = exec.threads > 0 ? exec.threads : env_thread_cap();
    if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::ptrdiff_t j = 0; j < jobs; ++j) results[j] = run_sim(configs[j], seeds[j]);
#else
    for (std::ptrdiff_t j = 0; j < jobs; ++j) results[j] = run_sim(configs[j], seeds[j]);
#endif
    return results;
}

ReplicateAggregate aggregate_runs(std::vector<RunResult> runs, double f_max) {
    if (runs.empty()) throw std::invalid_argument("aggregate_runs: no runs");
    std::stable_sort(runs.begin(), runs.end(), [](const RunResult& a, const RunResult& b) { return a.seed < b.seed; });

    ReplicateAggregate agg;
    const std::size_t n = runs.size();
    const std::size_t len = runs.front().series.size();
    for (const auto& r : runs) {
        if (r.series.size() != len) throw std::invalid_argument("aggregate_runs: series lengths differ");
        agg.seeds.push_back(r.seed);
    }

    std::vector<double> a(n), b(n), c(n), d(n);
    agg.curve.reserve(len);
    for (std::size_t t = 0; t < len; ++t) {
        for (std::size_t k = 0; k < n; ++k) {
            const auto& m = runs[k].series[t];
            a[k] = m.mean_fitness;
            b[k] = m.diversity;
            c[k] = m.mean_p_invent;
            d[k] = m.frac_p_low + m.frac_p_high;
        }
        agg.curve.push_back({runs.front().series[t].iteration, stats_mean_std_ci(a), stats_mean_std_ci(b),
                             stats_mean_std_ci(c), stats_mean_std_ci(d)});
    }

    const auto& config = runs.front().config;
    std::vector<double> final_fit(n), final_div(n), peak_div(n), peak_iter(n), times, censored(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& s = runs[k].series;
        final_fit[k] = s.back().mean_fitness;
        final_div[k] = s.back().diversity;
        const auto peak = peak_diversity(s);
        peak_div[k] = peak.value;
        peak_iter[k] = peak.iteration;
        if (auto t = time_to_threshold(s, config.threshold_fraction, f_max)) {
            times.push_back(*t);
            censored[k] = *t;
        } else {
            censored[k] = s.back().iteration + 1;
        }
    }

    auto& sum = agg.summary;
    sum.replicates = n;
    sum.final_fitness = stats_mean_std_ci(final_fit);
    sum.final_diversity = stats_mean_std_ci(final_div);
    sum.peak_diversity = stats_mean_std_ci(peak_div);
    sum.peak_iteration = stats_mean_std_ci(peak_iter);
    sum.time_to_threshold = stats_mean_std_ci(times);
    sum.reached = times.size();
    sum.censored_mean_time = stats_mean_std_ci(censored).mean;
    return agg;
}

ReplicateAggregate run_replicates(const SimConfig& config, const std::vector<std::uint64_t>& seeds,
                                  const Execution& exec) {
    if (seeds.empty()) throw std::invalid_argument("run_replicates: need at least one seed");
    std::vector<SimConfig> configs(seeds.size(), config);
    return aggregate_runs(run_batch(configs, seeds, exec), make_fitness(config)->max_fitness());
}

std::uint64_t sweep_seed(std::uint64_t base_seed, std::size_t c_index, std::size_t p_index, std::size_t replicate) {
    return derive_seed(base_seed, {c_index, p_index, replicate});
}

std::vector<SweepCell> sweep(const SimConfig& base, std::span<const double> c_grid, std::span<const double> p_grid,
                             int replicates, const Execution& exec) {
    if (c_grid.empty() || p_grid.empty()) throw std::invalid_argument("sweep: grids must be non-empty");
    if (replicates < 1) throw std::invalid_argument("sweep: replicates must be >= 1");

    const auto reps = static_cast<std::size_t>(replicates);
    std::vector<SimConfig> configs;
    std::vector<std::uint64_t> seeds;
    for (std::size_t ci = 0; ci < c_grid.size(); ++ci) {
        for (std::size_t pi = 0; pi < p_grid.size(); ++pi) {
            SimConfig cell = base;
            cell.creator_fraction = c_grid[ci];
            cell.creator_p_invent = p_grid[pi];
            for (std::size_t r = 0; r < reps; ++r) {
                configs.push_back(cell);
                seeds.push_back(sweep_seed(base.seed, ci, pi, r));
            }
        }
    }

    auto runs = run_batch(configs, seeds, exec);
    const double f_max = make_fitness(base)->max_fitness();

    std::vector<SweepCell> cells;
    cells.reserve(c_grid.size() * p_grid.size());
    for (std::size_t cell = 0; cell * reps < runs.size(); ++cell) {
        std::vector<RunResult> group(std::make_move_iterator(runs.begin() + static_cast<std::ptrdiff_t>(cell * reps)),
                                     std::make_move_iterator(runs.begin() + static_cast<std::ptrdiff_t>((cell + 1) * reps)));
        const double C = group.front().config.creator_fraction;
        const double p = group.front().config.creator_p_invent;
        cells.push_back({C, p, aggregate_runs(std::move(group), f_max).summary});
    }
    return cells;
}

std::vector<SweepCell> homogeneous_ratio_experiment(const SimConfig& base, std::span<const double> p_grid,
                                                    int replicates, const Execution& exec) {
    const double all_creators[] = {1.0};
    return sweep(base, all_creators, p_grid, replicates, exec);
}

std::uint64_t sr_seed(std::uint64_t base_seed, std::size_t replicate) { return derive_seed(base_seed, {replicate}); }

std::pair<SimConfig, SimConfig> sr_arms(const SimConfig& base, double p_initial) {
    SimConfig sr = base;
    sr.creator_fraction = 1.0;
    sr.creator_p_invent = p_initial;
    sr.sr_enabled = true;
    SimConfig control = sr;
    control.sr_enabled = false;
    return {sr, control};
}

SRComparison sr_compare(const SimConfig& base, double p_initial, std::span<const std::uint64_t> seeds,
                        const Execution& exec) {
    if (seeds.empty()) throw std::invalid_argument("sr_compare: need at least one seed");
    const auto [sr_config, control_config] = sr_arms(base, p_initial);

    std::vector<SimConfig> configs;
    std::vector<std::uint64_t> all_seeds;
    for (auto s : seeds) {
        configs.push_back(sr_config);
        all_seeds.push_back(s);
        configs.push_back(control_config);
        all_seeds.push_back(s);
    }
    const auto runs = run_batch(configs, all_seeds, exec);

    SRComparison out;
    std::size_t wins = 0;
    std::vector<double> diff, it_sr, it_no, pk_sr, pk_no, seg_fin, seg_init;
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        const auto& sr = runs[2 * k].series;
        const auto& no = runs[2 * k + 1].series;
        PairedSRResult row;
        row.seed = seeds[k];
        row.final_mean_fitness_sr = sr.back().mean_fitness;
        row.final_mean_fitness_nosr = no.back().mean_fitness;
        const auto ps = peak_diversity(sr);
        const auto pn = peak_diversity(no);
        row.peak_div_sr = ps.value;
        row.peak_div_nosr = pn.value;
        row.peak_iter_sr = ps.iteration;
        row.peak_iter_nosr = pn.iteration;
        row.final_seg_index_sr = sr.back().frac_p_low + sr.back().frac_p_high;
        row.initial_seg_index_sr = sr.front().frac_p_low + sr.front().frac_p_high;
        out.pairs.push_back(row);

        if (row.final_mean_fitness_sr > row.final_mean_fitness_nosr) ++wins;
        diff.push_back(row.final_mean_fitness_sr - row.final_mean_fitness_nosr);
        it_sr.push_back(row.peak_iter_sr);
        it_no.push_back(row.peak_iter_nosr);
        pk_sr.push_back(row.peak_div_sr);
        pk_no.push_back(row.peak_div_nosr);
        seg_fin.push_back(row.final_seg_index_sr);
        seg_init.push_back(row.initial_seg_index_sr);
    }

    auto& s = out.summary;
    s.pairs = seeds.size();
    s.win_rate = static_cast<double>(wins) / static_cast<double>(seeds.size());
    s.mean_fitness_diff = stats_mean_std_ci(diff).mean;
    s.mean_peak_iter_sr = stats_mean_std_ci(it_sr).mean;
    s.mean_peak_iter_nosr = stats_mean_std_ci(it_no).mean;
    s.mean_peak_div_sr = stats_mean_std_ci(pk_sr).mean;
    s.mean_peak_div_nosr = stats_mean_std_ci(pk_no).mean;
    s.mean_final_seg_sr = stats_mean_std_ci(seg_fin).mean;
    s.mean_initial_seg_sr = stats_mean_std_ci(seg_init).mean;
    return out;
}

SRComparison sr_compare(const SimConfig& base, double p_initial, int replicates, const Execution& exec) {
    if (replicates < 1) throw std::invalid_argument("sr_compare: replicates must be >= 1");
    std::vector<std::uint64_t> seeds;
    for (int r = 0; r < replicates; ++r) seeds.push_back(sr_seed(base.seed, static_cast<std::size_t>(r)));
    return sr_compare(base, p_initial, seeds, exec);
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

} // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("spearman: need two equal-length samples");
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / static_cast<double>(rx.size());
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / static_cast<double>(ry.size());
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

} // namespace evoc
