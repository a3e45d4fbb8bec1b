#pragma once

#include "evoc/core.hpp"
#include "evoc/metrics.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace evoc {

/// How a batch of independent runs is scheduled.
struct Execution {
    bool parallel = true;
    /// Worker cap; 0 means EVOC_THREADS if set, else the OpenMP default.
    int threads = 0;

    static Execution serial() { return {false, 1}; }
};

/// EVOC_THREADS when set to a positive integer, otherwise 0.
int env_thread_cap();

struct SampleStats {
    double mean = 0.0;
    double std = 0.0;
    double ci95 = 0.0;
    std::size_t n = 0;

    double standard_error() const;

    friend bool operator==(const SampleStats&, const SampleStats&) = default;
};

/// Mean, sample standard deviation (n - 1) and 1.96 * std / sqrt(n).
SampleStats stats_mean_std_ci(std::span<const double> values);

RunResult run_sim(const SimConfig& config, std::uint64_t seed);

/// Runs every seed independently; results come back in input order.
std::vector<RunResult> run_batch(const std::vector<SimConfig>& configs, const std::vector<std::uint64_t>& seeds,
                                 const Execution& exec = {});

struct CurvePoint {
    int iteration = 0;
    SampleStats mean_fitness;
    SampleStats diversity;
    SampleStats mean_p_invent;
    SampleStats segregation;

    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

struct ReplicateSummary {
    std::size_t replicates = 0;
    SampleStats final_fitness;
    SampleStats final_diversity;
    SampleStats peak_diversity;
    SampleStats peak_iteration;
    /// Over runs that reached the threshold only.
    SampleStats time_to_threshold;
    std::size_t reached = 0;
    /// Runs that never reach the threshold count as iterations + 1.
    double censored_mean_time = 0.0;

    double reached_fraction() const {
        return replicates == 0 ? 0.0 : static_cast<double>(reached) / static_cast<double>(replicates);
    }

    friend bool operator==(const ReplicateSummary&, const ReplicateSummary&) = default;
};

struct ReplicateAggregate {
    /// Seeds in ascending order; aggregation follows this order.
    std::vector<std::uint64_t> seeds;
    std::vector<CurvePoint> curve;
    ReplicateSummary summary;

    friend bool operator==(const ReplicateAggregate&, const ReplicateAggregate&) = default;
};

/// Summarises finished runs of one configuration. Order-insensitive: runs are sorted by seed first.
ReplicateAggregate aggregate_runs(std::vector<RunResult> runs, double f_max);

ReplicateAggregate run_replicates(const SimConfig& config, const std::vector<std::uint64_t>& seeds,
                                  const Execution& exec = {});

struct SweepCell {
    double C = 0.0;
    double p = 0.0;
    ReplicateSummary summary;

    friend bool operator==(const SweepCell&, const SweepCell&) = default;
};

std::uint64_t sweep_seed(std::uint64_t base_seed, std::size_t c_index, std::size_t p_index, std::size_t replicate);

/// One cell per (C, p), row-major in C. Results do not depend on `exec`.
std::vector<SweepCell> sweep(const SimConfig& base, std::span<const double> c_grid, std::span<const double> p_grid,
                             int replicates, const Execution& exec = {});

/// Sweep over p with every agent a creator.
std::vector<SweepCell> homogeneous_ratio_experiment(const SimConfig& base, std::span<const double> p_grid,
                                                    int replicates, const Execution& exec = {});

struct PairedSRResult {
    std::uint64_t seed = 0;
    double final_mean_fitness_sr = 0.0;
    double final_mean_fitness_nosr = 0.0;
    int peak_div_sr = 0;
    int peak_div_nosr = 0;
    int peak_iter_sr = 0;
    int peak_iter_nosr = 0;
    double final_seg_index_sr = 0.0;
    double initial_seg_index_sr = 0.0;

    friend bool operator==(const PairedSRResult&, const PairedSRResult&) = default;
};

struct SRSummary {
    std::size_t pairs = 0;
    double win_rate = 0.0;
    double mean_fitness_diff = 0.0;
    double mean_peak_iter_sr = 0.0;
    double mean_peak_iter_nosr = 0.0;
    double mean_peak_div_sr = 0.0;
    double mean_peak_div_nosr = 0.0;
    double mean_final_seg_sr = 0.0;
    double mean_initial_seg_sr = 0.0;

    double mean_peak_iter_diff() const { return mean_peak_iter_sr - mean_peak_iter_nosr; }
    double mean_peak_div_diff() const { return mean_peak_div_sr - mean_peak_div_nosr; }

    friend bool operator==(const SRSummary&, const SRSummary&) = default;
};

struct SRComparison {
    std::vector<PairedSRResult> pairs;
    SRSummary summary;
};

std::uint64_t sr_seed(std::uint64_t base_seed, std::size_t replicate);

/// Both arms start every agent at p_initial; only the SR arm adapts.
std::pair<SimConfig, SimConfig> sr_arms(const SimConfig& base, double p_initial);

SRComparison sr_compare(const SimConfig& base, double p_initial, std::span<const std::uint64_t> seeds,
                        const Execution& exec = {});
SRComparison sr_compare(const SimConfig& base, double p_initial, int replicates, const Execution& exec = {});

/// Spearman rank correlation with average ranks for ties; 0 when either side is constant.
double spearman(std::span<const double> x, std::span<const double> y);

} // namespace evoc
