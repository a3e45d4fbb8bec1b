#pragma once

#include "evoc/experiments.hpp"
#include "evoc/metrics.hpp"

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace evoc {

inline constexpr std::string_view kTimeseriesHeader =
    "iteration,mean_fitness,max_fitness,diversity,mean_p_invent,frac_p_low,frac_p_high";
inline constexpr std::string_view kSweepHeader =
    "C,p,replicates,mean_final_fitness,stderr_final_fitness,reached_fraction,mean_time_to_threshold,"
    "mean_peak_diversity,mean_peak_iteration";
inline constexpr std::string_view kSRPairsHeader =
    "seed,final_mean_fitness_sr,final_mean_fitness_nosr,fitness_diff,peak_div_sr,peak_div_nosr,peak_iter_sr,"
    "peak_iter_nosr,final_seg_index_sr";
inline constexpr std::string_view kSRSummaryHeader =
    "pairs,win_rate,mean_fitness_diff,mean_peak_iter_sr,mean_peak_iter_nosr,mean_peak_iter_diff,mean_peak_div_sr,"
    "mean_peak_div_nosr,mean_peak_div_diff,mean_final_seg_index_sr";

/// Fixed six decimals, '.' separator, independent of the global locale.
std::string format_real(double v);

// CSV writers; every line ends in '\n'.
void write_timeseries_csv(std::ostream& out, const std::vector<IterationMetrics>& series);
/// A cell where no replicate reached the threshold writes NA for the mean time.
void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells);
void write_sr_pairs_csv(std::ostream& out, const std::vector<PairedSRResult>& pairs);
void write_sr_summary_csv(std::ostream& out, const SRSummary& summary);

} // namespace evoc
