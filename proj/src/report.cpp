#include "evoc/report.hpp"

#include <fmt/format.h>

namespace evoc {

std::string format_real(double v) {
    auto s = fmt::format("{:.6f}", v);
    if (s == "-0.000000") s = "0.000000"; // negative zero and tiny negatives
    return s;
}

void write_timeseries_csv(std::ostream& out, const std::vector<IterationMetrics>& series) {
    out << kTimeseriesHeader << '\n';
    for (const auto& m : series) {
        out << m.iteration << ',' << format_real(m.mean_fitness) << ',' << format_real(m.max_fitness) << ','
            << m.diversity << ',' << format_real(m.mean_p_invent) << ',' << format_real(m.frac_p_low) << ','
            << format_real(m.frac_p_high) << '\n';
    }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells) {
    out << kSweepHeader << '\n';
    for (const auto& c : cells) {
        const auto& s = c.summary;
        out << format_real(c.C) << ',' << format_real(c.p) << ',' << s.replicates << ','
            << format_real(s.final_fitness.mean) << ',' << format_real(s.final_fitness.standard_error()) << ','
            << format_real(s.reached_fraction()) << ','
            << (s.reached == 0 ? std::string("NA") : format_real(s.time_to_threshold.mean)) << ','
            << format_real(s.peak_diversity.mean) << ',' << format_real(s.peak_iteration.mean) << '\n';
    }
}

void write_sr_pairs_csv(std::ostream& out, const std::vector<PairedSRResult>& pairs) {
    out << kSRPairsHeader << '\n';
    for (const auto& p : pairs) {
        out << p.seed << ',' << format_real(p.final_mean_fitness_sr) << ',' << format_real(p.final_mean_fitness_nosr)
            << ',' << format_real(p.final_mean_fitness_sr - p.final_mean_fitness_nosr) << ',' << p.peak_div_sr << ','
            << p.peak_div_nosr << ',' << p.peak_iter_sr << ',' << p.peak_iter_nosr << ','
            << format_real(p.final_seg_index_sr) << '\n';
    }
}

void write_sr_summary_csv(std::ostream& out, const SRSummary& s) {
    out << kSRSummaryHeader << '\n';
    out << s.pairs << ',' << format_real(s.win_rate) << ',' << format_real(s.mean_fitness_diff) << ','
        << format_real(s.mean_peak_iter_sr) << ',' << format_real(s.mean_peak_iter_nosr) << ','
        << format_real(s.mean_peak_iter_diff()) << ',' << format_real(s.mean_peak_div_sr) << ','
        << format_real(s.mean_peak_div_nosr) << ',' << format_real(s.mean_peak_div_diff()) << ','
        << format_real(s.mean_final_seg_sr) << '\n';
}

} // namespace evoc
