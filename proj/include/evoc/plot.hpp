#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace evoc {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Column index by name, or -1.
    int column(const std::string& name) const;
};

/// Bad plot input: missing column, too few points, non-numeric cell.
class PlotError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numeric CSV with a header line. NA cells become NaN.
CsvTable parse_csv(const std::string& text);

/**
 * Standalone SVG with one polyline per column against the first column
 * ("iteration" when present), linear axes fitted to the data, and a legend.
 */
std::string render_svg(const CsvTable& table, const std::vector<std::string>& columns);

} // namespace evoc
