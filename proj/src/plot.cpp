#include "evoc/plot.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace evoc {

int CsvTable::column(const std::string& name) const {
    auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_cell(const std::string& s) {
    if (s.empty() || s == "NA") return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw PlotError("non-numeric cell '" + s + "'");
    return v;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                              "#9467bd", "#8c564b", "#e377c2", "#17becf"};

} // namespace

CsvTable parse_csv(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split(line);
        if (first) {
            t.header = std::move(cells);
            first = false;
            continue;
        }
        if (cells.size() != t.header.size()) throw PlotError("row has " + std::to_string(cells.size()) +
                                                             " cells, header has " + std::to_string(t.header.size()));
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(parse_cell(c));
        t.rows.push_back(std::move(row));
    }
    if (t.header.empty()) throw PlotError("empty CSV");
    return t;
}

std::string render_svg(const CsvTable& table, const std::vector<std::string>& columns) {
    if (columns.empty()) throw PlotError("no columns requested");
    if (table.rows.size() < 2) throw PlotError("need >= 2 points");

    std::vector<int> idx;
    for (const auto& c : columns) {
        int i = table.column(c);
        if (i < 0) throw PlotError("missing column '" + c + "'");
        idx.push_back(i);
    }
    const int xcol = std::max(table.column("iteration"), 0);

    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& r : table.rows) {
        if (std::isfinite(r[xcol])) {
            xmin = std::min(xmin, r[xcol]);
            xmax = std::max(xmax, r[xcol]);
        }
        for (int i : idx) {
            if (!std::isfinite(r[i])) continue;
            ymin = std::min(ymin, r[i]);
            ymax = std::max(ymax, r[i]);
        }
    }
    if (!std::isfinite(xmin) || !std::isfinite(ymin)) throw PlotError("no finite data to plot");
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;

    constexpr double width = 800, height = 480, left = 70, right = 180, top = 30, bottom = 50;
    const double pw = width - left - right, ph = height - top - bottom;
    auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return top + ph - (y - ymin) / (ymax - ymin) * ph; };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
                       width, height, width, height);
    svg += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += fmt::format("<g stroke=\"black\" stroke-width=\"1\"><line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" "
                       "y2=\"{1:.2f}\"/><line x1=\"{0:.2f}\" y1=\"{3:.2f}\" x2=\"{0:.2f}\" y2=\"{1:.2f}\"/></g>\n",
                       left, top + ph, left + pw, top);

    svg += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int k = 0; k <= 4; ++k) {
        const double fx = xmin + (xmax - xmin) * k / 4.0;
        const double fy = ymin + (ymax - ymin) * k / 4.0;
        svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{:g}</text>\n", sx(fx),
                           top + ph + 16, fx);
        svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:.4g}</text>\n", left - 6,
                           sy(fy) + 4, fy);
    }
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", left + pw / 2,
                       height - 12, xml_escape(table.header[static_cast<std::size_t>(xcol)]));
    svg += "</g>\n";

    for (std::size_t c = 0; c < idx.size(); ++c) {
        const char* colour = kPalette[c % kPalette.size()];
        std::string points;
        for (const auto& r : table.rows) {
            if (!std::isfinite(r[xcol]) || !std::isfinite(r[idx[c]])) continue;
            if (!points.empty()) points += ' ';
            points += fmt::format("{:.2f},{:.2f}", sx(r[xcol]), sy(r[idx[c]]));
        }
        svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", colour,
                           points);
        const double ly = top + 10 + 18.0 * static_cast<double>(c);
        svg += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"{3}\" "
                           "stroke-width=\"2\"/>\n",
                           left + pw + 15, ly, left + pw + 40, colour);
        svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
                           left + pw + 46, ly + 4, xml_escape(columns[c]));
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace evoc
