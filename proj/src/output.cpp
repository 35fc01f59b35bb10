#include "pqw/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include "json.hpp"
#include <ostream>
#include <sstream>

#include "pqw/format.hpp"

namespace pqw {

void write_metadata(std::ostream& os, const Metadata& metadata) {
    for (const auto& [key, value] : metadata) os << "# " << key << ": " << value << '\n';
}

void write_series_csv(std::ostream& os, const Metadata& metadata, const ObservableSeries& series) {
    write_metadata(os, metadata);
    os << "t,expected_position,delta_p,entropy\n";
    for (const auto& r : series.rows()) {
        os << r.step << ',' << format_double(r.expected_position) << ',' << format_double(r.delta_p) << ','
           << format_double(r.entropy) << '\n';
    }
}

void write_series_json(std::ostream& os, const Metadata& metadata, const ObservableSeries& series) {
    nlohmann::ordered_json doc;
    doc["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : metadata) doc["metadata"][key] = value;
    auto& rows = doc["series"] = nlohmann::ordered_json::array();
    for (const auto& r : series.rows()) {
        rows.push_back({{"t", r.step},
                        {"expected_position", r.expected_position},
                        {"delta_p", r.delta_p},
                        {"entropy", r.entropy}});
    }
    os << doc.dump(2) << '\n';
}

void write_sweep_csv(std::ostream& os, const Metadata& metadata, const std::vector<SweepResult>& panels) {
    write_metadata(os, metadata);
    for (const auto& p : panels) {
        for (const auto& [key, value] : p.metadata) {
            if (key == "tool_version" || key == "preset" || key == "panel") continue;
            os << "# panel." << p.spec.label << '.' << key << ": " << value << '\n';
        }
    }
    if (panels.empty()) return;
    const SweepSpec& first = panels.front().spec;
    const bool two_axes = first.axes.size() > 1;
    const bool series = first.record == RecordMode::full_series;
    os << "panel,axis1,value1";
    if (two_axes) os << ",axis2,value2";
    if (series) os << ",step";
    os << ",expected_position,delta_p,entropy\n";
    for (const auto& p : panels) {
        const std::string axis1(to_string(p.spec.axes[0].name()));
        const std::string axis2 = p.spec.axes.size() > 1 ? std::string(to_string(p.spec.axes[1].name())) : "";
        for (const auto& r : p.rows) {
            os << p.spec.label << ',' << axis1 << ',' << format_double(r.value1);
            if (two_axes) os << ',' << axis2 << ',' << format_double(r.value2);
            if (series) os << ',' << r.step;
            os << ',' << format_double(r.expected_position) << ',' << format_double(r.delta_p) << ','
               << format_double(r.entropy) << '\n';
        }
    }
}

void write_classical_csv(std::ostream& os, const Metadata& metadata, const classical::ClassicalTrajectory& traj) {
    write_metadata(os, metadata);
    os << "step,mean_capital,stderr\n";
    for (std::size_t t = 0; t < traj.mean_capital.size(); ++t) {
        os << (t + 1) << ',' << format_double(traj.mean_capital[t]) << ',' << format_double(traj.stderr_capital[t])
           << '\n';
    }
}

Grid2D expectation_grid(const SweepResult& result, bool index_coordinates) {
    const SweepSpec& spec = result.spec;
    const std::size_t n1 = spec.axes[0].points();
    Grid2D g;
    for (std::size_t i = 0; i < n1; ++i) {
        g.xs.push_back(index_coordinates ? static_cast<double>(i) : spec.axes[0].value(i));
    }
    std::size_t ny = 1;
    if (spec.axes.size() > 1) {
        ny = spec.axes[1].points();
        for (std::size_t j = 0; j < ny; ++j) {
            g.ys.push_back(index_coordinates ? static_cast<double>(j) : spec.axes[1].value(j));
        }
    } else if (spec.record == RecordMode::full_series) {
        ny = static_cast<std::size_t>(spec.steps);
        for (std::size_t j = 0; j < ny; ++j) g.ys.push_back(index_coordinates ? static_cast<double>(j) : static_cast<double>(j + 1));
    } else {
        g.ys.push_back(0.0);
    }
    g.values.assign(n1 * ny, 0.0);
    // Rows are ordered (index1, index2, step); exactly one of index2 / step varies.
    for (std::size_t k = 0; k < result.rows.size(); ++k) {
        const SweepRow& r = result.rows[k];
        const std::size_t j = spec.axes.size() > 1 ? r.index2 : (ny > 1 ? static_cast<std::size_t>(r.step - 1) : 0);
        g.values[j * n1 + r.index1] = r.expected_position;
    }
    return g;
}

namespace {

constexpr int kCell = 4;
constexpr int kMargin = 40;
constexpr int kGap = 30;

std::string fixed(double v, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

// Diverging blue (negative) - white (zero) - red (positive).
std::string diverging_color(double v, double scale) {
    double t = scale > 0.0 ? std::clamp(v / scale, -1.0, 1.0) : 0.0;
    const int end_neg[3] = {33, 102, 172};
    const int end_pos[3] = {178, 24, 43};
    const int* end = t < 0.0 ? end_neg : end_pos;
    t = std::abs(t);
    char buf[8];
    int rgb[3];
    for (int c = 0; c < 3; ++c) rgb[c] = static_cast<int>(std::lround(255.0 + t * (end[c] - 255.0)));
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
    return buf;
}

}  // namespace

std::string render_heatmap_svg(const std::string& title, const std::vector<SweepResult>& panels) {
    std::vector<Grid2D> grids;
    int width = kMargin;
    int height = 0;
    for (const auto& p : panels) {
        grids.push_back(expectation_grid(p, true));
        width += static_cast<int>(grids.back().xs.size()) * kCell + kGap;
        height = std::max(height, static_cast<int>(grids.back().ys.size()) * kCell);
    }
    width += kMargin - kGap;
    height += 2 * kMargin;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    svg << "<text x=\"" << kMargin << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";

    int x0 = kMargin;
    for (std::size_t k = 0; k < panels.size(); ++k) {
        const Grid2D& g = grids[k];
        const std::size_t nx = g.xs.size();
        const std::size_t ny = g.ys.size();
        double scale = 0.0;
        for (double v : g.values) scale = std::max(scale, std::abs(v));
        const int top = kMargin;
        const int panel_h = static_cast<int>(ny) * kCell;

        svg << "<g id=\"panel-" << panels[k].spec.label << "\">\n";
        svg << "<text x=\"" << x0 << "\" y=\"" << (top - 6) << "\" font-family=\"sans-serif\" font-size=\"11\">"
            << panels[k].spec.label << " (|E[x]| max " << fixed(scale) << ")</text>\n";
        // y grows upward: grid row j is drawn at the bottom for j = 0
        for (std::size_t j = 0; j < ny; ++j) {
            for (std::size_t i = 0; i < nx; ++i) {
                svg << "<rect x=\"" << (x0 + static_cast<int>(i) * kCell) << "\" y=\""
                    << (top + panel_h - static_cast<int>(j + 1) * kCell) << "\" width=\"" << kCell << "\" height=\""
                    << kCell << "\" fill=\"" << diverging_color(g.at(i, j), scale) << "\"/>\n";
            }
        }
        for (const auto& line : zero_contour(g)) {
            svg << "<polyline fill=\"none\" stroke=\"#d00000\" stroke-width=\"1\" points=\"";
            for (std::size_t p = 0; p < line.points.size(); ++p) {
                const double px = x0 + (line.points[p].x + 0.5) * kCell;
                const double py = top + panel_h - (line.points[p].y + 0.5) * kCell;
                svg << (p ? " " : "") << fixed(px) << ',' << fixed(py);
            }
            svg << "\"/>\n";
        }
        const SweepSpec& spec = panels[k].spec;
        const std::string y_label = spec.axes.size() > 1 ? std::string(to_string(spec.axes[1].name()))
                                    : spec.record == RecordMode::full_series ? "step"
                                                                             : "";
        svg << "<text x=\"" << x0 << "\" y=\"" << (top + panel_h + 14)
            << "\" font-family=\"sans-serif\" font-size=\"10\">x: " << to_string(spec.axes[0].name())
            << (y_label.empty() ? "" : ", y: " + y_label) << "</text>\n";
        svg << "</g>\n";
        x0 += static_cast<int>(nx) * kCell + kGap;
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace pqw
