#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pqw/classical.hpp"
#include "pqw/contour.hpp"
#include "pqw/observables.hpp"
#include "pqw/sweep.hpp"

namespace pqw {

/// "# key: value" lines.
void write_metadata(std::ostream& os, const Metadata& metadata);

/// Columns t, expected_position, delta_p, entropy.
void write_series_csv(std::ostream& os, const Metadata& metadata, const ObservableSeries& series);
void write_series_json(std::ostream& os, const Metadata& metadata, const ObservableSeries& series);

/// Long-format table for all panels of a sweep. Columns: panel, axis1, value1,
/// [axis2, value2,] [step,] expected_position, delta_p, entropy. Each panel's
/// own metadata is echoed as "# panel.<label>.<key>: value" lines.
void write_sweep_csv(std::ostream& os, const Metadata& metadata, const std::vector<SweepResult>& panels);

/// Columns step, mean_capital, stderr.
void write_classical_csv(std::ostream& os, const Metadata& metadata, const classical::ClassicalTrajectory& traj);

/// E[x] laid out for plotting: x = axis 1, y = axis 2 for two-axis sweeps,
/// y = step for full-series sweeps, a single row otherwise. When
/// `index_coordinates` is set the coordinates are grid indices instead of
/// axis values.
Grid2D expectation_grid(const SweepResult& result, bool index_coordinates = false);

/// Heatmaps of E[x] side by side, one per panel, with fixed-size cells, a
/// blue-white-red scale centred at zero and the zero contour overlaid.
std::string render_heatmap_svg(const std::string& title, const std::vector<SweepResult>& panels);

}  // namespace pqw
