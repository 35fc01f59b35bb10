#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pqw/walk.hpp"

namespace pqw {

enum class AxisName { phi, theta, varphi, alpha_a, beta_a, gamma_a, alpha_b, beta_b, gamma_b };

std::string_view to_string(AxisName name);
AxisName parse_axis_name(std::string_view text);

/// One scanned parameter. Uniform axes use inclusive endpoints:
/// value(i) = start + i·(stop - start)/(points - 1).
class SweepAxis {
public:
    static SweepAxis uniform(AxisName name, double start, double stop, std::int64_t points);
    /// Explicit, strictly increasing values.
    static SweepAxis list(AxisName name, std::vector<double> values);

    AxisName name() const { return name_; }
    bool is_uniform() const { return uniform_; }
    std::size_t points() const { return uniform_ ? static_cast<std::size_t>(points_) : values_.size(); }
    double value(std::size_t i) const;

    /// e.g. "phi=uniform[0,6.283185307179586]x128" or "phi=list{0,0.785}"
    std::string describe() const;

private:
    SweepAxis() = default;

    AxisName name_ = AxisName::phi;
    bool uniform_ = true;
    double start_ = 0.0;
    double stop_ = 0.0;
    std::int64_t points_ = 0;
    std::vector<double> values_;
};

enum class RecordMode { final_only, full_series };

std::string_view to_string(RecordMode mode);

struct SweepSpec {
    std::string label;  // panel name inside a preset, e.g. "ABB" or "coin-a"
    GameSpec game;
    InitialCoin initial;
    std::int64_t steps = 0;
    std::vector<SweepAxis> axes;
    RecordMode record = RecordMode::final_only;

    void validate() const;
    std::size_t grid_points() const;
    std::size_t rows_per_point() const { return record == RecordMode::full_series ? static_cast<std::size_t>(steps) : 1; }
};

/// Writes `value` into whichever field of the game or initial coin the axis names.
void apply_axis_value(AxisName name, double value, GameSpec& game, InitialCoin& initial);

struct SweepRow {
    std::size_t index1 = 0;
    std::size_t index2 = 0;
    double value1 = 0.0;
    double value2 = 0.0;
    std::int64_t step = 0;
    double expected_position = 0.0;
    double delta_p = 0.0;
    double entropy = 0.0;
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;  // sorted by (index1, index2, step)
    Metadata metadata;
};

/// One independent evolution per grid point, written into a preallocated table;
/// the output does not depend on `threads` (0 = hardware concurrency).
/// Engine errors are rethrown as DomainError/CapacityError with the grid point
/// appended to the message.
SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 1);

/// A named experiment: one or more panels sharing axis layout and record mode.
struct Preset {
    std::string name;
    std::string description;
    std::vector<SweepSpec> panels;
};

const std::vector<std::string>& preset_names();

/// Throws DomainError for unknown names.
Preset preset(std::string_view name);

std::vector<SweepResult> run_preset(const Preset& p, unsigned threads = 1);

/// Default grid resolutions.
inline constexpr std::int64_t kLinePoints = 128;
inline constexpr std::int64_t kGridPoints = 64;

/// Coins used for the phase and initial-state experiments.
CoinParams reference_coin_a();
CoinParams reference_coin_b();

}  // namespace pqw
