#include "pqw/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "pqw/errors.hpp"
#include "pqw/format.hpp"
#include "pqw/observables.hpp"
#include "pqw/parallel.hpp"

namespace pqw {

namespace {

constexpr std::array<std::pair<AxisName, std::string_view>, 9> kAxisNames{{
    {AxisName::phi, "phi"},
    {AxisName::theta, "theta"},
    {AxisName::varphi, "varphi"},
    {AxisName::alpha_a, "alpha_a"},
    {AxisName::beta_a, "beta_a"},
    {AxisName::gamma_a, "gamma_a"},
    {AxisName::alpha_b, "alpha_b"},
    {AxisName::beta_b, "beta_b"},
    {AxisName::gamma_b, "gamma_b"},
}};

std::string coin_text(const CoinParams& c) {
    return format_double(c.alpha()) + "," + format_double(c.beta()) + "," + format_double(c.gamma());
}

std::string grid_point_text(const SweepSpec& spec, std::size_t i1, std::size_t i2) {
    std::ostringstream os;
    os << " [grid point " << to_string(spec.axes[0].name()) << "[" << i1 << "]=" << format_double(spec.axes[0].value(i1));
    if (spec.axes.size() > 1) {
        os << ", " << to_string(spec.axes[1].name()) << "[" << i2 << "]=" << format_double(spec.axes[1].value(i2));
    }
    os << "]";
    return os.str();
}

}  // namespace

std::string_view to_string(AxisName name) {
    for (const auto& [n, text] : kAxisNames) {
        if (n == name) return text;
    }
    return "?";
}

AxisName parse_axis_name(std::string_view text) {
    for (const auto& [n, t] : kAxisNames) {
        if (t == text) return n;
    }
    throw DomainError("unknown sweep axis \"" + std::string(text) +
                      "\" (expected phi, theta, varphi, alpha_a, beta_a, gamma_a, alpha_b, beta_b or gamma_b)");
}

std::string_view to_string(RecordMode mode) {
    return mode == RecordMode::full_series ? "full_series" : "final_only";
}

SweepAxis SweepAxis::uniform(AxisName name, double start, double stop, std::int64_t points) {
    if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop)) {
        throw DomainError("sweep axis " + std::string(to_string(name)) + " needs finite start < stop");
    }
    if (points < 2) throw DomainError("sweep axis " + std::string(to_string(name)) + " needs at least 2 points");
    SweepAxis axis;
    axis.name_ = name;
    axis.uniform_ = true;
    axis.start_ = start;
    axis.stop_ = stop;
    axis.points_ = points;
    return axis;
}

SweepAxis SweepAxis::list(AxisName name, std::vector<double> values) {
    if (values.empty()) throw DomainError("sweep axis " + std::string(to_string(name)) + " has no values");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]) || (i > 0 && !(values[i - 1] < values[i]))) {
            throw DomainError("sweep axis " + std::string(to_string(name)) + " values must be finite and strictly increasing");
        }
    }
    SweepAxis axis;
    axis.name_ = name;
    axis.uniform_ = false;
    axis.values_ = std::move(values);
    return axis;
}

double SweepAxis::value(std::size_t i) const {
    if (!uniform_) return values_.at(i);
    return start_ + static_cast<double>(i) * (stop_ - start_) / static_cast<double>(points_ - 1);
}

std::string SweepAxis::describe() const {
    std::string out(to_string(name_));
    if (uniform_) {
        out += "=uniform[" + format_double(start_) + "," + format_double(stop_) + "]x" + std::to_string(points_);
    } else {
        out += "=list{";
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (i) out += ",";
            out += format_double(values_[i]);
        }
        out += "}";
    }
    return out;
}

void SweepSpec::validate() const {
    game.validate();
    initial.validate();
    if (steps < 1) throw DomainError("sweep steps must be >= 1");
    if (axes.empty() || axes.size() > 2) throw DomainError("a sweep needs one or two axes");
    if (axes.size() == 2 && axes[0].name() == axes[1].name()) {
        throw DomainError("sweep axes must be distinct");
    }
}

std::size_t SweepSpec::grid_points() const {
    std::size_t n = 1;
    for (const auto& a : axes) n *= a.points();
    return n;
}

void apply_axis_value(AxisName name, double value, GameSpec& game, InitialCoin& initial) {
    const CoinParams& a = game.coin_a;
    const CoinParams& b = game.coin_b;
    switch (name) {
        case AxisName::phi: game.origin_phase = value; break;
        case AxisName::theta: initial.theta = value; break;
        case AxisName::varphi: initial.varphi = value; break;
        case AxisName::alpha_a: game.coin_a = CoinParams(value, a.beta(), a.gamma()); break;
        case AxisName::beta_a: game.coin_a = CoinParams(a.alpha(), value, a.gamma()); break;
        case AxisName::gamma_a: game.coin_a = CoinParams(a.alpha(), a.beta(), value); break;
        case AxisName::alpha_b: game.coin_b = CoinParams(value, b.beta(), b.gamma()); break;
        case AxisName::beta_b: game.coin_b = CoinParams(b.alpha(), value, b.gamma()); break;
        case AxisName::gamma_b: game.coin_b = CoinParams(b.alpha(), b.beta(), value); break;
    }
}

SweepResult run_sweep(const SweepSpec& spec, unsigned threads) {
    spec.validate();
    const std::size_t n1 = spec.axes[0].points();
    const std::size_t n2 = spec.axes.size() > 1 ? spec.axes[1].points() : 1;
    const std::size_t per_point = spec.rows_per_point();

    SweepResult result;
    result.spec = spec;
    result.rows.resize(n1 * n2 * per_point);

    parallel_for(n1 * n2, threads, [&](std::size_t point) {
        const std::size_t i1 = point / n2;
        const std::size_t i2 = point % n2;
        GameSpec game = spec.game;
        InitialCoin initial = spec.initial;
        const double v1 = spec.axes[0].value(i1);
        const double v2 = spec.axes.size() > 1 ? spec.axes[1].value(i2) : 0.0;
        SweepRow* out = result.rows.data() + point * per_point;
        auto fill = [&](SweepRow& row, const ObservableRow& obs) {
            row = {i1, i2, v1, v2, obs.step, obs.expected_position, obs.delta_p, obs.entropy};
        };
        try {
            apply_axis_value(spec.axes[0].name(), v1, game, initial);
            if (spec.axes.size() > 1) apply_axis_value(spec.axes[1].name(), v2, game, initial);
            if (spec.record == RecordMode::full_series) {
                std::size_t k = 0;
                evolve(game, initial, spec.steps, [&](const WalkState& s) { fill(out[k++], measure(s)); });
            } else {
                fill(out[0], measure(evolve(game, initial, spec.steps)));
            }
        } catch (const CapacityError& e) {
            throw CapacityError(e.what() + grid_point_text(spec, i1, i2));
        } catch (const DomainError& e) {
            throw DomainError(e.what() + grid_point_text(spec, i1, i2));
        }
    });

    Metadata& m = result.metadata;
    m.emplace_back("tool_version", kToolVersion);
    if (!spec.label.empty()) m.emplace_back("panel", spec.label);
    m.emplace_back("sequence", spec.game.sequence);
    m.emplace_back("coin_a", coin_text(spec.game.coin_a));
    m.emplace_back("coin_b", coin_text(spec.game.coin_b));
    m.emplace_back("phi", format_double(spec.game.origin_phase));
    m.emplace_back("theta", format_double(spec.initial.theta));
    m.emplace_back("varphi", format_double(spec.initial.varphi));
    m.emplace_back("steps", std::to_string(spec.steps));
    m.emplace_back("record", std::string(to_string(spec.record)));
    for (std::size_t i = 0; i < spec.axes.size(); ++i) {
        m.emplace_back("axis" + std::to_string(i + 1), spec.axes[i].describe());
    }
    return result;
}

CoinParams reference_coin_a() { return CoinParams(2.395, 0.513, 0.909); }
CoinParams reference_coin_b() { return CoinParams(2.611, 1.176, 2.313); }

namespace {

constexpr double kDeg = kPi / 180.0;
constexpr double kPresetPhase = kPi / 2.0;
constexpr std::int64_t kPresetSteps = 100;

SweepSpec base_panel(std::string label, std::string sequence) {
    SweepSpec s;
    s.label = std::move(label);
    s.game.coin_a = reference_coin_a();
    s.game.coin_b = reference_coin_b();
    s.game.sequence = std::move(sequence);
    s.game.origin_phase = kPresetPhase;
    s.initial = kSymmetricInitialCoin;
    s.steps = kPresetSteps;
    return s;
}

const std::vector<std::string> kSequences{"A", "B", "AB", "ABB"};

// Scanned coin inside ABB with the given fixed angles; the other coin keeps
// its reference values.
std::vector<SweepSpec> coin_phase_panels(const CoinParams& scanned, std::vector<AxisName> axes_a,
                                         std::vector<AxisName> axes_b, std::int64_t points) {
    std::vector<SweepSpec> panels;
    for (int which = 0; which < 2; ++which) {
        SweepSpec s = base_panel(which == 0 ? "coin-a" : "coin-b", "ABB");
        (which == 0 ? s.game.coin_a : s.game.coin_b) = scanned;
        for (AxisName n : which == 0 ? axes_a : axes_b) s.axes.push_back(SweepAxis::uniform(n, 0.0, kTwoPi, points));
        s.record = RecordMode::final_only;
        panels.push_back(std::move(s));
    }
    return panels;
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"phase-scan", "phase-lines",    "initial-state-scan", "beta-scan",
                                                "beta-pair-scan", "alpha-scan", "gamma-scan",         "alpha-gamma-scan"};
    return names;
}

Preset preset(std::string_view name) {
    Preset p;
    p.name = std::string(name);
    if (name == "phase-scan") {
        p.description = "E[x], dP, S over steps for the origin phase on [0, 2pi], sequences A/B/AB/ABB";
        for (const auto& seq : kSequences) {
            SweepSpec s = base_panel(seq, seq);
            s.axes.push_back(SweepAxis::uniform(AxisName::phi, 0.0, kTwoPi, kLinePoints));
            s.record = RecordMode::full_series;
            p.panels.push_back(std::move(s));
        }
    } else if (name == "phase-lines") {
        p.description = "time series at phi = 0, pi/4, pi/2, pi, 3pi/2 for sequences A/B/AB/ABB";
        for (const auto& seq : kSequences) {
            SweepSpec s = base_panel(seq, seq);
            s.axes.push_back(SweepAxis::list(AxisName::phi, {0.0, kPi / 4.0, kPi / 2.0, kPi, 3.0 * kPi / 2.0}));
            s.record = RecordMode::full_series;
            p.panels.push_back(std::move(s));
        }
    } else if (name == "initial-state-scan") {
        p.description = "final E[x] over the initial coin state (theta, varphi), sequences A/B/AB/ABB";
        for (const auto& seq : kSequences) {
            SweepSpec s = base_panel(seq, seq);
            s.axes.push_back(SweepAxis::uniform(AxisName::theta, 0.0, kPi, kGridPoints));
            s.axes.push_back(SweepAxis::uniform(AxisName::varphi, 0.0, kTwoPi, kGridPoints));
            s.record = RecordMode::final_only;
            p.panels.push_back(std::move(s));
        }
    } else if (name == "beta-scan") {
        p.description = "final E[x] of single-coin walks versus beta on [0, 180 deg]";
        SweepSpec a = base_panel("coin-a", "A");
        a.axes.push_back(SweepAxis::uniform(AxisName::beta_a, 0.0, kPi, kLinePoints));
        SweepSpec b = base_panel("coin-b", "B");
        b.axes.push_back(SweepAxis::uniform(AxisName::beta_b, 0.0, kPi, kLinePoints));
        p.panels = {std::move(a), std::move(b)};
    } else if (name == "beta-pair-scan") {
        p.description = "final E[x] over (beta_a, beta_b) on [0, 90 deg]^2 for AB and ABB";
        for (const std::string seq : {"AB", "ABB"}) {
            SweepSpec s = base_panel(seq, seq);
            s.axes.push_back(SweepAxis::uniform(AxisName::beta_a, 0.0, 90.0 * kDeg, kGridPoints));
            s.axes.push_back(SweepAxis::uniform(AxisName::beta_b, 0.0, 90.0 * kDeg, kGridPoints));
            p.panels.push_back(std::move(s));
        }
    } else if (name == "alpha-scan") {
        p.description = "final E[x] of ABB versus alpha of one coin with beta = 45 deg, gamma = 0";
        p.panels = coin_phase_panels(CoinParams(0.0, 45.0 * kDeg, 0.0), {AxisName::alpha_a}, {AxisName::alpha_b},
                                     kLinePoints);
    } else if (name == "gamma-scan") {
        p.description = "final E[x] of ABB versus gamma of one coin with beta = 45 deg, alpha = 0";
        p.panels = coin_phase_panels(CoinParams(0.0, 45.0 * kDeg, 0.0), {AxisName::gamma_a}, {AxisName::gamma_b},
                                     kLinePoints);
    } else if (name == "alpha-gamma-scan") {
        p.description = "final E[x] of ABB over (alpha, gamma) of one coin with beta = 45 deg";
        p.panels = coin_phase_panels(CoinParams(0.0, 45.0 * kDeg, 0.0), {AxisName::alpha_a, AxisName::gamma_a},
                                     {AxisName::alpha_b, AxisName::gamma_b}, kGridPoints);
    } else {
        std::string valid;
        for (const auto& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
        throw DomainError("unknown preset \"" + std::string(name) + "\" (valid: " + valid + ")");
    }
    return p;
}

std::vector<SweepResult> run_preset(const Preset& p, unsigned threads) {
    std::vector<SweepResult> out;
    out.reserve(p.panels.size());
    for (const auto& panel : p.panels) {
        out.push_back(run_sweep(panel, threads));
        out.back().metadata.insert(out.back().metadata.begin() + 1, {"preset", p.name});
    }
    return out;
}

}  // namespace pqw
