#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "pqw/classical.hpp"
#include "pqw/errors.hpp"
#include "pqw/format.hpp"
#include "pqw/observables.hpp"
#include "pqw/output.hpp"
#include "pqw/sweep.hpp"
#include "pqw/walk.hpp"

namespace pqw::cli {

namespace {

constexpr const char* kProgram = "parrondo-qwalk";
constexpr const char* kThreadsEnv = "PARRONDO_QWALK_THREADS";

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string shell_word(const std::string& s) {
    const bool plain = !s.empty() && s.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
                                                         "0123456789.,:=+-_/") == std::string::npos;
    if (plain) return s;
    std::string q = "'";
    for (char c : s) q += (c == '\'') ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

void add_config_option(CLI::App& app) {
    static std::string sink;
    app.add_option("--config", sink, "Key/value file with flag values; command-line flags take precedence");
}

bool flag_given(const std::vector<std::string>& args, const std::string& flag) {
    for (const auto& a : args) {
        if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
}

// CLI11 only reads config files attached to the root app, so subcommand
// config files are expanded into flags here. Keys may sit at top level or in
// a section named after the subcommand.
std::vector<std::string> with_config_file(const std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty() || args.empty()) return args;
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigTOML().from_config(in);
    } catch (const CLI::ParseError& e) {
        throw UsageError("bad config file " + path + ": " + e.what());
    }
    std::vector<std::string> out = args;
    for (const auto& item : items) {
        if (item.name == "++" || item.name == "--") continue;
        if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents[0] == args[0])) continue;
        const std::string flag = "--" + item.name;
        if (item.name == "config" || flag_given(args, flag)) continue;
        if (item.inputs.size() == 1 && (item.inputs[0] == "true" || item.inputs[0] == "false")) {
            if (item.inputs[0] == "true") out.push_back(flag);
            continue;
        }
        if (item.name == "axis") {
            for (const auto& v : item.inputs) {
                out.push_back(flag);
                out.push_back(v);
            }
            continue;
        }
        // Unquoted "a,b,c" arrives split; coins want it back as one value.
        std::string joined;
        for (const auto& v : item.inputs) joined += (joined.empty() ? "" : ",") + v;
        out.push_back(flag);
        out.push_back(joined);
    }
    return out;
}

// Canonical command line echoed into output metadata. Output paths and the
// worker count are left out: neither changes the bytes written.
class CommandEcho {
public:
    explicit CommandEcho(const std::string& subcommand) : text_(std::string(kProgram) + " " + subcommand) {}
    void option(const std::string& flag, const std::string& value) { text_ += " " + flag + " " + shell_word(value); }
    void flag(const std::string& flag) { text_ += " " + flag; }
    const std::string& str() const { return text_; }

private:
    std::string text_;
};

std::int64_t parse_int(std::string_view text, const char* what) {
    text = trim(text);
    std::int64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw DomainError(std::string("invalid ") + what + " \"" + std::string(text) + "\"");
    }
    return v;
}

double parse_double(std::string_view text, const char* what) {
    text = trim(text);
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw DomainError(std::string("invalid ") + what + " \"" + std::string(text) + "\"");
    }
    return v;
}

unsigned resolve_thread_flag(int flag_value) {
    if (flag_value >= 0) return static_cast<unsigned>(flag_value);
    if (const char* env = std::getenv(kThreadsEnv); env != nullptr && *env != '\0') {
        const std::int64_t n = parse_int(env, kThreadsEnv);
        if (n < 0) throw UsageError(std::string(kThreadsEnv) + " must be >= 0");
        return static_cast<unsigned>(n);
    }
    return 0;
}

// Writes to `path`, or to `fallback` when the path is empty.
template <typename Writer>
void emit(const std::string& path, std::ostream& fallback, Writer&& write) {
    if (path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open \"" + path + "\" for writing");
    write(file);
    file.flush();
    if (!file) throw IoError("failed writing \"" + path + "\"");
}

// Physics flags shared by `run` and custom sweeps.
struct PhysicsFlags {
    std::string sequence;
    std::string coin_a;
    std::string coin_b;
    std::string phi;
    std::string theta;
    std::string varphi;
    std::string steps;

    void add_to(CLI::App& app, bool required) {
        auto req = [&](CLI::Option* o) { return required ? o->required() : o; };
        req(app.add_option("--sequence", sequence, "Game schedule over {A,B}, repeated cyclically (e.g. ABB)"));
        app.add_option("--coin-a", coin_a, "Coin A angles alpha,beta,gamma (radians, or degrees with a 'd' suffix)");
        app.add_option("--coin-b", coin_b, "Coin B angles alpha,beta,gamma (radians, or degrees with a 'd' suffix)");
        req(app.add_option("--phi", phi, "Phase applied to the coin at the origin"));
        req(app.add_option("--theta", theta, "Initial coin state angle theta in [0, pi]"));
        req(app.add_option("--varphi", varphi, "Initial coin state relative phase in [0, 2pi]"));
        req(app.add_option("--steps", steps, "Number of walk steps (>= 1)"));
    }

    bool any_given() const {
        return !sequence.empty() || !coin_a.empty() || !coin_b.empty() || !phi.empty() || !theta.empty() ||
               !varphi.empty() || !steps.empty();
    }

    void require_all() const {
        const std::pair<const char*, const std::string*> flags[] = {{"--sequence", &sequence}, {"--phi", &phi},
                                                                    {"--theta", &theta},       {"--varphi", &varphi},
                                                                    {"--steps", &steps}};
        for (const auto& [name, value] : flags) {
            if (value->empty()) throw UsageError(std::string(name) + " is required");
        }
    }

    GameSpec game() const {
        GameSpec g;
        g.sequence = sequence;
        g.validate();
        const bool uses_a = sequence.find('A') != std::string::npos;
        const bool uses_b = sequence.find('B') != std::string::npos;
        if (uses_a && coin_a.empty()) throw UsageError("--coin-a is required when the sequence contains A");
        if (uses_b && coin_b.empty()) throw UsageError("--coin-b is required when the sequence contains B");
        if (!coin_a.empty()) g.coin_a = parse_coin(coin_a);
        if (!coin_b.empty()) g.coin_b = parse_coin(coin_b);
        g.origin_phase = parse_angle(phi);
        g.validate();
        return g;
    }

    InitialCoin initial() const {
        InitialCoin c{parse_angle(theta), parse_angle(varphi)};
        c.validate();
        return c;
    }

    std::int64_t step_count() const {
        const std::int64_t n = parse_int(steps, "--steps");
        if (n < 1) throw DomainError("--steps must be >= 1");
        return n;
    }

    void echo(CommandEcho& cmd) const {
        cmd.option("--sequence", sequence);
        if (!coin_a.empty()) cmd.option("--coin-a", coin_a);
        if (!coin_b.empty()) cmd.option("--coin-b", coin_b);
        cmd.option("--phi", phi);
        cmd.option("--theta", theta);
        cmd.option("--varphi", varphi);
        cmd.option("--steps", steps);
    }

    void metadata(Metadata& m) const {
        m.emplace_back("sequence", sequence);
        m.emplace_back("coin_a", coin_a.empty() ? "unused" : coin_a);
        m.emplace_back("coin_b", coin_b.empty() ? "unused" : coin_b);
        m.emplace_back("phi", phi);
        m.emplace_back("theta", theta);
        m.emplace_back("varphi", varphi);
        m.emplace_back("steps", steps);
    }
};

SweepAxis parse_axis(std::string_view text) {
    // name=start:stop:points
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw DomainError("axis must look like name=start:stop:points");
    const AxisName name = parse_axis_name(trim(text.substr(0, eq)));
    const std::string_view range = text.substr(eq + 1);
    const auto c1 = range.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : range.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw DomainError("axis must look like name=start:stop:points");
    return SweepAxis::uniform(name, parse_angle(range.substr(0, c1)), parse_angle(range.substr(c1 + 1, c2 - c1 - 1)),
                              parse_int(range.substr(c2 + 1), "axis point count"));
}

void write_sweep_outputs(const std::string& csv_path, const std::string& svg_path, std::ostream& out,
                         const Metadata& metadata, const std::string& title, const std::vector<SweepResult>& panels) {
    emit(csv_path, out, [&](std::ostream& os) { write_sweep_csv(os, metadata, panels); });
    if (!svg_path.empty()) {
        emit(svg_path, out, [&](std::ostream& os) { os << render_heatmap_svg(title, panels); });
    }
}

Metadata preset_metadata(const Preset& p) {
    CommandEcho cmd("sweep");
    cmd.option("--preset", p.name);
    return {{"tool_version", kToolVersion},
            {"command", cmd.str()},
            {"preset", p.name},
            {"description", p.description},
            {"panels", std::to_string(p.panels.size())}};
}

}  // namespace

double parse_angle(std::string_view text) {
    text = trim(text);
    bool degrees = false;
    if (!text.empty() && text.back() == 'd') {
        degrees = true;
        text.remove_suffix(1);
    }
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw DomainError("invalid angle \"" + std::string(text) + (degrees ? "d" : "") + "\"");
    }
    return degrees ? v * (kPi / 180.0) : v;
}

CoinParams parse_coin(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto comma = text.find(',', start);
        parts.push_back(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (parts.size() != 3) {
        throw DomainError("coin must be three comma-separated angles alpha,beta,gamma, got \"" + std::string(text) + "\"");
    }
    return CoinParams(parse_angle(parts[0]), parse_angle(parts[1]), parse_angle(parts[2]));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Discrete-time quantum walk Parrondo games: single runs, parameter sweeps and the classical baseline",
                 kProgram};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    // run
    PhysicsFlags run_flags;
    std::string run_out;
    std::string run_format = "csv";
    CLI::App* run = app.add_subcommand("run", "Evolve one game and write the per-step E[x], dP and S(t) series");
    add_config_option(*run);
    run_flags.add_to(*run, true);
    run->add_option("--out", run_out, "Output file (default: stdout)");
    run->add_option("--format", run_format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    // sweep
    PhysicsFlags sweep_flags;
    std::string sweep_preset;
    std::vector<std::string> sweep_axes;
    std::string sweep_record;
    std::string sweep_out;
    std::string sweep_svg;
    int sweep_threads = -1;
    CLI::App* sweep = app.add_subcommand("sweep", "Run a named preset or a custom one/two-axis parameter sweep");
    add_config_option(*sweep);
    sweep->add_option("--preset", sweep_preset, "Named experiment")->check(CLI::IsMember(preset_names()));
    sweep_flags.add_to(*sweep, false);
    sweep->add_option("--axis", sweep_axes, "Custom axis name=start:stop:points (one or two)");
    sweep->add_option("--record", sweep_record, "Custom sweep record mode")->check(CLI::IsMember({"final", "series"}));
    sweep->add_option("--out", sweep_out, "CSV output file (default: stdout)");
    sweep->add_option("--svg", sweep_svg, "Also write an SVG heatmap to this file");
    sweep->add_option("--threads", sweep_threads, "Worker threads (0 = all cores; env PARRONDO_QWALK_THREADS)")
        ->check(CLI::NonNegativeNumber);

    // classical
    std::string classical_c;
    bool classical_analytic = false;
    std::string classical_sequence;
    std::string classical_steps;
    std::string classical_trials;
    std::string classical_seed;
    std::string classical_out;
    int classical_threads = -1;
    CLI::App* classical_cmd = app.add_subcommand("classical", "Classical Parrondo games: Markov analysis or Monte Carlo");
    add_config_option(*classical_cmd);
    classical_cmd->add_option("--c", classical_c, "Bias c with 0 <= c < 0.1")->required();
    classical_cmd->add_flag("--analytic", classical_analytic, "Print the Game B stationary distribution and expected value");
    classical_cmd->add_option("--sequence", classical_sequence, "Game schedule over {A,B}");
    classical_cmd->add_option("--steps", classical_steps, "Games played per trial");
    classical_cmd->add_option("--trials", classical_trials, "Independent trials");
    classical_cmd->add_option("--seed", classical_seed, "RNG seed");
    classical_cmd->add_option("--out", classical_out, "CSV output file (default: stdout)");
    classical_cmd->add_option("--threads", classical_threads, "Worker threads (0 = all cores)")
        ->check(CLI::NonNegativeNumber);

    // report
    std::string report_dir;
    int report_threads = -1;
    CLI::App* report = app.add_subcommand("report", "Regenerate every preset's CSV and SVG into a directory");
    report->add_option("--out-dir", report_dir, "Destination directory")->required();
    report->add_option("--threads", report_threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

    try {
        const std::vector<std::string> expanded = with_config_file(args);
        std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }

    try {
        if (run->parsed()) {
            const GameSpec game = run_flags.game();
            const InitialCoin initial = run_flags.initial();
            const std::int64_t steps = run_flags.step_count();

            ObservableSeries series;
            evolve(game, initial, steps, series.recorder());

            CommandEcho cmd("run");
            run_flags.echo(cmd);
            cmd.option("--format", run_format);
            Metadata m{{"tool_version", kToolVersion}, {"command", cmd.str()}};
            run_flags.metadata(m);
            m.emplace_back("lattice_sites", std::to_string(2 * steps + 1));
            emit(run_out, out, [&](std::ostream& os) {
                if (run_format == "json") {
                    write_series_json(os, m, series);
                } else {
                    write_series_csv(os, m, series);
                }
            });
            return kOk;
        }

        if (sweep->parsed()) {
            const unsigned threads = resolve_thread_flag(sweep_threads);
            if (!sweep_preset.empty()) {
                if (sweep_flags.any_given() || !sweep_axes.empty() || !sweep_record.empty()) {
                    throw UsageError("--preset cannot be combined with custom sweep flags");
                }
                const Preset p = preset(sweep_preset);
                write_sweep_outputs(sweep_out, sweep_svg, out, preset_metadata(p), p.name + ": " + p.description,
                                    run_preset(p, threads));
                return kOk;
            }
            sweep_flags.require_all();
            if (sweep_axes.empty() || sweep_axes.size() > 2) throw UsageError("--axis must be given once or twice");
            if (sweep_record.empty()) throw UsageError("--record is required for a custom sweep");

            SweepSpec spec;
            spec.label = "custom";
            spec.game = sweep_flags.game();
            spec.initial = sweep_flags.initial();
            spec.steps = sweep_flags.step_count();
            for (const auto& a : sweep_axes) spec.axes.push_back(parse_axis(a));
            spec.record = sweep_record == "series" ? RecordMode::full_series : RecordMode::final_only;
            spec.validate();

            CommandEcho cmd("sweep");
            sweep_flags.echo(cmd);
            for (const auto& a : sweep_axes) cmd.option("--axis", a);
            cmd.option("--record", sweep_record);
            Metadata m{{"tool_version", kToolVersion}, {"command", cmd.str()}};
            sweep_flags.metadata(m);
            write_sweep_outputs(sweep_out, sweep_svg, out, m, "custom sweep", {run_sweep(spec, threads)});
            return kOk;
        }

        if (classical_cmd->parsed()) {
            const classical::ClassicalParams params(parse_double(classical_c, "--c"));
            if (classical_analytic) {
                const auto t = classical::transition_matrix(params);
                const auto d = classical::stationary_distribution(t);
                const auto w = classical::game_b_state_winnings(params);
                out << "c: " << classical_c << '\n';
                out << "p_a: " << format_double(params.p_a()) << '\n';
                out << "p_b1: " << format_double(params.p_b1()) << '\n';
                out << "p_b2: " << format_double(params.p_b2()) << '\n';
                out << "transition_matrix:\n";
                for (const auto& row : t) {
                    out << "  " << format_double(row[0]) << ' ' << format_double(row[1]) << ' ' << format_double(row[2])
                        << '\n';
                }
                out << "stationary_distribution: (" << format_double(d[0]) << ", " << format_double(d[1]) << ", "
                    << format_double(d[2]) << ")\n";
                out << "state_winnings: (" << format_double(w[0]) << ", " << format_double(w[1]) << ", "
                    << format_double(w[2]) << ")\n";
                out << "game_a_expected_value: " << format_double(2.0 * params.p_a() - 1.0) << '\n';
                out << "game_b_expected_value: " << format_double(classical::game_b_expected_value(params)) << '\n';
                return kOk;
            }
            const std::pair<const char*, const std::string*> needed[] = {{"--sequence", &classical_sequence},
                                                                         {"--steps", &classical_steps},
                                                                         {"--trials", &classical_trials},
                                                                         {"--seed", &classical_seed}};
            for (const auto& [name, value] : needed) {
                if (value->empty()) throw UsageError(std::string(name) + " is required for a Monte Carlo run");
            }
            const std::int64_t steps = parse_int(classical_steps, "--steps");
            const std::int64_t trials = parse_int(classical_trials, "--trials");
            const std::int64_t seed = parse_int(classical_seed, "--seed");
            if (seed < 0) throw DomainError("--seed must be non-negative");
            const auto traj = classical::simulate_classical(classical_sequence, params, steps, trials,
                                                            static_cast<std::uint64_t>(seed),
                                                            resolve_thread_flag(classical_threads));

            CommandEcho cmd("classical");
            cmd.option("--c", classical_c);
            cmd.option("--sequence", classical_sequence);
            cmd.option("--steps", classical_steps);
            cmd.option("--trials", classical_trials);
            cmd.option("--seed", classical_seed);
            Metadata m{{"tool_version", kToolVersion}, {"command", cmd.str()},
                       {"c", classical_c},           {"p_a", format_double(params.p_a())},
                       {"p_b1", format_double(params.p_b1())}, {"p_b2", format_double(params.p_b2())},
                       {"sequence", classical_sequence}, {"steps", classical_steps},
                       {"trials", classical_trials}, {"seed", classical_seed}};
            const bool mixed = classical_sequence.find('A') != std::string::npos &&
                               classical_sequence.find('B') != std::string::npos;
            if (mixed) m.emplace_back("note", "mixed A/B schedule: extension beyond the single-game baseline");
            emit(classical_out, out, [&](std::ostream& os) { write_classical_csv(os, m, traj); });
            return kOk;
        }

        if (report->parsed()) {
            const unsigned threads = resolve_thread_flag(report_threads);
            std::error_code ec;
            std::filesystem::create_directories(report_dir, ec);
            if (ec) throw IoError("cannot create \"" + report_dir + "\": " + ec.message());
            for (const auto& name : preset_names()) {
                const Preset p = preset(name);
                const auto base = (std::filesystem::path(report_dir) / name).string();
                write_sweep_outputs(base + ".csv", base + ".svg", out, preset_metadata(p), p.name + ": " + p.description,
                                    run_preset(p, threads));
                out << "wrote " << base << ".csv, " << base << ".svg\n";
            }
            return kOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kOk;
}

}  // namespace pqw::cli
