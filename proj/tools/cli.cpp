#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bogodense/bdg.hpp"
#include "bogodense/error.hpp"
#include "bogodense/gpe.hpp"
#include "bogodense/modes.hpp"
#include "bogodense/protocol.hpp"
#include "bogodense/twomode.hpp"

namespace bogodense::cli {

using Json = nlohmann::ordered_json;

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

int exit_code_for(std::string_view category) noexcept {
    if (category == "parse" || category == "invalid_parameter") return 2;
    if (category == "io") return 3;
    return 1;
}

// ---------------------------------------------------------------------------
// config file

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string normalize_key(std::string k) {
    std::replace(k.begin(), k.end(), '_', '-');
    return k;
}

double parse_double(const std::string& key, const std::string& v, std::size_t line) {
    double x = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(x))
        throw Error(ErrorKind::Parse, "config key '" + key + "' (line " + std::to_string(line) +
                                          "): malformed number '" + v + "'");
    return x;
}

std::size_t parse_count(const std::string& key, const std::string& v, std::size_t line) {
    std::size_t x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size())
        throw Error(ErrorKind::Parse, "config key '" + key + "' (line " + std::to_string(line) +
                                          "): expected a nonnegative integer, got '" + v + "'");
    return x;
}

Format parse_format(const std::string& v) {
    if (v == "csv") return Format::Csv;
    if (v == "json") return Format::Json;
    throw Error(ErrorKind::Parse, "format must be csv or json, got '" + v + "'");
}

DynamicsMode parse_mode(const std::string& v) {
    if (v == "exact") return DynamicsMode::Exact;
    if (v == "analytic") return DynamicsMode::Analytic;
    if (v == "both") return DynamicsMode::Both;
    throw Error(ErrorKind::Parse, "mode must be exact, analytic or both, got '" + v + "'");
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& v, std::size_t line)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"mass-kg", [](RunConfig& c, const auto& k, const auto& v, auto l) { c.physical.mass_kg = parse_double(k, v, l); }},
        {"scattering-length-m", [](RunConfig& c, const auto& k, const auto& v, auto l) { c.physical.scattering_length_m = parse_double(k, v, l); }},
        {"trap-frequency-hz", [](RunConfig& c, const auto& k, const auto& v, auto l) { c.physical.trap_frequency_hz = parse_double(k, v, l); }},
        {"nbar", [](RunConfig& c, const auto& k, const auto& v, auto l) { c.physical.nbar = parse_double(k, v, l); }},
        {"n0", [](RunConfig& c, const auto& k, const auto& v, auto l) { c.physical.n0 = parse_double(k, v, l); }},
        {"grid-points", [](RunConfig& c, const auto& k, const auto& v, auto l) { c.grid_points = parse_count(k, v, l); }},
        {"r-max", [](RunConfig& c, const auto& k, const auto& v, auto l) { c.r_max = parse_double(k, v, l); }},
        {"format", [](RunConfig& c, const auto&, const auto& v, auto) { c.format = parse_format(v); }},
        {"si", [](RunConfig& c, const auto& k, const auto& v, auto l) {
             if (v == "true" || v == "1") c.si = true;
             else if (v == "false" || v == "0") c.si = false;
             else throw Error(ErrorKind::Parse, "config key '" + k + "' (line " + std::to_string(l) + "): expected true/false");
         }},
        {"m-total", [](RunConfig& c, const auto& k, const auto& v, auto l) { c.m_total = parse_count(k, v, l); }},
        {"t-max", [](RunConfig& c, const auto& k, const auto& v, auto l) { c.t_max = parse_double(k, v, l); }},
        {"steps", [](RunConfig& c, const auto& k, const auto& v, auto l) { c.steps = parse_count(k, v, l); }},
        {"mode", [](RunConfig& c, const auto&, const auto& v, auto) { c.dyn_mode = parse_mode(v); }},
        {"num-modes", [](RunConfig& c, const auto& k, const auto& v, auto l) { c.num_modes = parse_count(k, v, l); }},
        {"protocol-n0", [](RunConfig& c, const auto& k, const auto& v, auto l) { c.protocol_n0 = parse_double(k, v, l); }},
        {"cycles", [](RunConfig& c, const auto& k, const auto& v, auto l) { c.cycles = parse_count(k, v, l); }},
        {"init", [](RunConfig& c, const auto&, const auto& v, auto) { c.init = v; }},
        {"m-max", [](RunConfig& c, const auto& k, const auto& v, auto l) { c.m_max = parse_count(k, v, l); }},
    };
    return table;
}

}  // namespace

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& [k, _] : setters()) keys.push_back(k);
    return keys;
}

void apply_config_text(RunConfig& cfg, std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string s = trim(std::string_view(raw).substr(0, hash));
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::Parse, "config line " + std::to_string(line) + ": expected 'key = value'");
        const std::string key = normalize_key(trim(std::string_view(s).substr(0, eq)));
        const std::string value = trim(std::string_view(s).substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end())
            throw Error(ErrorKind::Parse, "config key '" + key + "' (line " + std::to_string(line) + "): unknown key");
        if (value.empty())
            throw Error(ErrorKind::Parse, "config key '" + key + "' (line " + std::to_string(line) + "): missing value");
        it->second(cfg, key, value, line);
    }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    apply_config_text(cfg, ss.str());
}

// ---------------------------------------------------------------------------
// argv

namespace {

constexpr const char* kHelpFooter = R"(Units: lengths in r0 = sqrt(hbar/(m omega)), energies in hbar*omega, times in
1/omega (omega = 2 pi * trap frequency); --si converts outputs to m, J, s.
hbar = 1.054571817e-34 J s (CODATA 2018).

CSV output has one header row and 12 significant digits. JSON summary keys:
  ground    mu, nbar, residual, iterations, method, energy
  modes     alpha2, alpha3, alpha4, beta, gamma, mu1, mu, g01, mu1_minus_mu, g_alpha2
  dynamics  c1, c2, omega_prime, stable, m_total, nbar, t_max, evolution,
            truncation_tail
  bdg       frequencies, p, q, residual, c_const, c_const_double_sum, weight_k_ge_3
  protocol  n0, cycles, period, retained_mass, lost_mass, retained_variance,
            bimodal, final_mean, final_variance, removed_total
  figure1   mu, b_tf, mu_tf, tf_radius, xi0_tf_center, coefficients
Errors in --format json are {"error": {"category": ..., "message": ...}}.

BOGODENSE_THREADS caps the number of worker threads.)";

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
    RunConfig cfg;

    // The file sits between defaults and flags, so it is applied before CLI11
    // binds the flags onto the same fields.
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) apply_config_file(cfg, args[i + 1]);
        else if (args[i].rfind("--config=", 0) == 0) apply_config_file(cfg, args[i].substr(9));
    }

    CLI::App app{"Mean-density Bogoliubov toolkit for a trapped Bose condensate", "bogodense"};
    app.require_subcommand(0, 1);
    app.fallthrough();
    app.footer(kHelpFooter);

    std::string config_path;
    std::string format = cfg.format == Format::Json ? "json" : "csv";
    app.add_option("--config", config_path, "Flat key = value file (flags override it)");
    app.add_option("--mass-kg", cfg.physical.mass_kg, "Atomic mass [kg]")->capture_default_str();
    app.add_option("--scattering-length-m", cfg.physical.scattering_length_m, "s-wave scattering length [m]")
        ->capture_default_str();
    app.add_option("--trap-frequency-hz", cfg.physical.trap_frequency_hz, "Trap frequency [Hz]")->capture_default_str();
    app.add_option("--nbar", cfg.physical.nbar, "Occupation in the nonlinear term")->capture_default_str();
    app.add_option("--n0", cfg.physical.n0, "Mean ground-mode occupation")->capture_default_str();
    app.add_option("--grid-points", cfg.grid_points, "Radial grid points")->capture_default_str();
    app.add_option("--r-max", cfg.r_max, "Grid extent in r0 (0: max(2 R_TF, 8))")->capture_default_str();
    app.add_option("-o,--output", cfg.output, "Output file (default: stdout)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--summary", cfg.summary_path, "Write the JSON summary to this file (csv format)");
    app.add_flag("--si", cfg.si, "Report in SI units instead of trap units");

    auto* ground = app.add_subcommand("ground", "Gross-Pitaevskii ground mode: r, xi0 [, xi0_tf]");
    ground->add_flag("--tf", cfg.with_tf, "Add the Thomas-Fermi profile column");

    app.add_subcommand("modes", "Ground mode, mode 1 and the coupling coefficients: r, xi0, xi1");

    auto* dyn = app.add_subcommand("dynamics", "Two-mode <n1>(t) from |M, 0>: t, n1_exact, n1_analytic");
    std::string mode = cfg.dyn_mode == DynamicsMode::Exact ? "exact"
                       : cfg.dyn_mode == DynamicsMode::Analytic ? "analytic" : "both";
    dyn->add_option("--m-total", cfg.m_total, "Total particles M (0: round(nbar))")->capture_default_str();
    dyn->add_option("--t-max", cfg.t_max, "End time in 1/omega (0: one period)")->capture_default_str();
    dyn->add_option("--steps", cfg.steps, "Number of time intervals")->capture_default_str();
    dyn->add_option("--mode", mode, "exact, analytic or both")->check(CLI::IsMember({"exact", "analytic", "both"}));

    auto* bdg = app.add_subcommand("bdg", "Quasiparticle spectrum and mode-1 decomposition: k, omega_k, p_k, q_k");
    bdg->add_option("--num-modes", cfg.num_modes, "Quasiparticle modes to keep (>= 2)")->capture_default_str();
    bdg->add_option("--dump-modes", cfg.dump_modes, "Write r, u_k, v_k columns to this file");

    auto* proto = app.add_subcommand("protocol", "Cyclic depletion Markov chain: cycle, mean, variance, ...");
    proto->add_option("--n0", cfg.protocol_n0, "Target occupation (sets nbar)")->capture_default_str();
    proto->add_option("--cycles", cfg.cycles, "Depletion cycles")->capture_default_str();
    proto->add_option("--init", cfg.init, "gaussian:mean,sigma | point:M | twopoint:M1,M2 (default gaussian:n0,sqrt(n0))");
    proto->add_option("--m-max", cfg.m_max, "Truncation (0: from the initial distribution)")->capture_default_str();

    app.add_subcommand("figure1", "Profile figure data: r, xi0_numeric, xi0_tf, xi1 plus a JSON sidecar");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        cfg.command = Command::Help;
        const auto subs = app.get_subcommands();
        cfg.help_text = subs.empty() ? app.help() : subs.front()->help();
        return cfg;
    } catch (const CLI::CallForAllHelp&) {
        cfg.command = Command::Help;
        cfg.help_text = app.help("", CLI::AppFormatMode::All);
        return cfg;
    } catch (const CLI::ParseError& e) {
        throw Error(ErrorKind::Parse, e.what());
    }

    cfg.format = parse_format(format);
    cfg.dyn_mode = parse_mode(mode);
    if (app.get_subcommands().empty()) return cfg;  // Command::None
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "ground") cfg.command = Command::Ground;
    else if (name == "modes") cfg.command = Command::Modes;
    else if (name == "dynamics") cfg.command = Command::Dynamics;
    else if (name == "bdg") cfg.command = Command::Bdg;
    else if (name == "protocol") cfg.command = Command::Protocol;
    else cfg.command = Command::Figure1;
    return cfg;
}

// ---------------------------------------------------------------------------
// commands

namespace {

struct Column {
    std::string name;
    std::vector<double> values;
};

struct Units {
    double length = 1.0;  // r0 -> output
    double energy = 1.0;  // hbar omega -> output
    double time = 1.0;    // 1/omega -> output
    double field = 1.0;   // r0^(-3/2) -> output
    double rate = 1.0;    // omega -> output (frequencies)
    const char* name = "trap";
};

Units units_for(const RunConfig& cfg, const DimensionlessParams& dp) {
    if (!cfg.si) return {};
    return {dp.r0_m, dp.energy_unit_j(), 1.0 / dp.omega_rad_s, std::pow(dp.r0_m, -1.5), dp.omega_rad_s, "si"};
}

RadialGrid make_grid(const RunConfig& cfg, const DimensionlessParams& dp) {
    if (cfg.grid_points < RadialGrid::kMinPoints)
        throw Error(ErrorKind::InvalidParameter,
                    "--grid-points must be at least " + std::to_string(RadialGrid::kMinPoints));
    if (cfg.r_max > 0.0) return RadialGrid(cfg.r_max, cfg.grid_points);
    if (cfg.r_max < 0.0) throw Error(ErrorKind::InvalidParameter, "--r-max must be positive");
    return default_grid(dp, cfg.grid_points);
}

std::vector<double> scaled(const RadialField& f, double s) {
    std::vector<double> v = f.values;
    for (double& x : v) x *= s;
    return v;
}

std::vector<double> radii(const RadialGrid& g, double s) {
    std::vector<double> v = g.nodes();
    for (double& x : v) x *= s;
    return v;
}

void write_csv(std::ostream& os, const std::vector<Column>& cols) {
    for (std::size_t j = 0; j < cols.size(); ++j) os << (j ? "," : "") << cols[j].name;
    os << '\n';
    const std::size_t rows = cols.empty() ? 0 : cols.front().values.size();
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) os << (j ? "," : "") << format_number(cols[j].values[i]);
        os << '\n';
    }
}

Json columns_json(const std::vector<Column>& cols) {
    Json j = Json::object();
    for (const auto& c : cols) j[c.name] = c.values;
    return j;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw Error(ErrorKind::Io, "write to '" + path + "' failed");
}

// Primary output: CSV (summary to --summary if given) or one JSON document.
void emit(const RunConfig& cfg, std::ostream& out, const std::vector<Column>& cols, Json summary) {
    std::ostringstream body;
    if (cfg.format == Format::Json) {
        Json doc;
        doc["summary"] = std::move(summary);
        doc["columns"] = columns_json(cols);
        body << doc.dump(2) << '\n';
    } else {
        write_csv(body, cols);
        if (!cfg.summary_path.empty()) write_file(cfg.summary_path, summary.dump(2) + "\n");
    }
    if (cfg.output.empty()) out << body.str();
    else write_file(cfg.output, body.str());
}

Json coefficients_json(const CouplingCoefficients& c, const Units& u, double r0) {
    // alpha_n ~ r0^(-3(n-1)), beta ~ r0^3, g ~ energy r0^3
    const double l3 = u.length == 1.0 ? 1.0 : r0 * r0 * r0;
    Json j;
    j["alpha2"] = c.alpha2 / l3;
    j["alpha3"] = c.alpha3 / (l3 * l3);
    j["alpha4"] = c.alpha4 / (l3 * l3 * l3);
    j["beta"] = c.beta * l3;
    j["gamma"] = c.gamma * u.energy;
    j["mu1"] = c.mu1 * u.energy;
    j["mu"] = c.mu * u.energy;
    j["g01"] = c.g01 * u.energy;
    j["mu1_minus_mu"] = c.mu1_minus_mu() * u.energy;
    j["g_alpha2"] = c.g_alpha2() * u.energy;
    return j;
}

void run_ground(const RunConfig& cfg, std::ostream& out) {
    const DimensionlessParams dp = to_dimensionless(cfg.physical);
    const RadialGrid grid = make_grid(cfg, dp);
    const Units u = units_for(cfg, dp);
    const GroundMode gm = solve_gpe(dp, grid);

    std::vector<Column> cols{{"r", radii(grid, u.length)}, {"xi0", scaled(gm.xi0, u.field)}};
    const bool tf = cfg.with_tf && dp.g > 0.0;
    if (tf) cols.push_back({"xi0_tf", scaled(thomas_fermi_mode(dp, grid).xi0, u.field)});

    Json s;
    s["mu"] = gm.mu * u.energy;
    s["nbar"] = gm.nbar;
    s["residual"] = gm.residual;
    s["iterations"] = gm.iterations;
    s["method"] = std::string(to_string(gm.method));
    s["energy"] = gpe_energy(gm.xi0, dp) * u.energy;
    s["xi0_tf"] = tf;
    s["units"] = u.name;
    emit(cfg, out, cols, std::move(s));
}

void run_modes(const RunConfig& cfg, std::ostream& out) {
    const DimensionlessParams dp = to_dimensionless(cfg.physical);
    const RadialGrid grid = make_grid(cfg, dp);
    const Units u = units_for(cfg, dp);
    const ModeSet ms = solve_modes(dp, grid);

    const std::vector<Column> cols{{"r", radii(grid, u.length)},
                                   {"xi0", scaled(ms.ground.xi0, u.field)},
                                   {"xi1", scaled(ms.mode1.xi1, u.field)}};
    Json s = coefficients_json(ms.coeffs, u, dp.r0_m);
    s["units"] = u.name;
    emit(cfg, out, cols, std::move(s));
}

void run_dynamics(const RunConfig& cfg, std::ostream& out) {
    const DimensionlessParams dp = to_dimensionless(cfg.physical);
    const RadialGrid grid = make_grid(cfg, dp);
    const Units u = units_for(cfg, dp);
    if (cfg.steps < 1) throw Error(ErrorKind::InvalidParameter, "--steps must be >= 1");
    const ModeSet ms = solve_modes(dp, grid);

    const std::size_t m = cfg.m_total ? cfg.m_total : static_cast<std::size_t>(std::llround(dp.nbar));
    const OscillationLaw law = oscillation_law(ms.coeffs, static_cast<double>(m));
    double t_max = cfg.t_max;
    if (t_max < 0.0) throw Error(ErrorKind::InvalidParameter, "--t-max must be positive");
    if (t_max == 0.0) t_max = law.stable ? 2.0 * kPi / law.omega_prime : 10.0;

    std::vector<double> times(cfg.steps + 1);
    for (std::size_t i = 0; i <= cfg.steps; ++i)
        times[i] = t_max * static_cast<double>(i) / static_cast<double>(cfg.steps);

    std::vector<Column> cols;
    {
        std::vector<double> tt = times;
        for (double& t : tt) t *= u.time;
        cols.push_back({"t", std::move(tt)});
    }
    std::string evolution = "none";
    double tail = 0.0;
    if (cfg.dyn_mode != DynamicsMode::Analytic) {
        const TwoModeHamiltonian h = build_h01(ms.coeffs, m);
        const TwoModeState s0 = TwoModeState::fock(m, 0);
        std::vector<double> n1;
        if (m <= kSpectralMaxParticles) {
            n1 = mean_n1_trace(SpectralPropagator(h), s0, times);
            evolution = "spectral";
        } else {
            TruncatedTrace tr = mean_n1_trace_truncated(h, times);
            n1 = std::move(tr.mean_n1);
            evolution = "truncated_spectral:" + std::to_string(tr.block);
            tail = tr.tail;
        }
        cols.push_back({"n1_exact", std::move(n1)});
    }
    if (cfg.dyn_mode != DynamicsMode::Exact) {
        std::vector<double> n1;
        for (double t : times) n1.push_back(mean_n1_analytic(law, t));
        cols.push_back({"n1_analytic", std::move(n1)});
    }

    Json s;
    s["c1"] = law.c1;
    s["c2"] = law.c2;
    s["omega_prime"] = law.omega_prime * u.rate;
    s["stable"] = law.stable;
    s["m_total"] = m;
    s["nbar"] = dp.nbar;
    s["t_max"] = t_max * u.time;
    s["evolution"] = evolution;
    s["truncation_tail"] = tail;
    s["units"] = u.name;
    emit(cfg, out, cols, std::move(s));
}

void run_bdg(const RunConfig& cfg, std::ostream& out) {
    const DimensionlessParams dp = to_dimensionless(cfg.physical);
    const RadialGrid grid = make_grid(cfg, dp);
    const Units u = units_for(cfg, dp);
    if (cfg.num_modes < 2) throw Error(ErrorKind::InvalidParameter, "--num-modes must be >= 2");
    const ModeSet ms = solve_modes(dp, grid);
    const QuasiparticleSpectrum spec = solve_bdg(ms.ground, dp, cfg.num_modes);
    const Mode1Decomposition d = decompose_mode1(ms.mode1, spec);

    std::vector<Column> cols{{"k", {}}, {"omega_k", {}}, {"p_k", d.p}, {"q_k", d.q}};
    std::vector<double> freqs;
    for (std::size_t k = 0; k < spec.modes.size(); ++k) {
        cols[0].values.push_back(static_cast<double>(k + 1));
        freqs.push_back(spec.modes[k].omega * u.energy);
    }
    cols[1].values = freqs;

    if (!cfg.dump_modes.empty()) {
        std::vector<Column> mcols{{"r", radii(grid, u.length)}};
        for (std::size_t k = 0; k < spec.modes.size(); ++k) {
            mcols.push_back({"u_" + std::to_string(k + 1), scaled(spec.modes[k].u, u.field)});
            mcols.push_back({"v_" + std::to_string(k + 1), scaled(spec.modes[k].v, u.field)});
        }
        std::ostringstream ss;
        write_csv(ss, mcols);
        write_file(cfg.dump_modes, ss.str());
    }

    Json s;
    s["frequencies"] = freqs;
    s["p"] = d.p;
    s["q"] = d.q;
    s["residual"] = d.residual;
    s["c_const"] = spec.c_const * u.energy;
    s["c_const_double_sum"] = c_const_double_sum(spec) * u.energy;
    s["weight_k_ge_3"] = d.weight_from(3);
    s["units"] = u.name;
    emit(cfg, out, cols, std::move(s));
}

std::vector<double> split_numbers(const std::string& spec, const std::string& what) {
    std::vector<double> xs;
    std::istringstream in(what);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        tok = trim(tok);
        double x = 0.0;
        const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
        if (tok.empty() || ec != std::errc() || p != tok.data() + tok.size())
            throw Error(ErrorKind::Parse, "--init '" + spec + "': malformed number '" + tok + "'");
        xs.push_back(x);
    }
    return xs;
}

std::size_t as_count(const std::string& spec, double x) {
    if (x < 0.0 || x != std::floor(x))
        throw Error(ErrorKind::Parse, "--init '" + spec + "': occupations must be nonnegative integers");
    return static_cast<std::size_t>(x);
}

NumberDistribution initial_distribution(const RunConfig& cfg, double n0) {
    std::string spec = cfg.init;
    if (spec.empty()) spec = "gaussian:" + format_number(n0) + "," + format_number(std::sqrt(n0));
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw Error(ErrorKind::Parse, "--init '" + spec + "': expected kind:values");
    const std::string kind = spec.substr(0, colon);
    const std::vector<double> xs = split_numbers(spec, spec.substr(colon + 1));

    if (kind == "point" && xs.size() == 1) {
        const std::size_t m = as_count(spec, xs[0]);
        return NumberDistribution::point(m, cfg.m_max ? cfg.m_max : m);
    }
    if (kind == "twopoint" && xs.size() == 2) {
        const std::size_t a = as_count(spec, xs[0]);
        const std::size_t b = as_count(spec, xs[1]);
        return NumberDistribution::two_point(a, b, cfg.m_max ? cfg.m_max : std::max(a, b));
    }
    if (kind == "gaussian" && xs.size() == 2) {
        if (!(xs[1] > 0.0) || xs[0] < 0.0)
            throw Error(ErrorKind::InvalidParameter, "--init gaussian needs mean >= 0 and sigma > 0");
        const auto top = static_cast<std::size_t>(std::ceil(xs[0] + 8.0 * xs[1]));
        return NumberDistribution::gaussian(xs[0], xs[1], cfg.m_max ? cfg.m_max : top);
    }
    throw Error(ErrorKind::Parse, "--init '" + spec + "': expected gaussian:mean,sigma | point:M | twopoint:M1,M2");
}

void run_protocol_cmd(const RunConfig& cfg, std::ostream& out) {
    const double n0 = cfg.protocol_n0;
    if (!(n0 >= 1.0)) throw Error(ErrorKind::InvalidParameter, "--n0 must be >= 1");
    if (cfg.cycles < 1) throw Error(ErrorKind::InvalidParameter, "--cycles must be >= 1");
    PhysicalParams phys = cfg.physical;
    phys.nbar = n0;
    phys.n0 = n0;
    const DimensionlessParams dp = to_dimensionless(phys);
    const RadialGrid grid = make_grid(cfg, dp);
    const ModeSet ms = solve_modes(dp, grid);

    const NumberDistribution init = initial_distribution(cfg, n0);
    ProtocolConfig pc;
    pc.n0 = n0;
    pc.cycles = cfg.cycles;
    pc.m_max = cfg.m_max;
    const ProtocolResult res = run_protocol(init, pc, ms.coeffs);

    std::vector<Column> cols{{"cycle", {}}, {"mean", {}}, {"variance", {}},
                             {"retained_mass", {}}, {"lost_mass", {}}, {"removed_this_cycle", {}}};
    for (const CycleSummary& c : res.history) {
        cols[0].values.push_back(static_cast<double>(c.cycle));
        cols[1].values.push_back(c.mean);
        cols[2].values.push_back(c.variance);
        cols[3].values.push_back(c.retained_mass);
        cols[4].values.push_back(c.lost_mass);
        cols[5].values.push_back(c.removed_this_cycle);
    }

    Json s;
    s["n0"] = n0;
    s["cycles"] = cfg.cycles;
    s["period"] = DepletionChannel(ms.coeffs, 0).period();
    s["retained_mass"] = res.retained_mass;
    s["lost_mass"] = res.lost_mass;
    s["retained_variance"] = res.retained_variance;
    s["bimodal"] = res.bimodal;
    s["final_mean"] = res.final_dist.mean();
    s["final_variance"] = res.final_dist.variance();
    s["removed_total"] = res.final_dist.removed_total;
    emit(cfg, out, cols, std::move(s));
}

void run_figure1(const RunConfig& cfg, std::ostream& out) {
    const DimensionlessParams dp = to_dimensionless(cfg.physical);
    const RadialGrid grid = make_grid(cfg, dp);
    const Units u = units_for(cfg, dp);
    const ModeSet ms = solve_modes(dp, grid);

    std::vector<Column> cols{{"r", radii(grid, u.length)}, {"xi0_numeric", scaled(ms.ground.xi0, u.field)}};
    const bool tf = dp.g > 0.0;
    Json s;
    s["mu"] = ms.coeffs.mu * u.energy;
    s["b_tf"] = dp.b_tf;
    if (tf) {
        const GroundMode tfm = thomas_fermi_mode(dp, grid);
        cols.push_back({"xi0_tf", scaled(tfm.xi0, u.field)});
        s["mu_tf"] = tfm.mu * u.energy;
        s["tf_radius"] = std::sqrt(2.0 * tfm.mu) * u.length;
        s["xi0_tf_center"] = std::sqrt(tfm.mu / (dp.nbar * dp.g)) * u.field;
    }
    cols.push_back({"xi1", scaled(ms.mode1.xi1, u.field)});
    s["coefficients"] = coefficients_json(ms.coeffs, u, dp.r0_m);
    s["r0_m"] = dp.r0_m;
    s["nbar"] = dp.nbar;
    s["units"] = u.name;

    if (cfg.format == Format::Json) {
        emit(cfg, out, cols, std::move(s));
        return;
    }
    RunConfig c = cfg;
    if (c.output.empty()) c.output = "figure1.csv";
    if (c.summary_path.empty()) {
        const auto dot = c.output.rfind('.');
        const auto slash = c.output.rfind('/');
        const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
        c.summary_path = (has_ext ? c.output.substr(0, dot) : c.output) + ".json";
    }
    emit(c, out, cols, std::move(s));
}

}  // namespace

void run(const RunConfig& cfg, std::ostream& out) {
    switch (cfg.command) {
    case Command::Help: out << cfg.help_text; return;
    case Command::Ground: run_ground(cfg, out); return;
    case Command::Modes: run_modes(cfg, out); return;
    case Command::Dynamics: run_dynamics(cfg, out); return;
    case Command::Bdg: run_bdg(cfg, out); return;
    case Command::Protocol: run_protocol_cmd(cfg, out); return;
    case Command::Figure1: run_figure1(cfg, out); return;
    case Command::None: break;
    }
    throw Error(ErrorKind::Parse, "no subcommand given (see --help)");
}

}  // namespace bogodense::cli
