// Command-line front end.
//
// Subcommands: verify | spectrum | evolve | zeno | well | diagram.
// Exit codes: 0 success, 1 domain failure, 2 usage error.
// Precedence: command-line flags > config file entries > built-in defaults.
// All numeric output is locale-independent ('.' decimal separator).

#include "topospin/topospin.hpp"

#include <CLI11.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

using topospin::json;

// shortest round-trip decimal form, never locale-dependent
std::string fmt(double v) {
    std::array<char, 40> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

struct Options {
    topospin::ModelParams mp{};
    topospin::WellParams well{};
    std::string format;  // empty: per-command default
    double tol_abs = topospin::kTolAbs;
    double tol_eig = topospin::kTolEig;
    double t_max = 0.0;  // 0: one tunneling period
    int steps = 101;
    std::string n_list = "1,2,5,10,50,100,200";
    double perturb = 0.0;
    std::string sweep;
    std::string expression;
};

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw CLI::ValidationError("config", "key '" + key + "': not a number: " + value);
    }
}

// flat key=value file; '#' starts a comment, blank lines ignored
void apply_config_file(const std::string& path, Options& o) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError(
                "--config", path + ":" + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "J") o.mp.J = parse_double(key, value);
        else if (key == "delta") o.mp.delta = parse_double(key, value);
        else if (key == "phi") o.mp.phi = parse_double(key, value);
        else if (key == "eps") o.mp.eps = static_cast<int>(parse_double(key, value));
        else if (key == "hbar") { o.mp.hbar = parse_double(key, value); o.well.hbar = o.mp.hbar; }
        else if (key == "m") o.well.m = parse_double(key, value);
        else if (key == "L") o.well.L = parse_double(key, value);
        else if (key == "a") o.well.a = parse_double(key, value);
        else if (key == "V0") o.well.V0 = parse_double(key, value);
        else if (key == "t-max") o.t_max = parse_double(key, value);
        else if (key == "steps") o.steps = static_cast<int>(parse_double(key, value));
        else if (key == "n") o.n_list = value;
        else if (key == "format") o.format = value;
        else if (key == "tol-abs") o.tol_abs = parse_double(key, value);
        else if (key == "tol-eig") o.tol_eig = parse_double(key, value);
        else if (key == "perturb") o.perturb = parse_double(key, value);
        else
            throw CLI::ValidationError(
                "--config", path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (!o.format.empty() && o.format != "json" && o.format != "csv" && o.format != "table")
        throw CLI::ValidationError("--config", "format must be json, csv, or table");
}

std::string resolve_format(const Options& o, const char* fallback) {
    return o.format.empty() ? fallback : o.format;
}

std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int n = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), n);
        if (ec != std::errc{} || ptr != item.data() + item.size() || n < 1)
            throw CLI::ValidationError("--n", "expected positive integers, got '" + item + "'");
        out.push_back(n);
    }
    if (out.empty()) throw CLI::ValidationError("--n", "empty list");
    return out;
}

// var=lo:hi:scale[:points], scale in {log10, lin}
std::vector<double> parse_sweep(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || text.substr(0, eq) != "V0")
        throw CLI::ValidationError("--sweep", "expected V0=lo:hi:scale[:points]");
    std::vector<std::string> parts;
    std::stringstream ss(text.substr(eq + 1));
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() < 3 || parts.size() > 4)
        throw CLI::ValidationError("--sweep", "expected V0=lo:hi:scale[:points]");
    const double lo = parse_double("sweep lo", parts[0]);
    const double hi = parse_double("sweep hi", parts[1]);
    const std::string scale = parts[2];
    int points = 10;
    if (parts.size() == 4) points = static_cast<int>(parse_double("sweep points", parts[3]));
    if (!(lo > 0.0) || !(hi > lo) || points < 2)
        throw CLI::ValidationError("--sweep", "need 0 < lo < hi and points >= 2");
    std::vector<double> grid;
    for (int i = 0; i < points; ++i) {
        const double s = static_cast<double>(i) / (points - 1);
        if (scale == "log10")
            grid.push_back(std::pow(10.0, std::log10(lo) + s * (std::log10(hi) - std::log10(lo))));
        else if (scale == "lin")
            grid.push_back(lo + s * (hi - lo));
        else
            throw CLI::ValidationError("--sweep", "scale must be log10 or lin");
    }
    return grid;
}

void warn_delta(const topospin::ModelParams& mp) {
    if (!mp.delta_recommended())
        std::cerr << "warning: |delta| >= 1 puts levels outside the recommended range\n";
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------

int cmd_verify(const Options& o) {
    warn_delta(o.mp);
    topospin::VerifyOptions vo;
    vo.perturbation = o.perturb;
    vo.tol_abs = o.tol_abs;
    vo.tol_eig = o.tol_eig;
    const topospin::VerifyReport report = topospin::run_verification(o.mp, vo);

    const std::string format = resolve_format(o, "json");
    if (format == "json") {
        emit(json(report));
    } else if (format == "csv") {
        std::cout << "name,residual,tolerance,mandatory,passed\n";
        for (const auto& c : report.checks)
            std::cout << c.name << "," << fmt(c.residual) << "," << fmt(c.tolerance) << ","
                      << (c.mandatory ? "true" : "false") << ","
                      << (c.passed ? "true" : "false") << "\n";
    } else {
        for (const auto& c : report.checks) {
            std::cout << (c.passed ? "PASS " : "FAIL ") << pad(c.name, 28)
                      << " residual=" << pad(fmt(c.residual), 24) << " tol=" << fmt(c.tolerance)
                      << (c.mandatory ? "" : "  [informational]") << "\n";
        }
        std::cout << "mandatory checks: "
                  << (report.all_mandatory_passed() ? "PASS" : "FAIL") << "\n";
    }
    return report.all_mandatory_passed() ? 0 : 1;
}

int cmd_spectrum(const Options& o) {
    warn_delta(o.mp);
    const topospin::Spectrum sp = topospin::spectrum(o.mp);
    const topospin::Splitting sl = topospin::splitting(o.mp);

    const std::string format = resolve_format(o, "table");
    if (format == "json") {
        emit(json{{"params", o.mp}, {"spectrum", sp}, {"splitting", sl}});
    } else if (format == "csv") {
        std::cout << "value,multiplicity\n";
        for (const auto& l : sp.levels)
            std::cout << fmt(l.value) << "," << l.multiplicity << "\n";
    } else {
        std::cout << pad("value", 22) << "multiplicity\n";
        for (const auto& l : sp.levels)
            std::cout << pad(fmt(l.value), 22) << l.multiplicity << "\n";
        std::cout << "delta_freq = " << fmt(sl.delta_freq) << "\n";
    }
    return 0;
}

int cmd_evolve(const Options& o) {
    warn_delta(o.mp);
    const double t_max = o.t_max > 0.0 ? o.t_max : topospin::tunneling_time(o.mp);
    const topospin::EvolutionTrace tr = topospin::tunneling_trace(o.mp, t_max, o.steps);

    const std::string format = resolve_format(o, "csv");
    if (format == "json") {
        emit(json{{"params", o.mp}, {"trace", tr}});
    } else {
        std::cout << "t,p_e1,p_e3,leak\n";
        for (std::size_t k = 0; k < tr.times.size(); ++k)
            std::cout << fmt(tr.times[k]) << "," << fmt(tr.p_e1[k]) << "," << fmt(tr.p_e3[k])
                      << "," << fmt(tr.leak[k]) << "\n";
    }
    return 0;
}

int cmd_zeno(const Options& o) {
    warn_delta(o.mp);
    const std::vector<int> ns = parse_n_list(o.n_list);
    std::vector<topospin::ZenoRun> runs;
    for (int n : ns) runs.push_back(topospin::zeno_run(o.mp, n));

    const std::string format = resolve_format(o, "csv");
    if (format == "json") {
        emit(json{{"params", o.mp}, {"runs", runs}});
    } else {
        std::cout << "n,survival_exact,survival_analytic,survival_limit\n";
        for (const auto& r : runs)
            std::cout << r.n << "," << fmt(r.survival_exact) << "," << fmt(r.survival_analytic)
                      << "," << fmt(r.survival_limit) << "\n";
    }
    return 0;
}

int cmd_well(const Options& o) {
    if (!o.sweep.empty()) {
        const std::vector<double> grid = parse_sweep(o.sweep);
        const topospin::WellTable table = topospin::independent_wells_limit(o.well, grid);
        const std::string format = resolve_format(o, "csv");
        if (format == "json") {
            emit(json{{"params", o.well}, {"table", table}});
        } else {
            std::cout << "V0,delta,tau,annotation\n";
            for (const auto& row : table.rows)
                std::cout << fmt(row.V0) << "," << fmt(row.delta) << "," << fmt(row.tau) << ","
                          << (row.independent ? "independent wells" : "") << "\n";
        }
        return 0;
    }
    const topospin::WellMap m = topospin::map_well(o.well);
    const std::string format = resolve_format(o, "json");
    if (format == "csv") {
        std::cout << "xi,J,delta,delta_freq,tau\n"
                  << fmt(m.xi) << "," << fmt(m.J) << "," << fmt(m.delta) << ","
                  << fmt(m.delta_freq) << "," << fmt(m.tau) << "\n";
    } else if (format == "table") {
        std::cout << "xi         = " << fmt(m.xi) << "\n"
                  << "J          = " << fmt(m.J) << "\n"
                  << "delta      = " << fmt(m.delta) << "\n"
                  << "delta_freq = " << fmt(m.delta_freq) << "\n"
                  << "tau        = " << fmt(m.tau) << "\n";
    } else {
        emit(json(m));
    }
    return 0;
}

int cmd_diagram(const Options& o) {
    std::string src = o.expression;
    if (src.empty()) {
        std::stringstream buffer;
        buffer << std::cin.rdbuf();
        src = buffer.str();
    }
    const topospin::EvalResult result = topospin::evaluate(src, o.mp.tl());

    const std::string format = resolve_format(o, "json");
    if (format == "csv") {
        std::cout << "row,col,re,im\n";
        for (Eigen::Index r = 0; r < result.data.rows(); ++r)
            for (Eigen::Index c = 0; c < result.data.cols(); ++c)
                std::cout << r << "," << c << "," << fmt(result.data(r, c).real()) << ","
                          << fmt(result.data(r, c).imag()) << "\n";
    } else if (format == "table") {
        std::cout << "kind: " << topospin::to_string(result.kind) << "\n"
                  << "rows: " << result.data.rows() << "  cols: " << result.data.cols() << "\n";
        for (Eigen::Index r = 0; r < result.data.rows(); ++r) {
            for (Eigen::Index c = 0; c < result.data.cols(); ++c) {
                if (c) std::cout << "  ";
                std::cout << fmt(result.data(r, c).real()) << "+"
                          << fmt(result.data(r, c).imag()) << "i";
            }
            std::cout << "\n";
        }
    } else {
        emit(json(result));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;

    // the config file must be applied before flag parsing so flags win
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        try {
            if (arg == "--config" && i + 1 < argc)
                apply_config_file(argv[i + 1], o);
            else if (arg.rfind("--config=", 0) == 0)
                apply_config_file(arg.substr(9), o);
        } catch (const CLI::ParseError& e) {
            std::cerr << e.what() << "\n";
            return 2;
        }
    }

    CLI::App app{"Temperley-Lieb spin model: algebra checks, diagram evaluation, "
                 "spectra, tunneling and measurement dynamics"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "flat key=value config file");
    app.add_option("--format", o.format, "output format: json, csv, or table")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--tol-abs", o.tol_abs, "absolute residual tolerance");
    app.add_option("--tol-eig", o.tol_eig, "eigenvalue residual tolerance");

    const auto add_model_flags = [&](CLI::App* sub) {
        sub->add_option("--J", o.mp.J, "energy scale (> 0)");
        sub->add_option("--delta", o.mp.delta, "splitting parameter");
        sub->add_option("--phi", o.mp.phi, "generator phase (radians)");
        sub->add_option("--eps", o.mp.eps, "generator sign (+1 or -1)")
            ->check(CLI::IsMember({-1, 1}));
        sub->add_option("--hbar", o.mp.hbar, "reduced Planck constant (> 0)");
        sub->fallthrough();
    };

    CLI::App* verify = app.add_subcommand("verify", "run all built-in checks");
    add_model_flags(verify);
    verify->add_option("--perturb", o.perturb,
                       "inject a fault of this size into the relation checks");

    CLI::App* spectrumCmd = app.add_subcommand("spectrum", "eigenvalues of the Hamiltonian");
    add_model_flags(spectrumCmd);

    CLI::App* evolve = app.add_subcommand("evolve", "tunneling trace from the first basis state");
    add_model_flags(evolve);
    evolve->add_option("--t-max", o.t_max, "final time (default: one tunneling period)");
    evolve->add_option("--steps", o.steps, "number of samples (>= 2)");

    CLI::App* zeno = app.add_subcommand("zeno", "repeated-measurement survival probabilities");
    add_model_flags(zeno);
    zeno->add_option("--n", o.n_list, "measurement count, single or comma list");

    CLI::App* well = app.add_subcommand("well", "double-well parameter mapping");
    well->add_option("--m", o.well.m, "particle mass (> 0)");
    well->add_option("--L", o.well.L, "outer wall position (> 0)");
    well->add_option("--a", o.well.a, "barrier half-width (0 < a < L)");
    well->add_option("--V0", o.well.V0, "barrier height (> 0)");
    well->add_option("--hbar", o.well.hbar, "reduced Planck constant (> 0)");
    well->add_option("--sweep", o.sweep, "V0=lo:hi:scale[:points], scale log10 or lin");
    well->fallthrough();

    CLI::App* diagram = app.add_subcommand("diagram", "evaluate a cup/cap diagram expression");
    diagram->add_option("expression", o.expression, "diagram source (reads stdin if omitted)");
    diagram->add_option("--phi", o.mp.phi, "generator phase (radians)");
    diagram->add_option("--eps", o.mp.eps, "generator sign (+1 or -1)")
        ->check(CLI::IsMember({-1, 1}));
    diagram->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(o);
        if (spectrumCmd->parsed()) return cmd_spectrum(o);
        if (evolve->parsed()) return cmd_evolve(o);
        if (zeno->parsed()) return cmd_zeno(o);
        if (well->parsed()) return cmd_well(o);
        if (diagram->parsed()) return cmd_diagram(o);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const topospin::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
