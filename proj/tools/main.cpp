#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lipdyn/lipschitz.hpp"
#include "lipdyn/lyapunov.hpp"
#include "lipdyn/report.hpp"

namespace {

using namespace lipdyn;

dsl::MapDefinition load_map_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open map file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return dsl::parse_map(buf.str());
}

// Map source: a `.map` file path, or "builtin:name[:key=value,...]".
ScalarMap resolve_map(const std::string& source) {
    if (source.rfind("builtin:", 0) == 0) {
        std::string rest = source.substr(8);
        std::string name = rest;
        ParamFamily spec;
        auto colon = rest.find(':');
        if (colon != std::string::npos) {
            name = rest.substr(0, colon);
            std::string params = rest.substr(colon + 1);
            std::istringstream ps(params);
            std::string item;
            while (std::getline(ps, item, ',')) {
                auto eq = item.find('=');
                if (eq == std::string::npos) {
                    throw Error("bad parameter '" + item + "' (expected key=value)");
                }
                spec.params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
            }
        }
        spec.family = family_from_name(name);
        return builtin(spec);
    }
    return from_dsl(load_map_file(source));
}

struct OutputTarget {
    std::string path;  // empty -> stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot open output file '" + path + "'");
        out << text;
    }
};

struct CommonOpts {
    std::string map_source;
    double x0 = 0.3;
    long iters = 10000;
    long burn_in = 0;
    std::uint64_t seed = 0;
    std::string format = "csv";
    OutputTarget out;
    double period_tol = 1e-8;
    double fp_tol = 1e-10;
    double margin = 0.05;
    double radius = 1e-2;
    int max_period = 64;
    std::string skip_mode = "skip";

    SkipPolicy policy() const {
        SkipPolicy p;
        if (skip_mode == "skip")
            p.mode = SkipMode::Skip;
        else if (skip_mode == "perturb")
            p.mode = SkipMode::Perturb;
        else
            p.mode = SkipMode::Fail;
        return p;
    }
};

void add_common(CLI::App* cmd, CommonOpts& o, const std::string& default_format) {
    o.format = default_format;
    cmd->add_option("--map", o.map_source, "map file or builtin:name:key=value,...")->required();
    cmd->add_option("--x0", o.x0, "initial value");
    cmd->add_option("--iters", o.iters, "post burn-in iterations");
    cmd->add_option("--burn-in", o.burn_in, "discarded leading iterations");
    cmd->add_option("--seed", o.seed, "rng seed for sampled estimators");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", o.out.path, "output path (default stdout)");
    cmd->add_option("--period-tol", o.period_tol, "periodicity tolerance");
    cmd->add_option("--fp-tol", o.fp_tol, "fixed-point tolerance");
    cmd->add_option("--margin", o.margin, "classification margin delta");
    cmd->add_option("--radius", o.radius, "neighborhood radius epsilon");
    cmd->add_option("--max-period", o.max_period, "largest period searched");
    cmd->add_option("--skip-mode", o.skip_mode, "breakpoint policy")
        ->check(CLI::IsMember({"skip", "perturb", "fail"}));
}

int run_orbit(const CommonOpts& o) {
    ScalarMap map = resolve_map(o.map_source);
    Orbit orbit = iterate(map, o.x0, o.iters, o.burn_in);
    std::ostringstream body;
    if (o.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < orbit.samples.size(); ++i) {
            rows.push_back({{"index", o.burn_in + static_cast<long>(i)},
                            {"x", json_number(orbit.samples[i])}});
        }
        nlohmann::json j{{"command", "orbit"}, {"map", map.label},
                         {"escaped", orbit.escaped}, {"samples", rows}};
        body << j.dump(2) << "\n";
    } else {
        body << "index,x\n";
        for (std::size_t i = 0; i < orbit.samples.size(); ++i) {
            body << (o.burn_in + static_cast<long>(i)) << "," << format_g17(orbit.samples[i])
                 << "\n";
        }
    }
    o.out.write(body.str());
    return orbit.escaped ? 2 : 0;
}

int run_classify(const CommonOpts& o, std::optional<double> point, bool auto_scan,
                 const std::string& interval, int grid_n) {
    ScalarMap map = resolve_map(o.map_source);

    std::vector<double> points;
    if (auto_scan) {
        auto comma = interval.find(',');
        if (comma == std::string::npos) throw Error("--interval expects lo,hi");
        double lo = std::stod(interval.substr(0, comma));
        double hi = std::stod(interval.substr(comma + 1));
        if (!(lo < hi)) throw Error("--interval expects lo < hi");
        for (const auto& c : find_fixed_points(map, lo, hi, grid_n, o.fp_tol)) {
            points.push_back(c.p);
        }
    } else if (point) {
        points.push_back(*point);
    } else {
        throw Error("classify needs --point or --auto with --interval");
    }

    NeighborhoodSpec nbhd;
    nbhd.radius = o.radius;
    nbhd.rng_seed = o.seed;

    nlohmann::json entries = nlohmann::json::array();
    for (double p : points) {
        Classification cls = classify_fixed_point(map, p, nbhd, o.margin);
        std::optional<Classification> oracle;
        if (map.has_deriv() && !map.near_breakpoint(p, 1e-9)) {
            oracle = classify_fixed_point_smooth(map, p);
        }
        entries.push_back(classify_entry(p, cls, oracle ? &*oracle : nullptr));
    }
    nlohmann::json j{{"command", "classify"},
                     {"map", map.label},
                     {"margin", o.margin},
                     {"radius", o.radius},
                     {"fixed_points", entries}};
    o.out.write(j.dump(2) + "\n");
    return 0;
}

int run_analyze(const CommonOpts& o) {
    ScalarMap map = resolve_map(o.map_source);
    ChaosReport report =
        classify_chaos(map, o.x0, o.iters, o.burn_in, o.max_period, o.policy(), 1e12,
                       o.period_tol);
    o.out.write(analyze_report(map.label, o.x0, o.iters, o.burn_in, report).dump(2) + "\n");
    return report.bounded ? 0 : 2;
}

int run_sweep(const CommonOpts& o, const std::string& family, const std::string& param,
              double from, double to, long steps) {
    if (!(from < to)) throw Error("sweep expects --from < --to");
    if (steps < 2) throw Error("sweep expects --steps >= 2");
    Family fam = family_from_name(family);

    std::ostringstream body;
    body << "param,h_n,status,detected_period,escaped\n";
    for (long j = 0; j < steps; ++j) {
        double value = from + (to - from) * static_cast<double>(j) / (steps - 1);
        body << format_g17(value) << ",";
        try {
            ParamFamily spec;
            spec.family = fam;
            spec.params[param] = value;
            if (fam == Family::TentAb && param != "b") spec.params.emplace("b", 1.0);
            if (fam == Family::TentAb && param != "a") spec.params.emplace("a", -2.0);
            if (fam == Family::Affine && param != "d") spec.params.emplace("d", 0.0);
            if (fam == Family::Affine && param != "c") spec.params.emplace("c", 0.5);
            ScalarMap map = builtin(spec);
            ChaosReport rep = classify_chaos(map, o.x0, o.iters, o.burn_in, o.max_period,
                                             o.policy(), 1e12, o.period_tol);
            double h = rep.exponent.h_n;
            body << (std::isfinite(h) ? format_g17(h) : "") << ","
                 << lyap_status_name(rep.exponent.status) << ","
                 << (rep.asymptotically_periodic ? rep.asymptotically_periodic->period : 0) << ","
                 << (rep.bounded ? 0 : 1) << "\n";
        } catch (const std::exception&) {
            body << ",error,0,0\n";
        }
    }
    o.out.write(body.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stability and Lyapunov analysis for Lipschitz scalar maps"};
    app.require_subcommand(1);

    CommonOpts orbit_opts, classify_opts, analyze_opts, sweep_opts;

    CLI::App* orbit_cmd = app.add_subcommand("orbit", "emit orbit samples");
    add_common(orbit_cmd, orbit_opts, "csv");

    CLI::App* classify_cmd = app.add_subcommand("classify", "classify fixed points");
    add_common(classify_cmd, classify_opts, "json");
    std::optional<double> point;
    bool auto_scan = false;
    std::string interval;
    int grid_n = 1000;
    classify_cmd->add_option("--point", point, "fixed point to classify");
    classify_cmd->add_flag("--auto", auto_scan, "scan --interval for fixed points");
    classify_cmd->add_option("--interval", interval, "lo,hi scan interval");
    classify_cmd->add_option("--grid", grid_n, "scan grid size");

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "exponent + chaos report");
    add_common(analyze_cmd, analyze_opts, "json");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "parameter sweep dataset");
    std::string family = "logistic", param = "a";
    double from = 0.0, to = 1.0;
    long steps = 2;
    add_common(sweep_cmd, sweep_opts, "csv");
    sweep_cmd->get_option("--map")->required(false);
    sweep_cmd->add_option("--family", family, "builtin family name");
    sweep_cmd->add_option("--param", param, "swept parameter name");
    sweep_cmd->add_option("--from", from, "first parameter value")->required();
    sweep_cmd->add_option("--to", to, "last parameter value")->required();
    sweep_cmd->add_option("--steps", steps, "row count (inclusive endpoints)")->required();

    try {
        app.parse(argc, argv);
        if (orbit_cmd->parsed()) return run_orbit(orbit_opts);
        if (classify_cmd->parsed())
            return run_classify(classify_opts, point, auto_scan, interval, grid_n);
        if (analyze_cmd->parsed()) return run_analyze(analyze_opts);
        if (sweep_cmd->parsed()) return run_sweep(sweep_opts, family, param, from, to, steps);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
