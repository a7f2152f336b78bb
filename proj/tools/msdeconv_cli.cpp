// Command-line entry point: test / modes / map / calibrate / reproduce /
// simulate subcommands over the key-value run configuration format.
//
// Exit codes: 0 success, 2 configuration/validation error, 1 runtime error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "msdeconv/io.hpp"

namespace fs = std::filesystem;
using namespace msdeconv;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string data_path;
    std::string out_dir;
    std::uint64_t seed = 20250809;
    bool seed_set = false;
    double alpha = -1.0;
    long reps = -1;
    int threads = 1;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_config = true) {
    auto* copt = cmd->add_option("-c,--config", args.config_path, "run configuration file");
    if (needs_config) copt->required();
    cmd->add_option("--data", args.data_path, "input sample CSV (one observation per row)");
    cmd->add_option("-o,--out", args.out_dir, "output directory (default: MSDECONV_OUT_DIR or .)");
    cmd->add_option("--seed", args.seed, "root seed")->each([&](const std::string&) { args.seed_set = true; });
    cmd->add_option("--alpha", args.alpha, "significance level override");
    cmd->add_option("--reps", args.reps, "replication count override");
    cmd->add_option("--threads", args.threads, "worker thread cap");
    cmd->add_option("--set", args.overrides, "config override section.key=value")->take_all();
}

RunConfig load_config(const CommonArgs& args) {
    RunConfig cfg = args.config_path.empty() ? RunConfig() : RunConfig::parse_file(args.config_path);
    for (const auto& ov : args.overrides) {
        const auto dotpos = ov.find('.');
        const auto eqpos = ov.find('=');
        if (dotpos == std::string::npos || eqpos == std::string::npos || eqpos < dotpos)
            throw ConfigError("--set expects section.key=value, got '" + ov + "'");
        cfg.set(ov.substr(0, dotpos), ov.substr(dotpos + 1, eqpos - dotpos - 1), ov.substr(eqpos + 1));
    }
    if (args.seed_set) cfg.set("run", "seed", std::to_string(args.seed));
    if (args.alpha > 0.0) cfg.set("test", "alpha", fmt(args.alpha));
    if (args.reps > 0) cfg.set("run", "reps", std::to_string(args.reps));
    return cfg;
}

fs::path resolve_out_dir(const CommonArgs& args) {
    std::string dir = args.out_dir;
    if (dir.empty()) {
        const char* env = std::getenv("MSDECONV_OUT_DIR");
        dir = env ? env : ".";
    }
    fs::create_directories(dir);
    return dir;
}

std::uint64_t config_seed(const RunConfig& cfg, const CommonArgs& args) {
    if (cfg.has("run", "seed")) return static_cast<std::uint64_t>(cfg.get_long("run", "seed", 0));
    return args.seed;
}

Box parse_box(const RunConfig& cfg, const std::string& section, const std::string& key,
              const Box& fallback) {
    if (!cfg.has(section, key)) return fallback;
    const auto v = cfg.get_doubles(section, key);
    if (v.size() % 2 != 0 || v.empty())
        throw ConfigError("config: " + section + "." + key + " needs lo/hi pairs per axis");
    const std::size_t d = v.size() / 2;
    std::vector<double> lo(d), hi(d);
    for (std::size_t k = 0; k < d; ++k) {
        lo[k] = v[2 * k];
        hi[k] = v[2 * k + 1];
    }
    return Box(lo, hi);
}

ErrorModel parse_error_model(const RunConfig& cfg) {
    const std::string model = cfg.get("error", "model", "laplace");
    if (model == "laplace") return ErrorModel::laplace(cfg.get_double("error", "sigma", 0.075));
    throw ConfigError("config: error.model '" + model + "' is not a samplable model (use laplace)");
}

TripleGrid parse_grid(const RunConfig& cfg, std::size_t n) {
    const Box box = parse_box(cfg, "grid", "box", Box({-1.0, -1.0}, {1.0, 1.0}));
    auto scales = cfg.get_doubles("grid", "scales");
    if (scales.empty()) scales = {0.5};
    const int ndir = static_cast<int>(cfg.get_long("grid", "directions", 4));
    const double offset = cfg.get_double("grid", "direction_offset_deg", 0.0) * M_PI / 180.0;
    const bool symmetric = cfg.get_bool("grid", "symmetric", true);
    const double spacing = cfg.get_double("grid", "spacing", 0.0);
    return build_grid(box, scales, equidistant_directions(ndir, offset), symmetric, n, spacing);
}

TesterOptions parse_tester_options(const RunConfig& cfg, const CommonArgs& args, std::uint64_t seed) {
    TesterOptions opt;
    opt.alpha = cfg.get_double("test", "alpha", 0.05);
    if (!(opt.alpha > 0.0 && opt.alpha < 1.0)) throw ConfigError("config: test.alpha must lie in (0,1)");
    opt.kappa_reps = static_cast<std::size_t>(cfg.get_long("test", "kappa_reps", 1000));
    opt.kappa_seed = derive_seed(seed, 0xCAFE);
    opt.pilot_bandwidth = cfg.get_double("pilot", "bandwidth", 0.0);
    opt.pilot_floor = cfg.get_double("pilot", "floor", 1e-4);
    opt.threads = args.threads;
    return opt;
}

Sample obtain_sample(const RunConfig& cfg, const CommonArgs& args, std::uint64_t seed) {
    if (!args.data_path.empty()) return load_sample_csv(args.data_path);
    if (cfg.has("data", "path")) return load_sample_csv(cfg.get("data", "path"));
    // synthetic fallback for demos: a scenario block
    if (cfg.has("scenario", "signal")) {
        const std::string sig = cfg.get("scenario", "signal");
        const std::size_t n = static_cast<std::size_t>(cfg.get_long("scenario", "n", 1000));
        const ErrorModel noise = parse_error_model(cfg);
        Rng rng = Rng::substream(derive_seed(seed, 0xDA7A), 0);
        if (sig == "uniform") {
            const Box box = parse_box(cfg, "scenario", "box", Box({-2.5, -2.5}, {2.5, 2.5}));
            return sample_scenario(Scenario::uniform(box, noise, n), rng);
        }
        if (sig == "normal") {
            auto mean = cfg.get_doubles("scenario", "mean");
            if (mean.empty()) mean = {0.0, 0.0};
            return sample_scenario(Scenario::gaussian(mean, Matrix::identity(mean.size()), noise, n), rng);
        }
        if (sig == "trimodal") {
            // the map demo's mixture of three round normals
            std::vector<GaussianComponent> comps(3);
            auto diag = [](double v) {
                Matrix m = Matrix::identity(2);
                m(0, 0) = m(1, 1) = v;
                return m;
            };
            comps[0] = {1.0 / 3.0, {-0.4, -0.57}, diag(0.2), {}};
            comps[1] = {1.0 / 3.0, {1.5, -0.6}, diag(0.25), {}};
            comps[2] = {1.0 / 3.0, {0.45, 1.6}, diag(0.5), {}};
            return sample_scenario(Scenario::mixture(comps, noise, n), rng);
        }
        throw ConfigError("config: scenario.signal '" + sig + "' unknown (uniform|normal|trimodal)");
    }
    throw ConfigError("no input data: pass --data, set data.path, or define a [scenario] block");
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& writer) {
    std::ofstream out(path);
    if (!out) throw NumericError("cannot write " + path.string());
    writer(out);
}

int cmd_test(const CommonArgs& args) {
    const RunConfig cfg = load_config(args);
    const std::uint64_t seed = config_seed(cfg, args);
    const Sample sample = obtain_sample(cfg, args, seed);
    const TripleGrid grid = parse_grid(cfg, sample.n);
    const ErrorModel error = parse_error_model(cfg);
    const TesterOptions opt = parse_tester_options(cfg, args, seed);
    DecisionReport rep = run_multiscale_test(sample, grid, make_quartic_kernel(2), error,
                                             opt.alpha, seed, opt);
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";

    const fs::path dir = resolve_out_dir(args);
    const std::string cfgtext = cfg.serialize();
    write_file(dir / "decisions.csv", [&](std::ostream& o) { write_decisions_csv(o, rep, cfgtext); });
    MultiscaleQuantile q;
    q.alpha = rep.alpha;
    q.kappa = rep.kappa_n;
    q.replications = opt.kappa_reps;
    q.seed = opt.kappa_seed;
    q.empirical_cdf_at_kappa = 1.0 - rep.alpha;
    write_file(dir / "quantile.csv", [&](std::ostream& o) { write_quantile_csv(o, q, cfgtext); });
    std::size_t rejections = 0;
    for (const auto& row : rep.rows)
        if (row.decision != Decision::Retain) ++rejections;
    std::cout << "tested " << rep.rows.size() << " triples, " << rejections
              << " rejections; wrote decisions.csv, quantile.csv to " << dir.string() << "\n";
    return 0;
}

int cmd_modes(const CommonArgs& args) {
    const RunConfig cfg = load_config(args);
    const std::uint64_t seed = config_seed(cfg, args);
    const Sample sample = obtain_sample(cfg, args, seed);
    const TripleGrid grid = parse_grid(cfg, sample.n);
    const ErrorModel error = parse_error_model(cfg);
    const TesterOptions opt = parse_tester_options(cfg, args, seed);

    MultiscaleTester tester(make_quartic_kernel(2), grid.triples, error, opt);
    const auto ev = tester.evaluate(sample);

    ModeOptions mopt;
    mopt.annulus.c = cfg.get_double("modes", "c", 5.0);
    mopt.annulus.lower_multiplier = cfg.get_double("modes", "lower_multiplier", 0.0);
    mopt.annulus.angle_tolerance = cfg.get_double("modes", "angle_tolerance_deg", 15.0) * M_PI / 180.0;
    mopt.threshold_constant = cfg.get_double("modes", "threshold_constant", 1.0);
    mopt.gamma = cfg.get_double("modes", "gamma", 1.0);

    std::vector<std::vector<double>> candidates;
    if (cfg.get("modes", "candidates", "auto") == "auto") {
        candidates = auto_candidates(grid.triples);
    } else {
        const auto v = cfg.get_doubles("modes", "candidates");
        if (v.size() % 2 != 0 || v.empty())
            throw ConfigError("config: modes.candidates needs x y pairs or 'auto'");
        for (std::size_t i = 0; i < v.size(); i += 2) candidates.push_back({v[i], v[i + 1]});
    }

    const auto reports = detect_modes(tester, ev, sample.n, candidates, mopt);
    const fs::path dir = resolve_out_dir(args);
    const std::string cfgtext = cfg.serialize();
    write_file(dir / "modes.csv", [&](std::ostream& o) { write_modes_csv(o, reports, seed, cfgtext); });
    DecisionReport rep = make_report(tester, ev, sample.n, mopt.gamma);
    rep.seed = seed;
    write_file(dir / "decisions.csv", [&](std::ostream& o) { write_decisions_csv(o, rep, cfgtext); });
    std::size_t detected = 0;
    for (const auto& r : reports) detected += r.detected ? 1 : 0;
    std::cout << "checked " << reports.size() << " candidates, " << detected
              << " detected; wrote modes.csv, decisions.csv to " << dir.string() << "\n";
    return 0;
}

int cmd_map(const CommonArgs& args) {
    const RunConfig cfg = load_config(args);
    const std::uint64_t seed = config_seed(cfg, args);
    const Sample sample = obtain_sample(cfg, args, seed);
    const TripleGrid grid = parse_grid(cfg, sample.n);
    const ErrorModel error = parse_error_model(cfg);
    const TesterOptions opt = parse_tester_options(cfg, args, seed);
    DecisionReport rep = run_multiscale_test(sample, grid, make_quartic_kernel(2), error,
                                             opt.alpha, seed, opt);
    const ArrowMap map = monotonicity_map(rep);
    const fs::path dir = resolve_out_dir(args);
    const std::string cfgtext = cfg.serialize();
    write_file(dir / "arrows.csv", [&](std::ostream& o) { write_arrows_csv(o, map, cfgtext); });
    write_file(dir / "map.svg", [&](std::ostream& o) { write_map_svg(o, map); });
    std::cout << "map with " << map.arrows.size() << " arrows; wrote arrows.csv, map.svg to "
              << dir.string() << "\n";
    return 0;
}

int cmd_calibrate(const CommonArgs& args) {
    const RunConfig cfg = load_config(args);
    const std::uint64_t seed = config_seed(cfg, args);

    ModeStudyConfig mc;
    mc.h0 = cfg.get_double("modes", "h0", 0.5);
    mc.sigma = cfg.get_double("error", "sigma", 0.075);
    mc.alpha = cfg.get_double("test", "alpha", 0.05);
    mc.seed = seed;
    mc.threads = args.threads;
    mc.null_box = parse_box(cfg, "calibrate", "box", Box({-2.5, -2.5}, {2.5, 2.5}));
    mc.kappa_reps = static_cast<std::size_t>(cfg.get_long("test", "kappa_reps", 1000));
    const auto cand = cfg.get_doubles("modes", "candidates");
    if (!cand.empty()) {
        if (cand.size() % 2 != 0) throw ConfigError("config: modes.candidates needs x y pairs");
        mc.candidates.clear();
        for (std::size_t i = 0; i < cand.size(); i += 2) mc.candidates.push_back({cand[i], cand[i + 1]});
    }
    const std::size_t n = static_cast<std::size_t>(cfg.get_long("scenario", "n", 1000));
    const std::size_t reps = static_cast<std::size_t>(cfg.get_long("run", "reps", 2000));

    ModeStudy study(mc);
    const auto cal = study.calibrate(n, reps, derive_seed(seed, 0xCA11));
    const fs::path dir = resolve_out_dir(args);
    write_file(dir / "calibration.csv", [&](std::ostream& o) {
        write_comment_header(o, seed, cfg.serialize());
        o << "gamma,achieved_level,target_reachable,reps\n";
        o << fmt(cal.gamma) << "," << fmt(cal.achieved_level) << ","
          << (cal.target_reachable ? "true" : "false") << "," << reps << "\n";
        o << "# level curve: margin quantiles\n";
        o << "# q,margin\n";
        for (int q = 0; q <= 20; ++q) {
            const std::size_t idx = std::min<std::size_t>(cal.margins.size() - 1,
                                                          cal.margins.size() * q / 20);
            o << "# " << fmt(q / 20.0, 4) << "," << fmt(cal.margins[idx]) << "\n";
        }
    });
    std::cout << "gamma = " << fmt(cal.gamma) << " (achieved level " << fmt(cal.achieved_level, 4)
              << (cal.target_reachable ? "" : ", target unreachable") << "); wrote calibration.csv to "
              << dir.string() << "\n";
    return 0;
}

int cmd_reproduce(const CommonArgs& args, int table, long reps) {
    const RunConfig cfg = load_config(args);
    const std::uint64_t seed = config_seed(cfg, args);
    const std::size_t r = reps > 0 ? static_cast<std::size_t>(reps)
                                   : static_cast<std::size_t>(cfg.get_long("run", "reps", 1000));
    const TableResult result = reproduce_table(table, r, seed, args.threads);
    const fs::path dir = resolve_out_dir(args);
    const std::string name = "table" + std::to_string(table) + ".csv";
    write_file(dir / name, [&](std::ostream& o) { write_table_csv(o, result, cfg.serialize()); });

    // comparison against the published numbers
    const auto refs = paper_reference(table);
    std::cout << "table " << table << " (" << r << " reps, " << fmt(result.wall_seconds, 3)
              << " s):\n";
    for (const auto& row : result.rows) {
        const PaperReference* ref = nullptr;
        for (const auto& c : refs)
            if (c.label == row.label) ref = &c;
        std::cout << "  " << row.label << ": " << fmt(row.estimate, 5) << " +- " << fmt(row.se, 3);
        if (ref) {
            const double tol = ref->tolerance > 0.0 ? ref->tolerance : 3.0 * row.se;
            const bool pass = std::abs(row.estimate - ref->value) <= tol;
            std::cout << "  [published " << fmt(ref->value, 5) << ", tol " << fmt(tol, 3) << ": "
                      << (pass ? "pass" : "FAIL") << "]";
        }
        std::cout << "\n";
    }
    std::cout << "wrote " << (dir / name).string() << "\n";
    return 0;
}

int cmd_simulate(const CommonArgs& args) {
    const RunConfig cfg = load_config(args);
    const std::uint64_t seed = config_seed(cfg, args);
    const Sample sample = obtain_sample(cfg, args, seed);
    const fs::path dir = resolve_out_dir(args);
    write_file(dir / "sample.csv", [&](std::ostream& o) {
        write_comment_header(o, seed, cfg.serialize());
        for (int k = 1; k <= sample.d; ++k) o << (k > 1 ? "," : "") << "y" << k;
        o << "\n";
        for (std::size_t i = 0; i < sample.n; ++i) {
            for (int k = 0; k < sample.d; ++k) o << (k > 0 ? "," : "") << fmt(sample.row(i)[k]);
            o << "\n";
        }
    });
    std::cout << "wrote " << sample.n << " observations to " << (dir / "sample.csv").string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiscale monotonicity and mode inference for multivariate deconvolution"};
    app.require_subcommand(1);

    CommonArgs targs, margs, maps, cargs, rargs, sargs;
    auto* t = app.add_subcommand("test", "run the simultaneous monotonicity tests");
    add_common(t, targs);
    auto* m = app.add_subcommand("modes", "detect modes via outward-decrease conjunctions");
    add_common(m, margs);
    auto* mp = app.add_subcommand("map", "produce a monotonicity map (CSV + SVG)");
    add_common(mp, maps);
    auto* ca = app.add_subcommand("calibrate", "calibrate the conjunction test to its nominal level");
    add_common(ca, cargs);
    auto* re = app.add_subcommand("reproduce", "rerun a published simulation table");
    int table = 0;
    re->add_option("-t,--table", table, "table id (1-8)")->required();
    add_common(re, rargs, /*needs_config=*/false);
    auto* si = app.add_subcommand("simulate", "draw a synthetic sample from a scenario");
    add_common(si, sargs);

    CLI11_PARSE(app, argc, argv);

    try {
        if (t->parsed()) return cmd_test(targs);
        if (m->parsed()) return cmd_modes(margs);
        if (mp->parsed()) return cmd_map(maps);
        if (ca->parsed()) return cmd_calibrate(cargs);
        if (re->parsed()) return cmd_reproduce(rargs, table, rargs.reps);
        if (si->parsed()) return cmd_simulate(sargs);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
