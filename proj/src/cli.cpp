#include "camc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "camc/anisotropy.hpp"
#include "camc/errors.hpp"
#include "camc/geometry_io.hpp"
#include "camc/helicoid_graph.hpp"
#include "camc/pnorm_dual.hpp"
#include "camc/twizzler.hpp"
#include "json.hpp"

namespace camc {

namespace {

using Json = nlohmann::ordered_json;

const char* figure_name(Figure f) { return f == Figure::Fig1 ? "fig1" : "fig2"; }

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void make_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

AnisotropyProfile profile_arg(const std::string& text) { return AnisotropyProfile::parse(text); }

void emit(std::ostream& out, const Json& summary, bool json) {
    if (json) {
        out << summary.dump(1) << '\n';
        return;
    }
    for (const auto& [key, value] : summary.items()) {
        out << key << ": ";
        if (value.is_string())
            out << value.get<std::string>();
        else
            out << value.dump();
        out << '\n';
    }
}

Json report_summary(const MeshEnergyReport& r) {
    Json j;
    j["interior_vertices"] = r.estimates.size();
    j["mean"] = r.mean;
    j["max_deviation"] = r.max_deviation;
    if (r.target) j["target"] = *r.target;
    j["bump_radius"] = r.bump_radius;
    j["bump_amplitude"] = r.bump_amplitude;
    return j;
}

double verify_tolerance(double target) { return std::max(0.01 * std::abs(target), 2e-2); }

struct TwizzlerRun {
    std::vector<SledState> states;
    GeneratingCurve curve;
    HelicoidalMesh mesh;
    double s_max = 0.0;
    std::optional<SledLoop> loop;
    std::size_t every = 1;
};

TwizzlerRun build_twizzler(const TwizzlerConfig& cfg) {
    const AnisotropyProfile profile = profile_arg(cfg.gamma);
    const SledParams params(cfg.Lambda, cfg.A, cfg.omega);
    const Branch branch = cfg.branch == "plus" ? Branch::Plus : Branch::Minus;
    const SledState start = sled_start(params, profile, branch);

    TwizzlerRun run;
    run.every = static_cast<std::size_t>(std::llround(cfg.ds / cfg.step));
    if (run.every == 0 || std::abs(static_cast<double>(run.every) * cfg.step - cfg.ds) > 1e-9 * cfg.ds)
        throw UsageError("--ds must be a positive multiple of --step");

    double length = cfg.s_max;
    if (!(length > 0.0)) {
        run.loop = find_sled_period(params, profile, start, cfg.step);
        if (run.loop) {
            length = run.loop->period;
        } else if (start.kappa != 0.0) {
            length = 2.0 * std::numbers::pi / std::abs(start.kappa);
        } else {
            throw DomainError("the sled does not close and the curve does not turn; pass --s-max");
        }
    }
    run.s_max = std::ceil(length / cfg.ds - 1e-9) * cfg.ds;
    run.states = trace_sled(params, profile, start, run.s_max, cfg.step);
    run.curve = generating_curve(run.states);
    run.mesh = sweep(subsample(run.curve, run.every), params, cfg.theta_samples, cfg.turns, cfg.C);
    return run;
}

struct TwizzlerPaths {
    std::string obj;
    std::string sled_csv;
    std::string sled_svg;
    std::string curve_csv;
    std::string curve_svg;
};

std::vector<std::string> write_twizzler(const TwizzlerRun& run, const TwizzlerPaths& paths) {
    const std::size_t stride = std::max<std::size_t>(1, run.every / 4);
    CurveTable sled, curve;
    std::vector<double> s, e1, e2, phi, kappa, x, y;
    std::vector<Point2> sled_pts, curve_pts;
    for (std::size_t k = 0; k < run.states.size(); k += stride) {
        const SledState& st = run.states[k];
        const CurvePoint& cp = run.curve.samples[k];
        s.push_back(st.s);
        e1.push_back(st.eta1);
        e2.push_back(st.eta2);
        phi.push_back(st.phi);
        kappa.push_back(st.kappa);
        x.push_back(cp.x);
        y.push_back(cp.y);
        sled_pts.push_back({st.eta1, st.eta2});
        curve_pts.push_back({cp.x, cp.y});
    }
    sled.add("s", s);
    sled.add("eta1", e1);
    sled.add("eta2", e2);
    sled.add("phi", phi);
    sled.add("kappa", kappa);
    curve.add("s", s);
    curve.add("x", x);
    curve.add("y", y);
    curve.add("phi", phi);

    std::vector<std::string> files;
    if (!paths.sled_csv.empty()) {
        write_csv(sled, paths.sled_csv);
        files.push_back(paths.sled_csv);
    }
    if (!paths.sled_svg.empty()) {
        write_svg_polyline(sled_pts, paths.sled_svg);
        files.push_back(paths.sled_svg);
    }
    if (!paths.curve_csv.empty()) {
        write_csv(curve, paths.curve_csv);
        files.push_back(paths.curve_csv);
    }
    if (!paths.curve_svg.empty()) {
        write_svg_polyline(curve_pts, paths.curve_svg);
        files.push_back(paths.curve_svg);
    }
    if (!paths.obj.empty()) {
        write_obj(run.mesh.mesh, paths.obj, "helicoidal surface");
        files.push_back(paths.obj);
    }
    return files;
}

TriMesh graph_mesh(const GraphProfile& gp, int theta_samples) {
    const std::size_t every = std::max<std::size_t>(1, gp.samples.size() / 200);
    std::vector<GraphSample> rows;
    for (std::size_t k = 0; k < gp.samples.size(); k += every) rows.push_back(gp.samples[k]);
    if (rows.back().r != gp.samples.back().r) rows.push_back(gp.samples.back());
    const auto cols = static_cast<std::size_t>(theta_samples);
    TriMesh mesh;
    for (const GraphSample& g : rows)
        for (std::size_t j = 0; j < cols; ++j) {
            const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(cols - 1);
            mesh.vertices.emplace_back(g.r * std::cos(t), g.r * std::sin(t), g.g + gp.lambda * t);
        }
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        for (std::size_t j = 0; j + 1 < cols; ++j) {
            const int a = static_cast<int>(i * cols + j), b = a + 1;
            const int c = static_cast<int>((i + 1) * cols + j + 1), d = c - 1;
            mesh.faces.push_back({a, d, c});
            mesh.faces.push_back({a, c, b});
        }
    return mesh;
}

bool ends_with(const std::string& s, const std::string& tail) {
    return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

int run_wulff(const WulffConfig& cfg, bool json, std::ostream& out) {
    const AnisotropyProfile profile = profile_arg(cfg.gamma);
    const ConvexityReport conv = convexity_check(profile);
    const WulffMesh wm = wulff_mesh(profile, cfg.nu3_samples, cfg.azimuth_samples);
    write_obj(wm.mesh, cfg.out, "Wulff shape " + profile.describe());
    Json j;
    j["command"] = "wulff";
    j["gamma"] = profile.describe();
    j["convex"] = conv.pass;
    j["min_inv_mu1"] = conv.min_inv_mu1;
    j["min_inv_mu2"] = conv.min_inv_mu2;
    j["vertices"] = wm.mesh.vertices.size();
    j["faces"] = wm.mesh.faces.size();
    j["files"] = Json::array({cfg.out});
    emit(out, j, json);
    return conv.pass ? 0 : 1;
}

int run_twizzler(const TwizzlerConfig& cfg, bool json, std::ostream& out) {
    const TwizzlerRun run = build_twizzler(cfg);
    TwizzlerPaths paths;
    paths.obj = cfg.out;
    paths.sled_csv = cfg.sled_csv;
    paths.curve_csv = cfg.curve_csv;
    paths.curve_svg = cfg.svg;
    const std::vector<std::string> files = write_twizzler(run, paths);
    const AnisotropyProfile profile = profile_arg(cfg.gamma);
    const SledParams params(cfg.Lambda, cfg.A, cfg.omega);
    double worst = 0.0;
    for (const SledState& st : run.states)
        worst = std::max(worst, std::abs(eq_H_residual(params, profile, st.eta1, st.eta2)));
    Json j;
    j["command"] = "twizzler";
    j["gamma"] = profile.describe();
    j["Lambda"] = cfg.Lambda;
    j["A"] = cfg.A;
    j["omega"] = cfg.omega;
    j["s_max"] = run.s_max;
    if (run.loop) {
        j["sled_period"] = run.loop->period;
        j["sled_turning"] = run.loop->turning;
    }
    j["max_sled_residual"] = worst;
    j["rows"] = run.mesh.rows;
    j["cols"] = run.mesh.cols;
    j["files"] = files;
    emit(out, j, json);
    return 0;
}

int run_graph(const GraphConfig& cfg, bool json, std::ostream& out) {
    const AnisotropyProfile profile = profile_arg(cfg.gamma);
    const GraphProfile gp =
        integrate_profile(profile, cfg.lambda, cfg.Lambda, cfg.C, cfg.r_min, cfg.r_max, cfg.step, cfg.root);
    CurveTable table;
    std::vector<double> r, g, gr;
    for (const GraphSample& s : gp.samples) {
        r.push_back(s.r);
        g.push_back(s.g);
        gr.push_back(s.g_r);
    }
    table.add("r", r);
    table.add("g", g);
    table.add("g_r", gr);
    if (ends_with(cfg.out, ".obj"))
        write_obj(graph_mesh(gp, cfg.theta_samples), cfg.out, "helicoidal graph");
    else
        write_csv(table, cfg.out);
    Json j;
    j["command"] = "graph";
    j["gamma"] = profile.describe();
    j["lambda"] = cfg.lambda;
    j["Lambda"] = cfg.Lambda;
    j["C"] = cfg.C;
    j["samples"] = gp.samples.size();
    j["g_end"] = gp.samples.back().g;
    j["files"] = Json::array({cfg.out});
    emit(out, j, json);
    return 0;
}

int run_pnorm(const PNormConfig& cfg, bool json, std::ostream& out) {
    const PNormSpec spec = PNormSpec::make(cfg.p, cfg.c);
    Json j;
    j["command"] = "pnorm";
    j["mode"] = cfg.mode;
    j["p"] = spec.p;
    j["q"] = spec.q;
    j["c"] = spec.c;
    j["annulus"] = Json::array({cfg.a_min, cfg.a_max});

    const ConjugatePair pair =
        conjugate_helicoid(spec, cfg.a_min, cfg.a_max, cfg.angular_samples, cfg.radial_samples);
    if (cfg.mode == "catenoid") {
        CurveTable cat;
        std::vector<double> om, z, zo;
        for (const CatenoidSample& s : pair.catenoid) {
            om.push_back(s.omega);
            z.push_back(s.z);
            zo.push_back(s.z_omega);
        }
        cat.add("omega", om);
        cat.add("z", z);
        cat.add("z_omega", zo);
        write_csv(cat, cfg.out);
        j["samples"] = om.size();
        j["files"] = Json::array({cfg.out});
    } else if (cfg.mode == "helicoid") {
        CurveTable hel;
        std::vector<double> om, th, w;
        for (const HelicoidSample& s : pair.helicoid) {
            om.push_back(s.omega);
            th.push_back(s.theta);
            w.push_back(s.w);
        }
        hel.add("omega", om);
        hel.add("theta", th);
        hel.add("w", w);
        write_csv(hel, cfg.out);
        j["samples"] = om.size();
        j["period"] = pair.period;
        j["files"] = Json::array({cfg.out});
    } else {
        const double extent = std::ceil((cfg.a_max * 1.5 + 4 * cfg.h) / cfg.h) * cfg.h;
        const RegionFn region = pnorm_annulus(cfg.p, cfg.a_min, cfg.a_max, cfg.axis_gap);
        const ResidualGrid rc = m_operator_residual(spec, catenoid_grid(spec, extent, cfg.h), region);
        const ResidualGrid rw = m_operator_residual(spec, conjugate_grid(spec, extent, cfg.h), region, true);
        j["h"] = cfg.h;
        j["axis_gap"] = cfg.axis_gap;
        j["points"] = rc.count();
        j["catenoid_residual"] = rc.max_abs();
        j["conjugate_residual"] = rw.max_abs();
        j["period"] = pair.period;
        j["test_radii"] = pair.test_radii;
        j["period_by_area"] = pair.period_by_area;
        if (!cfg.out.empty()) {
            write_text(cfg.out, j.dump(1) + "\n");
            j["files"] = Json::array({cfg.out});
        }
    }
    emit(out, j, json);
    return 0;
}

int run_verify(const VerifyConfig& cfg, bool json, std::ostream& out) {
    const AnisotropyProfile profile = profile_arg(cfg.gamma);
    const TriMesh mesh = read_obj(cfg.in);
    const MeshEnergyReport report = verify_mesh(
        mesh, profile, cfg.has_target ? std::optional<double>(cfg.target) : std::nullopt, cfg.relative_amplitude);
    if (!cfg.report.empty()) write_text(cfg.report, report_json(report));
    Json j = report_summary(report);
    j["command"] = "verify";
    j["gamma"] = profile.describe();
    bool pass = true;
    if (cfg.has_target) {
        j["tolerance"] = verify_tolerance(cfg.target);
        pass = report.max_deviation < verify_tolerance(cfg.target);
        j["pass"] = pass;
    }
    if (!cfg.report.empty()) j["files"] = Json::array({cfg.report});
    emit(out, j, json);
    return pass ? 0 : 1;
}

int run_figures_command(const FiguresConfig& cfg, bool json, std::ostream& out) {
    Json all = Json::array();
    bool pass = true;
    for (Figure f : cfg.which) {
        const FigureResult r = run_figures(f, cfg.outdir);
        Json j = report_summary(r.report);
        j["figure"] = figure_name(f);
        j["tolerance"] = r.tolerance;
        j["pass"] = r.pass;
        j["files"] = r.files;
        all.push_back(j);
        pass = pass && r.pass;
    }
    Json summary;
    summary["command"] = "figures";
    summary["pass"] = pass;
    summary["figures"] = all;
    emit(out, summary, json);
    return pass ? 0 : 1;
}

}  // namespace

RunConfig parse_args(int argc, const char* const* argv) {
    RunConfig cfg;
    CLI::App app{"Constant anisotropic mean curvature surfaces", "camc"};
    app.add_flag("--json", cfg.json, "Machine-readable run summary on stdout");
    app.require_subcommand(1);

    auto* wulff = app.add_subcommand("wulff", "Export the Wulff shape of an energy density");
    wulff->add_option("--gamma", cfg.wulff.gamma, "isotropic | rapini:e=<r> | dirichlet | poly:c0,c1,...");
    wulff->add_option("--nu3-samples", cfg.wulff.nu3_samples)->check(CLI::Range(2, 100000));
    wulff->add_option("--azimuth-samples", cfg.wulff.azimuth_samples)->check(CLI::Range(3, 100000));
    wulff->add_option("--out", cfg.wulff.out, "OBJ path")->required();

    auto* tw = app.add_subcommand("twizzler", "Trace the sled and sweep the helicoidal surface");
    tw->add_option("--gamma", cfg.twizzler.gamma);
    tw->add_option("--Lambda", cfg.twizzler.Lambda);
    tw->add_option("--A", cfg.twizzler.A);
    tw->add_option("--omega", cfg.twizzler.omega);
    tw->add_option("--branch", cfg.twizzler.branch)->check(CLI::IsMember({"plus", "minus"}));
    tw->add_option("--s-max", cfg.twizzler.s_max, "Arc length to trace (default: one sled period)")
        ->check(CLI::NonNegativeNumber);
    tw->add_option("--step", cfg.twizzler.step)->check(CLI::PositiveNumber);
    tw->add_option("--ds", cfg.twizzler.ds, "Arc-length spacing of mesh rows")->check(CLI::PositiveNumber);
    tw->add_option("--theta-samples", cfg.twizzler.theta_samples)->check(CLI::Range(2, 1000000));
    tw->add_option("--turns", cfg.twizzler.turns)->check(CLI::PositiveNumber);
    tw->add_option("--C", cfg.twizzler.C, "Vertical offset");
    tw->add_option("--out", cfg.twizzler.out, "OBJ path")->required();
    tw->add_option("--sled-csv", cfg.twizzler.sled_csv);
    tw->add_option("--curve-csv", cfg.twizzler.curve_csv);
    tw->add_option("--svg", cfg.twizzler.svg, "Generating curve polyline");

    auto* gr = app.add_subcommand("graph", "Integrate the radial profile of a helicoidal graph");
    gr->add_option("--gamma", cfg.graph.gamma);
    gr->add_option("--lambda", cfg.graph.lambda);
    gr->add_option("--Lambda", cfg.graph.Lambda);
    gr->add_option("--C", cfg.graph.C);
    gr->add_option("--r-min", cfg.graph.r_min)->check(CLI::PositiveNumber);
    gr->add_option("--r-max", cfg.graph.r_max)->check(CLI::PositiveNumber);
    gr->add_option("--step", cfg.graph.step)->check(CLI::PositiveNumber);
    gr->add_option("--root", cfg.graph.root)->check(CLI::NonNegativeNumber);
    gr->add_option("--theta-samples", cfg.graph.theta_samples)->check(CLI::Range(3, 100000));
    gr->add_option("--out", cfg.graph.out, "CSV profile table or OBJ surface")->required();

    auto* pn = app.add_subcommand("pnorm", "p-norm catenoid, its conjugate and the duality check");
    std::vector<double> annulus;
    pn->add_option("--mode", cfg.pnorm.mode)->check(CLI::IsMember({"catenoid", "helicoid", "check"}));
    pn->add_option("--p", cfg.pnorm.p)->check(CLI::Range(2, 64));
    pn->add_option("--c", cfg.pnorm.c)->check(CLI::PositiveNumber);
    pn->add_option("--annulus", annulus, "a_min,a_max")->delimiter(',')->expected(2);
    pn->add_option("--spacing", cfg.pnorm.h, "Grid spacing")->check(CLI::PositiveNumber);
    pn->add_option("--axis-gap", cfg.pnorm.axis_gap)->check(CLI::Range(0.0, 0.7));
    pn->add_option("--angular-samples", cfg.pnorm.angular_samples)->check(CLI::Range(2, 1000000));
    pn->add_option("--radial-samples", cfg.pnorm.radial_samples)->check(CLI::Range(2, 1000000));
    pn->add_option("--out", cfg.pnorm.out);

    auto* vf = app.add_subcommand("verify", "Estimate anisotropic mean curvature on an OBJ mesh");
    vf->add_option("--gamma", cfg.verify.gamma);
    vf->add_option("--in", cfg.verify.in, "OBJ path")->required();
    vf->add_option("--report", cfg.verify.report, "JSON report path");
    auto* target = vf->add_option("--target", cfg.verify.target, "Expected constant value");
    vf->add_option("--relative-amplitude", cfg.verify.relative_amplitude)->check(CLI::PositiveNumber);

    auto* fig = app.add_subcommand("figures", "Regenerate the figure pipelines");
    std::string which = "all";
    fig->add_option("--which", which)->check(CLI::IsMember({"fig1", "fig2", "all"}));
    fig->add_option("--outdir", cfg.figures.outdir)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        cfg.command = "help";
        cfg.help = app.help();
        return cfg;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    for (const auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (cfg.command == "wulff" || cfg.command == "twizzler" || cfg.command == "graph" || cfg.command == "verify") {
        const std::string& g = cfg.command == "wulff"      ? cfg.wulff.gamma
                               : cfg.command == "twizzler" ? cfg.twizzler.gamma
                               : cfg.command == "graph"    ? cfg.graph.gamma
                                                           : cfg.verify.gamma;
        profile_arg(g);
    }
    if (cfg.command == "twizzler" && cfg.twizzler.omega == 0.0) throw UsageError("--omega must be nonzero");
    if (cfg.command == "graph" && !(cfg.graph.r_max > cfg.graph.r_min))
        throw UsageError("--r-max must exceed --r-min");
    if (cfg.command == "pnorm") {
        if (!annulus.empty()) {
            cfg.pnorm.a_min = annulus[0];
            cfg.pnorm.a_max = annulus[1];
        }
        if (cfg.pnorm.p % 2 != 0) throw UsageError("--p must be even");
        if (cfg.pnorm.mode != "check" && cfg.pnorm.out.empty())
            throw UsageError("--out is required for --mode " + cfg.pnorm.mode);
        if (!(cfg.pnorm.a_max > cfg.pnorm.a_min) || !(cfg.pnorm.a_min > cfg.pnorm.c))
            throw UsageError("need --c < --a-min < --a-max");
    }
    cfg.verify.has_target = target->count() > 0;
    if (which == "fig1")
        cfg.figures.which = {Figure::Fig1};
    else if (which == "fig2")
        cfg.figures.which = {Figure::Fig2};
    return cfg;
}

FigureResult run_figures(Figure which, const std::string& outdir) {
    make_dir(outdir);
    const double e = which == Figure::Fig1 ? 0.2 : -0.3;
    const std::string name = figure_name(which);

    FigureResult result;
    result.figure = which;

    const AnisotropyProfile profile = AnisotropyProfile::rapini_papoular(e);
    const std::string wulff_path = join(outdir, name + "_wulff.obj");
    write_obj(wulff_mesh(profile, 64, 128).mesh, wulff_path, "Wulff shape " + profile.describe());
    result.files.push_back(wulff_path);

    TwizzlerConfig cfg;
    cfg.gamma = profile.describe();
    cfg.Lambda = 1.0;
    cfg.A = 0.5;
    cfg.omega = 1.0;
    const TwizzlerRun run = build_twizzler(cfg);
    TwizzlerPaths paths;
    paths.sled_csv = join(outdir, name + "_sled.csv");
    paths.sled_svg = join(outdir, name + "_sled.svg");
    paths.curve_csv = join(outdir, name + "_curve.csv");
    paths.curve_svg = join(outdir, name + "_curve.svg");
    paths.obj = join(outdir, name + "_twizzler.obj");
    for (const std::string& f : write_twizzler(run, paths)) result.files.push_back(f);

    const TriMesh surface = read_obj(result.files.back());
    result.report = verify_mesh(surface, profile, cfg.Lambda);
    result.tolerance = verify_tolerance(cfg.Lambda);
    result.pass = result.report.max_deviation < result.tolerance;
    const std::string report_path = join(outdir, name + "_verify.json");
    write_text(report_path, report_json(result.report));
    result.files.push_back(report_path);
    return result;
}

int run(const RunConfig& config, std::ostream& out) {
    if (config.command == "help") {
        out << config.help;
        return 0;
    }
    if (config.command == "wulff") return run_wulff(config.wulff, config.json, out);
    if (config.command == "twizzler") return run_twizzler(config.twizzler, config.json, out);
    if (config.command == "graph") return run_graph(config.graph, config.json, out);
    if (config.command == "pnorm") return run_pnorm(config.pnorm, config.json, out);
    if (config.command == "verify") return run_verify(config.verify, config.json, out);
    if (config.command == "figures") return run_figures_command(config.figures, config.json, out);
    throw UsageError("unknown command '" + config.command + "'");
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        return run(parse_args(argc, argv), out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\nrun with --help for usage\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace camc
