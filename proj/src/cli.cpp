#include "ppgeo/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "CLI11.hpp"
#include "ppgeo/config.hpp"
#include "ppgeo/errors.hpp"
#include "ppgeo/monge_ampere.hpp"
#include "ppgeo/report_io.hpp"

namespace ppgeo {

namespace fs = std::filesystem;

namespace {

struct Context {
    ExperimentConfig cfg;
    Setup setup;
    fs::path out_dir;
    std::ostream& out;
    std::ostream& err;
};

std::string file_safe(std::string s) {
    for (char& c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-')) c = '_';
    return s;
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + path.string() + "'");
    f << content;
    if (!f) throw ConfigError("failed writing '" + path.string() + "'");
}

std::string coordinate_header(int dim) { return dim == 1 ? "x" : "x,y"; }

std::string coordinates(const Point& x, int dim) {
    return dim == 1 ? format12(x[0]) : format12(x[0]) + "," + format12(x[1]);
}

std::shared_ptr<const SpatialGrid> mixed_grid(const Setup& s) { return s.dim() == 2 ? s.spatial : nullptr; }

DistanceReport single_value(Route route, double p, double value, const Setup& s) {
    DistanceReport r;
    r.p = p;
    r.route = route;
    r.value = r.extrapolated = value;
    r.h = s.moment->h();
    r.table.push_back({0.0, s.cls.volume(), value});
    return r;
}

int cmd_distance(Context& c, const std::string& pair, const std::string& route_id, double p) {
    const Route route = parse_route(route_id);
    if (!(p >= 1.0) || !std::isfinite(p)) throw ConfigError("--p must be a finite number >= 1");
    const ResolvedPair pr = resolve_pair(c.cfg, c.setup, pair);
    const auto& u0 = pr.first.dual;
    const auto& u1 = pr.second.dual;
    DistanceReport rep;
    switch (route) {
    case Route::kEndpoint:
        rep = single_value(route, p, dp_endpoint(u0, u1, p), c.setup);
        break;
    case Route::kDualOracle:
        rep = single_value(route, p, dp_dual_oracle(u0, u1, p), c.setup);
        break;
    case Route::kEnergyD1:
        if (p != 1.0) throw ConfigError("route energy_d1 computes d_1; pass --p 1");
        rep = single_value(route, p, d1_energy(u0, u1, mixed_grid(c.setup)), c.setup);
        break;
    case Route::kEpsilonLimit: {
        if (pr.singular) throw ConfigError("pair '" + pr.name + "' is singular; use --route singular_limit");
        const Obstacle f0 = pr.first.obstacle ? *pr.first.obstacle : obstacle_from_dual(u0, c.setup.spatial);
        const Obstacle f1 = pr.second.obstacle ? *pr.second.obstacle : obstacle_from_dual(u1, c.setup.spatial);
        rep = dp_limit(f0, f1, c.setup.family, p);
        break;
    }
    case Route::kSingularLimit:
        rep = dp_singular(u0, u1, p, c.cfg.harness.singular_caps);
        break;
    }
    auto j = to_json(rep);
    j["pair"] = pr.name;
    const std::string stem = "distance_" + file_safe(pr.name) + "_" + route_name(route) + "_p" + format12(p);
    write_file(c.out_dir / (stem + ".json"), dump_json(j));
    write_file(c.out_dir / (stem + ".csv"), to_csv(rep));
    c.out << "d_" << format12(p) << "(" << pr.name << ") = " << format12(rep.value) << "  [" << route_name(route)
          << (rep.converged ? "" : ", not converged") << "]\n";
    return kExitOk;
}

int cmd_geodesic(Context& c, const std::string& pair, std::vector<double> times) {
    if (times.empty()) times = c.cfg.geodesic_times;
    for (double t : times)
        if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("--t values must lie in [0, 1]");
    const ResolvedPair pr = resolve_pair(c.cfg, c.setup, pair);
    const auto& g = *c.setup.spatial;
    const int samples = std::max(4, static_cast<int>(std::lround(1.0 / g.h())));
    const GeodesicCurve curve(pr.first.dual, pr.second.dual, samples);
    std::vector<PrimalPotential> columns;
    for (double t : times) columns.push_back(to_primal(curve.at(t), c.setup.spatial));

    std::string csv = coordinate_header(g.dim());
    for (double t : times) csv += ",u_t=" + format12(t);
    csv += "\n";
    for (std::size_t k = 0; k < g.size(); ++k) {
        csv += coordinates(g.node(k), g.dim());
        for (const auto& col : columns) csv += "," + format12(col[k]);
        csv += "\n";
    }
    const CurveReport checks = curve_checks(curve, c.setup.spatial);
    ojson j{{"format_version", kReportFormatVersion}, {"pair", pr.name}, {"times", times}, {"time_samples", samples},
            {"checks", to_json(checks)}};
    const std::string stem = "geodesic_" + file_safe(pr.name);
    write_file(c.out_dir / (stem + ".csv"), csv);
    write_file(c.out_dir / (stem + ".json"), dump_json(j));
    c.out << "geodesic " << pr.name << ": " << times.size() << " times, chord violation "
          << format12(checks.chord_violation) << ", Lipschitz " << format12(checks.lipschitz_measured) << " <= "
          << format12(checks.lipschitz_bound) << "\n";
    return kExitOk;
}

int cmd_envelope(Context& c, const std::string& name) {
    const ResolvedPotential rp = resolve_potential(c.cfg, c.setup, name);
    if (!rp.obstacle) throw ConfigError("potential '" + rp.name + "' is not an obstacle");
    const EnvelopeRecord rec = envelope(*rp.obstacle, c.setup.moment);
    const BermanResult br = berman_residual(rec);
    const auto& g = *c.setup.spatial;
    std::string csv = coordinate_header(g.dim()) + ",obstacle,envelope,contact\n";
    std::size_t contact = 0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        contact += rec.contact[k];
        csv += coordinates(g.node(k), g.dim()) + "," + format12(rec.obstacle.values[k]) + "," +
               format12(rec.primal[k]) + "," + (rec.contact[k] ? "1" : "0") + "\n";
    }
    ojson j{{"format_version", kReportFormatVersion},
            {"potential", rp.name},
            {"hessian_bound", rec.hessian_bound},
            {"contact_tol", rec.contact_tol},
            {"contact_fraction", static_cast<double>(contact) / static_cast<double>(g.size())},
            {"growth_flags", rec.growth_flags},
            {"berman_residual", br.residual},
            {"max_density", br.max_density},
            {"clamped_mass", br.clamped_mass}};
    const std::string stem = "envelope_" + file_safe(rp.name);
    write_file(c.out_dir / (stem + ".csv"), csv);
    write_file(c.out_dir / (stem + ".json"), dump_json(j));
    c.out << "envelope " << rp.name << ": contact on " << contact << " of " << g.size() << " nodes, Berman residual "
          << format12(br.residual) << "\n";
    return kExitOk;
}

int cmd_ma(Context& c, const std::string& name) {
    const ResolvedPotential rp = resolve_potential(c.cfg, c.setup, name);
    const AtomicMeasure mu = ma_atomic(rp.dual);
    const DensityField rho = ma_density(to_primal(rp.dual, c.setup.spatial), c.setup.cls.volume());
    const int dim = c.setup.dim();
    std::string csv = coordinate_header(dim) + ",mass\n";
    for (const auto& a : mu.atoms) csv += coordinates(a.location, dim) + "," + format12(a.mass) + "\n";
    ojson j{{"format_version", kReportFormatVersion},
            {"potential", rp.name},
            {"atoms", mu.atoms.size()},
            {"total_mass", mu.total_mass},
            {"moment_weight_sum", c.setup.moment->total_weight()},
            {"density_total", rho.total},
            {"density_clamped_mass", rho.clamped_mass}};
    const std::string stem = "ma_" + file_safe(rp.name);
    write_file(c.out_dir / (stem + ".csv"), csv);
    write_file(c.out_dir / (stem + ".json"), dump_json(j));
    c.out << "MA(" << rp.name << "): " << mu.atoms.size() << " atoms, mass " << format12(mu.total_mass)
          << ", density route " << format12(rho.total) << "\n";
    return kExitOk;
}

int cmd_energy(Context& c, const std::string& name) {
    const ResolvedPotential rp = resolve_potential(c.cfg, c.setup, name);
    const double e = energy(rp.dual, mixed_grid(c.setup));
    ojson j{{"format_version", kReportFormatVersion}, {"potential", rp.name}, {"energy", e}};
    write_file(c.out_dir / ("energy_" + file_safe(rp.name) + ".json"), dump_json(j));
    c.out << "E(" << rp.name << ") = " << format12(e) << "\n";
    return kExitOk;
}

std::vector<std::string> split_ids(const std::string& list) {
    std::vector<std::string> ids;
    std::string cur;
    auto flush = [&] {
        const auto b = cur.find_first_not_of(" \t");
        if (b != std::string::npos) ids.push_back(cur.substr(b, cur.find_last_not_of(" \t") - b + 1));
        cur.clear();
    };
    for (char ch : list) {
        if (ch == ',')
            flush();
        else
            cur += ch;
    }
    flush();
    return ids;
}

int cmd_verify(Context& c, const std::string& selection) {
    const auto ids = selection == "all" ? suite_ids() : split_ids(selection);
    if (ids.empty()) {
        c.err << "warning: no suites selected; nothing to verify\n";
        return kExitOk;
    }
    for (const auto& id : ids)
        if (std::find(suite_ids().begin(), suite_ids().end(), id) == suite_ids().end())
            throw ConfigError("unknown suite '" + id + "'");
    std::vector<SuiteReport> reports;
    for (const auto& id : ids) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            reports.push_back(run_suite(id, c.setup));
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            TheoremReport failed;
            failed.id = id + ".error";
            failed.statement = e.what();
            failed.unit = "count";
            failed.add("exception", 1.0);
            failed.finalize();
            reports.push_back({id, {failed}});
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        c.out << id << ": " << (reports.back().pass() ? "PASS" : "FAIL") << "\n";
        c.err << id << " finished in " << format12(std::round(secs * 100.0) / 100.0) << " s\n";
        write_file(c.out_dir / "verify" / (id + ".json"), dump_json(to_json(reports.back())));
    }
    write_file(c.out_dir / "verify_report.json", dump_json(verify_json(reports, c.cfg)));
    const std::string text = verify_text(reports);
    write_file(c.out_dir / "verify_report.txt", text + "\ncoverage\n" + coverage_text());
    const bool all = std::all_of(reports.begin(), reports.end(), [](const SuiteReport& r) { return r.pass(); });
    c.out << "overall: " << (all ? "PASS" : "FAIL") << "\n";
    return all ? kExitOk : kExitVerificationFailed;
}

int cmd_corpus(Context& c, const std::string& filter) {
    for (const auto* e : catalog_filter(filter))
        c.out << e->name << (e->singular ? "  [singular]" : "") << "\n    " << e->note << "\n";
    for (const auto& p : c.cfg.pairs)
        if (p.name.find(filter) != std::string::npos)
            c.out << p.name << "  [config]\n    " << p.first << " against " << p.second << "\n";
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite-energy distances and geodesics in the toric model", "ppgeo"};
    app.fallthrough();
    app.require_subcommand(1);
    std::string config_path;
    int dim = 1;
    std::uint64_t seed = 0;
    std::string out_dir = "ppgeo-out";
    app.add_option("--config", config_path, "Experiment config (JSON)");
    auto* dim_opt = app.add_option("--dim", dim, "Dimension of the built-in defaults when no config is given")
                        ->check(CLI::IsMember({1, 2}));
    auto* seed_opt = app.add_option("--seed", seed, "Override the config seed");
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();

    std::string pair, route = "epsilon_limit", potential, suites = "all", filter;
    double p = 1.0;
    std::vector<double> times;

    auto* distance = app.add_subcommand("distance", "d_p between the two potentials of a pair");
    distance->add_option("--pair", pair, "Config or bundled pair")->required();
    distance->add_option("--route", route, "epsilon_limit, endpoint, dual_oracle, energy_d1, singular_limit")
        ->capture_default_str();
    distance->add_option("--p", p, "Exponent p >= 1")->capture_default_str();

    auto* geodesic = app.add_subcommand("geodesic", "Primal samples of the geodesic and curve checks");
    geodesic->add_option("--pair", pair, "Config or bundled pair")->required();
    geodesic->add_option("--t", times, "Comma-separated times in [0, 1]")->delimiter(',');

    auto* env = app.add_subcommand("envelope", "Envelope of an obstacle with contact set and regularity data");
    env->add_option("--potential", potential, "Obstacle potential")->required();
    auto* ma = app.add_subcommand("ma", "Monge-Ampere measure of a potential");
    ma->add_option("--potential", potential, "Potential")->required();
    auto* en = app.add_subcommand("energy", "Monge-Ampere energy of a potential");
    en->add_option("--potential", potential, "Potential")->required();

    auto* verify = app.add_subcommand("verify", "Run verification suites");
    verify->add_option("--suite", suites, "Comma-separated suite ids or 'all'")->capture_default_str();

    auto* corpus = app.add_subcommand("corpus", "List bundled and configured pairs");
    corpus->add_option("--filter", filter, "Substring of the pair name");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        ExperimentConfig cfg = config_path.empty() ? ExperimentConfig::defaults(dim)
                                                   : ExperimentConfig::from_file(config_path);
        if (!config_path.empty() && dim_opt->count() > 0 && dim != cfg.dimension)
            throw ConfigError("--dim " + std::to_string(dim) + " contradicts the config dimension");
        if (seed_opt->count() > 0) cfg.harness.seed = seed;
        if (corpus->parsed()) {
            Context c{cfg, Setup::defaults(cfg.dimension), out_dir, out, err};
            return cmd_corpus(c, filter);
        }
        Context c{cfg, cfg.setup(), out_dir, out, err};
        if (distance->parsed()) return cmd_distance(c, pair, route, p);
        if (geodesic->parsed()) return cmd_geodesic(c, pair, times);
        if (env->parsed()) return cmd_envelope(c, potential);
        if (ma->parsed()) return cmd_ma(c, potential);
        if (en->parsed()) return cmd_energy(c, potential);
        if (verify->parsed()) return cmd_verify(c, suites);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitConfigError;
}

} // namespace ppgeo
