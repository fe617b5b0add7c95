#include "ppgeo/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "ppgeo/errors.hpp"
#include "ppgeo/geodesics.hpp"
#include "ppgeo/kernels.hpp"
#include "ppgeo/metric.hpp"
#include "ppgeo/monge_ampere.hpp"
#include "ppgeo/parallel.hpp"

namespace ppgeo {

namespace {

constexpr double kIdentity = 1e-9;
constexpr double kConvergence = 0.02;
constexpr double kTiny = std::numeric_limits<double>::min();

// Independent generator streams, so a suite draws the same corpus no matter
// which other suites run.
enum Stream : std::uint64_t {
    kInvolution = 1,
    kMass,
    kRoute,
    kPythagorean,
    kPythagoreanLimit,
    kMaxInequality,
    kGeodesic,
    kEnergy,
    kComparison,
    kCompleteness,
    kCurvePolyhedral,
    kCurveSmooth,
    kMonotone,
    kSupBound,
    kAffine,
    kAxioms,
};

Rng stream_rng(const Setup& s, std::uint64_t stream) {
    return Rng(s.settings.seed + 0x9E3779B97F4A7C15ull * stream);
}

std::string label(const char* fmt, double a, double b = 0.0, double c = 0.0) {
    char buf[96];
    std::snprintf(buf, sizeof buf, fmt, a, b, c);
    return buf;
}

double rel(double err, double ref) { return std::abs(err) / std::max(std::abs(ref), kTiny); }

TheoremReport report(std::string id, std::string statement, std::string corpus, std::string unit, double tol) {
    TheoremReport r;
    r.id = std::move(id);
    r.statement = std::move(statement);
    r.corpus = std::move(corpus);
    r.unit = std::move(unit);
    r.tolerance = tol;
    return r;
}

DualPotential scaled(const DualPotential& u, double a) {
    std::vector<double> v(u.values().begin(), u.values().end());
    for (std::size_t k : u.grid()->active()) v[k] *= a;
    return DualPotential(u.grid(), std::move(v), u.provenance());
}

DualPotential combine(const DualPotential& a, double wa, const DualPotential& b, double wb) {
    std::vector<double> v(a.values().begin(), a.values().end());
    for (std::size_t k : a.grid()->active()) v[k] = wa * a[k] + wb * b[k];
    return DualPotential(a.grid(), std::move(v), "combination");
}

// Largest amount by which `b` exceeds `a` on included nodes.
double excess(const DualPotential& a, const DualPotential& b) {
    double worst = 0.0;
    for (std::size_t k : a.grid()->active()) worst = std::max(worst, b[k] - a[k]);
    return worst;
}

SpatialFunction pointwise_min(const SpatialFunction& a, const SpatialFunction& b) {
    std::vector<double> v(a.values.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::min(a.values[k], b.values[k]);
    return make_spatial(a.grid, std::move(v), "min");
}

std::vector<double> clamped_density(const PrimalPotential& u) {
    auto d = hessian_determinant(u.as_function());
    for (double& x : d) x = std::max(x, 0.0);
    return d;
}

// Argmax moment node of the primal at every spatial node.
std::vector<std::size_t> primal_argmax(const DualPotential& u, const SpatialGrid& space) {
    const MomentGrid& g = *u.grid();
    std::vector<double> out(space.size());
    std::vector<std::size_t> arg(space.size());
    const auto mx = g.axis_coords(0);
    const auto sx = space.axis_coords(0);
    if (g.dim() == 1) {
        conjugate_1d(mx, u.values(), sx, out, arg);
    } else {
        conjugate_2d(mx, g.axis_coords(1), u.values(), sx, space.axis_coords(1), out, arg);
    }
    return arg;
}

// Weighted L1 gap between two node fields on the same grid, relative to the
// mass of the reference.
double l1_gap(std::span<const double> field, std::span<const double> ref, double cell) {
    double gap = 0.0, mass = 0.0;
    for (std::size_t k = 0; k < ref.size(); ++k) {
        gap += std::abs(field[k] - ref[k]) * cell;
        mass += std::abs(ref[k]) * cell;
    }
    return mass > 0.0 ? gap / mass : gap;
}

std::vector<DualPotential> random_duals(const Setup& s, std::size_t count, std::uint64_t stream) {
    Rng rng = stream_rng(s, stream);
    std::vector<DualPotential> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(DualPotential::from_closed_form(s.moment, random_max_affine_dual(rng, s.dim())));
    return out;
}

std::vector<DualPair> hand_pairs(const Setup& s) {
    std::vector<DualPair> out;
    for (const auto& e : catalog()) {
        const auto& f = e.in_dim(s.dim());
        if (e.singular || !f.dual0) continue;
        out.push_back({e.name, DualPotential::from_closed_form(s.moment, *f.dual0),
                       DualPotential::from_closed_form(s.moment, *f.dual1)});
    }
    return out;
}

DualPair crossing(const Setup& s) {
    const auto& f = catalog_entry("crossing_pair").in_dim(s.dim());
    return {"crossing_pair", DualPotential::from_closed_form(s.moment, *f.dual0),
            DualPotential::from_closed_form(s.moment, *f.dual1)};
}

DualPair ramp(const Setup& s) {
    const auto& f = catalog_entry("ramp_pair").in_dim(s.dim());
    return {"ramp_pair", DualPotential::from_closed_form(s.moment, *f.dual0),
            DualPotential::from_closed_form(s.moment, *f.dual1)};
}

} // namespace

void TheoremReport::finalize() {
    worst_slack = cases.empty() ? 0.0 : -std::numeric_limits<double>::infinity();
    for (const auto& c : cases) {
        const double v = std::isnan(c.slack) ? std::numeric_limits<double>::infinity() : c.slack;
        worst_slack = std::max(worst_slack, v);
    }
    pass = worst_slack <= tolerance;
}

bool SuiteReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const TheoremReport& r) { return r.pass; });
}

Setup::Setup(ClassBody cls_in, int moment_cells, double half_width, int spatial_cells, std::vector<double> schedule,
             int epsilon_moment_cells, HarnessSettings settings_in)
    : cls(std::move(cls_in)),
      moment(MomentGrid::make(cls.body(), moment_cells)),
      spatial(SpatialGrid::centered(cls.dim(), half_width, spatial_cells)),
      family(cls, std::move(schedule), epsilon_moment_cells),
      settings(std::move(settings_in)) {
    for (double p : settings.p_values)
        if (!(p >= 1.0) || !std::isfinite(p)) throw ConfigError("harness: p values must be finite and >= 1");
    const Box box = cls.body().bounding_box();
    for (int a = 0; a < cls.dim(); ++a)
        if (box.lo[a] < -half_width || box.hi[a] > half_width)
            throw ConfigError("harness: the spatial box must contain the class body");
}

Setup Setup::defaults(int dim) {
    if (dim == 1) return Setup(ClassBody::standard(1), 1024, 4.0, 256, EpsilonFamily::default_schedule(), 1024, {});
    if (dim == 2) return Setup(ClassBody::standard(2), 128, 4.0, 128, EpsilonFamily::default_schedule(), 128, {});
    throw ConfigError("harness: dimension must be 1 or 2");
}

Obstacle obstacle_from_dual(const DualPotential& u, std::shared_ptr<const SpatialGrid> spatial) {
    return Obstacle{to_primal(u, std::move(spatial)).as_function(), std::nullopt};
}

std::vector<DualPair> random_dual_pairs(const Setup& s, std::size_t count, std::uint64_t stream) {
    Rng rng = stream_rng(s, stream);
    std::vector<DualPair> out;
    for (std::size_t i = 0; i < count; ++i) {
        auto a = DualPotential::from_closed_form(s.moment, random_max_affine_dual(rng, s.dim()));
        auto b = DualPotential::from_closed_form(s.moment, random_max_affine_dual(rng, s.dim()));
        out.push_back({label("random_%g", static_cast<double>(i)), std::move(a), std::move(b)});
    }
    return out;
}

std::vector<ObstaclePair> random_obstacle_pairs(const Setup& s, std::size_t count, std::uint64_t stream) {
    Rng rng = stream_rng(s, stream);
    std::vector<ObstaclePair> out;
    for (std::size_t i = 0; i < count; ++i) {
        if (i % 2 == 0) {
            auto f0 = Obstacle::from_closed_form(s.spatial, random_wave_obstacle(rng, s.dim()));
            auto f1 = Obstacle::from_closed_form(s.spatial, random_wave_obstacle(rng, s.dim()));
            out.push_back({label("wave_%g", static_cast<double>(i)), std::move(f0), std::move(f1)});
        } else {
            auto a = DualPotential::from_closed_form(s.moment, random_max_affine_dual(rng, s.dim()));
            auto b = DualPotential::from_closed_form(s.moment, random_max_affine_dual(rng, s.dim()));
            out.push_back({label("dual_%g", static_cast<double>(i)), obstacle_from_dual(a, s.spatial),
                           obstacle_from_dual(b, s.spatial)});
        }
    }
    return out;
}

TheoremReport check_involution(const Setup& s) {
    const double diam = s.cls.body().diameter();
    auto r = report("involution", "Legendre involution: to_primal(to_dual(u)) = u for convex u with gradients in P",
                    "seeded convex max-affine primals, slopes drawn in P", "absolute", 2.0 * s.spatial->h() * diam);
    Rng rng = stream_rng(s, kInvolution);
    std::vector<ClosedForm> forms;
    for (int i = 0; i < s.settings.involution_count; ++i) forms.push_back(random_primal_convex(rng, s.cls.body()));
    const auto errs = parallel_map(forms.size(), [&](std::size_t i) {
        auto f = sample_spatial(s.spatial, [&](const Point& x) { return eval_closed_form(forms[i], x, s.dim()); });
        PrimalPotential u(s.spatial, f.values, s.cls.body());
        const auto back = to_primal(to_dual(u, s.moment), s.spatial);
        double err = 0.0;
        for (std::size_t k = 0; k < f.values.size(); ++k) err = std::max(err, std::abs(back[k] - f.values[k]));
        return err;
    });
    for (std::size_t i = 0; i < errs.size(); ++i) r.add(label("primal_%g", static_cast<double>(i)), errs[i]);
    r.metric("spatial_h", s.spatial->h());
    r.metric("moment_h", s.moment->h());
    r.finalize();
    return r;
}

TheoremReport check_mass(const Setup& s) {
    auto r = report("mass", "The Monge-Ampere measure of a potential with finite dual has full mass",
                    "seeded max-affine duals and the bundled finite pairs", "relative", 1e-12);
    auto duals = random_duals(s, 50, kMass);
    for (auto& p : hand_pairs(s)) {
        duals.push_back(p.u0);
        duals.push_back(p.u1);
    }
    const double total = s.moment->total_weight();
    for (std::size_t i = 0; i < duals.size(); ++i)
        r.add(label("potential_%g", static_cast<double>(i)), rel(ma_atomic(duals[i]).total_mass - total, total));
    r.finalize();
    return r;
}

std::vector<TheoremReport> check_berman(const Setup& s) {
    const double h = s.spatial->h();
    auto res = report("berman.residual",
                      "Envelope regularity: MA(P(f)) = 1_{P(f) = f} MA(f); residual normalized by 10 h C(f)",
                      "quadratic and wave obstacles", "normalized", 1.0);
    auto dens = report("berman.density", "Envelope density bounded by C(f)^n; normalized by 1.01 C(f)^n",
                       "quadratic and wave obstacles", "normalized", 1.0);
    std::vector<std::pair<std::string, Obstacle>> family;
    for (double a : {0.5, 1.0, 2.0})
        for (double m : {0.0, 0.25}) {
            ClosedForm f{"primal_quadratic", {a, m}};
            if (s.dim() == 2) f.params.push_back(m);
            f.params.push_back(0.0);
            family.emplace_back(label("quadratic_%g_%g", a, m), Obstacle::from_closed_form(s.spatial, f));
        }
    const auto& wave = catalog_entry("wave_pair").in_dim(s.dim());
    family.emplace_back("wave_0", Obstacle::from_closed_form(s.spatial, *wave.obstacle0));
    family.emplace_back("wave_1", Obstacle::from_closed_form(s.spatial, *wave.obstacle1));

    const auto results = parallel_map(family.size(), [&](std::size_t i) {
        const auto rec = envelope(family[i].second, s.moment);
        return std::pair{berman_residual(rec), rec.hessian_bound};
    });
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto& [b, c] = results[i];
        res.add(family[i].first, b.residual / (10.0 * h * std::max(c, kTiny)));
        dens.add(family[i].first, b.max_density / (1.01 * std::pow(c, s.dim())));
        res.metric(family[i].first + ".residual", b.residual);
        res.metric(family[i].first + ".C", c);
    }
    res.finalize();
    dens.finalize();
    return {res, dens};
}

std::vector<TheoremReport> check_route_agreement(const Setup& s) {
    auto limit = report("route_agreement.limit",
                        "d_p as the epsilon-limit agrees with the endpoint formula; error over max(2% of d_p, 5h)",
                        "seeded wave obstacle pairs and primals of random dual pairs", "normalized", 1.0);
    auto ends = report("route_agreement.endpoint_forms", "t = 0 and t = 1 endpoint pairings agree",
                       "same pairs, base-body envelopes", "relative", kIdentity);
    auto oracle = report("route_agreement.oracle", "Endpoint route agrees with the independent dual oracle",
                         "same pairs, base-body envelopes", "relative", kIdentity);
    const auto pairs = random_obstacle_pairs(s, s.settings.pair_count, kRoute);
    struct Out {
        std::vector<DistanceReport> reps;
        std::vector<double> forms;
    };
    const auto out = parallel_map(pairs.size(), [&](std::size_t i) {
        Out o;
        const auto d0 = envelope(pairs[i].f0, s.moment).dual;
        const auto d1 = envelope(pairs[i].f1, s.moment).dual;
        for (double p : s.settings.p_values) {
            o.reps.push_back(dp_limit(pairs[i].f0, pairs[i].f1, s.family, p));
            const double fwd = dp_endpoint(d0, d1, p);
            o.forms.push_back(rel(fwd - dp_endpoint(d1, d0, p), fwd));
        }
        return o;
    });
    std::size_t non_cauchy = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = 0; j < s.settings.p_values.size(); ++j) {
            const auto& rep = out[i].reps[j];
            const std::string name = pairs[i].label + label(".p%g", rep.p);
            const double allowed = std::max(kConvergence * rep.endpoint_value, 5.0 * rep.h);
            limit.add(name, rep.deviations[0].second / allowed);
            oracle.add(name, rep.deviations[1].second);
            ends.add(name, out[i].forms[j]);
            if (!rep.converged) ++non_cauchy;
        }
    limit.metric("h", s.family.size() ? MomentGrid(s.cls.body(), s.family.moment_cells()).h() : 0.0);
    limit.metric("non_cauchy_tables", static_cast<double>(non_cauchy));
    limit.finalize();
    ends.finalize();
    oracle.finalize();
    return {limit, ends, oracle};
}

TheoremReport check_pythagorean_pairs(std::span<const DualPair> pairs, std::span<const double> ps) {
    auto r = report("pythagorean.dual", "Pythagorean formula d_p^p(u,v) = d_p^p(u,P(u,v)) + d_p^p(v,P(u,v))",
                    "dual pairs", "relative", kIdentity);
    const auto errs = parallel_map(pairs.size(), [&](std::size_t i) {
        std::vector<double> e;
        const auto roof = rooftop(pairs[i].u0, pairs[i].u1);
        for (double p : ps) {
            const double lhs = std::pow(dp_endpoint(pairs[i].u0, pairs[i].u1, p), p);
            const double rhs = std::pow(dp_endpoint(pairs[i].u0, roof, p), p) + std::pow(dp_endpoint(pairs[i].u1, roof, p), p);
            e.push_back(lhs == 0.0 && rhs == 0.0 ? 0.0 : rel(lhs - rhs, lhs));
        }
        return e;
    });
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = 0; j < ps.size(); ++j) r.add(pairs[i].label + label(".p%g", ps[j]), errs[i][j]);
    r.finalize();
    return r;
}

std::vector<TheoremReport> check_pythagorean(const Setup& s) {
    auto dual = check_pythagorean_pairs(random_dual_pairs(s, s.settings.identity_pairs, kPythagorean),
                                        s.settings.p_values);

    auto hand = report("pythagorean.hand", "Crossing duals p and 1 - p, p = 1: 0.5 = 0.25 + 0.25", "crossing_pair",
                       "absolute", kIdentity);
    const auto c = crossing(s);
    const auto roof = rooftop(c.u0, c.u1);
    hand.add("d(u,v) - 0.5", dp_endpoint(c.u0, c.u1, 1.0) - 0.5);
    hand.add("d(u,P) - 0.25", dp_endpoint(c.u0, roof, 1.0) - 0.25);
    hand.add("d(v,P) - 0.25", dp_endpoint(c.u1, roof, 1.0) - 0.25);
    for (auto& cs : hand.cases) cs.slack = std::abs(cs.slack);
    hand.finalize();

    auto limit = report("pythagorean.limit", "Pythagorean formula through the epsilon-limit route",
                        "seeded obstacle pairs with P(u,v) the envelope of min(f0, f1)", "relative", kConvergence);
    const auto pairs = random_obstacle_pairs(s, s.settings.limit_pairs, kPythagoreanLimit);
    const auto errs = parallel_map(pairs.size(), [&](std::size_t i) {
        const auto& [name, f0, f1] = pairs[i];
        Obstacle fm{pointwise_min(f0.f, f1.f), std::max(f0.bound(), f1.bound())};
        std::vector<double> e;
        for (double p : s.settings.p_values) {
            const double lhs = std::pow(dp_limit(f0, f1, s.family, p).value, p);
            const double rhs = std::pow(dp_limit(f0, fm, s.family, p).value, p) + std::pow(dp_limit(f1, fm, s.family, p).value, p);
            e.push_back(rel(lhs - rhs, lhs));
        }
        return e;
    });
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = 0; j < s.settings.p_values.size(); ++j)
            limit.add(pairs[i].label + label(".p%g", s.settings.p_values[j]), errs[i][j]);
    limit.finalize();
    return {dual, hand, limit};
}

std::vector<TheoremReport> check_max_inequality(const Setup& s) {
    auto ineq = report("max_inequality.direct", "d_p(u, max(u,v)) >= d_p(v, P(u,v)); slack relative to d_p(u,v)",
                       "seeded dual pairs and the nested pair (reference, p)", "relative", kIdentity);
    auto remark = report("max_inequality.pythagorean",
                         "d_p^p(u, max) + d_p^p(v, max) >= d_p^p(u, v); slack relative to d_p^p(u,v)",
                         "seeded dual pairs and the nested pair (reference, p)", "relative", kIdentity);
    auto pairs = random_dual_pairs(s, s.settings.identity_pairs, kMaxInequality);
    pairs.push_back(ramp(s));
    pairs.push_back(crossing(s));
    for (const auto& pr : pairs) {
        const auto mx = primal_maximum(pr.u0, pr.u1);
        const auto roof = rooftop(pr.u0, pr.u1);
        for (double p : s.settings.p_values) {
            const double d = dp_endpoint(pr.u0, pr.u1, p);
            const double a = dp_endpoint(pr.u0, mx, p);
            const double b = dp_endpoint(pr.u1, roof, p);
            const std::string name = pr.label + label(".p%g", p);
            ineq.add(name, d > 0.0 ? (b - a) / d : std::abs(b - a));
            const double dp = std::pow(d, p);
            const double sum = std::pow(a, p) + std::pow(dp_endpoint(pr.u1, mx, p), p);
            remark.add(name, dp > 0.0 ? (dp - sum) / dp : std::abs(dp - sum));
        }
    }
    ineq.finalize();
    remark.finalize();
    return {ineq, remark};
}

TheoremReport check_geodesic_metric(std::span<const DualPair> pairs, std::span<const double> ps,
                                    std::span<const double> times) {
    auto r = report("geodesic_metric", "Weak geodesics are metric geodesics: d_p(u_t,u_s) = |t-s| d_p(u_0,u_1)",
                    "dual pairs over a time grid", "relative", 1e-6);
    const auto errs = parallel_map(pairs.size(), [&](std::size_t i) {
        GeodesicCurve curve(pairs[i].u0, pairs[i].u1, 4);
        std::vector<DualPotential> at;
        for (double t : times) at.push_back(curve.at(t));
        std::vector<double> e;
        for (double p : ps) {
            const double full = dp_endpoint(pairs[i].u0, pairs[i].u1, p);
            for (std::size_t a = 0; a < times.size(); ++a)
                for (std::size_t b = 0; b < times.size(); ++b) {
                    const double d = dp_endpoint(at[a], at[b], p);
                    const double expect = std::abs(times[a] - times[b]) * full;
                    e.push_back(full > 0.0 ? std::abs(d - expect) / full : d);
                }
        }
        return e;
    });
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        std::size_t k = 0;
        double worst = 0.0;
        for (double p : ps) {
            worst = 0.0;
            for (std::size_t a = 0; a < times.size() * times.size(); ++a) worst = std::max(worst, errs[i][k++]);
            r.add(pairs[i].label + label(".p%g", p), worst);
        }
    }
    r.metric("time_samples", static_cast<double>(times.size()));
    r.finalize();
    return r;
}

std::vector<TheoremReport> check_d1_energy(const Setup& s) {
    auto r = report("d1_energy.pairs", "d_1 = E(u0) + E(u1) - 2 E(P(u0,u1)) against the endpoint route",
                    "seeded dual pairs", "relative", 0.01);
    auto hand = report("d1_energy.hand", "d_1(reference, dual p) = 0.5 through the energy", "ramp_pair", "relative",
                       0.01);
    const auto spatial = s.dim() == 2 ? s.spatial : nullptr;
    const auto pairs = random_dual_pairs(s, s.settings.pair_count, kEnergy);
    const auto errs = parallel_map(pairs.size(), [&](std::size_t i) {
        const double ref = dp_endpoint(pairs[i].u0, pairs[i].u1, 1.0);
        return rel(d1_energy(pairs[i].u0, pairs[i].u1, spatial) - ref, ref);
    });
    for (std::size_t i = 0; i < pairs.size(); ++i) r.add(pairs[i].label, errs[i]);
    const auto rp = ramp(s);
    hand.add("ramp_pair", rel(d1_energy(rp.u0, rp.u1, spatial) - 0.5, 0.5));
    r.finalize();
    hand.finalize();
    return {r, hand};
}

TheoremReport check_ip_comparison(const Setup& s) {
    // Finite and bounded away from 0 and infinity; the allowance caps |log ratio|
    // at log(1e3).
    auto r = report("ip_comparison", "d_p^p and I_p are comparable: |log(d_p^p vol / I_p)| <= log C",
                    "seeded dual pairs", "absolute", std::log(1e3));
    const auto pairs = random_dual_pairs(s, s.settings.identity_pairs, kComparison);
    const double vol = s.cls.volume();
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& pr : pairs)
        for (double p : s.settings.p_values) {
            const double d = std::pow(dp_endpoint(pr.u0, pr.u1, p), p);
            const double ip = i_p(pr.u0, pr.u1, p) / vol;
            const double ratio = d / ip;
            const double slack = std::isfinite(ratio) && ratio > 0.0 ? std::abs(std::log(ratio))
                                                                      : std::numeric_limits<double>::infinity();
            r.add(pr.label + label(".p%g", p), slack);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
    r.metric("min_ratio", lo);
    r.metric("max_ratio", hi);
    r.metric("empirical_C", std::max(hi, 1.0 / lo));
    r.finalize();
    return r;
}

std::vector<TheoremReport> check_epsilon_lemmas(const Setup& s, const ObstaclePair& pair, double p) {
    const std::string corpus = pair.label + label(", p = %g", p);
    const auto& fam = s.family;
    const std::size_t m = fam.size();
    const auto base = MomentGrid::make(s.cls.body(), fam.moment_cells());

    struct Member {
        EnvelopeRecord e0, e1;
    };
    auto members = parallel_map(m + 1, [&](std::size_t k) {
        const auto grid = k < m ? fam[k].grid : base;
        return Member{envelope(pair.f0, grid), envelope(pair.f1, grid)};
    });
    const Member& limit = members[m];

    auto ip = report("epsilon_lemmas.ip", "I_p between the perturbed envelopes converges to I_p of the envelopes",
                     corpus, "relative", kConvergence);
    const double ip0 = i_p(limit.e0.dual, limit.e1.dual, p) / s.cls.volume();
    for (std::size_t k = 0; k < m; ++k) {
        const double v = i_p(members[k].e0.dual, members[k].e1.dual, p) / fam[k].volume;
        const double gap = ip0 > 0.0 ? std::abs(v - ip0) / ip0 : std::abs(v);
        ip.metric(label("gap@eps=%g", fam[k].epsilon), gap);
        if (k + 1 == m) ip.add("smallest_eps", gap);
    }
    ip.metric("I_p", ip0);
    ip.finalize();

    // Density monotonicity: rho_eps grows with eps up to 5h, counted per node.
    const double h = s.spatial->h();
    auto mono = report("epsilon_lemmas.density_monotone",
                       "Envelope densities are nondecreasing in eps (5h slack); fraction of violating nodes", corpus,
                       "fraction", 0.01);
    auto bound = report("epsilon_lemmas.density_bound", "Envelope densities stay below 1.01 C^n; normalized", corpus,
                        "normalized", 1.0);
    for (int side = 0; side < 2; ++side) {
        const Obstacle& f = side == 0 ? pair.f0 : pair.f1;
        const double cn = std::pow(f.bound(), s.dim());
        std::vector<std::vector<double>> rho;
        for (std::size_t k = 0; k < m; ++k)
            rho.push_back(clamped_density(side == 0 ? members[k].e0.primal : members[k].e1.primal));
        std::size_t bad = 0, total = 0;
        double top = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            top = std::max(top, *std::max_element(rho[k].begin(), rho[k].end()));
            if (k + 1 == m) break;
            for (std::size_t j = 0; j < rho[k].size(); ++j) {
                ++total;
                if (rho[k][j] < rho[k + 1][j] - 5.0 * h) ++bad;
            }
        }
        mono.add(side == 0 ? "f0" : "f1", total ? static_cast<double>(bad) / total : 0.0);
        bound.add(side == 0 ? "f0" : "f1", top / (1.01 * std::max(cn, kTiny)));
    }
    mono.finalize();
    bound.finalize();

    // Contact-masked velocity |phi_dot_0|^p on spatial nodes.
    auto field = [&](const Member& mb) {
        const auto arg = primal_argmax(mb.e0.dual, *s.spatial);
        std::vector<double> out(s.spatial->size(), 0.0);
        for (std::size_t k = 0; k < out.size(); ++k) {
            if (!mb.e0.contact[k] || arg[k] == kNoIndex) continue;
            out[k] = std::pow(std::abs(mb.e1.dual[arg[k]] - mb.e0.dual[arg[k]]), p);
        }
        return out;
    };
    auto vel = report("epsilon_lemmas.velocity",
                      "Contact-masked velocities converge in weighted L1 as eps -> 0; gap relative to the limit mass",
                      corpus, "relative", kConvergence);
    const auto f0 = field(limit);
    for (std::size_t k = 0; k < m; ++k) {
        const double gap = l1_gap(field(members[k]), f0, s.spatial->cell_volume());
        vel.metric(label("gap@eps=%g", fam[k].epsilon), gap);
        if (k + 1 == m) vel.add("smallest_eps", gap);
    }
    vel.finalize();

    auto vols = report("epsilon_lemmas.volume", "V_eps strictly decreasing; V_eps - vol(P) is a degree-n polynomial (1 - R^2)",
                       corpus, "absolute", 1e-3);
    std::size_t order = 0;
    for (std::size_t k = 1; k < m; ++k)
        if (!(fam[k].volume < fam[k - 1].volume)) ++order;
    // Least squares in the monomials 1, eps, ..., eps^n.
    const int n = s.dim();
    const int cols = n + 1;
    std::vector<double> ata(cols * cols, 0.0), aty(cols, 0.0);
    double mean = 0.0;
    for (std::size_t k = 0; k < m; ++k) mean += fam[k].volume - s.cls.volume();
    mean /= static_cast<double>(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double y = fam[k].volume - s.cls.volume();
        for (int a = 0; a < cols; ++a) {
            aty[a] += std::pow(fam[k].epsilon, a) * y;
            for (int b = 0; b < cols; ++b) ata[a * cols + b] += std::pow(fam[k].epsilon, a + b);
        }
    }
    // Gaussian elimination with partial pivoting on the normal equations.
    for (int c = 0; c < cols; ++c) {
        int piv = c;
        for (int r = c + 1; r < cols; ++r)
            if (std::abs(ata[r * cols + c]) > std::abs(ata[piv * cols + c])) piv = r;
        for (int b = 0; b < cols; ++b) std::swap(ata[c * cols + b], ata[piv * cols + b]);
        std::swap(aty[c], aty[piv]);
        for (int r = c + 1; r < cols; ++r) {
            const double f = ata[r * cols + c] / ata[c * cols + c];
            for (int b = c; b < cols; ++b) ata[r * cols + b] -= f * ata[c * cols + b];
            aty[r] -= f * aty[c];
        }
    }
    std::vector<double> coef(cols, 0.0);
    for (int c = cols - 1; c >= 0; --c) {
        double acc = aty[c];
        for (int b = c + 1; b < cols; ++b) acc -= ata[c * cols + b] * coef[b];
        coef[c] = acc / ata[c * cols + c];
    }
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double y = fam[k].volume - s.cls.volume();
        double fit = 0.0;
        for (int a = 0; a < cols; ++a) fit += coef[a] * std::pow(fam[k].epsilon, a);
        ss_res += (y - fit) * (y - fit);
        ss_tot += (y - mean) * (y - mean);
    }
    const double r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    vols.add("order_violations", static_cast<double>(order) * 1e3);
    vols.add("one_minus_R2", 1.0 - r2);
    vols.metric("R2", r2);
    vols.finalize();
    return {ip, mono, bound, vel, vols};
}

std::vector<TheoremReport> check_completeness(const Setup& s, double p) {
    auto bound = report("completeness.bound",
                        "Rooftop chains of a 2^-j Cauchy sequence stay within 2^(-j+1) of u_j; normalized by 2^(-j+1)",
                        "constructed sequences: constant, monotone toward g, oscillating tail", "normalized", 1.05);
    auto mono = report("completeness.monotone", "v_{j,k} decreasing in k and v_j increasing in j (largest dual excess)",
                       "same sequences", "absolute", 0.0);
    auto lim = report("completeness.limit", "d_p(u_j, v_limit) -> 0: final distance normalized by 2^(-J+1)",
                      "same sequences", "normalized", 1.05);
    Rng rng = stream_rng(s, kCompleteness);
    const auto zero = DualPotential::reference(s.moment);
    auto unit = [&](DualPotential u) {
        const double n = dp_endpoint(u, zero, p);
        return scaled(u, 1.0 / n);
    };
    const auto g = unit(DualPotential::from_closed_form(s.moment, random_max_affine_dual(rng, s.dim())));
    const auto wiggle = unit(DualPotential::from_closed_form(s.moment, random_max_affine_dual(rng, s.dim())));
    constexpr int kLast = 12;
    constexpr int kChecked = 6;

    struct Sequence {
        std::string name;
        std::vector<DualPotential> u;
        DualPotential limit;
    };
    std::vector<Sequence> seqs;
    {
        Sequence c{"constant", {}, g};
        for (int j = 0; j <= kLast; ++j) c.u.push_back(g);
        seqs.push_back(std::move(c));
        Sequence up{"monotone", {}, g};
        for (int j = 0; j <= kLast; ++j) up.u.push_back(scaled(g, 1.0 - std::ldexp(1.0, -j)));
        seqs.push_back(std::move(up));
        Sequence osc{"oscillating", {}, g};
        for (int j = 0; j <= kLast; ++j)
            osc.u.push_back(combine(g, 1.0, wiggle, (j % 2 ? -1.0 : 1.0) * std::ldexp(1.0, -j) / 3.0));
        seqs.push_back(std::move(osc));
    }
    for (const auto& sq : seqs) {
        std::vector<DualPotential> v_j;
        for (int j = 0; j <= kLast; ++j) {
            DualPotential v = sq.u[j];
            for (int k = 1; j + k <= kLast; ++k) {
                const DualPotential next = rooftop(v, sq.u[j + k]);
                mono.add(sq.name + label(".k_step j=%g k=%g", j, k), excess(next, v));
                v = next;
                if (j <= kChecked)
                    bound.add(sq.name + label(" j=%g k=%g", j, k),
                              dp_endpoint(sq.u[j], v, p) / std::ldexp(1.0, -j + 1));
            }
            v_j.push_back(v);
        }
        for (int j = 1; j <= kLast; ++j) mono.add(sq.name + label(".j_step j=%g", j), excess(v_j[j - 1], v_j[j]));
        const double last = dp_endpoint(sq.u[kLast], sq.limit, p);
        lim.add(sq.name, last / std::ldexp(1.0, -kLast + 1));
        for (int j = 0; j <= kLast; j += 3)
            lim.metric(sq.name + label(".d(u_j,limit) j=%g", j), dp_endpoint(sq.u[j], sq.limit, p));
    }
    bound.finalize();
    mono.finalize();
    lim.finalize();
    return {bound, mono, lim};
}

std::vector<TheoremReport> check_singular(const Setup& s) {
    auto lim = report("singular.limit",
                      "Finite-energy distance from the reference to the log barrier: (Gamma(n+p)/Gamma(n))^(1/p)",
                      "log_barrier_singular, p in {1, 2}", "relative", kConvergence);
    auto tail = report("singular.cauchy", "Truncation distances form a Cauchy tail (1 = flagged)",
                       "log_barrier_singular, p in {1, 2}", "count", 0.0);
    const auto& f = catalog_entry("log_barrier_singular").in_dim(s.dim());
    const auto u0 = DualPotential::from_closed_form(s.moment, *f.dual0);
    const auto u1 = DualPotential::from_closed_form(s.moment, *f.dual1);
    const int n = s.dim();
    for (double p : {1.0, 2.0}) {
        const auto rep = dp_singular(u0, u1, p, s.settings.singular_caps);
        const double expect = std::pow(std::tgamma(n + p) / std::tgamma(static_cast<double>(n)), 1.0 / p);
        lim.add(label("p%g", p), rel(rep.value - expect, expect));
        tail.add(label("p%g", p), rep.converged ? 0.0 : 1.0);
        lim.metric(label("value.p%g", p), rep.value);
        lim.metric(label("oracle.p%g", p), dp_dual_oracle(u0, u1, p, s.settings.singular_caps.back()));
        tail.metric(label("last_increment.p%g", p), rep.last_increment);
        tail.metric(label("ip_constant.p%g", p), rep.deviations[1].second);
    }
    lim.finalize();
    tail.finalize();
    return {lim, tail};
}

std::vector<TheoremReport> check_curve_inequalities(const Setup& s) {
    auto conv = report("curve.convexity_t", "u_t is convex in t: most negative second difference in t", "", "absolute",
                       kIdentity);
    auto chord = report("curve.chord", "u_t lies below the chord (1-t) u_0 + t u_1", "", "absolute", kIdentity);
    auto joint = report("curve.joint_convexity", "u is convex jointly in (x, t)", "", "absolute", kIdentity);
    auto lip = report("curve.lipschitz", "t -> u_t is Lipschitz with constant sup|u_0 - u_1|: measured/bound - 1", "",
                      "relative", 1e-6);
    auto hrma = report("curve.hrma", "Space-time Monge-Ampere residual / h on smooth pairs", "seeded quadratic duals",
                       "normalized", 0.5);
    const std::string mixed = "seeded max-affine dual pairs and seeded quadratic dual pairs";
    conv.corpus = chord.corpus = joint.corpus = lip.corpus = mixed;

    const int samples = std::max(4, static_cast<int>(std::lround(1.0 / s.spatial->h())));
    auto pairs = random_dual_pairs(s, s.settings.pair_count, kCurvePolyhedral);
    Rng rng = stream_rng(s, kCurveSmooth);
    const std::size_t polyhedral = pairs.size();
    for (int i = 0; i < s.settings.pair_count; ++i) {
        auto a = DualPotential::from_closed_form(s.moment, random_quadratic_dual(rng, s.cls.body()));
        auto b = DualPotential::from_closed_form(s.moment, random_quadratic_dual(rng, s.cls.body()));
        pairs.push_back({label("smooth_%g", i), std::move(a), std::move(b)});
    }
    const auto reps = parallel_map(pairs.size(), [&](std::size_t i) {
        return curve_checks(GeodesicCurve(pairs[i].u0, pairs[i].u1, samples), s.spatial);
    });
    double poly_worst = 0.0, poly_grad = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& r = reps[i];
        conv.add(pairs[i].label, r.t_convexity_violation);
        chord.add(pairs[i].label, r.chord_violation);
        joint.add(pairs[i].label, r.joint_convexity_violation);
        lip.add(pairs[i].label, r.lipschitz_bound > 0.0 ? r.lipschitz_measured / r.lipschitz_bound - 1.0
                                                        : r.lipschitz_measured);
        if (i >= polyhedral) {
            hrma.add(pairs[i].label, r.hrma_residual / r.h);
            hrma.metric(pairs[i].label + ".gradient_map", r.hrma_gradient_residual / r.h);
        } else {
            poly_worst = std::max(poly_worst, r.hrma_residual);
            poly_grad = std::max(poly_grad, r.hrma_gradient_residual);
        }
    }
    hrma.metric("polyhedral.worst_residual", poly_worst);
    hrma.metric("polyhedral.worst_gradient_map_residual", poly_grad);
    hrma.metric("h", reps.empty() ? 0.0 : reps.front().h);
    for (auto* r : {&conv, &chord, &joint, &lip, &hrma}) r->finalize();
    return {conv, chord, joint, lip, hrma};
}

std::vector<TheoremReport> check_monotone_continuity(const Setup& s, double p) {
    auto caps = report("monotone_continuity.caps",
                       "Truncations max(u, V - M) decrease to u and d_p to u decreases to 0 (largest increase)",
                       "log_barrier_singular truncated at M = 2, 4, 8, 16", "absolute", 1e-12);
    auto shifts = report("monotone_continuity.shifts", "u + 1/j decreases to u with d_p = 1/j", "seeded dual + 1/j",
                         "relative", kIdentity);
    const auto& f = catalog_entry("log_barrier_singular").in_dim(s.dim());
    const auto bar = DualPotential::from_closed_form(s.moment, *f.dual1);
    const auto limit = bar.truncated(s.settings.singular_caps.back());
    double prev = std::numeric_limits<double>::infinity();
    for (double m : {2.0, 4.0, 8.0, 16.0}) {
        const auto um = bar.truncated(m);
        const double d = dp_endpoint(um, limit, p);
        caps.add(label("M=%g", m), std::isfinite(prev) ? std::max(0.0, d - prev) : 0.0);
        caps.metric(label("d.M=%g", m), d);
        const double ip = i_p(um, limit, p) / s.cls.volume();
        caps.metric(label("I_p^(1/p).M=%g", m), std::pow(ip, 1.0 / p));
        if (s.dim() == 1 && p == 1.0) caps.metric(label("tail_integral_without_hull.M=%g", m), std::exp(-m));
        prev = d;
    }
    caps.metric("d.M=16_is_below", 1e-6);
    caps.add("d.M=16", std::max(0.0, prev - 1e-6));

    Rng rng = stream_rng(s, kMonotone);
    const auto u = DualPotential::from_closed_form(s.moment, random_max_affine_dual(rng, s.dim()));
    for (int j = 1; j <= 8; ++j) {
        const auto uj = u.shifted(-1.0 / j);
        const double d = dp_endpoint(uj, u, p);
        shifts.add(label("j=%g", j), rel(d - 1.0 / j, 1.0 / j));
        shifts.metric(label("I_p^(1/p).j=%g", j), std::pow(i_p(uj, u, p) / s.cls.volume(), 1.0 / p));
    }
    caps.finalize();
    shifts.finalize();
    return {caps, shifts};
}

TheoremReport check_sup_bound(const Setup& s) {
    auto r = report("sup_bound", "|sup u| <= C1 + C2 d_p(u, phi), MA(phi) uniform: finite fitted constants",
                    "seeded max-affine duals and translates of the reference", "absolute", 0.0);
    if (s.dim() != 1) {
        r.metric("skipped_dimension", s.dim());
        r.finalize();
        return r;
    }
    // Reference density: uniform on [-1, 1] with total mass vol(P), cell overlaps exact.
    const auto& g = *s.spatial;
    const double height = s.cls.volume() / 2.0;
    std::vector<double> rho(g.size(), 0.0);
    for (std::size_t k = 0; k < rho.size(); ++k) {
        const double x = g.node(k)[0];
        double lo = x - 0.5 * g.h(), hi = x + 0.5 * g.h();
        if (k == 0) lo = x;
        if (k + 1 == rho.size()) hi = x;
        const double overlap = std::max(0.0, std::min(hi, 1.0) - std::max(lo, -1.0));
        rho[k] = height * overlap / g.h();
    }
    const auto phi = ma_solve_1d(make_spatial(s.spatial, rho), s.moment);
    auto corpus = random_duals(s, s.settings.sup_bound_potentials, kSupBound);
    const auto zero = DualPotential::reference(s.moment);
    for (double c : {1.0, 2.0, 4.0, 8.0}) corpus.push_back(zero.shifted(-c));
    const double p = s.settings.p_values.front();
    const auto rep = sup_bound_check(corpus, phi, p);
    const bool finite = std::isfinite(rep.c1) && std::isfinite(rep.c2);
    r.add("constants_finite", finite ? 0.0 : std::numeric_limits<double>::infinity());
    r.metric("C1", rep.c1);
    r.metric("C2", rep.c2);
    r.metric("held_out_worst_excess", rep.worst_held_out_excess);
    r.metric("held_out_holds", rep.holds ? 1.0 : 0.0);
    r.finalize();
    return r;
}

TheoremReport check_affine_invariance(const Setup& s) {
    auto r = report("affine_invariance", "d_p unchanged by a common affine shift (translated class body)",
                    "seeded dual pairs with random shifts, crossing pair with l(x) = 0.3 x + 2", "relative",
                    kIdentity);
    Rng rng = stream_rng(s, kAffine);
    auto pairs = random_dual_pairs(s, 10, kAffine);
    std::vector<std::pair<Point, double>> shifts;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        shifts.push_back({Point{rng.uniform(-0.3, 0.3), s.dim() == 2 ? rng.uniform(-0.3, 0.3) : 0.0},
                          rng.uniform(-2.0, 2.0)});
    pairs.push_back(crossing(s));
    shifts.push_back({Point{0.3, 0.0}, 2.0});
    const double p = s.settings.p_values.front();
    const auto reps = parallel_map(pairs.size(), [&](std::size_t i) {
        return affine_invariance_check(pairs[i].u0, pairs[i].u1, shifts[i].first, shifts[i].second, p, s.spatial);
    });
    for (std::size_t i = 0; i < pairs.size(); ++i) r.add(pairs[i].label, reps[i].deviation);
    r.metric("crossing_pair.before", reps.back().before);
    r.metric("crossing_pair.after", reps.back().after);
    r.finalize();
    return r;
}

std::vector<TheoremReport> check_metric_axioms(const Setup& s) {
    auto sym = report("metric_axioms.symmetry", "d_p(u,v) = d_p(v,u) exactly", "seeded duals and the reference",
                      "absolute", 0.0);
    auto tri = report("metric_axioms.triangle", "d_p(u,w) <= d_p(u,v) + d_p(v,w), relative to d_p(u,w)",
                      "all triples of seeded duals and the reference", "relative", 1e-12);
    auto nondeg = report("metric_axioms.nondegenerate", "d_p(u,v) = 0 exactly when the duals agree (mismatches)",
                         "all pairs, plus single-node perturbations", "count", 0.0);
    auto list = random_duals(s, s.settings.axiom_potentials, kAxioms);
    list.push_back(DualPotential::reference(s.moment));
    {
        std::vector<double> v(list.front().values().begin(), list.front().values().end());
        v[s.moment->active()[s.moment->active().size() / 2]] += 1e-3;
        list.push_back(DualPotential(s.moment, std::move(v), "perturbed"));
    }
    const std::size_t n = list.size();
    double ip_quasi = 0.0;
    for (double p : s.settings.p_values) {
        std::vector<double> d(n * n);
        std::vector<double> ip(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                d[a * n + b] = dp_endpoint(list[a], list[b], p);
                ip[a * n + b] = i_p(list[a], list[b], p);
            }
        double worst_sym = 0.0, worst_tri = -std::numeric_limits<double>::infinity();
        std::size_t mismatches = 0;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                worst_sym = std::max(worst_sym, std::abs(d[a * n + b] - d[b * n + a]));
                bool equal = true;
                for (std::size_t k : s.moment->active()) equal = equal && list[a][k] == list[b][k];
                if ((d[a * n + b] == 0.0) != equal) ++mismatches;
                for (std::size_t c = 0; c < n; ++c) {
                    const double lhs = d[a * n + c];
                    const double slack = lhs - d[a * n + b] - d[b * n + c];
                    worst_tri = std::max(worst_tri, lhs > 0.0 ? slack / lhs : slack);
                    const double rhs = ip[a * n + b] + ip[b * n + c];
                    if (rhs > 0.0) ip_quasi = std::max(ip_quasi, ip[a * n + c] / rhs);
                }
            }
        sym.add(label("p%g", p), worst_sym);
        tri.add(label("p%g", p), worst_tri);
        nondeg.add(label("p%g", p), static_cast<double>(mismatches));
    }
    tri.metric("I_p_quasi_triangle_C", ip_quasi);
    sym.finalize();
    tri.finalize();
    nondeg.finalize();
    return {sym, tri, nondeg};
}

const std::vector<std::string>& suite_ids() {
    static const std::vector<std::string> ids{
        "involution",     "mass",          "berman",       "route_agreement",     "pythagorean", "max_inequality",
        "geodesic_metric", "d1_energy",    "ip_comparison", "epsilon_lemmas",     "completeness", "singular",
        "curve_inequalities", "monotone_continuity", "sup_bound", "affine_invariance", "metric_axioms"};
    return ids;
}

SuiteReport run_suite(const std::string& id, const Setup& s) {
    SuiteReport out{id, {}};
    auto take = [&](std::vector<TheoremReport> v) {
        for (auto& r : v) out.checks.push_back(std::move(r));
    };
    const double p0 = s.settings.p_values.front();
    if (id == "involution") {
        out.checks.push_back(check_involution(s));
    } else if (id == "mass") {
        out.checks.push_back(check_mass(s));
    } else if (id == "berman") {
        take(check_berman(s));
    } else if (id == "route_agreement") {
        take(check_route_agreement(s));
    } else if (id == "pythagorean") {
        take(check_pythagorean(s));
    } else if (id == "max_inequality") {
        take(check_max_inequality(s));
    } else if (id == "geodesic_metric") {
        auto pairs = random_dual_pairs(s, s.settings.pair_count, kGeodesic);
        pairs.push_back(crossing(s));
        const std::vector<double> times{0.0, 0.25, 0.5, 0.75, 1.0};
        out.checks.push_back(check_geodesic_metric(pairs, s.settings.p_values, times));
    } else if (id == "d1_energy") {
        take(check_d1_energy(s));
    } else if (id == "ip_comparison") {
        out.checks.push_back(check_ip_comparison(s));
    } else if (id == "epsilon_lemmas") {
        const auto& wave = catalog_entry("wave_pair").in_dim(s.dim());
        ObstaclePair w{"wave_pair", Obstacle::from_closed_form(s.spatial, *wave.obstacle0),
                       Obstacle::from_closed_form(s.spatial, *wave.obstacle1)};
        take(check_epsilon_lemmas(s, w, p0));
        ClosedForm q0{"primal_quadratic", {1.0, 0.0}}, q1{"primal_quadratic", {1.5, 0.2}};
        if (s.dim() == 2) {
            q0.params.push_back(0.0);
            q1.params.push_back(-0.2);
        }
        q0.params.push_back(0.0);
        q1.params.push_back(0.1);
        ObstaclePair q{"quadratic_obstacles", Obstacle::from_closed_form(s.spatial, q0),
                       Obstacle::from_closed_form(s.spatial, q1)};
        auto extra = check_epsilon_lemmas(s, q, p0);
        for (auto& r : extra) r.id += ".quadratic";
        take(std::move(extra));
    } else if (id == "completeness") {
        take(check_completeness(s, p0));
    } else if (id == "singular") {
        take(check_singular(s));
    } else if (id == "curve_inequalities") {
        take(check_curve_inequalities(s));
    } else if (id == "monotone_continuity") {
        take(check_monotone_continuity(s, p0));
    } else if (id == "sup_bound") {
        out.checks.push_back(check_sup_bound(s));
    } else if (id == "affine_invariance") {
        out.checks.push_back(check_affine_invariance(s));
    } else if (id == "metric_axioms") {
        take(check_metric_axioms(s));
    } else {
        throw ConfigError("unknown suite '" + id + "'");
    }
    return out;
}

std::vector<SuiteReport> run_suites(const std::vector<std::string>& ids, const Setup& s) {
    for (const auto& id : ids)
        if (std::find(suite_ids().begin(), suite_ids().end(), id) == suite_ids().end())
            throw ConfigError("unknown suite '" + id + "'");
    std::vector<SuiteReport> out;
    for (const auto& id : ids) out.push_back(run_suite(id, s));
    return out;
}

const std::vector<CoverageRow>& coverage_table() {
    static const std::vector<CoverageRow> rows{
        {"Legendre duality: involution and order reversal", {"involution"}},
        {"Monge-Ampere measure of a potential with minimal singularities has full mass", {"mass"}},
        {"Envelope regularity: MA(P(f)) = 1_D MA(f), locally bounded density", {"berman", "epsilon_lemmas"}},
        {"d_p as the limit of Kahler distances, independent of the route", {"route_agreement"}},
        {"Pythagorean formula", {"pythagorean"}},
        {"Pythagorean inequality for max", {"max_inequality"}},
        {"Weak geodesics realize d_p", {"geodesic_metric"}},
        {"d_1 through the Monge-Ampere energy", {"d1_energy"}},
        {"Comparison of d_p with I_p", {"ip_comparison"}},
        {"Convergence lemmas for the perturbed classes", {"epsilon_lemmas"}},
        {"Completeness through rooftop chains", {"completeness"}},
        {"Extension of d_p to finite-energy potentials", {"singular", "monotone_continuity"}},
        {"Convexity in t and Lipschitz bound of weak geodesics", {"curve_inequalities"}},
        {"Monotone continuity of d_p", {"monotone_continuity"}},
        {"Sup control by d_p", {"sup_bound"}},
        {"Change of Kahler representative", {"affine_invariance"}},
        {"Metric axioms", {"metric_axioms"}},
    };
    return rows;
}

} // namespace ppgeo
