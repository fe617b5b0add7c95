#include "ppgeo/metric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "ppgeo/errors.hpp"
#include "ppgeo/kernels.hpp"
#include "ppgeo/monge_ampere.hpp"
#include "ppgeo/parallel.hpp"

namespace ppgeo {

namespace {

constexpr double kIdentityTol = 1e-9;
constexpr double kCauchyFloor = 1e-7;

void require_p(double p, const char* what) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw ConfigError(std::string(what) + ": p must be a finite real >= 1");
}

struct Packed {
    std::vector<double> w, a, b;
};

Packed pack(const DualPotential& u0, const DualPotential& u1, const char* what) {
    require_same_grid(u0, u1, what);
    if (u0.singular() || u1.singular())
        throw RequiresTruncationError(std::string(what) + ": duals must be finite; truncate first");
    const MomentGrid& g = *u0.grid();
    Packed out;
    out.w.reserve(g.active().size());
    out.a.reserve(g.active().size());
    out.b.reserve(g.active().size());
    for (std::size_t k : g.active()) {
        out.w.push_back(g.weight(k));
        out.a.push_back(u0[k]);
        out.b.push_back(u1[k]);
    }
    return out;
}

// Affine least squares v = c0 + c1 * x; returns {c0, c1, rms residual}.
std::array<double, 3> affine_fit(std::span<const double> x, std::span<const double> v) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, mv = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        mv += v[i];
    }
    mx /= n;
    mv /= n;
    double sxx = 0.0, sxv = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxv += (x[i] - mx) * (v[i] - mv);
    }
    const double slope = sxx > 0.0 ? sxv / sxx : 0.0;
    const double c0 = mv - slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = v[i] - (c0 + slope * x[i]);
        ss += r * r;
    }
    return {c0, slope, std::sqrt(ss / n)};
}

// Increments |v_k - v_{k-1}| must not grow beyond the noise floor.
bool cauchy_tail(std::span<const DistanceRow> rows, double scale, double* last_increment) {
    bool ok = true;
    double prev = std::numeric_limits<double>::infinity();
    *last_increment = 0.0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const double inc = std::abs(rows[k].value - rows[k - 1].value);
        if (inc > prev + kCauchyFloor * std::max(1.0, scale)) ok = false;
        prev = inc;
        *last_increment = inc;
    }
    return ok;
}

} // namespace

const char* route_name(Route r) {
    switch (r) {
    case Route::kEpsilonLimit: return "epsilon_limit";
    case Route::kEndpoint: return "endpoint";
    case Route::kDualOracle: return "dual_oracle";
    case Route::kEnergyD1: return "energy_d1";
    case Route::kSingularLimit: return "singular_limit";
    }
    return "unknown";
}

Route parse_route(const std::string& name) {
    for (Route r : {Route::kEpsilonLimit, Route::kEndpoint, Route::kDualOracle, Route::kEnergyD1,
                    Route::kSingularLimit})
        if (name == route_name(r)) return r;
    throw ConfigError("unknown route '" + name + "'");
}

double dp_endpoint(const DualPotential& u0, const DualPotential& u1, double p) {
    require_p(p, "dp_endpoint");
    const Packed d = pack(u0, u1, "dp_endpoint");
    const auto& k = kernels::active();
    const double inv_vol = 1.0 / u0.body().volume();
    const double forward = std::pow(inv_vol * k.weighted_abs_pow_sum(d.w.data(), d.b.data(), d.a.data(), d.w.size(), p),
                                    1.0 / p);
    const double reverse = std::pow(inv_vol * k.weighted_abs_pow_sum(d.w.data(), d.a.data(), d.b.data(), d.w.size(), p),
                                    1.0 / p);
    if (std::abs(forward - reverse) > kIdentityTol * std::max(forward, std::numeric_limits<double>::min()))
        throw SymmetryError("dp_endpoint: t = 0 and t = 1 pairings disagree");
    return forward;
}

double dp_dual_oracle(const DualPotential& u0, const DualPotential& u1, double p, std::optional<double> cap) {
    require_p(p, "dp_dual_oracle");
    require_same_grid(u0, u1, "dp_dual_oracle");
    const MomentGrid& g = *u0.grid();
    const auto v0 = u0.values();
    const auto v1 = u1.values();
    long double sum = 0.0L;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!g.included(k)) continue;
        long double a = v0[k];
        long double b = v1[k];
        if (cap) {
            a = std::min<long double>(a, *cap);
            b = std::min<long double>(b, *cap);
        } else if (std::isinf(a) || std::isinf(b)) {
            throw SingularIntegrandError("dp_dual_oracle: +inf dual at an included node");
        }
        sum += static_cast<long double>(g.weight(k)) * std::pow(std::fabs(b - a), static_cast<long double>(p));
    }
    const long double vol = g.body().volume();
    return static_cast<double>(std::pow(sum / vol, 1.0L / static_cast<long double>(p)));
}

double dp_kahler(const Obstacle& f0, const Obstacle& f1, const EpsilonMember& member, double p) {
    const EnvelopeRecord e0 = envelope(f0, member.grid);
    const EnvelopeRecord e1 = envelope(f1, member.grid);
    return dp_endpoint(e0.dual, e1.dual, p);
}

DistanceReport dp_limit(const Obstacle& f0, const Obstacle& f1, const EpsilonFamily& family, double p) {
    require_p(p, "dp_limit");
    DistanceReport rep;
    rep.p = p;
    rep.route = Route::kEpsilonLimit;
    const auto values = parallel_map(family.size(), [&](std::size_t k) { return dp_kahler(f0, f1, family[k], p); });
    for (std::size_t k = 0; k < family.size(); ++k)
        rep.table.push_back({family[k].epsilon, family[k].volume, values[k]});

    const std::size_t m = std::min<std::size_t>(3, rep.table.size());
    std::vector<double> xs, vs;
    for (std::size_t k = rep.table.size() - m; k < rep.table.size(); ++k) {
        xs.push_back(rep.table[k].parameter);
        vs.push_back(rep.table[k].value);
    }
    if (m >= 2) {
        const auto fit = affine_fit(xs, vs);
        rep.extrapolated = fit[0];
        rep.fit_residual = fit[2];
    } else {
        rep.extrapolated = vs.back();
    }
    rep.value = std::max(0.0, rep.extrapolated);
    rep.converged = cauchy_tail(rep.table, rep.value, &rep.last_increment);

    const auto base = MomentGrid::make(family.base().body(), family.moment_cells());
    rep.h = base->h();
    const DualPotential d0 = envelope(f0, base).dual;
    const DualPotential d1 = envelope(f1, base).dual;
    const double endpoint = dp_endpoint(d0, d1, p);
    const double oracle = dp_dual_oracle(d0, d1, p);
    rep.endpoint_value = endpoint;
    rep.deviations.emplace_back("endpoint", std::abs(rep.extrapolated - endpoint));
    rep.deviations.emplace_back("dual_oracle",
                                std::abs(endpoint - oracle) / std::max(endpoint, std::numeric_limits<double>::min()));
    return rep;
}

double d1_energy(const DualPotential& u0, const DualPotential& u1, std::shared_ptr<const SpatialGrid> spatial) {
    require_same_grid(u0, u1, "d1_energy");
    const DualPotential roof = rooftop(u0, u1);
    return energy(u0, spatial) + energy(u1, spatial) - 2.0 * energy(roof, spatial);
}

DistanceReport dp_singular(const DualPotential& u0, const DualPotential& u1, double p, std::span<const double> caps) {
    require_p(p, "dp_singular");
    require_same_grid(u0, u1, "dp_singular");
    if (caps.empty()) throw ConfigError("dp_singular: need at least one cap");
    for (std::size_t k = 1; k < caps.size(); ++k)
        if (!(caps[k] > caps[k - 1])) throw ConfigError("dp_singular: caps must increase strictly");

    DistanceReport rep;
    rep.p = p;
    rep.route = Route::kSingularLimit;
    rep.h = u0.grid()->h();
    const double vol = u0.body().volume();
    std::vector<DualPotential> t0, t1;
    for (double cap : caps) {
        t0.push_back(u0.truncated(cap));
        t1.push_back(u1.truncated(cap));
        rep.table.push_back({cap, vol, dp_endpoint(t0.back(), t1.back(), p)});
    }
    double triangle_excess = 0.0;
    double ip_constant = 0.0;
    for (std::size_t k = 1; k < caps.size(); ++k) {
        const double inc = std::abs(rep.table[k].value - rep.table[k - 1].value);
        const double tri = dp_endpoint(t0[k], t0[k - 1], p) + dp_endpoint(t1[k], t1[k - 1], p);
        triangle_excess = std::max(triangle_excess, inc - tri);
        const double ip = std::pow(i_p(t0[k], t0[k - 1], p) / vol, 1.0 / p) +
                          std::pow(i_p(t1[k], t1[k - 1], p) / vol, 1.0 / p);
        if (ip > 0.0) ip_constant = std::max(ip_constant, inc / ip);
    }
    rep.value = rep.table.back().value;
    rep.extrapolated = rep.value;
    rep.converged = cauchy_tail(rep.table, rep.value, &rep.last_increment) &&
                    triangle_excess <= kIdentityTol * std::max(1.0, rep.value);
    rep.deviations.emplace_back("triangle_excess", triangle_excess);
    rep.deviations.emplace_back("ip_constant", ip_constant);
    return rep;
}

DualPotential ma_solve_1d(const SpatialFunction& density, std::shared_ptr<const MomentGrid> target, double rel_tol) {
    if (!density.grid || density.grid->dim() != 1 || !target || target->dim() != 1)
        throw ConfigError("ma_solve_1d: one-dimensional density and target required");
    const SpatialGrid& g = *density.grid;
    const double h = g.h();
    double mass = 0.0;
    for (double r : density.values) {
        if (!(r >= 0.0)) throw ConfigError("ma_solve_1d: density must be nonnegative");
        mass += r * h;
    }
    const double vol = target->body().volume();
    if (std::abs(mass - vol) > rel_tol * vol)
        throw NormalizationError("ma_solve_1d: density mass does not match the body volume");

    const double lo = target->body().vertices()[0][0];
    const std::size_t n = density.values.size();
    std::vector<double> slope(n);
    double below = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double cell = density.values[i] * h;
        slope[i] = lo + (below + 0.5 * cell) * (vol / mass);
        below += cell;
    }
    std::vector<double> phi(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) phi[i] = phi[i - 1] + 0.5 * h * (slope[i - 1] + slope[i]);

    const DualPotential raw = to_dual(PrimalPotential(density.grid, std::move(phi), target->body(), "ma_solve_1d"), target);
    return raw.shifted(-raw.min_value());
}

SupBoundReport sup_bound_check(std::span<const DualPotential> corpus, const DualPotential& phi, double p) {
    SupBoundReport rep;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const SupBoundPoint pt{std::abs(corpus[i].sup_relative()), dp_endpoint(corpus[i], phi, p)};
        (i % 2 == 0 ? rep.fitted : rep.held_out).push_back(pt);
    }
    if (rep.fitted.empty()) return rep;

    // Vertices of the feasible region {c1, c2 >= 0, s_i <= c1 + c2 d_i} lie on
    // the axes or on lines through two points.
    double mean_d = 0.0;
    for (const auto& q : rep.fitted) mean_d += q.distance;
    mean_d /= static_cast<double>(rep.fitted.size());
    auto feasible = [&](double c1, double c2) {
        if (c1 < 0.0 || c2 < 0.0) return false;
        for (const auto& q : rep.fitted)
            if (q.sup > c1 + c2 * q.distance + 1e-12 * std::max(1.0, q.sup)) return false;
        return true;
    };
    double best = std::numeric_limits<double>::infinity();
    auto consider = [&](double c1, double c2) {
        if (!std::isfinite(c1) || !std::isfinite(c2) || !feasible(c1, c2)) return;
        const double obj = c1 + c2 * mean_d;
        if (obj < best) {
            best = obj;
            rep.c1 = c1;
            rep.c2 = c2;
        }
    };
    double max_sup = 0.0;
    for (const auto& q : rep.fitted) max_sup = std::max(max_sup, q.sup);
    consider(max_sup, 0.0);
    for (const auto& q : rep.fitted) {
        if (q.distance > 0.0) {
            double c2 = 0.0;
            for (const auto& r : rep.fitted)
                if (r.distance > 0.0) c2 = std::max(c2, r.sup / r.distance);
            consider(0.0, c2);
            break;
        }
    }
    for (std::size_t i = 0; i < rep.fitted.size(); ++i)
        for (std::size_t j = i + 1; j < rep.fitted.size(); ++j) {
            const auto& a = rep.fitted[i];
            const auto& b = rep.fitted[j];
            if (a.distance == b.distance) continue;
            const double c2 = (b.sup - a.sup) / (b.distance - a.distance);
            consider(a.sup - c2 * a.distance, c2);
        }

    rep.worst_held_out_excess = -std::numeric_limits<double>::infinity();
    for (const auto& q : rep.held_out)
        rep.worst_held_out_excess = std::max(rep.worst_held_out_excess, q.sup - (rep.c1 + rep.c2 * q.distance));
    if (rep.held_out.empty()) rep.worst_held_out_excess = 0.0;
    rep.holds = rep.worst_held_out_excess <= 1e-12 * std::max(1.0, rep.c1);
    return rep;
}

AffineInvarianceReport affine_invariance_check(const DualPotential& u0, const DualPotential& u1, Point c, double b,
                                               double p, std::shared_ptr<const SpatialGrid> spatial) {
    require_same_grid(u0, u1, "affine_invariance_check");
    const ConvexBody& body = u0.body();
    const int dim = body.dim();
    if (!spatial || spatial->dim() != dim) throw ConfigError("affine_invariance_check: spatial grid dimension mismatch");
    if (!std::isfinite(b)) throw ConfigError("affine_invariance_check: offset must be finite");
    for (int a = 0; a < dim; ++a)
        if (!std::isfinite(c[a]) || std::abs(c[a]) > body.diameter())
            throw ConfigError("affine_invariance_check: translation leaves the configured range");

    const auto moved = MomentGrid::make(body.translated(c), u0.grid()->cells());
    auto round_trip = [&](const DualPotential& u, bool shift) {
        const PrimalPotential prim = to_primal(u, spatial);
        if (!shift) return to_dual(prim, u.grid());
        std::vector<double> vals(prim.values().begin(), prim.values().end());
        for (std::size_t k = 0; k < vals.size(); ++k) vals[k] += dot(c, spatial->node(k), dim) + b;
        return to_dual(PrimalPotential(spatial, std::move(vals), moved->body(), "affine_shift"), moved);
    };
    AffineInvarianceReport rep;
    rep.before = dp_endpoint(round_trip(u0, false), round_trip(u1, false), p);
    rep.after = dp_endpoint(round_trip(u0, true), round_trip(u1, true), p);
    rep.deviation = std::abs(rep.after - rep.before) / std::max(rep.before, std::numeric_limits<double>::min());
    if (rep.before == 0.0 && rep.after == 0.0) rep.deviation = 0.0;
    return rep;
}

} // namespace ppgeo
