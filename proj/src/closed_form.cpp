#include "ppgeo/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ppgeo/errors.hpp"
#include "ppgeo/grid.hpp"

namespace ppgeo {

namespace {

double param(std::span<const double> params, std::size_t i, double fallback) {
    return i < params.size() ? params[i] : fallback;
}

double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double max_affine(std::span<const double> params, const Point& x, int dim, std::string_view id) {
    const std::size_t stride = dim == 1 ? 2 : 3;
    if (params.empty() || params.size() % stride != 0)
        throw ConfigError(std::string(id) + ": parameters must be (slope, intercept) groups");
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < params.size(); k += stride) {
        const double v = dim == 1 ? params[k] * x[0] + params[k + 1]
                                  : params[k] * x[0] + params[k + 1] * x[1] + params[k + 2];
        best = std::max(best, v);
    }
    return best;
}

} // namespace

const std::vector<std::string>& closed_form_ids() {
    static const std::vector<std::string> ids = {
        "zero",           "constant",         "support_[0,1]",     "support_box",
        "dual_quadratic", "dual_linear",      "dual_max_affine",   "dual_log_barrier",
        "dual_power_cusp", "primal_quadratic", "primal_max_affine", "primal_wave",
        "softplus",
    };
    return ids;
}

bool is_known_closed_form(std::string_view id) {
    const auto& ids = closed_form_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

double eval_closed_form(std::string_view id, const Point& x, int dim, std::span<const double> params) {
    if (dim != 1 && dim != 2) throw ConfigError("closed form: dimension must be 1 or 2");
    const int n = dim;
    if (id == "zero") return 0.0;
    if (id == "constant") return param(params, 0, 0.0);
    if (id == "support_[0,1]") {
        double v = std::max(0.0, x[0]);
        if (n == 2) v += std::max(0.0, x[1]);
        return v;
    }
    if (id == "support_box") {
        if (params.size() != static_cast<std::size_t>(2 * n)) throw ConfigError("support_box: needs 2n parameters");
        double v = 0.0;
        for (int a = 0; a < n; ++a) v += std::max(params[2 * a] * x[a], params[2 * a + 1] * x[a]);
        return v;
    }
    if (id == "dual_quadratic") {
        const double s = param(params, 0, 1.0);
        const double d0 = x[0] - param(params, 1, 0.0);
        const double d1 = n == 2 ? x[1] - param(params, 2, 0.0) : 0.0;
        return 0.5 * s * (d0 * d0 + d1 * d1);
    }
    if (id == "dual_linear") {
        if (params.size() != static_cast<std::size_t>(n + 1)) throw ConfigError("dual_linear: needs n+1 parameters");
        return n == 1 ? params[0] * x[0] + params[1] : params[0] * x[0] + params[1] * x[1] + params[2];
    }
    if (id == "dual_max_affine" || id == "primal_max_affine") return max_affine(params, x, n, id);
    if (id == "dual_log_barrier") {
        const double pole = param(params, 0, 1.0);
        double v = 0.0;
        for (int a = 0; a < n; ++a) {
            if (x[a] >= pole) return kInfinity;
            v -= std::log(pole - x[a]);
        }
        return v;
    }
    if (id == "dual_power_cusp") {
        const double alpha = param(params, 0, 0.25);
        const double pole = param(params, 1, 1.0);
        if (!(alpha > 0.0)) throw ConfigError("dual_power_cusp: alpha must be positive");
        double v = 0.0;
        for (int a = 0; a < n; ++a) {
            if (x[a] >= pole) return kInfinity;
            v += std::pow(pole - x[a], -alpha) - 1.0;
        }
        return v;
    }
    if (id == "primal_quadratic") {
        const double s = param(params, 0, 1.0);
        const double d0 = x[0] - param(params, 1, 0.0);
        const double d1 = n == 2 ? x[1] - param(params, 2, 0.0) : 0.0;
        return 0.5 * s * (d0 * d0 + d1 * d1) + param(params, n == 2 ? 3 : 2, 0.0);
    }
    if (id == "primal_wave") {
        if (n == 1) {
            if (params.size() != 6) throw ConfigError("primal_wave: needs [a,m,b,k,phi,c]");
            const double d = x[0] - params[1];
            return 0.5 * params[0] * d * d + params[2] * std::sin(params[3] * x[0] + params[4]) + params[5];
        }
        if (params.size() != 8) throw ConfigError("primal_wave: needs [a,m1,m2,b,k1,k2,phi,c]");
        const double d0 = x[0] - params[1];
        const double d1 = x[1] - params[2];
        return 0.5 * params[0] * (d0 * d0 + d1 * d1) +
               params[3] * std::sin(params[4] * x[0] + params[5] * x[1] + params[6]) + params[7];
    }
    if (id == "softplus") {
        const double w = param(params, 0, 1.0);
        const double s = param(params, 1, 1.0);
        const double c = param(params, 2, 0.0);
        if (!(s > 0.0)) throw ConfigError("softplus: steepness must be positive");
        double v = (w / s) * softplus(s * (x[0] - c));
        if (n == 2) v += (w / s) * softplus(s * (x[1] - c));
        return v;
    }
    throw ConfigError("unknown closed-form identifier: " + std::string(id));
}

std::optional<double> closed_form_hessian_bound(const ClosedForm& f, int dim) {
    const auto& p = f.params;
    if (f.id == "zero" || f.id == "constant" || f.id == "dual_linear") return 0.0;
    if (f.id == "dual_quadratic" || f.id == "primal_quadratic") return std::abs(param(p, 0, 1.0));
    if (f.id == "primal_wave") {
        if (dim == 1 && p.size() == 6) return std::abs(p[0]) + std::abs(p[2]) * p[3] * p[3];
        if (dim == 2 && p.size() == 8) return std::abs(p[0]) + std::abs(p[3]) * (p[4] * p[4] + p[5] * p[5]);
        throw ConfigError("primal_wave: malformed parameters");
    }
    if (f.id == "softplus") return std::abs(param(p, 0, 1.0)) * param(p, 1, 1.0) / 4.0;
    if (!is_known_closed_form(f.id)) throw ConfigError("unknown closed-form identifier: " + f.id);
    return std::nullopt;
}

} // namespace ppgeo
