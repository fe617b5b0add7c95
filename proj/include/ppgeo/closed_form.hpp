#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ppgeo/body.hpp"

namespace ppgeo {

/// A built-in closed-form expression: corpus identifier plus numeric
/// parameters. Expressions are never parsed.
struct ClosedForm {
    std::string id;
    std::vector<double> params;
};

/// Identifiers of the built-in corpus, in stable order.
///
///   zero, constant[c]
///   support_[0,1]                       max(0,x) (n=2: sum over axes)
///   support_box[a1,b1(,a2,b2)]          sum_i max(a_i x_i, b_i x_i)
///   dual_quadratic[s=1,c1=0,c2=0]       s|p-c|^2/2
///   dual_linear[a1,(a2,)b]              <a,p> + b
///   dual_max_affine[a,(a2,)b,...]       max_k <a_k,p> + b_k
///   dual_log_barrier[pole=1]            -sum_i log(pole - p_i), +inf for p_i >= pole
///   dual_power_cusp[alpha,pole=1]       sum_i (pole - p_i)^-alpha - 1, +inf for p_i >= pole
///   primal_quadratic[s=1,m1=0,(m2=0,)c=0]
///   primal_max_affine                   same layout as dual_max_affine
///   primal_wave[a,m,b,k,phi,c]          a(x-m)^2/2 + b sin(kx+phi) + c
///                                       n=2: [a,m1,m2,b,k1,k2,phi,c]
///   softplus[w,s,c]                     (w/s) log(1+exp(s(x-c))), n=2: sum over axes
const std::vector<std::string>& closed_form_ids();

bool is_known_closed_form(std::string_view id);

/// Deterministic value at `point`; +inf only at the expression's singular locus.
/// Throws ConfigError for an unknown identifier or malformed parameters.
double eval_closed_form(std::string_view id, const Point& point, int dim, std::span<const double> params = {});

inline double eval_closed_form(const ClosedForm& f, const Point& point, int dim) {
    return eval_closed_form(f.id, point, dim, f.params);
}

/// Declared bound C with D^2 f <= C Id; empty when the expression has kinks.
std::optional<double> closed_form_hessian_bound(const ClosedForm& f, int dim);

} // namespace ppgeo
