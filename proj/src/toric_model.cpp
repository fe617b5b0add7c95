#include "ppgeo/toric_model.hpp"

#include <cmath>

#include "ppgeo/errors.hpp"

namespace ppgeo {

ClassBody::ClassBody(ConvexBody body, ConvexBody kahler)
    : body_(std::move(body)), kahler_(std::move(kahler)), volume_(body_.volume()) {
    if (body_.dim() != kahler_.dim()) throw ConfigError("class body and perturbation body differ in dimension");
    if (!(volume_ > 0.0)) throw ConfigError("class body has empty interior");
    const double r = 1e-9 * std::max(1.0, kahler_.diameter());
    if (!kahler_.contains_ball(Point{0.0, 0.0}, r))
        throw ConfigError("perturbation body must contain the origin in its interior");
}

ClassBody ClassBody::standard(int dim) {
    if (dim == 1) return ClassBody(ConvexBody::interval(0.0, 1.0), ConvexBody::interval(-1.0, 1.0));
    if (dim == 2) return ClassBody(ConvexBody::square({0.5, 0.5}, 0.5), ConvexBody::square({0.0, 0.0}, 1.0));
    throw ConfigError("dimension must be 1 or 2");
}

EpsilonFamily::EpsilonFamily(ClassBody base, std::vector<double> schedule, int moment_cells)
    : base_(std::move(base)), cells_(moment_cells) {
    if (schedule.empty()) throw ConfigError("epsilon schedule is empty");
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        if (!(schedule[k] > 0.0) || !std::isfinite(schedule[k]))
            throw ConfigError("epsilon schedule entries must be positive");
        if (k > 0 && !(schedule[k] < schedule[k - 1]))
            throw ConfigError("epsilon schedule must be strictly decreasing");
    }
    members_.reserve(schedule.size());
    for (double eps : schedule) {
        ConvexBody body = base_.perturbed(eps);
        auto grid = MomentGrid::make(body, moment_cells);
        const double vol = body.volume();
        members_.push_back(EpsilonMember{eps, std::move(body), std::move(grid), vol});
    }
}

std::vector<double> EpsilonFamily::default_schedule() {
    std::vector<double> s(7);
    for (int k = 0; k < 7; ++k) s[k] = std::ldexp(0.2, -k);
    return s;
}

} // namespace ppgeo
