#pragma once

#include <memory>
#include <vector>

#include "ppgeo/body.hpp"
#include "ppgeo/grid.hpp"

namespace ppgeo {

/// The class body P together with the perturbation body Q, which must
/// contain a ball around the origin.
class ClassBody {
public:
    ClassBody(ConvexBody body, ConvexBody kahler);

    /// n = 1: P = [0,1], Q = [-1,1]. n = 2: unit square and [-1,1]^2.
    static ClassBody standard(int dim);

    int dim() const { return body_.dim(); }
    const ConvexBody& body() const { return body_; }
    const ConvexBody& kahler() const { return kahler_; }
    double volume() const { return volume_; }
    double inv_volume() const { return 1.0 / volume_; }

    /// P + eps Q.
    ConvexBody perturbed(double eps) const { return minkowski_sum(body_, kahler_, eps); }

private:
    ConvexBody body_;
    ConvexBody kahler_;
    double volume_;
};

struct EpsilonMember {
    double epsilon;
    ConvexBody body;
    std::shared_ptr<const MomentGrid> grid;
    /// Exact volume of P + eps Q.
    double volume;
};

/// Perturbed bodies P + eps_k Q on a strictly decreasing positive schedule.
/// Every member's moment grid uses the same cell count per axis.
class EpsilonFamily {
public:
    EpsilonFamily(ClassBody base, std::vector<double> schedule, int moment_cells);

    /// eps_k = 0.2 * 2^-k, k = 0..6.
    static std::vector<double> default_schedule();

    const ClassBody& base() const { return base_; }
    const std::vector<EpsilonMember>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    const EpsilonMember& operator[](std::size_t k) const { return members_[k]; }
    int moment_cells() const { return cells_; }

private:
    ClassBody base_;
    std::vector<EpsilonMember> members_;
    int cells_;
};

} // namespace ppgeo
