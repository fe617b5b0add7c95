#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ppgeo/corpus.hpp"
#include "ppgeo/envelopes.hpp"
#include "ppgeo/grid.hpp"
#include "ppgeo/legendre.hpp"
#include "ppgeo/toric_model.hpp"

namespace ppgeo {

struct CaseSlack {
    std::string label;
    double slack = 0.0;
};

/// One verified statement: per-case slacks against a single tolerance.
/// `unit` says how slacks are measured: "absolute", "relative",
/// "normalized" (error divided by its allowance, tolerance 1), "count" or
/// "fraction".
struct TheoremReport {
    std::string id;
    std::string statement;
    std::string corpus;
    std::string unit = "relative";
    double tolerance = 0.0;
    std::vector<CaseSlack> cases;
    double worst_slack = 0.0;
    bool pass = true;
    /// Diagnostics that do not enter the verdict.
    std::vector<std::pair<std::string, double>> metrics;

    void add(std::string label, double slack) { cases.push_back({std::move(label), slack}); }
    void metric(std::string name, double value) { metrics.emplace_back(std::move(name), value); }
    /// worst_slack = max slack (NaN counts as +inf); pass = worst <= tolerance.
    void finalize();
};

struct SuiteReport {
    std::string id;
    std::vector<TheoremReport> checks;
    bool pass() const;
};

struct HarnessSettings {
    std::uint64_t seed = 20240917;
    std::vector<double> p_values{1.0, 2.0, 3.0};
    int involution_count = 50;
    int identity_pairs = 50;
    int pair_count = 20;
    int limit_pairs = 10;
    int axiom_potentials = 10;
    int sup_bound_potentials = 20;
    std::vector<double> singular_caps{2.0, 4.0, 8.0, 16.0, 32.0};
};

/// Everything a suite needs: the class, grids, epsilon family and settings.
struct Setup {
    ClassBody cls;
    std::shared_ptr<const MomentGrid> moment;
    std::shared_ptr<const SpatialGrid> spatial;
    EpsilonFamily family;
    HarnessSettings settings;

    Setup(ClassBody cls, int moment_cells, double half_width, int spatial_cells, std::vector<double> schedule,
          int epsilon_moment_cells, HarnessSettings settings);

    /// n = 1: P = [0,1], 1024 moment cells, [-4,4] with 256 cells.
    /// n = 2: unit square, 128 moment cells, [-4,4]^2 with 128 cells.
    static Setup defaults(int dim);

    int dim() const { return cls.dim(); }
};

struct DualPair {
    std::string label;
    DualPotential u0, u1;
};

struct ObstaclePair {
    std::string label;
    Obstacle f0, f1;
};

/// Seeded random max-affine dual pairs; `stream` separates independent draws.
std::vector<DualPair> random_dual_pairs(const Setup& s, std::size_t count, std::uint64_t stream);
/// Seeded wave obstacles alternating with primals of random dual pairs.
std::vector<ObstaclePair> random_obstacle_pairs(const Setup& s, std::size_t count, std::uint64_t stream);
/// Obstacle given by the primal of a dual on the spatial grid (bound estimated).
Obstacle obstacle_from_dual(const DualPotential& u, std::shared_ptr<const SpatialGrid> spatial);

TheoremReport check_involution(const Setup& s);
TheoremReport check_mass(const Setup& s);
std::vector<TheoremReport> check_berman(const Setup& s);
std::vector<TheoremReport> check_route_agreement(const Setup& s);
std::vector<TheoremReport> check_pythagorean(const Setup& s);
TheoremReport check_pythagorean_pairs(std::span<const DualPair> pairs, std::span<const double> ps);
std::vector<TheoremReport> check_max_inequality(const Setup& s);
TheoremReport check_geodesic_metric(std::span<const DualPair> pairs, std::span<const double> ps,
                                    std::span<const double> times);
std::vector<TheoremReport> check_d1_energy(const Setup& s);
TheoremReport check_ip_comparison(const Setup& s);
std::vector<TheoremReport> check_epsilon_lemmas(const Setup& s, const ObstaclePair& pair, double p);
std::vector<TheoremReport> check_completeness(const Setup& s, double p);
std::vector<TheoremReport> check_singular(const Setup& s);
std::vector<TheoremReport> check_curve_inequalities(const Setup& s);
std::vector<TheoremReport> check_monotone_continuity(const Setup& s, double p);
TheoremReport check_sup_bound(const Setup& s);
TheoremReport check_affine_invariance(const Setup& s);
std::vector<TheoremReport> check_metric_axioms(const Setup& s);

/// Suite identifiers in declared order.
const std::vector<std::string>& suite_ids();
/// ConfigError for an unknown identifier.
SuiteReport run_suite(const std::string& id, const Setup& s);
/// Runs the suites in the given order.
std::vector<SuiteReport> run_suites(const std::vector<std::string>& ids, const Setup& s);

struct CoverageRow {
    std::string statement;
    std::vector<std::string> suites;
};

const std::vector<CoverageRow>& coverage_table();

} // namespace ppgeo
