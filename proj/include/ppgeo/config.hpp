#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ppgeo/closed_form.hpp"
#include "ppgeo/envelopes.hpp"
#include "ppgeo/harness.hpp"

namespace ppgeo {

enum class PotentialKind { kDualClosedForm, kPrimalObstacle, kDualSamples };

const char* potential_kind_name(PotentialKind k);

struct PotentialSpec {
    std::string name;
    PotentialKind kind = PotentialKind::kDualClosedForm;
    ClosedForm form;
    /// kDualSamples only: one value per moment node in storage order.
    std::vector<double> samples;
};

struct PairSpec {
    std::string name;
    std::string first, second;
};

/// Experiment description read from JSON. Every field except `dimension`
/// has a default for its dimension; unknown keys are rejected.
struct ExperimentConfig {
    static constexpr int kFormatVersion = 1;

    int dimension = 1;
    ConvexBody class_body = ConvexBody::interval(0.0, 1.0);
    ConvexBody kahler_body = ConvexBody::interval(-1.0, 1.0);
    int moment_cells = 1024;
    double primal_half_width = 4.0;
    int primal_cells = 256;
    int epsilon_moment_cells = 1024;
    std::vector<double> epsilon_schedule;
    std::vector<PotentialSpec> potentials;
    /// Sides may name config potentials or bundled ones ("ramp_pair.1").
    std::vector<PairSpec> pairs;
    std::vector<double> geodesic_times{0.0, 0.25, 0.5, 0.75, 1.0};
    HarnessSettings harness;

    /// Harness defaults for n = 1 or 2, no user potentials.
    static ExperimentConfig defaults(int dim);
    /// Throws ConfigError with the offending key on any schema violation.
    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig from_file(const std::string& path);

    nlohmann::ordered_json to_json() const;
    Setup setup() const;
    /// Throws ConfigError unless every invariant holds.
    void validate() const;

    const PotentialSpec* find_potential(std::string_view name) const;
    const PairSpec* find_pair(std::string_view name) const;
};

/// A named potential on the setup's grids. Obstacles carry their envelope.
struct ResolvedPotential {
    std::string name;
    DualPotential dual;
    std::optional<Obstacle> obstacle;
};

struct ResolvedPair {
    std::string name;
    ResolvedPotential first, second;
    bool singular = false;
};

/// A potential defined in the config, or "<bundled pair>.0" / ".1" for one
/// side of a bundled pair. Unknown names throw ConfigError.
ResolvedPotential resolve_potential(const ExperimentConfig& cfg, const Setup& s, std::string_view name);

/// Config pairs first, then bundled catalog pairs. ConfigError when unknown.
ResolvedPair resolve_pair(const ExperimentConfig& cfg, const Setup& s, std::string_view name);

} // namespace ppgeo
