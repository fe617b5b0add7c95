#include "ppgeo/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <utility>

#include "ppgeo/errors.hpp"

namespace ppgeo {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

// "<bundled pair>.0" or "<bundled pair>.1".
std::optional<std::pair<const CatalogEntry*, int>> catalog_potential(std::string_view name) {
    if (name.size() < 3 || name[name.size() - 2] != '.') return std::nullopt;
    const char side = name.back();
    if (side != '0' && side != '1') return std::nullopt;
    const auto base = name.substr(0, name.size() - 2);
    for (const auto& e : catalog())
        if (e.name == base) return std::make_pair(&e, side - '0');
    return std::nullopt;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError("config: " + where + ": " + what);
}

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(where, "expected an object");
    for (const auto& [key, _] : j.items())
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
            fail(where, "unknown key '" + key + "'");
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(where, "expected a finite number");
    return v;
}

int integer(const json& j, const std::string& where, int lo) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    const auto v = j.get<long long>();
    if (v < lo || v > 1'000'000) fail(where, "out of range (minimum " + std::to_string(lo) + ")");
    return static_cast<int>(v);
}

std::vector<double> numbers(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(number(j[k], where + "[" + std::to_string(k) + "]"));
    return out;
}

std::string text(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

Point point(const json& j, int dim, const std::string& where) {
    const auto v = numbers(j, where);
    if (static_cast<int>(v.size()) != dim) fail(where, "expected " + std::to_string(dim) + " coordinates");
    Point p{0.0, 0.0};
    for (int a = 0; a < dim; ++a) p[a] = v[a];
    return p;
}

ConvexBody body_from_json(const json& j, int dim, const std::string& where) {
    if (!j.is_object() || !j.contains("kind")) fail(where, "expected an object with 'kind'");
    const std::string kind = text(j["kind"], where + ".kind");
    try {
        if (kind == "interval") {
            if (dim != 1) fail(where, "an interval needs dimension 1");
            only_keys(j, where, {"kind", "lo", "hi"});
            if (!j.contains("lo") || !j.contains("hi")) fail(where, "interval needs 'lo' and 'hi'");
            return ConvexBody::interval(number(j["lo"], where + ".lo"), number(j["hi"], where + ".hi"));
        }
        if (kind == "box") {
            if (dim != 2) fail(where, "a box needs dimension 2");
            only_keys(j, where, {"kind", "lo", "hi"});
            if (!j.contains("lo") || !j.contains("hi")) fail(where, "box needs 'lo' and 'hi'");
            return ConvexBody::rectangle(point(j["lo"], 2, where + ".lo"), point(j["hi"], 2, where + ".hi"));
        }
        if (kind == "polygon") {
            if (dim != 2) fail(where, "a polygon needs dimension 2");
            only_keys(j, where, {"kind", "vertices"});
            if (!j.contains("vertices") || !j["vertices"].is_array()) fail(where, "polygon needs 'vertices'");
            std::vector<Point> pts;
            for (std::size_t k = 0; k < j["vertices"].size(); ++k)
                pts.push_back(point(j["vertices"][k], 2, where + ".vertices[" + std::to_string(k) + "]"));
            return ConvexBody::polygon(std::move(pts));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        fail(where, e.what());
    }
    fail(where + ".kind", "unknown body kind '" + kind + "'");
}

ojson body_to_json(const ConvexBody& b) {
    if (b.dim() == 1) return {{"kind", "interval"}, {"lo", b.vertices()[0][0]}, {"hi", b.vertices()[1][0]}};
    const Box box = b.bounding_box();
    if (b == ConvexBody::rectangle(box.lo, box.hi))
        return {{"kind", "box"}, {"lo", {box.lo[0], box.lo[1]}}, {"hi", {box.hi[0], box.hi[1]}}};
    ojson v = ojson::array();
    for (const Point& p : b.vertices()) v.push_back({p[0], p[1]});
    return {{"kind", "polygon"}, {"vertices", v}};
}

PotentialKind parse_kind(const std::string& s, const std::string& where) {
    if (s == "dual_closed_form") return PotentialKind::kDualClosedForm;
    if (s == "primal_obstacle") return PotentialKind::kPrimalObstacle;
    if (s == "dual_samples") return PotentialKind::kDualSamples;
    fail(where, "unknown potential kind '" + s + "'");
}

PotentialSpec potential_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    PotentialSpec p;
    if (!j.contains("name") || !j.contains("kind")) fail(where, "needs 'name' and 'kind'");
    p.name = text(j["name"], where + ".name");
    p.kind = parse_kind(text(j["kind"], where + ".kind"), where + ".kind");
    if (p.kind == PotentialKind::kDualSamples) {
        only_keys(j, where, {"name", "kind", "values"});
        if (!j.contains("values") || !j["values"].is_array()) fail(where, "dual_samples needs 'values'");
        for (std::size_t k = 0; k < j["values"].size(); ++k) {
            const auto& v = j["values"][k];
            const std::string at = where + ".values[" + std::to_string(k) + "]";
            if (v.is_string() && v.get<std::string>() == "inf")
                p.samples.push_back(kInfinity);
            else
                p.samples.push_back(number(v, at));
        }
        return p;
    }
    only_keys(j, where, {"name", "kind", "form", "params"});
    if (!j.contains("form")) fail(where, "needs 'form'");
    p.form.id = text(j["form"], where + ".form");
    if (j.contains("params")) p.form.params = numbers(j["params"], where + ".params");
    return p;
}

ojson potential_to_json(const PotentialSpec& p) {
    ojson j{{"name", p.name}, {"kind", potential_kind_name(p.kind)}};
    if (p.kind == PotentialKind::kDualSamples) {
        ojson v = ojson::array();
        for (double x : p.samples) v.push_back(std::isfinite(x) ? ojson(x) : ojson("inf"));
        j["values"] = v;
    } else {
        j["form"] = p.form.id;
        j["params"] = p.form.params;
    }
    return j;
}

} // namespace

const char* potential_kind_name(PotentialKind k) {
    switch (k) {
    case PotentialKind::kDualClosedForm: return "dual_closed_form";
    case PotentialKind::kPrimalObstacle: return "primal_obstacle";
    case PotentialKind::kDualSamples: return "dual_samples";
    }
    return "?";
}

ExperimentConfig ExperimentConfig::defaults(int dim) {
    const Setup s = Setup::defaults(dim);
    ExperimentConfig c;
    c.dimension = dim;
    c.class_body = s.cls.body();
    c.kahler_body = s.cls.kahler();
    c.moment_cells = s.moment->cells();
    c.primal_half_width = s.spatial->box().hi[0];
    c.primal_cells = s.spatial->cells();
    c.epsilon_moment_cells = s.family.moment_cells();
    for (const auto& m : s.family.members()) c.epsilon_schedule.push_back(m.epsilon);
    c.harness = s.settings;
    return c;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    only_keys(j, "top level",
              {"format_version", "dimension", "class_body", "kahler_body", "grid", "epsilon_schedule", "potentials",
               "pairs", "p_values", "seed", "harness", "geodesic"});
    if (j.contains("format_version") && integer(j["format_version"], "format_version", 0) != kFormatVersion)
        fail("format_version", "unsupported version (expected " + std::to_string(kFormatVersion) + ")");
    if (!j.contains("dimension")) fail("dimension", "required");
    const int dim = integer(j["dimension"], "dimension", 1);
    if (dim != 1 && dim != 2) fail("dimension", "must be 1 or 2");
    ExperimentConfig c = defaults(dim);

    if (j.contains("class_body")) c.class_body = body_from_json(j["class_body"], dim, "class_body");
    if (j.contains("kahler_body")) c.kahler_body = body_from_json(j["kahler_body"], dim, "kahler_body");
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        only_keys(g, "grid", {"moment_cells", "primal_half_width", "primal_cells", "epsilon_moment_cells"});
        if (g.contains("moment_cells")) c.moment_cells = integer(g["moment_cells"], "grid.moment_cells", 2);
        if (g.contains("primal_half_width"))
            c.primal_half_width = number(g["primal_half_width"], "grid.primal_half_width");
        if (g.contains("primal_cells")) c.primal_cells = integer(g["primal_cells"], "grid.primal_cells", 4);
        if (g.contains("epsilon_moment_cells"))
            c.epsilon_moment_cells = integer(g["epsilon_moment_cells"], "grid.epsilon_moment_cells", 2);
    }
    if (j.contains("epsilon_schedule")) c.epsilon_schedule = numbers(j["epsilon_schedule"], "epsilon_schedule");
    if (j.contains("p_values")) c.harness.p_values = numbers(j["p_values"], "p_values");
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) fail("seed", "expected a nonnegative integer");
        c.harness.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("potentials")) {
        if (!j["potentials"].is_array()) fail("potentials", "expected an array");
        for (std::size_t k = 0; k < j["potentials"].size(); ++k)
            c.potentials.push_back(potential_from_json(j["potentials"][k], "potentials[" + std::to_string(k) + "]"));
    }
    if (j.contains("pairs")) {
        if (!j["pairs"].is_array()) fail("pairs", "expected an array");
        for (std::size_t k = 0; k < j["pairs"].size(); ++k) {
            const auto& e = j["pairs"][k];
            const std::string at = "pairs[" + std::to_string(k) + "]";
            only_keys(e, at, {"name", "first", "second"});
            if (!e.contains("name") || !e.contains("first") || !e.contains("second"))
                fail(at, "needs 'name', 'first' and 'second'");
            c.pairs.push_back({text(e["name"], at + ".name"), text(e["first"], at + ".first"),
                               text(e["second"], at + ".second")});
        }
    }
    if (j.contains("harness")) {
        const auto& h = j["harness"];
        only_keys(h, "harness",
                  {"involution_count", "identity_pairs", "pair_count", "limit_pairs", "axiom_potentials",
                   "sup_bound_potentials", "singular_caps"});
        auto count = [&](const char* key, int& slot, int lo) {
            if (h.contains(key)) slot = integer(h[key], std::string("harness.") + key, lo);
        };
        count("involution_count", c.harness.involution_count, 1);
        count("identity_pairs", c.harness.identity_pairs, 1);
        count("pair_count", c.harness.pair_count, 1);
        count("limit_pairs", c.harness.limit_pairs, 1);
        count("axiom_potentials", c.harness.axiom_potentials, 3);
        count("sup_bound_potentials", c.harness.sup_bound_potentials, 4);
        if (h.contains("singular_caps")) c.harness.singular_caps = numbers(h["singular_caps"], "harness.singular_caps");
    }
    if (j.contains("geodesic")) {
        only_keys(j["geodesic"], "geodesic", {"times"});
        if (j["geodesic"].contains("times")) c.geodesic_times = numbers(j["geodesic"]["times"], "geodesic.times");
    }
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config: '" + path + "' is not valid JSON: " + e.what());
    }
    return from_json(j);
}

void ExperimentConfig::validate() const {
    if (class_body.dim() != dimension) fail("class_body", "dimension mismatch");
    if (kahler_body.dim() != dimension) fail("kahler_body", "dimension mismatch");
    if (!(primal_half_width > 0.0)) fail("grid.primal_half_width", "must be positive");
    if (epsilon_schedule.empty()) fail("epsilon_schedule", "must not be empty");
    for (std::size_t k = 0; k < epsilon_schedule.size(); ++k) {
        if (!(epsilon_schedule[k] > 0.0)) fail("epsilon_schedule", "entries must be positive");
        if (k > 0 && !(epsilon_schedule[k] < epsilon_schedule[k - 1]))
            fail("epsilon_schedule", "must be strictly decreasing");
    }
    if (harness.p_values.empty()) fail("p_values", "must not be empty");
    for (double p : harness.p_values)
        if (!(p >= 1.0)) fail("p_values", "every p must be >= 1");
    const auto& caps = harness.singular_caps;
    if (caps.size() < 2) fail("harness.singular_caps", "needs at least two caps");
    for (std::size_t k = 0; k < caps.size(); ++k) {
        if (!(caps[k] > 0.0)) fail("harness.singular_caps", "caps must be positive");
        if (k > 0 && !(caps[k] > caps[k - 1])) fail("harness.singular_caps", "caps must be strictly increasing");
    }
    if (geodesic_times.empty()) fail("geodesic.times", "must not be empty");
    for (double t : geodesic_times)
        if (!(t >= 0.0 && t <= 1.0)) fail("geodesic.times", "times must lie in [0, 1]");

    std::set<std::string> names;
    const std::size_t nodes = dimension == 1 ? static_cast<std::size_t>(moment_cells)
                                             : static_cast<std::size_t>(moment_cells) * moment_cells;
    Point centre{0.0, 0.0};
    for (const Point& v : class_body.vertices())
        for (int a = 0; a < dimension; ++a) centre[a] += v[a] / static_cast<double>(class_body.vertices().size());
    for (const auto& p : potentials) {
        const std::string at = "potential '" + p.name + "'";
        if (p.name.empty()) fail("potentials", "names must not be empty");
        if (!names.insert(p.name).second) fail(at, "defined twice");
        if (p.kind == PotentialKind::kDualSamples) {
            if (p.samples.size() != nodes)
                fail(at, "expected " + std::to_string(nodes) + " samples (one per moment node), got " +
                             std::to_string(p.samples.size()));
            continue;
        }
        if (!is_known_closed_form(p.form.id)) fail(at, "unknown form '" + p.form.id + "'");
        try {
            (void)eval_closed_form(p.form, centre, dimension);
        } catch (const Error& e) {
            fail(at, e.what());
        }
    }
    std::set<std::string> pair_names;
    for (const auto& pr : pairs) {
        const std::string at = "pair '" + pr.name + "'";
        if (pr.name.empty()) fail("pairs", "names must not be empty");
        if (!pair_names.insert(pr.name).second) fail(at, "defined twice");
        for (const auto* ref : {&pr.first, &pr.second})
            if (!find_potential(*ref) && !catalog_potential(*ref))
                fail(at, "references undefined potential '" + *ref + "'");
    }
}

ojson ExperimentConfig::to_json() const {
    ojson pots = ojson::array();
    for (const auto& p : potentials) pots.push_back(potential_to_json(p));
    ojson prs = ojson::array();
    for (const auto& p : pairs) prs.push_back({{"name", p.name}, {"first", p.first}, {"second", p.second}});
    return {
        {"format_version", kFormatVersion},
        {"dimension", dimension},
        {"class_body", body_to_json(class_body)},
        {"kahler_body", body_to_json(kahler_body)},
        {"grid",
         {{"moment_cells", moment_cells},
          {"primal_half_width", primal_half_width},
          {"primal_cells", primal_cells},
          {"epsilon_moment_cells", epsilon_moment_cells}}},
        {"epsilon_schedule", epsilon_schedule},
        {"p_values", harness.p_values},
        {"seed", harness.seed},
        {"potentials", pots},
        {"pairs", prs},
        {"harness",
         {{"involution_count", harness.involution_count},
          {"identity_pairs", harness.identity_pairs},
          {"pair_count", harness.pair_count},
          {"limit_pairs", harness.limit_pairs},
          {"axiom_potentials", harness.axiom_potentials},
          {"sup_bound_potentials", harness.sup_bound_potentials},
          {"singular_caps", harness.singular_caps}}},
        {"geodesic", {{"times", geodesic_times}}},
    };
}

Setup ExperimentConfig::setup() const {
    validate();
    return Setup(ClassBody(class_body, kahler_body), moment_cells, primal_half_width, primal_cells, epsilon_schedule,
                 epsilon_moment_cells, harness);
}

const PotentialSpec* ExperimentConfig::find_potential(std::string_view name) const {
    for (const auto& p : potentials)
        if (p.name == name) return &p;
    return nullptr;
}

const PairSpec* ExperimentConfig::find_pair(std::string_view name) const {
    for (const auto& p : pairs)
        if (p.name == name) return &p;
    return nullptr;
}

namespace {

ResolvedPotential from_obstacle(std::string name, const Setup& s, const ClosedForm& form) {
    Obstacle f = Obstacle::from_closed_form(s.spatial, form);
    DualPotential d = envelope(f, s.moment).dual;
    return {std::move(name), std::move(d), std::move(f)};
}

} // namespace

ResolvedPotential resolve_potential(const ExperimentConfig& cfg, const Setup& s, std::string_view name) {
    const PotentialSpec* p = cfg.find_potential(name);
    if (!p) {
        const auto ref = catalog_potential(name);
        if (!ref) throw ConfigError("unknown potential '" + std::string(name) + "'");
        const PairForms& f = ref->first->in_dim(s.dim());
        const std::string n(name);
        if (f.dual0) return {n, DualPotential::from_closed_form(s.moment, ref->second ? *f.dual1 : *f.dual0), std::nullopt};
        return from_obstacle(n, s, ref->second ? *f.obstacle1 : *f.obstacle0);
    }
    switch (p->kind) {
    case PotentialKind::kDualClosedForm:
        return {p->name, DualPotential::from_closed_form(s.moment, p->form), std::nullopt};
    case PotentialKind::kPrimalObstacle:
        return from_obstacle(p->name, s, p->form);
    case PotentialKind::kDualSamples:
        if (p->samples.size() != s.moment->size())
            throw ConfigError("potential '" + p->name + "': sample count does not match the moment grid");
        return {p->name, DualPotential(s.moment, p->samples, "samples:" + p->name), std::nullopt};
    }
    throw ConfigError("unknown potential kind");
}

ResolvedPair resolve_pair(const ExperimentConfig& cfg, const Setup& s, std::string_view name) {
    if (const PairSpec* p = cfg.find_pair(name)) {
        ResolvedPair out{p->name, resolve_potential(cfg, s, p->first), resolve_potential(cfg, s, p->second), false};
        out.singular = out.first.dual.singular() || out.second.dual.singular();
        return out;
    }
    const CatalogEntry& e = catalog_entry(name);
    return {e.name, resolve_potential(cfg, s, e.name + ".0"), resolve_potential(cfg, s, e.name + ".1"), e.singular};
}

} // namespace ppgeo
