#include "ppgeo/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace ppgeo {

double round12(double v) {
    if (!std::isfinite(v) || v == 0.0) return v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

std::string format12(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

void round_in_place(ojson& j) {
    if (j.is_number_float()) {
        const double v = j.get<double>();
        j = std::isfinite(v) ? ojson(round12(v)) : ojson(format12(v));
    } else if (j.is_structured()) {
        for (auto& e : j) round_in_place(e);
    }
}

ojson named_values(const std::vector<std::pair<std::string, double>>& v) {
    ojson out = ojson::object();
    for (const auto& [k, x] : v) out[k] = x;
    return out;
}

} // namespace

std::string dump_json(const ojson& j) {
    ojson copy = j;
    round_in_place(copy);
    return copy.dump(2) + "\n";
}

ojson to_json(const DistanceReport& r) {
    ojson table = ojson::array();
    for (const auto& row : r.table)
        table.push_back({{"parameter", row.parameter}, {"volume", row.volume}, {"value", row.value}});
    return {
        {"format_version", kReportFormatVersion},
        {"route", route_name(r.route)},
        {"p", r.p},
        {"value", r.value},
        {"extrapolated", r.extrapolated},
        {"fit_residual", r.fit_residual},
        {"last_increment", r.last_increment},
        {"converged", r.converged},
        {"h", r.h},
        {"endpoint_value", r.endpoint_value},
        {"deviations", named_values(r.deviations)},
        {"table", table},
    };
}

std::string to_csv(const DistanceReport& r) {
    std::string out = std::string(kDistanceCsvHeader) + "\n";
    for (const auto& row : r.table) {
        out += route_name(r.route);
        for (double v : {r.p, row.parameter, row.volume, row.value, r.extrapolated, r.fit_residual}) {
            out += ',';
            out += format12(v);
        }
        out += '\n';
    }
    return out;
}

ojson to_json(const TheoremReport& r) {
    ojson cases = ojson::array();
    for (const auto& c : r.cases) cases.push_back({{"label", c.label}, {"slack", c.slack}});
    return {
        {"id", r.id},
        {"statement", r.statement},
        {"corpus", r.corpus},
        {"unit", r.unit},
        {"tolerance", r.tolerance},
        {"worst_slack", r.worst_slack},
        {"pass", r.pass},
        {"cases", cases},
        {"metrics", named_values(r.metrics)},
    };
}

ojson to_json(const SuiteReport& r) {
    ojson checks = ojson::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    return {{"format_version", kReportFormatVersion}, {"suite", r.id}, {"pass", r.pass()}, {"checks", checks}};
}

ojson to_json(const CurveReport& r) {
    return {
        {"format_version", kReportFormatVersion},
        {"chord_violation", r.chord_violation},
        {"lipschitz_measured", r.lipschitz_measured},
        {"lipschitz_bound", r.lipschitz_bound},
        {"t_convexity_violation", r.t_convexity_violation},
        {"joint_convexity_violation", r.joint_convexity_violation},
        {"hrma_residual", r.hrma_residual},
        {"hrma_gradient_residual", r.hrma_gradient_residual},
        {"h", r.h},
    };
}

ojson coverage_json() {
    ojson rows = ojson::array();
    for (const auto& row : coverage_table()) rows.push_back({{"statement", row.statement}, {"suites", row.suites}});
    return rows;
}

ojson verify_json(const std::vector<SuiteReport>& suites, const ExperimentConfig& cfg) {
    bool all = true;
    ojson list = ojson::array();
    for (const auto& s : suites) {
        all = all && s.pass();
        list.push_back(to_json(s));
    }
    return {
        {"format_version", kReportFormatVersion},
        {"pass", all},
        {"config", cfg.to_json()},
        {"suites", list},
        {"coverage", coverage_json()},
    };
}

std::string verify_text(const std::vector<SuiteReport>& suites) {
    std::string out;
    bool all = true;
    char buf[512];
    for (const auto& s : suites) {
        all = all && s.pass();
        out += s.id + ": " + (s.pass() ? "PASS" : "FAIL") + "\n";
        for (const auto& c : s.checks) {
            std::snprintf(buf, sizeof buf, "  %-44s %s  worst %s  tol %s  (%s, %zu cases)\n", c.id.c_str(),
                          c.pass ? "pass" : "FAIL", format12(c.worst_slack).c_str(), format12(c.tolerance).c_str(),
                          c.unit.c_str(), c.cases.size());
            out += buf;
        }
    }
    out += std::string("overall: ") + (all ? "PASS" : "FAIL") + "\n";
    return out;
}

std::string coverage_text() {
    std::string out;
    for (const auto& row : coverage_table()) {
        out += row.statement + "\n    ";
        for (std::size_t k = 0; k < row.suites.size(); ++k) out += (k ? ", " : "") + row.suites[k];
        out += "\n";
    }
    return out;
}

} // namespace ppgeo
