#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "ppgeo/config.hpp"
#include "ppgeo/geodesics.hpp"
#include "ppgeo/harness.hpp"
#include "ppgeo/metric.hpp"

namespace ppgeo {

using ojson = nlohmann::ordered_json;

inline constexpr int kReportFormatVersion = 1;
inline constexpr const char* kDistanceCsvHeader = "route,p,epsilon,V_eps,d_p_eps,extrapolated,residual";

/// Nearest double to the 12-significant-digit decimal rendering of v.
double round12(double v);
/// "%.12g"; non-finite values print as inf, -inf, nan.
std::string format12(double v);

/// Every number rounded by round12; non-finite numbers become the strings
/// "inf", "-inf" or "nan". Two-space indent, trailing newline.
std::string dump_json(const ojson& j);

ojson to_json(const DistanceReport& r);
/// Fixed header, one row per table entry.
std::string to_csv(const DistanceReport& r);

ojson to_json(const TheoremReport& r);
ojson to_json(const SuiteReport& r);
ojson to_json(const CurveReport& r);
ojson coverage_json();

/// Aggregate of a verify run: config echo, per-suite reports, coverage table.
ojson verify_json(const std::vector<SuiteReport>& suites, const ExperimentConfig& cfg);
std::string verify_text(const std::vector<SuiteReport>& suites);
std::string coverage_text();

} // namespace ppgeo
