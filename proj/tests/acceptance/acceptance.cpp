#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ppgeo/cli.hpp"
#include "ppgeo/harness.hpp"
#include "ppgeo/report_io.hpp"

using namespace ppgeo;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    std::string id;
    std::string title;
    std::vector<std::string> suites;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = {
        {"AC1", "Legendre involution", {"involution"}},
        {"AC2", "mass conservation", {"mass"}},
        {"AC3", "envelope identity and density bound", {"berman"}},
        {"AC4", "route agreement", {"route_agreement"}},
        {"AC5", "Pythagorean formula", {"pythagorean"}},
        {"AC6", "geodesics realize d_p", {"geodesic_metric"}},
        {"AC7", "d_1 energy formula", {"d1_energy"}},
        {"AC8", "d_p against I_p", {"ip_comparison"}},
        {"AC9", "epsilon lemmas", {"epsilon_lemmas"}},
        {"AC10", "completeness construction", {"completeness"}},
        {"AC11", "singular finite-energy distances", {"singular"}},
        {"AC12", "curve inequalities", {"curve_inequalities"}},
    };
    return list;
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        std::ifstream f(e.path(), std::ios::binary);
        files[fs::relative(e.path(), dir).string()] = {std::istreambuf_iterator<char>(f), {}};
    }
    return files;
}

std::string worst_check(const SuiteReport& r) {
    const TheoremReport* worst = nullptr;
    for (const auto& c : r.checks)
        if (!worst || (!c.pass && worst->pass)) worst = &c;
    if (!worst) return "no checks";
    return worst->id + " worst " + format12(worst->worst_slack) + " tol " + format12(worst->tolerance);
}

bool determinism(int dim, std::string& detail) {
    const auto root = fs::temp_directory_path() / "ppgeo_acceptance_determinism";
    fs::remove_all(root);
    const std::string d = std::to_string(dim);
    std::string outs[2];
    std::map<std::string, std::string> files[2];
    for (int k = 0; k < 2; ++k) {
        const auto dir = root / ("run" + std::to_string(k));
        std::ostringstream out, err;
        run_cli({"--dim", d, "--seed", "12345", "--out", dir.string(), "verify"}, out, err);
        outs[k] = out.str();
        files[k] = snapshot(dir);
    }
    fs::remove_all(root);
    if (files[0].empty()) {
        detail = "verify wrote no reports";
        return false;
    }
    if (outs[0] != outs[1]) {
        detail = "stdout differs";
        return false;
    }
    if (files[0] != files[1]) {
        detail = "report files differ";
        return false;
    }
    detail = std::to_string(files[0].size()) + " report files byte-identical";
    return true;
}

} // namespace

int main(int argc, char** argv) {
    int dim = 1;
    if (argc == 3 && std::string(argv[1]) == "--dim") dim = std::stoi(argv[2]);
    if (dim != 1 && dim != 2) {
        std::fprintf(stderr, "usage: acceptance [--dim 1|2]\n");
        return 2;
    }
    const Setup s = Setup::defaults(dim);
    std::map<std::string, SuiteReport> reports;
    bool all = true;
    for (const auto& c : criteria()) {
        bool pass = true;
        std::string detail;
        for (const auto& id : c.suites) {
            const auto& r = reports.try_emplace(id, run_suite(id, s)).first->second;
            pass = pass && r.pass();
            detail += (detail.empty() ? "" : "; ") + worst_check(r);
        }
        all = all && pass;
        std::printf("%s: %s  %s (%s)\n", c.id.c_str(), pass ? "PASS" : "FAIL", c.title.c_str(), detail.c_str());
    }
    std::string detail;
    const bool det = determinism(dim, detail);
    all = all && det;
    std::printf("AC13: %s  determinism (%s)\n", det ? "PASS" : "FAIL", detail.c_str());
    std::printf("acceptance n=%d: %s\n", dim, all ? "PASS" : "FAIL");
    return all ? 0 : 1;
}
