#pragma once

#include <string>
#include <vector>

#include "latspec/lattice.hpp"
#include "latspec/serialize.hpp"

namespace latspec {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SuiteReport {
    Family family;
    bool skipped = false;  // instance refused by the size cap
    std::string skip_reason;
    std::vector<CheckResult> checks;

    bool passed() const;
};

struct BatteryReport {
    std::vector<SuiteReport> suites;
    bool passed() const;
};

/// Runs the whole identity battery on one instance: lattice structure,
/// counting constants, indicator identities, star identities, eigenspace
/// decomposition with the kernel oracle, level-matrix expansion, tight
/// frames, the level-1 frame constant, and the pairwise product
/// verification on V_1.
SuiteReport run_suite(const Family& family, const SizeLimits& limits = {});

/// The built-in instance battery for `verify --all`.
std::vector<Family> default_battery();

BatteryReport run_battery(const std::vector<Family>& families, const SizeLimits& limits = {});

Json suite_report_to_json(const SuiteReport& report);
Json battery_report_to_json(const BatteryReport& report);

}  // namespace latspec
