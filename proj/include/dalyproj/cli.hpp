#pragma once

// File-based workflows behind the `dalyproj` executable. Each command returns
// an exit status: 0 success, 1 domain or validation failure, 2 environment or
// I/O failure.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "dalyproj/dataset.hpp"

namespace dalyproj::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitEnvironment = 2;

struct RunConfig {
    std::optional<std::filesystem::path> input_path; // absent: embedded reference panel
    std::optional<std::filesystem::path> published_path;
    double tolerance = 0.005;
    std::filesystem::path out_dir = ".";
    std::optional<IndicatorKind> indicator;
    std::optional<AreaId> area;
};

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err);

// Writes projections.csv: area,indicator,year,value,model,capped
int cmd_project(const RunConfig& config, std::ostream& out, std::ostream& err);

// Writes audit.csv: area,indicator,published,computed,rel_diff,status. Exit 0
// only when the divergent set equals the shipped expected-divergence list.
int cmd_audit(const RunConfig& config, std::ostream& out, std::ostream& err);

// Writes hdi_by_area.csv, daly_{a,b,c}_by_area.csv and the gender scatter files.
int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err);

// Writes gender_analysis.csv: area,year,overall_mf,disabled_mf,gap,outlier,projected
int cmd_gender(const RunConfig& config, std::ostream& out, std::ostream& err);

// The versioned list of (area, indicator) rows whose published 2031 values
// the documented method does not reproduce. Sorted.
const std::vector<Panel::Key>& expected_divergence();

// Parses argv (subcommand plus flags) and dispatches. Never returns anything
// other than 0, 1 or 2.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace dalyproj::cli
