#pragma once

// Chained 2031 projection: HDI on decade index first, then each DALY kind
// regressed on HDI and evaluated at the rounded 2031 HDI.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dalyproj/dataset.hpp"
#include "dalyproj/regress.hpp"

namespace dalyproj {

enum class ProjectionModel {
    LinearOnDecade,
    LinearOnHdi,
    ExponentialOnHdi,
};

const char* to_string(ProjectionModel model);

// The fixed per-indicator model choices and rounding contract.
struct ProjectionPolicy {
    static constexpr ProjectionModel hdi_model = ProjectionModel::LinearOnDecade;
    static constexpr ProjectionModel daly_a_model = ProjectionModel::ExponentialOnHdi;
    static constexpr ProjectionModel daly_b_model = ProjectionModel::LinearOnHdi;
    static constexpr ProjectionModel daly_c_model = ProjectionModel::LinearOnHdi;
    // DALY_A projections never exceed the 2021 observation.
    static constexpr bool cap_daly_a_at_last_observed = true;
    static constexpr int hdi_rounding = 3;
    static constexpr int daly_rounding = 2;
    static constexpr double daly_floor = 0.01;

    static ProjectionModel model_for(IndicatorKind kind);
    static int rounding_for(IndicatorKind kind);
};

struct ProjectionResult {
    AreaId area;
    IndicatorKind indicator;
    DecadeYear year = kYear2031;
    double value = 0.0;
    ProjectionModel model = ProjectionModel::LinearOnDecade;
    // The (x, y) points the model was fitted to.
    regress::PointSet<double> inputs;
    // Set only for DALY_A when the 2021 cap binds.
    bool capped = false;
};

// Linear fit of HDI on decade index 0..2, evaluated at 3, rounded to three
// places and clamped into (0, 1]. Throws IncompleteSeries when an observation
// year is missing.
ProjectionResult project_hdi(const AreaSeries& hdi);

// Fits the policy model for the series' DALY kind to (HDI, DALY) pairs of
// 2001/2011/2021 and evaluates it at hdi's 2031 value, which must already be
// rounded. DALY_A is capped at its 2021 observation; every result is floored at
// 0.01 and rounded to two places.
ProjectionResult project_daly(const AreaSeries& daly, const AreaSeries& hdi,
                              const ProjectionPolicy& policy = {});

// The HDI series with the projected 2031 value appended as Computed.
AreaSeries chain_hdi(const AreaSeries& hdi_observed, const ProjectionResult& hdi_projection);

struct AreaRejection {
    AreaId area;
    IndicatorKind indicator;
    ErrorKind kind;
    std::string message;
};

struct PipelineOutput {
    // Sorted by area, then indicator.
    std::vector<ProjectionResult> results;
    std::vector<AreaRejection> rejections;
};

// One HDI and three DALY projections per area. A failing area is reported in
// rejections without affecting the others.
PipelineOutput run_pipeline(const Panel& panel, const ProjectionPolicy& policy = {});

enum class BakeoffRegressor { DecadeIndex, PairedHdi };

enum class EntryStatus { Fitted, Rejected, Inapplicable };

struct BakeoffEntry {
    regress::ModelKind model = regress::ModelKind::Linear;
    EntryStatus status = EntryStatus::Fitted;
    std::variant<std::monostate, regress::LinearFit<double>, regress::QuadFit<double>,
                 regress::ExpFit<double>>
        params;
    std::optional<double> r_squared;     // original space
    std::optional<double> log_r_squared; // exponential only
    bool poorly_conditioned = false;
    std::string note;
};

struct BakeoffReport {
    AreaId area;
    IndicatorKind indicator;
    BakeoffRegressor regressor = BakeoffRegressor::DecadeIndex;
    std::array<BakeoffEntry, 3> entries; // linear, quadratic, exponential
    regress::ModelKind recommended = regress::ModelKind::Linear;

    const BakeoffEntry& entry(regress::ModelKind model) const;
};

// Model chosen for an indicator regardless of R² ordering: exponential for
// DALY_A, linear otherwise.
regress::ModelKind recommended_model(IndicatorKind kind);

BakeoffReport bakeoff_on_decade(const AreaSeries& series);
BakeoffReport bakeoff_on_hdi(const AreaSeries& series, const AreaSeries& hdi);

enum class AuditStatus { Matched, Divergent };

const char* to_string(AuditStatus status);

struct AuditRow {
    AreaId area;
    IndicatorKind indicator;
    double published = 0.0;
    double computed = 0.0;
    double relative_diff = 0.0; // (computed - published) / published
    AuditStatus status = AuditStatus::Matched;
};

struct DivergenceReport {
    double tolerance = 0.0;
    // Sorted by descending |relative_diff|, ties by area then indicator.
    std::vector<AuditRow> rows;
    std::vector<Panel::Key> unmatched_published;
    std::vector<Panel::Key> unmatched_computed;

    std::size_t divergent_count() const;
    std::vector<Panel::Key> divergent_keys() const; // sorted
};

// Joins computed 2031 values with the published 2031 values on
// (area, indicator). Throws Invariant unless tolerance > 0.
DivergenceReport audit(std::span<const ProjectionResult> computed, const Panel& published,
                       double tolerance);

} // namespace dalyproj
