#include "dalyproj/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "dalyproj/format.hpp"

namespace dalyproj {

const char* to_string(ProjectionModel model) {
    switch (model) {
    case ProjectionModel::LinearOnDecade: return "linear_on_decade";
    case ProjectionModel::LinearOnHdi: return "linear_on_hdi";
    case ProjectionModel::ExponentialOnHdi: return "exponential_on_hdi";
    }
    return "?";
}

const char* to_string(AuditStatus status) {
    return status == AuditStatus::Matched ? "matched" : "divergent";
}

ProjectionModel ProjectionPolicy::model_for(IndicatorKind kind) {
    switch (kind) {
    case IndicatorKind::Hdi: return hdi_model;
    case IndicatorKind::DalyA: return daly_a_model;
    case IndicatorKind::DalyB: return daly_b_model;
    case IndicatorKind::DalyC: return daly_c_model;
    default: break;
    }
    throw Error(ErrorKind::Invariant, std::string("no projection model for ") + to_string(kind));
}

int ProjectionPolicy::rounding_for(IndicatorKind kind) {
    return kind == IndicatorKind::Hdi ? hdi_rounding : daly_rounding;
}

namespace {

using regress::PointSet;

std::string series_label(const AreaSeries& s) {
    return "(" + s.area().name() + ", " + to_string(s.indicator()) + ")";
}

// Values at 2001/2011/2021, throwing `missing` naming the first absent year.
Eigen::Vector3d observed_values(const AreaSeries& s, ErrorKind missing) {
    Eigen::Vector3d v;
    for (int i = 0; i < 3; ++i) {
        const auto value = s.value_at(kObservedYears[static_cast<std::size_t>(i)]);
        if (!value)
            throw Error(missing, series_label(s) + ": no value for " +
                                     std::to_string(kObservedYears[static_cast<std::size_t>(i)].year()));
        v(i) = *value;
    }
    return v;
}

PointSet<double> make_points(const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
    PointSet<double> p(3, 2);
    p.col(0) = x;
    p.col(1) = y;
    return p;
}

} // namespace

ProjectionResult project_hdi(const AreaSeries& hdi) {
    if (hdi.indicator() != IndicatorKind::Hdi)
        throw Error(ErrorKind::Invariant, "project_hdi: series " + series_label(hdi) + " is not HDI");
    const Eigen::Vector3d y = observed_values(hdi, ErrorKind::IncompleteSeries);
    const Eigen::Vector3d t(0.0, 1.0, 2.0);
    const auto fit = regress::fit_linear(t, y);

    double value = round_half_even(regress::predict(fit.model, double(kYear2031.index())),
                                   ProjectionPolicy::hdi_rounding);
    value = std::clamp(value, 0.001, 1.0);

    return ProjectionResult{hdi.area(), IndicatorKind::Hdi, kYear2031, value,
                            ProjectionPolicy::hdi_model, make_points(t, y), false};
}

ProjectionResult project_daly(const AreaSeries& daly, const AreaSeries& hdi,
                              const ProjectionPolicy& policy) {
    const IndicatorKind kind = daly.indicator();
    if (!is_daly(kind))
        throw Error(ErrorKind::Invariant, "project_daly: series " + series_label(daly) + " is not a DALY kind");
    if (hdi.indicator() != IndicatorKind::Hdi)
        throw Error(ErrorKind::Invariant, "project_daly: regressor " + series_label(hdi) + " is not HDI");

    const Eigen::Vector3d y = observed_values(daly, ErrorKind::IncompleteSeries);
    const Eigen::Vector3d x = observed_values(hdi, ErrorKind::IncompleteChain);
    const auto hdi_2031 = hdi.value_at(kYear2031);
    if (!hdi_2031)
        throw Error(ErrorKind::IncompleteChain, series_label(hdi) + ": no 2031 value to project from");

    const ProjectionModel model = policy.model_for(kind);
    double raw = 0.0;
    if (model == ProjectionModel::ExponentialOnHdi)
        raw = regress::predict(regress::fit_exponential(x, y).model, *hdi_2031);
    else
        raw = regress::predict(regress::fit_linear(x, y).model, *hdi_2031);

    // The cap binds only when the prediction exceeds the 2021 value at output
    // precision; exp(log k) can land an ulp above k on a flat series.
    bool capped = false;
    if (kind == IndicatorKind::DalyA && policy.cap_daly_a_at_last_observed &&
        round_half_even(raw, policy.daly_rounding) > round_half_even(y(2), policy.daly_rounding)) {
        raw = y(2);
        capped = true;
    }
    raw = std::max(raw, policy.daly_floor);
    double value = round_half_even(raw, policy.daly_rounding);
    if (kind == IndicatorKind::DalyA && policy.cap_daly_a_at_last_observed)
        value = std::min(value, std::max(y(2), policy.daly_floor));

    return ProjectionResult{daly.area(), kind, kYear2031, value, model, make_points(x, y), capped};
}

AreaSeries chain_hdi(const AreaSeries& hdi_observed, const ProjectionResult& hdi_projection) {
    std::vector<SeriesPoint> points;
    for (DecadeYear year : kObservedYears)
        if (const auto* p = hdi_observed.point_at(year))
            points.push_back(*p);
    points.push_back(SeriesPoint{kYear2031, hdi_projection.value, Provenance::Computed});
    return AreaSeries(hdi_observed.area(), IndicatorKind::Hdi, std::move(points));
}

PipelineOutput run_pipeline(const Panel& panel, const ProjectionPolicy& policy) {
    PipelineOutput out;
    for (const AreaId& area : panel.areas()) {
        const auto* hdi = panel.find(area, IndicatorKind::Hdi);
        const bool has_projected_kind =
            hdi || std::any_of(kDalyKinds.begin(), kDalyKinds.end(),
                               [&](IndicatorKind k) { return panel.find(area, k) != nullptr; });
        if (!has_projected_kind)
            continue;

        std::optional<AreaSeries> chain;
        try {
            if (!hdi)
                throw Error(ErrorKind::IncompleteSeries, "(" + area.name() + ", HDI): series missing");
            ProjectionResult r = project_hdi(*hdi);
            chain = chain_hdi(*hdi, r);
            out.results.push_back(std::move(r));
        } catch (const Error& e) {
            out.rejections.push_back({area, IndicatorKind::Hdi, e.kind(), e.what()});
        }

        for (IndicatorKind kind : kDalyKinds) {
            try {
                if (!chain)
                    throw Error(ErrorKind::IncompleteChain,
                                "(" + area.name() + ", " + to_string(kind) + "): HDI projection unavailable");
                const auto* daly = panel.find(area, kind);
                if (!daly)
                    throw Error(ErrorKind::IncompleteSeries,
                                "(" + area.name() + ", " + to_string(kind) + "): series missing");
                out.results.push_back(project_daly(*daly, *chain, policy));
            } catch (const Error& e) {
                out.rejections.push_back({area, kind, e.kind(), e.what()});
            }
        }
    }
    // Areas come out of the panel in key order already; sorting keeps the
    // contract independent of that.
    std::stable_sort(out.results.begin(), out.results.end(), [](const auto& a, const auto& b) {
        return std::tie(a.area, a.indicator) < std::tie(b.area, b.indicator);
    });
    return out;
}

regress::ModelKind recommended_model(IndicatorKind kind) {
    return kind == IndicatorKind::DalyA ? regress::ModelKind::Exponential : regress::ModelKind::Linear;
}

const BakeoffEntry& BakeoffReport::entry(regress::ModelKind model) const {
    return entries[static_cast<std::size_t>(model)];
}

namespace {

template <typename FitFn>
BakeoffEntry run_candidate(regress::ModelKind model, FitFn&& fit) {
    BakeoffEntry e;
    e.model = model;
    try {
        auto fitted = fit();
        e.params = fitted.model;
        e.r_squared = fitted.diagnostics.r_squared;
        e.log_r_squared = fitted.diagnostics.log_r_squared;
        e.poorly_conditioned = fitted.diagnostics.poorly_conditioned;
    } catch (const SingularFitError& err) {
        e.status = EntryStatus::Rejected;
        e.poorly_conditioned = err.poorly_conditioned();
        e.note = err.what();
    } catch (const Error& err) {
        e.status = err.kind() == ErrorKind::Domain ? EntryStatus::Inapplicable : EntryStatus::Rejected;
        e.note = err.what();
    }
    return e;
}

BakeoffReport run_bakeoff(const AreaSeries& series, BakeoffRegressor regressor,
                          const Eigen::Vector3d& x) {
    const Eigen::Vector3d y = observed_values(series, ErrorKind::IncompleteSeries);
    BakeoffReport report{series.area(), series.indicator(), regressor, {}, recommended_model(series.indicator())};
    report.entries[0] = run_candidate(regress::ModelKind::Linear, [&] { return regress::fit_linear(x, y); });
    report.entries[1] = run_candidate(regress::ModelKind::Quadratic, [&] { return regress::fit_quadratic(x, y); });
    if ((y.array() <= 0.0).any()) {
        report.entries[2].model = regress::ModelKind::Exponential;
        report.entries[2].status = EntryStatus::Inapplicable;
        report.entries[2].note = "nonpositive response";
    } else {
        report.entries[2] = run_candidate(regress::ModelKind::Exponential,
                                          [&] { return regress::fit_exponential(x, y); });
    }
    return report;
}

} // namespace

BakeoffReport bakeoff_on_decade(const AreaSeries& series) {
    return run_bakeoff(series, BakeoffRegressor::DecadeIndex, Eigen::Vector3d(0.0, 1.0, 2.0));
}

BakeoffReport bakeoff_on_hdi(const AreaSeries& series, const AreaSeries& hdi) {
    if (hdi.indicator() != IndicatorKind::Hdi)
        throw Error(ErrorKind::Invariant, "bakeoff_on_hdi: regressor " + series_label(hdi) + " is not HDI");
    return run_bakeoff(series, BakeoffRegressor::PairedHdi,
                       observed_values(hdi, ErrorKind::IncompleteChain));
}

std::size_t DivergenceReport::divergent_count() const {
    return static_cast<std::size_t>(std::count_if(
        rows.begin(), rows.end(), [](const AuditRow& r) { return r.status == AuditStatus::Divergent; }));
}

std::vector<Panel::Key> DivergenceReport::divergent_keys() const {
    std::vector<Panel::Key> keys;
    for (const auto& r : rows)
        if (r.status == AuditStatus::Divergent)
            keys.emplace_back(r.area, r.indicator);
    std::sort(keys.begin(), keys.end());
    return keys;
}

DivergenceReport audit(std::span<const ProjectionResult> computed, const Panel& published,
                       double tolerance) {
    if (!(tolerance > 0.0) || !std::isfinite(tolerance))
        throw Error(ErrorKind::Invariant, "audit: tolerance must be positive");

    std::map<Panel::Key, double> pub;
    for (const auto& [key, series] : published.series()) {
        const auto* p = series.point_at(kYear2031);
        if (p && p->provenance == Provenance::Published)
            pub.emplace(key, p->value);
    }
    std::map<Panel::Key, double> comp;
    for (const auto& r : computed)
        if (r.year == kYear2031)
            comp.emplace(Panel::Key{r.area, r.indicator}, r.value);

    DivergenceReport report;
    report.tolerance = tolerance;
    for (const auto& [key, published_value] : pub) {
        auto it = comp.find(key);
        if (it == comp.end()) {
            report.unmatched_published.push_back(key);
            continue;
        }
        AuditRow row{key.first, key.second, published_value, it->second, 0.0, AuditStatus::Matched};
        row.relative_diff = (row.computed - row.published) / row.published;
        row.status = std::abs(row.relative_diff) <= tolerance ? AuditStatus::Matched : AuditStatus::Divergent;
        report.rows.push_back(std::move(row));
    }
    for (const auto& [key, v] : comp)
        if (!pub.contains(key))
            report.unmatched_computed.push_back(key);

    std::stable_sort(report.rows.begin(), report.rows.end(), [](const AuditRow& a, const AuditRow& b) {
        const double da = std::abs(a.relative_diff);
        const double db = std::abs(b.relative_diff);
        if (da != db)
            return da > db;
        return std::tie(a.area, a.indicator) < std::tie(b.area, b.indicator);
    });
    return report;
}

} // namespace dalyproj
