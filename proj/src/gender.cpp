#include "dalyproj/gender.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dalyproj {

RatioPoint make_ratio_point(const AreaId& area, DecadeYear year, double overall_mf,
                            double disabled_mf) {
    if (!(overall_mf > 0.0) || !(disabled_mf > 0.0))
        throw Error(ErrorKind::Invariant, "(" + area.name() + ", " + std::to_string(year.year()) +
                                              "): ratios must be positive");
    return RatioPoint{area, year, overall_mf, disabled_mf, disabled_mf - overall_mf};
}

RatioPoint make_ratio_point(const GenderRecord& record) {
    if (record.counts) {
        const auto& c = *record.counts;
        return make_ratio_point(record.area, record.year,
                                ratio_from_counts(c.male_total, c.female_total),
                                ratio_from_counts(c.male_disabled, c.female_disabled));
    }
    return make_ratio_point(record.area, record.year, record.overall_mf, record.disabled_mf);
}

double ratio_from_counts(std::uint64_t male, std::uint64_t female) {
    if (female == 0)
        throw Error(ErrorKind::Division, "ratio_from_counts: female count is zero");
    return static_cast<double>(male) / static_cast<double>(female);
}

double ratio_from_share(double male_share) {
    if (!(male_share > 0.0 && male_share < 1.0))
        throw Error(ErrorKind::Invariant, "ratio_from_share: share must lie in (0, 1)");
    return male_share / (1.0 - male_share);
}

double share_from_ratio(double ratio) {
    if (!(ratio > 0.0) || !std::isfinite(ratio))
        throw Error(ErrorKind::Invariant, "share_from_ratio: ratio must be positive");
    return ratio / (1.0 + ratio);
}

double identity_gap(const RatioPoint& point) { return point.disabled_mf - point.overall_mf; }

std::vector<OutlierFlag> detect_outliers(std::span<const RatioPoint> points, double k) {
    if (points.size() < 3)
        throw Error(ErrorKind::InsufficientSample, "detect_outliers: needs at least 3 points");
    if (!(k > 0.0))
        throw Error(ErrorKind::Invariant, "detect_outliers: k must be positive");

    // Summing in sorted order makes the threshold independent of input order.
    std::vector<double> gaps;
    gaps.reserve(points.size());
    for (const auto& p : points)
        gaps.push_back(identity_gap(p));
    std::sort(gaps.begin(), gaps.end());
    const double n = static_cast<double>(gaps.size());
    const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / n;
    double ss = 0.0;
    for (double g : gaps)
        ss += (g - mean) * (g - mean);
    const double sd = std::sqrt(ss / n);
    const bool constant = gaps.front() == gaps.back();
    const double threshold = mean + k * sd;

    std::vector<OutlierFlag> flags;
    flags.reserve(points.size());
    for (const auto& p : points) {
        const double gap = identity_gap(p);
        flags.push_back({p.area, p.year, gap, threshold, !constant && gap > threshold});
    }
    return flags;
}

ExtrapolatedRatio extrapolate_ratio(double r2001, double r2011, DecadeYear target) {
    if (target != kYear2021 && target != kYear2031)
        throw Error(ErrorKind::Invariant, "extrapolate_ratio: target must be 2021 or 2031");
    if (!(r2001 > 0.0) || !(r2011 > 0.0))
        throw Error(ErrorKind::Invariant, "extrapolate_ratio: ratios must be positive");
    const double steps = static_cast<double>(target.index() - kYear2011.index());
    const double value = r2011 + steps * (r2011 - r2001);
    return ExtrapolatedRatio{target, std::max(value, 0.01), false};
}

} // namespace dalyproj
