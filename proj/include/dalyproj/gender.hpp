#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dalyproj/dataset.hpp"

namespace dalyproj {

// Male/female ratios for one area and year. gap > 0 means men are
// overrepresented among persons with disabilities.
struct RatioPoint {
    AreaId area;
    DecadeYear year;
    double overall_mf = 0.0;
    double disabled_mf = 0.0;
    double gap = 0.0; // disabled_mf - overall_mf
};

RatioPoint make_ratio_point(const AreaId& area, DecadeYear year, double overall_mf,
                            double disabled_mf);

// Ratios come from the counts when the record carries them.
RatioPoint make_ratio_point(const GenderRecord& record);

double ratio_from_counts(std::uint64_t male, std::uint64_t female);

// Male share s of a group as a male/female ratio s / (1 - s), and back.
double ratio_from_share(double male_share);
double share_from_ratio(double ratio);

double identity_gap(const RatioPoint& point);

inline constexpr double kDefaultOutlierK = 2.0;

struct OutlierFlag {
    AreaId area;
    DecadeYear year;
    double gap = 0.0;
    double threshold = 0.0;
    bool flagged = false;
};

// Flags points whose gap exceeds mean(gap) + k * sd(gap), sd being the
// population standard deviation. Output follows input order. Requires at
// least three points and k > 0.
std::vector<OutlierFlag> detect_outliers(std::span<const RatioPoint> points,
                                         double k = kDefaultOutlierK);

struct ExtrapolatedRatio {
    DecadeYear year;
    double value = 0.0;
    // No reference values exist for projected ratios; never audit these.
    bool verified = false;
};

// Straight line through the 2001 and 2011 ratios on decade index, evaluated
// at 2021 or 2031 and floored at 0.01.
ExtrapolatedRatio extrapolate_ratio(double r2001, double r2011, DecadeYear target);

} // namespace dalyproj
