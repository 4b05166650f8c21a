#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dalyproj/error.hpp"

namespace dalyproj {

// Canonical uppercase area label, e.g. "INDIA" or "ANDHRA PRADESH".
// Construction trims surrounding whitespace and uppercases ASCII letters.
class AreaId {
public:
    explicit AreaId(std::string_view name);

    const std::string& name() const noexcept { return name_; }

    auto operator<=>(const AreaId&) const = default;
    bool operator==(const AreaId&) const = default;

private:
    std::string name_;
};

// One of the four census decades. index() is the decade index t used as the
// regressor for HDI projection.
class DecadeYear {
public:
    static constexpr std::array<int, 4> kYears{2001, 2011, 2021, 2031};

    constexpr explicit DecadeYear(int year) : index_(checked_index(year)) {}

    static std::optional<DecadeYear> parse(int year);
    static DecadeYear from_index(int index);

    constexpr int year() const noexcept { return kYears[static_cast<std::size_t>(index_)]; }
    constexpr int index() const noexcept { return index_; }

    auto operator<=>(const DecadeYear&) const = default;
    bool operator==(const DecadeYear&) const = default;

private:
    static constexpr int checked_index(int year) {
        if (year < 2001 || year > 2031 || (year - 2001) % 10 != 0)
            throw Error(ErrorKind::Invariant,
                        "year " + std::to_string(year) + " is not one of 2001, 2011, 2021, 2031");
        return (year - 2001) / 10;
    }

    int index_;
};

inline constexpr DecadeYear kYear2001{2001};
inline constexpr DecadeYear kYear2011{2011};
inline constexpr DecadeYear kYear2021{2021};
inline constexpr DecadeYear kYear2031{2031};

// Years with observations; 2031 only ever holds published or computed values.
inline constexpr std::array<DecadeYear, 3> kObservedYears{kYear2001, kYear2011, kYear2021};

enum class IndicatorKind {
    Hdi,
    DalyA, // communicable, maternal, neonatal, nutritional
    DalyB, // noncommunicable
    DalyC, // injuries
    RatioDisabledMf,
    RatioTotalMf,
};

inline constexpr std::array<IndicatorKind, 6> kAllIndicators{
    IndicatorKind::Hdi,   IndicatorKind::DalyA,           IndicatorKind::DalyB,
    IndicatorKind::DalyC, IndicatorKind::RatioDisabledMf, IndicatorKind::RatioTotalMf};

inline constexpr std::array<IndicatorKind, 3> kDalyKinds{
    IndicatorKind::DalyA, IndicatorKind::DalyB, IndicatorKind::DalyC};

const char* to_string(IndicatorKind kind);
std::optional<IndicatorKind> parse_indicator(std::string_view name);
bool is_daly(IndicatorKind kind);
bool is_ratio(IndicatorKind kind);

enum class Provenance { Observed, Published, Computed };

struct SeriesPoint {
    DecadeYear year;
    double value;
    Provenance provenance = Provenance::Observed;
};

// Throws Error(Invariant) if value is out of range for the indicator:
// HDI in (0, 1], DALY rates (per 100,000) and ratios strictly positive.
void check_indicator_value(IndicatorKind kind, double value, std::string_view context);

// One area's values for one indicator, ordered by strictly increasing year.
class AreaSeries {
public:
    AreaSeries(AreaId area, IndicatorKind indicator, std::vector<SeriesPoint> points);

    const AreaId& area() const noexcept { return area_; }
    IndicatorKind indicator() const noexcept { return indicator_; }
    const std::vector<SeriesPoint>& points() const noexcept { return points_; }

    std::optional<double> value_at(DecadeYear year) const;
    const SeriesPoint* point_at(DecadeYear year) const;

private:
    AreaId area_;
    IndicatorKind indicator_;
    std::vector<SeriesPoint> points_;
};

// Immutable collection of series keyed by (area, indicator). Build one with
// PanelBuilder or load_panel.
class Panel {
public:
    using Key = std::pair<AreaId, IndicatorKind>;

    Panel() = default;

    const std::map<Key, AreaSeries>& series() const noexcept { return series_; }
    const AreaSeries* find(const AreaId& area, IndicatorKind indicator) const;
    const std::string& provenance() const noexcept { return provenance_; }

    std::vector<AreaId> areas() const;
    std::set<IndicatorKind> indicators() const;
    bool empty() const noexcept { return series_.empty(); }

    bool operator==(const Panel& other) const;

private:
    friend class PanelBuilder;

    std::map<Key, AreaSeries> series_;
    std::string provenance_;
};

class PanelBuilder {
public:
    // Validates the value against the indicator's range and rejects a second
    // value for the same (area, indicator, year).
    PanelBuilder& add(const AreaId& area, IndicatorKind indicator, DecadeYear year, double value,
                      Provenance provenance = Provenance::Observed);

    Panel build(std::string provenance = {}) &&;

private:
    std::map<Panel::Key, std::map<DecadeYear, SeriesPoint>> pending_;
};

std::optional<double> lookup(const Panel& panel, const AreaId& area, IndicatorKind indicator,
                             DecadeYear year);

// Descriptions of every missing (area, HDI/DALY kind, observed year); empty
// when the panel is projection-ready. Areas carrying only ratio series are
// not projected and so never contribute gaps.
std::vector<std::string> projection_gaps(const Panel& panel);
bool is_projection_ready(const Panel& panel);

// CSV with header `area,indicator,year,value`. Rows at 2031 load with
// Published provenance.
Panel load_panel(std::istream& in, std::string provenance = {});
Panel load_panel_file(const std::filesystem::path& path);
void write_panel(const Panel& panel, std::ostream& out);

struct GenderCounts {
    std::uint64_t male_disabled = 0;
    std::uint64_t female_disabled = 0;
    std::uint64_t male_total = 0;
    std::uint64_t female_total = 0;
};

struct GenderRecord {
    AreaId area;
    DecadeYear year;
    double overall_mf;
    double disabled_mf;
    std::optional<GenderCounts> counts;
};

// Validates ratios > 0 and, when counts are present, that each stored ratio
// matches its count quotient within 1e-9 relative.
void validate_gender_record(const GenderRecord& record);

// CSV with header
// `area,year,overall_mf,disabled_mf[,male_disabled,female_disabled,male_total,female_total]`.
// Result is sorted by (area, year).
std::vector<GenderRecord> load_gender(std::istream& in);
std::vector<GenderRecord> load_gender_file(const std::filesystem::path& path);

// Builds records from the panel's RATIO_TOTAL_MF / RATIO_DISABLED_MF pairs.
std::vector<GenderRecord> gender_records_from_panel(const Panel& panel);

// Embedded figure tables: 29 areas; HDI and three DALY kinds at 2001/2011/2021
// plus published 2031; ratio pairs at 2001 and 2011.
const Panel& reference_panel();
const std::vector<GenderRecord>& reference_gender();

} // namespace dalyproj
