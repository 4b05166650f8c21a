#include "dalyproj/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "csv.hpp"
#include "dalyproj/format.hpp"

namespace dalyproj {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Invariant: return "invariant";
    case ErrorKind::DegenerateRegressor: return "degenerate-regressor";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Singular: return "singular";
    case ErrorKind::UndefinedVariance: return "undefined-variance";
    case ErrorKind::IncompleteSeries: return "incomplete-series";
    case ErrorKind::IncompleteChain: return "incomplete-chain";
    case ErrorKind::InsufficientSample: return "insufficient-sample";
    case ErrorKind::Division: return "division";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

AreaId::AreaId(std::string_view name) {
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front())))
        name.remove_prefix(1);
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back())))
        name.remove_suffix(1);
    if (name.empty())
        throw Error(ErrorKind::Invariant, "area name is empty");
    name_.reserve(name.size());
    for (char c : name)
        name_.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
}

std::optional<DecadeYear> DecadeYear::parse(int year) {
    if (year < 2001 || year > 2031 || (year - 2001) % 10 != 0)
        return std::nullopt;
    return DecadeYear(year);
}

DecadeYear DecadeYear::from_index(int index) {
    if (index < 0 || index > 3)
        throw Error(ErrorKind::Invariant, "decade index " + std::to_string(index) + " out of range");
    return DecadeYear(2001 + 10 * index);
}

const char* to_string(IndicatorKind kind) {
    switch (kind) {
    case IndicatorKind::Hdi: return "HDI";
    case IndicatorKind::DalyA: return "DALY_A";
    case IndicatorKind::DalyB: return "DALY_B";
    case IndicatorKind::DalyC: return "DALY_C";
    case IndicatorKind::RatioDisabledMf: return "RATIO_DISABLED_MF";
    case IndicatorKind::RatioTotalMf: return "RATIO_TOTAL_MF";
    }
    return "?";
}

std::optional<IndicatorKind> parse_indicator(std::string_view name) {
    for (IndicatorKind kind : kAllIndicators)
        if (name == to_string(kind))
            return kind;
    return std::nullopt;
}

bool is_daly(IndicatorKind kind) {
    return kind == IndicatorKind::DalyA || kind == IndicatorKind::DalyB ||
           kind == IndicatorKind::DalyC;
}

bool is_ratio(IndicatorKind kind) {
    return kind == IndicatorKind::RatioDisabledMf || kind == IndicatorKind::RatioTotalMf;
}

void check_indicator_value(IndicatorKind kind, double value, std::string_view context) {
    std::string where(context);
    if (!std::isfinite(value))
        throw Error(ErrorKind::Invariant, where + ": value is not finite");
    if (kind == IndicatorKind::Hdi) {
        if (value <= 0.0 || value > 1.0)
            throw Error(ErrorKind::Invariant,
                        where + ": HDI value " + format_shortest(value) + " outside (0, 1]");
    } else if (value <= 0.0) {
        throw Error(ErrorKind::Invariant, where + ": " + to_string(kind) + " value " +
                                              format_shortest(value) + " must be positive");
    }
}

namespace {

std::string key_label(const AreaId& area, IndicatorKind kind, DecadeYear year) {
    return "(" + area.name() + ", " + to_string(kind) + ", " + std::to_string(year.year()) + ")";
}

} // namespace

AreaSeries::AreaSeries(AreaId area, IndicatorKind indicator, std::vector<SeriesPoint> points)
    : area_(std::move(area)), indicator_(indicator), points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (i > 0 && !(points_[i - 1].year < points_[i].year))
            throw Error(ErrorKind::Invariant, "series (" + area_.name() + ", " +
                                                  to_string(indicator_) +
                                                  ") years must be strictly increasing");
        check_indicator_value(indicator_, points_[i].value,
                              key_label(area_, indicator_, points_[i].year));
    }
}

const SeriesPoint* AreaSeries::point_at(DecadeYear year) const {
    for (const auto& p : points_)
        if (p.year == year)
            return &p;
    return nullptr;
}

std::optional<double> AreaSeries::value_at(DecadeYear year) const {
    if (const auto* p = point_at(year))
        return p->value;
    return std::nullopt;
}

const AreaSeries* Panel::find(const AreaId& area, IndicatorKind indicator) const {
    auto it = series_.find(Key{area, indicator});
    return it == series_.end() ? nullptr : &it->second;
}

std::vector<AreaId> Panel::areas() const {
    std::vector<AreaId> out;
    for (const auto& [key, s] : series_)
        if (out.empty() || !(out.back() == key.first))
            out.push_back(key.first);
    return out;
}

std::set<IndicatorKind> Panel::indicators() const {
    std::set<IndicatorKind> out;
    for (const auto& [key, s] : series_)
        out.insert(key.second);
    return out;
}

bool Panel::operator==(const Panel& other) const {
    if (series_.size() != other.series_.size())
        return false;
    auto a = series_.begin();
    auto b = other.series_.begin();
    for (; a != series_.end(); ++a, ++b) {
        if (!(a->first == b->first))
            return false;
        const auto& pa = a->second.points();
        const auto& pb = b->second.points();
        if (pa.size() != pb.size())
            return false;
        for (std::size_t i = 0; i < pa.size(); ++i)
            if (pa[i].year != pb[i].year || pa[i].value != pb[i].value ||
                pa[i].provenance != pb[i].provenance)
                return false;
    }
    return true;
}

PanelBuilder& PanelBuilder::add(const AreaId& area, IndicatorKind indicator, DecadeYear year,
                                double value, Provenance provenance) {
    const std::string label = key_label(area, indicator, year);
    check_indicator_value(indicator, value, label);
    auto& points = pending_[Panel::Key{area, indicator}];
    if (!points.emplace(year, SeriesPoint{year, value, provenance}).second)
        throw Error(ErrorKind::Invariant, "duplicate key " + label);
    return *this;
}

Panel PanelBuilder::build(std::string provenance) && {
    Panel panel;
    panel.provenance_ = std::move(provenance);
    for (auto& [key, points] : pending_) {
        std::vector<SeriesPoint> ordered;
        ordered.reserve(points.size());
        for (auto& [year, p] : points)
            ordered.push_back(p);
        panel.series_.emplace(key, AreaSeries(key.first, key.second, std::move(ordered)));
    }
    pending_.clear();
    return panel;
}

std::optional<double> lookup(const Panel& panel, const AreaId& area, IndicatorKind indicator,
                             DecadeYear year) {
    if (const auto* s = panel.find(area, indicator))
        return s->value_at(year);
    return std::nullopt;
}

std::vector<std::string> projection_gaps(const Panel& panel) {
    std::vector<std::string> gaps;
    constexpr std::array<IndicatorKind, 4> required{IndicatorKind::Hdi, IndicatorKind::DalyA,
                                                    IndicatorKind::DalyB, IndicatorKind::DalyC};
    for (const AreaId& area : panel.areas()) {
        const bool projected = std::any_of(required.begin(), required.end(),
                                           [&](IndicatorKind k) { return panel.find(area, k); });
        if (!projected)
            continue;
        for (IndicatorKind kind : required) {
            const auto* s = panel.find(area, kind);
            for (DecadeYear year : kObservedYears) {
                const auto* p = s ? s->point_at(year) : nullptr;
                if (p == nullptr || p->provenance != Provenance::Observed)
                    gaps.push_back("missing " + key_label(area, kind, year));
            }
        }
    }
    return gaps;
}

bool is_projection_ready(const Panel& panel) { return projection_gaps(panel).empty(); }

namespace {

long parse_integer(std::string_view text, bool& ok) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    ok = ec == std::errc{} && ptr == text.data() + text.size() && !text.empty();
    return value;
}

[[noreturn]] void reject_row(const csv::Row& row, const std::string& what) {
    throw Error(ErrorKind::Parse, "row " + std::to_string(row.line) + ": " + what);
}

[[noreturn]] void reject_invariant(const csv::Row& row, const Error& e) {
    throw Error(ErrorKind::Invariant, "row " + std::to_string(row.line) + ": " + e.what());
}

DecadeYear parse_year_field(const csv::Row& row, const std::string& field) {
    bool ok = false;
    const long year = parse_integer(field, ok);
    if (!ok)
        reject_row(row, "unparseable year '" + field + "'");
    auto parsed = DecadeYear::parse(static_cast<int>(year));
    if (!parsed)
        reject_row(row, "year " + field + " is not one of 2001, 2011, 2021, 2031");
    return *parsed;
}

double parse_number_field(const csv::Row& row, const std::string& field, const char* name) {
    auto v = parse_double(field);
    if (!v)
        reject_row(row, std::string("unparseable ") + name + " '" + field + "'");
    return *v;
}

bool header_is(const csv::Row& row, std::initializer_list<std::string_view> names) {
    if (row.fields.size() != names.size())
        return false;
    std::size_t i = 0;
    for (auto name : names)
        if (csv::lower(row.fields[i++]) != name)
            return false;
    return true;
}

} // namespace

Panel load_panel(std::istream& in, std::string provenance) {
    const auto rows = csv::read_rows(in);
    if (rows.empty() || !header_is(rows.front(), {"area", "indicator", "year", "value"}))
        throw Error(ErrorKind::Parse, "expected header 'area,indicator,year,value'");

    PanelBuilder builder;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.fields.size() != 4)
            reject_row(row, "expected 4 fields, found " + std::to_string(row.fields.size()));
        const auto kind = parse_indicator(row.fields[1]);
        if (!kind)
            reject_row(row, "unknown indicator '" + row.fields[1] + "'");
        const DecadeYear year = parse_year_field(row, row.fields[2]);
        const double value = parse_number_field(row, row.fields[3], "value");
        try {
            const AreaId area(row.fields[0]);
            builder.add(area, *kind, year, value,
                        year == kYear2031 ? Provenance::Published : Provenance::Observed);
        } catch (const Error& e) {
            reject_invariant(row, e);
        }
    }
    return std::move(builder).build(std::move(provenance));
}

Panel load_panel_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::Io, "cannot read " + path.string());
    return load_panel(in, path.string());
}

void write_panel(const Panel& panel, std::ostream& out) {
    out << "area,indicator,year,value\n";
    for (const auto& [key, series] : panel.series())
        for (const auto& p : series.points())
            out << key.first.name() << ',' << to_string(key.second) << ',' << p.year.year() << ','
                << format_shortest(p.value) << '\n';
}

void validate_gender_record(const GenderRecord& r) {
    const std::string label = "(" + r.area.name() + ", " + std::to_string(r.year.year()) + ")";
    if (!(r.overall_mf > 0.0) || !std::isfinite(r.overall_mf))
        throw Error(ErrorKind::Invariant, label + ": overall_mf must be positive");
    if (!(r.disabled_mf > 0.0) || !std::isfinite(r.disabled_mf))
        throw Error(ErrorKind::Invariant, label + ": disabled_mf must be positive");
    if (!r.counts)
        return;
    const auto& c = *r.counts;
    if (c.female_disabled == 0 || c.female_total == 0)
        throw Error(ErrorKind::Invariant, label + ": female counts must be positive");
    auto matches = [](double stored, std::uint64_t male, std::uint64_t female) {
        const double q = static_cast<double>(male) / static_cast<double>(female);
        return std::abs(stored - q) <= 1e-9 * std::abs(q);
    };
    if (!matches(r.disabled_mf, c.male_disabled, c.female_disabled))
        throw Error(ErrorKind::Invariant,
                    label + ": disabled_mf does not match male_disabled/female_disabled");
    if (!matches(r.overall_mf, c.male_total, c.female_total))
        throw Error(ErrorKind::Invariant, label + ": overall_mf does not match male_total/female_total");
}

std::vector<GenderRecord> load_gender(std::istream& in) {
    const auto rows = csv::read_rows(in);
    const bool plain =
        !rows.empty() && header_is(rows.front(), {"area", "year", "overall_mf", "disabled_mf"});
    const bool with_counts =
        !rows.empty() &&
        header_is(rows.front(), {"area", "year", "overall_mf", "disabled_mf", "male_disabled",
                                 "female_disabled", "male_total", "female_total"});
    if (!plain && !with_counts)
        throw Error(ErrorKind::Parse, "expected header 'area,year,overall_mf,disabled_mf"
                                      "[,male_disabled,female_disabled,male_total,female_total]'");
    const std::size_t arity = with_counts ? 8 : 4;

    std::map<std::pair<AreaId, DecadeYear>, GenderRecord> records;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        // Count columns are optional per row: either all four or none.
        const std::size_t n = row.fields.size();
        const bool blank_counts =
            with_counts && n == 8 &&
            std::all_of(row.fields.begin() + 4, row.fields.end(), [](auto& f) { return f.empty(); });
        if (n != arity && !(with_counts && n == 4))
            reject_row(row, "expected " + std::to_string(arity) + " fields, found " +
                                std::to_string(n));
        const DecadeYear year = parse_year_field(row, row.fields[1]);
        const double overall = parse_number_field(row, row.fields[2], "overall_mf");
        const double disabled = parse_number_field(row, row.fields[3], "disabled_mf");
        std::optional<GenderCounts> counts;
        if (n == 8 && !blank_counts) {
            std::array<std::uint64_t, 4> c{};
            for (std::size_t k = 0; k < 4; ++k) {
                const auto& f = row.fields[4 + k];
                auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), c[k]);
                if (ec != std::errc{} || ptr != f.data() + f.size() || f.empty())
                    reject_row(row, "unparseable count '" + f + "'");
            }
            counts = GenderCounts{c[0], c[1], c[2], c[3]};
        }
        try {
            GenderRecord record{AreaId(row.fields[0]), year, overall, disabled, counts};
            validate_gender_record(record);
            auto key = std::make_pair(record.area, year);
            if (!records.emplace(key, std::move(record)).second)
                throw Error(ErrorKind::Invariant, "duplicate key (" + key.first.name() + ", " +
                                                      std::to_string(year.year()) + ")");
        } catch (const Error& e) {
            reject_invariant(row, e);
        }
    }
    std::vector<GenderRecord> out;
    out.reserve(records.size());
    for (auto& [key, r] : records)
        out.push_back(std::move(r));
    return out;
}

std::vector<GenderRecord> load_gender_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::Io, "cannot read " + path.string());
    return load_gender(in);
}

std::vector<GenderRecord> gender_records_from_panel(const Panel& panel) {
    std::vector<GenderRecord> out;
    for (const AreaId& area : panel.areas()) {
        const auto* overall = panel.find(area, IndicatorKind::RatioTotalMf);
        const auto* disabled = panel.find(area, IndicatorKind::RatioDisabledMf);
        if (!overall || !disabled)
            continue;
        for (const auto& p : overall->points())
            if (auto d = disabled->value_at(p.year))
                out.push_back(GenderRecord{area, p.year, p.value, *d, std::nullopt});
    }
    return out;
}

} // namespace dalyproj
