#include "dalyproj/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "csv.hpp"
#include "dalyproj/forecast.hpp"
#include "dalyproj/format.hpp"
#include "dalyproj/gender.hpp"

namespace dalyproj::cli {

namespace {

constexpr const char* kExpectedDivergenceCsv =
#include "expected_divergence.inc"
    ;

// Exit-status carrier for failures detected inside a command.
struct CommandFailure {
    int status;
    std::string message;
};

int exit_status_for(const Error& e) {
    return e.kind() == ErrorKind::Io ? kExitEnvironment : kExitDomain;
}

struct InputData {
    std::string source;
    std::optional<Panel> panel;
    std::optional<std::vector<GenderRecord>> gender;
};

bool looks_like_gender_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::string first;
    std::getline(in, first);
    if (first.rfind("\xEF\xBB\xBF", 0) == 0)
        first.erase(0, 3);
    const auto fields = csv::split(first);
    return fields.size() >= 2 && csv::lower(fields[0]) == "area" && csv::lower(fields[1]) == "year";
}

InputData load_input(const RunConfig& config) {
    InputData data;
    if (!config.input_path) {
        data.source = "embedded reference panel";
        data.panel = reference_panel();
        data.gender = reference_gender();
        return data;
    }
    const auto& path = *config.input_path;
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec))
        throw Error(ErrorKind::Io, "cannot read " + path.string());
    data.source = path.string();
    if (looks_like_gender_csv(path)) {
        data.gender = load_gender_file(path);
    } else {
        data.panel = load_panel_file(path);
        auto records = gender_records_from_panel(*data.panel);
        if (!records.empty())
            data.gender = std::move(records);
    }
    return data;
}

void ensure_out_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw Error(ErrorKind::Io, "cannot create output directory " + dir.string());
    const auto probe = dir / ".dalyproj-write-probe";
    {
        std::ofstream out(probe, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorKind::Io, "output directory " + dir.string() + " is not writable");
    }
    std::filesystem::remove(probe, ec);
}

// Each file is written whole to a sibling temporary and renamed into place.
void write_files(const std::filesystem::path& dir,
                 const std::vector<std::pair<std::string, std::string>>& files) {
    for (const auto& [name, content] : files) {
        const auto target = dir / name;
        auto tmp = target;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out << content;
            out.flush();
            if (!out)
                throw Error(ErrorKind::Io, "cannot write " + tmp.string());
        }
        std::error_code ec;
        std::filesystem::rename(tmp, target, ec);
        if (ec)
            throw Error(ErrorKind::Io, "cannot write " + target.string() + ": " + ec.message());
    }
}

bool area_selected(const RunConfig& config, const AreaId& area) {
    return !config.area || *config.area == area;
}

bool indicator_selected(const RunConfig& config, IndicatorKind kind) {
    return !config.indicator || *config.indicator == kind;
}

std::string format_value(IndicatorKind kind, double value) {
    return format_fixed(value, is_ratio(kind) ? 6 : ProjectionPolicy::rounding_for(kind));
}

void report_rejections(const std::vector<AreaRejection>& rejections, const RunConfig& config,
                       std::ostream& err) {
    for (const auto& r : rejections)
        if (area_selected(config, r.area) && indicator_selected(config, r.indicator))
            err << "rejected " << r.area.name() << ' ' << to_string(r.indicator) << " ["
                << to_string(r.kind) << "]: " << r.message << '\n';
}

std::size_t count_selected(const std::vector<AreaRejection>& rejections, const RunConfig& config) {
    return static_cast<std::size_t>(std::count_if(rejections.begin(), rejections.end(), [&](const auto& r) {
        return area_selected(config, r.area) && indicator_selected(config, r.indicator);
    }));
}

const Panel& require_panel(const InputData& data) {
    if (!data.panel)
        throw CommandFailure{kExitDomain, data.source + " holds gender records, not an indicator panel"};
    return *data.panel;
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const CommandFailure& f) {
        err << "error: " << f.message << '\n';
        return f.status;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_status_for(e);
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitEnvironment;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
}

std::vector<Panel::Key> parse_key_list(const std::string& text) {
    std::istringstream in(text);
    const auto rows = csv::read_rows(in);
    std::vector<Panel::Key> keys;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& f = rows[i].fields;
        const auto kind = f.size() == 2 ? parse_indicator(f[1]) : std::nullopt;
        if (!kind)
            throw Error(ErrorKind::Parse, "expected-divergence list: bad row " + std::to_string(rows[i].line));
        keys.emplace_back(AreaId(f[0]), *kind);
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

} // namespace

const std::vector<Panel::Key>& expected_divergence() {
    static const std::vector<Panel::Key> keys = parse_key_list(kExpectedDivergenceCsv);
    return keys;
}

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const InputData data = load_input(config);
        out << "source: " << data.source << '\n';
        if (data.panel) {
            const Panel& panel = *data.panel;
            double hdi_min = 1.0, hdi_max = 0.0;
            std::size_t points = 0;
            for (const auto& [key, series] : panel.series()) {
                points += series.points().size();
                if (key.second == IndicatorKind::Hdi)
                    for (const auto& p : series.points()) {
                        hdi_min = std::min(hdi_min, p.value);
                        hdi_max = std::max(hdi_max, p.value);
                    }
            }
            out << panel.areas().size() << " areas, " << panel.indicators().size() << " indicators\n";
            out << "values: " << points << " in " << panel.series().size() << " series\n";
            out << "unique (area, indicator, year) keys: ok\n";
            out << "value ranges (HDI in (0,1], DALY > 0, ratio > 0): ok";
            if (hdi_min <= hdi_max)
                out << "; HDI spans [" << format_fixed(hdi_min, 3) << ", " << format_fixed(hdi_max, 3) << "]";
            out << '\n';
            const auto gaps = projection_gaps(panel);
            out << "projection-ready: " << (gaps.empty() ? "yes" : "no") << '\n';
            for (const auto& g : gaps)
                out << "  " << g << '\n';
        }
        if (data.gender) {
            out << "gender records: " << data.gender->size() << '\n';
            out << "gender ratios positive, counts consistent: ok\n";
        }
        return kExitOk;
    });
}

int cmd_project(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        ensure_out_dir(config.out_dir);
        const InputData data = load_input(config);
        const PipelineOutput result = run_pipeline(require_panel(data));

        std::ostringstream csv;
        csv << "area,indicator,year,value,model,capped\n";
        std::size_t rows = 0;
        for (const auto& r : result.results) {
            if (!area_selected(config, r.area) || !indicator_selected(config, r.indicator))
                continue;
            csv << r.area.name() << ',' << to_string(r.indicator) << ',' << r.year.year() << ','
                << format_value(r.indicator, r.value) << ',' << to_string(r.model) << ','
                << (r.capped ? "true" : "false") << '\n';
            ++rows;
        }
        write_files(config.out_dir, {{"projections.csv", csv.str()}});

        report_rejections(result.rejections, config, err);
        out << "projections.csv: " << rows << " rows\n";
        if (rows == 0) {
            err << "error: no projections produced\n";
            return kExitDomain;
        }
        return count_selected(result.rejections, config) == 0 ? kExitOk : kExitDomain;
    });
}

int cmd_audit(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (!(config.tolerance > 0.0))
            throw CommandFailure{kExitEnvironment, "tolerance must be positive"};
        ensure_out_dir(config.out_dir);
        const InputData data = load_input(config);
        const Panel& panel = require_panel(data);

        std::optional<Panel> loaded;
        if (config.published_path) {
            std::error_code ec;
            if (!std::filesystem::is_regular_file(*config.published_path, ec))
                throw CommandFailure{kExitEnvironment, "missing published data: " + config.published_path->string()};
            loaded = load_panel_file(*config.published_path);
        }
        const Panel& published = loaded ? *loaded : panel;
        const bool any_published = std::any_of(published.series().begin(), published.series().end(), [](const auto& kv) {
            const auto* p = kv.second.point_at(kYear2031);
            return p && p->provenance == Provenance::Published;
        });
        if (!any_published)
            throw CommandFailure{kExitEnvironment, "missing published data: no published 2031 values"};

        const PipelineOutput result = run_pipeline(panel);
        const DivergenceReport report = audit(result.results, published, config.tolerance);

        std::ostringstream csv;
        csv << "area,indicator,published,computed,rel_diff,status\n";
        std::size_t matched = 0, divergent = 0;
        std::vector<Panel::Key> divergent_keys;
        for (const auto& r : report.rows) {
            if (!area_selected(config, r.area) || !indicator_selected(config, r.indicator))
                continue;
            csv << r.area.name() << ',' << to_string(r.indicator) << ','
                << format_value(r.indicator, r.published) << ',' << format_value(r.indicator, r.computed)
                << ',' << format_fixed(r.relative_diff, 6) << ',' << to_string(r.status) << '\n';
            if (r.status == AuditStatus::Matched) {
                ++matched;
            } else {
                ++divergent;
                divergent_keys.emplace_back(r.area, r.indicator);
            }
        }
        write_files(config.out_dir, {{"audit.csv", csv.str()}});

        report_rejections(result.rejections, config, err);
        out << "tolerance: " << format_shortest(config.tolerance) << '\n';
        out << "matched: " << matched << '\n';
        out << "divergent: " << divergent << '\n';
        for (const auto& key : report.unmatched_published)
            if (area_selected(config, key.first) && indicator_selected(config, key.second))
                out << "unmatched published: " << key.first.name() << ' ' << to_string(key.second) << '\n';
        for (const auto& key : report.unmatched_computed)
            if (area_selected(config, key.first) && indicator_selected(config, key.second))
                out << "unmatched computed: " << key.first.name() << ' ' << to_string(key.second) << '\n';

        std::vector<Panel::Key> expected;
        for (const auto& key : expected_divergence())
            if (area_selected(config, key.first) && indicator_selected(config, key.second))
                expected.push_back(key);
        std::sort(divergent_keys.begin(), divergent_keys.end());
        if (divergent_keys == expected) {
            out << "divergent set matches the expected-divergence list\n";
            return kExitOk;
        }
        out << "divergent set differs from the expected-divergence list\n";
        for (const auto& key : divergent_keys)
            if (!std::binary_search(expected.begin(), expected.end(), key))
                out << "  unexpected divergence: " << key.first.name() << ' ' << to_string(key.second) << '\n';
        for (const auto& key : expected)
            if (!std::binary_search(divergent_keys.begin(), divergent_keys.end(), key))
                out << "  expected divergence not observed: " << key.first.name() << ' ' << to_string(key.second) << '\n';
        return kExitDomain;
    });
}

namespace {

std::string indicator_file_name(IndicatorKind kind) {
    switch (kind) {
    case IndicatorKind::Hdi: return "hdi_by_area.csv";
    case IndicatorKind::DalyA: return "daly_a_by_area.csv";
    case IndicatorKind::DalyB: return "daly_b_by_area.csv";
    case IndicatorKind::DalyC: return "daly_c_by_area.csv";
    default: return {};
    }
}

std::string gender_scatter(const std::vector<GenderRecord>& records, DecadeYear year,
                           const RunConfig& config) {
    std::ostringstream csv;
    csv << "overall_mf,disabled_mf,area\n";
    for (const auto& rec : records) {
        if (rec.year != year || !area_selected(config, rec.area))
            continue;
        const RatioPoint p = make_ratio_point(rec);
        csv << format_fixed(p.overall_mf, 6) << ',' << format_fixed(p.disabled_mf, 6) << ','
            << p.area.name() << '\n';
    }
    return csv.str();
}

} // namespace

int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        ensure_out_dir(config.out_dir);
        const InputData data = load_input(config);
        std::vector<std::pair<std::string, std::string>> files;

        if (data.panel) {
            const Panel& panel = *data.panel;
            const PipelineOutput result = run_pipeline(panel);
            std::map<Panel::Key, double> computed;
            for (const auto& r : result.results)
                computed.emplace(Panel::Key{r.area, r.indicator}, r.value);

            for (IndicatorKind kind : {IndicatorKind::Hdi, IndicatorKind::DalyA, IndicatorKind::DalyB,
                                       IndicatorKind::DalyC}) {
                if (!indicator_selected(config, kind))
                    continue;
                bool with_published = false;
                for (const auto& [key, s] : panel.series())
                    if (key.second == kind)
                        if (const auto* p = s.point_at(kYear2031); p && p->provenance == Provenance::Published)
                            with_published = true;

                std::ostringstream csv;
                csv << "area,y2001,y2011,y2021,y2031_computed" << (with_published ? ",y2031_published" : "") << '\n';
                for (const AreaId& area : panel.areas()) {
                    const auto* s = panel.find(area, kind);
                    if (!s || !area_selected(config, area))
                        continue;
                    csv << area.name();
                    for (DecadeYear year : kObservedYears) {
                        csv << ',';
                        if (const auto* p = s->point_at(year); p && p->provenance == Provenance::Observed)
                            csv << format_value(kind, p->value);
                    }
                    csv << ',';
                    if (auto it = computed.find({area, kind}); it != computed.end())
                        csv << format_value(kind, it->second);
                    if (with_published) {
                        csv << ',';
                        if (const auto* p = s->point_at(kYear2031); p && p->provenance == Provenance::Published)
                            csv << format_value(kind, p->value);
                    }
                    csv << '\n';
                }
                files.emplace_back(indicator_file_name(kind), csv.str());
            }
            report_rejections(result.rejections, config, err);
        }

        const bool gender_wanted = !config.indicator || is_ratio(*config.indicator);
        if (data.gender && gender_wanted) {
            files.emplace_back("gender_scatter_2001.csv", gender_scatter(*data.gender, kYear2001, config));
            files.emplace_back("gender_scatter_2011.csv", gender_scatter(*data.gender, kYear2011, config));
        }

        write_files(config.out_dir, files);
        for (const auto& [name, content] : files)
            out << "wrote " << name << '\n';
        return kExitOk;
    });
}

int cmd_gender(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        ensure_out_dir(config.out_dir);
        const InputData data = load_input(config);
        if (!data.gender || data.gender->empty())
            throw CommandFailure{kExitEnvironment, "missing gender data in " + data.source};

        struct Row {
            RatioPoint point;
            std::optional<bool> outlier;
            bool projected;
        };
        std::map<std::pair<AreaId, DecadeYear>, Row> rows;

        std::map<DecadeYear, std::vector<RatioPoint>> by_year;
        for (const auto& rec : *data.gender)
            by_year[rec.year].push_back(make_ratio_point(rec));

        for (const auto& [year, points] : by_year) {
            std::vector<std::optional<bool>> flags(points.size());
            if (points.size() >= 3) {
                const auto outliers = detect_outliers(points);
                for (std::size_t i = 0; i < points.size(); ++i)
                    flags[i] = outliers[i].flagged;
            }
            std::size_t negative = 0;
            std::vector<std::string> flagged;
            for (std::size_t i = 0; i < points.size(); ++i) {
                rows.emplace(std::make_pair(points[i].area, year), Row{points[i], flags[i], false});
                if (points[i].gap < 0.0)
                    ++negative;
                if (flags[i].value_or(false))
                    flagged.push_back(points[i].area.name());
            }
            out << year.year() << ": " << points.size() << " areas, " << negative << " with negative gap";
            if (points.size() >= 3) {
                out << ", outliers (k=" << format_shortest(kDefaultOutlierK) << "):";
                for (const auto& name : flagged)
                    out << ' ' << name;
                if (flagged.empty())
                    out << " none";
            }
            out << '\n';
        }

        for (const auto& [year, points] : by_year) {
            if (year != kYear2011)
                continue;
            for (const auto& p2011 : points) {
                auto base = rows.find({p2011.area, kYear2001});
                if (base == rows.end())
                    continue;
                const RatioPoint& p2001 = base->second.point;
                for (DecadeYear target : {kYear2021, kYear2031}) {
                    const auto overall = extrapolate_ratio(p2001.overall_mf, p2011.overall_mf, target);
                    const auto disabled = extrapolate_ratio(p2001.disabled_mf, p2011.disabled_mf, target);
                    rows.emplace(std::make_pair(p2011.area, target),
                                 Row{make_ratio_point(p2011.area, target, overall.value, disabled.value),
                                     std::nullopt, true});
                }
            }
        }

        std::ostringstream csv;
        csv << "area,year,overall_mf,disabled_mf,gap,outlier,projected\n";
        for (const auto& [key, row] : rows) {
            if (!area_selected(config, key.first))
                continue;
            csv << key.first.name() << ',' << key.second.year() << ','
                << format_fixed(row.point.overall_mf, 6) << ',' << format_fixed(row.point.disabled_mf, 6)
                << ',' << format_fixed(row.point.gap, 6) << ','
                << (row.outlier ? (*row.outlier ? "true" : "false") : "NA") << ','
                << (row.projected ? "true" : "false") << '\n';
        }
        write_files(config.out_dir, {{"gender_analysis.csv", csv.str()}});
        out << "wrote gender_analysis.csv\n";
        return kExitOk;
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Small-sample HDI and DALY projection to 2031", "dalyproj"};
    app.require_subcommand(1);

    RunConfig config;
    std::string input, published, out_dir = ".", indicator, area;
    double tolerance = 0.005;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", input, "Panel or gender CSV (default: embedded reference panel)");
        sub->add_option("--published", published, "Panel CSV whose 2031 rows are the published values");
        sub->add_option("--tolerance", tolerance, "Relative audit tolerance")->capture_default_str();
        sub->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
        sub->add_option("--indicator", indicator, "Restrict output to one indicator");
        sub->add_option("--area", area, "Restrict output to one area");
    };
    using Command = int (*)(const RunConfig&, std::ostream&, std::ostream&);
    const std::pair<const char*, std::pair<const char*, Command>> commands[] = {
        {"validate", {"Load the panel and check its invariants", &cmd_validate}},
        {"project", {"Write 2031 projections to projections.csv", &cmd_project}},
        {"audit", {"Compare projections against published values, write audit.csv", &cmd_audit}},
        {"report", {"Write plot-ready CSV files per indicator", &cmd_report}},
        {"gender", {"Write gender ratio analysis to gender_analysis.csv", &cmd_gender}},
    };
    std::map<CLI::App*, Command> dispatch;
    for (const auto& [name, entry] : commands) {
        CLI::App* sub = app.add_subcommand(name, entry.first);
        add_common(sub);
        dispatch[sub] = entry.second;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? kExitOk : kExitEnvironment;
    }

    if (!input.empty())
        config.input_path = input;
    if (!published.empty())
        config.published_path = published;
    config.out_dir = out_dir;
    config.tolerance = tolerance;
    if (!(tolerance > 0.0)) {
        err << "error: --tolerance must be positive\n";
        return kExitEnvironment;
    }
    if (!indicator.empty()) {
        std::string upper;
        for (char c : indicator)
            upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
        config.indicator = parse_indicator(upper);
        if (!config.indicator) {
            err << "error: unknown indicator '" << indicator << "'\n";
            return kExitEnvironment;
        }
    }
    if (!area.empty())
        config.area = AreaId(area);

    for (const auto& [sub, command] : dispatch)
        if (sub->parsed())
            return command(config, out, err);
    return kExitEnvironment;
}

} // namespace dalyproj::cli
