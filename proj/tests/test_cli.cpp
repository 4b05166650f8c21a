#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "dalyproj/cli.hpp"

using namespace dalyproj;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("dalyproj-cli-" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "dalyproj");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        out.push_back(l);
    return out;
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
}

} // namespace

TEST_CASE("validate") {
    TempDir tmp;
    const auto ok = invoke({"validate"});
    CHECK(ok.status == 0);
    CHECK(ok.out.find("29 areas, 6 indicators") != std::string::npos);

    write(tmp.path / "bad.csv", "area,indicator,year,value\nINDIA,HDI,2001,0.495\nINDIA,HDI,2011,1.495\n");
    const auto bad = invoke({"validate", "--input", (tmp.path / "bad.csv").string()});
    CHECK(bad.status == 1);
    CHECK(bad.err.find("row 3") != std::string::npos);

    CHECK(invoke({"validate", "--input", (tmp.path / "missing.csv").string()}).status == 2);
}

TEST_CASE("project writes the frozen schema") {
    TempDir tmp;
    const auto r = invoke({"project", "--out-dir", tmp.path.string()});
    CHECK(r.status == 0);
    const auto rows = lines(slurp(tmp.path / "projections.csv"));
    REQUIRE(rows.size() == 117);
    CHECK(rows[0] == "area,indicator,year,value,model,capped");
    const auto has = [&](const std::string& row) { return std::find(rows.begin(), rows.end(), row) != rows.end(); };
    CHECK(has("INDIA,HDI,2031,0.709,linear_on_decade,false"));
    CHECK(has("INDIA,DALY_C,2031,2671.37,linear_on_hdi,false"));
    CHECK(has("INDIA,DALY_A,2031,8633.95,exponential_on_hdi,false"));
    CHECK(has("MIZORAM,DALY_A,2031,10485.95,exponential_on_hdi,true"));
    CHECK(has("BIHAR,HDI,2031,0.640,linear_on_decade,false"));
}

TEST_CASE("project filters") {
    TempDir tmp;
    const auto r = invoke({"project", "--out-dir", tmp.path.string(), "--indicator", "DALY_A", "--area", "bihar"});
    CHECK(r.status == 0);
    const auto rows = lines(slurp(tmp.path / "projections.csv"));
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].rfind("BIHAR,DALY_A,2031,", 0) == 0);
    const double v = std::stod(rows[1].substr(std::string("BIHAR,DALY_A,2031,").size()));
    CHECK(std::abs(v - 8864.07) / 8864.07 < 0.005);
}

TEST_CASE("project on an empty panel") {
    TempDir tmp;
    write(tmp.path / "empty.csv", "area,indicator,year,value\n");
    const auto r = invoke({"project", "--input", (tmp.path / "empty.csv").string(), "--out-dir", tmp.path.string()});
    CHECK(r.status == 1);
    CHECK(lines(slurp(tmp.path / "projections.csv")).size() == 1);
}

TEST_CASE("project reports failing areas and keeps the rest") {
    TempDir tmp;
    write(tmp.path / "p.csv", "area,indicator,year,value\n"
                              "A,HDI,2001,0.4\nA,HDI,2011,0.5\nA,HDI,2021,0.6\n"
                              "A,DALY_A,2001,30\nA,DALY_A,2011,20\nA,DALY_A,2021,10\n"
                              "A,DALY_B,2001,30\nA,DALY_B,2011,40\nA,DALY_B,2021,50\n"
                              "A,DALY_C,2001,3\nA,DALY_C,2011,3\nA,DALY_C,2021,3\n"
                              "B,HDI,2001,0.4\nB,HDI,2021,0.6\n");
    const auto r = invoke({"project", "--input", (tmp.path / "p.csv").string(), "--out-dir", tmp.path.string()});
    CHECK(r.status == 1);
    CHECK(r.err.find("rejected B HDI") != std::string::npos);
    const auto rows = lines(slurp(tmp.path / "projections.csv"));
    CHECK(rows.size() == 5);
    CHECK(rows[1] == "A,HDI,2031,0.700,linear_on_decade,false");
    CHECK(rows[3] == "A,DALY_B,2031,60.00,linear_on_hdi,false");
}

TEST_CASE("audit") {
    TempDir tmp;
    const auto r = invoke({"audit", "--out-dir", tmp.path.string()});
    CHECK(r.status == 0);
    CHECK(r.out.find("matched: 102") != std::string::npos);
    CHECK(r.out.find("divergent: 14") != std::string::npos);
    const auto rows = lines(slurp(tmp.path / "audit.csv"));
    CHECK(rows[0] == "area,indicator,published,computed,rel_diff,status");
    CHECK(rows.size() == 117);
    const auto status_of = [&](const std::string& prefix) {
        for (const auto& row : rows)
            if (row.rfind(prefix, 0) == 0)
                return row.substr(row.rfind(',') + 1);
        return std::string("absent");
    };
    for (const char* area : {"INDIA", "GOA", "ASSAM", "NAGALAND"})
        CHECK(status_of(std::string(area) + ",DALY_B,") == "divergent");
    CHECK(status_of("ANDHRA PRADESH,DALY_B,") == "matched");

    const auto loose = invoke({"audit", "--out-dir", tmp.path.string(), "--tolerance", "1.0"});
    CHECK(loose.status == 1);
    CHECK(loose.out.find("divergent: 0") != std::string::npos);

    const auto scoped = invoke({"audit", "--out-dir", tmp.path.string(), "--area", "KERALA"});
    CHECK(scoped.status == 0);
    CHECK(lines(slurp(tmp.path / "audit.csv")).size() == 5);
}

TEST_CASE("audit with an external published file") {
    TempDir tmp;
    write(tmp.path / "pub.csv", "area,indicator,year,value\nINDIA,HDI,2031,0.709\nINDIA,DALY_B,2031,21239.15\n");
    const auto r = invoke({"audit", "--published", (tmp.path / "pub.csv").string(), "--out-dir", tmp.path.string()});
    // INDIA DALY_B now matches, which the expected list does not anticipate.
    CHECK(r.status == 1);
    CHECK(r.out.find("matched: 2") != std::string::npos);
    CHECK(r.out.find("unmatched computed: ANDHRA PRADESH HDI") != std::string::npos);

    CHECK(invoke({"audit", "--published", (tmp.path / "none.csv").string(), "--out-dir", tmp.path.string()}).status == 2);

    write(tmp.path / "observed.csv", "area,indicator,year,value\nA,HDI,2001,0.4\nA,HDI,2011,0.5\nA,HDI,2021,0.6\n");
    CHECK(invoke({"audit", "--input", (tmp.path / "observed.csv").string(), "--out-dir", tmp.path.string()}).status == 2);
}

TEST_CASE("report") {
    TempDir tmp;
    const auto r = invoke({"report", "--out-dir", tmp.path.string()});
    CHECK(r.status == 0);
    for (const char* f : {"hdi_by_area.csv", "daly_a_by_area.csv", "daly_b_by_area.csv", "daly_c_by_area.csv",
                          "gender_scatter_2001.csv", "gender_scatter_2011.csv"})
        CHECK(fs::exists(tmp.path / f));
    const auto hdi = lines(slurp(tmp.path / "hdi_by_area.csv"));
    CHECK(hdi[0] == "area,y2001,y2011,y2021,y2031_computed,y2031_published");
    CHECK(std::find(hdi.begin(), hdi.end(), "INDIA,0.495,0.586,0.633,0.709,0.709") != hdi.end());
    const auto g = slurp(tmp.path / "gender_scatter_2001.csv");
    CHECK(g.rfind("overall_mf,disabled_mf,area\n", 0) == 0);
    CHECK(g.find("1.119519,1.990575,ARUNACHAL PRADESH") != std::string::npos);

    TempDir goa;
    CHECK(invoke({"report", "--out-dir", goa.path.string(), "--area", "GOA"}).status == 0);
    for (const auto& entry : fs::directory_iterator(goa.path))
        CHECK(lines(slurp(entry.path())).size() == 2);
}

TEST_CASE("report into an unwritable location") {
    TempDir tmp;
    write(tmp.path / "file", "x");
    CHECK(invoke({"report", "--out-dir", (tmp.path / "file" / "sub").string()}).status == 2);
}

TEST_CASE("gender") {
    TempDir tmp;
    const auto r = invoke({"gender", "--out-dir", tmp.path.string()});
    CHECK(r.status == 0);
    const auto rows = lines(slurp(tmp.path / "gender_analysis.csv"));
    CHECK(rows[0] == "area,year,overall_mf,disabled_mf,gap,outlier,projected");
    CHECK(rows.size() == 1 + 29 * 4);
    int negative_2001 = 0, negative_2011 = 0, flagged = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        std::vector<std::string> f;
        std::istringstream in(rows[i]);
        for (std::string s; std::getline(in, s, ',');)
            f.push_back(s);
        REQUIRE(f.size() == 7);
        const bool negative = f[4][0] == '-';
        if (f[1] == "2001" && negative)
            ++negative_2001;
        if (f[1] == "2011" && negative)
            ++negative_2011;
        if (f[5] == "true") {
            ++flagged;
            CHECK(f[0] == "ARUNACHAL PRADESH");
            CHECK(f[1] == "2001");
        }
        CHECK((f[6] == "true") == (f[1] == "2021" || f[1] == "2031"));
        if (f[6] == "true")
            CHECK(f[5] == "NA");
    }
    CHECK(negative_2001 == 1);
    CHECK(negative_2011 == 0);
    CHECK(flagged == 1);

    write(tmp.path / "ratios.csv", "area,indicator,year,value\nA,HDI,2001,0.4\n");
    CHECK(invoke({"gender", "--input", (tmp.path / "ratios.csv").string(), "--out-dir", tmp.path.string()}).status == 2);

    write(tmp.path / "g.csv", "area,year,overall_mf,disabled_mf\nA,2001,1.0,1.2\nA,2011,1.0,1.3\n");
    CHECK(invoke({"gender", "--input", (tmp.path / "g.csv").string(), "--out-dir", tmp.path.string()}).status == 0);
    const auto small = lines(slurp(tmp.path / "gender_analysis.csv"));
    REQUIRE(small.size() == 5);
    CHECK(small[1] == "A,2001,1.000000,1.200000,0.200000,NA,false");
    CHECK(small[3] == "A,2021,1.000000,1.400000,0.400000,NA,true");
}

TEST_CASE("byte determinism") {
    TempDir a, b;
    for (const auto& dir : {a.path, b.path})
        for (const char* cmd : {"project", "audit", "report", "gender"})
            invoke({cmd, "--out-dir", dir.string()});
    for (const auto& entry : fs::directory_iterator(a.path))
        CHECK(slurp(entry.path()) == slurp(b.path / entry.path().filename()));
}

TEST_CASE("usage errors exit 2") {
    CHECK(invoke({}).status == 2);
    CHECK(invoke({"frobnicate"}).status == 2);
    CHECK(invoke({"audit", "--tolerance", "0"}).status == 2);
    CHECK(invoke({"audit", "--tolerance", "-1"}).status == 2);
    CHECK(invoke({"audit", "--tolerance", "abc"}).status == 2);
    CHECK(invoke({"project", "--indicator", "GDP"}).status == 2);
    CHECK(invoke({"--help"}).status == 0);
}

TEST_CASE("expected divergence list") {
    const auto& keys = cli::expected_divergence();
    CHECK(keys.size() == 14);
    CHECK(std::is_sorted(keys.begin(), keys.end()));
    for (const auto& k : keys)
        CHECK(k.second == IndicatorKind::DalyB);
}
