#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "test_support.hpp"

#ifndef PENDENCY_CLI
#error "PENDENCY_CLI must be defined by the build"
#endif

namespace fs = std::filesystem;
using pendency::ptest::data_dir;
using pendency::ptest::read_file;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(PENDENCY_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string fixture() { return (data_dir() / "synthetic24").string(); }

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("pendency_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

const char* kSnapshotHeader =
    "date,court_id,pending_civil,pending_criminal,pending_writ,pending_total,filed_monthly,disposed_monthly\n";

}  // namespace

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("bogus").code, 1);
    EXPECT_EQ(run("project --data-dir " + fixture()).code, 1);
    EXPECT_EQ(run("fit").code, 1);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, IngestSummarisesFixture) {
    const auto r = run("ingest --data-dir " + fixture());
    ASSERT_EQ(r.code, 0) << r.out;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["courts"].get<int>(), 24);
    EXPECT_EQ(j["findings"]["error"].get<int>(), 0);
}

TEST(Cli, IngestExplicitFiles) {
    const auto dir = data_dir() / "synthetic24";
    const auto r = run("ingest --snapshots " + (dir / "snapshots.csv").string() + " --strength " +
                       (dir / "strength.csv").string());
    EXPECT_EQ(r.code, 0);
}

TEST(Cli, MissingFileIsInputError) {
    EXPECT_EQ(run("ingest --snapshots /nonexistent.csv --strength /nonexistent2.csv").code, 1);
}

TEST(Cli, ProjectNeverClearingCourt) {
    const auto r = run("project --data-dir " + fixture() + " --court PH --ramp-years 10");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["verdict"]["kind"], "never_clears");
    EXPECT_EQ(run("project --data-dir " + fixture() + " --court ZZ --ramp-years 10").code, 1);
    EXPECT_EQ(run("project --data-dir " + fixture() + " --court PH --ramp-years 10 --target lots").code, 1);
}

TEST(Cli, SolveAndZeroRate) {
    const auto solve = run("solve-judges --data-dir " + fixture() + " --target-years 5");
    ASSERT_EQ(solve.code, 0);
    const auto rows = nlohmann::json::parse(solve.out);
    ASSERT_EQ(rows.size(), 24u);
    const auto zero = run("zero-rate --data-dir " + fixture());
    ASSERT_EQ(zero.code, 0);
    const auto z = nlohmann::json::parse(zero.out);
    bool ph_exceeds = false;
    for (const auto& row : z) {
        if (row["court"] == "PH") ph_exceeds = row["sufficiency"] == "exceeds_sanctioned";
    }
    EXPECT_TRUE(ph_exceeds);
    EXPECT_EQ(run("solve-judges --data-dir " + fixture() + " --target-years 1").code, 1);
}

TEST(Cli, ReportIsByteIdenticalAcrossRuns) {
    const auto a = scratch("report_a");
    const auto b = scratch("report_b");
    ASSERT_EQ(run("report --data-dir " + fixture() + " --out " + a.string()).code, 0);
    ASSERT_EQ(run("report --data-dir " + fixture() + " --out " + b.string()).code, 0);
    std::size_t files = 0;
    for (const auto& e : fs::recursive_directory_iterator(a)) {
        if (!e.is_regular_file()) continue;
        ++files;
        const auto other = b / fs::relative(e.path(), a);
        ASSERT_TRUE(fs::exists(other)) << other;
        EXPECT_EQ(read_file(e.path()), read_file(other)) << e.path();
    }
    EXPECT_GE(files, 5u);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Cli, ReportSingleFormat) {
    const auto out = scratch("report_csv");
    const auto r = run("report --data-dir " + fixture() + " --out " + out.string() + " --format csv");
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(fs::exists(out / "report.csv"));
    EXPECT_FALSE(fs::exists(out / "report.json"));
    EXPECT_EQ(run("report --data-dir " + fixture() + " --out " + out.string() + " --format xml").code, 1);
    fs::remove_all(out);
}

TEST(Cli, EmptyDatasetStillReports) {
    const auto dir = scratch("empty");
    write(dir / "snapshots.csv", kSnapshotHeader);
    write(dir / "strength.csv", "court_id,name,sanctioned,working_avg\n");
    const auto r = run("report --data-dir " + dir.string() + " --out " + (dir / "out").string());
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(fs::exists(dir / "out" / "report.csv"));
    fs::remove_all(dir);
}

TEST(Cli, InfeasibleExitsTwo) {
    const auto dir = scratch("infeasible");
    write(dir / "snapshots.csv", std::string(kSnapshotHeader) +
                                     "2020-01-01,X,100,0,0,100,10,0\n"
                                     "2020-01-02,X,110,0,0,110,10,0\n"
                                     "2020-01-03,X,120,0,0,120,10,0\n");
    write(dir / "strength.csv", "court_id,name,sanctioned,working_avg\nX,Example,10,5\n");
    EXPECT_EQ(run("solve-judges --data-dir " + dir.string() + " --target-years 5").code, 2);
    EXPECT_EQ(run("project --data-dir " + dir.string() + " --court X --ramp-years 3").code, 0);
    fs::remove_all(dir);
}

TEST(Cli, TooFewPointsExitsTwo) {
    const auto dir = scratch("short");
    write(dir / "snapshots.csv", std::string(kSnapshotHeader) + "2020-01-01,X,100,0,0,100,10,5\n");
    write(dir / "strength.csv", "court_id,name,sanctioned,working_avg\nX,Example,10,5\n");
    EXPECT_EQ(run("fit --data-dir " + dir.string()).code, 2);
    fs::remove_all(dir);
}

TEST(Cli, MalformedCsvIsInputError) {
    const auto dir = scratch("malformed");
    write(dir / "snapshots.csv", std::string(kSnapshotHeader) + "2020-13-01,X,100,0,0,100,10,5\n");
    write(dir / "strength.csv", "court_id,name,sanctioned,working_avg\nX,Example,10,5\n");
    EXPECT_EQ(run("ingest --data-dir " + dir.string()).code, 1);
    fs::remove_all(dir);
}
