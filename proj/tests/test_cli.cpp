#include "kosc/check.hpp"
#include "kosc/cli.hpp"
#include "kosc/coherent.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace kosc;
using json = nlohmann::json;

namespace
{

struct Outcome
{
    int         code;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int          code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream                    in(text);
    std::string                           line;
    while (std::getline(in, line))
    {
        std::vector<std::string> cells;
        std::string              cell;
        bool                     quoted = false;
        for (char c : line)
        {
            if (c == '"')
                quoted = !quoted;
            else if (c == ',' && !quoted)
            {
                cells.push_back(cell);
                cell.clear();
            }
            else
                cell += c;
        }
        cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

} // namespace

TEST(Cli, SpectrumCsv)
{
    const auto r = invoke({"spectrum", "--p", "0.5", "--N", "4", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "lambda_computed", "lambda_formula", "lambda_as"}));
    const double want[] = {2, 5, 6, 5, 2};
    for (int n = 0; n <= 4; ++n)
    {
        EXPECT_EQ(std::stod(rows[n + 1][2]), want[n]);
        EXPECT_NEAR(std::stod(rows[n + 1][1]), want[n], 1e-12);
        EXPECT_NEAR(std::stod(rows[n + 1][3]), n + 0.5, 1e-9);
    }
}

TEST(Cli, SpectrumJsonSmallest)
{
    const auto r = invoke({"spectrum", "--p", "0.3", "--N", "1", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["command"], "spectrum");
    EXPECT_EQ(j["params"]["N"], 1);
    EXPECT_EQ(j["params"]["p"].get<double>(), 0.3);
    ASSERT_TRUE(j["rows"].is_array());
    EXPECT_EQ(j["rows"].size(), 2u);
}

TEST(Cli, ValidationErrorsExitTwo)
{
    auto r = invoke({"spectrum", "--p", "1.5", "--N", "4"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("p must lie in (0,1)"), std::string::npos);
    EXPECT_TRUE(r.out.empty());

    EXPECT_EQ(invoke({"spectrum", "--N", "0"}).code, 2);
    EXPECT_EQ(invoke({"spectrum", "--N", "abc"}).code, 2);
    EXPECT_EQ(invoke({"coherent", "--family", "glauber"}).code, 2);
    EXPECT_EQ(invoke({"coherent", "--z", "1"}).code, 2);
    EXPECT_EQ(invoke({"spectrum", "--format", "xml"}).code, 2);
    EXPECT_EQ(invoke({"bogus"}).code, 2);
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"--help"}).code, 0);
    EXPECT_EQ(invoke({"check", "--help"}).code, 0);
}

TEST(Cli, CoherentExamples)
{
    auto r = invoke({"coherent", "--family", "disp", "--z", "0", "0", "--p", "0.5", "--N", "4"});
    ASSERT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    ASSERT_EQ(j["rows"].size(), 5u);
    for (int l = 0; l <= 4; ++l)
    {
        EXPECT_EQ(j["rows"][l]["re"].get<double>(), l == 0 ? 1.0 : 0.0);
        EXPECT_EQ(j["rows"][l]["im"].get<double>(), 0.0);
    }

    r = invoke({"coherent", "--family", "disp", "--z", "1", "0", "--p", "0.5", "--N", "1", "--format", "csv"});
    ASSERT_EQ(r.code, 0);
    const auto rows = parse_csv(r.out);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"l", "re", "im", "prob"}));
    EXPECT_NEAR(std::stod(rows[1][3]), std::cos(1.0) * std::cos(1.0), 1e-12);
    EXPECT_NEAR(std::stod(rows[2][3]), std::sin(1.0) * std::sin(1.0), 1e-12);

    r = invoke({"coherent", "--family", "spin", "--xi", "0", "0", "--p", "0.5", "--N", "4"});
    ASSERT_EQ(r.code, 0);
    j = json::parse(r.out);
    EXPECT_NEAR(j["rows"][0]["prob"].get<double>(), 1.0, 1e-12);

    r = invoke({"coherent", "--family", "eq49", "--z", "0", "0", "--N", "3"});
    ASSERT_EQ(r.code, 0);
    j = json::parse(r.out);
    EXPECT_EQ(j["rows"][0]["re"].get<double>(), 1.0);
    bool continuity = false;
    for (const auto& note : j["notes"])
        continuity = continuity || note.get<std::string>().find("continuity") != std::string::npos;
    EXPECT_TRUE(continuity);
}

TEST(Cli, ProbabilitiesSumToOne)
{
    for (const char* family : {"disp", "eq49", "spin", "phase"})
        for (const char* n : {"1", "5", "16"})
        {
            const auto r = invoke({"coherent", "--family", family, "--z", "0.7", "-1.3", "--xi", "2", "0.5", "--theta0",
                                   "0.4", "--p", "0.3", "--N", n});
            ASSERT_EQ(r.code, 0) << family << r.err;
            double     total = 0.0;
            const auto doc   = json::parse(r.out);
            for (const auto& row : doc["rows"])
                total += row["prob"].get<double>();
            EXPECT_NEAR(total, 1.0, 1e-10) << family << " " << n;
        }
}

TEST(Cli, JsonAndCsvRoundTripBitExactly)
{
    const OscillatorParams params(0.3, 6);
    const complex_t        z(0.3, 0.7);
    const ComplexVector    want = displacement_state(z, params).vector.amplitudes();

    const auto js = invoke({"coherent", "--family", "disp", "--z", "0.3", "0.7", "--p", "0.3", "--N", "6"});
    const auto cs = invoke({"coherent", "--family", "disp", "--z", "0.3", "0.7", "--p", "0.3", "--N", "6", "--format",
                            "csv"});
    ASSERT_EQ(js.code, 0);
    ASSERT_EQ(cs.code, 0);
    const auto j    = json::parse(js.out);
    const auto rows = parse_csv(cs.out);
    for (int l = 0; l <= 6; ++l)
    {
        EXPECT_EQ(j["rows"][l]["re"].get<double>(), want[l].real());
        EXPECT_EQ(j["rows"][l]["im"].get<double>(), want[l].imag());
        EXPECT_EQ(std::strtod(rows[l + 1][1].c_str(), nullptr), want[l].real());
        EXPECT_EQ(std::strtod(rows[l + 1][2].c_str(), nullptr), want[l].imag());
    }
    // the parsed document serializes back to identical text
    EXPECT_EQ(nlohmann::ordered_json::parse(js.out).dump(2) + "\n", js.out);
}

TEST(Cli, OverlapRootsAndAsCompare)
{
    auto r = invoke({"overlap", "--z", "1", "0", "--xi", "1", "0", "--p", "0.5", "--N", "4"});
    ASSERT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    ASSERT_EQ(j["rows"].size(), 6u);
    for (const auto& row : j["rows"])
    {
        const std::string a = row["a"], b = row["b"];
        if (a == "disp" && b == "eq49")
        {
            EXPECT_GT(row["abs"].get<double>(), 1.0 - 1e-8);
        }
        if (a == "disp" && (b == "spin" || b == "phase"))
        {
            EXPECT_LT(row["abs"].get<double>(), 1.0 - 1e-3);
        }
    }

    r = invoke({"roots", "--p", "0.3", "--N", "5", "--format", "csv"});
    ASSERT_EQ(r.code, 0);
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 7u);
    double wsum = 0.0;
    for (std::size_t k = 1; k < rows.size(); ++k)
    {
        wsum += std::stod(rows[k][4]);
        EXPECT_NEAR(std::stod(rows[k][4]), std::stod(rows[k][6]), 1e-12);
    }
    EXPECT_NEAR(wsum, 1.0, 1e-12);

    r = invoke({"as-compare", "--p", "0.7", "--N", "6"});
    ASSERT_EQ(r.code, 0);
    j = json::parse(r.out);
    EXPECT_LT(j["report"]["matrix_relation"].get<double>(), 1e-8);
    for (const auto& row : j["rows"])
        EXPECT_LT(std::abs(row["residual"].get<double>()), 1e-8);
}

TEST(Cli, CheckSinglePoint)
{
    const auto r = invoke({"check", "--p", "0.5", "--N", "8"});
    ASSERT_EQ(r.code, 0) << r.out;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["command"], "check");
    EXPECT_TRUE(j["report"]["passed"].get<bool>());
    ASSERT_EQ(j["report"]["points"].size(), 1u);
    bool found = false;
    for (const auto& e : j["report"]["points"][0]["entries"])
    {
        EXPECT_TRUE(e["pass"].get<bool>()) << e["name"];
        if (e["name"] == "commutator_diag")
            found = e["note"].get<std::string>().find("N - 2n") != std::string::npos;
    }
    EXPECT_TRUE(found);
    bool note = false;
    for (const auto& n : j["notes"])
        note = note || n.get<std::string>().find("commutator_diag = N - 2n") != std::string::npos;
    EXPECT_TRUE(note);
}

TEST(Cli, OutWritesFile)
{
    const auto path = std::filesystem::temp_directory_path() / "kosc_cli_out_test.csv";
    std::filesystem::remove(path);
    const auto r = invoke({"spectrum", "--N", "3", "--format", "csv", "--out", path.string()});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::string   header;
    std::getline(in, header);
    EXPECT_EQ(header, "n,lambda_computed,lambda_formula,lambda_as");
    std::filesystem::remove(path);

    EXPECT_EQ(invoke({"spectrum", "--out", "/nonexistent-dir/x.json"}).code, 2);
}

TEST(CheckReport, EntriesAndNotes)
{
    const auto report = run_checks(OscillatorParams(0.3, 4));
    EXPECT_TRUE(report.passed());
    ASSERT_NE(report.find("root_sum_matches_displacement"), nullptr);
    EXPECT_NE(report.find("root_sum_matches_displacement")->note.find("ladder"), std::string::npos);
    EXPECT_EQ(report.find("no_such_entry"), nullptr);
    const auto notes = standing_notes();
    EXPECT_GE(notes.size(), 2u);

    CheckReport failing = report;
    failing.entries.push_back({"synthetic", 1.0, 0.5, false, ""});
    EXPECT_FALSE(failing.passed());
}

TEST(CheckReport, SweepKeepsOrder)
{
    const auto reports = run_sweep({0.7, 0.1}, {2, 1});
    ASSERT_EQ(reports.size(), 4u);
    EXPECT_EQ(reports[0].p, 0.7);
    EXPECT_EQ(reports[0].N, 2);
    EXPECT_EQ(reports[1].N, 1);
    EXPECT_EQ(reports[3].p, 0.1);
    for (const auto& r : reports)
        EXPECT_TRUE(r.passed());
}
