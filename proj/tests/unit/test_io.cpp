#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "pdpp/errors.hpp"
#include "pdpp/io.hpp"
#include "pdpp/report.hpp"
#include "pdpp/suites.hpp"

using namespace pdpp;

TEST(Csv, RoundTripIsExact) {
    CsvTable t{{"s", "rho"}, {{0.0, 1.0}, {0.1, 1.0 / 3.0}, {1e-300, std::nan("")}}};
    std::stringstream ss;
    write_csv(t, ss);
    const CsvTable back = read_csv(ss);
    ASSERT_EQ(back.columns, t.columns);
    ASSERT_EQ(back.rows.size(), 3u);
    EXPECT_EQ(back.rows[1][1], 1.0 / 3.0);
    EXPECT_EQ(back.rows[2][0], 1e-300);
    EXPECT_TRUE(std::isnan(back.rows[2][1]));
    EXPECT_EQ(back.column("rho"), 1u);
}

TEST(Csv, RejectsMalformedInput) {
    std::stringstream bad_number("a,b\n1,x\n");
    EXPECT_THROW(read_csv(bad_number), domain_error);
    std::stringstream bad_width("a,b\n1,2,3\n");
    EXPECT_THROW(read_csv(bad_width), domain_error);
}

TEST(Csv, JsonForm) {
    CsvTable t{{"x"}, {{1.5}, {2.5}}};
    const CsvTable back = table_from_json(nlohmann::json::parse(table_json(t).dump()));
    EXPECT_EQ(back.rows, t.rows);
}

TEST(Report, JsonRoundTrip) {
    ExperimentReport r;
    r.experiment = "demo";
    r.params = params_json({0.3, 2.0});
    r.replicates = 10;
    r.seed = 99;
    r.add_abs("a", 1.0, 1.05, 0.1);
    r.add_se("b", 0.0, 1.0, 5.0, 3.0);
    r.add_below("c", 2.0, 1.0);
    r.notes.push_back("note");
    EXPECT_FALSE(r.passed());
    EXPECT_TRUE(r.statistics[0].pass);
    EXPECT_FALSE(r.statistics[1].pass);
    const ExperimentReport back = ExperimentReport::from_json(nlohmann::json::parse(r.to_json().dump()));
    EXPECT_EQ(back.experiment, "demo");
    EXPECT_EQ(back.seed, 99u);
    ASSERT_EQ(back.statistics.size(), 3u);
    EXPECT_EQ(back.statistics[1].se, 1.0);
    EXPECT_TRUE(std::isnan(back.statistics[2].se));
    EXPECT_EQ(back.passed(), r.passed());

    SuiteRun run{"laws", "quick", 4, {r}, 1.5, 0};
    const SuiteRun rb = SuiteRun::from_json(nlohmann::json::parse(run.to_json().dump()));
    EXPECT_EQ(rb.suite, "laws");
    EXPECT_EQ(rb.reports.size(), 1u);
    EXPECT_FALSE(rb.passed());
}

TEST(Suites, NamesAndValidation) {
    EXPECT_EQ(suite_names().size(), 6u);
    EXPECT_EQ(budget_from_name(budget_name(Budget::quick)), Budget::quick);
    SuiteOptions o;
    o.max_replicates = -1;
    EXPECT_THROW(run_suite("core", o), domain_error);
    o.max_replicates = 0;
    EXPECT_THROW(run_suite("nonexistent", o), domain_error);
}

TEST(Suites, CoreQuickPasses) {
    SuiteOptions o;
    o.budget = Budget::quick;
    const SuiteRun r = run_suite("core", o);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.errors, 0);
}
