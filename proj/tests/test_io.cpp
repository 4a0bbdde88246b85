#include <gtest/gtest.h>

#include <atomic>
#include <vector>

#include "riskaverse/errors.hpp"
#include "riskaverse/io/csv.hpp"
#include "riskaverse/parallel.hpp"
#include "riskaverse/risk/risk_measure.hpp"

using namespace riskaverse;

TEST(Io, DoubleFormatting) {
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(1.0 / 3.0), "0.333333333333");  // 12 significant digits
    EXPECT_EQ(format_double(1.2345678901234e-7), "1.23456789012e-07");
    EXPECT_EQ(format_double(-3.0), "-3");
    EXPECT_EQ(format_double(0.0), "0");
}

TEST(Io, CsvTable) {
    CsvTable table({"a", "b"});
    table.add_row({1.0, 0.25});
    table.add_row(std::vector<std::string>{"x", ""});
    EXPECT_EQ(table.str(), "a,b\n1,0.25\nx,\n");
    EXPECT_THROW(table.add_row(std::vector<double>{1.0}), ValidationError);
}

TEST(Io, CsvOutputIsStable) {
    const auto build = [] {
        CsvTable table({"n", "value"});
        for (int i = 0; i < 50; ++i) table.add_row({double(i), 1.0 / (i + 3.0)});
        return table.str();
    };
    EXPECT_EQ(build(), build());
}

TEST(Io, ParallelForCoversAllIndicesInOrderedStorage) {
    std::vector<double> out(257, -1.0);
    std::atomic<int> calls{0};
    parallel_for(out.size(), 5, [&](std::size_t i) {
        out[i] = 2.0 * static_cast<double>(i);
        ++calls;
    });
    EXPECT_EQ(calls.load(), 257);
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], 2.0 * i);
    // Inline path.
    parallel_for(3, 1, [&](std::size_t i) { out[i] = -7.0 * static_cast<double>(i); });
    EXPECT_EQ(out[2], -14.0);
}

TEST(Io, AxiomSummaryRendersEveryLine) {
    const AxiomReport report = axiom_report(RiskSpec::semi_deviation(1.0, 0.4), 50, 3);
    const std::string text = report.summary("sd");
    for (const char* needle : {"monotonicity", "translation", "subadditivity",
                               "positive homogeneity", "law invariance", "pass"}) {
        EXPECT_NE(text.find(needle), std::string::npos) << text;
    }
}
