#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "support.hpp"

using namespace qcluster;

TEST(Explore, DepthZeroIsTheInitialSeed)
{
    const auto seed = qtest::load_seed("g2.json");
    const auto report = bfs_explore(seed, 0);
    ASSERT_EQ(report.distinct_seeds(), 1U);
    EXPECT_TRUE(seed_equal(report.seeds.front().seed, seed));
    EXPECT_EQ(report.mutations, 0U);
    EXPECT_FALSE(report.cycle);
}

TEST(Explore, G2HasEightSeeds)
{
    const auto report = bfs_explore(qtest::load_seed("g2.json"), 8);
    EXPECT_EQ(report.distinct_seeds(), 8U);
    ASSERT_TRUE(report.cycle);
    EXPECT_EQ(word_to_string(*report.cycle), "1-2-1-2-1-2-1-2");
    EXPECT_TRUE(report.ok());
}

TEST(Explore, A2HasTenSeeds)
{
    const auto seed = qtest::load_seed("a2.json");
    const auto report = bfs_explore(seed, 10);
    EXPECT_EQ(report.distinct_seeds(), 10U);
    ASSERT_TRUE(report.cycle);
    EXPECT_EQ(report.cycle->size(), 10U);
    EXPECT_TRUE(seed_equal(apply_word(seed, *report.cycle), seed));
}

TEST(Explore, A3PrincipalHasFourteenClusters)
{
    const auto report = bfs_explore(qtest::a3_principal(), 9);
    std::set<std::vector<std::string>> clusters;
    for (const auto& node : report.seeds) {
        std::vector<std::string> cluster;
        for (std::size_t k = 0; k < node.seed.n(); ++k)
            cluster.push_back(to_string(node.seed.var(k)));
        std::sort(cluster.begin(), cluster.end());
        clusters.insert(cluster);
    }
    EXPECT_EQ(clusters.size(), 14U);
    EXPECT_TRUE(report.ok());
}

TEST(Explore, ShallowDepthFindsNoCycle)
{
    const auto report = bfs_explore(qtest::load_seed("g2.json"), 3);
    EXPECT_FALSE(report.cycle);
    EXPECT_EQ(report.distinct_seeds(), 7U);
}

TEST(Explore, InvariantChecksAreClean)
{
    for (const char* name : {"g2.json", "a2.json", "b2_frozen.json"}) {
        ExplorationOptions options;
        options.depth = 6;
        options.check_invariants = true;
        options.max_power = 2;
        options.check_positivity = true;
        const auto report = bfs_explore(qtest::load_seed(name), options);
        EXPECT_TRUE(report.ok()) << name << ": " << (report.findings.empty() ? "" : report.findings[0].detail);
        EXPECT_EQ(report.laurent_violations, 0U);
    }
}

TEST(Explore, PositivityFindingsForNegativeCoefficients)
{
    const auto seed = seed_from_json(nlohmann::json::parse(
        R"({"m":2,"n":2,"lambda":[[0,1],[-1,0]],"btilde":[[0,1],[-2,0]],"d":[2,1],"h":{"1":["1","-1","1"]}})"));
    ExplorationOptions options;
    options.depth = 2;
    options.check_positivity = true;
    const auto report = bfs_explore(seed, options);
    ASSERT_FALSE(report.findings.empty());
    EXPECT_EQ(report.findings.front().kind, "positivity");
}

TEST(Explore, SequencePeriods)
{
    EXPECT_EQ(sequence_period(alternating_sequence(qtest::load_seed("a2.json"), 12)), 5U);
    EXPECT_EQ(sequence_period(alternating_sequence(qtest::load_seed("g2.json"), 18)), 8U);
    EXPECT_EQ(sequence_period(alternating_sequence(qtest::load_seed("b2_frozen.json"), 14)), 6U);
    EXPECT_FALSE(sequence_period(alternating_sequence(qtest::load_seed("g2.json"), 10)));
    EXPECT_THROW(alternating_sequence(qtest::a3_principal(), 4), error);
}

TEST(Explore, ClosedWalks)
{
    EXPECT_EQ(detail::closed_walk({0, 1, 0, 1}, {1, 0, 1, 0}), (Word{0, 1, 0, 1, 0, 1, 0, 1}));
    EXPECT_EQ(detail::closed_walk({0, 1, 2}, {0, 2, 1}), (Word{1, 2, 1, 2}));
    EXPECT_EQ(word_to_string({}), "()");
    EXPECT_EQ(word_to_string({0, 1, 2}), "1-2-3");
}

TEST(Explore, SeedInvariantsReportBrokenData)
{
    auto seed = qtest::load_seed("g2.json");
    EXPECT_TRUE(check_seed_invariants(seed).empty());
    const auto broken = seed.with_mutation(seed.pair(), 0, TorusElement::basis(seed.initial_context(), {2, 0}));
    const auto findings = check_seed_invariants(broken);
    ASSERT_FALSE(findings.empty());
    bool saw_commutation = false;
    for (const auto& f : findings)
        saw_commutation = saw_commutation || f.kind == "q-commutation";
    EXPECT_TRUE(saw_commutation);
}
