#include "oracles.hpp"
#include "samples.hpp"

#include "qtop/enumerate.hpp"

#include <doctest.h>

using namespace qtop;

namespace {

std::vector<std::vector<FnTable>> opens_of(const std::vector<QTopology>& ts)
{
    std::vector<std::vector<FnTable>> out;
    for (const auto& t : ts)
        out.emplace_back(t.opens().begin(), t.opens().end());
    return out;
}

} // namespace

TEST_SUITE("enumerate")
{
TEST_CASE("function streams")
{
    const auto fs = all_functions(2, 3);
    CHECK(fs.size() == 9);
    std::vector<FnTable> got(fs.begin(), fs.end());
    CHECK(got == oracle::functions(2, 3));
    CHECK(all_functions(0, 2).size() == 1);
    CHECK(all_functions(2, 0).size() == 0);
    CHECK_THROWS_AS(all_functions(21, 2), BudgetExceeded);
}

TEST_CASE("BOOL2 topology counts match the subset-scan oracle")
{
    const auto q = samples::bool2();
    const std::size_t expected[] = {1, 1, 4, 29};
    for (Index n = 0; n <= 3; ++n) {
        const auto oracle_tops = oracle::topologies(*q, n);
        CHECK(oracle_tops.size() == expected[n]);
        for (auto s : {TopologyStrategy::scan, TopologyStrategy::walk, TopologyStrategy::both,
                       TopologyStrategy::automatic})
            CHECK(opens_of(all_q_topologies(q, n, {}, s)) == oracle_tops);
    }
}

TEST_CASE("CHAIN3 and bare-set topologies match the oracle")
{
    const auto c = samples::chain3();
    for (Index n = 0; n <= 2; ++n)
        CHECK(opens_of(all_q_topologies(c, n, {}, TopologyStrategy::both)) == oracle::topologies(*c, n));
    const auto b = samples::bare(2);
    for (Index n = 0; n <= 2; ++n)
        CHECK(opens_of(all_q_topologies(b, n, {}, TopologyStrategy::both)) == oracle::topologies(*b, n));
}

TEST_CASE("every subalgebra is the closure of one of its subsets")
{
    std::mt19937_64 rng(5);
    for (int round = 0; round < 50; ++round) {
        const auto a = oracle::random_algebra(rng);
        std::set<Subset> images;
        for (oracle::Mask m = 1; m < (oracle::Mask{1} << a.size()); ++m)
            images.insert(generate_subalgebra(a, Subset(a.size(), oracle::members(m))));
        CHECK(std::vector<Subset>(images.begin(), images.end()) == all_subalgebras(a));
    }
}

TEST_CASE("budgets are enforced, never truncated")
{
    const auto q = samples::bool2();
    EnumerationBudget tight;
    tight.max_subset_space = 16;
    CHECK_THROWS_AS(all_q_topologies(q, 3, tight, TopologyStrategy::scan), BudgetExceeded);
    CHECK_THROWS_AS(all_q_topologies(q, 3, tight, TopologyStrategy::walk), BudgetExceeded);
    CHECK_THROWS_AS(all_q_topologies(q, 3, tight, TopologyStrategy::automatic), BudgetExceeded);
    tight.max_subset_space = 29;
    CHECK(all_q_topologies(q, 3, tight, TopologyStrategy::walk).size() == 29);

    EnumerationBudget small_carrier;
    small_carrier.max_carrier = 4;
    CHECK_THROWS_AS(all_q_topologies(q, 3, small_carrier), BudgetExceeded);
}

TEST_CASE("automatic strategy falls back to the walk above the scan budget")
{
    // 2^9 subsets of CHAIN3^2 exceed this budget; the 49 topologies do not.
    const auto c = samples::chain3();
    EnumerationBudget budget;
    budget.max_subset_space = 256;
    const auto walked = all_q_topologies(c, 2, budget, TopologyStrategy::automatic);
    CHECK(walked.size() == 49);
    CHECK(walked == all_q_topologies(c, 2, {}, TopologyStrategy::scan));
    CHECK_THROWS_AS(all_q_topologies(c, 2, budget, TopologyStrategy::scan), BudgetExceeded);
}

TEST_CASE("enumeration is stable across runs")
{
    const auto q = samples::bool2();
    CHECK(all_q_topologies(q, 3) == all_q_topologies(q, 3));
}
}
