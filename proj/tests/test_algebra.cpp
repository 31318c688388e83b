#include "oracles.hpp"
#include "samples.hpp"

#include "qtop/enumerate.hpp"

#include <doctest.h>

using namespace qtop;

TEST_SUITE("algebra")
{
TEST_CASE("make_algebra rejects malformed input")
{
    const Signature sig({{"f", 2}, {"c", 0}});
    CHECK_THROWS_AS(make_algebra(sig, 0, {{"f", {}}, {"c", {0}}}), ValidationError);
    CHECK_THROWS_AS(make_algebra(sig, 2, {{"f", {0, 1, 1}}, {"c", {0}}}), ValidationError);   // not total
    CHECK_THROWS_AS(make_algebra(sig, 2, {{"f", {0, 1, 1, 2}}, {"c", {0}}}), ValidationError); // out of range
    CHECK_THROWS_AS(make_algebra(sig, 2, {{"f", {0, 1, 1, 0}}}), ValidationError);             // missing table
    CHECK_THROWS_AS(make_algebra(sig, 2, {{"f", {0, 1, 1, 0}}, {"c", {0}}, {"g", {1}}}), ValidationError);
    CHECK_THROWS_AS(make_algebra(sig, 2, {{"f", {0, 1, 1, 0}}, {"c", {0}}}, {"a", "a"}), ValidationError);
    CHECK_THROWS_AS(make_algebra(sig, 2, {{"f", {0, 1, 1, 0}}, {"c", {0}}}, {"a", "b c"}), ValidationError);
    CHECK_THROWS_AS(Signature({{"f", 1}, {"f", 2}}), ValidationError);
    CHECK_THROWS_AS(Signature({{"2x", 1}}), ValidationError);
}

TEST_CASE("apply_op reads the row-major table")
{
    const auto q = samples::chain3();
    const Index args[] = {2, 1};
    CHECK(apply_op(*q, "min", args) == 1);
    CHECK(apply_op(*q, "max", args) == 2);
    CHECK_THROWS_AS(apply_op(*q, "nope", args), ValidationError);
    CHECK_THROWS_AS(apply_op(*q, "min", std::span<const Index>(args, 1)), ValidationError);
}

TEST_CASE("closure in the power of BOOL2")
{
    const auto q = samples::bool2();
    const auto p = power_algebra(*q, 2);
    REQUIRE(p.size() == 4);
    const auto s = generate_subalgebra(p, Subset(4, {*p.find_label("01")}));
    std::vector<std::string> got;
    for (Index x : s.members())
        got.push_back(p.label(x));
    std::sort(got.begin(), got.end());
    CHECK(got == std::vector<std::string>{"00", "01", "11"});

    const auto all = generate_subalgebra(p, Subset(4, {*p.find_label("01"), *p.find_label("10")}));
    CHECK(all.size() == 4);
}

TEST_CASE("closure of the empty set")
{
    const auto q = samples::chain3();
    CHECK(generate_subalgebra(*q, Subset(3, {})) == Subset(3, {0, 2}));
    CHECK_THROWS_AS(generate_subalgebra(*samples::bare(3), Subset(3, {})), EmptyGeneratorsNoConstants);
}

TEST_CASE("subalgebras of a bare set are all non-empty subsets")
{
    CHECK(all_subalgebras(*samples::bare(2)).size() == 3);
    CHECK(all_subalgebras(*samples::bare(4)).size() == 15);
}

TEST_CASE("power algebra")
{
    const auto q = samples::bool2();
    const auto p = power_algebra(*q, 2);
    const Index args[] = {*p.find_label("01"), *p.find_label("11")};
    CHECK(p.label(apply_op(p, "meet", args)) == "01");

    const auto p0 = power_algebra(*q, 0);
    CHECK(p0.size() == 1);
    CHECK(p0.label(0) == "()");
    for (std::size_t op = 0; op < p0.signature().size(); ++op)
        CHECK(p0.table(op)[0] == 0);

    const auto c = samples::chain3();
    const auto c2 = power_algebra(*c, 2);
    REQUIRE(c2.size() == 9);
    const Index cargs[] = {*c2.find_label("02"), *c2.find_label("10")};
    CHECK(c2.label(apply_op(c2, "max", cargs)) == "12");

    // Every entry agrees with the base operation coordinate by coordinate.
    for (std::size_t op = 0; op < c2.signature().size(); ++op) {
        const std::size_t k = c2.signature()[op].arity;
        for (Index code = 0; code < c2.table(op).size(); ++code) {
            std::vector<Index> args(k);
            decode_tuple(code, 9, args);
            const FnTable out = PowerView(*c, 2, 4096).decode(c2.table(op)[code]);
            for (Index x = 0; x < 2; ++x) {
                std::vector<Index> at(k);
                for (std::size_t i = 0; i < k; ++i)
                    at[i] = PowerView(*c, 2, 4096).decode(args[i])(x);
                CHECK(out(x) == c->apply(op, at));
            }
        }
    }

    EnumerationBudget cap;
    cap.max_carrier = 8;
    CHECK(power_algebra(*q, 3, cap).size() == 8);
    CHECK_THROWS_AS(power_algebra(*q, 4, cap), BudgetExceeded);
    CHECK_THROWS_AS(power_algebra(*q, 13), BudgetExceeded);
}

TEST_CASE("power carriers are duplicate-free and in value order")
{
    const auto c = samples::chain3();
    const PowerView view(*c, 3, 4096);
    for (Index i = 0; i < view.size(); ++i) {
        CHECK(view.encode(view.decode(i)) == i);
        if (i > 0)
            CHECK(view.decode(i - 1) < view.decode(i));
    }
}

TEST_CASE("product algebra")
{
    const auto q = samples::bool2();
    const FiniteAlgebra one[] = {*q};
    const auto p1 = product_algebra(one);
    CHECK(p1.size() == 2);
    CHECK(p1.table(0).size() == 4);
    CHECK(std::equal(p1.table(0).begin(), p1.table(0).end(), q->table(0).begin()));

    const FiniteAlgebra two[] = {*q, *q};
    const auto p2 = product_algebra(two);
    const Index args[] = {*p2.find_label("10"), *p2.find_label("11")};
    CHECK(p2.label(apply_op(p2, "meet", args)) == "10");

    // BOOL2 x (3-chain with the same symbols), checked per component.
    const auto c = samples::lattice(3, "meet", "join");
    const FiniteAlgebra mixed[] = {*q, *c};
    const auto pm = product_algebra(mixed);
    REQUIRE(pm.size() == 6);
    for (std::size_t op = 0; op < 2; ++op)
        for (Index a = 0; a < 6; ++a)
            for (Index b = 0; b < 6; ++b) {
                const Index ab[] = {a, b};
                const Index r = pm.apply(op, ab);
                const Index left[] = {a / 3, b / 3}, right[] = {a % 3, b % 3};
                CHECK(r / 3 == q->apply(op, left));
                CHECK(r % 3 == c->apply(op, right));
            }

    const FiniteAlgebra mismatch[] = {*q, *samples::chain3()};
    CHECK_THROWS_AS(product_algebra(mismatch), ValidationError);
    CHECK_THROWS_AS(product_algebra(std::span<const FiniteAlgebra>{}), ValidationError);
}

TEST_CASE("homomorphisms")
{
    const auto q = samples::bool2();
    const auto c = samples::lattice(3, "meet", "join");
    // 0 -> 0, 1 -> 2 preserves min, max and both constants.
    CHECK(is_homomorphism(FnTable(2, 3, {0, 2}), *q, *c));
    const auto bad = find_homomorphism_violation(FnTable(2, 3, {0, 1}), *q, *c);
    REQUIRE(bad);
    CHECK(q->signature()[bad->op].symbol == "top");

    // Projections out of a power are homomorphisms.
    for (const auto& a : {samples::bool2(), samples::chain3(), samples::bare(3)})
        for (Index n = 1; n <= 3; ++n) {
            const auto p = power_algebra(*a, n);
            const PowerView view(*a, n, 4096);
            for (Index i = 0; i < n; ++i) {
                std::vector<Index> v(p.size());
                for (Index code = 0; code < p.size(); ++code)
                    v[code] = view.decode(code)(i);
                CHECK(is_homomorphism(FnTable(p.size(), a->size(), v), p, *a));
            }
        }
}

TEST_CASE("homomorphisms compose on random triples")
{
    std::mt19937_64 rng(2024);
    const auto q = samples::bool2();
    int composed = 0;
    for (int round = 0; round < 200; ++round) {
        const auto a = power_algebra(*q, 1 + rng() % 2);
        const auto b = power_algebra(*q, 1 + rng() % 2);
        const auto c = power_algebra(*q, 1 + rng() % 2);
        std::vector<FnTable> ab, bc;
        for (const auto& f : oracle::functions(a.size(), b.size()))
            if (is_homomorphism(f, a, b))
                ab.push_back(f);
        for (const auto& g : oracle::functions(b.size(), c.size()))
            if (is_homomorphism(g, b, c))
                bc.push_back(g);
        const auto& f = ab[rng() % ab.size()];
        const auto& g = bc[rng() % bc.size()];
        CHECK(is_homomorphism(compose(g, f), a, c));
        ++composed;
    }
    CHECK(composed == 200);
}

TEST_CASE("closure laws against the intersection oracle")
{
    std::mt19937_64 rng(7);
    for (int round = 0; round < 100; ++round) {
        const auto a = oracle::random_algebra(rng);
        const Index n = a.size();
        const auto subs = all_subalgebras(a);
        const auto oracle_subs = oracle::subalgebras(a);
        std::vector<oracle::Mask> masks;
        for (const auto& sub : subs)
            masks.push_back(oracle::mask_of(sub.members()));
        std::sort(masks.begin(), masks.end());
        CHECK(masks == oracle_subs);
        for (oracle::Mask s = 0; s < (oracle::Mask{1} << n); ++s) {
            const Subset set(n, oracle::members(s));
            if (s == 0 && !a.signature().has_constants()) {
                CHECK_THROWS_AS(generate_subalgebra(a, set), EmptyGeneratorsNoConstants);
                continue;
            }
            const Subset g = generate_subalgebra(a, set);
            CHECK(oracle::mask_of(g.members()) == oracle::generated(a, s));
            CHECK(is_closed_subset(a, g));
        }
    }
}

TEST_CASE("semi-naive closure agrees with the oracle on larger carriers")
{
    std::mt19937_64 rng(99);
    for (int round = 0; round < 10; ++round) {
        const auto a = oracle::random_algebra(rng, 8);
        for (Index x = 0; x < a.size(); ++x) {
            const Index one[] = {x};
            CHECK(oracle::mask_of(generate_subalgebra(a, Subset(a.size(), {x})).members()) ==
                  oracle::generated(a, oracle::mask_of(one)));
        }
    }
}

TEST_CASE("walk and scan find the same subalgebras")
{
    std::mt19937_64 rng(11);
    for (int round = 0; round < 100; ++round) {
        const auto a = oracle::random_algebra(rng, 6);
        CHECK(walk_subalgebras(a, {}) == scan_subalgebras(a, {}));
    }
}
}
