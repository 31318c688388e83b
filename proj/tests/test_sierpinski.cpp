#include "oracles.hpp"
#include "samples.hpp"

#include "qtop/enumerate.hpp"
#include "qtop/sierpinski.hpp"

#include <doctest.h>

using namespace qtop;
using samples::fn;

TEST_SUITE("sierpinski")
{
TEST_CASE("Sierpinski spaces")
{
    CHECK(open_strings(sierpinski_space(samples::bool2()).topology()) == std::vector<std::string>{"00", "01", "11"});
    // On a chain, ⟨id⟩ adds only the two constants: min and max of id with itself give id back.
    const auto s3 = sierpinski_space(samples::chain3());
    CHECK(open_strings(s3.topology()) == std::vector<std::string>{"000", "012", "222"});
    CHECK(s3 == sierpinski_space(samples::chain3()));
    // Without operations the identity is the only open.
    CHECK(open_strings(sierpinski_space(samples::bare(3)).topology()) == std::vector<std::string>{"012"});
}

TEST_CASE("membership is continuity into the Sierpinski space")
{
    for (const auto& q : {samples::bool2(), samples::chain3()})
        for (Index n = 0; n <= 2; ++n)
            for (const auto& t : all_q_topologies(q, n)) {
                const auto r = check_membership_continuity(QSpace(t));
                CHECK(r.passed());
                CHECK(r.stat("members") == static_cast<std::int64_t>(t.size()));
            }
    const auto d = QSpace(discrete_topology(samples::chain3(), 2));
    CHECK(check_membership_continuity(d).passed());
}

TEST_CASE("membership check catches a corrupted space")
{
    const auto q = samples::bool2();
    const QSpace bad(QTopology::unchecked(q, 2, {fn(2, "00"), fn(2, "01"), fn(2, "10")}));
    const auto r = check_membership_continuity(bad);
    REQUIRE(r.failed());
    const auto& w = *r.witness();
    // Replay: the reported map is open and discontinuous, or continuous and not open.
    const FnTable p = fn(2, w["map"].get<std::string>());
    const bool open = bad.topology().contains(p);
    CHECK(open != is_continuous(p, bad, sierpinski_space(q)));
    CHECK(w["direction"] == (open ? "open but not continuous" : "continuous but not open"));
    CHECK(w["map"] == "00"); // 11 ∘ 00 = 11 is not open
    CHECK(w["direction"] == "open but not continuous");
}

TEST_CASE("the Sierpinski space induces every topology")
{
    const auto q = samples::bool2();
    for (Index n = 0; n <= 2; ++n)
        for (const auto& t : all_q_topologies(q, n)) {
            const auto r = check_sierpinski_smallest(QSpace(t));
            CHECK(r.passed());
            CHECK(r.stat("lift_equal") == 1);
            CHECK(r.stat("minimal") == 1);
        }
    // Indiscrete space on three points.
    const auto indiscrete = generate_topology(q, 3, std::span<const FnTable>{});
    const auto r = check_sierpinski_smallest(QSpace(indiscrete));
    CHECK(r.passed());
    CHECK(r.stat("topologies_examined") == 29);
    CHECK(check_sierpinski_smallest_all(samples::chain3(), 1).passed());
}

TEST_CASE("sweeps sum their stats")
{
    const auto r = check_membership_continuity_all(samples::bool2(), 2);
    CHECK(r.passed());
    CHECK(r.stat("spaces") == 1 + 1 + 4);
    // Oracle: sum over spaces of |opens|.
    std::int64_t members = 0;
    for (Index n = 0; n <= 2; ++n)
        for (const auto& t : oracle::topologies(*samples::bool2(), n))
            members += static_cast<std::int64_t>(t.size());
    CHECK(r.stat("members") == members);
}
}
