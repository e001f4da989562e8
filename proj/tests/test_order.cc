#include "oracles.hh"

#include <homorder/catalog.hh>
#include <homorder/checks.hh>
#include <homorder/order.hh>

#include <doctest.h>

using namespace homorder;

namespace
{
    auto tree(const char * s) -> OrientedTree
    {
        return path_to_tree(OrientedPath::from_string(s));
    }
}

TEST_CASE("order relations")
{
    CHECK(leq(tree("F"), tree("FF")));
    CHECK(strictly_less(tree("FF"), tree("FFF")));
    CHECK(hom_equivalent(tree("FBFB"), tree("F")));
    CHECK(! strictly_less(tree("FBF"), tree("F")));
    for (std::size_t n = 0; n <= 4; ++n)
        for (std::size_t m = 0; m <= 4; ++m)
            for (auto & a : oracle::strings(n))
                for (auto & b : oracle::strings(m)) {
                    auto ta = tree(a.c_str()), tb = tree(b.c_str());
                    bool ab = oracle::hom_exists(ta, tb), ba = oracle::hom_exists(tb, ta);
                    CHECK(incomparable(ta, tb) == (! ab && ! ba));
                    CHECK(strictly_less(ta, tb) == (ab && ! ba));
                }
}

TEST_CASE("cores of paths match the shortest segment they map into")
{
    for (std::size_t n = 0; n <= 7; ++n)
        for (auto & s : oracle::strings(n)) {
            auto p = OrientedPath::from_string(s);
            auto expected = oracle::path_core(p);
            auto r = core(path_to_tree(p));
            auto got = tree_is_path(r.core);
            REQUIRE(got);
            CHECK(got->arc_count() == expected.arc_count());
            CHECK(isomorphic(r.core, path_to_tree(expected)));
            CHECK(is_homomorphism(r.retraction));
            for (Vertex c = 0; c < r.kept.size(); ++c)
                CHECK(r.retraction.map[r.kept[c]] == c);
            CHECK(is_core(path_to_tree(p)) == oracle::path_is_core(p));
        }
}

TEST_CASE("is_core agrees with the endomorphism audit on random trees")
{
    std::mt19937_64 rng{41};
    for (int k = 0; k < 150; ++k) {
        auto t = random_tree(1 + rng() % 8, rng);
        CHECK(is_core(t) == admits_no_proper_endomorphism(t));
        auto c = core(t).core;
        CHECK(is_core(c));
        CHECK(hom_equivalent(c, t));
    }
}

TEST_CASE("core of a star")
{
    OrientedTree star{5, {{0, 1}, {0, 2}, {0, 3}, {4, 0}}};
    auto r = core(star);
    CHECK(r.core.vertex_count() == 3);
    CHECK(core_is_path(star));
    CHECK_THROWS_AS(core(star, 3), BudgetExceeded);
}

TEST_CASE("interval classification")
{
    CHECK(classify_interval(tree(""), tree("F")).classification == IntervalClass::Gap);
    CHECK(classify_interval(tree("F"), tree("FF")).classification == IntervalClass::Gap);
    CHECK(classify_interval(tree("FF"), path_to_tree(l_path(3))).classification == IntervalClass::Chain);
    CHECK(classify_interval(path_to_tree(l_path(1)), path_to_tree(l_path(1))).classification == IntervalClass::NotStrictlyOrdered);
    CHECK(classify_interval(tree("FF"), tree("F")).classification == IntervalClass::NotStrictlyOrdered);
    auto r = classify_interval(tree("FFF"), tree("FFFF"));
    CHECK(r.classification == IntervalClass::Universal);
    CHECK(r.upper_height == 4);
    // cores decide, not the structures as given
    CHECK(classify_interval(tree("FB"), tree("FBFFFFB")).classification == IntervalClass::Universal);
    auto chain = classify_interval(tree("FF"), tree("FFBFBFF"));
    CHECK(chain.lower_position == "P2");
    CHECK(chain.upper_position == "L2");
}

TEST_CASE("between search")
{
    BetweenOptions strict;
    strict.trust_certified_gaps = false;
    strict.max_arcs = 8;
    CHECK(find_between(tree(""), tree("F"), strict).outcome == BetweenOutcome::NoneWithinBound);
    CHECK(find_between(tree("F"), tree("FF"), strict).outcome == BetweenOutcome::NoneWithinBound);
    CHECK(find_between(tree(""), tree("F")).outcome == BetweenOutcome::CertifiedGap);

    auto r = find_between(tree("FF"), tree("FFF"), strict);
    REQUIRE(r.outcome == BetweenOutcome::Found);
    CHECK(oracle::hom_exists(tree("FF"), *r.witness));
    CHECK(! oracle::hom_exists(*r.witness, tree("FF")));
    CHECK(oracle::hom_exists(*r.witness, tree("FFF")));
    CHECK(! oracle::hom_exists(tree("FFF"), *r.witness));

    CHECK_THROWS_AS(find_between(tree("FF"), tree("F")), PreconditionError);
}

TEST_CASE("path enumeration")
{
    std::size_t count = 0;
    for_each_path(6, 100, [&](const OrientedPath &) { ++count; return true; });
    CHECK(count == 64);
    std::size_t low = 0;
    for_each_path(6, 1, [&](const OrientedPath & p) { ++low; CHECK(height(p) <= 1); return true; });
    CHECK(low == 2);
}

TEST_CASE("oriented trees up to isomorphism")
{
    // 1, 1, 3, 8, 27, 91 oriented trees on 1..6 vertices
    std::vector<std::size_t> expected{1, 1, 3, 8, 27, 91};
    for (std::size_t n = 1; n <= 6; ++n)
        CHECK(all_trees(n).size() == expected[n - 1]);
}
