#include "oracles.hh"

#include <homorder/catalog.hh>
#include <homorder/checks.hh>
#include <homorder/hom_engine.hh>

#include <doctest.h>

#include <set>

using namespace homorder;

namespace
{
    auto all_path_trees(std::size_t max_arcs) -> std::vector<OrientedTree>
    {
        std::vector<OrientedTree> out;
        for (std::size_t n = 0; n <= max_arcs; ++n)
            for (auto & s : oracle::strings(n))
                out.push_back(path_to_tree(OrientedPath::from_string(s)));
        return out;
    }

    auto random_pairs(std::size_t count, std::size_t max_vertices, std::uint64_t seed) -> std::vector<std::pair<OrientedTree, OrientedTree>>
    {
        std::mt19937_64 rng{seed};
        std::vector<std::pair<OrientedTree, OrientedTree>> out;
        for (std::size_t k = 0; k < count; ++k) {
            auto a = random_tree(1 + rng() % max_vertices, rng);
            auto b = random_tree(1 + rng() % max_vertices, rng);
            out.emplace_back(a, b);
        }
        return out;
    }
}

TEST_CASE("decisions agree with the naive oracle on paths")
{
    auto paths = all_path_trees(4);
    for (auto & a : paths)
        for (auto & b : paths) {
            bool expected = oracle::hom_exists(a, b);
            auto dp = find_hom_dp(a, b);
            CHECK(dp.has_value() == expected);
            if (dp)
                CHECK(oracle::arc_preserving(a, b, dp->map));
            CHECK(find_hom_brute(a, b).has_value() == expected);
        }
}

TEST_CASE("decisions agree with the naive oracle on random trees")
{
    for (auto & [a, b] : random_pairs(300, 7, 3)) {
        bool expected = oracle::hom_exists(a, b);
        auto dp = find_hom_dp(a, b);
        CHECK(dp.has_value() == expected);
        if (dp)
            CHECK(oracle::arc_preserving(a, b, dp->map));
    }
}

TEST_CASE("counts and enumerations match the naive oracle")
{
    for (auto & [a, b] : random_pairs(150, 6, 17)) {
        std::set<std::vector<Vertex>> expected;
        oracle::each_hom(a, b, [&](const std::vector<Vertex> & m) { expected.insert(m); return true; });
        CHECK(count_homs(a, b) == expected.size());

        std::set<std::vector<Vertex>> dp, brute;
        for (auto & f : enumerate_homs(a, b).homomorphisms)
            dp.insert(f.map);
        for (auto & f : enumerate_homs_brute(a, b).homomorphisms)
            brute.insert(f.map);
        CHECK(dp == expected);
        CHECK(brute == expected);
    }
}

TEST_CASE("brute enumeration is lexicographic and respects its cap")
{
    auto a = path_to_tree(OrientedPath::from_string("FB"));
    auto b = path_to_tree(OrientedPath::from_string("FBF"));
    auto all = enumerate_homs_brute(a, b);
    CHECK(! all.truncated);
    for (std::size_t i = 1; i < all.homomorphisms.size(); ++i)
        CHECK(all.homomorphisms[i - 1].map < all.homomorphisms[i].map);
    auto capped = enumerate_homs_brute(a, b, 2);
    CHECK(capped.truncated);
    CHECK(capped.homomorphisms.size() == 2);
}

TEST_CASE("L1 maps to L0 but not back")
{
    auto l0 = path_to_tree(l_path(0)), l1 = path_to_tree(l_path(1));
    CHECK(find_hom_dp(l1, l0));
    CHECK(! find_hom_dp(l0, l1));
}

TEST_CASE("restricted search honours forced images")
{
    auto p = path_to_tree(OrientedPath::from_string("FB"));
    auto q = path_to_tree(OrientedPath::from_string("FBFB"));
    auto r = unrestricted(p);
    r[0] = single_vertex(q.vertex_count(), 2);
    auto f = find_hom_dp(p, q, r);
    REQUIRE(f);
    CHECK(f->map[0] == 2);
    r[2] = single_vertex(q.vertex_count(), 1);
    CHECK(! find_hom_dp(p, q, r));
}

TEST_CASE("surjective search agrees with filtering the enumeration")
{
    for (auto & [a, b] : random_pairs(200, 6, 23)) {
        bool expected = false;
        oracle::each_hom(a, b, [&](const std::vector<Vertex> & m) {
            std::set<Vertex> hit(m.begin(), m.end());
            expected = hit.size() == b.vertex_count();
            return ! expected;
        });
        auto f = exists_surjective_hom(a, b);
        CHECK(f.has_value() == expected);
        if (f)
            CHECK(is_surjective(*f));
    }
}

TEST_CASE("rigidity agrees with counting automorphisms")
{
    std::mt19937_64 rng{29};
    for (int k = 0; k < 200; ++k) {
        auto t = random_tree(1 + rng() % 7, rng);
        CHECK(is_rigid(t) == (oracle::automorphisms(t) == 1));
    }
    CHECK(! is_rigid(path_to_tree(OrientedPath::from_string("FB"))));
    CHECK(is_rigid(path_to_tree(l_path(2))));
}

TEST_CASE("validation and composition")
{
    auto p = path_to_tree(OrientedPath::from_string("FF"));
    auto q = path_to_tree(OrientedPath::from_string("FFF"));
    Homomorphism good{p, q, {1, 2, 3}}, bad{p, q, {0, 2, 3}};
    CHECK(is_homomorphism(good));
    CHECK(! is_homomorphism(bad));
    CHECK_NOTHROW(validate(good));
    CHECK_THROWS(validate(bad));
    CHECK_THROWS(validate(Homomorphism{p, q, {0, 1}}));
    Homomorphism id{q, q, {0, 1, 2, 3}};
    CHECK(compose(good, id).map == good.map);
}

TEST_CASE("distances never grow and level differences are kept")
{
    for (auto & [a, b] : random_pairs(100, 7, 31))
        for (auto & f : enumerate_homs(a, b, 20).homomorphisms) {
            CHECK(check_distance_property(f));
            CHECK(preserves_level_differences(f));
            auto la = oracle::levels(a), lb = oracle::levels(b);
            for (Vertex u = 0; u < a.vertex_count(); ++u) {
                auto da = oracle::distances_from(a, u), db = oracle::distances_from(b, f.map[u]);
                for (Vertex v = 0; v < a.vertex_count(); ++v) {
                    CHECK(db[f.map[v]] <= da[v]);
                    CHECK(lb[f.map[u]] - lb[f.map[v]] == la[u] - la[v]);
                }
            }
        }
}

TEST_CASE("distance matrix is the undirected one")
{
    auto t = path_to_tree(OrientedPath::from_string("FBB"));
    auto d = all_pairs_distances(t);
    CHECK(d[0][3] == 3);
    CHECK(d[2][1] == 1);
}

TEST_CASE("the brute oracle reports an exhausted budget")
{
    auto a = path_to_tree(OrientedPath::from_string("FBFBFBFBFBFB"));
    auto b = path_to_tree(OrientedPath::from_string("FFFFFFFF"));
    CHECK_THROWS_AS(find_hom_brute(a, b, 5), BudgetExceeded);
}

TEST_CASE("queries")
{
    HomQuery q{path_to_tree(OrientedPath::from_string("F")), path_to_tree(OrientedPath::from_string("FF"))};
    q.mode = QueryMode::Count;
    CHECK(run_query(q).count == 2);
    q.mode = QueryMode::Exists;
    q.forced = {{0, 1}};
    auto r = run_query(q);
    REQUIRE(r.witness);
    CHECK(r.witness->map == std::vector<Vertex>{1, 2});
    q.mode = QueryMode::Enumerate;
    q.forced.clear();
    CHECK(run_query(q).enumeration.homomorphisms.size() == 2);
}
