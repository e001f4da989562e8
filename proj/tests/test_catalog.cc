#include "oracles.hh"

#include <homorder/catalog.hh>
#include <homorder/order.hh>

#include <doctest.h>

using namespace homorder;

TEST_CASE("generators")
{
    CHECK(directed_path(3).to_string() == "FFF");
    CHECK(directed_path(0).arc_count() == 0);
    CHECK(l_path(0).to_string() == "FFF");
    CHECK(l_path(1).to_string() == "FFBFF");
    CHECK(l_path(3).to_string() == "FFBFBFBFF");
    for (std::size_t k = 0; k <= 6; ++k)
        CHECK(height(l_path(k)) == 3);
}

TEST_CASE("L paths are ordered inversely to their index")
{
    for (std::size_t k = 0; k <= 6; ++k)
        for (std::size_t m = 0; m <= 6; ++m)
            CHECK(oracle::hom_exists(l_path(k), l_path(m)) == (k >= m));
}

TEST_CASE("the bottom chain is a chain")
{
    auto chain = bottom_chain(6);
    REQUIRE(chain.elements.size() == 10);
    CHECK(chain.names.front() == "P0");
    CHECK(chain.names.back() == "L0");
    for (std::size_t i = 0; i < chain.elements.size(); ++i)
        for (std::size_t j = 0; j < chain.elements.size(); ++j)
            CHECK(oracle::hom_exists(chain.elements[i], chain.elements[j]) == (i <= j));
}

TEST_CASE("catalogue positions")
{
    CHECK(catalog_position(path_to_tree(OrientedPath{})) == "P0");
    CHECK(catalog_position(path_to_tree(l_path(0))) == "P3");
    CHECK(catalog_position(path_to_tree(l_path(2))) == "L2");
    CHECK(catalog_position(path_to_tree(reverse(l_path(2)))) == "L2");
    CHECK(! catalog_position(path_to_tree(OrientedPath::from_string("FFBF"))));
    CHECK(! catalog_position(path_to_tree(directed_path(4))));
}
