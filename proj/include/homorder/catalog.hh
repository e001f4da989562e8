#ifndef HOMORDER_CATALOG_HH
#define HOMORDER_CATALOG_HH 1

#include <homorder/structures.hh>

#include <optional>
#include <string>
#include <vector>

namespace homorder
{
    /// F^n.
    auto directed_path(std::size_t n) -> OrientedPath;

    /// The height-3 core "FF" + "BF"^k + "F": vertices a, b0, c0, ..., bk, ck, d
    /// with b(i) -> c(i-1) for i >= 1.
    auto l_path(std::size_t k) -> OrientedPath;

    struct BottomChain
    {
        std::vector<OrientedPath> elements;
        std::vector<std::string> names;
    };

    /// P0 < P1 < P2 < L(k_max) < ... < L1 < L0, with every ordered pair checked.
    /// Throws HomorderError if any relation disagrees with the chain.
    auto bottom_chain(std::size_t k_max) -> BottomChain;

    /// "P0".."P3" or "L<k>" when t is isomorphic to that catalogue path. L0 is
    /// reported as "P3". Searches L(k) for k up to the arc count of t.
    auto catalog_position(const OrientedTree & t) -> std::optional<std::string>;
}

#endif
