#ifndef HOMORDER_CHECKS_HH
#define HOMORDER_CHECKS_HH 1

#include <homorder/serialize.hh>
#include <homorder/structures.hh>

#include <cstdint>
#include <random>
#include <string>

namespace homorder
{
    enum class CheckStatus
    {
        Pass,
        Fail,
        Truncated,
        Error
    };

    auto to_string(CheckStatus s) -> std::string;

    struct CheckOutcome
    {
        CheckStatus status = CheckStatus::Pass;
        std::string detail;
        Json data = Json::object();
    };

    /// Vertex v > 0 attaches to a uniformly chosen earlier vertex, arc direction
    /// by a fair coin.
    auto random_tree(std::size_t n, std::mt19937_64 & rng) -> OrientedTree;

    /// find_hom_dp against find_hom_brute on every ordered pair of paths with
    /// at most max_path_arcs arcs, then on random tree pairs.
    auto oracle_sweep(std::size_t max_path_arcs, std::size_t random_pairs, std::size_t max_vertices, std::uint64_t seed) -> CheckOutcome;

    auto bottom_chain_check(std::size_t k_max) -> CheckOutcome;

    /// Nothing strictly between P0, P1 nor between P1, P2 among paths up to max_arcs.
    auto gap_check(std::size_t max_arcs) -> CheckOutcome;

    /// Every path of height at most 3 has a catalogued core.
    auto height3_core_check(std::size_t max_arcs) -> CheckOutcome;

    /// Every path core is rigid.
    auto rigidity_check(std::size_t max_arcs) -> CheckOutcome;

    /// Distance and level-difference properties on enumerated homomorphisms
    /// between random trees.
    auto distance_level_check(std::size_t count, std::size_t max_vertices, std::uint64_t seed) -> CheckOutcome;
}

#endif
