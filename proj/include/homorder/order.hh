#ifndef HOMORDER_ORDER_HH
#define HOMORDER_ORDER_HH 1

#include <homorder/hom_engine.hh>
#include <homorder/structures.hh>

#include <optional>
#include <string>
#include <vector>

namespace homorder
{
    auto leq(const OrientedTree & a, const OrientedTree & b) -> bool;
    auto strictly_less(const OrientedTree & a, const OrientedTree & b) -> bool;
    auto hom_equivalent(const OrientedTree & a, const OrientedTree & b) -> bool;
    auto incomparable(const OrientedTree & a, const OrientedTree & b) -> bool;

    inline constexpr std::size_t default_core_vertex_budget = 4096;

    struct CoreResult
    {
        OrientedTree core;

        /// Input vertex -> core vertex; identity on the kept vertices.
        Homomorphism retraction;

        /// Core vertex -> input vertex it was kept as.
        std::vector<Vertex> kept;
    };

    /// Repeatedly deletes a leaf whose removal the tree can still map into.
    /// Cores of trees are subtrees, and a proper subtree misses some leaf, so the
    /// result has no proper retraction.
    auto core(const OrientedTree & g, std::size_t vertex_budget = default_core_vertex_budget) -> CoreResult;

    /// Exhaustive audit: every endomorphism of t is a bijection. Throws
    /// BudgetExceeded when the enumeration is too large.
    auto admits_no_proper_endomorphism(const OrientedTree & t, std::size_t cap = default_enumeration_cap) -> bool;

    auto is_core(const OrientedTree & t) -> bool;

    auto core_is_path(const OrientedTree & t) -> bool;

    enum class IntervalClass
    {
        Universal,
        Chain,
        Gap,
        NotStrictlyOrdered
    };

    auto to_string(IntervalClass c) -> std::string;

    struct IntervalReport
    {
        OrientedTree lower, upper;
        IntervalClass classification = IntervalClass::NotStrictlyOrdered;
        OrientedTree lower_core, upper_core;
        int lower_height = 0, upper_height = 0;

        /// Catalogue names of the cores when the interval sits in the bottom chain.
        std::optional<std::string> lower_position, upper_position;

        /// For Gap: the bound the exhaustive between-search ran to.
        std::optional<std::size_t> searched_up_to_arcs;
        std::vector<std::string> notes;
    };

    struct IntervalOptions
    {
        std::size_t gap_search_arcs = 20;
    };

    auto classify_interval(const OrientedTree & lower, const OrientedTree & upper,
        const IntervalOptions & options = {}) -> IntervalReport;

    enum class BetweenOutcome
    {
        Found,
        NoneWithinBound,
        CertifiedGap
    };

    auto to_string(BetweenOutcome o) -> std::string;

    struct BetweenOptions
    {
        std::size_t max_arcs = 20;

        /// Trees with up to this many vertices are tried after paths; 0 disables.
        std::size_t max_tree_vertices = 0;

        /// Skip the search for the two certified gaps and report CertifiedGap.
        bool trust_certified_gaps = true;
    };

    struct BetweenResult
    {
        BetweenOutcome outcome = BetweenOutcome::NoneWithinBound;
        std::optional<OrientedTree> witness;
        std::size_t candidates_checked = 0;
    };

    /// Bounded search for C with lower < C < upper: paths by arc count then
    /// lexicographic direction string (F < B), one reading per reversal pair,
    /// then trees if enabled. Requires lower < upper.
    auto find_between(const OrientedTree & lower, const OrientedTree & upper,
        const BetweenOptions & options = {}) -> BetweenResult;

    /// Calls visit on each path with exactly n arcs and height at most
    /// max_height, in lexicographic order; stops when visit returns false.
    auto for_each_path(std::size_t n, int max_height, const std::function<auto (const OrientedPath &) -> bool> & visit) -> bool;

    /// Non-isomorphic oriented trees on exactly n vertices.
    auto all_trees(std::size_t n) -> std::vector<OrientedTree>;

    /// True when [core(lower), core(upper)] is [P0,P1] or [P1,P2].
    auto is_certified_gap(const OrientedTree & lower, const OrientedTree & upper) -> bool;
}

#endif
