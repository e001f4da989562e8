#ifndef HOMORDER_HOM_ENGINE_HH
#define HOMORDER_HOM_ENGINE_HH 1

#include <homorder/structures.hh>

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace homorder
{
    using VertexSet = boost::dynamic_bitset<>;

    /// A vertex map between two trees. Validity is not implied by the type;
    /// use is_homomorphism() or validate().
    struct Homomorphism
    {
        OrientedTree source;
        OrientedTree target;
        std::vector<Vertex> map;

        auto operator()(Vertex v) const -> Vertex { return map[v]; }
    };

    auto is_homomorphism(const OrientedTree & source, const OrientedTree & target, const std::vector<Vertex> & map) -> bool;
    auto is_homomorphism(const Homomorphism & f) -> bool;

    /// Throws HomorderError when f is not arc preserving.
    auto validate(const Homomorphism & f) -> void;

    auto compose(const Homomorphism & first, const Homomorphism & second) -> Homomorphism;

    auto is_surjective(const Homomorphism & f) -> bool;

    inline constexpr std::uint64_t default_node_budget = 50'000'000;
    inline constexpr std::size_t default_enumeration_cap = 1'000'000;

    /// Exhaustive backtracking over vertex assignments in index order. Reference
    /// oracle; throws BudgetExceeded past `node_budget` search nodes.
    auto find_hom_brute(const OrientedTree & source, const OrientedTree & target,
        std::uint64_t node_budget = default_node_budget) -> std::optional<Homomorphism>;

    /// Every homomorphism by the same backtracking, in lexicographic order of
    /// the map vector. Stops after `cap` results.
    struct Enumeration
    {
        std::vector<Homomorphism> homomorphisms;
        bool truncated = false;
    };

    auto enumerate_homs_brute(const OrientedTree & source, const OrientedTree & target,
        std::size_t cap = default_enumeration_cap, std::uint64_t node_budget = default_node_budget) -> Enumeration;

    /// Per-source-vertex restriction of allowed images. An empty optional means
    /// unrestricted.
    using Restrictions = std::vector<std::optional<VertexSet>>;

    auto unrestricted(const OrientedTree & source) -> Restrictions;
    auto single_vertex(std::size_t target_size, Vertex v) -> VertexSet;

    /**
     * Tree-structured constraint network over a source tree rooted at vertex 0.
     * Candidate sets are bitsets over target vertices. The upward pass enforces
     * consistency leaf to root; the downward pass then leaves exactly the
     * images taken by some homomorphism, since the constraint graph is a tree.
     */
    class TreeSolver
    {
        private:
            const OrientedTree & _source;
            const OrientedTree & _target;
            std::vector<Vertex> _preorder;
            std::vector<long> _parent;
            std::vector<bool> _parent_is_tail;
            std::vector<VertexSet> _out_sets, _in_sets;

            auto support_towards_parent(Vertex child, const VertexSet & child_set) const -> VertexSet;
            auto support_from_parent(Vertex child, const VertexSet & parent_set) const -> VertexSet;

        public:
            TreeSolver(const OrientedTree & source, const OrientedTree & target);

            auto source() const -> const OrientedTree & { return _source; }
            auto target() const -> const OrientedTree & { return _target; }
            auto preorder() const -> const std::vector<Vertex> & { return _preorder; }

            auto parent(Vertex x) const -> std::optional<Vertex>
            {
                return _parent[x] < 0 ? std::nullopt : std::optional<Vertex>(static_cast<Vertex>(_parent[x]));
            }

            /// Leaf-to-root pass. Returns nullopt when some candidate set empties.
            auto upward(const Restrictions & restrictions) const -> std::optional<std::vector<VertexSet>>;

            /// Exact image sets: t is in result[x] iff some homomorphism (obeying the
            /// restrictions) sends x to t.
            auto possible_images(const Restrictions & restrictions) const -> std::optional<std::vector<VertexSet>>;

            /// Top-down extraction, smallest target index first.
            auto extract(const std::vector<VertexSet> & upward_sets) const -> std::vector<Vertex>;

            auto solve(const Restrictions & restrictions) const -> std::optional<std::vector<Vertex>>;

            /// Number of homomorphisms; throws HomorderError on 64-bit overflow.
            auto count(const Restrictions & restrictions) const -> std::uint64_t;

            /// Calls visit on each homomorphism in lexicographic order of the images
            /// of vertices listed in preorder; stops when visit returns false.
            auto for_each(const Restrictions & restrictions,
                const std::function<auto (const std::vector<Vertex> &) -> bool> & visit) const -> void;

            auto candidates_given_parent(Vertex x, Vertex parent_image) const -> const VertexSet &;
    };

    /// Polynomial decision via TreeSolver; same contract as find_hom_brute.
    auto find_hom_dp(const OrientedTree & source, const OrientedTree & target) -> std::optional<Homomorphism>;

    auto find_hom_dp(const OrientedTree & source, const OrientedTree & target,
        const Restrictions & restrictions) -> std::optional<Homomorphism>;

    auto count_homs(const OrientedTree & source, const OrientedTree & target) -> std::uint64_t;

    auto enumerate_homs(const OrientedTree & source, const OrientedTree & target,
        std::size_t cap = default_enumeration_cap) -> Enumeration;

    /// A vertex-surjective homomorphism, by DP filtering then pruned backtracking.
    auto exists_surjective_hom(const OrientedTree & source, const OrientedTree & target,
        std::uint64_t node_budget = default_node_budget) -> std::optional<Homomorphism>;

    /// True iff the identity is the only automorphism.
    auto is_rigid(const OrientedTree & t, std::uint64_t node_budget = default_node_budget) -> bool;

    /// Undirected shortest-path distances from every vertex.
    auto all_pairs_distances(const OrientedTree & t) -> std::vector<std::vector<int>>;

    /// d(f(u), f(v)) <= d(u, v) for every pair of source vertices.
    auto check_distance_property(const Homomorphism & f) -> bool;

    /// l(f(u)) - l(f(v)) == l(u) - l(v) for every pair of source vertices.
    auto preserves_level_differences(const Homomorphism & f) -> bool;

    enum class QueryMode
    {
        Exists,
        Enumerate,
        Count
    };

    struct HomQuery
    {
        OrientedTree source;
        OrientedTree target;
        QueryMode mode = QueryMode::Exists;
        std::vector<std::pair<Vertex, Vertex>> forced;
        bool surjective_only = false;
        std::size_t cap = default_enumeration_cap;
    };

    struct HomQueryResult
    {
        std::optional<Homomorphism> witness;
        Enumeration enumeration;
        std::uint64_t count = 0;
    };

    auto run_query(const HomQuery & query) -> HomQueryResult;
}

#endif
