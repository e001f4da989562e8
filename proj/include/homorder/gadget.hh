#ifndef HOMORDER_GADGET_HH
#define HOMORDER_GADGET_HH 1

#include <homorder/hom_engine.hh>
#include <homorder/structures.hh>

#include <optional>
#include <string>
#include <vector>

namespace homorder
{
    class CannotSatisfy : public HomorderError
    {
        public:
            using HomorderError::HomorderError;
    };

    /**
     * P = A B C cut at two distinct vertices v1 < v2 that a surjective
     * homomorphism h : P -> upper sends to the same vertex. The cut vertices
     * share a level, a1 is the last arc of A and a2 the first arc of C.
     */
    struct SplitDecomposition
    {
        OrientedPath path;
        OrientedPath upper;
        Homomorphism h;
        Vertex v1 = 0, v2 = 0;
        OrientedPath a, b, c;

        auto a1() const -> std::size_t { return v1 - 1; }
        auto a2() const -> std::size_t { return v2; }
        auto level_a1() const -> int { return arc_level(path, a1()); }
        auto level_a2() const -> int { return arc_level(path, a2()); }
    };

    /// Cuts P at (v1, v2) under h. Requires 1 <= v1 < v2 < arcs(P) and h(v1) == h(v2).
    auto split_at_pair(const OrientedPath & p, const Homomorphism & h, Vertex v1, Vertex v2) -> SplitDecomposition;

    /// Collision pairs of h with nonempty A and C, ordered by (v1, v2).
    auto collision_pairs(const Homomorphism & h) -> std::vector<std::pair<Vertex, Vertex>>;

    /// Finds a surjective h : P -> upper, then cuts at the first collision pair
    /// whose middle segment is not a zig-zag degeneracy, or the first pair if all
    /// are degenerate. Throws PreconditionError if no surjection or no pair exists.
    auto split_at_identified_pair(const OrientedPath & p, const OrientedPath & upper) -> SplitDecomposition;

    enum class BShape
    {
        NonDegenerate,
        EqualsZ1,
        EqualsZ2,
        EqualsZ1Z2
    };

    auto to_string(BShape s) -> std::string;

    /// Whether B is a zig-zag at level l(a1), at level l(a2), or such a pair
    /// of zig-zags concatenated.
    auto classify_B(const SplitDecomposition & dec) -> BShape;

    enum class GadgetVariant
    {
        Standard,
        FallbackBNotZ1,
        FallbackBEqualsZ1
    };

    auto to_string(GadgetVariant v) -> std::string;
    auto variant_from_string(const std::string & s) -> GadgetVariant;

    /**
     * The indicator path I = Z1 A^-1 A B C C^-1 Z2 built on `split`, where
     * `split.path` is either the chosen P or, for the fallback variants, the
     * auxiliary path assembled from it. `collapse` is the fold of I onto
     * `split.path`; composing with `split.h` gives the per-copy map into upper.
     */
    struct IndicatorGadget
    {
        OrientedPath lower, upper;
        SplitDecomposition base_split;
        BShape base_shape = BShape::NonDegenerate;
        SplitDecomposition split;
        GadgetVariant variant = GadgetVariant::Standard;
        std::size_t z1_len = 0, z2_len = 0;
        OrientedPath indicator;
        Homomorphism collapse;

        /// Vertex range of the embedded copy of split.path inside I.
        Vertex core_begin = 0, core_end = 0;
    };

    /// Builds I at fixed zig-zag lengths without verifying anything.
    auto assemble_indicator(const OrientedPath & lower, const OrientedPath & upper,
        const SplitDecomposition & base_split, std::size_t z1_len, std::size_t z2_len) -> IndicatorGadget;

    /// Z1 A^-1 A B C C^-1 Z2 on exactly this split, with no degeneracy fallback.
    auto assemble_standard(const OrientedPath & lower, const OrientedPath & upper,
        const SplitDecomposition & split, std::size_t z1_len, std::size_t z2_len) -> IndicatorGadget;

    auto with_zigzag_lengths(const IndicatorGadget & g, std::size_t z1_len, std::size_t z2_len) -> IndicatorGadget;

    /// The auxiliary path of the fallback construction for a degenerate split,
    /// with the homomorphism into upper and the inherited collision pair.
    struct FallbackPath
    {
        OrientedPath path;
        Homomorphism h;
        Vertex v1 = 0, v2 = 0;
        GadgetVariant variant = GadgetVariant::FallbackBNotZ1;
    };

    auto fallback_path(const SplitDecomposition & dec, std::size_t z1_len, std::size_t z2_len) -> FallbackPath;

    /// Φ_I(Q): each arc of Q replaced by a copy of I, reversed for backward arcs.
    struct Substitution
    {
        OrientedPath path;
        OrientedPath template_path;
        std::size_t copy_arcs = 0;

        auto copies() const -> std::size_t { return template_path.arc_count(); }

        /// Position of i(I_j) and t(I_j) for copy j.
        auto copy_initial(std::size_t j) const -> Vertex;
        auto copy_terminal(std::size_t j) const -> Vertex;

        /// Position in I of the vertex at `position` inside copy j.
        auto local_index(std::size_t j, Vertex position) const -> Vertex;
    };

    auto phi(const OrientedPath & indicator, const OrientedPath & q) -> Substitution;
    auto phi(const IndicatorGadget & g, const OrientedPath & q) -> Substitution;

    /// ρ' on Φ_I(Q): per copy, the collapse of I followed by h.
    auto quotient_map(const IndicatorGadget & g, const Substitution & s) -> Homomorphism;

    enum class ConditionStatus
    {
        Verified,
        FailedWithWitness,
        Truncated
    };

    auto to_string(ConditionStatus s) -> std::string;

    struct ConditionResult
    {
        ConditionStatus status = ConditionStatus::Verified;
        std::optional<OrientedPath> q;
        std::optional<Homomorphism> witness;
        std::string detail;
    };

    struct QCheck
    {
        OrientedPath q;
        bool condition_i = true, condition_ii = true, condition_iii = true;
        bool quotient_valid = true;
    };

    enum class CheckMethod
    {
        /// Universal statements over all homomorphisms decided as "no violating
        /// homomorphism exists" with restricted tree-DP queries.
        Exact,
        /// Literal enumeration of every homomorphism, capped.
        Enumerate
    };

    struct Lemma1Options
    {
        std::size_t q_arc_bound = 3;
        CheckMethod method = CheckMethod::Exact;
        std::size_t enumeration_cap = default_enumeration_cap;
    };

    struct Lemma1Report
    {
        ConditionResult condition_i, condition_ii, condition_iii;
        bool collapse_valid = false;
        std::vector<QCheck> per_q;
        std::size_t q_arc_bound = 0;
        CheckMethod method = CheckMethod::Exact;

        auto verified() const -> bool;
    };

    auto check_lemma1(const IndicatorGadget & g, const Lemma1Options & options = {}) -> Lemma1Report;

    /// All direction strings with between min_arcs and max_arcs arcs, by length
    /// then lexicographically.
    auto all_paths(std::size_t min_arcs, std::size_t max_arcs) -> std::vector<OrientedPath>;

    struct EmbeddingCounterexample
    {
        OrientedPath q, q_prime;
        bool q_leq = false, phi_leq = false;
    };

    struct EmbeddingReport
    {
        std::size_t pairs_checked = 0;
        std::vector<EmbeddingCounterexample> counterexamples;
        std::vector<OrientedPath> outside_interval;

        auto passed() const -> bool { return counterexamples.empty() && outside_interval.empty(); }
    };

    /// leq(Q, Q') <=> leq(Φ(Q), Φ(Q')) on every pair from `sample`, and
    /// lower < Φ(Q) < upper for each Q with at least one arc.
    auto verify_embedding(const IndicatorGadget & g, const std::vector<OrientedPath> & sample) -> EmbeddingReport;

    struct IndicatorOptions
    {
        /// Starting zig-zag length; defaults to max(4, 2 arcs(P)), rounded up to even.
        std::optional<std::size_t> zigzag_floor;

        /// Defaults to 8 arcs(P).
        std::optional<std::size_t> zigzag_ceiling;

        std::size_t q_arc_bound = 3;

        /// Override the collision pair (v1, v2).
        std::optional<std::pair<Vertex, Vertex>> collision;

        /// Re-check at lengths + 2 on paths Q with at most this many arcs; 0 skips it.
        std::size_t growth_recheck_arcs = 2;
    };

    struct BuiltIndicator
    {
        IndicatorGadget gadget;
        Lemma1Report report;
        std::optional<bool> growth_recheck;
        std::vector<std::size_t> lengths_tried;
    };

    /// Verify-and-grow: assemble at the floor length, check, add 2 to both
    /// zig-zags until every condition holds or the ceiling is passed.
    auto build_indicator(const OrientedPath & lower, const OrientedPath & upper, const OrientedPath & p,
        const IndicatorOptions & options = {}) -> BuiltIndicator;

    /// Path cores P (by length, then lexicographically, one reading each) with
    /// lower < P < upper that admit a surjection onto upper identifying some pair.
    auto indicator_bases(const OrientedPath & lower, const OrientedPath & upper, std::size_t max_arcs) -> std::vector<OrientedPath>;

    /// The first of indicator_bases.
    auto find_indicator_base(const OrientedPath & lower, const OrientedPath & upper, std::size_t max_arcs = 14) -> std::optional<OrientedPath>;
}

#endif
