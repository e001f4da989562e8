#include <homorder/gadget.hh>
#include <homorder/order.hh>

#include <algorithm>
#include <array>
#include <climits>
#include <functional>

using std::array;
using std::optional;
using std::pair;
using std::size_t;
using std::string;
using std::vector;

namespace homorder
{
    namespace
    {
        /// A walk in a base path, read off as a new oriented path together with
        /// the map sending each walk vertex to the base vertex it visits.
        class Walk
        {
            private:
                const OrientedPath & _base;
                vector<Direction> _dirs;
                vector<Vertex> _image;

            public:
                Walk(const OrientedPath & base, Vertex start) :
                    _base(base),
                    _image{start}
                {
                }

                auto here() const -> Vertex { return _image.back(); }
                auto length() const -> size_t { return _dirs.size(); }

                auto step_to(Vertex w) -> void
                {
                    auto v = here();
                    if (w == v + 1)
                        _dirs.push_back(_base[v]);
                    else if (w + 1 == v)
                        _dirs.push_back(flip(_base[w]));
                    else
                        throw HomorderError{"internal error: walk step between non-adjacent vertices"};
                    _image.push_back(w);
                }

                auto run_to(Vertex w) -> void
                {
                    while (here() != w)
                        step_to(here() < w ? here() + 1 : here() - 1);
                }

                /// Back and forth across the arc to `other`, `len` arcs, ending where it started.
                auto zig(Vertex other, size_t len) -> void
                {
                    auto anchor = here();
                    for (size_t k = 0; k < len; ++k)
                        step_to(k % 2 == 0 ? other : anchor);
                }

                /// Continue from w instead, for two base vertices the caller has identified.
                auto jump(Vertex w) -> void
                {
                    _image.back() = w;
                }

                auto path() const -> OrientedPath { return OrientedPath{_dirs}; }
                auto image() const -> const vector<Vertex> & { return _image; }
        };

        auto check_zigzag_length(size_t len) -> void
        {
            if (len == 0 || len % 2 != 0)
                throw PreconditionError{"zig-zag lengths must be even and positive, got " + std::to_string(len)};
        }

        auto zigzag_at_level(const vector<int> & arc_levels, size_t from, size_t to, int level) -> bool
        {
            if (from >= to)
                return false;
            for (size_t i = from; i < to; ++i)
                if (arc_levels[i] != level)
                    return false;
            return true;
        }

        auto arc_levels(const OrientedPath & p) -> vector<int>
        {
            auto levels = level_map(p);
            vector<int> result(p.arc_count());
            for (size_t i = 0; i < p.arc_count(); ++i)
                result[i] = std::max(levels[i], levels[i + 1]);
            return result;
        }

        auto build_from_split(const SplitDecomposition & split, size_t z1, size_t z2) -> pair<OrientedPath, vector<Vertex>>
        {
            auto & p = split.path;
            auto n = p.terminal();
            Walk walk{p, split.v1};
            walk.zig(split.v1 - 1, z1);
            walk.run_to(0);
            walk.run_to(n);
            walk.run_to(split.v2);
            walk.zig(split.v2 + 1, z2);
            return {walk.path(), walk.image()};
        }

        auto range_set(size_t size, Vertex from, Vertex to) -> VertexSet
        {
            VertexSet s(size);
            for (auto v = from; v <= to; ++v)
                s.set(v);
            return s;
        }

        auto arc_endpoints(const OrientedPath & q, size_t j) -> pair<Vertex, Vertex>
        {
            return q.arc(j);
        }

        auto describe_copy_relation(const OrientedPath & q, size_t j1, size_t j2) -> string
        {
            if (j1 == j2)
                return "same copy, q1=q2 and q1'=q2' (B-degeneracy)";
            auto [q1, q1p] = arc_endpoints(q, j1);
            auto [q2, q2p] = arc_endpoints(q, j2);
            vector<string> parts;
            if (q1 == q2)
                parts.emplace_back("q1=q2");
            if (q1p == q2p)
                parts.emplace_back("q1'=q2'");
            if (q1 == q2p)
                parts.emplace_back("q1=q2'");
            if (q1p == q2)
                parts.emplace_back("q1'=q2");
            if (parts.empty())
                return "copies share no vertex of Q";
            string out;
            for (auto & s : parts)
                out += (out.empty() ? "" : ", ") + s;
            return out;
        }

        auto merge(ConditionResult & into, ConditionStatus status) -> void
        {
            if (into.status == ConditionStatus::FailedWithWitness)
                return;
            if (status == ConditionStatus::FailedWithWitness || status == ConditionStatus::Truncated)
                into.status = status;
        }

        // sign pairs for the two-copy concatenation
        constexpr array<pair<int, int>, 4> epsilon_cases{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

        auto epsilon_name(pair<int, int> e) -> string
        {
            return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
        }

        /// Position in Φ of endpoint z of copy j1 and endpoint z' of copy j2, where
        /// the glued vertex of I1^e1 I2^e2 is t(I1^e1) = i(I2^e2).
        auto glued_endpoints(const Substitution & s, pair<int, int> e, size_t j1, size_t j2) -> pair<Vertex, Vertex>
        {
            auto z = e.first == 1 ? s.copy_terminal(j1) : s.copy_initial(j1);
            auto zp = e.second == 1 ? s.copy_initial(j2) : s.copy_terminal(j2);
            return {z, zp};
        }

        struct ImageRange
        {
            Vertex low, high;
        };

        auto image_range(const vector<Vertex> & map, size_t from, size_t to) -> ImageRange
        {
            auto [lo, hi] = std::minmax_element(map.begin() + from, map.begin() + to + 1);
            return {*lo, *hi};
        }

        /// The copy whose vertex range contains the image, if any.
        auto containing_copy(const ImageRange & r, size_t copy_arcs, size_t copies) -> optional<size_t>
        {
            auto j = r.low / copy_arcs;
            if (j >= copies)
                j = copies - 1;
            if (r.high <= (j + 1) * copy_arcs)
                return j;
            return std::nullopt;
        }

        auto spans_boundary(const ImageRange & r, size_t copy_arcs, size_t copies) -> bool
        {
            for (size_t j = 1; j < copies; ++j) {
                auto b = j * copy_arcs;
                if (r.low < b && b < r.high)
                    return true;
            }
            return false;
        }
    }

    auto split_at_pair(const OrientedPath & p, const Homomorphism & h, Vertex v1, Vertex v2) -> SplitDecomposition
    {
        if (h.source.vertex_count() != p.vertex_count() || ! is_homomorphism(h))
            throw PreconditionError{"h is not a homomorphism from P"};
        if (! (1 <= v1 && v1 < v2 && v2 < p.terminal()))
            throw PreconditionError{"collision pair must satisfy 1 <= v1 < v2 < arcs(P)"};
        if (h(v1) != h(v2))
            throw PreconditionError{"h does not identify v1 and v2"};

        auto upper = tree_is_path(h.target);
        if (! upper)
            throw PreconditionError{"target of h is not a path"};

        return SplitDecomposition{p, *upper, h, v1, v2, p.segment(0, v1), p.segment(v1, v2), p.segment(v2, p.terminal())};
    }

    auto collision_pairs(const Homomorphism & h) -> vector<pair<Vertex, Vertex>>
    {
        vector<pair<Vertex, Vertex>> result;
        auto n = static_cast<Vertex>(h.source.vertex_count() - 1);
        for (Vertex v1 = 1; v1 < n; ++v1)
            for (Vertex v2 = v1 + 1; v2 < n; ++v2)
                if (h(v1) == h(v2))
                    result.emplace_back(v1, v2);
        return result;
    }

    auto split_at_identified_pair(const OrientedPath & p, const OrientedPath & upper) -> SplitDecomposition
    {
        auto h = exists_surjective_hom(path_to_tree(p), path_to_tree(upper));
        if (! h)
            throw PreconditionError{"no surjective homomorphism from " + p.to_string() + " onto " + upper.to_string()};
        auto pairs = collision_pairs(*h);
        if (pairs.empty())
            throw PreconditionError{"the surjection identifies no pair of interior vertices"};

        optional<SplitDecomposition> first;
        for (auto [v1, v2] : pairs) {
            auto dec = split_at_pair(p, *h, v1, v2);
            dec.upper = upper;
            if (classify_B(dec) == BShape::NonDegenerate)
                return dec;
            if (! first)
                first = dec;
        }
        return *first;
    }

    auto to_string(BShape s) -> string
    {
        switch (s) {
            case BShape::NonDegenerate: return "NonDegenerate";
            case BShape::EqualsZ1: return "B_equals_Z1";
            case BShape::EqualsZ2: return "B_equals_Z2";
            case BShape::EqualsZ1Z2: return "B_equals_Z1Z2";
        }
        return "?";
    }

    auto classify_B(const SplitDecomposition & dec) -> BShape
    {
        if (dec.v2 <= dec.v1)
            throw HomorderError{"internal error: empty middle segment"};
        auto levels = arc_levels(dec.path);
        int l1 = levels[dec.a1()], l2 = levels[dec.a2()];
        if (zigzag_at_level(levels, dec.v1, dec.v2, l1))
            return BShape::EqualsZ1;
        if (zigzag_at_level(levels, dec.v1, dec.v2, l2))
            return BShape::EqualsZ2;
        for (size_t s = dec.v1 + 1; s < dec.v2; ++s)
            if (zigzag_at_level(levels, dec.v1, s, l1) && zigzag_at_level(levels, s, dec.v2, l2))
                return BShape::EqualsZ1Z2;
        return BShape::NonDegenerate;
    }

    auto to_string(GadgetVariant v) -> string
    {
        switch (v) {
            case GadgetVariant::Standard: return "Standard";
            case GadgetVariant::FallbackBNotZ1: return "FallbackBNotZ1";
            case GadgetVariant::FallbackBEqualsZ1: return "FallbackBEqualsZ1";
        }
        return "?";
    }

    auto variant_from_string(const string & s) -> GadgetVariant
    {
        for (auto v : {GadgetVariant::Standard, GadgetVariant::FallbackBNotZ1, GadgetVariant::FallbackBEqualsZ1})
            if (to_string(v) == s)
                return v;
        throw ParseError{"unknown gadget variant '" + s + "'"};
    }

    auto fallback_path(const SplitDecomposition & dec, size_t z1, size_t z2) -> FallbackPath
    {
        check_zigzag_length(z1);
        check_zigzag_length(z2);
        auto & p = dec.path;
        auto n = p.terminal();
        FallbackPath result;
        result.variant = classify_B(dec) == BShape::EqualsZ1 ? GadgetVariant::FallbackBEqualsZ1 : GadgetVariant::FallbackBNotZ1;

        // v1 and v2 are identified by h, so the walk may continue from one at the other
        Walk walk{p, 0};
        walk.run_to(n);
        walk.run_to(dec.v2);
        walk.zig(dec.v2 + 1, z2);
        if (result.variant == GadgetVariant::FallbackBNotZ1) {
            // A B C C^-1 Z2 C C^-1 Z1 A^-1 A B C
            walk.run_to(n);
            walk.run_to(dec.v2);
            walk.jump(dec.v1);
            walk.zig(dec.v1 - 1, z1);
        }
        else {
            // A B C C^-1 Z2 A^-1 A Z1 A^-1 A B C
            walk.jump(dec.v1);
            walk.run_to(0);
            walk.run_to(dec.v1);
            walk.zig(dec.v1 - 1, z1);
        }
        walk.run_to(0);
        walk.run_to(dec.v1);
        walk.run_to(n);

        result.path = walk.path();
        vector<Vertex> map;
        map.reserve(walk.image().size());
        for (auto v : walk.image())
            map.push_back(dec.h(v));
        result.h = Homomorphism{path_to_tree(result.path), dec.h.target, std::move(map)};
        validate(result.h);
        result.v1 = dec.v1;
        result.v2 = static_cast<Vertex>(result.path.terminal() - (n - dec.v2));
        return result;
    }

    auto assemble_indicator(const OrientedPath & lower, const OrientedPath & upper,
        const SplitDecomposition & base_split, size_t z1, size_t z2) -> IndicatorGadget
    {
        check_zigzag_length(z1);
        check_zigzag_length(z2);

        IndicatorGadget g;
        g.lower = lower;
        g.upper = upper;
        g.base_split = base_split;
        g.base_shape = classify_B(base_split);
        g.z1_len = z1;
        g.z2_len = z2;

        if (g.base_shape == BShape::NonDegenerate) {
            g.split = base_split;
            g.variant = GadgetVariant::Standard;
        }
        else {
            // the fallback wants l(a1) != l(a2); the base pair first, then the rest in order
            vector<SplitDecomposition> candidates;
            if (base_split.level_a1() != base_split.level_a2())
                candidates.push_back(base_split);
            for (auto [v1, v2] : collision_pairs(base_split.h)) {
                if (v1 == base_split.v1 && v2 == base_split.v2)
                    continue;
                auto d = split_at_pair(base_split.path, base_split.h, v1, v2);
                if (d.level_a1() != d.level_a2())
                    candidates.push_back(std::move(d));
            }
            if (candidates.empty())
                throw CannotSatisfy{"degenerate split and no collision pair with l(a1) != l(a2)"};

            auto lower_t = path_to_tree(lower), upper_t = path_to_tree(upper);
            bool found = false;
            for (auto & chosen : candidates) {
                chosen.upper = base_split.upper;
                if (classify_B(chosen) == BShape::NonDegenerate) {
                    g.split = chosen;
                    g.variant = GadgetVariant::Standard;
                    found = true;
                    break;
                }
                // P' must itself be a core strictly inside the interval
                auto fb = fallback_path(chosen, z1, z2);
                auto fb_t = path_to_tree(fb.path);
                if (! strictly_less(lower_t, fb_t) || ! strictly_less(fb_t, upper_t) || ! is_core(fb_t))
                    continue;
                g.split = split_at_pair(fb.path, fb.h, fb.v1, fb.v2);
                g.split.upper = base_split.upper;
                g.variant = fb.variant;
                found = true;
                break;
            }
            if (! found)
                throw CannotSatisfy{"no collision pair yields an auxiliary path that is a core strictly inside the interval"};
        }

        auto [indicator, image] = build_from_split(g.split, z1, z2);
        g.indicator = indicator;
        g.collapse = Homomorphism{path_to_tree(indicator), path_to_tree(g.split.path), image};
        g.core_begin = static_cast<Vertex>(z1 + g.split.v1);
        g.core_end = static_cast<Vertex>(g.core_begin + g.split.path.arc_count());
        return g;
    }

    auto assemble_standard(const OrientedPath & lower, const OrientedPath & upper,
        const SplitDecomposition & split, size_t z1, size_t z2) -> IndicatorGadget
    {
        check_zigzag_length(z1);
        check_zigzag_length(z2);
        IndicatorGadget g;
        g.lower = lower;
        g.upper = upper;
        g.base_split = split;
        g.base_shape = classify_B(split);
        g.split = split;
        g.variant = GadgetVariant::Standard;
        g.z1_len = z1;
        g.z2_len = z2;
        auto [indicator, image] = build_from_split(split, z1, z2);
        g.indicator = indicator;
        g.collapse = Homomorphism{path_to_tree(indicator), path_to_tree(split.path), image};
        g.core_begin = static_cast<Vertex>(z1 + split.v1);
        g.core_end = static_cast<Vertex>(g.core_begin + split.path.arc_count());
        return g;
    }

    auto with_zigzag_lengths(const IndicatorGadget & g, size_t z1, size_t z2) -> IndicatorGadget
    {
        return assemble_indicator(g.lower, g.upper, g.base_split, z1, z2);
    }

    auto Substitution::copy_initial(size_t j) const -> Vertex
    {
        auto forward = template_path[j] == Direction::Forward;
        return static_cast<Vertex>(forward ? j * copy_arcs : (j + 1) * copy_arcs);
    }

    auto Substitution::copy_terminal(size_t j) const -> Vertex
    {
        auto forward = template_path[j] == Direction::Forward;
        return static_cast<Vertex>(forward ? (j + 1) * copy_arcs : j * copy_arcs);
    }

    auto Substitution::local_index(size_t j, Vertex position) const -> Vertex
    {
        auto k = position - j * copy_arcs;
        return static_cast<Vertex>(template_path[j] == Direction::Forward ? k : copy_arcs - k);
    }

    auto phi(const OrientedPath & indicator, const OrientedPath & q) -> Substitution
    {
        Substitution s;
        s.template_path = q;
        s.copy_arcs = indicator.arc_count();
        auto reversed = reverse(indicator);
        vector<Direction> dirs;
        dirs.reserve(q.arc_count() * indicator.arc_count());
        for (auto d : q.directions()) {
            auto & copy = d == Direction::Forward ? indicator : reversed;
            dirs.insert(dirs.end(), copy.directions().begin(), copy.directions().end());
        }
        s.path = OrientedPath{std::move(dirs)};
        return s;
    }

    auto phi(const IndicatorGadget & g, const OrientedPath & q) -> Substitution
    {
        return phi(g.indicator, q);
    }

    auto quotient_map(const IndicatorGadget & g, const Substitution & s) -> Homomorphism
    {
        vector<Vertex> map(s.path.vertex_count());
        for (Vertex pos = 0; pos < map.size(); ++pos) {
            if (s.copies() == 0) {
                map[pos] = g.split.h(g.collapse(0));
                continue;
            }
            auto j = std::min<size_t>(pos / s.copy_arcs, s.copies() - 1);
            map[pos] = g.split.h(g.collapse(s.local_index(j, pos)));
        }
        return Homomorphism{path_to_tree(s.path), g.split.h.target, std::move(map)};
    }

    auto to_string(ConditionStatus s) -> string
    {
        switch (s) {
            case ConditionStatus::Verified: return "Verified";
            case ConditionStatus::FailedWithWitness: return "FailedWithWitness";
            case ConditionStatus::Truncated: return "Truncated";
        }
        return "?";
    }

    auto Lemma1Report::verified() const -> bool
    {
        if (! collapse_valid)
            return false;
        for (auto & q : per_q)
            if (! q.quotient_valid)
                return false;
        return condition_i.status == ConditionStatus::Verified &&
            condition_ii.status == ConditionStatus::Verified &&
            condition_iii.status == ConditionStatus::Verified;
    }

    auto all_paths(size_t min_arcs, size_t max_arcs) -> vector<OrientedPath>
    {
        vector<OrientedPath> result;
        for (auto n = min_arcs; n <= max_arcs; ++n)
            for_each_path(n, INT_MAX, [&](const OrientedPath & p) {
                result.push_back(p);
                return true;
            });
        return result;
    }

    namespace
    {
        struct LemmaContext
        {
            const IndicatorGadget & g;
            const Lemma1Options & options;
            OrientedTree indicator_tree, lower_tree, upper_tree;
            Lemma1Report & report;
        };

        auto check_interval(LemmaContext & ctx, const OrientedPath & q, const OrientedTree & image, QCheck & qc) -> void
        {
            string problem;
            optional<Homomorphism> witness;
            if (! leq(ctx.lower_tree, image))
                problem = "lower does not map to Φ(Q)";
            else if (auto back = find_hom_dp(image, ctx.lower_tree)) {
                problem = "Φ(Q) maps to lower";
                witness = back;
            }
            else if (! leq(image, ctx.upper_tree))
                problem = "Φ(Q) does not map to upper";
            else if (auto down = find_hom_dp(ctx.upper_tree, image)) {
                problem = "upper maps to Φ(Q)";
                witness = down;
            }
            if (problem.empty())
                return;
            qc.condition_i = false;
            if (ctx.report.condition_i.status != ConditionStatus::FailedWithWitness) {
                ctx.report.condition_i = ConditionResult{ConditionStatus::FailedWithWitness, q, witness, problem};
            }
        }

        auto fail(ConditionResult & result, const OrientedPath & q, Homomorphism witness, string detail) -> void
        {
            if (result.status == ConditionStatus::FailedWithWitness)
                return;
            result = ConditionResult{ConditionStatus::FailedWithWitness, q, std::move(witness), std::move(detail)};
        }

        auto check_single_copy_exact(LemmaContext & ctx, const OrientedPath & q, const Substitution & s,
            const OrientedTree & image, QCheck & qc) -> void
        {
            auto & source = ctx.indicator_tree;
            TreeSolver solver{source, image};
            auto reach = solver.possible_images(unrestricted(source));
            if (! reach)
                return;
            for (size_t j = 1; j < s.copies(); ++j) {
                auto b = static_cast<Vertex>(j * s.copy_arcs);
                for (Vertex x = 0; x < source.vertex_count(); ++x) {
                    if (! (*reach)[x].test(b - 1))
                        continue;
                    auto restrictions = unrestricted(source);
                    restrictions[x] = single_vertex(image.vertex_count(), b - 1);
                    auto sets = solver.possible_images(restrictions);
                    if (! sets)
                        continue;
                    for (Vertex y = 0; y < source.vertex_count(); ++y)
                        if ((*sets)[y].test(b + 1)) {
                            restrictions[y] = single_vertex(image.vertex_count(), b + 1);
                            auto map = solver.solve(restrictions);
                            qc.condition_ii = false;
                            fail(ctx.report.condition_ii, q, Homomorphism{source, image, *map},
                                "image of I crosses the boundary between copies " + std::to_string(j - 1) + " and " + std::to_string(j));
                            return;
                        }
                }
            }
        }

        auto check_single_copy_enumerate(LemmaContext & ctx, const OrientedPath & q, const Substitution & s,
            const OrientedTree & image, QCheck & qc) -> void
        {
            auto & source = ctx.indicator_tree;
            TreeSolver solver{source, image};
            size_t seen = 0;
            bool truncated = false;
            solver.for_each(unrestricted(source), [&](const vector<Vertex> & map) {
                if (seen++ == ctx.options.enumeration_cap) {
                    truncated = true;
                    return false;
                }
                auto r = image_range(map, 0, source.vertex_count() - 1);
                if (spans_boundary(r, s.copy_arcs, s.copies())) {
                    qc.condition_ii = false;
                    fail(ctx.report.condition_ii, q, Homomorphism{source, image, map}, "image of I is not inside a single copy");
                    return false;
                }
                return true;
            });
            if (truncated)
                merge(ctx.report.condition_ii, ConditionStatus::Truncated);
        }

        auto two_copy_path(const OrientedPath & indicator, pair<int, int> e) -> OrientedPath
        {
            auto first = e.first == 1 ? indicator : reverse(indicator);
            auto second = e.second == 1 ? indicator : reverse(indicator);
            return concat(first, second);
        }

        auto check_endpoints_exact(LemmaContext & ctx, const OrientedPath & q, const Substitution & s,
            const OrientedTree & image, QCheck & qc) -> void
        {
            auto m = static_cast<Vertex>(s.copy_arcs);
            for (auto e : epsilon_cases) {
                auto joined = path_to_tree(two_copy_path(ctx.g.indicator, e));
                TreeSolver solver{joined, image};
                for (size_t j1 = 0; j1 < s.copies(); ++j1)
                    for (size_t j2 = 0; j2 < s.copies(); ++j2) {
                        auto [z, zp] = glued_endpoints(s, e, j1, j2);
                        if (z == zp)
                            continue;
                        auto first = range_set(image.vertex_count(), static_cast<Vertex>(j1 * m), static_cast<Vertex>((j1 + 1) * m));
                        auto second = range_set(image.vertex_count(), static_cast<Vertex>(j2 * m), static_cast<Vertex>((j2 + 1) * m));
                        auto restrictions = unrestricted(joined);
                        for (Vertex x = 0; x < joined.vertex_count(); ++x) {
                            if (x < m)
                                restrictions[x] = first;
                            else if (x > m)
                                restrictions[x] = second;
                            else
                                restrictions[x] = first & second;
                        }
                        if (auto map = solver.solve(restrictions)) {
                            qc.condition_iii = false;
                            fail(ctx.report.condition_iii, q, Homomorphism{joined, image, *map},
                                "epsilon=" + epsilon_name(e) + " copies " + std::to_string(j1) + "," + std::to_string(j2) +
                                ": glued endpoints land on different vertices; " + describe_copy_relation(q, j1, j2));
                            return;
                        }
                    }
            }
        }

        auto check_endpoints_enumerate(LemmaContext & ctx, const OrientedPath & q, const Substitution & s,
            const OrientedTree & image, QCheck & qc) -> void
        {
            auto m = s.copy_arcs;
            for (auto e : epsilon_cases) {
                auto joined = path_to_tree(two_copy_path(ctx.g.indicator, e));
                TreeSolver solver{joined, image};
                size_t seen = 0;
                bool truncated = false, failed = false;
                solver.for_each(unrestricted(joined), [&](const vector<Vertex> & map) {
                    if (seen++ == ctx.options.enumeration_cap) {
                        truncated = true;
                        return false;
                    }
                    auto c1 = containing_copy(image_range(map, 0, m), m, s.copies());
                    auto c2 = containing_copy(image_range(map, m, 2 * m), m, s.copies());
                    if (! c1 || ! c2)
                        return true;
                    auto [z, zp] = glued_endpoints(s, e, *c1, *c2);
                    if (z != zp) {
                        failed = true;
                        fail(ctx.report.condition_iii, q, Homomorphism{joined, image, map},
                            "epsilon=" + epsilon_name(e) + " copies " + std::to_string(*c1) + "," + std::to_string(*c2) +
                            ": glued endpoints land on different vertices; " + describe_copy_relation(q, *c1, *c2));
                        return false;
                    }
                    return true;
                });
                if (failed) {
                    qc.condition_iii = false;
                    return;
                }
                if (truncated)
                    merge(ctx.report.condition_iii, ConditionStatus::Truncated);
            }
        }
    }

    auto check_lemma1(const IndicatorGadget & g, const Lemma1Options & options) -> Lemma1Report
    {
        Lemma1Report report;
        report.q_arc_bound = options.q_arc_bound;
        report.method = options.method;
        report.collapse_valid = is_homomorphism(g.collapse) && is_homomorphism(g.split.h) &&
            g.collapse.map.front() == g.split.v1 && g.collapse.map.back() == g.split.v2;

        LemmaContext ctx{g, options, path_to_tree(g.indicator), path_to_tree(g.lower), path_to_tree(g.upper), report};

        for (auto & q : all_paths(1, options.q_arc_bound)) {
            QCheck qc{q};
            auto s = phi(g, q);
            auto image = path_to_tree(s.path);

            qc.quotient_valid = is_homomorphism(quotient_map(g, s));
            check_interval(ctx, q, image, qc);
            if (options.method == CheckMethod::Exact) {
                check_single_copy_exact(ctx, q, s, image, qc);
                check_endpoints_exact(ctx, q, s, image, qc);
            }
            else {
                check_single_copy_enumerate(ctx, q, s, image, qc);
                check_endpoints_enumerate(ctx, q, s, image, qc);
            }
            report.per_q.push_back(qc);
        }
        return report;
    }

    auto verify_embedding(const IndicatorGadget & g, const vector<OrientedPath> & sample) -> EmbeddingReport
    {
        EmbeddingReport report;
        auto lower = path_to_tree(g.lower), upper = path_to_tree(g.upper);
        vector<OrientedTree> sources, images;
        for (auto & q : sample) {
            sources.push_back(path_to_tree(q));
            images.push_back(path_to_tree(phi(g, q).path));
            if (q.arc_count() > 0 && ! (strictly_less(lower, images.back()) && strictly_less(images.back(), upper)))
                report.outside_interval.push_back(q);
        }
        for (size_t i = 0; i < sample.size(); ++i)
            for (size_t j = 0; j < sample.size(); ++j) {
                ++report.pairs_checked;
                bool q_leq = leq(sources[i], sources[j]), phi_leq = leq(images[i], images[j]);
                if (q_leq != phi_leq)
                    report.counterexamples.push_back({sample[i], sample[j], q_leq, phi_leq});
            }
        return report;
    }

    auto build_indicator(const OrientedPath & lower, const OrientedPath & upper, const OrientedPath & p,
        const IndicatorOptions & options) -> BuiltIndicator
    {
        auto lower_t = path_to_tree(lower), upper_t = path_to_tree(upper), p_t = path_to_tree(p);
        if (! strictly_less(lower_t, p_t) || ! strictly_less(p_t, upper_t))
            throw PreconditionError{"build_indicator needs lower < P < upper"};
        if (height(upper) < 4)
            throw PreconditionError{"build_indicator needs an upper path of height at least 4"};
        if (! is_core(p_t))
            throw PreconditionError{"build_indicator needs P to be a core"};

        SplitDecomposition base;
        if (options.collision) {
            auto h = exists_surjective_hom(p_t, upper_t);
            if (! h)
                throw PreconditionError{"no surjective homomorphism from P onto upper"};
            base = split_at_pair(p, *h, options.collision->first, options.collision->second);
            base.upper = upper;
        }
        else
            base = split_at_identified_pair(p, upper);

        auto arcs = p.arc_count();
        auto floor = options.zigzag_floor.value_or(std::max<size_t>(4, 2 * arcs));
        floor = std::max<size_t>(2, floor + floor % 2);
        auto ceiling = std::max(floor, options.zigzag_ceiling.value_or(8 * arcs));

        BuiltIndicator result;
        optional<Lemma1Report> last;
        for (auto z = floor; z <= ceiling; z += 2) {
            auto g = assemble_indicator(lower, upper, base, z, z);
            auto report = check_lemma1(g, Lemma1Options{options.q_arc_bound});
            result.lengths_tried.push_back(z);
            if (report.verified()) {
                if (options.growth_recheck_arcs > 0) {
                    auto grown = with_zigzag_lengths(g, z + 2, z + 2);
                    result.growth_recheck = check_lemma1(grown, Lemma1Options{options.growth_recheck_arcs}).verified();
                }
                result.gadget = std::move(g);
                result.report = std::move(report);
                return result;
            }
            last = std::move(report);
        }
        string detail = "no zig-zag length up to " + std::to_string(ceiling) + " passes all conditions";
        if (last)
            detail += " (last: i=" + to_string(last->condition_i.status) + ", ii=" + to_string(last->condition_ii.status) +
                ", iii=" + to_string(last->condition_iii.status) + ")";
        throw CannotSatisfy{detail};
    }

    namespace
    {
        auto scan_bases(const OrientedPath & lower, const OrientedPath & upper, size_t max_arcs,
            const std::function<auto (const OrientedPath &) -> bool> & visit) -> void
        {
            auto lower_t = path_to_tree(lower), upper_t = path_to_tree(upper);
            auto top = height(upper);
            for (size_t n = 0; n <= max_arcs; ++n) {
                bool more = for_each_path(n, top, [&](const OrientedPath & p) {
                    if (reverse(p) < p)
                        return true;
                    auto t = path_to_tree(p);
                    if (! strictly_less(lower_t, t) || ! strictly_less(t, upper_t) || ! is_core(t))
                        return true;
                    auto h = exists_surjective_hom(t, upper_t);
                    if (! h || collision_pairs(*h).empty())
                        return true;
                    return visit(p);
                });
                if (! more)
                    return;
            }
        }
    }

    auto indicator_bases(const OrientedPath & lower, const OrientedPath & upper, size_t max_arcs) -> vector<OrientedPath>
    {
        vector<OrientedPath> result;
        scan_bases(lower, upper, max_arcs, [&](const OrientedPath & p) {
            result.push_back(p);
            return true;
        });
        return result;
    }

    auto find_indicator_base(const OrientedPath & lower, const OrientedPath & upper, size_t max_arcs) -> optional<OrientedPath>
    {
        optional<OrientedPath> found;
        scan_bases(lower, upper, max_arcs, [&](const OrientedPath & p) {
            found = p;
            return false;
        });
        return found;
    }
}
