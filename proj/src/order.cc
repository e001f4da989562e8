#include <homorder/catalog.hh>
#include <homorder/order.hh>

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace homorder
{
    auto leq(const OrientedTree & a, const OrientedTree & b) -> bool
    {
        return TreeSolver{a, b}.solve(unrestricted(a)).has_value();
    }

    auto strictly_less(const OrientedTree & a, const OrientedTree & b) -> bool
    {
        return leq(a, b) && ! leq(b, a);
    }

    auto hom_equivalent(const OrientedTree & a, const OrientedTree & b) -> bool
    {
        return leq(a, b) && leq(b, a);
    }

    auto incomparable(const OrientedTree & a, const OrientedTree & b) -> bool
    {
        return ! leq(a, b) && ! leq(b, a);
    }

    namespace
    {
        auto without(const OrientedTree & t, Vertex v) -> vector<Vertex>
        {
            vector<Vertex> keep;
            keep.reserve(t.vertex_count() - 1);
            for (Vertex w = 0; w < t.vertex_count(); ++w)
                if (w != v)
                    keep.push_back(w);
            return keep;
        }
    }

    auto core(const OrientedTree & g, size_t vertex_budget) -> CoreResult
    {
        if (g.vertex_count() > vertex_budget)
            throw BudgetExceeded{"core computation limited to " + std::to_string(vertex_budget) + " vertices"};

        OrientedTree current = g;
        vector<Vertex> kept(g.vertex_count());
        std::iota(kept.begin(), kept.end(), 0);

        // A leaf that cannot be removed stays unremovable in every hom-equivalent
        // subtree, so each original vertex is tested at most once per time it is a leaf.
        std::set<Vertex> stuck;
        bool progress = true;
        while (progress && current.vertex_count() > 1) {
            progress = false;
            for (Vertex v = 0; v < current.vertex_count(); ++v) {
                if (current.degree(v) != 1 || stuck.contains(kept[v]))
                    continue;
                auto keep = without(current, v);
                auto smaller = current.induced(keep);
                if (leq(current, smaller)) {
                    vector<Vertex> next_kept;
                    next_kept.reserve(keep.size());
                    for (auto w : keep)
                        next_kept.push_back(kept[w]);
                    current = std::move(smaller);
                    kept = std::move(next_kept);
                    progress = true;
                    break;
                }
                stuck.insert(kept[v]);
            }
        }

        Restrictions fixed = unrestricted(g);
        for (Vertex c = 0; c < kept.size(); ++c)
            fixed[kept[c]] = single_vertex(current.vertex_count(), c);
        auto retraction = find_hom_dp(g, current, fixed);
        if (! retraction)
            throw HomorderError{"internal error: core is not a retract of its input"};
        return CoreResult{current, std::move(*retraction), std::move(kept)};
    }

    auto admits_no_proper_endomorphism(const OrientedTree & t, size_t cap) -> bool
    {
        auto endos = enumerate_homs_brute(t, t, cap);
        if (endos.truncated)
            throw BudgetExceeded{"endomorphism enumeration hit its cap"};
        for (auto & f : endos.homomorphisms) {
            vector<bool> hit(t.vertex_count(), false);
            for (auto v : f.map)
                hit[v] = true;
            if (std::find(hit.begin(), hit.end(), false) != hit.end())
                return false;
        }
        return true;
    }

    auto is_core(const OrientedTree & t) -> bool
    {
        if (t.vertex_count() == 1)
            return true;
        for (Vertex v = 0; v < t.vertex_count(); ++v)
            if (t.degree(v) == 1 && leq(t, t.induced(without(t, v))))
                return false;
        return true;
    }

    auto core_is_path(const OrientedTree & t) -> bool
    {
        return tree_is_path(core(t).core).has_value();
    }

    auto to_string(IntervalClass c) -> string
    {
        switch (c) {
            case IntervalClass::Universal: return "Universal";
            case IntervalClass::Chain: return "Chain";
            case IntervalClass::Gap: return "Gap";
            case IntervalClass::NotStrictlyOrdered: return "NotStrictlyOrdered";
        }
        return "?";
    }

    auto to_string(BetweenOutcome o) -> string
    {
        switch (o) {
            case BetweenOutcome::Found: return "Found";
            case BetweenOutcome::NoneWithinBound: return "NoneWithinBound";
            case BetweenOutcome::CertifiedGap: return "CertifiedGap";
        }
        return "?";
    }

    auto is_certified_gap(const OrientedTree & lower, const OrientedTree & upper) -> bool
    {
        auto lp = catalog_position(core(lower).core), up = catalog_position(core(upper).core);
        if (! lp || ! up)
            return false;
        return (*lp == "P0" && *up == "P1") || (*lp == "P1" && *up == "P2");
    }

    auto classify_interval(const OrientedTree & lower, const OrientedTree & upper, const IntervalOptions & options) -> IntervalReport
    {
        IntervalReport report;
        report.lower = lower;
        report.upper = upper;
        report.lower_height = height(lower);
        report.upper_height = height(upper);

        if (! strictly_less(lower, upper)) {
            report.classification = IntervalClass::NotStrictlyOrdered;
            report.lower_core = lower;
            report.upper_core = upper;
            report.notes.push_back(leq(lower, upper) ? "upper maps back to lower" : "lower does not map to upper");
            return report;
        }

        report.lower_core = core(lower).core;
        report.upper_core = core(upper).core;

        if (height(report.upper_core) >= 4) {
            report.classification = IntervalClass::Universal;
            report.notes.push_back("core of upper has height " + std::to_string(height(report.upper_core)) + " >= 4");
            return report;
        }

        report.classification = IntervalClass::Chain;
        report.lower_position = catalog_position(report.lower_core);
        report.upper_position = catalog_position(report.upper_core);
        report.notes.push_back("upper has height " + std::to_string(report.upper_height) + " <= 3");
        if (! report.lower_position || ! report.upper_position)
            report.notes.push_back("anomaly: a core of height <= 3 is missing from the catalogue");

        if (is_certified_gap(lower, upper)) {
            BetweenOptions search;
            search.max_arcs = options.gap_search_arcs;
            search.trust_certified_gaps = false;
            auto between = find_between(lower, upper, search);
            if (between.outcome == BetweenOutcome::NoneWithinBound) {
                report.classification = IntervalClass::Gap;
                report.searched_up_to_arcs = options.gap_search_arcs;
            }
            else
                report.notes.push_back("anomaly: certified gap has an element strictly between");
        }
        return report;
    }

    auto for_each_path(size_t n, int max_height, const std::function<auto (const OrientedPath &) -> bool> & visit) -> bool
    {
        vector<Direction> dirs(n);
        std::function<auto (size_t, int, int, int) -> bool> extend = [&](size_t i, int level, int low, int high) -> bool {
            if (i == n)
                return visit(OrientedPath{dirs});
            for (auto d : {Direction::Forward, Direction::Backward}) {
                int next = level + (d == Direction::Forward ? 1 : -1);
                int nlow = std::min(low, next), nhigh = std::max(high, next);
                if (nhigh - nlow > max_height)
                    continue;
                dirs[i] = d;
                if (! extend(i + 1, next, nlow, nhigh))
                    return false;
            }
            return true;
        };
        return extend(0, 0, 0, 0);
    }

    auto all_trees(size_t n) -> vector<OrientedTree>
    {
        if (n == 0)
            return {};
        vector<OrientedTree> result;
        std::set<string> seen;
        vector<std::pair<Vertex, Vertex>> arcs;
        std::function<auto (Vertex) -> void> grow = [&](Vertex v) {
            if (v == n) {
                OrientedTree t{n, arcs};
                if (seen.insert(canonical_form(t)).second)
                    result.push_back(std::move(t));
                return;
            }
            for (Vertex u = 0; u < v; ++u)
                for (bool out : {true, false}) {
                    arcs.push_back(out ? std::pair{u, v} : std::pair{v, u});
                    grow(v + 1);
                    arcs.pop_back();
                }
        };
        grow(1);
        return result;
    }

    auto find_between(const OrientedTree & lower, const OrientedTree & upper, const BetweenOptions & options) -> BetweenResult
    {
        if (! strictly_less(lower, upper))
            throw PreconditionError{"find_between needs lower < upper"};

        BetweenResult result;
        if (options.trust_certified_gaps && is_certified_gap(lower, upper)) {
            result.outcome = BetweenOutcome::CertifiedGap;
            return result;
        }

        int low_height = height(lower), high_height = height(upper);
        auto between = [&](const OrientedTree & c) {
            ++result.candidates_checked;
            return leq(lower, c) && leq(c, upper) && ! leq(c, lower) && ! leq(upper, c);
        };

        for (size_t n = 0; n <= options.max_arcs; ++n) {
            for_each_path(n, high_height, [&](const OrientedPath & p) {
                if (reverse(p) < p || height(p) < low_height)
                    return true;
                auto t = path_to_tree(p);
                if (between(t)) {
                    result.witness = std::move(t);
                    return false;
                }
                return true;
            });
            if (result.witness) {
                result.outcome = BetweenOutcome::Found;
                return result;
            }
        }

        for (size_t n = 4; n <= options.max_tree_vertices; ++n)
            for (auto & t : all_trees(n)) {
                if (tree_is_path(t))
                    continue;
                if (between(t)) {
                    result.witness = t;
                    result.outcome = BetweenOutcome::Found;
                    return result;
                }
            }

        result.outcome = BetweenOutcome::NoneWithinBound;
        return result;
    }
}
