#include <homorder/hom_engine.hh>

#include <algorithm>
#include <deque>
#include <limits>

using std::optional;
using std::size_t;
using std::uint64_t;
using std::vector;

namespace homorder
{
    auto is_homomorphism(const OrientedTree & source, const OrientedTree & target, const vector<Vertex> & map) -> bool
    {
        if (map.size() != source.vertex_count())
            return false;
        for (auto v : map)
            if (v >= target.vertex_count())
                return false;
        for (auto [u, v] : source.arcs())
            if (! target.has_arc(map[u], map[v]))
                return false;
        return true;
    }

    auto is_homomorphism(const Homomorphism & f) -> bool
    {
        return is_homomorphism(f.source, f.target, f.map);
    }

    auto validate(const Homomorphism & f) -> void
    {
        if (! is_homomorphism(f))
            throw HomorderError{"map is not an arc-preserving homomorphism"};
    }

    auto compose(const Homomorphism & first, const Homomorphism & second) -> Homomorphism
    {
        if (first.target.vertex_count() != second.source.vertex_count())
            throw PreconditionError{"cannot compose: target and source sizes differ"};
        vector<Vertex> map(first.map.size());
        for (size_t v = 0; v < map.size(); ++v)
            map[v] = second.map[first.map[v]];
        return Homomorphism{first.source, second.target, std::move(map)};
    }

    auto is_surjective(const Homomorphism & f) -> bool
    {
        vector<bool> hit(f.target.vertex_count(), false);
        for (auto v : f.map)
            hit[v] = true;
        return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    }

    namespace
    {
        struct BruteSearch
        {
            const OrientedTree & source;
            const OrientedTree & target;
            uint64_t node_budget;
            uint64_t nodes = 0;
            vector<Vertex> map;

            // Arcs joining v to lower-indexed vertices, checked once v is assigned.
            vector<vector<std::pair<Vertex, bool>>> back_arcs;

            BruteSearch(const OrientedTree & s, const OrientedTree & t, uint64_t budget) :
                source(s), target(t), node_budget(budget), map(s.vertex_count()), back_arcs(s.vertex_count())
            {
                for (auto [u, v] : s.arcs()) {
                    if (u < v)
                        back_arcs[v].emplace_back(u, true);
                    else
                        back_arcs[u].emplace_back(v, false);
                }
            }

            auto consistent(Vertex v) const -> bool
            {
                for (auto [w, w_is_tail] : back_arcs[v]) {
                    if (w_is_tail ? ! target.has_arc(map[w], map[v]) : ! target.has_arc(map[v], map[w]))
                        return false;
                }
                return true;
            }

            template <typename Visit_>
            auto search(Vertex v, Visit_ & visit) -> bool
            {
                if (v == source.vertex_count())
                    return visit(map);
                for (Vertex t = 0; t < target.vertex_count(); ++t) {
                    if (++nodes > node_budget)
                        throw BudgetExceeded{"brute-force homomorphism search exceeded node budget"};
                    map[v] = t;
                    if (consistent(v) && ! search(v + 1, visit))
                        return false;
                }
                return true;
            }
        };
    }

    auto find_hom_brute(const OrientedTree & source, const OrientedTree & target, uint64_t node_budget) -> optional<Homomorphism>
    {
        BruteSearch search{source, target, node_budget};
        optional<Homomorphism> result;
        auto visit = [&](const vector<Vertex> & map) {
            result = Homomorphism{source, target, map};
            return false;
        };
        search.search(0, visit);
        return result;
    }

    auto enumerate_homs_brute(const OrientedTree & source, const OrientedTree & target, size_t cap, uint64_t node_budget) -> Enumeration
    {
        BruteSearch search{source, target, node_budget};
        Enumeration result;
        auto visit = [&](const vector<Vertex> & map) {
            if (result.homomorphisms.size() == cap) {
                result.truncated = true;
                return false;
            }
            result.homomorphisms.push_back(Homomorphism{source, target, map});
            return true;
        };
        search.search(0, visit);
        return result;
    }

    auto unrestricted(const OrientedTree & source) -> Restrictions
    {
        return Restrictions(source.vertex_count());
    }

    auto single_vertex(size_t target_size, Vertex v) -> VertexSet
    {
        VertexSet s(target_size);
        s.set(v);
        return s;
    }

    TreeSolver::TreeSolver(const OrientedTree & source, const OrientedTree & target) :
        _source(source),
        _target(target),
        _parent(source.vertex_count(), -1),
        _parent_is_tail(source.vertex_count(), false),
        _out_sets(target.vertex_count(), VertexSet(target.vertex_count())),
        _in_sets(target.vertex_count(), VertexSet(target.vertex_count()))
    {
        for (auto [u, v] : target.arcs()) {
            _out_sets[u].set(v);
            _in_sets[v].set(u);
        }

        // iterative DFS preorder from 0, neighbours in ascending order
        vector<bool> seen(source.vertex_count(), false);
        vector<Vertex> stack{0};
        seen[0] = true;
        while (! stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            _preorder.push_back(v);
            auto & ns = source.neighbours(v);
            for (auto it = ns.rbegin(); it != ns.rend(); ++it)
                if (! seen[*it]) {
                    seen[*it] = true;
                    _parent[*it] = v;
                    _parent_is_tail[*it] = source.has_arc(v, *it);
                    stack.push_back(*it);
                }
        }
    }

    auto TreeSolver::support_towards_parent(Vertex child, const VertexSet & child_set) const -> VertexSet
    {
        VertexSet result(_target.vertex_count());
        auto & adjacency = _parent_is_tail[child] ? _in_sets : _out_sets;
        for (auto t = child_set.find_first(); t != VertexSet::npos; t = child_set.find_next(t))
            result |= adjacency[t];
        return result;
    }

    auto TreeSolver::support_from_parent(Vertex child, const VertexSet & parent_set) const -> VertexSet
    {
        VertexSet result(_target.vertex_count());
        auto & adjacency = _parent_is_tail[child] ? _out_sets : _in_sets;
        for (auto t = parent_set.find_first(); t != VertexSet::npos; t = parent_set.find_next(t))
            result |= adjacency[t];
        return result;
    }

    auto TreeSolver::candidates_given_parent(Vertex x, Vertex parent_image) const -> const VertexSet &
    {
        return _parent_is_tail[x] ? _out_sets[parent_image] : _in_sets[parent_image];
    }

    auto TreeSolver::upward(const Restrictions & restrictions) const -> optional<vector<VertexSet>>
    {
        vector<VertexSet> sets(_source.vertex_count(), VertexSet(_target.vertex_count()));
        for (Vertex x = 0; x < _source.vertex_count(); ++x) {
            if (restrictions.size() > x && restrictions[x])
                sets[x] = *restrictions[x];
            else
                sets[x].set();
        }

        for (auto it = _preorder.rbegin(); it != _preorder.rend(); ++it) {
            auto x = *it;
            if (sets[x].none())
                return std::nullopt;
            if (_parent[x] >= 0) {
                auto p = static_cast<Vertex>(_parent[x]);
                sets[p] &= support_towards_parent(x, sets[x]);
            }
        }
        return sets;
    }

    auto TreeSolver::possible_images(const Restrictions & restrictions) const -> optional<vector<VertexSet>>
    {
        auto sets = upward(restrictions);
        if (! sets)
            return std::nullopt;
        for (auto x : _preorder)
            if (_parent[x] >= 0)
                (*sets)[x] &= support_from_parent(x, (*sets)[static_cast<Vertex>(_parent[x])]);
        return sets;
    }

    auto TreeSolver::extract(const vector<VertexSet> & upward_sets) const -> vector<Vertex>
    {
        vector<Vertex> map(_source.vertex_count());
        for (auto x : _preorder) {
            if (_parent[x] < 0)
                map[x] = static_cast<Vertex>(upward_sets[x].find_first());
            else {
                auto choices = upward_sets[x] & candidates_given_parent(x, map[static_cast<Vertex>(_parent[x])]);
                map[x] = static_cast<Vertex>(choices.find_first());
            }
        }
        return map;
    }

    auto TreeSolver::solve(const Restrictions & restrictions) const -> optional<vector<Vertex>>
    {
        auto sets = upward(restrictions);
        if (! sets)
            return std::nullopt;
        return extract(*sets);
    }

    auto TreeSolver::count(const Restrictions & restrictions) const -> uint64_t
    {
        auto sets = upward(restrictions);
        if (! sets)
            return 0;

        auto n_target = _target.vertex_count();
        vector<vector<uint64_t>> counts(_source.vertex_count(), vector<uint64_t>(n_target, 0));
        for (Vertex x = 0; x < _source.vertex_count(); ++x)
            for (auto t = (*sets)[x].find_first(); t != VertexSet::npos; t = (*sets)[x].find_next(t))
                counts[x][t] = 1;

        for (auto it = _preorder.rbegin(); it != _preorder.rend(); ++it) {
            auto x = *it;
            if (_parent[x] < 0)
                continue;
            auto p = static_cast<Vertex>(_parent[x]);
            auto & ps = (*sets)[p];
            for (auto t = ps.find_first(); t != VertexSet::npos; t = ps.find_next(t)) {
                uint64_t sum = 0;
                auto & cand = candidates_given_parent(x, static_cast<Vertex>(t));
                for (auto u = cand.find_first(); u != VertexSet::npos; u = cand.find_next(u))
                    if (__builtin_add_overflow(sum, counts[x][u], &sum))
                        throw HomorderError{"homomorphism count overflows 64 bits"};
                if (__builtin_mul_overflow(counts[p][t], sum, &counts[p][t]))
                    throw HomorderError{"homomorphism count overflows 64 bits"};
            }
        }

        uint64_t total = 0;
        for (auto c : counts[_preorder.front()])
            if (__builtin_add_overflow(total, c, &total))
                throw HomorderError{"homomorphism count overflows 64 bits"};
        return total;
    }

    auto TreeSolver::for_each(const Restrictions & restrictions,
        const std::function<auto (const vector<Vertex> &) -> bool> & visit) const -> void
    {
        auto sets = possible_images(restrictions);
        if (! sets)
            return;

        // Exact image sets on a tree network make every partial assignment
        // along the preorder extendable, so this never backtracks into a dead end.
        vector<Vertex> map(_source.vertex_count());
        auto n = _preorder.size();
        std::function<auto (size_t) -> bool> descend = [&](size_t depth) -> bool {
            if (depth == n)
                return visit(map);
            auto x = _preorder[depth];
            VertexSet choices = (*sets)[x];
            if (_parent[x] >= 0)
                choices &= candidates_given_parent(x, map[static_cast<Vertex>(_parent[x])]);
            for (auto t = choices.find_first(); t != VertexSet::npos; t = choices.find_next(t)) {
                map[x] = static_cast<Vertex>(t);
                if (! descend(depth + 1))
                    return false;
            }
            return true;
        };
        descend(0);
    }

    auto find_hom_dp(const OrientedTree & source, const OrientedTree & target) -> optional<Homomorphism>
    {
        return find_hom_dp(source, target, unrestricted(source));
    }

    auto find_hom_dp(const OrientedTree & source, const OrientedTree & target, const Restrictions & restrictions) -> optional<Homomorphism>
    {
        TreeSolver solver{source, target};
        if (auto map = solver.solve(restrictions))
            return Homomorphism{source, target, std::move(*map)};
        return std::nullopt;
    }

    auto count_homs(const OrientedTree & source, const OrientedTree & target) -> uint64_t
    {
        return TreeSolver{source, target}.count(unrestricted(source));
    }

    auto enumerate_homs(const OrientedTree & source, const OrientedTree & target, size_t cap) -> Enumeration
    {
        TreeSolver solver{source, target};
        Enumeration result;
        solver.for_each(unrestricted(source), [&](const vector<Vertex> & map) {
            if (result.homomorphisms.size() == cap) {
                result.truncated = true;
                return false;
            }
            result.homomorphisms.push_back(Homomorphism{source, target, map});
            return true;
        });
        return result;
    }

    namespace
    {
        auto surjective_search(const OrientedTree & source, const OrientedTree & target,
            const Restrictions & restrictions, uint64_t node_budget) -> optional<Homomorphism>
        {
            auto n_target = target.vertex_count();
            if (source.vertex_count() < n_target)
                return std::nullopt;

            TreeSolver solver{source, target};
            auto sets = solver.possible_images(restrictions);
            if (! sets)
                return std::nullopt;

            auto & order = solver.preorder();
            auto n = order.size();

            // suffix[i]: targets still reachable by vertices order[i..]
            vector<VertexSet> suffix(n + 1, VertexSet(n_target));
            for (size_t i = n; i-- > 0;)
                suffix[i] = suffix[i + 1] | (*sets)[order[i]];
            if (! suffix[0].all())
                return std::nullopt;

            vector<Vertex> map(source.vertex_count());
            vector<unsigned> hits(n_target, 0);
            VertexSet covered(n_target);
            uint64_t nodes = 0;

            std::function<auto (size_t) -> bool> search = [&](size_t depth) -> bool {
                if (depth == n)
                    return covered.all();
                auto uncovered = ~covered;
                if (uncovered.count() > n - depth || ! uncovered.is_subset_of(suffix[depth]))
                    return false;

                auto x = order[depth];
                VertexSet choices = (*sets)[x];
                if (auto p = solver.parent(x))
                    choices &= solver.candidates_given_parent(x, map[*p]);
                for (auto t = choices.find_first(); t != VertexSet::npos; t = choices.find_next(t)) {
                    if (++nodes > node_budget)
                        throw BudgetExceeded{"surjective homomorphism search exceeded node budget"};
                    map[x] = static_cast<Vertex>(t);
                    if (hits[t]++ == 0)
                        covered.set(t);
                    bool found = search(depth + 1);
                    if (--hits[t] == 0)
                        covered.reset(t);
                    if (found)
                        return true;
                }
                return false;
            };

            if (search(0))
                return Homomorphism{source, target, map};
            return std::nullopt;
        }
    }

    auto exists_surjective_hom(const OrientedTree & source, const OrientedTree & target, uint64_t node_budget) -> optional<Homomorphism>
    {
        return surjective_search(source, target, unrestricted(source), node_budget);
    }

    auto is_rigid(const OrientedTree & t, uint64_t node_budget) -> bool
    {
        TreeSolver solver{t, t};
        auto sets = solver.possible_images(unrestricted(t));
        auto & order = solver.preorder();
        auto n = order.size();

        vector<Vertex> map(n);
        VertexSet used(n);
        uint64_t nodes = 0;
        bool found_other = false;

        // injective endomorphisms of a finite digraph are automorphisms
        std::function<auto (size_t, bool) -> void> search = [&](size_t depth, bool identity_so_far) {
            if (found_other)
                return;
            if (depth == n) {
                if (! identity_so_far)
                    found_other = true;
                return;
            }
            auto x = order[depth];
            VertexSet choices = (*sets)[x] - used;
            if (auto p = solver.parent(x))
                choices &= solver.candidates_given_parent(x, map[*p]);
            for (auto c = choices.find_first(); c != VertexSet::npos && ! found_other; c = choices.find_next(c)) {
                if (++nodes > node_budget)
                    throw BudgetExceeded{"automorphism search exceeded node budget"};
                map[x] = static_cast<Vertex>(c);
                used.set(c);
                search(depth + 1, identity_so_far && c == x);
                used.reset(c);
            }
        };
        search(0, true);
        return ! found_other;
    }

    auto all_pairs_distances(const OrientedTree & t) -> vector<vector<int>>
    {
        auto n = t.vertex_count();
        vector<vector<int>> d(n, vector<int>(n, -1));
        for (Vertex s = 0; s < n; ++s) {
            std::deque<Vertex> queue{s};
            d[s][s] = 0;
            while (! queue.empty()) {
                auto v = queue.front();
                queue.pop_front();
                for (auto w : t.neighbours(v))
                    if (d[s][w] < 0) {
                        d[s][w] = d[s][v] + 1;
                        queue.push_back(w);
                    }
            }
        }
        return d;
    }

    auto check_distance_property(const Homomorphism & f) -> bool
    {
        auto ds = all_pairs_distances(f.source), dt = all_pairs_distances(f.target);
        for (Vertex u = 0; u < f.source.vertex_count(); ++u)
            for (Vertex v = 0; v < f.source.vertex_count(); ++v)
                if (dt[f(u)][f(v)] > ds[u][v])
                    return false;
        return true;
    }

    auto preserves_level_differences(const Homomorphism & f) -> bool
    {
        auto ls = level_map(f.source), lt = level_map(f.target);
        for (Vertex u = 0; u < f.source.vertex_count(); ++u)
            if (lt[f(u)] - lt[f(0)] != ls[u] - ls[0])
                return false;
        return true;
    }

    auto run_query(const HomQuery & query) -> HomQueryResult
    {
        Restrictions restrictions = unrestricted(query.source);
        for (auto [v, t] : query.forced) {
            if (v >= query.source.vertex_count() || t >= query.target.vertex_count())
                throw PreconditionError{"forced image out of range"};
            restrictions[v] = single_vertex(query.target.vertex_count(), t);
        }

        HomQueryResult result;
        TreeSolver solver{query.source, query.target};
        if (query.surjective_only) {
            if (query.mode != QueryMode::Exists)
                throw PreconditionError{"surjective queries support existence only"};
            result.witness = surjective_search(query.source, query.target, restrictions, default_node_budget);
            return result;
        }

        switch (query.mode) {
            case QueryMode::Exists:
                if (auto map = solver.solve(restrictions))
                    result.witness = Homomorphism{query.source, query.target, std::move(*map)};
                break;
            case QueryMode::Count:
                result.count = solver.count(restrictions);
                break;
            case QueryMode::Enumerate:
                solver.for_each(restrictions, [&](const vector<Vertex> & map) {
                    if (result.enumeration.homomorphisms.size() == query.cap) {
                        result.enumeration.truncated = true;
                        return false;
                    }
                    result.enumeration.homomorphisms.push_back(Homomorphism{query.source, query.target, map});
                    return true;
                });
                result.count = result.enumeration.homomorphisms.size();
                break;
        }
        return result;
    }
}
