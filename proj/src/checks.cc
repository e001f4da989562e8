#include <homorder/catalog.hh>
#include <homorder/checks.hh>
#include <homorder/order.hh>

using std::size_t;
using std::string;
using std::vector;

namespace homorder
{
    auto to_string(CheckStatus s) -> string
    {
        switch (s) {
            case CheckStatus::Pass: return "pass";
            case CheckStatus::Fail: return "fail";
            case CheckStatus::Truncated: return "truncated";
            case CheckStatus::Error: return "error";
        }
        return "?";
    }

    auto random_tree(size_t n, std::mt19937_64 & rng) -> OrientedTree
    {
        vector<std::pair<Vertex, Vertex>> arcs;
        for (Vertex v = 1; v < n; ++v) {
            auto u = std::uniform_int_distribution<Vertex>{0, v - 1}(rng);
            if (std::bernoulli_distribution{0.5}(rng))
                arcs.emplace_back(u, v);
            else
                arcs.emplace_back(v, u);
        }
        return OrientedTree{n, arcs};
    }

    namespace
    {
        auto paths_up_to(size_t max_arcs) -> vector<OrientedPath>
        {
            vector<OrientedPath> result;
            for (size_t n = 0; n <= max_arcs; ++n)
                for_each_path(n, INT32_MAX, [&](const OrientedPath & p) {
                    result.push_back(p);
                    return true;
                });
            return result;
        }

        auto fail(string detail) -> CheckOutcome
        {
            return CheckOutcome{CheckStatus::Fail, std::move(detail)};
        }
    }

    auto oracle_sweep(size_t max_path_arcs, size_t random_pairs, size_t max_vertices, std::uint64_t seed) -> CheckOutcome
    {
        CheckOutcome out;
        size_t compared = 0, disagreements = 0;
        string first;
        auto compare = [&](const OrientedTree & a, const OrientedTree & b, const string & label) {
            ++compared;
            auto dp = find_hom_dp(a, b);
            auto brute = find_hom_brute(a, b);
            bool agree = dp.has_value() == brute.has_value() && (! dp || is_homomorphism(*dp));
            if (! agree && disagreements++ == 0)
                first = label;
        };

        try {
            vector<OrientedTree> paths;
            vector<string> names;
            for (auto & p : paths_up_to(max_path_arcs)) {
                paths.push_back(path_to_tree(p));
                names.push_back(p.to_string());
            }
            for (size_t i = 0; i < paths.size(); ++i)
                for (size_t j = 0; j < paths.size(); ++j)
                    compare(paths[i], paths[j], "'" + names[i] + "' -> '" + names[j] + "'");

            std::mt19937_64 rng{seed};
            std::uniform_int_distribution<size_t> size{1, std::max<size_t>(1, max_vertices)};
            for (size_t k = 0; k < random_pairs; ++k) {
                auto a = random_tree(size(rng), rng);
                auto b = random_tree(size(rng), rng);
                compare(a, b, "random pair " + std::to_string(k));
            }
        }
        catch (const BudgetExceeded & e) {
            out.status = CheckStatus::Truncated;
            out.detail = e.what();
        }

        out.data = Json{{"pairs", compared}, {"disagreements", disagreements}, {"seed", seed}};
        if (disagreements > 0) {
            out.status = CheckStatus::Fail;
            out.detail = std::to_string(disagreements) + " disagreements, first on " + first;
        }
        else if (out.status == CheckStatus::Pass)
            out.detail = std::to_string(compared) + " pairs agree";
        return out;
    }

    auto bottom_chain_check(size_t k_max) -> CheckOutcome
    {
        try {
            auto chain = bottom_chain(k_max);
            if (! isomorphic(path_to_tree(l_path(0)), path_to_tree(directed_path(3))))
                return fail("L0 is not isomorphic to the directed path of length 3");
            CheckOutcome out;
            out.detail = std::to_string(chain.elements.size()) + " elements totally ordered";
            out.data = Json{{"names", chain.names}};
            return out;
        }
        catch (const HomorderError & e) {
            return fail(e.what());
        }
    }

    auto gap_check(size_t max_arcs) -> CheckOutcome
    {
        CheckOutcome out;
        BetweenOptions options;
        options.max_arcs = max_arcs;
        options.trust_certified_gaps = false;
        Json data = Json::object();
        for (size_t n = 0; n < 2; ++n) {
            auto lower = path_to_tree(directed_path(n)), upper = path_to_tree(directed_path(n + 1));
            auto r = find_between(lower, upper, options);
            auto name = "P" + std::to_string(n) + "_P" + std::to_string(n + 1);
            data[name] = Json{{"outcome", to_string(r.outcome)}, {"candidates_checked", r.candidates_checked}};
            if (r.outcome == BetweenOutcome::Found)
                return fail("found " + format_structure(*r.witness) + " strictly inside " + name);
        }
        out.detail = "no path with at most " + std::to_string(max_arcs) + " arcs inside either gap";
        out.data = data;
        return out;
    }

    auto height3_core_check(size_t max_arcs) -> CheckOutcome
    {
        size_t checked = 0;
        for (auto & p : paths_up_to(max_arcs)) {
            if (height(p) > 3)
                continue;
            ++checked;
            auto c = core(path_to_tree(p)).core;
            if (! catalog_position(c))
                return fail("core of " + p.to_string() + " is " + format_structure(c) + ", not catalogued");
        }
        CheckOutcome out;
        out.detail = std::to_string(checked) + " paths of height at most 3";
        out.data = Json{{"paths", checked}};
        return out;
    }

    auto rigidity_check(size_t max_arcs) -> CheckOutcome
    {
        size_t cores = 0;
        try {
            for (auto & p : paths_up_to(max_arcs)) {
                if (reverse(p) < p)
                    continue;
                auto t = path_to_tree(p);
                if (! is_core(t))
                    continue;
                ++cores;
                if (! is_rigid(t))
                    return fail("path core " + p.to_string() + " has a non-trivial automorphism");
            }
        }
        catch (const BudgetExceeded & e) {
            return CheckOutcome{CheckStatus::Truncated, e.what()};
        }
        CheckOutcome out;
        out.detail = std::to_string(cores) + " path cores rigid";
        out.data = Json{{"cores", cores}};
        return out;
    }

    auto distance_level_check(size_t count, size_t max_vertices, std::uint64_t seed) -> CheckOutcome
    {
        std::mt19937_64 rng{seed};
        std::uniform_int_distribution<size_t> size{1, std::max<size_t>(1, max_vertices)};
        size_t checked = 0, attempts = 0;
        while (checked < count) {
            if (++attempts > 100 * count + 1000)
                return CheckOutcome{CheckStatus::Truncated, "too few homomorphisms among random pairs"};
            auto a = random_tree(size(rng), rng);
            auto b = random_tree(size(rng), rng);
            auto homs = enumerate_homs(a, b, 8);
            for (auto & f : homs.homomorphisms) {
                if (checked == count)
                    break;
                ++checked;
                if (! check_distance_property(f))
                    return fail("distance property fails on homomorphism " + std::to_string(checked));
                if (! preserves_level_differences(f))
                    return fail("level differences not preserved on homomorphism " + std::to_string(checked));
            }
        }
        CheckOutcome out;
        out.detail = std::to_string(checked) + " homomorphisms";
        out.data = Json{{"homomorphisms", checked}, {"seed", seed}};
        return out;
    }
}
