#include <homorder/catalog.hh>
#include <homorder/checks.hh>
#include <homorder/cli.hh>
#include <homorder/gadget.hh>
#include <homorder/order.hh>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;

using std::optional;
using std::ostream;
using std::size_t;
using std::string;
using std::vector;

namespace homorder::cli
{
    namespace
    {
        auto read_file(const fs::path & path) -> string
        {
            std::ifstream in{path};
            if (! in)
                throw ParseError{"cannot read " + path.string()};
            std::ostringstream text;
            text << in.rdbuf();
            return text.str();
        }

        auto is_direction_string(const string & s) -> bool
        {
            return std::all_of(s.begin(), s.end(), [](char c) { return c == 'F' || c == 'B'; });
        }

        auto load_json(const fs::path & path) -> Json
        {
            try {
                return Json::parse(read_file(path));
            }
            catch (const nlohmann::json::parse_error & e) {
                throw ParseError{"invalid JSON in " + path.string() + ": " + e.what()};
            }
        }

        auto map_text(const vector<Vertex> & map) -> string
        {
            string out;
            for (auto v : map)
                out += (out.empty() ? "" : " ") + std::to_string(v);
            return out;
        }

        auto status_exit(const Lemma1Report & r) -> int
        {
            if (r.verified())
                return exit_true;
            for (auto * c : {&r.condition_i, &r.condition_ii, &r.condition_iii})
                if (c->status == ConditionStatus::FailedWithWitness)
                    return exit_false;
            if (! r.collapse_valid)
                return exit_false;
            return exit_error;
        }

        auto describe(const Lemma1Report & r, ostream & out) -> void
        {
            auto line = [&](const char * name, const ConditionResult & c) {
                out << "condition " << name << ": " << to_string(c.status);
                if (c.q)
                    out << " (Q = " << c.q->to_string() << ")";
                if (! c.detail.empty())
                    out << ": " << c.detail;
                out << '\n';
                if (c.witness)
                    out << "  witness map: " << map_text(c.witness->map) << '\n';
            };
            line("(i)", r.condition_i);
            line("(ii)", r.condition_ii);
            line("(iii)", r.condition_iii);
            out << "collapse map valid: " << (r.collapse_valid ? "yes" : "no") << '\n';
            out << "paths Q checked: " << r.per_q.size() << " (arcs <= " << r.q_arc_bound << ")\n";
            out << "verified: " << (r.verified() ? "yes" : "no") << '\n';
        }

        auto describe(const IndicatorGadget & g, ostream & out) -> void
        {
            out << "interval: " << g.lower.to_string() << " < " << g.base_split.path.to_string() << " < " << g.upper.to_string() << '\n';
            out << "collision pair: " << g.base_split.v1 << ", " << g.base_split.v2 << " (" << to_string(g.base_shape) << ")\n";
            out << "variant: " << to_string(g.variant) << '\n';
            if (g.variant != GadgetVariant::Standard)
                out << "auxiliary path: " << g.split.path.to_string() << " split at " << g.split.v1 << ", " << g.split.v2 << '\n';
            out << "A = " << g.split.a.to_string() << ", B = " << g.split.b.to_string() << ", C = " << g.split.c.to_string() << '\n';
            out << "zig-zag lengths: " << g.z1_len << ", " << g.z2_len << '\n';
            out << "I = " << g.indicator.to_string() << " (" << g.indicator.arc_count() << " arcs)\n";
        }

        auto write_or_print(const Json & j, const string & out_file, bool json, ostream & out) -> void
        {
            if (! out_file.empty()) {
                std::ofstream f{out_file};
                if (! f)
                    throw ParseError{"cannot write " + out_file};
                f << j.dump(2) << '\n';
            }
            if (json)
                out << j.dump(2) << '\n';
        }

        auto check_method(const string & s) -> CheckMethod
        {
            if (s == "exact")
                return CheckMethod::Exact;
            if (s == "enumerate")
                return CheckMethod::Enumerate;
            throw ParseError{"unknown method '" + s + "'"};
        }

        auto sample_paths(size_t max_arcs, optional<size_t> sample, std::uint64_t seed) -> vector<OrientedPath>
        {
            auto all = all_paths(0, max_arcs);
            if (! sample || *sample >= all.size())
                return all;
            vector<OrientedPath> chosen;
            std::mt19937_64 rng{seed};
            std::sample(all.begin(), all.end(), std::back_inserter(chosen), *sample, rng);
            return chosen;
        }

        auto condition_summary(const Lemma1Report & r) -> string
        {
            string out;
            auto add = [&](const char * name, const ConditionResult & c) {
                out += (out.empty() ? "" : ", ") + string{name} + "=" + to_string(c.status);
                if (c.status == ConditionStatus::FailedWithWitness && c.q)
                    out += " on Q=" + c.q->to_string() + (c.witness && is_homomorphism(*c.witness) ? " (witness validated)" : " (witness invalid)");
            };
            add("(i)", r.condition_i);
            add("(ii)", r.condition_ii);
            add("(iii)", r.condition_iii);
            return out;
        }

        auto run_check(const Json & item, const fs::path & base) -> CheckOutcome
        {
            auto kind = item.at("kind").get<string>();
            auto file = [&](const char * key) { return base / item.at(key).get<string>(); };
            auto number = [&](const char * key, size_t fallback) { return item.value(key, fallback); };

            if (kind == "oracle-sweep")
                return oracle_sweep(number("max_arcs", 6), number("random_pairs", 1000), number("max_vertices", 8), item.value("seed", std::uint64_t{1}));
            if (kind == "bottom-chain")
                return bottom_chain_check(number("k_max", 6));
            if (kind == "gaps")
                return gap_check(number("max_arcs", 10));
            if (kind == "height3-cores")
                return height3_core_check(number("max_arcs", 8));
            if (kind == "rigidity")
                return rigidity_check(number("max_arcs", 9));
            if (kind == "distance-levels")
                return distance_level_check(number("count", 500), number("max_vertices", 8), item.value("seed", std::uint64_t{1}));
            if (kind == "classify") {
                auto r = classify_interval(load_structure(item.at("lower").get<string>()), load_structure(item.at("upper").get<string>()));
                auto got = to_string(r.classification), want = item.at("expect").get<string>();
                CheckOutcome out{got == want ? CheckStatus::Pass : CheckStatus::Fail, "classified " + got + ", expected " + want};
                out.data = to_json(r);
                return out;
            }
            if (kind == "gadget") {
                auto g = gadget_from_json(load_json(file("bundle")));
                if (item.contains("force_zigzag")) {
                    auto z = item["force_zigzag"].get<size_t>();
                    g = with_zigzag_lengths(g, z, z);
                }
                Lemma1Options options;
                options.q_arc_bound = number("q_bound", 3);
                options.method = check_method(item.value("method", string{"exact"}));
                auto r = check_lemma1(g, options);
                CheckOutcome out;
                auto code = status_exit(r);
                out.status = code == exit_true ? CheckStatus::Pass : code == exit_false ? CheckStatus::Fail : CheckStatus::Truncated;
                out.detail = "zig-zags " + std::to_string(g.z1_len) + ": " + condition_summary(r);
                out.data = to_json(r);
                return out;
            }
            if (kind == "embedding") {
                auto g = gadget_from_json(load_json(file("bundle")));
                auto r = verify_embedding(g, all_paths(0, number("max_arcs", 3)));
                CheckOutcome out{r.passed() ? CheckStatus::Pass : CheckStatus::Fail,
                    std::to_string(r.pairs_checked) + " pairs, " + std::to_string(r.counterexamples.size()) + " counterexamples, " +
                        std::to_string(r.outside_interval.size()) + " outside the interval"};
                out.data = to_json(r);
                return out;
            }
            throw ParseError{"unknown check kind '" + kind + "'"};
        }
    }

    auto load_structure(const string & source) -> OrientedTree
    {
        if (! source.empty() && fs::is_regular_file(source))
            return parse_structure(read_file(source));
        if (is_direction_string(source))
            return path_to_tree(OrientedPath::from_string(source));
        throw ParseError{"'" + source + "' is neither a readable file nor a direction string"};
    }

    auto load_path(const string & source) -> OrientedPath
    {
        auto t = load_structure(source);
        if (auto p = numbered_path(t))
            return *p;
        throw ParseError{"'" + source + "' is not a path"};
    }

    auto batch_verify(const fs::path & manifest) -> BatchResult
    {
        auto doc = load_json(manifest);
        auto base = manifest.parent_path();
        Json checks = doc.is_object() && doc.contains("checks") ? doc["checks"] : Json::array();
        if (! checks.is_array())
            throw ParseError{"manifest \"checks\" must be an array"};

        vector<Json> items(checks.begin(), checks.end());
        std::stable_sort(items.begin(), items.end(), [](const Json & a, const Json & b) {
            return a.value("name", string{}) < b.value("name", string{});
        });

        BatchResult result;
        Json results = Json::array();
        size_t passed = 0, failed = 0, other = 0;
        for (auto & item : items) {
            CheckOutcome outcome;
            try {
                outcome = run_check(item, base);
            }
            catch (const BudgetExceeded & e) {
                outcome = CheckOutcome{CheckStatus::Truncated, e.what()};
            }
            catch (const std::exception & e) {
                outcome = CheckOutcome{CheckStatus::Error, e.what()};
            }
            switch (outcome.status) {
                case CheckStatus::Pass: ++passed; break;
                case CheckStatus::Fail: ++failed; break;
                default: ++other; break;
            }
            results.push_back(Json{
                {"name", item.value("name", string{})},
                {"kind", item.value("kind", string{})},
                {"status", to_string(outcome.status)},
                {"detail", outcome.detail},
                {"data", outcome.data},
            });
        }
        result.report = Json{{"checks", results}, {"passed", passed}, {"failed", failed}, {"errors_or_truncated", other}};
        result.exit_code = other > 0 ? exit_error : failed > 0 ? exit_false : exit_true;
        return result;
    }

    auto run(const vector<string> & args, ostream & out, ostream & err) -> int
    {
        CLI::App app{"Homomorphism order of oriented paths and trees", "homorder"};
        app.require_subcommand(1);
        app.fallthrough();

        bool json = false;
        app.add_flag("--json", json, "Print a JSON report");

        // hom
        string from, to, oracle = "dp";
        bool count = false, enumerate = false, surjective = false;
        optional<std::uint64_t> budget;
        auto * hom = app.add_subcommand("hom", "Decide, count or enumerate homomorphisms");
        hom->add_option("--from", from, "Source structure (file or direction string)")->required();
        hom->add_option("--to", to, "Target structure")->required();
        hom->add_option("--oracle", oracle, "Decision procedure")->check(CLI::IsMember({"dp", "brute"}));
        hom->add_flag("--count", count, "Count homomorphisms");
        hom->add_flag("--enumerate", enumerate, "List homomorphisms");
        hom->add_flag("--surjective", surjective, "Require a vertex-surjective homomorphism");
        hom->add_option("--budget", budget, "Search node budget, or enumeration cap with --enumerate");

        // core, height, export-dot
        string input, dot_name = "G";
        auto * core_cmd = app.add_subcommand("core", "Core and retraction of a structure");
        core_cmd->add_option("input", input)->required();
        auto * height_cmd = app.add_subcommand("height", "Height and level map");
        height_cmd->add_option("input", input)->required();
        auto * dot = app.add_subcommand("export-dot", "Graphviz rendering, one rank per level");
        dot->add_option("input", input)->required();
        dot->add_option("--name", dot_name, "Graph name");

        // classify, between
        string lower, upper;
        size_t max_arcs = 0, tree_vertices = 0;
        auto * classify = app.add_subcommand("classify", "Classify the interval [lower, upper]");
        classify->add_option("--lower", lower)->required();
        classify->add_option("--upper", upper)->required();
        classify->add_option("--max-arcs", max_arcs, "Gap search bound (default 20)");
        auto * between = app.add_subcommand("between", "Search for a structure strictly between two others");
        between->add_option("--lower", lower)->required();
        between->add_option("--upper", upper)->required();
        between->add_option("--max-arcs", max_arcs, "Path search bound (default 20)");
        between->add_option("--max-tree-vertices", tree_vertices, "Also try trees up to this size");

        // catalog
        size_t n = 0;
        string start = "F";
        auto * catalog = app.add_subcommand("catalog", "Generate catalogue paths");
        catalog->require_subcommand(1);
        auto * dpath = catalog->add_subcommand("dpath", "Directed path with N arcs");
        dpath->add_option("n", n)->required();
        auto * lpath = catalog->add_subcommand("lpath", "Height-3 core L_K");
        lpath->add_option("k", n)->required();
        auto * zig = catalog->add_subcommand("zigzag", "Alternating path with N arcs");
        zig->add_option("n", n)->required();
        zig->add_option("--start", start, "First arc direction")->check(CLI::IsMember({"F", "B"}));
        auto * chain = catalog->add_subcommand("chain", "Bottom chain up to L_K, order-checked");
        chain->add_option("k", n)->required();

        // gadget, embed-verify
        string base, bundle, out_file, method = "exact";
        size_t q_bound = 3;
        optional<size_t> force_zigzag, sample;
        std::uint64_t seed = 1;
        vector<Vertex> pair;
        auto * gadget = app.add_subcommand("gadget", "Indicator gadget construction and verification");
        gadget->require_subcommand(1);
        auto * build = gadget->add_subcommand("build", "Build an indicator by verify-and-grow");
        build->add_option("--lower", lower)->required();
        build->add_option("--upper", upper)->required();
        build->add_option("--base", base, "Path P strictly inside the interval (searched for when omitted)");
        build->add_option("--pair", pair, "Collision pair v1 v2")->expected(2);
        build->add_option("--max-arcs", max_arcs, "Bound for the search for P (default 14)");
        build->add_option("--q-bound", q_bound, "Check paths Q with at most this many arcs");
        build->add_option("--force-zigzag", force_zigzag, "Use this zig-zag length, no growth");
        build->add_option("--out", out_file, "Write the bundle here");
        auto * verify = gadget->add_subcommand("verify", "Re-check a gadget bundle");
        verify->add_option("bundle", bundle)->required();
        verify->add_option("--q-bound", q_bound, "Check paths Q with at most this many arcs");
        verify->add_option("--force-zigzag", force_zigzag, "Rebuild with this zig-zag length first");
        verify->add_option("--method", method, "exact or enumerate")->check(CLI::IsMember({"exact", "enumerate"}));
        verify->add_option("--budget", budget, "Enumeration cap");
        auto * embed = app.add_subcommand("embed-verify", "Check that a gadget embeds the path order");
        embed->add_option("bundle", bundle)->required();
        embed->add_option("--max-arcs", max_arcs, "Paths with at most this many arcs (default 3)");
        embed->add_option("--sample", sample, "Random sample of this many paths");
        embed->add_option("--seed", seed, "Sampling seed");

        string manifest;
        auto * batch = app.add_subcommand("batch-verify", "Run the checks listed in a manifest");
        batch->add_option("manifest", manifest)->required();

        try {
            vector<string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        }
        catch (const CLI::ParseError & e) {
            auto code = app.exit(e, out, err);
            return code == 0 ? exit_true : exit_error;
        }

        try {
            if (hom->parsed()) {
                auto s = load_structure(from), t = load_structure(to);
                auto node_budget = budget.value_or(default_node_budget);
                if (count) {
                    auto c = count_homs(s, t);
                    if (json)
                        out << Json{{"count", c}}.dump(2) << '\n';
                    else
                        out << "count: " << c << '\n';
                    return c > 0 ? exit_true : exit_false;
                }
                if (enumerate) {
                    auto cap = budget ? static_cast<size_t>(*budget) : default_enumeration_cap;
                    auto e = oracle == "brute" ? enumerate_homs_brute(s, t, cap) : enumerate_homs(s, t, cap);
                    for (auto & f : e.homomorphisms)
                        validate(f);
                    if (json) {
                        Json maps = Json::array();
                        for (auto & f : e.homomorphisms)
                            maps.push_back(to_json(f));
                        out << Json{{"homomorphisms", maps}, {"truncated", e.truncated}}.dump(2) << '\n';
                    }
                    else {
                        for (auto & f : e.homomorphisms)
                            out << map_text(f.map) << '\n';
                        out << e.homomorphisms.size() << " homomorphisms" << (e.truncated ? " (truncated)" : "") << '\n';
                    }
                    if (e.truncated)
                        return exit_error;
                    return e.homomorphisms.empty() ? exit_false : exit_true;
                }
                optional<Homomorphism> f;
                if (surjective)
                    f = exists_surjective_hom(s, t, node_budget);
                else if (oracle == "brute")
                    f = find_hom_brute(s, t, node_budget);
                else
                    f = find_hom_dp(s, t);
                if (f)
                    validate(*f);
                if (json)
                    out << Json{{"exists", f.has_value()}, {"oracle", oracle}, {"surjective", surjective},
                                   {"witness", f ? to_json(*f) : Json()}}.dump(2) << '\n';
                else {
                    out << "homomorphism: " << (f ? "yes" : "no") << '\n';
                    if (f)
                        out << "map: " << map_text(f->map) << '\n';
                }
                return f ? exit_true : exit_false;
            }

            if (core_cmd->parsed()) {
                auto r = core(load_structure(input));
                validate(r.retraction);
                if (json)
                    out << to_json(r).dump(2) << '\n';
                else {
                    out << format_structure(r.core);
                    out << "retraction: " << map_text(r.retraction.map) << '\n';
                }
                return exit_true;
            }

            if (height_cmd->parsed()) {
                auto t = load_structure(input);
                auto levels = level_map(t);
                if (json)
                    out << Json{{"height", levels.height()}, {"levels", levels.levels}}.dump(2) << '\n';
                else {
                    out << "height: " << levels.height() << '\n';
                    string text;
                    for (auto l : levels.levels)
                        text += (text.empty() ? "" : " ") + std::to_string(l);
                    out << "levels: " << text << '\n';
                }
                return exit_true;
            }

            if (dot->parsed()) {
                out << to_dot(load_structure(input), dot_name);
                return exit_true;
            }

            if (classify->parsed()) {
                IntervalOptions options;
                if (max_arcs > 0)
                    options.gap_search_arcs = max_arcs;
                auto r = classify_interval(load_structure(lower), load_structure(upper), options);
                if (json)
                    out << to_json(r).dump(2) << '\n';
                else {
                    out << to_string(r.classification) << '\n';
                    for (auto & note : r.notes)
                        out << "note: " << note << '\n';
                }
                return r.classification == IntervalClass::NotStrictlyOrdered ? exit_false : exit_true;
            }

            if (between->parsed()) {
                BetweenOptions options;
                if (max_arcs > 0)
                    options.max_arcs = max_arcs;
                options.max_tree_vertices = tree_vertices;
                auto r = find_between(load_structure(lower), load_structure(upper), options);
                if (json)
                    out << Json{{"outcome", to_string(r.outcome)}, {"candidates_checked", r.candidates_checked},
                                   {"witness", r.witness ? structure_to_json(*r.witness) : Json()}}.dump(2) << '\n';
                else {
                    out << to_string(r.outcome) << '\n';
                    if (r.witness)
                        out << format_structure(*r.witness);
                }
                return r.outcome == BetweenOutcome::Found ? exit_true : exit_false;
            }

            if (catalog->parsed()) {
                if (chain->parsed()) {
                    auto c = bottom_chain(n);
                    if (json) {
                        Json items = Json::array();
                        for (size_t i = 0; i < c.elements.size(); ++i)
                            items.push_back(Json{{"name", c.names[i]}, {"path", c.elements[i].to_string()}});
                        out << Json{{"chain", items}}.dump(2) << '\n';
                    }
                    else
                        for (size_t i = 0; i < c.elements.size(); ++i)
                            out << c.names[i] << ' ' << c.elements[i].to_string() << '\n';
                    return exit_true;
                }
                OrientedPath p;
                if (dpath->parsed())
                    p = directed_path(n);
                else if (lpath->parsed())
                    p = l_path(n);
                else
                    p = zigzag(n, start == "F" ? Direction::Forward : Direction::Backward);
                out << p.to_string() << '\n';
                return exit_true;
            }

            if (build->parsed()) {
                auto lo = load_path(lower), up = load_path(upper);
                OrientedPath p;
                if (! base.empty())
                    p = load_path(base);
                else if (auto found = find_indicator_base(lo, up, max_arcs > 0 ? max_arcs : 14))
                    p = *found;
                else {
                    err << "no path strictly inside the interval admits a surjection onto upper within the bound\n";
                    return exit_false;
                }

                IndicatorOptions options;
                options.q_arc_bound = q_bound;
                if (pair.size() == 2)
                    options.collision = std::pair{pair[0], pair[1]};

                Json doc;
                Lemma1Report report;
                IndicatorGadget g;
                if (force_zigzag) {
                    auto lt = path_to_tree(lo), ut = path_to_tree(up), pt = path_to_tree(p);
                    if (! strictly_less(lt, pt) || ! strictly_less(pt, ut))
                        throw PreconditionError{"build needs lower < P < upper"};
                    SplitDecomposition split;
                    if (options.collision) {
                        auto h = exists_surjective_hom(pt, ut);
                        if (! h)
                            throw PreconditionError{"no surjective homomorphism from P onto upper"};
                        split = split_at_pair(p, *h, options.collision->first, options.collision->second);
                        split.upper = up;
                    }
                    else
                        split = split_at_identified_pair(p, up);
                    g = assemble_indicator(lo, up, split, *force_zigzag, *force_zigzag);
                    report = check_lemma1(g, Lemma1Options{q_bound});
                    doc = gadget_to_json(g);
                    doc["lengths_tried"] = Json::array({*force_zigzag});
                    doc["growth_recheck"] = Json();
                }
                else {
                    auto built = build_indicator(lo, up, p, options);
                    g = built.gadget;
                    report = built.report;
                    doc = gadget_to_json(g);
                    doc["lengths_tried"] = built.lengths_tried;
                    doc["growth_recheck"] = built.growth_recheck ? Json(*built.growth_recheck) : Json();
                }
                doc["report"] = to_json(report);
                write_or_print(doc, out_file, json, out);
                if (! json) {
                    describe(g, out);
                    describe(report, out);
                }
                return status_exit(report);
            }

            if (verify->parsed()) {
                auto g = gadget_from_json(load_json(bundle));
                if (force_zigzag)
                    g = with_zigzag_lengths(g, *force_zigzag, *force_zigzag);
                Lemma1Options options;
                options.q_arc_bound = q_bound;
                options.method = check_method(method);
                if (budget)
                    options.enumeration_cap = static_cast<size_t>(*budget);
                auto report = check_lemma1(g, options);
                if (json)
                    out << to_json(report).dump(2) << '\n';
                else {
                    describe(g, out);
                    describe(report, out);
                }
                return status_exit(report);
            }

            if (embed->parsed()) {
                auto g = gadget_from_json(load_json(bundle));
                auto paths = sample_paths(max_arcs > 0 ? max_arcs : 3, sample, seed);
                auto r = verify_embedding(g, paths);
                auto j = to_json(r);
                j["seed"] = seed;
                j["sample"] = paths.size();
                if (json)
                    out << j.dump(2) << '\n';
                else {
                    out << "pairs checked: " << r.pairs_checked << '\n';
                    for (auto & c : r.counterexamples)
                        out << "counterexample: " << c.q.to_string() << " vs " << c.q_prime.to_string() << '\n';
                    for (auto & q : r.outside_interval)
                        out << "outside interval: " << q.to_string() << '\n';
                    out << "embedding: " << (r.passed() ? "holds" : "fails") << '\n';
                }
                return r.passed() ? exit_true : exit_false;
            }

            if (batch->parsed()) {
                auto r = batch_verify(manifest);
                if (json)
                    out << r.report.dump(2) << '\n';
                else {
                    for (auto & c : r.report["checks"])
                        out << c["name"].get<string>() << ": " << c["status"].get<string>() << " - " << c["detail"].get<string>() << '\n';
                    out << r.report["passed"] << " passed, " << r.report["failed"] << " failed, " << r.report["errors_or_truncated"]
                        << " errors or truncated\n";
                }
                return r.exit_code;
            }
        }
        catch (const BudgetExceeded & e) {
            err << "truncated: " << e.what() << '\n';
            return exit_error;
        }
        catch (const CannotSatisfy & e) {
            err << "cannot satisfy: " << e.what() << '\n';
            return exit_false;
        }
        catch (const std::exception & e) {
            err << "error: " << e.what() << '\n';
            return exit_error;
        }
        return exit_error;
    }
}
