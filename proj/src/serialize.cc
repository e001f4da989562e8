#include <homorder/serialize.hh>

using std::string;
using std::vector;

namespace homorder
{
    auto numbered_path(const OrientedTree & t) -> std::optional<OrientedPath>
    {
        if (auto p = tree_is_path(t)) {
            if (path_to_tree(*p) == t)
                return p;
            auto r = reverse(*p);
            if (path_to_tree(r) == t)
                return r;
        }
        return std::nullopt;
    }

    auto structure_to_json(const OrientedTree & t) -> Json
    {
        if (auto p = numbered_path(t))
            return p->to_string();
        return format_tree(t);
    }

    auto structure_from_json(const Json & j) -> OrientedTree
    {
        if (! j.is_string())
            throw ParseError{"structure must be a string"};
        return parse_structure(j.get<string>());
    }

    auto to_json(const Homomorphism & f) -> Json
    {
        validate(f);
        return Json{{"map", f.map}};
    }

    auto homomorphism_from_json(const Json & j, const OrientedTree & source, const OrientedTree & target) -> Homomorphism
    {
        if (! j.is_object() || ! j.contains("map") || ! j["map"].is_array())
            throw ParseError{"homomorphism must be an object with a \"map\" array"};
        Homomorphism f{source, target, j["map"].get<vector<Vertex>>()};
        if (! is_homomorphism(f))
            throw ParseError{"stored map is not a homomorphism"};
        return f;
    }

    auto to_json(const CoreResult & r) -> Json
    {
        return Json{
            {"core", structure_to_json(r.core)},
            {"core_vertices", r.core.vertex_count()},
            {"kept", r.kept},
            {"retraction", to_json(r.retraction)},
        };
    }

    auto to_json(const IntervalReport & r) -> Json
    {
        Json j{
            {"lower", structure_to_json(r.lower)},
            {"upper", structure_to_json(r.upper)},
            {"classification", to_string(r.classification)},
            {"lower_core", structure_to_json(r.lower_core)},
            {"upper_core", structure_to_json(r.upper_core)},
            {"lower_height", r.lower_height},
            {"upper_height", r.upper_height},
            {"notes", r.notes},
        };
        j["lower_position"] = r.lower_position ? Json(*r.lower_position) : Json();
        j["upper_position"] = r.upper_position ? Json(*r.upper_position) : Json();
        j["searched_up_to_arcs"] = r.searched_up_to_arcs ? Json(*r.searched_up_to_arcs) : Json();
        return j;
    }

    auto to_json(const ConditionResult & r) -> Json
    {
        Json j{{"status", to_string(r.status)}, {"detail", r.detail}};
        j["q"] = r.q ? Json(r.q->to_string()) : Json();
        if (r.witness) {
            j["witness"] = to_json(*r.witness);
            j["witness_source"] = structure_to_json(r.witness->source);
        }
        else
            j["witness"] = Json();
        return j;
    }

    auto to_json(const Lemma1Report & r) -> Json
    {
        Json per_q = Json::array();
        for (auto & q : r.per_q)
            per_q.push_back(Json{
                {"q", q.q.to_string()},
                {"condition_i", q.condition_i},
                {"condition_ii", q.condition_ii},
                {"condition_iii", q.condition_iii},
                {"quotient_valid", q.quotient_valid},
            });
        return Json{
            {"condition_i", to_json(r.condition_i)},
            {"condition_ii", to_json(r.condition_ii)},
            {"condition_iii", to_json(r.condition_iii)},
            {"collapse_valid", r.collapse_valid},
            {"epsilon_cases", Json::array({"(1,1)", "(1,-1)", "(-1,1)", "(-1,-1)"})},
            {"method", r.method == CheckMethod::Exact ? "exact" : "enumerate"},
            {"q_arc_bound", r.q_arc_bound},
            {"per_q", per_q},
            {"verified", r.verified()},
        };
    }

    auto to_json(const EmbeddingReport & r) -> Json
    {
        Json counterexamples = Json::array();
        for (auto & c : r.counterexamples)
            counterexamples.push_back(Json{
                {"q", c.q.to_string()},
                {"q_prime", c.q_prime.to_string()},
                {"q_leq", c.q_leq},
                {"phi_leq", c.phi_leq},
            });
        Json outside = Json::array();
        for (auto & q : r.outside_interval)
            outside.push_back(q.to_string());
        return Json{
            {"pairs_checked", r.pairs_checked},
            {"counterexamples", counterexamples},
            {"outside_interval", outside},
            {"passed", r.passed()},
        };
    }

    auto gadget_to_json(const IndicatorGadget & g) -> Json
    {
        return Json{
            {"lower", g.lower.to_string()},
            {"upper", g.upper.to_string()},
            {"base", g.base_split.path.to_string()},
            {"v1", g.base_split.v1},
            {"v2", g.base_split.v2},
            {"h", to_json(g.base_split.h)},
            {"b_shape", to_string(g.base_shape)},
            {"variant", to_string(g.variant)},
            {"z1_len", g.z1_len},
            {"z2_len", g.z2_len},
            {"P_used", g.split.path.to_string()},
            {"split_v1", g.split.v1},
            {"split_v2", g.split.v2},
            {"A", g.split.a.to_string()},
            {"B", g.split.b.to_string()},
            {"C", g.split.c.to_string()},
            {"I", g.indicator.to_string()},
        };
    }

    auto gadget_from_json(const Json & j) -> IndicatorGadget
    {
        try {
            auto lower = OrientedPath::from_string(j.at("lower").get<string>());
            auto upper = OrientedPath::from_string(j.at("upper").get<string>());
            auto base = OrientedPath::from_string(j.at("base").get<string>());
            auto h = homomorphism_from_json(j.at("h"), path_to_tree(base), path_to_tree(upper));
            auto split = split_at_pair(base, h, j.at("v1").get<Vertex>(), j.at("v2").get<Vertex>());
            split.upper = upper;
            auto g = assemble_indicator(lower, upper, split, j.at("z1_len").get<std::size_t>(), j.at("z2_len").get<std::size_t>());

            auto expect = [&](const char * key, const string & actual) {
                if (j.contains(key) && j[key].get<string>() != actual)
                    throw ParseError{string{"bundle field "} + key + " does not match the rebuilt gadget"};
            };
            expect("I", g.indicator.to_string());
            expect("variant", to_string(g.variant));
            expect("P_used", g.split.path.to_string());
            expect("A", g.split.a.to_string());
            expect("B", g.split.b.to_string());
            expect("C", g.split.c.to_string());
            return g;
        }
        catch (const nlohmann::json::exception & e) {
            throw ParseError{string{"malformed gadget bundle: "} + e.what()};
        }
    }
}
