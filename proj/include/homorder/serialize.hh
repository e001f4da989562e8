#ifndef HOMORDER_SERIALIZE_HH
#define HOMORDER_SERIALIZE_HH 1

#include <homorder/gadget.hh>
#include <homorder/hom_engine.hh>
#include <homorder/order.hh>

#include <json.hpp>

namespace homorder
{
    using Json = nlohmann::json;

    /// The reading of t as a path that keeps its vertex numbering, if any.
    auto numbered_path(const OrientedTree & t) -> std::optional<OrientedPath>;

    /// A path string when the tree is exactly path_to_tree of one, so vertex
    /// numbers survive a round trip; tree text format otherwise.
    auto structure_to_json(const OrientedTree & t) -> Json;
    auto structure_from_json(const Json & j) -> OrientedTree;

    /// {"map":[...]}.
    auto to_json(const Homomorphism & f) -> Json;

    /// Re-checks arc preservation; throws ParseError if the map is not a homomorphism.
    auto homomorphism_from_json(const Json & j, const OrientedTree & source, const OrientedTree & target) -> Homomorphism;

    auto to_json(const CoreResult & r) -> Json;
    auto to_json(const IntervalReport & r) -> Json;
    auto to_json(const ConditionResult & r) -> Json;
    auto to_json(const Lemma1Report & r) -> Json;
    auto to_json(const EmbeddingReport & r) -> Json;

    /// Everything needed to rebuild the gadget: the interval, the base path and
    /// its split, zig-zag lengths, plus the resulting I, A, B, C for inspection.
    auto gadget_to_json(const IndicatorGadget & g) -> Json;

    /// Rebuilds from the base split and lengths; throws ParseError if the
    /// stored I, variant or segments disagree with the rebuilt gadget.
    auto gadget_from_json(const Json & j) -> IndicatorGadget;
}

#endif
