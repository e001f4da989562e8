#ifndef HOMORDER_STRUCTURES_HH
#define HOMORDER_STRUCTURES_HH 1

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace homorder
{
    using Vertex = std::uint32_t;

    class HomorderError : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    class ParseError : public HomorderError
    {
        public:
            using HomorderError::HomorderError;
    };

    class PreconditionError : public HomorderError
    {
        public:
            using HomorderError::HomorderError;
    };

    /// Raised when a bounded search runs past its node or vertex budget.
    class BudgetExceeded : public HomorderError
    {
        public:
            using HomorderError::HomorderError;
    };

    enum class Direction : std::uint8_t
    {
        Forward,
        Backward
    };

    auto flip(Direction d) -> Direction;
    auto to_char(Direction d) -> char;

    /**
     * An oriented path on vertices 0..n. Arc i (0-based) joins vertices i and
     * i+1, pointing i -> i+1 when Forward and i+1 -> i when Backward.
     */
    class OrientedPath
    {
        private:
            std::vector<Direction> _directions;

        public:
            OrientedPath() = default;
            explicit OrientedPath(std::vector<Direction> directions);

            /// Parses a string over {F,B}; the empty string is the single vertex.
            static auto from_string(std::string_view text) -> OrientedPath;

            auto directions() const -> const std::vector<Direction> & { return _directions; }
            auto arc_count() const -> std::size_t { return _directions.size(); }
            auto vertex_count() const -> std::size_t { return _directions.size() + 1; }
            auto initial() const -> Vertex { return 0; }
            auto terminal() const -> Vertex { return static_cast<Vertex>(_directions.size()); }
            auto operator[](std::size_t i) const -> Direction { return _directions[i]; }

            /// Tail and head of arc i.
            auto arc(std::size_t i) const -> std::pair<Vertex, Vertex>;

            /// Sub-path on vertices from..to (inclusive), from <= to.
            auto segment(Vertex from, Vertex to) const -> OrientedPath;

            auto to_string() const -> std::string;

            auto operator<=>(const OrientedPath &) const = default;
    };

    /**
     * An orientation of a finite undirected tree. Construction validates
     * connectivity, acyclicity and the absence of loops and duplicate arcs.
     */
    class OrientedTree
    {
        private:
            std::size_t _vertex_count = 1;
            std::vector<std::pair<Vertex, Vertex>> _arcs;
            std::vector<std::vector<Vertex>> _out, _in, _neighbours;

        public:
            OrientedTree();
            OrientedTree(std::size_t vertex_count, std::vector<std::pair<Vertex, Vertex>> arcs);

            auto vertex_count() const -> std::size_t { return _vertex_count; }
            auto arc_count() const -> std::size_t { return _arcs.size(); }
            auto arcs() const -> const std::vector<std::pair<Vertex, Vertex>> & { return _arcs; }
            auto out_neighbours(Vertex v) const -> const std::vector<Vertex> & { return _out[v]; }
            auto in_neighbours(Vertex v) const -> const std::vector<Vertex> & { return _in[v]; }

            /// Undirected neighbours, ascending.
            auto neighbours(Vertex v) const -> const std::vector<Vertex> & { return _neighbours[v]; }
            auto degree(Vertex v) const -> std::size_t { return _neighbours[v].size(); }
            auto has_arc(Vertex tail, Vertex head) const -> bool;

            /// Induced subtree on the given vertices (must be connected), renumbered in
            /// the order given.
            auto induced(const std::vector<Vertex> & keep) const -> OrientedTree;

            auto operator==(const OrientedTree & other) const -> bool
            {
                return _vertex_count == other._vertex_count && _arcs == other._arcs;
            }
    };

    /// Levels of the unique homomorphism onto the shortest directed path.
    struct LevelMap
    {
        std::vector<int> levels;

        auto operator[](Vertex v) const -> int { return levels[v]; }
        auto height() const -> int;
    };

    auto reverse(const OrientedPath & p) -> OrientedPath;
    auto concat(const OrientedPath & p, const OrientedPath & q) -> OrientedPath;

    template <typename... Paths_>
    auto concat(const OrientedPath & p, const OrientedPath & q, const Paths_ & ... rest) -> OrientedPath
    {
        return concat(concat(p, q), rest...);
    }

    auto level_map(const OrientedTree & t) -> LevelMap;
    auto level_map(const OrientedPath & p) -> LevelMap;
    auto height(const OrientedTree & t) -> int;
    auto height(const OrientedPath & p) -> int;

    /// Level of arc i: the larger level of its two endpoints.
    auto arc_level(const OrientedPath & p, std::size_t i) -> int;

    /// Alternating path with n >= 1 arcs, first arc `start`.
    auto zigzag(std::size_t n, Direction start) -> OrientedPath;

    auto path_to_tree(const OrientedPath & p) -> OrientedTree;

    /// If every vertex has degree at most two, the direction string read from
    /// one end; of the two readings the lexicographically smaller (F < B).
    auto tree_is_path(const OrientedTree & t) -> std::optional<OrientedPath>;

    /// Canonical form under digraph isomorphism.
    auto canonical_form(const OrientedTree & t) -> std::string;
    auto isomorphic(const OrientedTree & a, const OrientedTree & b) -> bool;

    /// Path text format: one line over {F,B}. Tree text format: "tree N" then
    /// "u v" per arc. '#' starts a comment in both.
    auto parse_structure(std::string_view text) -> OrientedTree;
    auto parse_tree(std::string_view text) -> OrientedTree;
    auto format_tree(const OrientedTree & t) -> std::string;

    /// Path string when the tree is a path, tree format otherwise.
    auto format_structure(const OrientedTree & t) -> std::string;

    auto to_dot(const OrientedTree & t, std::string_view name = "G") -> std::string;
}

#endif
