#include <homorder/structures.hh>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

using std::map;
using std::optional;
using std::pair;
using std::set;
using std::size_t;
using std::string;
using std::string_view;
using std::vector;

namespace homorder
{
    auto flip(Direction d) -> Direction
    {
        return d == Direction::Forward ? Direction::Backward : Direction::Forward;
    }

    auto to_char(Direction d) -> char
    {
        return d == Direction::Forward ? 'F' : 'B';
    }

    OrientedPath::OrientedPath(vector<Direction> directions) :
        _directions(std::move(directions))
    {
    }

    auto OrientedPath::from_string(string_view text) -> OrientedPath
    {
        vector<Direction> dirs;
        dirs.reserve(text.size());
        for (char c : text) {
            if (c == 'F')
                dirs.push_back(Direction::Forward);
            else if (c == 'B')
                dirs.push_back(Direction::Backward);
            else
                throw ParseError{"invalid path character '" + string(1, c) + "', expected F or B"};
        }
        return OrientedPath{std::move(dirs)};
    }

    auto OrientedPath::arc(size_t i) const -> pair<Vertex, Vertex>
    {
        if (i >= _directions.size())
            throw PreconditionError{"arc index " + std::to_string(i) + " out of range"};
        auto a = static_cast<Vertex>(i), b = static_cast<Vertex>(i + 1);
        return _directions[i] == Direction::Forward ? pair{a, b} : pair{b, a};
    }

    auto OrientedPath::segment(Vertex from, Vertex to) const -> OrientedPath
    {
        if (from > to || to > terminal())
            throw PreconditionError{"bad segment bounds"};
        return OrientedPath{vector<Direction>(_directions.begin() + from, _directions.begin() + to)};
    }

    auto OrientedPath::to_string() const -> string
    {
        string result;
        result.reserve(_directions.size());
        for (auto d : _directions)
            result.push_back(to_char(d));
        return result;
    }

    OrientedTree::OrientedTree() :
        OrientedTree(1, {})
    {
    }

    OrientedTree::OrientedTree(size_t vertex_count, vector<pair<Vertex, Vertex>> arcs) :
        _vertex_count(vertex_count),
        _arcs(std::move(arcs)),
        _out(vertex_count),
        _in(vertex_count),
        _neighbours(vertex_count)
    {
        if (vertex_count == 0)
            throw PreconditionError{"a tree needs at least one vertex"};
        if (_arcs.size() + 1 != vertex_count)
            throw PreconditionError{"a tree on " + std::to_string(vertex_count) + " vertices needs " +
                std::to_string(vertex_count - 1) + " arcs, got " + std::to_string(_arcs.size())};

        set<pair<Vertex, Vertex>> seen;
        for (auto [u, v] : _arcs) {
            if (u >= vertex_count || v >= vertex_count)
                throw PreconditionError{"arc endpoint out of range"};
            if (u == v)
                throw PreconditionError{"self-loop on vertex " + std::to_string(u)};
            if (! seen.insert(std::minmax(u, v)).second)
                throw PreconditionError{"duplicate or anti-parallel arc " + std::to_string(u) + " " + std::to_string(v)};
            _out[u].push_back(v);
            _in[v].push_back(u);
            _neighbours[u].push_back(v);
            _neighbours[v].push_back(u);
        }
        for (auto * lists : {&_out, &_in, &_neighbours})
            for (auto & l : *lists)
                std::sort(l.begin(), l.end());

        // n-1 edges plus connectivity gives acyclicity
        vector<bool> reached(vertex_count, false);
        vector<Vertex> stack{0};
        reached[0] = true;
        size_t count = 1;
        while (! stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto w : _neighbours[v])
                if (! reached[w]) {
                    reached[w] = true;
                    ++count;
                    stack.push_back(w);
                }
        }
        if (count != vertex_count)
            throw PreconditionError{"underlying graph is not connected"};
    }

    auto OrientedTree::has_arc(Vertex tail, Vertex head) const -> bool
    {
        return std::binary_search(_out[tail].begin(), _out[tail].end(), head);
    }

    auto OrientedTree::induced(const vector<Vertex> & keep) const -> OrientedTree
    {
        vector<long> index(_vertex_count, -1);
        for (size_t i = 0; i < keep.size(); ++i)
            index[keep[i]] = static_cast<long>(i);
        vector<pair<Vertex, Vertex>> arcs;
        for (auto [u, v] : _arcs)
            if (index[u] >= 0 && index[v] >= 0)
                arcs.emplace_back(static_cast<Vertex>(index[u]), static_cast<Vertex>(index[v]));
        return OrientedTree{keep.size(), std::move(arcs)};
    }

    auto LevelMap::height() const -> int
    {
        return levels.empty() ? 0 : *std::max_element(levels.begin(), levels.end());
    }

    auto reverse(const OrientedPath & p) -> OrientedPath
    {
        vector<Direction> dirs;
        dirs.reserve(p.arc_count());
        for (auto it = p.directions().rbegin(); it != p.directions().rend(); ++it)
            dirs.push_back(flip(*it));
        return OrientedPath{std::move(dirs)};
    }

    auto concat(const OrientedPath & p, const OrientedPath & q) -> OrientedPath
    {
        auto dirs = p.directions();
        dirs.insert(dirs.end(), q.directions().begin(), q.directions().end());
        return OrientedPath{std::move(dirs)};
    }

    auto level_map(const OrientedTree & t) -> LevelMap
    {
        vector<int> levels(t.vertex_count(), 0);
        vector<bool> done(t.vertex_count(), false);
        vector<Vertex> stack{0};
        done[0] = true;
        while (! stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto w : t.out_neighbours(v))
                if (! done[w]) {
                    levels[w] = levels[v] + 1;
                    done[w] = true;
                    stack.push_back(w);
                }
            for (auto w : t.in_neighbours(v))
                if (! done[w]) {
                    levels[w] = levels[v] - 1;
                    done[w] = true;
                    stack.push_back(w);
                }
        }
        int low = *std::min_element(levels.begin(), levels.end());
        for (auto & l : levels)
            l -= low;
        return LevelMap{std::move(levels)};
    }

    auto level_map(const OrientedPath & p) -> LevelMap
    {
        vector<int> levels{0};
        levels.reserve(p.vertex_count());
        for (auto d : p.directions())
            levels.push_back(levels.back() + (d == Direction::Forward ? 1 : -1));
        int low = *std::min_element(levels.begin(), levels.end());
        for (auto & l : levels)
            l -= low;
        return LevelMap{std::move(levels)};
    }

    auto height(const OrientedTree & t) -> int
    {
        return level_map(t).height();
    }

    auto height(const OrientedPath & p) -> int
    {
        return level_map(p).height();
    }

    auto arc_level(const OrientedPath & p, size_t i) -> int
    {
        if (i >= p.arc_count())
            throw PreconditionError{"arc index " + std::to_string(i) + " out of range"};
        auto levels = level_map(p);
        return std::max(levels[i], levels[i + 1]);
    }

    auto zigzag(size_t n, Direction start) -> OrientedPath
    {
        if (n == 0)
            throw PreconditionError{"a zig-zag needs at least one arc"};
        vector<Direction> dirs;
        dirs.reserve(n);
        for (size_t i = 0; i < n; ++i)
            dirs.push_back(i % 2 == 0 ? start : flip(start));
        return OrientedPath{std::move(dirs)};
    }

    auto path_to_tree(const OrientedPath & p) -> OrientedTree
    {
        vector<pair<Vertex, Vertex>> arcs;
        arcs.reserve(p.arc_count());
        for (size_t i = 0; i < p.arc_count(); ++i)
            arcs.push_back(p.arc(i));
        return OrientedTree{p.vertex_count(), std::move(arcs)};
    }

    namespace
    {
        auto read_path_from(const OrientedTree & t, Vertex start) -> OrientedPath
        {
            vector<Direction> dirs;
            Vertex previous = start, current = start;
            bool first = true;
            while (true) {
                optional<Vertex> next;
                for (auto w : t.neighbours(current))
                    if (first || w != previous) {
                        next = w;
                        break;
                    }
                if (! next)
                    break;
                dirs.push_back(t.has_arc(current, *next) ? Direction::Forward : Direction::Backward);
                previous = current;
                current = *next;
                first = false;
            }
            return OrientedPath{std::move(dirs)};
        }

        auto encode_rooted(const OrientedTree & t, Vertex v, long parent) -> string
        {
            vector<string> children;
            for (auto w : t.neighbours(v))
                if (static_cast<long>(w) != parent)
                    children.push_back((t.has_arc(v, w) ? "o" : "i") + encode_rooted(t, w, v));
            std::sort(children.begin(), children.end());
            string result = "(";
            for (auto & c : children)
                result += c;
            result += ")";
            return result;
        }

        auto strip_comment(string line) -> string
        {
            if (auto pos = line.find('#'); pos != string::npos)
                line.erase(pos);
            auto first = line.find_first_not_of(" \t\r");
            if (first == string::npos)
                return "";
            auto last = line.find_last_not_of(" \t\r");
            return line.substr(first, last - first + 1);
        }

        auto content_lines(string_view text) -> vector<string>
        {
            vector<string> lines;
            std::istringstream in{string(text)};
            string line;
            while (std::getline(in, line))
                if (auto s = strip_comment(line); ! s.empty())
                    lines.push_back(s);
            return lines;
        }
    }

    auto tree_is_path(const OrientedTree & t) -> optional<OrientedPath>
    {
        if (t.vertex_count() == 1)
            return OrientedPath{};
        vector<Vertex> ends;
        for (Vertex v = 0; v < t.vertex_count(); ++v) {
            if (t.degree(v) > 2)
                return std::nullopt;
            if (t.degree(v) == 1)
                ends.push_back(v);
        }
        auto a = read_path_from(t, ends.at(0)), b = read_path_from(t, ends.at(1));
        return std::min(a, b);
    }

    auto canonical_form(const OrientedTree & t) -> string
    {
        optional<string> best;
        for (Vertex r = 0; r < t.vertex_count(); ++r) {
            auto e = encode_rooted(t, r, -1);
            if (! best || e < *best)
                best = std::move(e);
        }
        return *best;
    }

    auto isomorphic(const OrientedTree & a, const OrientedTree & b) -> bool
    {
        if (a.vertex_count() != b.vertex_count())
            return false;
        auto pa = tree_is_path(a), pb = tree_is_path(b);
        if (pa.has_value() != pb.has_value())
            return false;
        if (pa)
            return *pa == *pb;
        return canonical_form(a) == canonical_form(b);
    }

    auto parse_tree(string_view text) -> OrientedTree
    {
        auto lines = content_lines(text);
        if (lines.empty())
            throw ParseError{"empty tree description"};
        std::istringstream header{lines[0]};
        string word;
        long n = -1;
        if (! (header >> word >> n) || word != "tree" || n <= 0)
            throw ParseError{"expected header 'tree <vertex_count>', got '" + lines[0] + "'"};
        vector<pair<Vertex, Vertex>> arcs;
        for (size_t i = 1; i < lines.size(); ++i) {
            std::istringstream row{lines[i]};
            long u, v;
            string extra;
            if (! (row >> u >> v) || (row >> extra) || u < 0 || v < 0)
                throw ParseError{"bad arc line '" + lines[i] + "'"};
            arcs.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        }
        try {
            return OrientedTree{static_cast<size_t>(n), std::move(arcs)};
        }
        catch (const PreconditionError & e) {
            throw ParseError{string("invalid tree: ") + e.what()};
        }
    }

    auto parse_structure(string_view text) -> OrientedTree
    {
        auto lines = content_lines(text);
        if (lines.empty())
            return OrientedTree{};
        if (lines[0].rfind("tree", 0) == 0)
            return parse_tree(text);
        if (lines.size() > 1)
            throw ParseError{"a path file holds a single line"};
        return path_to_tree(OrientedPath::from_string(lines[0]));
    }

    auto format_tree(const OrientedTree & t) -> string
    {
        std::ostringstream out;
        out << "tree " << t.vertex_count() << '\n';
        for (auto [u, v] : t.arcs())
            out << u << ' ' << v << '\n';
        return out.str();
    }

    auto format_structure(const OrientedTree & t) -> string
    {
        if (auto p = tree_is_path(t))
            return p->to_string() + "\n";
        return format_tree(t);
    }

    auto to_dot(const OrientedTree & t, string_view name) -> string
    {
        auto levels = level_map(t);
        map<int, vector<Vertex>> by_level;
        for (Vertex v = 0; v < t.vertex_count(); ++v)
            by_level[levels[v]].push_back(v);

        std::ostringstream out;
        out << "digraph " << name << " {\n";
        out << "  rankdir=BT;\n";
        for (auto & [level, vs] : by_level) {
            out << "  { rank=same;";
            for (auto v : vs)
                out << ' ' << v << ';';
            out << " }  // level " << level << '\n';
        }
        for (auto [u, v] : t.arcs())
            out << "  " << u << " -> " << v << ";\n";
        out << "}\n";
        return out.str();
    }
}
