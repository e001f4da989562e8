#include <homorder/catalog.hh>
#include <homorder/order.hh>

using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace homorder
{
    auto directed_path(size_t n) -> OrientedPath
    {
        return OrientedPath{vector<Direction>(n, Direction::Forward)};
    }

    auto l_path(size_t k) -> OrientedPath
    {
        vector<Direction> dirs{Direction::Forward, Direction::Forward};
        for (size_t i = 0; i < k; ++i) {
            dirs.push_back(Direction::Backward);
            dirs.push_back(Direction::Forward);
        }
        dirs.push_back(Direction::Forward);
        return OrientedPath{std::move(dirs)};
    }

    auto bottom_chain(size_t k_max) -> BottomChain
    {
        BottomChain chain;
        for (size_t n = 0; n <= 2; ++n) {
            chain.elements.push_back(directed_path(n));
            chain.names.push_back("P" + std::to_string(n));
        }
        for (size_t k = k_max + 1; k-- > 0;) {
            chain.elements.push_back(l_path(k));
            chain.names.push_back("L" + std::to_string(k));
        }

        vector<OrientedTree> trees;
        for (auto & p : chain.elements)
            trees.push_back(path_to_tree(p));
        for (size_t i = 0; i < trees.size(); ++i)
            for (size_t j = 0; j < trees.size(); ++j) {
                bool expected = i <= j;
                if (leq(trees[i], trees[j]) != expected)
                    throw HomorderError{"bottom chain check failed: " + chain.names[i] + (expected ? " should" : " should not") +
                        " map to " + chain.names[j]};
            }
        return chain;
    }

    auto catalog_position(const OrientedTree & t) -> optional<string>
    {
        auto p = tree_is_path(t);
        if (! p)
            return std::nullopt;
        for (size_t n = 0; n <= 3; ++n)
            if (isomorphic(t, path_to_tree(directed_path(n))))
                return "P" + std::to_string(n);
        if (height(*p) != 3)
            return std::nullopt;
        for (size_t k = 1; 2 * k + 3 <= p->arc_count(); ++k)
            if (isomorphic(t, path_to_tree(l_path(k))))
                return "L" + std::to_string(k);
        return std::nullopt;
    }
}
