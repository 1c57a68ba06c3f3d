#ifndef OVDIAM_GUARD_SMALL_GADGET_HH
#define OVDIAM_GUARD_SMALL_GADGET_HH 1

#include <ovdiam/graph.hh>
#include <ovdiam/ov.hh>
#include <ovdiam/stack.hh>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ovdiam
{
    /// A decoded vertex of the k = 4 / k = 5 graph. For layer 1 only `first`
    /// is used; for layer 2 the stack pair is stored with first <= second.
    struct GadgetVertex
    {
        int layer = 1;
        Stack first, second;
        CoordArray x, y;
    };

    /**
     * The two-layer graph for k in {4, 5}. Layer 1 holds every stack of
     * length k-1. Layer 2 holds (unordered stack pair of total length k-2,
     * x, y) whenever one ordering of the concatenations satisfies x and the
     * other satisfies y. Coordinate-change cliques are kept as graph groups,
     * one per stack pair. Ids: layer 1 in lexicographic stack order, then
     * layer 2 by (pair, x, y) lexicographically.
     */
    class SmallGadget
    {
        public:
            static auto build(const OvInstance &, int k) -> SmallGadget;

            auto k() const -> int { return k_; }
            auto graph() const -> const Graph & { return graph_; }
            auto layer1_count() const -> std::uint64_t { return layer1_.size(); }
            auto layer2_count() const -> std::uint64_t { return graph_.vertex_count() - layer1_.size(); }
            auto pairs() const -> const std::vector<std::pair<Stack, Stack>> & { return pairs_; }

            auto layer1_id(const Stack &) const -> vertex;
            auto layer2_id(const Stack &, const Stack &, const CoordArray & x, const CoordArray & y) const -> vertex;
            auto decode(vertex) const -> GadgetVertex;
            auto encode(vertex) const -> std::string;

            /// Layer-1 vertices (a_1..a_{k-1}) and (a_k, a_{k-1}, .., a_2).
            auto yes_endpoints(const OvWitness &) const -> std::pair<vertex, vertex>;

        private:
            int k_ = 0;
            CoordSpace space_{1, 1};
            std::vector<Stack> layer1_;
            std::vector<std::pair<Stack, Stack>> pairs_;
            std::map<std::pair<Stack, Stack>, int> pair_index_;
            std::vector<std::vector<std::uint64_t>> valid_;
            std::vector<std::vector<std::uint32_t>> rank_;
            std::vector<std::uint64_t> pair_offset_;
            Graph graph_;

            auto pair_id(const Stack &, const Stack &) const -> int;
            auto xy_index(const CoordArray & x, const CoordArray & y) const -> std::uint64_t;
    };

    /// Canonical order for an unordered stack pair.
    auto ordered_pair(const Stack &, const Stack &) -> std::pair<Stack, Stack>;

    /**
     * Upper bounds checked against measured counts. layer2_bound is the exact
     * enumeration bound (stack pairs times d^(2(k-1))); layer2_closed_form is
     * n^(k-2) d^(2(k-1)), which ignores the split point of each pair and so
     * can be exceeded by dense instances.
     */
    struct GadgetCounts
    {
        std::uint64_t layer1 = 0, layer2 = 0, edges = 0;
        double layer1_bound = 0, layer2_bound = 0, layer2_closed_form = 0;
        auto within_bounds() const -> bool { return layer1 <= layer1_bound && layer2 <= layer2_bound; }
        auto within_closed_form() const -> bool { return layer1 <= layer1_bound && layer2 <= layer2_closed_form; }
    };

    auto gadget_counts(const SmallGadget &, int n, int d) -> GadgetCounts;
}

#endif
