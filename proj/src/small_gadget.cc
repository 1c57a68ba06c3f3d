#include <ovdiam/errors.hh>
#include <ovdiam/small_gadget.hh>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

using std::uint32_t;
using std::uint64_t;
using std::vector;

namespace ovdiam
{
    auto ordered_pair(const Stack & a, const Stack & b) -> std::pair<Stack, Stack>
    {
        return a <= b ? std::pair{a, b} : std::pair{b, a};
    }

    namespace
    {
        auto test_bit(const vector<uint64_t> & bits, uint64_t i) -> bool
        {
            return (bits[i / 64] >> (i % 64)) & 1u;
        }

        auto set_indices(const vector<uint64_t> & bits) -> vector<uint32_t>
        {
            vector<uint32_t> out;
            for (std::size_t w = 0; w < bits.size(); ++w)
                for (uint64_t m = bits[w]; m; m &= m - 1)
                    out.push_back(static_cast<uint32_t>(w * 64 + std::countr_zero(m)));
            return out;
        }
    }

    auto SmallGadget::build(const OvInstance & inst, int k) -> SmallGadget
    {
        if (k != 4 && k != 5)
            throw WrongK{"the two-layer graph is defined for k = 4 and k = 5 only"};
        if (inst.n() < 1 || inst.d < 1)
            throw WrongK{"empty instance"};

        SmallGadget g;
        g.k_ = k;
        g.space_ = CoordSpace(inst.d, k - 1);
        const uint64_t arrays = g.space_.size();
        const uint64_t xy_total = arrays * arrays;
        if (xy_total > (uint64_t{1} << 32))
            throw WrongK{"coordinate space too large for this build"};
        const int n = inst.n();

        g.layer1_ = all_stacks(n, k - 1);
        if (g.layer1_.size() > (uint64_t{1} << 31))
            throw WrongK{"too many layer-1 vertices"};

        vector<vector<uint32_t>> layer1_sat(g.layer1_.size());
        vector<vector<uint64_t>> layer1_bits(g.layer1_.size());
        for (std::size_t i = 0; i < g.layer1_.size(); ++i) {
            layer1_bits[i] = satisfaction_bits(g.layer1_[i], g.space_, inst);
            layer1_sat[i] = set_indices(layer1_bits[i]);
        }

        for (int l = 0; l <= (k - 2); ++l)
            for (auto & s1 : all_stacks(n, l))
                for (auto & s2 : all_stacks(n, k - 2 - l))
                    if (s1 <= s2)
                        g.pairs_.emplace_back(s1, s2);
        std::sort(g.pairs_.begin(), g.pairs_.end());
        for (std::size_t p = 0; p < g.pairs_.size(); ++p)
            g.pair_index_.emplace(g.pairs_[p], static_cast<int>(p));

        const std::size_t words = (xy_total + 63) / 64;
        g.valid_.assign(g.pairs_.size(), vector<uint64_t>(words, 0));
        g.rank_.assign(g.pairs_.size(), {});
        g.pair_offset_.assign(g.pairs_.size() + 1, 0);
        for (std::size_t p = 0; p < g.pairs_.size(); ++p) {
            auto & [s1, s2] = g.pairs_[p];
            auto sat1 = set_indices(satisfaction_bits(concat(s1, s2), g.space_, inst));
            auto sat2 = set_indices(satisfaction_bits(concat(s2, s1), g.space_, inst));
            auto & bits = g.valid_[p];
            for (auto a : sat1)
                for (auto b : sat2) {
                    uint64_t i = uint64_t{a} * arrays + b, j = uint64_t{b} * arrays + a;
                    bits[i / 64] |= uint64_t{1} << (i % 64);
                    bits[j / 64] |= uint64_t{1} << (j % 64);
                }
            auto & rank = g.rank_[p];
            rank.resize(words + 1);
            uint32_t acc = 0;
            for (std::size_t w = 0; w < words; ++w) {
                rank[w] = acc;
                acc += std::popcount(bits[w]);
            }
            rank[words] = acc;
            g.pair_offset_[p + 1] = g.pair_offset_[p] + acc;
        }

        const uint64_t l1 = g.layer1_.size();
        const uint64_t total = l1 + g.pair_offset_.back();
        if (total >= unreachable)
            throw WrongK{"too many vertices"};

        // stack-pair moves: pop one side, push onto the other side or back onto the popped side
        vector<vector<int>> pair_moves(g.pairs_.size());
        for (std::size_t p = 0; p < g.pairs_.size(); ++p) {
            auto [s1, s2] = g.pairs_[p];
            for (int side = 0; side < 2; ++side) {
                const Stack & from = side ? s2 : s1;
                const Stack & other = side ? s1 : s2;
                if (from.empty())
                    continue;
                auto rest = from.popped();
                for (int a = 0; a < n; ++a) {
                    for (auto q : {g.pair_id(rest, other.pushed(a)), g.pair_id(rest.pushed(a), other)})
                        if (q != static_cast<int>(p))
                            pair_moves[p].push_back(q);
                }
            }
            std::sort(pair_moves[p].begin(), pair_moves[p].end());
            pair_moves[p].erase(std::unique(pair_moves[p].begin(), pair_moves[p].end()), pair_moves[p].end());
        }

        // layer-2 pairs of the form ((), T) link to layer-1 stacks T + a
        vector<int> popped_pair(l1);
        for (std::size_t i = 0; i < l1; ++i)
            popped_pair[i] = g.pair_id(Stack{}, g.layer1_[i].popped());
        vector<vector<uint32_t>> layer1_above(g.pairs_.size());
        for (std::size_t i = 0; i < l1; ++i)
            layer1_above[popped_pair[i]].push_back(static_cast<uint32_t>(i));

        auto vertex_of = [&](int p, uint64_t xy) -> vertex {
            auto & bits = g.valid_[p];
            uint64_t w = xy / 64;
            uint64_t below = bits[w] & ((uint64_t{1} << (xy % 64)) - 1);
            return static_cast<vertex>(l1 + g.pair_offset_[p] + g.rank_[p][w] + std::popcount(below));
        };

        vector<uint64_t> offsets(total + 1, 0);
        auto for_each_neighbour = [&](auto && emit) {
            for (uint64_t i = 0; i < l1; ++i) {
                int p = popped_pair[i];
                for (auto a : layer1_sat[i])
                    for (auto b : layer1_sat[i]) {
                        uint64_t xy = uint64_t{a} * arrays + b;
                        if (! test_bit(g.valid_[p], xy))
                            throw std::logic_error{"layer-1 neighbour missing from layer 2"};
                        emit(static_cast<vertex>(i), vertex_of(p, xy));
                    }
            }
            for (std::size_t p = 0; p < g.pairs_.size(); ++p) {
                auto & bits = g.valid_[p];
                vertex id = static_cast<vertex>(l1 + g.pair_offset_[p]);
                for (std::size_t w = 0; w < bits.size(); ++w)
                    for (uint64_t m = bits[w]; m; m &= m - 1, ++id) {
                        uint64_t xy = w * 64 + std::countr_zero(m);
                        for (auto q : pair_moves[p])
                            if (test_bit(g.valid_[q], xy))
                                emit(id, vertex_of(q, xy));
                        uint64_t x = xy / arrays, y = xy % arrays;
                        for (auto i : layer1_above[p])
                            if (test_bit(layer1_bits[i], x) && test_bit(layer1_bits[i], y))
                                emit(id, static_cast<vertex>(i));
                    }
            }
        };

        for_each_neighbour([&](vertex u, vertex) { ++offsets[u + 1]; });
        std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
        vector<vertex> targets(offsets.back());
        auto fill = offsets;
        for_each_neighbour([&](vertex u, vertex v) { targets[fill[u]++] = v; });

        vector<std::int32_t> group(total, -1);
        for (std::size_t p = 0; p < g.pairs_.size(); ++p)
            for (uint64_t v = l1 + g.pair_offset_[p]; v < l1 + g.pair_offset_[p + 1]; ++v)
                group[v] = static_cast<std::int32_t>(p);

        g.graph_ = Graph(static_cast<uint32_t>(total), std::move(offsets), std::move(targets), {}, std::move(group));
        return g;
    }

    auto SmallGadget::pair_id(const Stack & a, const Stack & b) const -> int
    {
        auto it = pair_index_.find(ordered_pair(a, b));
        if (it == pair_index_.end())
            throw VertexMissing{"no such stack pair"};
        return it->second;
    }

    auto SmallGadget::xy_index(const CoordArray & x, const CoordArray & y) const -> uint64_t
    {
        if (x.size() != k_ - 1 || y.size() != k_ - 1)
            throw VertexMissing{"coordinate array of wrong length"};
        for (int i = 0; i < k_ - 1; ++i)
            if (x[i] >= space_.d() || y[i] >= space_.d())
                throw VertexMissing{"coordinate out of range"};
        return space_.index_of(x) * space_.size() + space_.index_of(y);
    }

    auto SmallGadget::layer1_id(const Stack & s) const -> vertex
    {
        auto it = std::lower_bound(layer1_.begin(), layer1_.end(), s);
        if (it == layer1_.end() || *it != s)
            throw VertexMissing{"no layer-1 vertex for stack " + ovdiam::encode(s)};
        return static_cast<vertex>(it - layer1_.begin());
    }

    auto SmallGadget::layer2_id(const Stack & a, const Stack & b, const CoordArray & x, const CoordArray & y) const -> vertex
    {
        int p = pair_id(a, b);
        uint64_t xy = xy_index(x, y);
        auto & bits = valid_[p];
        if (! test_bit(bits, xy))
            throw VertexMissing{"stack pair does not satisfy these arrays"};
        uint64_t w = xy / 64;
        uint64_t below = bits[w] & ((uint64_t{1} << (xy % 64)) - 1);
        return static_cast<vertex>(layer1_.size() + pair_offset_[p] + rank_[p][w] + std::popcount(below));
    }

    auto SmallGadget::decode(vertex v) const -> GadgetVertex
    {
        GadgetVertex out;
        if (v < layer1_.size()) {
            out.layer = 1;
            out.first = layer1_[v];
            return out;
        }
        if (v >= graph_.vertex_count())
            throw VertexMissing{"vertex id out of range"};
        uint64_t local = v - layer1_.size();
        auto p = static_cast<std::size_t>(std::upper_bound(pair_offset_.begin(), pair_offset_.end(), local) - pair_offset_.begin() - 1);
        uint64_t r = local - pair_offset_[p];
        auto & rank = rank_[p];
        auto w = static_cast<std::size_t>(std::upper_bound(rank.begin(), rank.end(), r) - rank.begin() - 1);
        uint64_t m = valid_[p][w];
        for (uint64_t skip = r - rank[w]; skip > 0; --skip)
            m &= m - 1;
        uint64_t xy = w * 64 + std::countr_zero(m);
        out.layer = 2;
        out.first = pairs_[p].first;
        out.second = pairs_[p].second;
        out.x = space_.at(xy / space_.size());
        out.y = space_.at(xy % space_.size());
        return out;
    }

    auto SmallGadget::encode(vertex v) const -> std::string
    {
        auto gv = decode(v);
        if (gv.layer == 1)
            return "L1 [" + ovdiam::encode(gv.first) + "]";
        return "L2 {[" + ovdiam::encode(gv.first) + "],[" + ovdiam::encode(gv.second) + "]} x=(" + ovdiam::encode(gv.x) + ") y=("
            + ovdiam::encode(gv.y) + ")";
    }

    auto SmallGadget::yes_endpoints(const OvWitness & w) const -> std::pair<vertex, vertex>
    {
        if (static_cast<int>(w.indices.size()) != k_)
            throw VertexMissing{"witness must list k vectors"};
        vector<int> left(w.indices.begin(), w.indices.end() - 1);
        vector<int> right;
        for (int i = k_ - 1; i >= 1; --i)
            right.push_back(w.indices[i]);
        return {layer1_id(Stack(left)), layer1_id(Stack(right))};
    }

    auto gadget_counts(const SmallGadget & g, int n, int d) -> GadgetCounts
    {
        GadgetCounts c;
        c.layer1 = g.layer1_count();
        c.layer2 = g.layer2_count();
        c.edges = g.graph().edge_count();
        c.layer1_bound = std::pow(double(n), g.k() - 1);
        c.layer2_closed_form = std::pow(double(n), g.k() - 2) * std::pow(double(d), 2 * (g.k() - 1));
        c.layer2_bound = double(g.pairs().size()) * std::pow(double(d), 2 * (g.k() - 1));
        return c;
    }
}
