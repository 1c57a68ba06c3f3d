#include <ovdiam/configuration.hh>
#include <ovdiam/errors.hh>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

using std::string;
using std::vector;

namespace ovdiam
{
    auto Configuration::size() const -> int
    {
        int s = 0;
        for (auto & n : nodes)
            s += 1 + n.stack.size();
        return s;
    }

    auto Configuration::position_of(int label) const -> int
    {
        for (int i = 0; i < node_count(); ++i)
            if (nodes[i].label == label)
                return i;
        return -1;
    }

    auto Configuration::edge_to(int label) const -> int
    {
        int r = root().label;
        for (int e = 0; e < static_cast<int>(edges.size()); ++e)
            if ((edges[e].u == label && edges[e].w == r) || (edges[e].w == label && edges[e].u == r))
                return e;
        return -1;
    }

    namespace
    {
        auto flipped(const EdgeConstraint & c) -> EdgeConstraint
        {
            EdgeConstraint r;
            r.first = c.second;
            r.second = c.first;
            r.star = c.star;
            return r;
        }

        // edges oriented from the smaller label and sorted
        auto normalise(Configuration & h) -> void
        {
            for (auto & e : h.edges)
                if (e.u > e.w) {
                    std::swap(e.u, e.w);
                    e.arrays = flipped(e.arrays);
                }
            std::sort(h.edges.begin(), h.edges.end(), [](auto & a, auto & b) { return std::pair{a.u, a.w} < std::pair{b.u, b.w}; });
        }

        auto stack_ok_for(const Stack & s, const CoordArray & x, const OvInstance & inst) -> bool
        {
            if (s.size() > x.size())
                return false;
            for (int i = 0; i < s.size(); ++i)
                if (s[i] >= inst.n())
                    return false;
            for (int i = 0; i < x.size(); ++i)
                if (x[i] >= inst.d)
                    return false;
            return satisfies(s, x, inst);
        }
    }

    auto obligations(int k, int nodes) -> vector<Obligation>
    {
        const int kp = kprime(k);
        vector<Obligation> out;
        for (int leaf = 1; leaf < nodes; ++leaf) {
            for (int j = 0; j < kp; ++j)
                out.push_back({0, leaf, j});
            out.push_back({0, leaf, 2 * kp});
            for (int j = 0; j < kp; ++j)
                out.push_back({leaf, leaf, kp + j});
            out.push_back({leaf, leaf, 2 * kp});
        }
        // a node at position p must also serve slot p of every later node's edge, on that node's side
        for (int p = 0; p < nodes && p < kp; ++p)
            for (int later = std::max(p + 1, 1); later < nodes; ++later)
                out.push_back({p, later, kp + p});
        return out;
    }

    auto slot_array(const Configuration & h, int leaf_position, int slot) -> const CoordArray &
    {
        const int kp = kprime(h.k);
        int leaf_label = h.nodes[leaf_position].label;
        int e = h.edge_to(leaf_label);
        if (e < 0)
            throw IllegalHalfOp{"missing edge to the root"};
        auto & edge = h.edges[e];
        if (slot < kp)
            return edge.side(h.root().label, slot);
        if (slot < 2 * kp)
            return edge.side(leaf_label, slot - kp);
        return edge.arrays.star;
    }

    auto is_well_formed(const Configuration & h) -> bool
    {
        const int kp = kprime(h.k);
        if (h.k < 2 || h.k > max_k || h.nodes.empty() || static_cast<int>(h.edges.size()) != h.node_count() - 1)
            return false;
        std::set<int> labels;
        for (auto & n : h.nodes) {
            if (n.label < 0 || n.label >= 2 * kp || ! labels.insert(n.label).second)
                return false;
        }
        std::set<int> leaves;
        int r = h.root().label;
        for (auto & e : h.edges) {
            int other = e.u == r ? e.w : (e.w == r ? e.u : -1);
            if (other < 0 || other == r || ! labels.count(other) || ! leaves.insert(other).second)
                return false;
            for (int j = 0; j < kp; ++j)
                if (e.arrays.first[j].size() != h.k - 1 || e.arrays.second[j].size() != h.k - 1)
                    return false;
            if (e.arrays.star.size() != h.k - 1)
                return false;
        }
        return true;
    }

    auto is_edge_satisfying(const Configuration & h, const OvInstance & inst) -> bool
    {
        if (! is_well_formed(h))
            return false;
        const int kp = kprime(h.k);
        if (h.node_count() > kp + 1)
            return false;
        for (auto & ob : obligations(h.k, h.node_count()))
            if (! stack_ok_for(h.nodes[ob.position].stack, slot_array(h, ob.leaf, ob.slot), inst))
                return false;
        return true;
    }

    auto root_large_enough(const Configuration & h) -> bool
    {
        return 2 * h.root().stack.size() >= h.k - 2;
    }

    auto is_valid(const Configuration & h, const OvInstance & inst) -> bool
    {
        return ! h.nodes.empty() && root_large_enough(h) && is_edge_satisfying(h, inst);
    }

    auto vector_insert(int label, int vec) -> HalfOp
    {
        HalfOp op;
        op.kind = HalfOpKind::vector_insert;
        op.label = label;
        op.vec = vec;
        return op;
    }

    auto vector_delete(int label) -> HalfOp
    {
        HalfOp op;
        op.kind = HalfOpKind::vector_delete;
        op.label = label;
        return op;
    }

    auto node_insert(int label, bool second_largest, const EdgeConstraint & arrays) -> HalfOp
    {
        HalfOp op;
        op.kind = HalfOpKind::node_insert;
        op.label = label;
        op.second_largest = second_largest;
        op.arrays = arrays;
        return op;
    }

    auto node_delete(int label) -> HalfOp
    {
        HalfOp op;
        op.kind = HalfOpKind::node_delete;
        op.label = label;
        return op;
    }

    auto flip() -> HalfOp
    {
        return HalfOp{};
    }

    auto is_insertion(const HalfOp & op) -> bool
    {
        return op.kind == HalfOpKind::vector_insert || op.kind == HalfOpKind::node_insert;
    }

    auto is_deletion(const HalfOp & op) -> bool
    {
        return op.kind == HalfOpKind::vector_delete || op.kind == HalfOpKind::node_delete;
    }

    auto apply_half_op(const Configuration & h, const HalfOp & op) -> Configuration
    {
        Configuration r = h;
        const int kp = kprime(h.k);
        int pos = op.kind == HalfOpKind::flip ? -1 : h.position_of(op.label);
        switch (op.kind) {
            case HalfOpKind::vector_insert:
                if (pos < 0)
                    throw IllegalHalfOp{"vector insertion at a missing node"};
                if (op.vec < 0 || op.vec > 65535)
                    throw IllegalHalfOp{"bad vector index"};
                if (h.nodes[pos].stack.size() >= max_stack_len)
                    throw IllegalHalfOp{"stack would exceed the supported length"};
                r.nodes[pos].stack = h.nodes[pos].stack.pushed(op.vec);
                break;
            case HalfOpKind::vector_delete:
                if (pos < 0 || h.nodes[pos].stack.empty())
                    throw IllegalHalfOp{"vector deletion needs a non-empty stack"};
                r.nodes[pos].stack = h.nodes[pos].stack.popped();
                break;
            case HalfOpKind::node_insert: {
                if (op.label < 0 || op.label >= 2 * kp || pos >= 0)
                    throw IllegalHalfOp{"node insertion needs a fresh label"};
                if (op.second_largest && h.node_count() < 2)
                    throw IllegalHalfOp{"the root must stay smallest"};
                for (int j = 0; j < kp; ++j)
                    if (op.arrays.first[j].size() != h.k - 1 || op.arrays.second[j].size() != h.k - 1)
                        throw IllegalHalfOp{"edge arrays must have length k-1"};
                if (op.arrays.star.size() != h.k - 1)
                    throw IllegalHalfOp{"edge arrays must have length k-1"};
                ConfigNode fresh{op.label, Stack{}};
                if (op.second_largest)
                    r.nodes.insert(r.nodes.end() - 1, fresh);
                else
                    r.nodes.push_back(fresh);
                r.edges.push_back({op.label, h.root().label, op.arrays});
                break;
            }
            case HalfOpKind::node_delete:
                if (pos <= 0)
                    throw IllegalHalfOp{"only a non-root node can be deleted"};
                if (! h.nodes[pos].stack.empty())
                    throw IllegalHalfOp{"only an empty node can be deleted"};
                if (pos < h.node_count() - 2)
                    throw IllegalHalfOp{"only the largest or second largest node can be deleted"};
                r.edges.erase(r.edges.begin() + h.edge_to(op.label));
                r.nodes.erase(r.nodes.begin() + pos);
                break;
            case HalfOpKind::flip:
                if (h.node_count() != 2 || h.nodes[0].stack.size() != h.nodes[1].stack.size())
                    throw IllegalHalfOp{"flip needs two nodes with equal stack sizes"};
                std::swap(r.nodes[0], r.nodes[1]);
                break;
        }
        normalise(r);
        return r;
    }

    auto OpTrace::all_valid() const -> bool
    {
        return std::all_of(valid.begin(), valid.end(), [](bool b) { return b; });
    }

    auto trace_full_op(const Configuration & h, const FullOp & op, const OvInstance & inst) -> OpTrace
    {
        if (! is_insertion(op.insertion) || ! is_deletion(op.deletion))
            throw IllegalHalfOp{"a full operation is an insertion followed by a deletion"};
        if (op.insertion.kind == HalfOpKind::vector_insert && op.insertion.vec >= inst.n())
            throw IllegalHalfOp{"vector index out of range"};
        OpTrace t;
        auto push = [&](Configuration c, const string & what) {
            t.valid.push_back(is_valid(c, inst));
            t.stages.push_back(std::move(c));
            t.labels.push_back(what);
        };
        push(h, "start");
        if (op.lead_flip)
            push(apply_half_op(t.stages.back(), flip()), "lead flip");
        push(apply_half_op(t.stages.back(), op.insertion), "insertion");
        if (op.mid_flip)
            push(apply_half_op(t.stages.back(), flip()), "flip");
        push(apply_half_op(t.stages.back(), op.deletion), "deletion");
        if (op.trail_flip)
            push(apply_half_op(t.stages.back(), flip()), "trail flip");
        t.multi_node = h.node_count() >= 2 || t.stages.back().node_count() >= 2;
        return t;
    }

    auto apply_full_op(const Configuration & h, const FullOp & op, const OvInstance & inst) -> Configuration
    {
        auto t = trace_full_op(h, op, inst);
        for (std::size_t i = 0; i < t.stages.size(); ++i)
            if (! t.valid[i])
                throw InvalidIntermediate{"invalid configuration after " + t.labels[i] + ": " + describe(t.stages[i])};
        if (! t.multi_node)
            throw InvalidIntermediate{"a full operation needs two nodes at one of its ends"};
        return t.stages.back();
    }

    auto inverse_full_op(const Configuration & h, const FullOp & op) -> FullOp
    {
        Configuration c = h;
        if (op.lead_flip)
            c = apply_half_op(c, flip());
        c = apply_half_op(c, op.insertion);
        if (op.mid_flip)
            c = apply_half_op(c, flip());
        const Configuration before_delete = c;

        FullOp inv;
        inv.lead_flip = op.trail_flip;
        inv.mid_flip = op.mid_flip;
        inv.trail_flip = op.lead_flip;

        int label = op.deletion.label;
        int pos = before_delete.position_of(label);
        if (pos < 0)
            throw IllegalHalfOp{"deletion at a missing node"};
        if (op.deletion.kind == HalfOpKind::vector_delete) {
            if (before_delete.nodes[pos].stack.empty())
                throw IllegalHalfOp{"vector deletion needs a non-empty stack"};
            inv.insertion = vector_insert(label, before_delete.nodes[pos].stack.top());
        }
        else {
            int e = before_delete.edge_to(label);
            if (e < 0 || pos == 0)
                throw IllegalHalfOp{"node deletion of the root"};
            auto & edge = before_delete.edges[e];
            auto arrays = edge.u == label ? edge.arrays : flipped(edge.arrays);
            inv.insertion = node_insert(label, pos == before_delete.node_count() - 2 && pos > 0 && before_delete.node_count() > 2, arrays);
        }

        if (op.insertion.kind == HalfOpKind::vector_insert)
            inv.deletion = vector_delete(op.insertion.label);
        else
            inv.deletion = node_delete(op.insertion.label);
        return inv;
    }

    auto identity_permutation(int k) -> Permutation
    {
        Permutation p(2 * kprime(k));
        std::iota(p.begin(), p.end(), 0);
        return p;
    }

    auto compose(const Permutation & outer, const Permutation & inner) -> Permutation
    {
        Permutation r(inner.size());
        for (std::size_t i = 0; i < inner.size(); ++i)
            r[i] = outer.at(inner[i]);
        return r;
    }

    auto apply_permutation(const Configuration & h, const Permutation & pi) -> Configuration
    {
        Configuration r = h;
        for (auto & n : r.nodes)
            n.label = pi.at(n.label);
        for (auto & e : r.edges) {
            e.u = pi.at(e.u);
            e.w = pi.at(e.w);
        }
        normalise(r);
        return r;
    }

    auto apply_permutation(const FullOp & op, const Permutation & pi) -> FullOp
    {
        FullOp r = op;
        if (r.insertion.label >= 0)
            r.insertion.label = pi.at(r.insertion.label);
        if (r.deletion.label >= 0)
            r.deletion.label = pi.at(r.deletion.label);
        return r;
    }

    auto canonical(const Configuration & h) -> Configuration
    {
        Permutation pi(2 * kprime(h.k));
        std::iota(pi.begin(), pi.end(), 0);
        vector<char> used(pi.size(), 0);
        for (int i = 0; i < h.node_count(); ++i) {
            pi[h.nodes[i].label] = i;
            used[i] = 1;
        }
        // unused labels keep a bijection
        int next_free = 0;
        for (std::size_t l = 0; l < pi.size(); ++l) {
            if (h.position_of(static_cast<int>(l)) >= 0)
                continue;
            while (used[next_free])
                ++next_free;
            pi[l] = next_free;
            used[next_free] = 1;
        }
        return apply_permutation(h, pi);
    }

    namespace
    {
        auto canonical_key_slow(const Configuration & h) -> string
        {
            auto c = canonical(h);
            string key;
            key.push_back(static_cast<char>(c.k));
            for (auto & n : c.nodes) {
                key.push_back(static_cast<char>(n.stack.size()));
                for (int i = 0; i < n.stack.size(); ++i) {
                    key.push_back(static_cast<char>(n.stack[i] & 0xff));
                    key.push_back(static_cast<char>(n.stack[i] >> 8));
                }
            }
            const int kp = kprime(c.k);
            for (auto & e : c.edges) {
                key.push_back(static_cast<char>(e.u));
                key.push_back(static_cast<char>(e.w));
                auto put = [&](const CoordArray & x) {
                    for (int i = 0; i < x.size(); ++i)
                        key.push_back(static_cast<char>(x[i]));
                };
                for (int j = 0; j < kp; ++j) {
                    put(e.arrays.first[j]);
                    put(e.arrays.second[j]);
                }
                put(e.arrays.star);
            }
            return key;
        }
    }

    auto canonical_key(const Configuration & h) -> string
    {
        // same bytes as serialising canonical(h): positions become labels and every edge starts at the root
        string key;
        key.push_back(static_cast<char>(h.k));
        for (auto & n : h.nodes) {
            key.push_back(static_cast<char>(n.stack.size()));
            for (int i = 0; i < n.stack.size(); ++i) {
                key.push_back(static_cast<char>(n.stack[i] & 0xff));
                key.push_back(static_cast<char>(n.stack[i] >> 8));
            }
        }
        const int kp = kprime(h.k);
        auto put = [&](const CoordArray & x) {
            for (int i = 0; i < x.size(); ++i)
                key.push_back(static_cast<char>(x[i]));
        };
        const int root = h.root().label;
        for (int leaf = 1; leaf < h.node_count(); ++leaf) {
            const int label = h.nodes[leaf].label;
            int e = h.edge_to(label);
            if (e < 0)
                return canonical_key_slow(h);
            key.push_back(0);
            key.push_back(static_cast<char>(leaf));
            for (int j = 0; j < kp; ++j) {
                put(h.edges[e].side(root, j));
                put(h.edges[e].side(label, j));
            }
            put(h.edges[e].arrays.star);
        }
        return key;
    }

    auto equivalent(const Configuration & a, const Configuration & b) -> bool
    {
        return a.k == b.k && canonical(a) == canonical(b);
    }

    auto single_stack(int k, const Stack & s, int label) -> Configuration
    {
        Configuration h;
        h.k = k;
        h.nodes.push_back({label, s});
        return h;
    }

    auto describe(const Configuration & h) -> string
    {
        std::ostringstream os;
        for (int i = 0; i < h.node_count(); ++i) {
            if (i)
                os << " < ";
            os << h.nodes[i].label << ":[" << encode(h.nodes[i].stack) << "]";
        }
        const int kp = kprime(h.k);
        for (auto & e : h.edges) {
            os << " {" << e.u << "-" << e.w << ":";
            for (int j = 0; j < kp; ++j)
                os << " " << e.u << "." << j + 1 << "=(" << encode(e.arrays.first[j]) << ")";
            for (int j = 0; j < kp; ++j)
                os << " " << e.w << "." << j + 1 << "=(" << encode(e.arrays.second[j]) << ")";
            os << " *=(" << encode(e.arrays.star) << ")}";
        }
        return os.str();
    }

    auto describe(const HalfOp & op) -> string
    {
        switch (op.kind) {
            case HalfOpKind::vector_insert: return "insert vector " + std::to_string(op.vec) + " at node " + std::to_string(op.label);
            case HalfOpKind::vector_delete: return "delete vector at node " + std::to_string(op.label);
            case HalfOpKind::node_insert:
                return string("insert node ") + std::to_string(op.label) + (op.second_largest ? " as second largest" : " as largest");
            case HalfOpKind::node_delete: return "delete node " + std::to_string(op.label);
            case HalfOpKind::flip: return "flip";
        }
        return "?";
    }

    auto describe(const FullOp & op) -> string
    {
        string s;
        if (op.lead_flip)
            s += "flip; ";
        s += describe(op.insertion);
        if (op.mid_flip)
            s += "; flip";
        s += "; " + describe(op.deletion);
        if (op.trail_flip)
            s += "; flip";
        return s;
    }

    auto array_for_all(const vector<Stack> & stacks, const OvInstance & inst, int k) -> std::optional<CoordArray>
    {
        vector<Stack> distinct = stacks;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        auto good = [&](const CoordArray & x) {
            return std::all_of(distinct.begin(), distinct.end(), [&](auto & s) { return stack_ok_for(s, x, inst); });
        };
        if (distinct.empty())
            distinct.push_back(Stack{});
        if (distinct.size() <= 2) {
            try {
                auto x = common_coord_array(distinct.front(), distinct.back(), inst, k);
                if (good(x))
                    return x;
            }
            catch (const NoCommonCoordinate &) {
            }
        }
        CoordSpace space(inst.d, k - 1);
        if (space.size() > 20'000'000)
            return std::nullopt;
        for (std::uint64_t i = 0; i < space.size(); ++i) {
            auto x = space.at(i);
            if (good(x))
                return x;
        }
        return std::nullopt;
    }

    auto random_valid_configuration(const OvInstance & inst, int k, std::mt19937_64 & rng) -> Configuration
    {
        const int kp = kprime(k);
        const int root_min = (k - 2 + 1) / 2;
        for (int attempt = 0; attempt < 1000; ++attempt) {
            int s = std::uniform_int_distribution<int>(1, kp)(rng);
            int vectors = k - s;
            if (vectors < root_min)
                continue;
            vector<int> sizes(s, 0);
            sizes[0] = root_min;
            for (int extra = vectors - root_min; extra > 0; --extra)
                ++sizes[std::uniform_int_distribution<int>(0, s - 1)(rng)];
            if (*std::max_element(sizes.begin(), sizes.end()) > k - 1)
                continue;

            vector<int> labels(2 * kp);
            std::iota(labels.begin(), labels.end(), 0);
            std::shuffle(labels.begin(), labels.end(), rng);

            Configuration h;
            h.k = k;
            std::uniform_int_distribution<int> pick(0, inst.n() - 1);
            for (int i = 0; i < s; ++i) {
                Stack st;
                for (int j = 0; j < sizes[i]; ++j)
                    st = st.pushed(pick(rng));
                h.nodes.push_back({labels[i], st});
            }
            bool ok = true;
            for (int i = 1; i < s && ok; ++i) {
                ConfigEdge e{labels[i], labels[0], {}};
                // slot -> stacks that must satisfy it
                for (int slot = 0; slot <= 2 * kp && ok; ++slot) {
                    vector<Stack> need;
                    for (auto & ob : obligations(k, s))
                        if (ob.leaf == i && ob.slot == slot)
                            need.push_back(h.nodes[ob.position].stack);
                    auto x = array_for_all(need, inst, k);
                    if (! x) {
                        ok = false;
                        break;
                    }
                    if (slot < kp)
                        e.arrays.second[slot] = *x;
                    else if (slot < 2 * kp)
                        e.arrays.first[slot - kp] = *x;
                    else
                        e.arrays.star = *x;
                }
                h.edges.push_back(e);
            }
            if (! ok)
                continue;
            normalise(h);
            if (is_valid(h, inst))
                return h;
        }
        throw GenerationFailed{"could not build a valid configuration for this instance"};
    }

    namespace
    {
        constexpr int placeholder = -2;

        struct Skeleton
        {
            FullOp op;
            int new_label = -1;
        };

        // structural candidates; node insertions carry placeholder arrays
        auto structural_candidates(const Configuration & h, const OvInstance & inst, bool outer_flips) -> vector<Skeleton>
        {
            const int kp = kprime(h.k);
            vector<HalfOp> inserts;
            for (auto & n : h.nodes)
                for (int a = 0; a < inst.n(); ++a)
                    inserts.push_back(vector_insert(n.label, a));
            int fresh = -1;
            for (int l = 0; l < 2 * kp && fresh < 0; ++l)
                if (! h.has_label(l))
                    fresh = l;
            if (fresh >= 0) {
                EdgeConstraint blank;
                CoordArray zero;
                zero.resize(h.k - 1);
                for (int j = 0; j < kp; ++j)
                    blank.first[j] = blank.second[j] = zero;
                blank.star = zero;
                inserts.push_back(node_insert(fresh, false, blank));
                if (h.node_count() >= 2)
                    inserts.push_back(node_insert(fresh, true, blank));
            }

            vector<Skeleton> out;
            for (int lead = 0; lead <= (outer_flips ? 1 : 0); ++lead) {
                Configuration c0 = h;
                if (lead) {
                    if (h.node_count() != 2 || h.nodes[0].stack.size() != h.nodes[1].stack.size())
                        continue;
                    c0 = apply_half_op(h, flip());
                }
                for (auto & ins : inserts) {
                    Configuration c1;
                    try {
                        c1 = apply_half_op(c0, ins);
                    }
                    catch (const IllegalHalfOp &) {
                        continue;
                    }
                    for (int mid = 0; mid <= 1; ++mid) {
                        Configuration c2 = c1;
                        if (mid) {
                            if (c1.node_count() != 2 || c1.nodes[0].stack.size() != c1.nodes[1].stack.size())
                                continue;
                            c2 = apply_half_op(c1, flip());
                        }
                        vector<HalfOp> deletes;
                        for (int p = 0; p < c2.node_count(); ++p) {
                            if (! c2.nodes[p].stack.empty())
                                deletes.push_back(vector_delete(c2.nodes[p].label));
                            else if (p > 0 && p >= c2.node_count() - 2)
                                deletes.push_back(node_delete(c2.nodes[p].label));
                        }
                        for (auto & del : deletes) {
                            Configuration c3 = apply_half_op(c2, del);
                            for (int trail = 0; trail <= (outer_flips ? 1 : 0); ++trail) {
                                if (trail && (c3.node_count() != 2 || c3.nodes[0].stack.size() != c3.nodes[1].stack.size()))
                                    continue;
                                Skeleton sk;
                                sk.op.lead_flip = lead;
                                sk.op.insertion = ins;
                                sk.op.mid_flip = mid;
                                sk.op.deletion = del;
                                sk.op.trail_flip = trail;
                                sk.new_label = ins.kind == HalfOpKind::node_insert ? ins.label : -1;
                                out.push_back(sk);
                            }
                        }
                    }
                }
            }
            return out;
        }

        // which side an obligation on the new edge falls on: 0..k'-1 new node, k'..2k'-1 root at insertion, 2k' star
        struct SlotNeeds
        {
            vector<vector<Stack>> stacks;
        };

        auto check_except_new_edge(const OpTrace & t, const OvInstance & inst, int new_label, SlotNeeds & needs) -> bool
        {
            if (! t.multi_node)
                return false;
            const int kp = kprime(t.stages.front().k);
            needs.stacks.assign(2 * kp + 1, {});
            int other = -1;
            for (auto & c : t.stages) {
                if (c.nodes.empty() || ! root_large_enough(c))
                    return false;
                if (c.node_count() > kp + 1)
                    return false;
                for (auto & ob : obligations(c.k, c.node_count())) {
                    int leaf_label = c.nodes[ob.leaf].label;
                    int root_label = c.root().label;
                    const Stack & s = c.nodes[ob.position].stack;
                    if (new_label >= 0 && (leaf_label == new_label || root_label == new_label)) {
                        int partner = leaf_label == new_label ? root_label : leaf_label;
                        if (other < 0)
                            other = partner;
                        int owner = ob.slot < kp ? root_label : (ob.slot < 2 * kp ? leaf_label : -1);
                        int j = ob.slot < kp ? ob.slot : ob.slot - kp;
                        if (owner == -1)
                            needs.stacks[2 * kp].push_back(s);
                        else if (owner == new_label)
                            needs.stacks[j].push_back(s);
                        else
                            needs.stacks[kp + j].push_back(s);
                        if (s.size() > c.k - 1)
                            return false;
                        continue;
                    }
                    if (! stack_ok_for(s, slot_array(c, ob.leaf, ob.slot), inst))
                        return false;
                }
            }
            return true;
        }

        auto with_arrays(FullOp op, const vector<CoordArray> & slots, int kp) -> FullOp
        {
            for (int j = 0; j < kp; ++j) {
                op.insertion.arrays.first[j] = slots[j];
                op.insertion.arrays.second[j] = slots[kp + j];
            }
            op.insertion.arrays.star = slots[2 * kp];
            return op;
        }
    }

    auto random_valid_full_op(const Configuration & h, const OvInstance & inst, std::mt19937_64 & rng) -> std::optional<FullOp>
    {
        const int kp = kprime(h.k);
        vector<FullOp> valid;
        for (auto & sk : structural_candidates(h, inst, true)) {
            auto t = trace_full_op(h, sk.op, inst);
            SlotNeeds needs;
            if (! check_except_new_edge(t, inst, sk.new_label, needs))
                continue;
            if (sk.new_label < 0) {
                valid.push_back(sk.op);
                continue;
            }
            vector<CoordArray> slots;
            bool ok = true;
            for (int slot = 0; slot <= 2 * kp && ok; ++slot) {
                auto x = array_for_all(needs.stacks[slot], inst, h.k);
                if (! x)
                    ok = false;
                else
                    slots.push_back(*x);
            }
            if (ok)
                valid.push_back(with_arrays(sk.op, slots, kp));
        }
        if (valid.empty())
            return std::nullopt;
        auto op = valid[std::uniform_int_distribution<std::size_t>(0, valid.size() - 1)(rng)];
        apply_full_op(h, op, inst);
        return op;
    }

    auto valid_full_ops(const Configuration & h, const OvInstance & inst, const vector<CoordArray> & universe)
        -> vector<std::pair<FullOp, Configuration>>
    {
        const int kp = kprime(h.k);
        vector<std::pair<FullOp, Configuration>> out;
        for (auto & sk : structural_candidates(h, inst, false)) {
            auto t = trace_full_op(h, sk.op, inst);
            SlotNeeds needs;
            if (! check_except_new_edge(t, inst, sk.new_label, needs))
                continue;
            if (sk.new_label < 0) {
                out.emplace_back(sk.op, t.stages.back());
                continue;
            }
            vector<vector<CoordArray>> choices(2 * kp + 1);
            bool ok = true;
            for (int slot = 0; slot <= 2 * kp && ok; ++slot) {
                for (auto & x : universe)
                    if (std::all_of(needs.stacks[slot].begin(), needs.stacks[slot].end(), [&](auto & s) { return stack_ok_for(s, x, inst); }))
                        choices[slot].push_back(x);
                ok = ! choices[slot].empty();
            }
            if (! ok)
                continue;
            // every choice is valid by construction, so the traced result only needs its new edge filled in
            const Configuration & shape = t.stages.back();
            const int new_edge = shape.has_label(sk.new_label) ? shape.edge_to(sk.new_label) : -1;
            vector<std::size_t> at(2 * kp + 1, 0);
            for (;;) {
                vector<CoordArray> slots;
                for (int slot = 0; slot <= 2 * kp; ++slot)
                    slots.push_back(choices[slot][at[slot]]);
                auto op = with_arrays(sk.op, slots, kp);
                Configuration result = shape;
                if (new_edge >= 0) {
                    auto & e = result.edges[new_edge];
                    e.arrays = e.u == sk.new_label ? op.insertion.arrays : flipped(op.insertion.arrays);
                }
                out.emplace_back(op, std::move(result));
                int pos = 0;
                while (pos <= 2 * kp && ++at[pos] == choices[pos].size())
                    at[pos++] = 0;
                if (pos > 2 * kp)
                    break;
            }
        }
        return out;
    }

    auto count_vertices_bound(int n, int k, double universe_size) -> VertexBound
    {
        const int kp = kprime(k);
        const int root_min = (k - 2 + 1) / 2;
        VertexBound b;
        b.slot_exponent = (kp - 1) * (2 * kp + 1);
        for (int s = 1; s <= kp; ++s) {
            int vectors = k - s;
            if (vectors < root_min)
                continue;
            double orders = 1;
            for (int i = 0; i < s; ++i)
                orders *= 2 * kp - i;
            // distributions of the vectors over s stacks with the root holding at least root_min
            int free = vectors - root_min;
            double compositions = std::tgamma(free + s) / (std::tgamma(free + 1) * std::tgamma(s));
            b.constant += orders * compositions;
            b.bound += orders * compositions * std::pow(double(n), vectors) * std::pow(universe_size, (2 * kp + 1) * (s - 1));
        }
        b.closed_form = std::pow(double(n), k - 1) * std::pow(universe_size, b.slot_exponent);
        return b;
    }
}
