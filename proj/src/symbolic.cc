#include <ovdiam/errors.hh>
#include <ovdiam/symbolic.hh>

#include <algorithm>
#include <cstring>
#include <unordered_set>

using std::string;
using std::uint64_t;
using std::vector;

namespace ovdiam
{
    namespace
    {
        constexpr int max_nodes = max_kprime + 2;

        struct State
        {
            int origin = -1;
            int s = 0;
            std::array<Stack, max_nodes> stacks;
            /// Per leaf position 1..s-1, `slots` bitsets of `words` words each.
            vector<uint64_t> bits;
        };

        auto put_stack(string & out, const Stack & st) -> void
        {
            out.push_back(static_cast<char>(st.size()));
            for (int i = 0; i < st.size(); ++i) {
                out.push_back(static_cast<char>(st[i] & 0xff));
                out.push_back(static_cast<char>(st[i] >> 8));
            }
        }
    }

    auto shape_key(const vector<Stack> & shape) -> string
    {
        string key;
        key.push_back(static_cast<char>(shape.size()));
        for (auto & st : shape)
            put_stack(key, st);
        return key;
    }

    auto shape_of(const Configuration & h) -> vector<Stack>
    {
        vector<Stack> out;
        for (auto & n : h.nodes)
            out.push_back(n.stack);
        return out;
    }

    struct SymbolicSearch::Impl
    {
        const OvInstance & inst;
        int k, kp, slots, words;
        SymbolicOptions opt;
        vector<CoordArray> universe;
        vector<uint64_t> all;
        vector<vector<Obligation>> table;

        vector<uint64_t> stack_offset;
        vector<vector<uint64_t>> masks;
        vector<char> have_mask;

        Stack start_root;
        std::unordered_set<string> seen;
        vector<std::pair<string, bool>> frontier;
        std::unordered_map<string, int> shape_depths;
        vector<uint64_t> layer_sizes;
        int depth = 0;
        bool exhausted = false, cap_hit = false;
        bool prefix_ok = true, edges_ok = true;
        string violation;

        Impl(const OvInstance & inst_, const Configuration & start, SymbolicOptions o) :
            inst(inst_), k(start.k), kp(kprime(start.k)), slots(2 * kprime(start.k) + 1), opt(std::move(o))
        {
            if (k < 2 || k > max_stack_len || k != inst.k)
                throw WrongK{"symbolic search needs 2 <= k <= " + std::to_string(max_stack_len) + " matching the instance"};
            if (! is_valid(start, inst))
                throw InvalidIntermediate{"start configuration is not valid"};
            universe = opt.universe;
            if (universe.empty()) {
                CoordSpace space(inst.d, k - 1);
                if (space.size() > 1'000'000)
                    throw BudgetExceeded{"array universe too large for the symbolic search"};
                for (uint64_t i = 0; i < space.size(); ++i)
                    universe.push_back(space.at(i));
            }
            for (auto & x : universe) {
                if (x.size() != k - 1)
                    throw ParseError{"universe arrays must have length k-1"};
                for (int i = 0; i < x.size(); ++i)
                    if (x[i] >= inst.d)
                        throw ParseError{"universe array coordinate out of range"};
            }
            words = static_cast<int>((universe.size() + 63) / 64);
            all.assign(words, 0);
            for (std::size_t i = 0; i < universe.size(); ++i)
                all[i / 64] |= uint64_t{1} << (i % 64);

            table.resize(kp + 2);
            for (int s = 1; s <= kp + 1; ++s)
                table[s] = obligations(k, s);

            uint64_t total = 0, power = 1;
            for (int len = 0; len <= k - 1; ++len) {
                stack_offset.push_back(total);
                total += power;
                power *= static_cast<uint64_t>(inst.n());
                if (total > 5'000'000)
                    throw BudgetExceeded{"too many stacks for the symbolic search"};
            }
            masks.resize(total);
            have_mask.assign(total, 0);

            State st;
            st.s = start.node_count();
            for (int i = 0; i < st.s; ++i)
                st.stacks[i] = start.nodes[i].stack;
            st.origin = opt.check_prefix ? 0 : -1;
            start_root = start.root().stack;
            st.bits.assign(static_cast<std::size_t>(st.s - 1) * slots * words, 0);
            for (int leaf = 1; leaf < st.s; ++leaf)
                for (int slot = 0; slot < slots; ++slot) {
                    const CoordArray & x = slot_array(start, leaf, slot);
                    auto it = std::find(universe.begin(), universe.end(), x);
                    if (it == universe.end())
                        throw ParseError{"start configuration uses an array outside the universe"};
                    auto idx = static_cast<std::size_t>(it - universe.begin());
                    slot_bits(st, leaf, slot)[idx / 64] |= uint64_t{1} << (idx % 64);
                }
            if (! constrain(st))
                throw InvalidIntermediate{"start configuration is not valid"};
            auto key = encode(st);
            seen.insert(key);
            shape_depths.emplace(shape(st), 0);
            frontier.emplace_back(std::move(key), false);
            close_under_flips(frontier, 0);
            layer_sizes.push_back(frontier.size());
        }

        auto slot_bits(State & st, int leaf, int slot) -> uint64_t *
        {
            return st.bits.data() + (static_cast<std::size_t>(leaf - 1) * slots + slot) * words;
        }

        auto mask(const Stack & st) -> const vector<uint64_t> &
        {
            uint64_t id = 0, p = 1;
            for (int i = 0; i < st.size(); ++i, p *= static_cast<uint64_t>(inst.n()))
                id += static_cast<uint64_t>(st[i]) * p;
            id += stack_offset[st.size()];
            if (! have_mask[id]) {
                vector<uint64_t> m(words, 0);
                for (std::size_t i = 0; i < universe.size(); ++i)
                    if (satisfies(st, universe[i], inst))
                        m[i / 64] |= uint64_t{1} << (i % 64);
                masks[id] = std::move(m);
                have_mask[id] = 1;
            }
            return masks[id];
        }

        // intersects every obligation of the current shape into the slot sets
        auto constrain(State & st) -> bool
        {
            if (st.s > kp + 1 || 2 * st.stacks[0].size() < k - 2)
                return false;
            for (int i = 0; i < st.s; ++i)
                if (st.stacks[i].size() > k - 1 && st.s > 1)
                    return false;
            for (auto & ob : table[st.s]) {
                auto & m = mask(st.stacks[ob.position]);
                uint64_t * b = slot_bits(st, ob.leaf, ob.slot);
                uint64_t any = 0;
                for (int w = 0; w < words; ++w)
                    any |= (b[w] &= m[w]);
                if (! any)
                    return false;
            }
            return true;
        }

        auto encode(const State & st) const -> string
        {
            string key;
            key.reserve(2 + st.s * 17 + st.bits.size() * 8);
            key.push_back(static_cast<char>(st.origin));
            key.push_back(static_cast<char>(st.s));
            for (int i = 0; i < st.s; ++i)
                put_stack(key, st.stacks[i]);
            const auto offset = key.size();
            key.resize(offset + st.bits.size() * 8);
            std::memcpy(key.data() + offset, st.bits.data(), st.bits.size() * 8);
            return key;
        }

        auto decode(const string & key) const -> State
        {
            State st;
            std::size_t at = 0;
            st.origin = static_cast<signed char>(key[at++]);
            st.s = static_cast<unsigned char>(key[at++]);
            for (int i = 0; i < st.s; ++i) {
                int len = static_cast<unsigned char>(key[at++]);
                Stack s;
                for (int j = 0; j < len; ++j, at += 2)
                    s = s.pushed(static_cast<unsigned char>(key[at]) | (static_cast<unsigned char>(key[at + 1]) << 8));
                st.stacks[i] = s;
            }
            st.bits.resize((key.size() - at) / 8);
            std::memcpy(st.bits.data(), key.data() + at, st.bits.size() * 8);
            return st;
        }

        auto shape(const State & st) const -> string
        {
            return shape_key(vector<Stack>(st.stacks.begin(), st.stacks.begin() + st.s));
        }

        static auto flippable(const State & st) -> bool
        {
            return st.s == 2 && st.stacks[0].size() == st.stacks[1].size();
        }

        auto flipped(State st) const -> State
        {
            std::swap(st.stacks[0], st.stacks[1]);
            if (st.origin >= 0)
                st.origin = 1 - st.origin;
            auto * b = st.bits.data();
            for (int j = 0; j < kp; ++j)
                std::swap_ranges(b + j * words, b + (j + 1) * words, b + (kp + j) * words);
            return st;
        }

        auto record(State && st, int d, vector<std::pair<string, bool>> & layer, bool from_flip) -> void
        {
            auto key = encode(st);
            if (! seen.insert(key).second)
                return;
            shape_depths.emplace(shape(st), d);
            layer.emplace_back(std::move(key), from_flip);
            if (seen.size() >= opt.state_cap)
                cap_hit = true;
        }

        auto close_under_flips(vector<std::pair<string, bool>> & layer, int d) -> void
        {
            for (std::size_t i = 0; i < layer.size() && ! cap_hit; ++i) {
                if (layer[i].second)
                    continue;
                State st = decode(layer[i].first);
                if (! flippable(st))
                    continue;
                State f = flipped(std::move(st));
                if (constrain(f))
                    record(std::move(f), d, layer, true);
            }
        }

        auto prefix_held(const State & st, int t) -> bool
        {
            int need = std::max(0, start_root.size() - t);
            if (st.origin < 0)
                return need == 0;
            const Stack & s = st.stacks[st.origin];
            return s.size() >= need && s.prefix(need) == start_root.prefix(need);
        }

        // unordered pairs of node ids joined by an edge, as a bitmask over id pairs
        static auto edge_mask(const State & st, const std::array<int, max_nodes> & ids) -> uint64_t
        {
            uint64_t m = 0;
            for (int i = 1; i < st.s; ++i) {
                int a = std::min(ids[0], ids[i]), b = std::max(ids[0], ids[i]);
                m |= uint64_t{1} << (a * max_nodes + b);
            }
            return m;
        }

        auto check(const State & st, int t, const char * what) -> void
        {
            if (opt.check_prefix && prefix_ok && ! prefix_held(st, t)) {
                prefix_ok = false;
                violation = string{"start root lost more than one vector per operation ("} + what + ")";
            }
        }

        auto expand(const State & h, int t, vector<std::pair<string, bool>> & next) -> void
        {
            const int n = inst.n();
            std::array<int, max_nodes> ids0{};
            for (int i = 0; i < h.s; ++i)
                ids0[i] = i;
            const uint64_t edges0 = edge_mask(h, ids0);

            auto after_insertion = [&](State s1, std::array<int, max_nodes> ids1) {
                if (! constrain(s1))
                    return;
                check(s1, t, "insertion");
                for (int mid = 0; mid <= 1; ++mid) {
                    State s2 = s1;
                    auto ids2 = ids1;
                    if (mid) {
                        if (! flippable(s1))
                            continue;
                        s2 = flipped(s1);
                        std::swap(ids2[0], ids2[1]);
                        if (! constrain(s2))
                            continue;
                        check(s2, t, "flip");
                    }
                    const uint64_t edges2 = edge_mask(s2, ids2);
                    for (int p = 0; p < s2.s; ++p) {
                        State s3 = s2;
                        auto ids3 = ids2;
                        if (! s2.stacks[p].empty())
                            s3.stacks[p] = s2.stacks[p].popped();
                        else if (p > 0 && p >= s2.s - 2) {
                            auto first = s3.bits.begin() + static_cast<std::ptrdiff_t>(p - 1) * slots * words;
                            s3.bits.erase(first, first + slots * words);
                            for (int i = p; i + 1 < s3.s; ++i) {
                                s3.stacks[i] = s3.stacks[i + 1];
                                ids3[i] = ids3[i + 1];
                            }
                            if (s3.origin == p)
                                s3.origin = -1;
                            else if (s3.origin > p)
                                --s3.origin;
                            --s3.s;
                        }
                        else
                            continue;
                        if (h.s < 2 && s3.s < 2)
                            continue;
                        if (! constrain(s3))
                            continue;
                        check(s3, t, "deletion");
                        const uint64_t edges3 = edge_mask(s3, ids3);
                        if (edges_ok && ((edges0 & edges3) & ~(edge_mask(s1, ids1) & edges2))) {
                            edges_ok = false;
                            violation = "an edge present before and after an operation vanished in between";
                        }
                        record(std::move(s3), t, next, false);
                        if (cap_hit)
                            return;
                    }
                }
            };

            for (int p = 0; p < h.s && ! cap_hit; ++p) {
                if (h.stacks[p].size() >= max_stack_len)
                    continue;
                for (int a = 0; a < n && ! cap_hit; ++a) {
                    State s1 = h;
                    s1.stacks[p] = h.stacks[p].pushed(a);
                    after_insertion(std::move(s1), ids0);
                }
            }
            if (h.s + 1 > kp + 1 || cap_hit)
                return;
            for (int second = 0; second <= (h.s >= 2 ? 1 : 0) && ! cap_hit; ++second) {
                State s1 = h;
                auto ids1 = ids0;
                int at = second ? h.s - 1 : h.s;
                for (int i = h.s; i > at; --i) {
                    s1.stacks[i] = s1.stacks[i - 1];
                    ids1[i] = ids1[i - 1];
                }
                s1.stacks[at] = Stack{};
                ids1[at] = h.s;
                if (s1.origin >= at)
                    ++s1.origin;
                auto pos = s1.bits.begin() + static_cast<std::ptrdiff_t>(at - 1) * slots * words;
                vector<uint64_t> fresh;
                for (int slot = 0; slot < slots; ++slot)
                    fresh.insert(fresh.end(), all.begin(), all.end());
                s1.bits.insert(pos, fresh.begin(), fresh.end());
                ++s1.s;
                after_insertion(std::move(s1), ids1);
            }
        }

        auto advance() -> bool
        {
            if (exhausted || cap_hit)
                return false;
            vector<std::pair<string, bool>> next;
            const int t = depth + 1;
            for (auto & [key, from_flip] : frontier) {
                expand(decode(key), t, next);
                if (cap_hit)
                    break;
            }
            if (! cap_hit)
                close_under_flips(next, t);
            if (cap_hit)
                return false;
            depth = t;
            layer_sizes.push_back(next.size());
            frontier = std::move(next);
            if (frontier.empty())
                exhausted = true;
            return true;
        }
    };

    SymbolicSearch::SymbolicSearch(const OvInstance & inst, const Configuration & start, SymbolicOptions opt) :
        impl_(std::make_unique<Impl>(inst, start, std::move(opt)))
    {
    }

    SymbolicSearch::~SymbolicSearch() = default;
    SymbolicSearch::SymbolicSearch(SymbolicSearch &&) noexcept = default;

    auto SymbolicSearch::advance() -> bool { return impl_->advance(); }
    auto SymbolicSearch::depth() const -> int { return impl_->depth; }
    auto SymbolicSearch::exhausted() const -> bool { return impl_->exhausted; }
    auto SymbolicSearch::cap_hit() const -> bool { return impl_->cap_hit; }
    auto SymbolicSearch::state_count() const -> std::uint64_t { return impl_->seen.size(); }
    auto SymbolicSearch::layer_sizes() const -> const vector<std::uint64_t> & { return impl_->layer_sizes; }
    auto SymbolicSearch::shape_depths() const -> const std::unordered_map<string, int> & { return impl_->shape_depths; }
    auto SymbolicSearch::prefix_claim_held() const -> bool { return impl_->prefix_ok; }
    auto SymbolicSearch::edges_persisted() const -> bool { return impl_->edges_ok; }
    auto SymbolicSearch::first_violation() const -> const string & { return impl_->violation; }

    auto SymbolicSearch::first_depth(const vector<Stack> & shape) const -> std::optional<int>
    {
        auto it = impl_->shape_depths.find(shape_key(shape));
        if (it == impl_->shape_depths.end())
            return std::nullopt;
        return it->second;
    }

    auto yes_case_bound(const OvInstance & inst, const OvWitness & witness, int budget, const YesBoundOptions & options) -> YesBoundResult
    {
        const int k = inst.k;
        if (static_cast<int>(witness.indices.size()) != k || ! is_orthogonal(inst, witness.indices))
            throw GenerationFailed{"witness is not an orthogonal k-tuple of the instance"};
        const auto & a = witness.indices;
        Stack start_stack, target;
        for (int i = 0; i < k - 1; ++i)
            start_stack = start_stack.pushed(a[i]);
        for (int i = k - 1; i >= 1; --i)
            target = target.pushed(a[i]);

        SymbolicOptions so;
        so.state_cap = options.state_cap;
        so.check_prefix = true;
        SymbolicSearch search(inst, single_stack(k, start_stack), so);

        YesBoundResult r;
        r.k = k;
        r.budget = budget;
        const int limit = std::max(budget, options.sweep_to);
        const vector<Stack> goal{target};
        r.first_reach_depth = search.first_depth(goal);
        while (! r.first_reach_depth && search.depth() < limit && search.advance())
            r.first_reach_depth = search.first_depth(goal);

        r.explored_depth = search.depth();
        r.exhausted = search.exhausted();
        r.states = search.state_count();
        r.layer_sizes = search.layer_sizes();
        r.prefix_claim_held = search.prefix_claim_held();
        r.edges_persisted = search.edges_persisted();
        r.violation = search.first_violation();
        if (r.first_reach_depth && *r.first_reach_depth <= budget)
            r.status = YesBoundStatus::reached;
        else if (search.cap_hit() && r.explored_depth < budget)
            r.status = YesBoundStatus::budget_exceeded;
        else
            r.status = YesBoundStatus::certified;
        r.cap_hit = search.cap_hit();
        return r;
    }

    auto build_restricted_graph(const OvInstance & inst, const Configuration & start, const vector<CoordArray> & universe, int max_depth)
        -> RestrictedGraph
    {
        if (! is_valid(start, inst))
            throw InvalidIntermediate{"start configuration is not valid"};
        RestrictedGraph out;
        vector<WeightedEdge> edges;
        auto id_of = [&](const Configuration & c, vector<vertex> & layer) -> vertex {
            auto key = canonical_key(c);
            auto [it, fresh] = out.index.emplace(key, static_cast<vertex>(out.vertices.size()));
            if (fresh) {
                out.vertices.push_back(canonical(c));
                layer.push_back(it->second);
            }
            return it->second;
        };
        auto close = [&](vector<vertex> & layer) {
            for (std::size_t i = 0; i < layer.size(); ++i) {
                const Configuration c = out.vertices[layer[i]];
                if (c.node_count() != 2 || c.nodes[0].stack.size() != c.nodes[1].stack.size())
                    continue;
                auto f = apply_half_op(c, flip());
                if (! is_valid(f, inst))
                    continue;
                edges.push_back({layer[i], id_of(f, layer), 0});
            }
        };

        vector<vertex> layer;
        id_of(start, layer);
        close(layer);
        for (int t = 1; t <= max_depth && ! layer.empty(); ++t) {
            vector<vertex> next;
            for (vertex v : layer) {
                const Configuration c = out.vertices[v];
                for (auto & [op, result] : valid_full_ops(c, inst, universe))
                    edges.push_back({v, id_of(result, next), 1});
            }
            close(next);
            layer = std::move(next);
        }
        out.complete = layer.empty();
        out.graph = graph_from_edges(static_cast<std::uint32_t>(out.vertices.size()), edges);
        return out;
    }

    namespace
    {
        using Shape = vector<ShapeNode>;

        auto shape_string(const Shape & s) -> string
        {
            string key;
            for (auto & n : s) {
                key.push_back(static_cast<char>(n.role));
                key.push_back(static_cast<char>(n.size));
            }
            return key;
        }

        auto shape_ok(const Shape & s, int k) -> bool
        {
            if (s.empty() || static_cast<int>(s.size()) > kprime(k) + 1 || 2 * s[0].size < k - 2)
                return false;
            if (s.size() > 1)
                for (auto & n : s)
                    if (n.size > k - 1)
                        return false;
            return true;
        }

        auto flippable(const Shape & s) -> bool
        {
            return s.size() == 2 && s[0].size == s[1].size;
        }

        auto has_role(const Shape & s, ShapeNode::Role r) -> bool
        {
            return std::any_of(s.begin(), s.end(), [&](auto & n) { return n.role == r; });
        }

        enum class Deleted
        {
            none,
            node,
            vec
        };

        struct Step
        {
            Shape shape;
            Deleted deleted;
        };

        auto shape_successors(const Shape & h, int k) -> vector<Step>
        {
            vector<Shape> inserted;
            for (std::size_t p = 0; p < h.size(); ++p) {
                Shape s = h;
                ++s[p].size;
                inserted.push_back(s);
            }
            if (static_cast<int>(h.size()) < 2 * kprime(k)) {
                Shape s = h;
                s.push_back({ShapeNode::other, 0});
                inserted.push_back(s);
                if (h.size() >= 2) {
                    s = h;
                    s.insert(s.end() - 1, ShapeNode{ShapeNode::other, 0});
                    inserted.push_back(s);
                }
            }
            vector<Step> out;
            for (auto & s1 : inserted) {
                if (! shape_ok(s1, k))
                    continue;
                for (int mid = 0; mid <= 1; ++mid) {
                    Shape s2 = s1;
                    if (mid) {
                        if (! flippable(s1))
                            continue;
                        std::swap(s2[0], s2[1]);
                        if (! shape_ok(s2, k))
                            continue;
                    }
                    for (std::size_t p = 0; p < s2.size(); ++p) {
                        Shape s3 = s2;
                        Deleted what;
                        if (s2[p].size > 0) {
                            --s3[p].size;
                            what = Deleted::vec;
                        }
                        else if (p > 0 && p + 2 >= s2.size()) {
                            s3.erase(s3.begin() + static_cast<std::ptrdiff_t>(p));
                            what = Deleted::node;
                        }
                        else
                            continue;
                        if (h.size() < 2 && s3.size() < 2)
                            continue;
                        if (shape_ok(s3, k))
                            out.push_back({s3, what});
                    }
                }
            }
            return out;
        }
    }

    auto min_ops_deleting_root(int k, const vector<ShapeNode> & start, int max_depth) -> RootDeletion
    {
        struct Entry
        {
            Shape shape;
            int parent;
            Deleted deleted;
            int depth;
        };
        vector<Entry> entries;
        std::unordered_set<string> seen;
        auto push = [&](Shape s, int parent, Deleted deleted, int depth, vector<int> & layer) {
            if (! has_role(s, ShapeNode::kept) || ! seen.insert(shape_string(s)).second)
                return;
            entries.push_back({std::move(s), parent, deleted, depth});
            layer.push_back(static_cast<int>(entries.size()) - 1);
        };
        // flips cost nothing, so each layer is closed under them
        auto close = [&](vector<int> & layer) {
            for (std::size_t i = 0; i < layer.size(); ++i) {
                Shape f = entries[layer[i]].shape;
                if (! flippable(f))
                    continue;
                std::swap(f[0], f[1]);
                if (shape_ok(f, k))
                    push(f, layer[i], Deleted::none, entries[layer[i]].depth, layer);
            }
        };

        vector<int> layer;
        push(start, -1, Deleted::none, 0, layer);
        close(layer);
        int goal = -1;
        for (int t = 0; goal < 0 && ! layer.empty(); ++t) {
            for (int id : layer)
                if (! has_role(entries[id].shape, ShapeNode::doomed)) {
                    goal = id;
                    break;
                }
            if (goal >= 0 || t == max_depth)
                break;
            vector<int> next;
            for (int id : layer) {
                const Shape h = entries[id].shape;
                for (auto & step : shape_successors(h, k))
                    push(step.shape, id, step.deleted, t + 1, next);
            }
            close(next);
            layer = std::move(next);
        }

        RootDeletion r;
        if (goal < 0)
            return r;
        r.operations = entries[goal].depth;
        for (int at = goal; at >= 0; at = entries[at].parent) {
            r.path.push_back(entries[at].shape);
            r.node_deletions += entries[at].deleted == Deleted::node;
            r.vector_deletions += entries[at].deleted == Deleted::vec;
        }
        std::reverse(r.path.begin(), r.path.end());
        return r;
    }

    auto root_deletion_starts(int k) -> vector<vector<ShapeNode>>
    {
        vector<Shape> out;
        for (int s = 2; s <= kprime(k) + 1; ++s) {
            const int vectors = k - s;
            for (int kept = 1; kept < s; ++kept) {
                // distribute `vectors` over the nodes other than the kept leaf
                vector<int> sizes(s, 0);
                auto rec = [&](auto & self, int node, int left) -> void {
                    if (node == s) {
                        if (left != 0)
                            return;
                        Shape sh;
                        for (int i = 0; i < s; ++i)
                            sh.push_back({i == 0 ? ShapeNode::doomed : (i == kept ? ShapeNode::kept : ShapeNode::other), sizes[i]});
                        if (shape_ok(sh, k))
                            out.push_back(sh);
                        return;
                    }
                    if (node == kept) {
                        sizes[node] = 0;
                        self(self, node + 1, left);
                        return;
                    }
                    for (int c = 0; c <= left; ++c) {
                        sizes[node] = c;
                        self(self, node + 1, left - c);
                    }
                };
                rec(rec, 0, vectors);
            }
        }
        return out;
    }
}
