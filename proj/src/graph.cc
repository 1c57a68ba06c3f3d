#include <ovdiam/errors.hh>
#include <ovdiam/graph.hh>

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <deque>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

using std::uint32_t;
using std::uint64_t;
using std::vector;

namespace ovdiam
{
    Graph::Graph(uint32_t vertex_count, vector<uint64_t> offsets, vector<vertex> targets,
        vector<std::uint8_t> weights, vector<std::int32_t> group_of) :
        n_(vertex_count),
        offsets_(std::move(offsets)),
        targets_(std::move(targets)),
        weights_(std::move(weights)),
        group_of_(std::move(group_of))
    {
        if (offsets_.size() != n_ + std::size_t{1})
            throw std::invalid_argument{"offsets must have vertex_count + 1 entries"};
        if (! weights_.empty() && weights_.size() != targets_.size())
            throw std::invalid_argument{"one weight per stored arc"};
        if (! group_of_.empty()) {
            if (group_of_.size() != n_)
                throw std::invalid_argument{"one group entry per vertex"};
            std::int32_t groups = 0;
            for (auto g : group_of_)
                groups = std::max(groups, g + 1);
            group_offsets_.assign(groups + 1, 0);
            for (auto g : group_of_)
                if (g >= 0)
                    ++group_offsets_[g + 1];
            std::partial_sum(group_offsets_.begin(), group_offsets_.end(), group_offsets_.begin());
            group_members_.resize(group_offsets_.back());
            auto fill = group_offsets_;
            for (vertex v = 0; v < n_; ++v)
                if (group_of_[v] >= 0)
                    group_members_[fill[group_of_[v]]++] = v;
        }
    }

    auto Graph::degree(vertex v) const -> uint64_t
    {
        uint64_t d = offsets_[v + 1] - offsets_[v];
        if (group_of(v) >= 0)
            d += group_members(group_of(v)).size() - 1;
        return d;
    }

    auto Graph::stored_edge_count() const -> uint64_t
    {
        uint64_t loops = 0;
        for (vertex v = 0; v < n_; ++v)
            for (auto w : neighbours(v))
                if (w == v)
                    ++loops;
        return (targets_.size() - loops) / 2;
    }

    auto Graph::edge_count() const -> uint64_t
    {
        uint64_t e = stored_edge_count();
        for (uint32_t g = 0; g < group_count(); ++g) {
            uint64_t s = group_members(g).size();
            e += s * (s - 1) / 2;
        }
        return e;
    }

    auto graph_from_edges(uint32_t vertex_count, const vector<WeightedEdge> & edges, vector<std::int32_t> group_of) -> Graph
    {
        vector<WeightedEdge> arcs;
        arcs.reserve(edges.size() * 2);
        bool any_zero = false;
        for (auto & e : edges) {
            if (e.u >= vertex_count || e.v >= vertex_count)
                throw std::invalid_argument{"edge endpoint out of range"};
            if (e.w > 1)
                throw std::invalid_argument{"edge weights must be 0 or 1"};
            if (e.u == e.v)
                continue;
            any_zero = any_zero || e.w == 0;
            arcs.push_back(e);
            arcs.push_back({e.v, e.u, e.w});
        }
        std::sort(arcs.begin(), arcs.end(), [](auto & a, auto & b) {
            return std::tie(a.u, a.v, a.w) < std::tie(b.u, b.v, b.w);
        });
        arcs.erase(std::unique(arcs.begin(), arcs.end(), [](auto & a, auto & b) { return a.u == b.u && a.v == b.v; }), arcs.end());

        vector<uint64_t> offsets(vertex_count + 1, 0);
        vector<vertex> targets;
        vector<std::uint8_t> weights;
        targets.reserve(arcs.size());
        for (auto & a : arcs) {
            ++offsets[a.u + 1];
            targets.push_back(a.v);
            if (any_zero)
                weights.push_back(a.w);
        }
        std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
        return Graph(vertex_count, std::move(offsets), std::move(targets), std::move(weights), std::move(group_of));
    }

    auto materialised_edges(const Graph & g) -> vector<WeightedEdge>
    {
        vector<WeightedEdge> out;
        for (vertex v = 0; v < g.vertex_count(); ++v) {
            auto nb = g.neighbours(v);
            for (std::size_t i = 0; i < nb.size(); ++i)
                if (v < nb[i])
                    out.push_back({v, nb[i], g.weighted() ? g.weights(v)[i] : std::uint8_t{1}});
        }
        for (uint32_t grp = 0; grp < g.group_count(); ++grp) {
            auto m = g.group_members(grp);
            for (std::size_t i = 0; i < m.size(); ++i)
                for (std::size_t j = i + 1; j < m.size(); ++j)
                    out.push_back({std::min(m[i], m[j]), std::max(m[i], m[j]), 1});
        }
        std::sort(out.begin(), out.end(), [](auto & a, auto & b) { return std::tie(a.u, a.v, a.w) < std::tie(b.u, b.v, b.w); });
        out.erase(std::unique(out.begin(), out.end(), [](auto & a, auto & b) { return a.u == b.u && a.v == b.v; }), out.end());
        return out;
    }

    auto bfs(const Graph & g, vertex source) -> vector<uint32_t>
    {
        vector<uint32_t> dist(g.vertex_count(), unreachable);
        vector<char> group_done(g.group_count(), 0);
        vector<vertex> queue;
        queue.reserve(g.vertex_count());
        dist[source] = 0;
        queue.push_back(source);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            vertex u = queue[head];
            uint32_t du = dist[u];
            for (auto w : g.neighbours(u))
                if (dist[w] == unreachable) {
                    dist[w] = du + 1;
                    queue.push_back(w);
                }
            auto grp = g.group_of(u);
            if (grp >= 0 && ! group_done[grp]) {
                group_done[grp] = 1;
                for (auto w : g.group_members(grp))
                    if (dist[w] == unreachable) {
                        dist[w] = du + 1;
                        queue.push_back(w);
                    }
            }
        }
        return dist;
    }

    auto zero_one_bfs(const Graph & g, vertex source) -> vector<uint32_t>
    {
        vector<uint32_t> dist(g.vertex_count(), unreachable);
        vector<char> group_done(g.group_count(), 0);
        std::deque<vertex> dq;
        dist[source] = 0;
        dq.push_back(source);
        vector<char> settled(g.vertex_count(), 0);
        while (! dq.empty()) {
            vertex u = dq.front();
            dq.pop_front();
            if (settled[u])
                continue;
            settled[u] = 1;
            uint32_t du = dist[u];
            auto nb = g.neighbours(u);
            for (std::size_t i = 0; i < nb.size(); ++i) {
                uint32_t w8 = g.weighted() ? g.weights(u)[i] : 1;
                vertex w = nb[i];
                if (du + w8 < dist[w]) {
                    dist[w] = du + w8;
                    if (w8 == 0)
                        dq.push_front(w);
                    else
                        dq.push_back(w);
                }
            }
            auto grp = g.group_of(u);
            if (grp >= 0 && ! group_done[grp]) {
                group_done[grp] = 1;
                for (auto w : g.group_members(grp))
                    if (du + 1 < dist[w]) {
                        dist[w] = du + 1;
                        dq.push_back(w);
                    }
            }
        }
        return dist;
    }

    auto distances_from(const Graph & g, vertex source) -> vector<uint32_t>
    {
        return g.weighted() ? zero_one_bfs(g, source) : bfs(g, source);
    }

    auto contract_zero_edges(const Graph & g) -> Contraction
    {
        vector<vertex> parent(g.vertex_count());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](vertex x) {
            while (parent[x] != x) {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            return x;
        };
        auto edges = materialised_edges(g);
        for (auto & e : edges)
            if (e.w == 0) {
                auto a = find(e.u), b = find(e.v);
                if (a != b)
                    parent[std::max(a, b)] = std::min(a, b);
            }

        vector<vertex> id(g.vertex_count(), unreachable);
        uint32_t count = 0;
        Contraction result;
        result.representative.resize(g.vertex_count());
        for (vertex v = 0; v < g.vertex_count(); ++v) {
            auto r = find(v);
            if (id[r] == unreachable)
                id[r] = count++;
            result.representative[v] = id[r];
        }
        vector<WeightedEdge> q;
        for (auto & e : edges)
            if (e.w == 1)
                q.push_back({result.representative[e.u], result.representative[e.v], 1});
        result.graph = graph_from_edges(count, q);
        return result;
    }

    auto configured_threads() -> int
    {
        if (auto * env = std::getenv("DIAM_THREADS")) {
            int t = std::atoi(env);
            if (t >= 1)
                return t;
        }
        return 1;
    }

    namespace
    {
        constexpr int ms_words = 4;
        constexpr int ms_width = 64 * ms_words;
        using Lanes = std::array<uint64_t, ms_words>;

        // bit-parallel BFS from up to ms_width sources; returns eccentricities
        auto multi_source_ecc(const Graph & g, const vector<vertex> & sources) -> vector<uint32_t>
        {
            const uint32_t n = g.vertex_count();
            vector<Lanes> seen(n, Lanes{}), frontier(n, Lanes{}), next(n, Lanes{});
            vector<Lanes> gmask(g.group_count(), Lanes{});
            vector<uint32_t> ecc(sources.size(), 0);
            Lanes all{};
            for (std::size_t i = 0; i < sources.size(); ++i) {
                Lanes bit{};
                bit[i / 64] = uint64_t{1} << (i % 64);
                for (int w = 0; w < ms_words; ++w) {
                    seen[sources[i]][w] |= bit[w];
                    frontier[sources[i]][w] |= bit[w];
                    all[w] |= bit[w];
                }
            }

            for (uint32_t level = 1;; ++level) {
                if (g.group_count()) {
                    std::fill(gmask.begin(), gmask.end(), Lanes{});
                    for (vertex v = 0; v < n; ++v) {
                        auto grp = g.group_of(v);
                        if (grp >= 0)
                            for (int w = 0; w < ms_words; ++w)
                                gmask[grp][w] |= frontier[v][w];
                    }
                }
                Lanes any{};
                for (vertex v = 0; v < n; ++v) {
                    Lanes m{};
                    auto grp = g.group_of(v);
                    if (grp >= 0)
                        m = gmask[grp];
                    for (auto u : g.neighbours(v))
                        for (int w = 0; w < ms_words; ++w)
                            m[w] |= frontier[u][w];
                    for (int w = 0; w < ms_words; ++w) {
                        m[w] &= ~seen[v][w];
                        any[w] |= m[w];
                    }
                    next[v] = m;
                }
                bool progressed = false;
                for (int w = 0; w < ms_words; ++w)
                    progressed = progressed || any[w];
                if (! progressed)
                    break;
                for (std::size_t i = 0; i < sources.size(); ++i)
                    if ((any[i / 64] >> (i % 64)) & 1u)
                        ecc[i] = level;
                for (vertex v = 0; v < n; ++v)
                    for (int w = 0; w < ms_words; ++w)
                        seen[v][w] |= next[v][w];
                std::swap(frontier, next);
            }

            for (vertex v = 0; v < n; ++v)
                for (int w = 0; w < ms_words; ++w)
                    if ((seen[v][w] & all[w]) != all[w])
                        throw Disconnected{"graph is disconnected"};
            return ecc;
        }

        auto ecc_of(const vector<uint32_t> & dist) -> std::pair<uint32_t, vertex>
        {
            uint32_t e = 0;
            vertex far = 0;
            for (vertex v = 0; v < dist.size(); ++v) {
                if (dist[v] == unreachable)
                    throw Disconnected{"graph is disconnected"};
                if (dist[v] > e) {
                    e = dist[v];
                    far = v;
                }
            }
            return {e, far};
        }

        auto all_sources(const Graph & g, int threads) -> DiameterResult
        {
            const uint32_t n = g.vertex_count();
            DiameterResult best;
            std::mutex lock;
            std::atomic<uint32_t> next_batch{0};
            const uint32_t batch = g.weighted() ? 1 : ms_width;
            auto worker = [&]() {
                for (;;) {
                    uint32_t start = next_batch.fetch_add(batch);
                    if (start >= n)
                        return;
                    uint32_t end = std::min(n, start + batch);
                    vector<uint32_t> eccs;
                    vector<vertex> srcs;
                    for (vertex v = start; v < end; ++v)
                        srcs.push_back(v);
                    if (g.weighted())
                        eccs.push_back(ecc_of(zero_one_bfs(g, start)).first);
                    else
                        eccs = multi_source_ecc(g, srcs);
                    std::lock_guard guard(lock);
                    best.sweeps += srcs.size();
                    for (std::size_t i = 0; i < srcs.size(); ++i)
                        if (eccs[i] > best.value || (eccs[i] == best.value && srcs[i] < best.u)) {
                            best.value = eccs[i];
                            best.u = srcs[i];
                        }
                }
            };
            threads = std::max(1, threads);
            vector<std::thread> pool;
            std::exception_ptr failure;
            std::mutex failure_lock;
            auto guarded = [&]() {
                try {
                    worker();
                }
                catch (...) {
                    std::lock_guard guard(failure_lock);
                    failure = std::current_exception();
                    next_batch = n;
                }
            };
            for (int t = 1; t < threads; ++t)
                pool.emplace_back(guarded);
            guarded();
            for (auto & t : pool)
                t.join();
            if (failure)
                std::rethrow_exception(failure);
            best.v = ecc_of(distances_from(g, best.u)).second;
            if (best.value == 0)
                best.v = best.u;
            return best;
        }

        auto bounded(const Graph & g, uint64_t max_sweeps) -> DiameterResult
        {
            const uint32_t n = g.vertex_count();
            vector<uint32_t> lower(n, 0), upper(n, unreachable);
            vector<char> candidate(n, 1);
            uint64_t remaining = n;
            DiameterResult best;
            best.exact = false;

            vertex pick = 0;
            for (vertex v = 1; v < n; ++v)
                if (g.degree(v) > g.degree(pick))
                    pick = v;

            // once single sweeps prune less than a bit-parallel batch covers,
            // the remaining candidates are finished in batches
            constexpr uint64_t window = 16;
            uint64_t window_start = remaining;
            bool high_upper = true;
            while (remaining > 0) {
                if (best.sweeps >= max_sweeps)
                    return best;
                if (! g.weighted() && best.sweeps >= window && best.sweeps % window == 0) {
                    if (window_start - remaining < window * ms_width / 2)
                        break;
                    window_start = remaining;
                }
                auto dist = distances_from(g, pick);
                ++best.sweeps;
                auto [e, far] = ecc_of(dist);
                if (e > best.value || best.sweeps == 1) {
                    best.value = std::max(best.value, e);
                    best.u = pick;
                    best.v = far;
                }
                for (vertex w = 0; w < n; ++w) {
                    if (! candidate[w])
                        continue;
                    lower[w] = std::max({lower[w], dist[w], e > dist[w] ? e - dist[w] : 0u});
                    upper[w] = std::min(upper[w], e + dist[w]);
                    if (upper[w] <= best.value || w == pick) {
                        candidate[w] = 0;
                        --remaining;
                    }
                }
                if (remaining == 0)
                    break;
                // alternate between the most peripheral and the most central candidate
                bool found = false;
                for (vertex w = 0; w < n; ++w) {
                    if (! candidate[w])
                        continue;
                    if (! found) {
                        pick = w;
                        found = true;
                        continue;
                    }
                    if (high_upper) {
                        if (upper[w] > upper[pick] || (upper[w] == upper[pick] && g.degree(w) > g.degree(pick)))
                            pick = w;
                    }
                    else if (lower[w] < lower[pick] || (lower[w] == lower[pick] && g.degree(w) > g.degree(pick)))
                        pick = w;
                }
                high_upper = ! high_upper;
            }
            if (remaining > 0) {
                vector<vertex> batch;
                auto flush = [&]() {
                    auto eccs = multi_source_ecc(g, batch);
                    ++best.sweeps;
                    for (std::size_t i = 0; i < batch.size(); ++i)
                        if (eccs[i] > best.value) {
                            best.value = eccs[i];
                            best.u = batch[i];
                            best.v = ecc_of(distances_from(g, batch[i])).second;
                        }
                    batch.clear();
                };
                for (vertex w = 0; w < n; ++w) {
                    if (! candidate[w])
                        continue;
                    batch.push_back(w);
                    if (batch.size() == ms_width) {
                        if (best.sweeps >= max_sweeps)
                            return best;
                        flush();
                    }
                }
                if (! batch.empty())
                    flush();
            }
            best.exact = true;
            return best;
        }
    }

    auto eccentricity(const Graph & g, vertex source) -> uint32_t
    {
        return ecc_of(distances_from(g, source)).first;
    }

    auto exact_diameter(const Graph & g, const DiameterOptions & opts) -> DiameterResult
    {
        if (g.vertex_count() == 0)
            return {};
        switch (opts.mode) {
            case DiameterMode::full:
                return all_sources(g, opts.threads > 0 ? opts.threads : configured_threads());
            case DiameterMode::pruned:
                return bounded(g, opts.max_sweeps);
            case DiameterMode::targeted: {
                DiameterResult best;
                best.exact = false;
                for (auto s : opts.sources) {
                    auto [e, far] = ecc_of(distances_from(g, s));
                    ++best.sweeps;
                    if (best.sweeps == 1 || e > best.value) {
                        best.value = e;
                        best.u = s;
                        best.v = far;
                    }
                }
                return best;
            }
        }
        return {};
    }

    auto two_approx(const Graph & g) -> uint32_t
    {
        if (g.vertex_count() == 0)
            return 0;
        return eccentricity(g, 0);
    }

    auto write_graph(std::ostream & os, const Graph & g) -> void
    {
        auto edges = materialised_edges(g);
        os << "p diam " << g.vertex_count() << ' ' << edges.size() << '\n';
        for (auto & e : edges)
            os << "e " << e.u << ' ' << e.v << ' ' << int(e.w) << '\n';
    }

    auto read_graph(std::istream & is) -> Graph
    {
        std::string line;
        bool have_header = false;
        uint64_t n = 0, m = 0;
        vector<WeightedEdge> edges;
        std::size_t line_no = 0;
        while (std::getline(is, line)) {
            ++line_no;
            if (line.empty() || line[0] == 'c')
                continue;
            std::istringstream ls(line);
            std::string tag;
            ls >> tag;
            if (tag == "p") {
                std::string kind;
                if (have_header || ! (ls >> kind >> n >> m) || kind != "diam")
                    throw ParseError{"bad header at line " + std::to_string(line_no)};
                if (n > unreachable - 1)
                    throw ParseError{"too many vertices"};
                have_header = true;
            }
            else if (tag == "e") {
                uint64_t u, v;
                int w = 1;
                if (! have_header || ! (ls >> u >> v))
                    throw ParseError{"bad edge at line " + std::to_string(line_no)};
                if (! (ls >> w))
                    w = 1;
                if (u >= n || v >= n || (w != 0 && w != 1))
                    throw ParseError{"edge out of range at line " + std::to_string(line_no)};
                edges.push_back({static_cast<vertex>(u), static_cast<vertex>(v), static_cast<std::uint8_t>(w)});
            }
            else
                throw ParseError{"unknown line at " + std::to_string(line_no)};
        }
        if (! have_header)
            throw ParseError{"missing 'p diam V E' header"};
        if (edges.size() != m)
            throw ParseError{"edge count does not match header"};
        return graph_from_edges(static_cast<uint32_t>(n), edges);
    }
}
