#ifndef OVDIAM_GUARD_GRAPH_HH
#define OVDIAM_GUARD_GRAPH_HH 1

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ovdiam
{
    using vertex = std::uint32_t;

    /**
     * Undirected graph in CSR form with optional 0/1 edge weights. Vertices
     * may also belong to a clique group: all members of a group are pairwise
     * adjacent with weight 1, without those edges being stored.
     */
    class Graph
    {
        public:
            Graph() = default;
            Graph(std::uint32_t vertex_count, std::vector<std::uint64_t> offsets, std::vector<vertex> targets,
                std::vector<std::uint8_t> weights = {}, std::vector<std::int32_t> group_of = {});

            auto vertex_count() const -> std::uint32_t { return n_; }
            auto neighbours(vertex v) const -> std::span<const vertex>
            {
                return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
            }
            auto weights(vertex v) const -> std::span<const std::uint8_t>
            {
                return {weights_.data() + offsets_[v], weights_.data() + offsets_[v + 1]};
            }
            auto weighted() const -> bool { return ! weights_.empty(); }

            auto has_groups() const -> bool { return ! group_of_.empty(); }
            auto group_count() const -> std::uint32_t { return static_cast<std::uint32_t>(group_offsets_.empty() ? 0 : group_offsets_.size() - 1); }
            auto group_of(vertex v) const -> std::int32_t { return group_of_.empty() ? -1 : group_of_[v]; }
            auto group_members(std::uint32_t g) const -> std::span<const vertex>
            {
                return {group_members_.data() + group_offsets_[g], group_members_.data() + group_offsets_[g + 1]};
            }

            /// Degree counting implied clique neighbours.
            auto degree(vertex v) const -> std::uint64_t;

            /// Stored undirected edges, self-loops excluded.
            auto stored_edge_count() const -> std::uint64_t;
            /// Stored edges plus implied clique edges.
            auto edge_count() const -> std::uint64_t;

            auto stored_arc_count() const -> std::uint64_t { return targets_.size(); }

        private:
            std::uint32_t n_ = 0;
            std::vector<std::uint64_t> offsets_{0};
            std::vector<vertex> targets_;
            std::vector<std::uint8_t> weights_;
            std::vector<std::int32_t> group_of_;
            std::vector<std::uint64_t> group_offsets_;
            std::vector<vertex> group_members_;
    };

    struct WeightedEdge
    {
        vertex u, v;
        std::uint8_t w = 1;
    };

    /// Builds a graph from an undirected edge list; duplicates keep the
    /// smallest weight, self-loops are dropped.
    auto graph_from_edges(std::uint32_t vertex_count, const std::vector<WeightedEdge> &,
        std::vector<std::int32_t> group_of = {}) -> Graph;

    /// Every edge once with u < v, implied clique edges included.
    auto materialised_edges(const Graph &) -> std::vector<WeightedEdge>;

    inline constexpr std::uint32_t unreachable = ~std::uint32_t{0};

    auto bfs(const Graph &, vertex source) -> std::vector<std::uint32_t>;
    auto zero_one_bfs(const Graph &, vertex source) -> std::vector<std::uint32_t>;

    /// Weighted distances when the graph has weights, plain BFS otherwise.
    auto distances_from(const Graph &, vertex source) -> std::vector<std::uint32_t>;

    struct Contraction
    {
        Graph graph;
        std::vector<vertex> representative;
    };

    /// Merges weight-0 components; the quotient is unweighted and carries no
    /// groups (input groups are materialised first).
    auto contract_zero_edges(const Graph &) -> Contraction;

    enum class DiameterMode
    {
        full,
        targeted,
        pruned
    };

    struct DiameterResult
    {
        std::uint32_t value = 0;
        vertex u = 0, v = 0;
        /// Graph traversals; a bit-parallel batch counts once in pruned mode,
        /// full mode counts sources.
        std::uint64_t sweeps = 0;
        bool exact = true;
    };

    struct DiameterOptions
    {
        DiameterMode mode = DiameterMode::full;
        std::vector<vertex> sources;
        std::uint64_t max_sweeps = 100000;
        int threads = 0;
    };

    /// Throws Disconnected when some pair is unreachable. Full mode is an
    /// all-sources sweep. Pruned mode is exact via eccentricity bounds and
    /// switches to bit-parallel batches over the remaining candidates once
    /// single sweeps stop pruning well. Targeted mode is the largest
    /// eccentricity among the given sources.
    auto exact_diameter(const Graph &, const DiameterOptions & = {}) -> DiameterResult;

    auto eccentricity(const Graph &, vertex source) -> std::uint32_t;

    /// Eccentricity of vertex 0, which lies in [ceil(D/2), D].
    auto two_approx(const Graph &) -> std::uint32_t;

    /// Thread count from DIAM_THREADS, defaulting to 1.
    auto configured_threads() -> int;

    auto write_graph(std::ostream &, const Graph &) -> void;
    auto read_graph(std::istream &) -> Graph;
}

#endif
