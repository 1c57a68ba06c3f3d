#ifndef OVDIAM_GUARD_SYMBOLIC_HH
#define OVDIAM_GUARD_SYMBOLIC_HH 1

#include <ovdiam/configuration.hh>
#include <ovdiam/graph.hh>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ovdiam
{
    struct SymbolicOptions
    {
        std::uint64_t state_cap = 50'000'000;
        /// Arrays edges may carry; empty means all of [d]^(k-1).
        std::vector<CoordArray> universe;
        /// Follow the start root through the search and check that after t
        /// operations it still holds the bottom k-1-t vectors of its stack.
        /// Adds the followed node to the state identity.
        bool check_prefix = false;
    };

    /**
     * Breadth-first search over configurations up to renaming, where each
     * edge carries, per slot, the set of arrays still able to serve every
     * stack that slot has had to serve. A state is kept while every set is
     * non-empty, so a state exists at depth t exactly when some concrete
     * configuration with that shape is reachable in t operations.
     */
    class SymbolicSearch
    {
        public:
            SymbolicSearch(const OvInstance &, const Configuration & start, SymbolicOptions = {});
            ~SymbolicSearch();
            SymbolicSearch(SymbolicSearch &&) noexcept;

            /// Expands one more operation. False once the frontier is empty or
            /// the cap is hit.
            auto advance() -> bool;

            auto depth() const -> int;
            auto exhausted() const -> bool;
            auto cap_hit() const -> bool;
            auto state_count() const -> std::uint64_t;
            auto layer_sizes() const -> const std::vector<std::uint64_t> &;

            /// First depth at which a shape (stacks in order) was seen.
            auto shape_depths() const -> const std::unordered_map<std::string, int> &;
            auto first_depth(const std::vector<Stack> & shape) const -> std::optional<int>;

            auto prefix_claim_held() const -> bool;
            auto edges_persisted() const -> bool;
            auto first_violation() const -> const std::string &;

        private:
            struct Impl;
            std::unique_ptr<Impl> impl_;
    };

    auto shape_key(const std::vector<Stack> &) -> std::string;
    auto shape_of(const Configuration &) -> std::vector<Stack>;

    enum class YesBoundStatus
    {
        certified,
        reached,
        budget_exceeded
    };

    struct YesBoundResult
    {
        int k = 0;
        int budget = 0;
        YesBoundStatus status = YesBoundStatus::certified;
        /// Depth at which the far configuration first appears, if it did
        /// within the explored depths.
        std::optional<int> first_reach_depth;
        int explored_depth = 0;
        bool exhausted = false;
        bool cap_hit = false;
        std::uint64_t states = 0;
        std::vector<std::uint64_t> layer_sizes;
        bool prefix_claim_held = true;
        bool edges_persisted = true;
        std::string violation;
    };

    struct YesBoundOptions
    {
        std::uint64_t state_cap = 50'000'000;
        /// Keep searching past the budget up to this depth to locate the
        /// first reaching depth; 0 stops at the budget.
        int sweep_to = 0;
    };

    /// Searches from the one-stack configuration (a_1..a_{k-1}) towards the
    /// one-stack configuration (a_k..a_2).
    auto yes_case_bound(const OvInstance &, const OvWitness &, int budget, const YesBoundOptions & = {}) -> YesBoundResult;

    /**
     * The graph on valid size-k configurations (up to renaming) whose arrays
     * all come from `universe`, explored from `start` up to `max_depth`
     * operations. Operation edges weigh 1 and flip edges 0.
     */
    struct RestrictedGraph
    {
        Graph graph;
        std::vector<Configuration> vertices;
        std::unordered_map<std::string, vertex> index;
        /// Exploration ran dry before `max_depth`, so this is the whole
        /// component of `start`.
        bool complete = false;
    };

    auto build_restricted_graph(const OvInstance &, const Configuration & start, const std::vector<CoordArray> & universe,
        int max_depth) -> RestrictedGraph;

    /// A node of a configuration reduced to its role and stack size.
    struct ShapeNode
    {
        enum Role : std::uint8_t
        {
            kept,
            doomed,
            other
        };

        Role role = other;
        int size = 0;

        auto operator==(const ShapeNode &) const -> bool = default;
    };

    struct RootDeletion
    {
        std::optional<int> operations;
        int node_deletions = 0;
        int vector_deletions = 0;
        std::vector<std::vector<ShapeNode>> path;
    };

    /**
     * Fewest full operations, ignoring edge constraints but keeping every
     * structural rule and the root size bound, that delete the `doomed` node
     * while the `kept` node survives. Nodes are listed in order, root first.
     */
    auto min_ops_deleting_root(int k, const std::vector<ShapeNode> & start, int max_depth) -> RootDeletion;

    /// Every size-k shape whose root is `doomed` and which has an empty
    /// non-root `kept` leaf.
    auto root_deletion_starts(int k) -> std::vector<std::vector<ShapeNode>>;
}

#endif
