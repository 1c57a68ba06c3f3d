#ifndef OVDIAM_GUARD_CONFIGURATION_HH
#define OVDIAM_GUARD_CONFIGURATION_HH 1

#include <ovdiam/ov.hh>
#include <ovdiam/stack.hh>

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ovdiam
{
    inline constexpr int max_kprime = max_k / 2 + 1;

    /// Number of array slots per endpoint of an edge: floor(k/2) + 1.
    inline constexpr auto kprime(int k) -> int { return k / 2 + 1; }

    /// 2k'+1 coordinate arrays on an edge (u, w): k' for u, k' for w, one shared.
    struct EdgeConstraint
    {
        std::array<CoordArray, max_kprime> first, second;
        CoordArray star;

        auto operator==(const EdgeConstraint &) const -> bool = default;
    };

    struct ConfigEdge
    {
        int u = 0, w = 0;
        EdgeConstraint arrays;

        auto side(int label, int j) const -> const CoordArray & { return label == u ? arrays.first[j] : arrays.second[j]; }
        auto side(int label, int j) -> CoordArray & { return label == u ? arrays.first[j] : arrays.second[j]; }
        auto operator==(const ConfigEdge &) const -> bool = default;
    };

    struct ConfigNode
    {
        int label = 0;
        Stack stack;

        auto operator==(const ConfigNode &) const -> bool = default;
    };

    /**
     * A star whose nodes are listed in their total order, the first being the
     * root. Every other node has exactly one edge, to the root. Node labels
     * are drawn from 0 .. 2k'-1.
     */
    struct Configuration
    {
        int k = 0;
        std::vector<ConfigNode> nodes;
        std::vector<ConfigEdge> edges;

        auto root() const -> const ConfigNode & { return nodes.front(); }
        auto node_count() const -> int { return static_cast<int>(nodes.size()); }
        auto size() const -> int;
        auto position_of(int label) const -> int;
        auto edge_to(int label) const -> int;
        auto has_label(int label) const -> bool { return position_of(label) >= 0; }
        auto operator==(const Configuration &) const -> bool = default;
    };

    /// One required (stack, array) pair: the node at `position` must satisfy
    /// slot `slot` of the edge whose non-root endpoint sits at `leaf`. Slots
    /// 0..k'-1 are the root's arrays, k'..2k'-1 the leaf's, 2k' the shared one.
    struct Obligation
    {
        int position, leaf, slot;
    };

    /// Obligations of a star with `nodes` nodes, purely positional.
    auto obligations(int k, int nodes) -> std::vector<Obligation>;

    auto slot_array(const Configuration &, int leaf_position, int slot) -> const CoordArray &;

    /// Structural well-formedness: star shape, distinct labels, array lengths.
    auto is_well_formed(const Configuration &) -> bool;
    auto is_edge_satisfying(const Configuration &, const OvInstance &) -> bool;
    auto root_large_enough(const Configuration &) -> bool;
    auto is_valid(const Configuration &, const OvInstance &) -> bool;

    enum class HalfOpKind
    {
        vector_insert,
        vector_delete,
        node_insert,
        node_delete,
        flip
    };

    struct HalfOp
    {
        HalfOpKind kind = HalfOpKind::flip;
        int label = -1;
        int vec = -1;
        bool second_largest = false;
        /// Node insertion: `first` holds the new node's arrays, `second` the root's.
        EdgeConstraint arrays;

        auto operator==(const HalfOp &) const -> bool = default;
    };

    auto vector_insert(int label, int vec) -> HalfOp;
    auto vector_delete(int label) -> HalfOp;
    auto node_insert(int label, bool second_largest, const EdgeConstraint &) -> HalfOp;
    auto node_delete(int label) -> HalfOp;
    auto flip() -> HalfOp;

    auto is_insertion(const HalfOp &) -> bool;
    auto is_deletion(const HalfOp &) -> bool;

    /// Structural application; throws IllegalHalfOp.
    auto apply_half_op(const Configuration &, const HalfOp &) -> Configuration;

    /**
     * An insertion, an optional flip, then a deletion. The optional leading
     * and trailing flips stand for adjacent weight-0 flip edges; they keep the
     * set of operations closed under inversion.
     */
    struct FullOp
    {
        bool lead_flip = false;
        HalfOp insertion;
        bool mid_flip = false;
        HalfOp deletion;
        bool trail_flip = false;

        auto operator==(const FullOp &) const -> bool = default;
    };

    struct OpTrace
    {
        std::vector<Configuration> stages;
        std::vector<std::string> labels;
        std::vector<bool> valid;
        bool multi_node = false;

        auto all_valid() const -> bool;
    };

    /// Every stage configuration, each checked for validity.
    auto trace_full_op(const Configuration &, const FullOp &, const OvInstance &) -> OpTrace;

    /// Result of a valid full operation; throws IllegalHalfOp or InvalidIntermediate.
    auto apply_full_op(const Configuration &, const FullOp &, const OvInstance &) -> Configuration;

    /// The operation taking the result of `op` on H back to H.
    auto inverse_full_op(const Configuration &, const FullOp &) -> FullOp;

    using Permutation = std::vector<int>;

    auto identity_permutation(int k) -> Permutation;
    auto compose(const Permutation & outer, const Permutation & inner) -> Permutation;
    auto apply_permutation(const Configuration &, const Permutation &) -> Configuration;
    auto apply_permutation(const FullOp &, const Permutation &) -> FullOp;

    /// Labels renamed by order position, edges oriented from the smaller label.
    auto canonical(const Configuration &) -> Configuration;
    auto canonical_key(const Configuration &) -> std::string;
    auto equivalent(const Configuration &, const Configuration &) -> bool;

    auto single_stack(int k, const Stack &, int label = 0) -> Configuration;

    auto describe(const Configuration &) -> std::string;
    auto describe(const HalfOp &) -> std::string;
    auto describe(const FullOp &) -> std::string;

    /// Random valid size-k configuration; arrays are filled from the stacks
    /// each slot must serve, so a no-instance always succeeds.
    auto random_valid_configuration(const OvInstance &, int k, std::mt19937_64 &) -> Configuration;

    /// First array in [d]^(k-1) satisfied by all given stacks.
    auto array_for_all(const std::vector<Stack> &, const OvInstance &, int k) -> std::optional<CoordArray>;

    /// A uniformly chosen valid full operation among the structural
    /// candidates; node insertions get arrays chosen to serve every stage.
    auto random_valid_full_op(const Configuration &, const OvInstance &, std::mt19937_64 &) -> std::optional<FullOp>;

    /// Every full operation without leading or trailing flips whose node
    /// insertions draw arrays from `universe`; only valid ones are returned.
    auto valid_full_ops(const Configuration &, const OvInstance &, const std::vector<CoordArray> & universe)
        -> std::vector<std::pair<FullOp, Configuration>>;

    struct VertexBound
    {
        /// Labelled shapes and orders times stack-size distributions.
        double constant = 0;
        /// n^(k-1) * universe_size^((k'-1)(2k'+1)).
        double closed_form = 0;
        /// Exact count of labelled size-k configurations with a large enough
        /// root and arrays from the universe, validity ignored.
        double bound = 0;
        int slot_exponent = 0;
    };

    /// Counts labelled configurations; bound <= constant * closed_form.
    auto count_vertices_bound(int n, int k, double universe_size) -> VertexBound;
}

#endif
