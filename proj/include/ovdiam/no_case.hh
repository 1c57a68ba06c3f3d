#ifndef OVDIAM_GUARD_NO_CASE_HH
#define OVDIAM_GUARD_NO_CASE_HH 1

#include <ovdiam/configuration.hh>

#include <vector>

namespace ovdiam
{
    struct PathStep
    {
        enum class Kind
        {
            operation,
            flip_edge
        };

        Kind kind = Kind::operation;
        FullOp op;
        Configuration before, after;
        OpTrace trace;
    };

    /**
     * A path between two valid size-k configurations of a no-instance: half
     * the operations move H to a two-node middle configuration, a flip edge
     * (even k) or one operation with a middle flip (odd k) crosses over, and
     * the rest are inverses of the operations taking H' to its own middle.
     */
    struct NoCasePath
    {
        /// Applied to H' so its labels avoid those of H.
        Permutation relabel;
        /// Arrays on the edge between the two roots, `first` for H's root.
        EdgeConstraint bridge;
        Configuration mid, mid_prime;
        std::vector<PathStep> steps;

        auto operation_count() const -> int;
        auto end() const -> const Configuration & { return steps.back().after; }
    };

    /// The arrays of the bridging edge between the roots of H and H'
    /// (labels already disjoint); `first` belongs to H's root.
    auto bridge_constraint(const Configuration & h, const Configuration & h_prime, const OvInstance &) -> EdgeConstraint;

    /// Throws PathConstructionFailed if any step is not a valid operation.
    auto no_case_path(const Configuration & h, const Configuration & h_prime, const OvInstance &) -> NoCasePath;
}

#endif
