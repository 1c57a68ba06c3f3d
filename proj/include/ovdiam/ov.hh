#ifndef OVDIAM_GUARD_OV_HH
#define OVDIAM_GUARD_OV_HH 1

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ovdiam
{
    inline constexpr int max_dimension = 64;

    /**
     * A k-OV instance: n binary vectors of dimension d, stored one word per
     * vector with bit c holding coordinate c (0-based). Text forms use
     * 1-based coordinates.
     */
    struct OvInstance
    {
        int k = 0;
        int d = 0;
        std::vector<std::uint64_t> vectors;

        auto n() const -> int { return static_cast<int>(vectors.size()); }
        auto bit(int v, int c) const -> bool { return (vectors[v] >> c) & 1u; }
        auto full_mask() const -> std::uint64_t;
        auto row_string(int v) const -> std::string;
    };

    struct OvWitness
    {
        std::vector<int> indices;
    };

    auto make_instance(int k, const std::vector<std::string> & rows) -> OvInstance;

    /// Exhaustive search over index tuples with repetition; returns the first
    /// orthogonal j-tuple in lexicographic order of nondecreasing tuples.
    auto solve_kov_bruteforce(const OvInstance &, int j) -> std::optional<OvWitness>;

    /// True when some tuple of at most j vectors is orthogonal.
    auto has_orthogonal_upto(const OvInstance &, int j) -> bool;

    auto is_orthogonal(const OvInstance &, std::span<const int> indices) -> bool;

    /// Smallest coordinate (0-based) where all listed vectors are 1.
    auto ind(const OvInstance &, std::span<const int> indices) -> int;

    struct GeneratorOptions
    {
        double density = 0.8;
        int max_retries = 10000;
    };

    /// Dense random vectors, rejection sampled so that no tuple of at most k
    /// vectors is orthogonal. The all-ones vector is the last vector.
    auto generate_no_instance(int k, int d, int n, std::uint64_t seed, const GeneratorOptions & = {}) -> OvInstance;

    /// Vectors 0..k-1 are generalised one-hole vectors (vector i is zero on
    /// every coordinate c with c mod k == i), so they form the only planted
    /// orthogonal k-tuple. When n > k the all-ones vector follows, then random
    /// padding that keeps the instance free of orthogonal (k-1)-tuples.
    auto generate_yes_instance(int k, int d, int n, std::uint64_t seed, const GeneratorOptions & = {})
        -> std::pair<OvInstance, OvWitness>;

    /// Same instance with vectors and coordinates renamed by a seeded shuffle;
    /// the witness is mapped along.
    auto shuffle_instance(const OvInstance &, OvWitness &, std::uint64_t seed) -> OvInstance;

    auto write_instance(std::ostream &, const OvInstance &) -> void;
    auto read_instance(std::istream &) -> OvInstance;
    auto read_instance_file(const std::string & path) -> OvInstance;
    auto write_instance_file(const std::string & path, const OvInstance &) -> void;
}

#endif
