#ifndef OVDIAM_GUARD_TESTS_LEMMA_SUITE_HH
#define OVDIAM_GUARD_TESTS_LEMMA_SUITE_HH 1

#include <cstdint>
#include <string>
#include <vector>

namespace ovdiam::testing
{
    struct LemmaCheck
    {
        std::string name;
        std::uint64_t cases = 0;
        std::uint64_t failures = 0;
        std::string example;

        auto passed() const -> bool { return failures == 0 && cases > 0; }
        auto fail(const std::string & what) -> void
        {
            if (failures++ == 0)
                example = what;
        }
    };

    /// Randomized cases per property; exhaustive micro-cases come on top.
    inline constexpr int default_random_cases = 1000;

    auto check_substack_closure(std::uint64_t seed, int random_cases = default_random_cases) -> LemmaCheck;
    auto check_common_array(std::uint64_t seed, int random_cases = default_random_cases) -> LemmaCheck;
    auto check_split_conflict(std::uint64_t seed, int random_cases = default_random_cases) -> LemmaCheck;
    auto check_k5_stack_merges(std::uint64_t seed) -> LemmaCheck;
    auto check_inverse_ops(std::uint64_t seed, int random_cases = default_random_cases) -> LemmaCheck;
    auto check_deletions_keep_edges(std::uint64_t seed, int random_cases = default_random_cases) -> LemmaCheck;
    auto check_permutation_composition(std::uint64_t seed, int random_cases = default_random_cases) -> LemmaCheck;
    auto check_relabelled_half_ops(std::uint64_t seed, int random_cases = default_random_cases) -> LemmaCheck;
    auto check_relabelled_validity(std::uint64_t seed, int random_cases = default_random_cases) -> LemmaCheck;
    auto check_relabelled_full_ops(std::uint64_t seed, int random_cases = default_random_cases) -> LemmaCheck;
    auto check_root_deletion_cost(std::uint64_t seed, int random_cases = default_random_cases) -> LemmaCheck;

    auto all_lemma_checks(std::uint64_t seed, int random_cases = default_random_cases) -> std::vector<LemmaCheck>;

    /// Fast satisfaction against the chain search over every vector of
    /// {0,1}^d as the instance, all stacks up to length k-1, all of [d]^(k-1).
    auto check_satisfaction_exhaustive() -> LemmaCheck;
}

#endif
