#ifndef OVDIAM_GUARD_STACK_HH
#define OVDIAM_GUARD_STACK_HH 1

#include <ovdiam/ov.hh>

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace ovdiam
{
    /// Longest stack we store; caps k at max_stack_len + 1.
    inline constexpr int max_stack_len = 8;
    inline constexpr int max_k = max_stack_len + 1;

    /**
     * A sequence of vector indices, bottom first. Small and fixed-capacity so
     * it can be hashed and copied cheaply.
     */
    class Stack
    {
        public:
            Stack() = default;
            Stack(std::initializer_list<int> items);
            explicit Stack(const std::vector<int> & items);

            auto size() const -> int { return size_; }
            auto empty() const -> bool { return size_ == 0; }
            auto operator[](int i) const -> int { return items_[i]; }
            auto top() const -> int { return items_[size_ - 1]; }

            auto popped() const -> Stack;
            auto pushed(int b) const -> Stack;
            auto prefix(int len) const -> Stack;
            auto reversed() const -> Stack;
            auto to_vector() const -> std::vector<int>;

            auto operator==(const Stack & other) const -> bool;
            auto operator<=>(const Stack & other) const -> std::strong_ordering;

        private:
            std::array<std::uint16_t, max_stack_len> items_{};
            std::uint8_t size_ = 0;
    };

    auto concat(const Stack &, const Stack &) -> Stack;

    /// Comma separated indices, empty string for the empty stack.
    auto encode(const Stack &) -> std::string;
    auto decode_stack(const std::string &) -> Stack;

    /// An element of [d]^(k-1); entries are 0-based coordinates.
    class CoordArray
    {
        public:
            CoordArray() = default;
            CoordArray(std::initializer_list<int> coords);
            explicit CoordArray(const std::vector<int> & coords);

            auto size() const -> int { return size_; }
            auto operator[](int i) const -> int { return coords_[i]; }
            auto set(int i, int c) -> void { coords_[i] = static_cast<std::uint8_t>(c); }
            auto resize(int s) -> void { size_ = static_cast<std::uint8_t>(s); }

            auto operator==(const CoordArray & other) const -> bool;
            auto operator<=>(const CoordArray & other) const -> std::strong_ordering;

        private:
            std::array<std::uint8_t, max_stack_len> coords_{};
            std::uint8_t size_ = 0;
    };

    /// Comma separated 1-based coordinates.
    auto encode(const CoordArray &) -> std::string;
    auto decode_coords(const std::string &) -> CoordArray;

    /// Nested-set satisfaction, decided by the prefix-union rule: with C_h the
    /// positions where the h-th vector is 0, the union of C_1..C_h may hold at
    /// most h-1 positions for every h.
    auto satisfies(const Stack &, const CoordArray &, const OvInstance &) -> bool;

    /// Direct search for the chain of nested position sets. Exponential, used
    /// as an oracle.
    auto satisfies_bruteforce(const Stack &, const CoordArray &, const OvInstance &) -> bool;

    /// x[l] = ind(first k-l entries of S, first l entries of S') for l = 1..k-1,
    /// entries past the end of a stack being skipped.
    auto common_coord_array(const Stack &, const Stack &, const OvInstance &, int k) -> CoordArray;

    /// For an orthogonal tuple a_1..a_k: whether (a_1..a_j) and (a_k..a_{j+1})
    /// both satisfy x. Stacks longer than k-1 satisfy nothing.
    auto yes1_conflict(int j, const std::vector<int> & tuple, const CoordArray &, const OvInstance &) -> bool;

    /// The set [d]^m with a mixed-radix numbering.
    class CoordSpace
    {
        public:
            CoordSpace(int d, int m);

            auto d() const -> int { return d_; }
            auto length() const -> int { return m_; }
            auto size() const -> std::uint64_t { return size_; }
            auto at(std::uint64_t index) const -> CoordArray;
            auto index_of(const CoordArray &) const -> std::uint64_t;

        private:
            int d_, m_;
            std::uint64_t size_;
    };

    /// Bitset over a CoordSpace of the arrays a stack satisfies.
    auto satisfaction_bits(const Stack &, const CoordSpace &, const OvInstance &) -> std::vector<std::uint64_t>;

    /// All stacks of exactly the given length over n vectors, lexicographic.
    auto all_stacks(int n, int length) -> std::vector<Stack>;
}

#endif
