#include <doctest.h>

#include <ovdiam/errors.hh>
#include <ovdiam/stack.hh>

#include <random>

using namespace ovdiam;

TEST_CASE("stack operations")
{
    Stack s{3, 1, 2};
    CHECK(s.size() == 3);
    CHECK(s.top() == 2);
    CHECK(s.popped() == Stack{3, 1});
    CHECK(s.pushed(0) == Stack{3, 1, 2, 0});
    CHECK(s.prefix(1) == Stack{3});
    CHECK(s.reversed() == Stack{2, 1, 3});
    CHECK(concat(Stack{1}, Stack{2, 3}) == Stack{1, 2, 3});
    CHECK(Stack{1, 2} < Stack{1, 2, 0});
    CHECK(encode(s) == "3,1,2");
    CHECK(decode_stack("3,1,2") == s);
    CHECK(decode_stack("").empty());
    CHECK_THROWS_AS(decode_stack("1,x"), ParseError);
    CHECK_THROWS_AS(Stack({0, 0, 0, 0, 0, 0, 0, 0, 0}), StackTooLong);
}

TEST_CASE("coordinate arrays print 1-based")
{
    CoordArray x{0, 2, 1};
    CHECK(encode(x) == "1,3,2");
    CHECK(decode_coords("1,3,2") == x);
    CHECK_THROWS_AS(decode_coords("0,1"), ParseError);
}

TEST_CASE("coordinate space numbering round trips")
{
    CoordSpace space(3, 4);
    CHECK(space.size() == 81);
    for (std::uint64_t i = 0; i < space.size(); ++i)
        CHECK(space.index_of(space.at(i)) == i);
}

TEST_CASE("satisfaction on a hand-checked example")
{
    // vector 0 is zero on coordinate 0, vector 1 on coordinate 1
    auto inst = make_instance(4, {"011", "101", "111"});
    // a single vector needs every listed coordinate to be 1
    CHECK(satisfies(Stack{0}, CoordArray{1, 2, 2}, inst));
    CHECK_FALSE(satisfies(Stack{0}, CoordArray{0, 1, 2}, inst));
    // two vectors may share one bad coordinate
    CHECK(satisfies(Stack{2, 0}, CoordArray{0, 1, 2}, inst));
    CHECK_FALSE(satisfies(Stack{0, 1}, CoordArray{0, 1, 2}, inst));
    CHECK(satisfies(Stack{}, CoordArray{0, 0, 0}, inst));
}

TEST_CASE("fast satisfaction matches the chain search on random inputs")
{
    std::mt19937_64 rng(42);
    for (int t = 0; t < 3000; ++t) {
        const int k = 3 + static_cast<int>(rng() % 4), d = 2 + static_cast<int>(rng() % 4), n = 1 + static_cast<int>(rng() % 4);
        std::vector<std::string> rows;
        for (int v = 0; v < n; ++v) {
            std::string r;
            for (int c = 0; c < d; ++c)
                r.push_back(rng() % 3 ? '1' : '0');
            rows.push_back(r);
        }
        auto inst = make_instance(k, rows);
        Stack s;
        for (int i = static_cast<int>(rng() % k); i > 0; --i)
            s = s.pushed(static_cast<int>(rng() % n));
        CoordArray x;
        x.resize(k - 1);
        for (int i = 0; i < k - 1; ++i)
            x.set(i, static_cast<int>(rng() % d));
        CHECK(satisfies(s, x, inst) == satisfies_bruteforce(s, x, inst));
    }
}

TEST_CASE("satisfaction bits agree with the predicate")
{
    auto inst = generate_no_instance(4, 4, 3, 9);
    CoordSpace space(4, 3);
    for (auto & s : all_stacks(3, 2)) {
        auto bits = satisfaction_bits(s, space, inst);
        for (std::uint64_t i = 0; i < space.size(); ++i)
            CHECK(((bits[i / 64] >> (i % 64)) & 1) == satisfies(s, space.at(i), inst));
    }
}

TEST_CASE("all_stacks enumerates n^length stacks in order")
{
    auto s = all_stacks(3, 2);
    CHECK(s.size() == 9);
    CHECK(s.front() == Stack{0, 0});
    CHECK(s.back() == Stack{2, 2});
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(all_stacks(4, 0).size() == 1);
}

TEST_CASE("common array on a no-instance serves both stacks")
{
    auto inst = generate_no_instance(5, 6, 4, 5);
    for (auto & a : all_stacks(4, 2))
        for (auto & b : all_stacks(4, 3)) {
            auto x = common_coord_array(a, b, inst, 5);
            CHECK(x.size() == 4);
            CHECK(satisfies(a, x, inst));
            CHECK(satisfies(b, x, inst));
        }
}

TEST_CASE("split stacks of an orthogonal tuple never share an array")
{
    auto [inst, w] = generate_yes_instance(4, 4, 4, 1);
    CoordSpace space(4, 3);
    for (int j = 0; j <= 4; ++j)
        for (std::uint64_t i = 0; i < space.size(); ++i)
            CHECK_FALSE(yes1_conflict(j, w.indices, space.at(i), inst));
}
