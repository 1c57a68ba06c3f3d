#include <doctest.h>

#include <ovdiam/errors.hh>
#include <ovdiam/ov.hh>

#include <sstream>

using namespace ovdiam;

TEST_CASE("make_instance stores coordinate c in bit c")
{
    auto inst = make_instance(3, {"101", "011"});
    CHECK(inst.n() == 2);
    CHECK(inst.d == 3);
    CHECK(inst.bit(0, 0));
    CHECK_FALSE(inst.bit(0, 1));
    CHECK(inst.row_string(1) == "011");
    CHECK_THROWS_AS(make_instance(3, {"10", "011"}), ParseError);
    CHECK_THROWS_AS(make_instance(3, {"1x1"}), ParseError);
}

TEST_CASE("ind is the smallest common coordinate")
{
    auto inst = make_instance(3, {"0110", "0011", "1111"});
    std::vector<int> ab{0, 1};
    CHECK(ind(inst, ab) == 2);
    std::vector<int> c{2};
    CHECK(ind(inst, c) == 0);
    CHECK(ind(inst, std::vector<int>{}) == 0);
    auto hole = make_instance(2, {"10", "01"});
    CHECK_THROWS_AS(ind(hole, std::vector<int>{0, 1}), NoCommonCoordinate);
}

TEST_CASE("exhaustive solver finds tuples with repetition")
{
    auto inst = make_instance(3, {"110", "011", "101"});
    CHECK_FALSE(solve_kov_bruteforce(inst, 2));
    auto w = solve_kov_bruteforce(inst, 3);
    REQUIRE(w);
    CHECK(is_orthogonal(inst, w->indices));
    CHECK(has_orthogonal_upto(inst, 3));
    CHECK_FALSE(has_orthogonal_upto(inst, 2));

    auto zero = make_instance(2, {"00"});
    auto z = solve_kov_bruteforce(zero, 1);
    REQUIRE(z);
    CHECK(z->indices == std::vector<int>{0});
}

TEST_CASE("no-instances have no orthogonal tuple of size at most k")
{
    for (int k = 2; k <= 5; ++k)
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            auto inst = generate_no_instance(k, k + 1, 4, seed);
            CHECK(inst.n() == 4);
            CHECK_FALSE(has_orthogonal_upto(inst, k));
            CHECK(inst.vectors.back() == inst.full_mask());
        }
}

TEST_CASE("yes-instances plant exactly the first k vectors")
{
    for (int k = 3; k <= 6; ++k)
        for (int n = k; n <= k + 2; ++n) {
            auto [inst, w] = generate_yes_instance(k, k + 1, n, 7);
            std::vector<int> expect(k);
            for (int i = 0; i < k; ++i)
                expect[i] = i;
            CHECK(w.indices == expect);
            CHECK(is_orthogonal(inst, w.indices));
            CHECK_FALSE(has_orthogonal_upto(inst, k - 1));
            if (n > k)
                CHECK(inst.vectors[k] == inst.full_mask());
        }
    CHECK_THROWS_AS(generate_yes_instance(5, 4, 5, 1), GenerationFailed);
    CHECK_THROWS_AS(generate_yes_instance(5, 5, 4, 1), GenerationFailed);
}

TEST_CASE("shuffling keeps the witness orthogonal")
{
    auto [inst, w] = generate_yes_instance(4, 6, 7, 3);
    auto w2 = w;
    auto shuffled = shuffle_instance(inst, w2, 11);
    CHECK(shuffled.n() == inst.n());
    CHECK(is_orthogonal(shuffled, w2.indices));
    CHECK_FALSE(has_orthogonal_upto(shuffled, 3));
}

TEST_CASE("instance text round trip and malformed input")
{
    auto inst = generate_no_instance(4, 5, 3, 2);
    std::stringstream ss;
    write_instance(ss, inst);
    auto back = read_instance(ss);
    CHECK(back.k == inst.k);
    CHECK(back.d == inst.d);
    CHECK(back.vectors == inst.vectors);

    std::istringstream bad1("4 3\n111\n");
    CHECK_THROWS_AS(read_instance(bad1), ParseError);
    std::istringstream bad2("4 3 2\n111\n");
    CHECK_THROWS_AS(read_instance(bad2), ParseError);
    std::istringstream bad3("4 3 1\n1111\n");
    CHECK_THROWS_AS(read_instance(bad3), ParseError);
    CHECK_THROWS_AS(read_instance_file("/nonexistent/instance.txt"), ParseError);
}
