#include <doctest.h>

#include <ovdiam/errors.hh>
#include <ovdiam/small_gadget.hh>

using namespace ovdiam;

TEST_CASE("only k = 4 and k = 5 are built")
{
    auto inst = generate_no_instance(3, 3, 2, 1);
    CHECK_THROWS_AS(SmallGadget::build(inst, 3), WrongK);
}

TEST_CASE("layer two holds exactly the satisfying tuples")
{
    auto inst = generate_no_instance(4, 3, 3, 5);
    auto g = SmallGadget::build(inst, 4);
    CHECK(g.layer1_count() == 27);
    for (vertex v = 0; v < g.graph().vertex_count(); ++v) {
        auto gv = g.decode(v);
        if (gv.layer == 1) {
            CHECK(g.layer1_id(gv.first) == v);
            continue;
        }
        CHECK(gv.first.size() + gv.second.size() == 2);
        const bool one = satisfies(concat(gv.first, gv.second), gv.x, inst) && satisfies(concat(gv.second, gv.first), gv.y, inst);
        const bool two = satisfies(concat(gv.second, gv.first), gv.x, inst) && satisfies(concat(gv.first, gv.second), gv.y, inst);
        CHECK((one || two));
        CHECK(g.layer2_id(gv.first, gv.second, gv.x, gv.y) == v);
    }
    CHECK_THROWS_AS(g.decode(g.graph().vertex_count()), VertexMissing);
}

TEST_CASE("no-instance graphs have diameter at most k")
{
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto inst = generate_no_instance(4, 3, 3, seed);
        auto g = SmallGadget::build(inst, 4);
        CHECK(exact_diameter(g.graph()).value <= 4);
        auto c = gadget_counts(g, 3, 3);
        CHECK(c.within_bounds());
        CHECK(c.layer1 == 27);
    }
}

TEST_CASE("yes-instance endpoints are far apart")
{
    auto [inst, w] = generate_yes_instance(4, 4, 4, 1);
    auto g = SmallGadget::build(inst, 4);
    auto [s, t] = g.yes_endpoints(w);
    CHECK(g.decode(s).first == Stack{0, 1, 2});
    CHECK(g.decode(t).first == Stack{3, 2, 1});
    auto dist = bfs(g.graph(), s);
    CHECK((dist[t] == unreachable || dist[t] >= 7));
}

TEST_CASE("k = 5 no-instance graph has diameter at most 5")
{
    auto inst = generate_no_instance(5, 2, 2, 1);
    auto g = SmallGadget::build(inst, 5);
    CHECK(g.layer1_count() == 16);
    CHECK(exact_diameter(g.graph()).value <= 5);
}
