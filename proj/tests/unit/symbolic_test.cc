#include <doctest.h>

#include <ovdiam/errors.hh>
#include <ovdiam/symbolic.hh>

#include <map>

using namespace ovdiam;

TEST_CASE("one-hole k = 4 instance: far stack needs more than 2k-2 operations")
{
    auto [inst, w] = generate_yes_instance(4, 4, 4, 1);
    YesBoundOptions opt;
    opt.sweep_to = 8;
    auto r = yes_case_bound(inst, w, 6, opt);
    CHECK(r.status == YesBoundStatus::certified);
    CHECK_FALSE(r.cap_hit);
    REQUIRE(r.first_reach_depth);
    CHECK(*r.first_reach_depth == 7);
    CHECK(r.prefix_claim_held);
    CHECK(r.edges_persisted);
    CHECK(r.layer_sizes.front() == 1);
}

TEST_CASE("a tiny state cap makes the bound inconclusive")
{
    auto [inst, w] = generate_yes_instance(4, 4, 4, 1);
    YesBoundOptions opt;
    opt.state_cap = 50;
    auto r = yes_case_bound(inst, w, 6, opt);
    CHECK(r.cap_hit);
    CHECK(r.status == YesBoundStatus::budget_exceeded);
}

TEST_CASE("bound needs an orthogonal witness")
{
    auto inst = generate_no_instance(4, 4, 4, 1);
    CHECK_THROWS_AS(yes_case_bound(inst, OvWitness{{0, 1, 2, 3}}, 6), GenerationFailed);
}

TEST_CASE("on a no-instance every one-stack configuration is within k operations")
{
    auto inst = generate_no_instance(4, 3, 2, 3);
    SymbolicSearch search(inst, single_stack(4, Stack{0, 0, 1}));
    while (search.depth() < 4 && search.advance()) {
    }
    for (auto & s : all_stacks(2, 3)) {
        auto depth = search.first_depth({s});
        REQUIRE(depth);
        CHECK(*depth <= 4);
    }
}

TEST_CASE("symbolic reachability equals the explicit graph on a small universe")
{
    auto inst = make_instance(4, {"11", "01"});
    CoordSpace space(2, 3);
    std::vector<CoordArray> universe{space.at(1), space.at(6)};
    for (auto & st : {Stack{0, 1, 0}}) {
        auto start = single_stack(4, st);
        auto rg = build_restricted_graph(inst, start, universe, 1000);
        REQUIRE(rg.complete);
        auto dist = zero_one_bfs(rg.graph, rg.index.at(canonical_key(start)));
        std::map<std::string, int> explicit_depths;
        for (vertex v = 0; v < rg.graph.vertex_count(); ++v) {
            if (dist[v] == unreachable || dist[v] > 5)
                continue;
            auto key = shape_key(shape_of(rg.vertices[v]));
            auto it = explicit_depths.find(key);
            if (it == explicit_depths.end() || it->second > static_cast<int>(dist[v]))
                explicit_depths[key] = static_cast<int>(dist[v]);
        }
        SymbolicOptions so;
        so.universe = universe;
        SymbolicSearch sym(inst, start, so);
        while (sym.depth() < 5 && sym.advance()) {
        }
        std::map<std::string, int> symbolic_depths;
        for (auto & [key, depth] : sym.shape_depths())
            if (depth <= 5)
                symbolic_depths[key] = depth;
        CHECK(symbolic_depths == explicit_depths);
    }
}

TEST_CASE("deleting the root while keeping an empty leaf takes k-1 operations")
{
    for (int k = 4; k <= 6; ++k) {
        int best = 1 << 20;
        for (auto & start : root_deletion_starts(k)) {
            auto r = min_ops_deleting_root(k, start, 2 * k);
            REQUIRE(r.operations);
            best = std::min(best, *r.operations);
            // flip edges add shapes without adding operations
            CHECK(r.path.size() >= static_cast<std::size_t>(*r.operations) + 1);
        }
        CHECK(best == k - 1);
    }
}

TEST_CASE("shape keys separate stacks and order")
{
    CHECK(shape_key({Stack{0, 1}}) != shape_key({Stack{0}, Stack{1}}));
    CHECK(shape_key({Stack{0}, Stack{1}}) != shape_key({Stack{1}, Stack{0}}));
    CHECK(shape_of(single_stack(4, Stack{2, 1, 0})) == std::vector<Stack>{Stack{2, 1, 0}});
}
