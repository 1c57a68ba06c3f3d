#include "lemma_suite.hh"

#include <ovdiam/configuration.hh>
#include <ovdiam/errors.hh>
#include <ovdiam/symbolic.hh>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using std::string;
using std::vector;

namespace ovdiam::testing
{
    namespace
    {
        auto pick(std::mt19937_64 & rng, int lo, int hi) -> int
        {
            return std::uniform_int_distribution<int>(lo, hi)(rng);
        }

        auto random_instance(std::mt19937_64 & rng, int k, int d, int n, double density) -> OvInstance
        {
            std::bernoulli_distribution one(density);
            vector<string> rows;
            for (int v = 0; v < n; ++v) {
                string r;
                for (int c = 0; c < d; ++c)
                    r.push_back(one(rng) ? '1' : '0');
                rows.push_back(r);
            }
            return make_instance(k, rows);
        }

        auto random_stack(std::mt19937_64 & rng, int n, int len) -> Stack
        {
            Stack s;
            for (int i = 0; i < len; ++i)
                s = s.pushed(pick(rng, 0, n - 1));
            return s;
        }

        auto random_array(std::mt19937_64 & rng, int d, int len) -> CoordArray
        {
            CoordArray x;
            x.resize(len);
            for (int i = 0; i < len; ++i)
                x.set(i, pick(rng, 0, d - 1));
            return x;
        }

        auto random_permutation(std::mt19937_64 & rng, int k) -> Permutation
        {
            auto p = identity_permutation(k);
            std::shuffle(p.begin(), p.end(), rng);
            return p;
        }

        auto all_instance(int k, int d) -> OvInstance
        {
            vector<string> rows;
            for (int m = 0; m < (1 << d); ++m) {
                string r;
                for (int c = 0; c < d; ++c)
                    r.push_back((m >> c) & 1 ? '1' : '0');
                rows.push_back(r);
            }
            return make_instance(k, rows);
        }

        auto stacks_up_to(int n, int len) -> vector<Stack>
        {
            vector<Stack> out;
            for (int l = 0; l <= len; ++l) {
                auto s = all_stacks(n, l);
                out.insert(out.end(), s.begin(), s.end());
            }
            return out;
        }

        // a no-instance for configuration tests; cycles through k = 4, 5, 6
        struct ConfigCase
        {
            OvInstance inst;
            Configuration h;
        };

        auto no_instance_for(int k, std::uint64_t seed) -> OvInstance
        {
            return generate_no_instance(k, k, 3 + static_cast<int>(seed % 2), seed);
        }

        auto config_case(std::mt19937_64 & rng, int i) -> ConfigCase
        {
            const int k = 4 + i % 3;
            auto inst = no_instance_for(k, static_cast<std::uint64_t>(i / 3 % 7) + 1);
            auto h = random_valid_configuration(inst, k, rng);
            return {std::move(inst), std::move(h)};
        }

        auto permuted(HalfOp op, const Permutation & pi) -> HalfOp
        {
            if (op.label >= 0)
                op.label = pi.at(op.label);
            return op;
        }

        auto legal_deletions(const Configuration & h) -> vector<HalfOp>
        {
            vector<HalfOp> out;
            for (int p = 0; p < h.node_count(); ++p) {
                if (! h.nodes[p].stack.empty())
                    out.push_back(vector_delete(h.nodes[p].label));
                else if (p > 0 && p >= h.node_count() - 2)
                    out.push_back(node_delete(h.nodes[p].label));
            }
            return out;
        }
    }

    auto check_substack_closure(std::uint64_t seed, int random_cases) -> LemmaCheck
    {
        LemmaCheck c{"substack closure"};
        auto test = [&](const Stack & s, const CoordArray & x, const OvInstance & inst) {
            if (! satisfies(s, x, inst))
                return false;
            ++c.cases;
            for (int l = 0; l <= s.size(); ++l)
                if (! satisfies(s.prefix(l), x, inst))
                    c.fail("[" + encode(s) + "] satisfies (" + encode(x) + ") but its prefix of length " + std::to_string(l) + " does not");
            return true;
        };
        // exhaustive: every vector of {0,1}^2, k = 4
        auto micro = all_instance(4, 2);
        CoordSpace space(2, 3);
        for (auto & s : stacks_up_to(micro.n(), 3))
            for (std::uint64_t i = 0; i < space.size(); ++i)
                test(s, space.at(i), micro);

        std::mt19937_64 rng(seed);
        for (int done = 0, tries = 0; done < random_cases && tries < 100 * random_cases; ++tries) {
            const int k = pick(rng, 3, 6), d = pick(rng, 2, 5), n = pick(rng, 1, 4);
            auto inst = random_instance(rng, k, d, n, 0.75);
            done += test(random_stack(rng, n, pick(rng, 0, k - 1)), random_array(rng, d, k - 1), inst);
        }
        return c;
    }

    auto check_common_array(std::uint64_t seed, int random_cases) -> LemmaCheck
    {
        LemmaCheck c{"common coordinate array"};
        auto test = [&](const Stack & a, const Stack & b, const OvInstance & inst, int k) {
            ++c.cases;
            try {
                auto x = common_coord_array(a, b, inst, k);
                if (! satisfies(a, x, inst) || ! satisfies(b, x, inst) || ! satisfies_bruteforce(a, x, inst) || ! satisfies_bruteforce(b, x, inst))
                    c.fail("common array (" + encode(x) + ") not satisfied by [" + encode(a) + "] and [" + encode(b) + "]");
            }
            catch (const NoCommonCoordinate &) {
                c.fail("no common coordinate for [" + encode(a) + "] and [" + encode(b) + "] on a no-instance");
            }
        };
        // exhaustive: all pairs of stacks on k=4 no-instances with n, d <= 4
        for (int d = 3; d <= 4; ++d)
            for (int n = 2; n <= 4; ++n) {
                auto inst = generate_no_instance(4, d, n, seed + static_cast<std::uint64_t>(10 * d + n));
                auto stacks = stacks_up_to(n, 3);
                for (auto & a : stacks)
                    for (auto & b : stacks)
                        test(a, b, inst, 4);
            }
        std::mt19937_64 rng(seed);
        for (int i = 0; i < random_cases; ++i) {
            const int k = pick(rng, 4, 7), n = pick(rng, 2, 5);
            auto inst = generate_no_instance(k, k + 1, n, seed + 1000 + static_cast<std::uint64_t>(i % 25));
            test(random_stack(rng, n, pick(rng, 0, k - 1)), random_stack(rng, n, pick(rng, 0, k - 1)), inst, k);
        }
        return c;
    }

    auto check_split_conflict(std::uint64_t seed, int random_cases) -> LemmaCheck
    {
        LemmaCheck c{"split stacks never share an array"};
        auto test = [&](const vector<int> & tuple, const OvInstance & inst) {
            const int k = inst.k;
            CoordSpace space(inst.d, k - 1);
            ++c.cases;
            for (int j = 0; j <= k; ++j)
                for (std::uint64_t i = 0; i < space.size(); ++i)
                    if (yes1_conflict(j, tuple, space.at(i), inst)) {
                        string t;
                        for (int a : tuple)
                            t += std::to_string(a) + " ";
                        c.fail("tuple " + t + "split at " + std::to_string(j) + " shares (" + encode(space.at(i)) + ")");
                    }
        };
        for (int k = 3; k <= 4; ++k) {
            auto [inst, w] = generate_yes_instance(k, 4, k, seed);
            test(w.indices, inst);
        }
        std::mt19937_64 rng(seed);
        for (int done = 0, tries = 0; done < random_cases && tries < 1000 * random_cases; ++tries) {
            const int k = pick(rng, 3, 5), d = pick(rng, 2, 4), n = pick(rng, 2, 4);
            auto inst = random_instance(rng, k, d, n, 0.6);
            vector<int> tuple(k);
            for (auto & a : tuple)
                a = pick(rng, 0, n - 1);
            if (! is_orthogonal(inst, tuple))
                continue;
            test(tuple, inst);
            ++done;
        }
        return c;
    }

    auto check_k5_stack_merges(std::uint64_t seed) -> LemmaCheck
    {
        LemmaCheck c{"stack merges"};
        for (int d = 2; d <= 3; ++d)
            for (int n = 1; n <= 3; ++n)
                for (std::uint64_t s = 0; s < 3; ++s) {
                    OvInstance inst;
                    try {
                        inst = generate_no_instance(5, d, n, seed + s + static_cast<std::uint64_t>(10 * d + 100 * n));
                    }
                    catch (const GenerationFailed &) {
                        continue;
                    }
                    CoordSpace space(d, 4);
                    auto sat = [&](std::initializer_list<int> items, const CoordArray & x) { return satisfies(Stack(items), x, inst); };
                    for (std::uint64_t i = 0; i < space.size(); ++i) {
                        auto x = space.at(i);
                        for (int a = 0; a < n; ++a)
                            for (int b = 0; b < n; ++b)
                                for (int a2 = 0; a2 < n; ++a2) {
                                    if (sat({a, b}, x) && sat({a2}, x)) {
                                        ++c.cases;
                                        if (! sat({a, b, a2}, x) || ! sat({a2, a, b}, x))
                                            c.fail("first merge fails at (" + encode(x) + ")");
                                    }
                                    for (int b2 = 0; b2 < n; ++b2) {
                                        if (sat({a, b}, x) && sat({a2, b2}, x)) {
                                            ++c.cases;
                                            if (! sat({a, b, b2}, x))
                                                c.fail("second merge fails at (" + encode(x) + ")");
                                        }
                                        for (int e = 0; e < n && b == 0; ++e)
                                            if (sat({e, a2, b2}, x) && sat({a}, x)) {
                                                ++c.cases;
                                                if (! sat({a, a2, b2}, x))
                                                    c.fail("third merge fails at (" + encode(x) + ")");
                                            }
                                    }
                                }
                    }
                }
        return c;
    }

    auto check_inverse_ops(std::uint64_t seed, int random_cases) -> LemmaCheck
    {
        LemmaCheck c{"inverse operations"};
        std::mt19937_64 rng(seed);
        for (int i = 0; c.cases < static_cast<std::uint64_t>(random_cases) && i < 20 * random_cases; ++i) {
            auto [inst, h] = config_case(rng, i);
            if (h.node_count() == 2 && h.nodes[0].stack.size() == h.nodes[1].stack.size()) {
                if (apply_half_op(apply_half_op(h, flip()), flip()) != h)
                    c.fail("two flips change " + describe(h));
            }
            auto op = random_valid_full_op(h, inst, rng);
            if (! op)
                continue;
            ++c.cases;
            auto hp = apply_full_op(h, *op, inst);
            auto inv = inverse_full_op(h, *op);
            try {
                if (apply_full_op(hp, inv, inst) != h)
                    c.fail("inverse of " + describe(*op) + " does not return to " + describe(h));
            }
            catch (const Error & e) {
                c.fail("inverse of " + describe(*op) + " on " + describe(h) + " is invalid: " + e.what());
            }
        }
        return c;
    }

    auto check_deletions_keep_edges(std::uint64_t seed, int random_cases) -> LemmaCheck
    {
        LemmaCheck c{"subconfigurations stay edge-satisfying"};
        std::mt19937_64 rng(seed);
        for (int i = 0; i < random_cases; ++i) {
            auto [inst, h] = config_case(rng, i);
            ++c.cases;
            for (;;) {
                auto dels = legal_deletions(h);
                if (dels.empty())
                    break;
                h = apply_half_op(h, dels[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(dels.size()) - 1))]);
                if (! is_edge_satisfying(h, inst)) {
                    c.fail("not edge-satisfying after deletions: " + describe(h));
                    break;
                }
            }
        }
        return c;
    }

    auto check_permutation_composition(std::uint64_t seed, int random_cases) -> LemmaCheck
    {
        LemmaCheck c{"composition"};
        std::mt19937_64 rng(seed);
        for (int i = 0; i < random_cases; ++i) {
            auto [inst, h] = config_case(rng, i);
            auto p = random_permutation(rng, h.k), q = random_permutation(rng, h.k);
            ++c.cases;
            if (apply_permutation(apply_permutation(h, q), p) != apply_permutation(h, compose(p, q)))
                c.fail("composition law fails on " + describe(h));
            if (canonical(apply_permutation(h, p)) != canonical(h))
                c.fail("canonical form depends on labels for " + describe(h));
        }
        return c;
    }

    auto check_relabelled_half_ops(std::uint64_t seed, int random_cases) -> LemmaCheck
    {
        LemmaCheck c{"half-operations commute with relabelling"};
        std::mt19937_64 rng(seed);
        std::set<HalfOpKind> kinds;
        for (int i = 0; c.cases < static_cast<std::uint64_t>(random_cases) && i < 20 * random_cases; ++i) {
            auto [inst, h] = config_case(rng, i);
            auto op = random_valid_full_op(h, inst, rng);
            if (! op)
                continue;
            auto pi = random_permutation(rng, h.k);
            vector<HalfOp> halves;
            if (op->lead_flip)
                halves.push_back(flip());
            halves.push_back(op->insertion);
            if (op->mid_flip)
                halves.push_back(flip());
            halves.push_back(op->deletion);
            if (op->trail_flip)
                halves.push_back(flip());
            Configuration cur = h;
            for (auto & half : halves) {
                ++c.cases;
                kinds.insert(half.kind);
                auto next = apply_half_op(cur, half);
                if (apply_half_op(apply_permutation(cur, pi), permuted(half, pi)) != apply_permutation(next, pi))
                    c.fail(describe(half) + " does not commute with relabelling on " + describe(cur));
                cur = next;
            }
        }
        if (kinds.size() != 5)
            c.fail("only " + std::to_string(kinds.size()) + " of the 5 half-operation kinds were exercised");
        return c;
    }

    auto check_relabelled_validity(std::uint64_t seed, int random_cases) -> LemmaCheck
    {
        LemmaCheck c{"validity is label independent"};
        std::mt19937_64 rng(seed);
        for (int i = 0; i < random_cases; ++i) {
            auto [inst, h] = config_case(rng, i);
            // half the cases get a random array somewhere, usually breaking validity
            if (i % 2 && ! h.edges.empty()) {
                auto & e = h.edges[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(h.edges.size()) - 1))];
                const int kp = kprime(h.k), slot = pick(rng, 0, 2 * kp);
                auto x = random_array(rng, inst.d, h.k - 1);
                if (slot < kp)
                    e.arrays.first[slot] = x;
                else if (slot < 2 * kp)
                    e.arrays.second[slot - kp] = x;
                else
                    e.arrays.star = x;
            }
            ++c.cases;
            auto pi = random_permutation(rng, h.k);
            if (is_valid(apply_permutation(h, pi), inst) != is_valid(h, inst))
                c.fail("validity changes under relabelling of " + describe(h));
        }
        return c;
    }

    auto check_relabelled_full_ops(std::uint64_t seed, int random_cases) -> LemmaCheck
    {
        LemmaCheck c{"full operations commute with relabelling"};
        std::mt19937_64 rng(seed);
        for (int i = 0; c.cases < static_cast<std::uint64_t>(random_cases) && i < 20 * random_cases; ++i) {
            auto [inst, h] = config_case(rng, i);
            auto op = random_valid_full_op(h, inst, rng);
            if (! op)
                continue;
            ++c.cases;
            auto pi = random_permutation(rng, h.k);
            try {
                if (apply_full_op(apply_permutation(h, pi), apply_permutation(*op, pi), inst) != apply_permutation(apply_full_op(h, *op, inst), pi))
                    c.fail(describe(*op) + " does not commute with relabelling on " + describe(h));
            }
            catch (const Error & e) {
                c.fail(describe(*op) + " is not valid on the relabelled " + describe(h) + ": " + e.what());
            }
        }
        return c;
    }

    auto check_root_deletion_cost(std::uint64_t seed, int random_cases) -> LemmaCheck
    {
        LemmaCheck c{"deleting the root costs k-1 operations"};
        // exhaustive over every starting shape, rules only
        for (int k = 4; k <= 8; ++k)
            for (auto & start : root_deletion_starts(k)) {
                ++c.cases;
                auto r = min_ops_deleting_root(k, start, 2 * k);
                if (r.operations && *r.operations < k - 1)
                    c.fail("k=" + std::to_string(k) + ": root deleted after " + std::to_string(*r.operations) + " operations");
            }
        // the k=7 picture: root with three vectors, the kept leaf and two more empty leaves
        {
            ++c.cases;
            using N = ShapeNode;
            vector<N> start{{N::doomed, 3}, {N::kept, 0}, {N::other, 0}, {N::other, 0}};
            auto r = min_ops_deleting_root(7, start, 14);
            if (! r.operations || *r.operations != 6 || r.node_deletions != 3 || r.vector_deletions != 3)
                c.fail("k=7 picture case does not take 3 node and 3 vector deletions");
        }
        // random walks of k-2 valid operations on concrete configurations
        std::mt19937_64 rng(seed);
        for (int i = 0, done = 0; done < random_cases && i < 50 * random_cases; ++i) {
            auto [inst, h] = config_case(rng, i);
            int kept = -1;
            for (int p = 1; p < h.node_count(); ++p)
                if (h.nodes[p].stack.empty())
                    kept = h.nodes[p].label;
            if (kept < 0)
                continue;
            ++done;
            ++c.cases;
            const int doomed = h.root().label;
            for (int step = 0; step < h.k - 2; ++step) {
                auto op = random_valid_full_op(h, inst, rng);
                if (! op)
                    break;
                h = apply_full_op(h, *op, inst);
                if (! h.has_label(kept))
                    break;
                if (! h.has_label(doomed)) {
                    c.fail("root deleted after " + std::to_string(step + 1) + " operations: " + describe(h));
                    break;
                }
            }
        }
        return c;
    }

    auto all_lemma_checks(std::uint64_t seed, int random_cases) -> vector<LemmaCheck>
    {
        return {
            check_substack_closure(seed, random_cases),
            check_common_array(seed, random_cases),
            check_split_conflict(seed, random_cases),
            check_k5_stack_merges(seed),
            check_inverse_ops(seed, random_cases),
            check_deletions_keep_edges(seed, random_cases),
            check_permutation_composition(seed, random_cases),
            check_relabelled_half_ops(seed, random_cases),
            check_relabelled_validity(seed, random_cases),
            check_relabelled_full_ops(seed, random_cases),
            check_root_deletion_cost(seed, random_cases),
        };
    }

    auto check_satisfaction_exhaustive() -> LemmaCheck
    {
        LemmaCheck c{"fast satisfaction equals chain search"};
        for (auto [k, d] : {std::pair{4, 3}, std::pair{4, 4}, std::pair{4, 5}, std::pair{5, 3}}) {
            auto inst = all_instance(k, d);
            CoordSpace space(d, k - 1);
            for (auto & s : stacks_up_to(inst.n(), k - 1))
                for (std::uint64_t i = 0; i < space.size(); ++i) {
                    auto x = space.at(i);
                    ++c.cases;
                    if (satisfies(s, x, inst) != satisfies_bruteforce(s, x, inst))
                        c.fail("[" + encode(s) + "] on (" + encode(x) + ") k=" + std::to_string(k));
                }
        }
        return c;
    }
}
