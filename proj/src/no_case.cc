#include <ovdiam/errors.hh>
#include <ovdiam/no_case.hh>

#include <algorithm>

using std::vector;

namespace ovdiam
{
    auto NoCasePath::operation_count() const -> int
    {
        return static_cast<int>(std::count_if(steps.begin(), steps.end(), [](auto & s) { return s.kind == PathStep::Kind::operation; }));
    }

    namespace
    {
        auto serving(const Stack & a, const Stack * b, const OvInstance & inst, int k) -> CoordArray
        {
            try {
                return common_coord_array(a, b ? *b : a, inst, k);
            }
            catch (const NoCommonCoordinate &) {
                throw PathConstructionFailed{"no common coordinate: the instance has an orthogonal tuple"};
            }
        }

        // insertions then deletions turning `from` into its two-node middle with `partner_root` attached
        auto half_path(const Configuration & from, const Configuration & other, const EdgeConstraint & from_root_first,
            const OvInstance & inst, vector<PathStep> & steps) -> Configuration
        {
            const int k = from.k;
            const int low = (k - 2) / 2, high = (k - 2 + 1) / 2;
            const int partner = other.root().label;
            const Stack & partner_stack = other.root().stack;

            EdgeConstraint arrays;
            arrays.first = from_root_first.second;
            arrays.second = from_root_first.first;
            arrays.star = from_root_first.star;

            vector<HalfOp> inserts{node_insert(partner, false, arrays)};
            for (int t = 0; t < low; ++t)
                inserts.push_back(vector_insert(partner, partner_stack[t]));

            vector<HalfOp> deletes;
            for (int i = from.node_count() - 1; i >= 1; --i) {
                for (int t = 0; t < from.nodes[i].stack.size(); ++t)
                    deletes.push_back(vector_delete(from.nodes[i].label));
                deletes.push_back(node_delete(from.nodes[i].label));
            }
            for (int t = from.root().stack.size(); t > high; --t)
                deletes.push_back(vector_delete(from.root().label));

            if (inserts.size() != deletes.size() || static_cast<int>(inserts.size()) != k / 2)
                throw PathConstructionFailed{"insertion and deletion counts do not pair up"};

            Configuration current = from;
            for (std::size_t i = 0; i < inserts.size(); ++i) {
                PathStep step;
                step.op.insertion = inserts[i];
                step.op.deletion = deletes[i];
                step.before = current;
                step.trace = trace_full_op(current, step.op, inst);
                try {
                    step.after = apply_full_op(current, step.op, inst);
                }
                catch (const Error & e) {
                    throw PathConstructionFailed{std::string{"step "} + std::to_string(i + 1) + ": " + e.what()};
                }
                current = step.after;
                steps.push_back(std::move(step));
            }
            return current;
        }
    }

    auto bridge_constraint(const Configuration & h, const Configuration & hp, const OvInstance & inst) -> EdgeConstraint
    {
        const int k = h.k;
        const int kp = kprime(k);
        EdgeConstraint z;
        const Stack & root = h.root().stack;
        const Stack & root_p = hp.root().stack;
        for (int i = 0; i < kp; ++i) {
            z.first[i] = serving(root, i < hp.node_count() ? &hp.nodes[i].stack : nullptr, inst, k);
            z.second[i] = serving(root_p, i < h.node_count() ? &h.nodes[i].stack : nullptr, inst, k);
        }
        z.star = serving(root, &root_p, inst, k);
        return z;
    }

    auto no_case_path(const Configuration & h, const Configuration & h_prime, const OvInstance & inst) -> NoCasePath
    {
        if (h.k != h_prime.k)
            throw PathConstructionFailed{"configurations for different k"};
        const int k = h.k;
        for (auto * c : {&h, &h_prime})
            if (c->size() != k || ! is_valid(*c, inst))
                throw PathConstructionFailed{"endpoints must be valid size-k configurations"};

        NoCasePath path;
        path.relabel = identity_permutation(k);
        {
            vector<int> free;
            for (int l = 0; l < 2 * kprime(k); ++l)
                if (! h.has_label(l))
                    free.push_back(l);
            vector<char> used(path.relabel.size(), 0);
            for (int i = 0; i < h_prime.node_count(); ++i) {
                path.relabel[h_prime.nodes[i].label] = free[i];
                used[free[i]] = 1;
            }
            std::size_t next = 0;
            for (int l = 0; l < 2 * kprime(k); ++l) {
                if (h_prime.has_label(l))
                    continue;
                while (used[next])
                    ++next;
                path.relabel[l] = static_cast<int>(next);
                used[next] = 1;
            }
        }
        const Configuration hp = apply_permutation(h_prime, path.relabel);

        path.bridge = bridge_constraint(h, hp, inst);
        EdgeConstraint mirrored;
        mirrored.first = path.bridge.second;
        mirrored.second = path.bridge.first;
        mirrored.star = path.bridge.star;

        vector<PathStep> forward, backward;
        path.mid = half_path(h, hp, path.bridge, inst, forward);
        path.mid_prime = half_path(hp, h, mirrored, inst, backward);

        path.steps = std::move(forward);

        const int v1 = h.root().label, w1 = hp.root().label;
        if (k % 2 == 0) {
            PathStep step;
            step.kind = PathStep::Kind::flip_edge;
            step.before = path.mid;
            step.after = apply_half_op(path.mid, flip());
            if (! is_valid(step.after, inst) || step.after != path.mid_prime)
                throw PathConstructionFailed{"the two middle configurations are not related by a flip"};
            path.steps.push_back(std::move(step));
        }
        else {
            PathStep step;
            step.op.insertion = vector_insert(w1, hp.root().stack[(k - 2) / 2]);
            step.op.mid_flip = true;
            step.op.deletion = vector_delete(v1);
            step.before = path.mid;
            step.trace = trace_full_op(path.mid, step.op, inst);
            try {
                step.after = apply_full_op(path.mid, step.op, inst);
            }
            catch (const Error & e) {
                throw PathConstructionFailed{std::string{"crossing step: "} + e.what()};
            }
            if (step.after != path.mid_prime)
                throw PathConstructionFailed{"crossing step does not reach the other middle configuration"};
            path.steps.push_back(std::move(step));
        }

        for (auto it = backward.rbegin(); it != backward.rend(); ++it) {
            PathStep step;
            step.op = inverse_full_op(it->before, it->op);
            step.before = it->after;
            step.trace = trace_full_op(step.before, step.op, inst);
            try {
                step.after = apply_full_op(step.before, step.op, inst);
            }
            catch (const Error & e) {
                throw PathConstructionFailed{std::string{"returning step: "} + e.what()};
            }
            if (step.after != it->before)
                throw PathConstructionFailed{"inverse operation does not retrace the path"};
            path.steps.push_back(std::move(step));
        }

        if (path.end() != hp || ! equivalent(path.end(), h_prime))
            throw PathConstructionFailed{"path does not end at the target"};
        return path;
    }
}
