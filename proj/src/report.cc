#include <ovdiam/errors.hh>
#include <ovdiam/no_case.hh>
#include <ovdiam/report.hh>
#include <ovdiam/small_gadget.hh>
#include <ovdiam/symbolic.hh>

#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

using nlohmann::json;
using std::string;
using std::vector;

namespace ovdiam
{
    namespace
    {
        auto ms_since(std::chrono::steady_clock::time_point t0) -> double
        {
            return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        }

        auto get_int(const json & m, const char * key) -> std::int64_t
        {
            if (! m.contains(key) || ! m[key].is_number_integer())
                throw ParseError{string{"measurement missing or not an integer: "} + key};
            return m[key].get<std::int64_t>();
        }

        auto get_bool(const json & m, const char * key) -> bool
        {
            if (! m.contains(key) || ! m[key].is_boolean())
                throw ParseError{string{"measurement missing or not a boolean: "} + key};
            return m[key].get<bool>();
        }

        auto derive_small(VerifyReport & r) -> void
        {
            const json & m = r.measurements;
            const std::int64_t k = r.instance.k;
            r.verdicts["counts_within_bounds"] = get_int(m, "layer1") <= m.at("layer1_bound").get<double>()
                && get_int(m, "layer2") <= m.at("layer2_bound").get<double>();
            if (get_bool(m, "precheck_decided"))
                return;
            if (m.contains("diameter")) {
                const json & dm = m["diameter"];
                if (! get_bool(dm, "connected")) {
                    if (r.instance.kind == "no")
                        r.verdicts["diameter_at_most_k"] = false;
                }
                else {
                    const std::int64_t d = get_int(dm, "value");
                    if (! get_bool(dm, "exact"))
                        r.inconclusive = true;
                    else {
                        if (r.instance.kind == "no")
                            r.verdicts["diameter_at_most_k"] = d <= k;
                        const std::int64_t a = get_int(m, "two_approx");
                        r.verdicts["two_approx_in_range"] = (d + 1) / 2 <= a && a <= d;
                    }
                }
            }
            else if (r.instance.kind == "no")
                r.inconclusive = true;
            if (r.instance.kind == "yes") {
                // an unreachable endpoint counts as infinitely far
                const bool reachable = get_bool(m, "endpoints_connected");
                r.verdicts["endpoint_distance_at_least_2k_minus_1"] = ! reachable || get_int(m, "endpoint_distance") >= 2 * k - 1;
            }
        }

        auto derive_no_paths(VerifyReport & r) -> void
        {
            const json & m = r.measurements;
            r.verdicts["paths_within_k_and_valid"] = get_int(m, "failures") == 0 && get_int(m, "invalid_intermediates") == 0
                && get_int(m, "max_operations") <= r.instance.k && get_int(m, "pairs") > 0;
        }

        auto derive_yes_bound(VerifyReport & r) -> void
        {
            const json & m = r.measurements;
            const auto budget = get_int(m, "budget");
            const bool reached = m.contains("first_reach_depth") && ! m["first_reach_depth"].is_null()
                && m["first_reach_depth"].get<std::int64_t>() <= budget;
            if (! reached && get_bool(m, "cap_hit") && get_int(m, "explored_depth") < budget && ! get_bool(m, "exhausted"))
                r.inconclusive = true;
            else
                r.verdicts["not_reached_within_budget"] = ! reached;
            r.verdicts["search_sanity_checks_held"] = get_bool(m, "prefix_claim_held") && get_bool(m, "edges_persisted");
        }
    }

    auto derive_verdicts(VerifyReport & r) -> void
    {
        r.verdicts.clear();
        r.inconclusive = false;
        if (r.command == "verify-small")
            derive_small(r);
        else if (r.command == "verify-general" && r.mode == "no-paths")
            derive_no_paths(r);
        else if (r.command == "verify-general" && r.mode == "yes-bound")
            derive_yes_bound(r);
        else
            throw ParseError{"unknown report command: " + r.command + " " + r.mode};
        bool all = true;
        for (auto & [name, ok] : r.verdicts)
            all = all && ok;
        r.exit_code = ! all ? exit_violation : (r.inconclusive ? exit_inconclusive : exit_pass);
    }

    auto to_json(const VerifyReport & r) -> json
    {
        json j;
        j["schema_version"] = r.schema_version;
        j["command"] = r.command;
        j["mode"] = r.mode;
        j["instance"] = {{"k", r.instance.k}, {"d", r.instance.d}, {"n", r.instance.n}, {"seed", r.instance.seed},
            {"kind", r.instance.kind}, {"rows", r.instance.rows}};
        j["oracle"] = {{"orthogonal", r.orthogonal}};
        j["measurements"] = r.measurements;
        j["verdicts"] = r.verdicts;
        j["inconclusive"] = r.inconclusive;
        j["exit_code"] = r.exit_code;
        return j;
    }

    auto report_from_json(const json & j) -> VerifyReport
    {
        try {
            VerifyReport r;
            r.schema_version = j.at("schema_version").get<int>();
            if (r.schema_version != report_schema_version)
                throw ParseError{"unsupported report schema version " + std::to_string(r.schema_version)};
            r.command = j.at("command").get<string>();
            r.mode = j.at("mode").get<string>();
            const json & i = j.at("instance");
            r.instance.k = i.at("k").get<int>();
            r.instance.d = i.at("d").get<int>();
            r.instance.n = i.at("n").get<int>();
            r.instance.seed = i.at("seed").get<std::uint64_t>();
            r.instance.kind = i.at("kind").get<string>();
            r.instance.rows = i.at("rows").get<vector<string>>();
            r.orthogonal = j.at("oracle").at("orthogonal").get<vector<bool>>();
            r.measurements = j.at("measurements");
            r.verdicts = j.at("verdicts").get<std::map<string, bool>>();
            r.inconclusive = j.at("inconclusive").get<bool>();
            r.exit_code = j.at("exit_code").get<int>();
            return r;
        }
        catch (const json::exception & e) {
            throw ParseError{string{"malformed report: "} + e.what()};
        }
    }

    auto write_report_file(const string & path, const VerifyReport & r) -> void
    {
        std::ofstream out(path);
        if (! out)
            throw ParseError{"cannot write " + path};
        out << to_json(r).dump(2) << '\n';
    }

    auto read_report_file(const string & path) -> VerifyReport
    {
        std::ifstream in(path);
        if (! in)
            throw ParseError{"cannot read " + path};
        json j = json::parse(in, nullptr, false);
        if (j.is_discarded())
            throw ParseError{path + " is not JSON"};
        return report_from_json(j);
    }

    auto replay_report(const VerifyReport & stored) -> Replay
    {
        Replay r;
        r.derived = stored;
        derive_verdicts(r.derived);
        r.consistent = r.derived.verdicts == stored.verdicts && r.derived.exit_code == stored.exit_code
            && r.derived.inconclusive == stored.inconclusive;
        return r;
    }

    auto describe_instance(const OvInstance & inst, std::uint64_t seed) -> std::pair<InstanceInfo, vector<bool>>
    {
        InstanceInfo info;
        info.k = inst.k;
        info.d = inst.d;
        info.n = inst.n();
        info.seed = seed;
        for (int v = 0; v < inst.n(); ++v)
            info.rows.push_back(inst.row_string(v));
        vector<bool> orth;
        for (int j = 1; j <= inst.k; ++j)
            orth.push_back(solve_kov_bruteforce(inst, j).has_value());
        if (inst.k >= 2 && orth[inst.k - 2])
            info.kind = "precheck";
        else
            info.kind = orth[inst.k - 1] ? "yes" : "no";
        return {info, orth};
    }

    auto verify_small(const OvInstance & inst, const SmallOptions & opt) -> VerifyReport
    {
        if (inst.k != 4 && inst.k != 5)
            throw WrongK{"the small gadget exists for k = 4 and k = 5 only"};
        VerifyReport r;
        r.command = "verify-small";
        std::tie(r.instance, r.orthogonal) = describe_instance(inst, opt.seed);
        json & m = r.measurements;

        auto t0 = std::chrono::steady_clock::now();
        auto gadget = SmallGadget::build(inst, inst.k);
        m["build_ms"] = ms_since(t0);
        auto counts = gadget_counts(gadget, inst.n(), inst.d);
        const Graph & g = gadget.graph();
        m["vertices"] = g.vertex_count();
        m["edges"] = g.edge_count();
        m["layer1"] = counts.layer1;
        m["layer2"] = counts.layer2;
        m["layer1_bound"] = counts.layer1_bound;
        m["layer2_bound"] = counts.layer2_bound;
        m["layer2_closed_form"] = counts.layer2_closed_form;
        m["precheck_decided"] = r.instance.kind == "precheck";
        if (r.instance.kind == "precheck") {
            derive_verdicts(r);
            return r;
        }

        if (r.instance.kind == "no" || opt.yes_diameter) {
            DiameterOptions dopt;
            dopt.mode = g.vertex_count() <= opt.full_cap ? DiameterMode::full : DiameterMode::pruned;
            json dm;
            dm["mode"] = dopt.mode == DiameterMode::full ? "full" : "pruned";
            auto t1 = std::chrono::steady_clock::now();
            try {
                auto d = exact_diameter(g, dopt);
                dm["connected"] = true;
                dm["value"] = d.value;
                dm["exact"] = d.exact;
                dm["sweeps"] = d.sweeps;
                dm["witness"] = {gadget.encode(d.u), gadget.encode(d.v)};
                m["two_approx"] = two_approx(g);
            }
            catch (const Disconnected &) {
                dm["connected"] = false;
            }
            dm["ms"] = ms_since(t1);
            m["diameter"] = dm;
        }
        if (r.instance.kind == "yes") {
            auto witness = *solve_kov_bruteforce(inst, inst.k);
            auto [u, v] = gadget.yes_endpoints(witness);
            auto dist = bfs(g, u);
            m["witness"] = witness.indices;
            m["endpoints"] = {gadget.encode(u), gadget.encode(v)};
            m["endpoints_connected"] = dist[v] != unreachable;
            if (dist[v] != unreachable)
                m["endpoint_distance"] = dist[v];
        }
        derive_verdicts(r);
        return r;
    }

    auto verify_no_paths(const OvInstance & inst, const GeneralOptions & opt) -> VerifyReport
    {
        VerifyReport r;
        r.command = "verify-general";
        r.mode = "no-paths";
        std::tie(r.instance, r.orthogonal) = describe_instance(inst, opt.seed);
        if (r.orthogonal[inst.k - 1])
            throw PreconditionFailed{"no-paths needs an instance without an orthogonal k-tuple"};
        std::mt19937_64 rng(opt.seed);
        int failures = 0, max_ops = 0, invalid = 0, flips = 0;
        std::uint64_t checked = 0;
        vector<string> messages;
        auto t0 = std::chrono::steady_clock::now();
        for (int p = 0; p < opt.pairs; ++p) {
            auto h = random_valid_configuration(inst, inst.k, rng);
            auto hp = random_valid_configuration(inst, inst.k, rng);
            try {
                auto path = no_case_path(h, hp, inst);
                max_ops = std::max(max_ops, path.operation_count());
                for (auto & step : path.steps) {
                    flips += step.kind == PathStep::Kind::flip_edge;
                    for (std::size_t i = 0; i < step.trace.stages.size(); ++i) {
                        ++checked;
                        invalid += ! is_valid(step.trace.stages[i], inst);
                    }
                    ++checked;
                    invalid += ! is_valid(step.after, inst);
                }
            }
            catch (const PathConstructionFailed & e) {
                ++failures;
                if (messages.size() < 10)
                    messages.push_back(describe(h) + " -> " + describe(hp) + ": " + e.what());
            }
        }
        json & m = r.measurements;
        m["pairs"] = opt.pairs;
        m["failures"] = failures;
        m["failure_messages"] = messages;
        m["max_operations"] = max_ops;
        m["flip_edges"] = flips;
        m["intermediates_checked"] = checked;
        m["invalid_intermediates"] = invalid;
        m["ms"] = ms_since(t0);
        derive_verdicts(r);
        return r;
    }

    auto verify_yes_bound(const OvInstance & inst, const GeneralOptions & opt) -> VerifyReport
    {
        VerifyReport r;
        r.command = "verify-general";
        r.mode = "yes-bound";
        std::tie(r.instance, r.orthogonal) = describe_instance(inst, opt.seed);
        auto witness = solve_kov_bruteforce(inst, inst.k);
        if (! witness)
            throw PreconditionFailed{"yes-bound needs an instance with an orthogonal k-tuple"};
        const int budget = opt.budget >= 0 ? opt.budget : 2 * inst.k - 2;
        YesBoundOptions yo;
        yo.state_cap = opt.state_cap;
        yo.sweep_to = opt.sweep_to >= 0 ? opt.sweep_to : 3 * inst.k;
        auto t0 = std::chrono::steady_clock::now();
        auto res = yes_case_bound(inst, *witness, budget, yo);
        json & m = r.measurements;
        m["witness"] = witness->indices;
        m["budget"] = budget;
        m["sweep_to"] = yo.sweep_to;
        m["state_cap"] = opt.state_cap;
        m["first_reach_depth"] = res.first_reach_depth ? json(*res.first_reach_depth) : json(nullptr);
        m["explored_depth"] = res.explored_depth;
        m["exhausted"] = res.exhausted;
        m["cap_hit"] = res.cap_hit;
        m["states"] = res.states;
        m["layer_sizes"] = res.layer_sizes;
        m["prefix_claim_held"] = res.prefix_claim_held;
        m["edges_persisted"] = res.edges_persisted;
        m["violation"] = res.violation;
        m["ms"] = ms_since(t0);
        derive_verdicts(r);
        return r;
    }

    auto scaling_rows(int k, int d, const vector<int> & ns, const vector<std::uint64_t> & seeds) -> vector<ScalingRow>
    {
        vector<ScalingRow> rows;
        for (int n : ns)
            for (auto seed : seeds) {
                auto inst = generate_no_instance(k, d, n, seed);
                auto t0 = std::chrono::steady_clock::now();
                auto gadget = SmallGadget::build(inst, k);
                ScalingRow row;
                row.build_ms = ms_since(t0);
                auto c = gadget_counts(gadget, n, d);
                row.n = n;
                row.seed = seed;
                row.vertices = gadget.graph().vertex_count();
                row.edges = c.edges;
                row.layer1 = c.layer1;
                row.layer2 = c.layer2;
                row.layer1_bound = c.layer1_bound;
                row.layer2_bound = c.layer2_bound;
                row.layer2_closed_form = c.layer2_closed_form;
                rows.push_back(row);
            }
        return rows;
    }

    auto loglog_slope(const vector<ScalingRow> & rows) -> double
    {
        std::map<int, std::pair<double, int>> by_n;
        for (auto & r : rows) {
            by_n[r.n].first += static_cast<double>(r.vertices);
            ++by_n[r.n].second;
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int count = 0;
        for (auto & [n, acc] : by_n) {
            double x = std::log(double(n)), y = std::log(acc.first / acc.second);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++count;
        }
        if (count < 2)
            return std::nan("");
        return (count * sxy - sx * sy) / (count * sxx - sx * sx);
    }

    auto scaling_csv(const vector<ScalingRow> & rows) -> string
    {
        std::ostringstream os;
        os << "n,seed,V,E,L1,L2,L1_bound,L2_bound,L2_closed_form,build_ms,within_bounds,within_closed_form\n";
        for (auto & r : rows)
            os << r.n << ',' << r.seed << ',' << r.vertices << ',' << r.edges << ',' << r.layer1 << ',' << r.layer2 << ','
               << r.layer1_bound << ',' << r.layer2_bound << ',' << r.layer2_closed_form << ',' << r.build_ms << ','
               << (r.within_bounds() ? 1 : 0) << ',' << (r.within_closed_form() ? 1 : 0) << '\n';
        return os.str();
    }
}
