#include <ovdiam/errors.hh>
#include <ovdiam/report.hh>
#include <ovdiam/small_gadget.hh>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace ovdiam;

namespace
{
    struct Args
    {
        std::string kind, path, mode, out, legend;
        std::vector<int> params;
        int k = 4, d = 4, n = 4, budget = -1, pairs = 100, sweep = -1, j = 0;
        std::uint64_t seed = 1;
        std::uint64_t cap = 0;
        std::string n_list = "2,3,4", seed_list = "1";
    };

    auto parse_list(const std::string & s) -> std::vector<std::uint64_t>
    {
        std::vector<std::uint64_t> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ','))
            out.push_back(std::stoull(item));
        if (out.empty())
            throw ParseError{"empty list"};
        return out;
    }

    auto emit(const std::string & path, const std::string & text) -> void
    {
        if (path.empty() || path == "-") {
            std::cout << text;
            return;
        }
        std::ofstream out(path);
        if (! out)
            throw ParseError{"cannot write " + path};
        out << text;
    }

    auto print_report(const VerifyReport & r) -> void
    {
        std::cout << r.command << (r.mode.empty() ? "" : " " + r.mode) << " k=" << r.instance.k << " d=" << r.instance.d
                  << " n=" << r.instance.n << " kind=" << r.instance.kind << '\n';
        for (auto & [name, ok] : r.verdicts)
            std::cout << "  " << (ok ? "PASS " : "FAIL ") << name << '\n';
        if (r.inconclusive)
            std::cout << "  INCONCLUSIVE\n";
        std::cout << "  measurements " << r.measurements.dump() << '\n';
    }

    auto finish(const VerifyReport & r, const std::string & out) -> int
    {
        if (! out.empty())
            write_report_file(out, r);
        print_report(r);
        return r.exit_code;
    }

    auto cmd_gen(const Args & a) -> int
    {
        int k = a.k, d = a.d, n = a.n;
        std::uint64_t seed = a.seed;
        if (! a.params.empty()) {
            if (a.params.size() != 4)
                throw ParseError{"gen takes k d n seed"};
            k = a.params[0];
            d = a.params[1];
            n = a.params[2];
            seed = static_cast<std::uint64_t>(a.params[3]);
        }
        std::ostringstream os;
        if (a.kind == "no")
            write_instance(os, generate_no_instance(k, d, n, seed));
        else if (a.kind == "yes") {
            auto [inst, w] = generate_yes_instance(k, d, n, seed);
            write_instance(os, inst);
            std::cerr << "witness";
            for (int i : w.indices)
                std::cerr << ' ' << i;
            std::cerr << '\n';
        }
        else
            throw ParseError{"kind must be yes or no"};
        emit(a.out, os.str());
        return exit_pass;
    }

    auto cmd_solve(const Args & a) -> int
    {
        auto inst = read_instance_file(a.path);
        const int j = a.j > 0 ? a.j : inst.k;
        auto w = solve_kov_bruteforce(inst, j);
        if (! w) {
            std::cout << "none\n";
            return exit_pass;
        }
        for (std::size_t i = 0; i < w->indices.size(); ++i)
            std::cout << (i ? " " : "") << w->indices[i];
        std::cout << '\n';
        return exit_pass;
    }

    auto cmd_build(const Args & a) -> int
    {
        auto inst = read_instance_file(a.path);
        auto gadget = SmallGadget::build(inst, inst.k);
        const Graph & g = gadget.graph();
        const std::uint64_t limit = a.cap ? a.cap : 50'000'000;
        if (g.edge_count() > limit)
            throw PreconditionFailed{"graph has " + std::to_string(g.edge_count()) + " edges, above the dump limit " + std::to_string(limit)};
        std::ostringstream os;
        write_graph(os, g);
        emit(a.out, os.str());
        if (! a.legend.empty()) {
            std::ostringstream ls;
            for (vertex v = 0; v < g.vertex_count(); ++v)
                ls << v << ' ' << gadget.encode(v) << '\n';
            emit(a.legend, ls.str());
        }
        std::cerr << "V=" << g.vertex_count() << " E=" << g.edge_count() << '\n';
        return exit_pass;
    }

    auto cmd_diam(const Args & a) -> int
    {
        std::ifstream in(a.path);
        if (! in)
            throw ParseError{"cannot read " + a.path};
        auto g = read_graph(in);
        if (a.mode == "two-approx") {
            std::cout << two_approx(g) << '\n';
            return exit_pass;
        }
        if (! a.mode.empty() && a.mode != "exact")
            throw ParseError{"mode must be exact or two-approx"};
        DiameterOptions opt;
        opt.mode = g.vertex_count() <= SmallOptions{}.full_cap ? DiameterMode::full : DiameterMode::pruned;
        auto r = exact_diameter(g, opt);
        std::cout << r.value << ' ' << r.u << ' ' << r.v << '\n';
        return exit_pass;
    }

    auto cmd_verify_small(const Args & a) -> int
    {
        auto inst = read_instance_file(a.path);
        SmallOptions opt;
        if (a.cap)
            opt.full_cap = a.cap;
        opt.seed = a.seed;
        return finish(verify_small(inst, opt), a.out);
    }

    auto cmd_verify_general(const Args & a) -> int
    {
        auto inst = read_instance_file(a.path);
        GeneralOptions opt;
        opt.pairs = a.pairs;
        opt.seed = a.seed;
        opt.budget = a.budget;
        opt.sweep_to = a.sweep;
        if (a.cap)
            opt.state_cap = a.cap;
        if (a.mode == "no-paths")
            return finish(verify_no_paths(inst, opt), a.out);
        if (a.mode == "yes-bound")
            return finish(verify_yes_bound(inst, opt), a.out);
        throw ParseError{"mode must be no-paths or yes-bound"};
    }

    auto cmd_scaling(const Args & a) -> int
    {
        std::vector<int> ns;
        for (auto n : parse_list(a.n_list))
            ns.push_back(static_cast<int>(n));
        auto rows = scaling_rows(a.k, a.d, ns, parse_list(a.seed_list));
        emit(a.out, scaling_csv(rows));
        bool ok = true, closed = true;
        for (auto & r : rows) {
            ok = ok && r.within_bounds();
            closed = closed && r.within_closed_form();
        }
        std::cerr << "slope " << loglog_slope(rows) << " bounds " << (ok ? "ok" : "VIOLATED") << " closed form "
                  << (closed ? "ok" : "exceeded") << '\n';
        return ok ? exit_pass : exit_violation;
    }

    auto cmd_report(const Args & a) -> int
    {
        auto stored = read_report_file(a.path);
        auto replay = replay_report(stored);
        print_report(replay.derived);
        if (! replay.consistent) {
            std::cerr << "stored verdicts differ from the recorded measurements\n";
            return exit_input_error;
        }
        return replay.derived.exit_code;
    }
}

auto main(int argc, char ** argv) -> int
{
    CLI::App app{"Distance gadgets from k-OV instances and their verification"};
    app.require_subcommand(1);
    Args a;

    auto * gen = app.add_subcommand("gen", "generate a yes or no instance");
    gen->add_option("kind", a.kind, "yes or no")->required();
    gen->add_option("params", a.params, "k d n seed, instead of the flags");
    gen->add_option("--k", a.k);
    gen->add_option("--d", a.d);
    gen->add_option("--n", a.n);
    gen->add_option("--seed", a.seed);
    gen->add_option("--out", a.out);

    auto * solve = app.add_subcommand("solve", "find an orthogonal tuple by exhaustive search");
    solve->add_option("instance", a.path)->required();
    solve->add_option("--k", a.j, "tuple size, default the instance's k");

    auto * build = app.add_subcommand("build", "write the k=4/5 gadget graph");
    build->add_option("instance", a.path)->required();
    build->add_option("--out", a.out);
    build->add_option("--legend", a.legend, "file mapping vertex ids to their meaning");
    build->add_option("--cap", a.cap, "refuse dumps with more edges than this");

    auto * diam = app.add_subcommand("diam", "diameter of a dumped graph");
    diam->add_option("graph", a.path)->required();
    diam->add_option("--mode", a.mode, "exact or two-approx");

    auto * vsmall = app.add_subcommand("verify-small", "check the k=4/5 distance gap on an instance");
    vsmall->add_option("instance", a.path)->required();
    vsmall->add_option("--cap", a.cap, "largest vertex count for the all-sources sweep");
    vsmall->add_option("--seed", a.seed);
    vsmall->add_option("--out", a.out);

    auto * vgen = app.add_subcommand("verify-general", "check configuration paths or the yes-case bound");
    vgen->add_option("instance", a.path)->required();
    vgen->add_option("--mode", a.mode, "no-paths or yes-bound")->required();
    vgen->add_option("--pairs", a.pairs);
    vgen->add_option("--budget", a.budget);
    vgen->add_option("--sweep", a.sweep, "search depth used to find the first reaching depth");
    vgen->add_option("--cap", a.cap, "state cap");
    vgen->add_option("--seed", a.seed);
    vgen->add_option("--out", a.out);

    auto * scaling = app.add_subcommand("scaling", "vertex and edge counts against n");
    scaling->add_option("--k", a.k);
    scaling->add_option("--d", a.d);
    scaling->add_option("--n", a.n_list, "comma separated");
    scaling->add_option("--seed", a.seed_list, "comma separated");
    scaling->add_option("--out", a.out);

    auto * report = app.add_subcommand("report", "replay a stored report");
    report->add_option("report", a.path)->required();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e);
        return exit_input_error;
    }

    try {
        if (*gen)
            return cmd_gen(a);
        if (*solve)
            return cmd_solve(a);
        if (*build)
            return cmd_build(a);
        if (*diam)
            return cmd_diam(a);
        if (*vsmall)
            return cmd_verify_small(a);
        if (*vgen)
            return cmd_verify_general(a);
        if (*scaling)
            return cmd_scaling(a);
        if (*report)
            return cmd_report(a);
    }
    catch (const BudgetExceeded & e) {
        std::cerr << "inconclusive: " << e.what() << '\n';
        return exit_inconclusive;
    }
    catch (const PathConstructionFailed & e) {
        std::cerr << "violation: " << e.what() << '\n';
        return exit_violation;
    }
    catch (const Error & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input_error;
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input_error;
    }
    return exit_input_error;
}
