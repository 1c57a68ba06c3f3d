#include <doctest.h>

#include <ovdiam/errors.hh>
#include <ovdiam/report.hh>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace ovdiam;
namespace fs = std::filesystem;

namespace
{
    auto temp_path(const std::string & name) -> std::string
    {
        auto dir = fs::temp_directory_path() / "ovdiam_unit";
        fs::create_directories(dir);
        return (dir / name).string();
    }

    auto cli(const std::string & args) -> int
    {
        const std::string cmd = std::string(OVDIAM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    auto write_text(const std::string & path, const std::string & text) -> void
    {
        std::ofstream(path) << text;
    }
}

TEST_CASE("small no-instance report passes and replays")
{
    auto inst = generate_no_instance(4, 3, 3, 1);
    auto r = verify_small(inst);
    CHECK(r.exit_code == exit_pass);
    CHECK(r.verdicts.at("diameter_at_most_k"));
    CHECK(r.verdicts.at("two_approx_in_range"));
    CHECK(r.verdicts.at("counts_within_bounds"));
    CHECK(r.instance.kind == "no");

    auto back = report_from_json(to_json(r));
    auto replay = replay_report(back);
    CHECK(replay.consistent);
    CHECK(replay.derived.exit_code == exit_pass);
}

TEST_CASE("small yes-instance report")
{
    auto [inst, w] = generate_yes_instance(4, 4, 4, 1);
    auto r = verify_small(inst);
    CHECK(r.instance.kind == "yes");
    CHECK(r.verdicts.at("endpoint_distance_at_least_2k_minus_1"));
    CHECK(r.exit_code == exit_pass);
}

TEST_CASE("verdicts follow the measurements")
{
    auto r = verify_small(generate_no_instance(4, 3, 3, 2));
    r.measurements["diameter"]["value"] = 6;
    r.measurements["two_approx"] = 6;
    derive_verdicts(r);
    CHECK_FALSE(r.verdicts.at("diameter_at_most_k"));
    CHECK(r.exit_code == exit_violation);

    r.measurements["diameter"]["exact"] = false;
    derive_verdicts(r);
    CHECK(r.inconclusive);
    CHECK(r.exit_code == exit_inconclusive);
}

TEST_CASE("unknown schema versions and malformed reports are rejected")
{
    auto j = to_json(verify_small(generate_no_instance(4, 3, 2, 1)));
    j["schema_version"] = 99;
    CHECK_THROWS_AS(report_from_json(j), ParseError);
    j["schema_version"] = report_schema_version;
    j.erase("verdicts");
    CHECK_THROWS_AS(report_from_json(j), ParseError);
}

TEST_CASE("general checks enforce their preconditions")
{
    auto [yes, w] = generate_yes_instance(4, 4, 4, 1);
    auto no = generate_no_instance(4, 4, 4, 1);
    CHECK_THROWS_AS(verify_no_paths(yes), PreconditionFailed);
    CHECK_THROWS_AS(verify_yes_bound(no), PreconditionFailed);
    CHECK_THROWS_AS(verify_small(generate_no_instance(3, 3, 2, 1)), WrongK);

    GeneralOptions opt;
    opt.pairs = 10;
    auto r = verify_no_paths(no, opt);
    CHECK(r.exit_code == exit_pass);
    CHECK(r.measurements.at("pairs") == 10);
}

TEST_CASE("instance description marks shorter orthogonal tuples")
{
    auto inst = make_instance(4, {"10", "01", "11"});
    auto [info, orth] = describe_instance(inst, 0);
    CHECK(info.kind == "precheck");
    CHECK(orth.size() == 4);
    CHECK_FALSE(orth[0]);
    CHECK(orth[1]);
}

TEST_CASE("scaling rows and slope")
{
    auto rows = scaling_rows(4, 3, {2, 3}, {1});
    REQUIRE(rows.size() == 2);
    for (auto & r : rows)
        CHECK(r.within_bounds());
    CHECK(loglog_slope(rows) > 0);
    CHECK(scaling_csv(rows).find('\n') != std::string::npos);
}

TEST_CASE("command line exit codes")
{
    const auto no = temp_path("no.txt"), yes = temp_path("yes.txt"), bad = temp_path("bad.txt"), rep = temp_path("rep.json");
    CHECK(cli("gen no 4 3 3 1 --out " + no) == exit_pass);
    CHECK(cli("gen yes --k 4 --d 4 --n 4 --seed 1 --out " + yes) == exit_pass);

    CHECK(cli("verify-small " + no + " --out " + rep) == exit_pass);
    CHECK(cli("report " + rep) == exit_pass);

    // a stored violation replays as a violation
    auto stored = read_report_file(rep);
    stored.measurements["diameter"]["value"] = 9;
    stored.measurements["two_approx"] = 9;
    derive_verdicts(stored);
    write_report_file(rep, stored);
    CHECK(cli("report " + rep) == exit_violation);

    // verdicts that disagree with the measurements
    stored.verdicts["diameter_at_most_k"] = true;
    write_report_file(rep, stored);
    CHECK(cli("report " + rep) == exit_input_error);

    auto j = to_json(stored);
    j["schema_version"] = 2;
    write_text(rep, j.dump());
    CHECK(cli("report " + rep) == exit_input_error);

    write_text(bad, "4 3 2\n101\n");
    CHECK(cli("verify-small " + bad) == exit_input_error);
    CHECK(cli("verify-small /nonexistent/x.txt") == exit_input_error);
    CHECK(cli("no-such-command") == exit_input_error);
    CHECK(cli("verify-general " + yes + " --mode no-paths") == exit_input_error);

    CHECK(cli("verify-general " + yes + " --mode yes-bound --cap 50") == exit_inconclusive);
    CHECK(cli("verify-general " + no + " --mode no-paths --pairs 5") == exit_pass);
    CHECK(cli("solve " + yes) == exit_pass);
    CHECK(cli("scaling --k 4 --d 3 --n 2,3 --seed 1 --out " + temp_path("s.csv")) == exit_pass);
}
