#ifndef OVDIAM_GUARD_REPORT_HH
#define OVDIAM_GUARD_REPORT_HH 1

#include <ovdiam/ov.hh>

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ovdiam
{
    inline constexpr int report_schema_version = 1;

    enum ExitCode : int
    {
        exit_pass = 0,
        exit_violation = 1,
        exit_input_error = 2,
        exit_inconclusive = 3
    };

    struct InstanceInfo
    {
        int k = 0, d = 0, n = 0;
        std::uint64_t seed = 0;
        /// "yes", "no", or "precheck" when a shorter orthogonal tuple exists.
        std::string kind;
        std::vector<std::string> rows;
    };

    /**
     * Outcome of one verification run. Verdicts, the inconclusive flag and the
     * exit code are derived from `measurements` alone, so a report read back
     * from disk re-derives to the same result.
     */
    struct VerifyReport
    {
        int schema_version = report_schema_version;
        std::string command;
        std::string mode;
        InstanceInfo instance;
        /// Entry j-1: some orthogonal j-tuple exists.
        std::vector<bool> orthogonal;
        nlohmann::json measurements = nlohmann::json::object();
        std::map<std::string, bool> verdicts;
        bool inconclusive = false;
        int exit_code = exit_pass;
    };

    /// Fills verdicts, inconclusive and exit_code from the measurements.
    auto derive_verdicts(VerifyReport &) -> void;

    auto to_json(const VerifyReport &) -> nlohmann::json;
    /// Throws ParseError on malformed input or an unknown schema version.
    auto report_from_json(const nlohmann::json &) -> VerifyReport;
    auto write_report_file(const std::string & path, const VerifyReport &) -> void;
    auto read_report_file(const std::string & path) -> VerifyReport;

    struct Replay
    {
        VerifyReport derived;
        bool consistent = false;
    };

    /// Re-derives the verdicts of a stored report and compares them.
    auto replay_report(const VerifyReport &) -> Replay;

    auto describe_instance(const OvInstance &, std::uint64_t seed) -> std::pair<InstanceInfo, std::vector<bool>>;

    struct SmallOptions
    {
        /// Vertex count up to which the all-sources sweep is used; larger
        /// graphs use the pruned exact search.
        std::uint64_t full_cap = 50'000;
        bool yes_diameter = true;
        std::uint64_t seed = 0;
    };

    /// Builds the k=4 or k=5 gadget and checks the distance gap. Throws
    /// WrongK for other k.
    auto verify_small(const OvInstance &, const SmallOptions & = {}) -> VerifyReport;

    struct GeneralOptions
    {
        int pairs = 100;
        std::uint64_t seed = 1;
        /// Defaults to 2k-2 when negative.
        int budget = -1;
        std::uint64_t state_cap = 50'000'000;
        /// Depth up to which the search continues to find the first
        /// reaching depth; defaults to 3k when negative.
        int sweep_to = -1;
    };

    /// Throws PreconditionFailed if the instance has an orthogonal k-tuple.
    auto verify_no_paths(const OvInstance &, const GeneralOptions & = {}) -> VerifyReport;
    /// Throws PreconditionFailed if the instance has no orthogonal k-tuple.
    auto verify_yes_bound(const OvInstance &, const GeneralOptions & = {}) -> VerifyReport;

    struct ScalingRow
    {
        int n = 0;
        std::uint64_t seed = 0;
        std::uint64_t vertices = 0, edges = 0, layer1 = 0, layer2 = 0;
        double layer1_bound = 0, layer2_bound = 0, layer2_closed_form = 0;
        double build_ms = 0;

        auto within_bounds() const -> bool { return layer1 <= layer1_bound && layer2 <= layer2_bound; }
        auto within_closed_form() const -> bool { return layer1 <= layer1_bound && layer2 <= layer2_closed_form; }
    };

    /// Builds gadgets on generated no-instances for every n and seed.
    auto scaling_rows(int k, int d, const std::vector<int> & ns, const std::vector<std::uint64_t> & seeds) -> std::vector<ScalingRow>;

    /// Least-squares slope of log(mean vertices) against log n.
    auto loglog_slope(const std::vector<ScalingRow> &) -> double;
    auto scaling_csv(const std::vector<ScalingRow> &) -> std::string;
}

#endif
