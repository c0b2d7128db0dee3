#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "jxes/jxes.hpp"
#include "support/testenv.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

// Drives the installed binary the way a shell user would.
RunResult run_kit(const testenv::TempDir& tmp, const std::string& args) {
    static std::atomic<int> serial{0};
    int n = serial++;
    auto out_p = tmp / ("stdout-" + std::to_string(n));
    auto err_p = tmp / ("stderr-" + std::to_string(n));
    std::string kit = testenv::kit_binary();
    REQUIRE_FALSE(kit.empty());
    std::string cmd = "'" + kit + "' " + args + " > '" + out_p.string() +
                      "' 2> '" + err_p.string() + "'";
    int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = raw == -1 ? -1 : (WIFEXITED(raw) ? WEXITSTATUS(raw) : -1);
    r.out = testenv::slurp(out_p);
    r.err = testenv::slurp(err_p);
    return r;
}

void spit(const std::filesystem::path& p, std::string_view text) {
    std::ofstream out(p, std::ios::binary);
    REQUIRE(out.good());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

std::string q(const std::filesystem::path& p) {
    return "'" + p.string() + "'";
}

}  // namespace

TEST_CASE("usage errors exit with the parse-failure code") {
    testenv::TempDir tmp;
    CHECK(run_kit(tmp, "").exit_code == 2);
    CHECK(run_kit(tmp, "frobnicate").exit_code == 2);
    CHECK(run_kit(tmp, "stats").exit_code == 2);
    CHECK(run_kit(tmp, "stats x.json --backend gpu").exit_code == 2);

    RunResult help = run_kit(tmp, "--help");
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("convert") != std::string::npos);
}

TEST_CASE("stats prints the five shape numbers") {
    testenv::TempDir tmp;
    RunResult r = run_kit(
        tmp, "stats " + q(testenv::file("basic_structure.json")));
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "traces 1, events 2, variants 1, activities 2, max length 2\n");

    RunResult miss = run_kit(tmp, "stats " + q(tmp / "absent.json"));
    CHECK(miss.exit_code == 1);

    RunResult fmt = run_kit(tmp, "stats " + q(tmp / "data.txt"));
    CHECK(fmt.exit_code == 2);
}

TEST_CASE("convert cycles through XES and back") {
    testenv::TempDir tmp;
    auto json_in = testenv::file("basic_structure.json");
    auto xes_mid = tmp / "mid.xes";
    auto json_out = tmp / "back.json";

    RunResult a = run_kit(tmp, "convert " + q(json_in) + " " + q(xes_mid));
    REQUIRE(a.exit_code == 0);
    RunResult b = run_kit(tmp, "convert " + q(xes_mid) + " " + q(json_out) +
                                   " --backend streaming");
    REQUIRE(b.exit_code == 0);

    jxes::EventLog orig = jxes::parse_jxes_file(json_in);
    jxes::EventLog back = jxes::parse_jxes_file(json_out);
    CHECK(jxes::logs_equivalent(orig, back));
}

TEST_CASE("convert propagates parse failures") {
    testenv::TempDir tmp;
    RunResult r = run_kit(
        tmp, "convert " + q(testenv::file("invalid/18_null_attribute.json")) +
                 " " + q(tmp / "out.xes"));
    CHECK(r.exit_code == 2);
    CHECK_FALSE(std::filesystem::exists(tmp / "out.xes"));
}

TEST_CASE("strict conversion refuses sloppy input") {
    testenv::TempDir tmp;
    auto sloppy = tmp / "sloppy.json";
    spit(sloppy, R"({"attrs": {"a": 1}, "unknown-section": true})");
    CHECK(run_kit(tmp, "convert " + q(sloppy) + " " + q(tmp / "o.json"))
              .exit_code == 0);
    CHECK(run_kit(tmp, "convert " + q(sloppy) + " " + q(tmp / "o2.json") +
                           " --strict")
              .exit_code == 2);
}

TEST_CASE("validate separates errors, warnings and clean logs") {
    testenv::TempDir tmp;

    RunResult bad = run_kit(
        tmp,
        "validate " + q(testenv::file("invalid/02_global_attrs_bad_scope.json")));
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("error") != std::string::npos);

    // Unsatisfied globals and undeclared classifier keys warn but pass.
    auto full = testenv::file("full.json");
    CHECK(run_kit(tmp, "validate " + q(full)).exit_code == 0);
    CHECK(run_kit(tmp, "validate " + q(full) + " --strict").exit_code == 3);

    auto clean = testenv::file("basic_structure.json");
    CHECK(run_kit(tmp, "validate " + q(clean) + " --strict").exit_code == 0);
}

TEST_CASE("validate --json emits a machine-readable report") {
    testenv::TempDir tmp;
    RunResult r = run_kit(
        tmp, "validate " + q(testenv::file("invalid/18_null_attribute.json")) +
                 " --json");
    CHECK(r.exit_code == 2);
    auto root = jxes::json::parse_tree(r.out);
    REQUIRE(root.is_array());
    REQUIRE_FALSE(root.as_array().empty());
    const auto* code = root.as_array()[0].find("code");
    REQUIRE(code != nullptr);
    CHECK(code->as_string() == "SchemaViolation");
}

TEST_CASE("generate is reproducible and honours the extension") {
    testenv::TempDir tmp;
    auto profile = tmp / "profile.json";
    spit(profile, R"({"seed": 9, "traces": 4, "mean_events_per_trace": 2.0,
                      "max_events_per_trace": 5, "distinct_activities": 3})");

    auto out1 = tmp / "one.json";
    auto out2 = tmp / "two.json";
    REQUIRE(run_kit(tmp, "generate " + q(profile) + " " + q(out1)).exit_code ==
            0);
    REQUIRE(run_kit(tmp, "generate " + q(profile) + " " + q(out2)).exit_code ==
            0);
    CHECK(testenv::slurp(out1) == testenv::slurp(out2));

    auto packed = tmp / "log.json.gz";
    REQUIRE(run_kit(tmp, "generate " + q(profile) + " " + q(packed))
                .exit_code == 0);
    std::string bytes = testenv::slurp(packed);
    REQUIRE(bytes.size() >= 2);
    CHECK(static_cast<unsigned char>(bytes[0]) == 0x1f);
    CHECK(static_cast<unsigned char>(bytes[1]) == 0x8b);
    CHECK(jxes::logs_equivalent(jxes::parse_jxes_file(out1),
                                jxes::parse_jxes_file(packed)));

    auto bad_profile = tmp / "bad.json";
    spit(bad_profile, R"({"traces": "many"})");
    CHECK(run_kit(tmp, "generate " + q(bad_profile) + " " + q(tmp / "x.json"))
              .exit_code == 2);
}

TEST_CASE("bench writes reports into the output directory") {
    testenv::TempDir tmp;
    auto suite = tmp / "suite.json";
    spit(suite, R"({"runs": 1, "cases": [
        {"input": ")" + testenv::file("basic_structure.json").string() +
                    R"(", "format": "jxes", "direction": "import"}
    ]})");
    auto outdir = tmp / "reports";
    RunResult r = run_kit(tmp, "bench " + q(suite) + " " + q(outdir));
    REQUIRE(r.exit_code == 0);
    std::string md = testenv::slurp(outdir / "report.md");
    CHECK(md.find("### Import time (ms)") != std::string::npos);
    std::string csv = testenv::slurp(outdir / "report.csv");
    CHECK(csv.find("# Import time (ms)") != std::string::npos);

    RunResult limited = run_kit(
        tmp, "bench " + q(suite) + " " + q(tmp / "md-only") + " --report md");
    REQUIRE(limited.exit_code == 0);
    CHECK(std::filesystem::exists(tmp / "md-only" / "report.md"));
    CHECK_FALSE(std::filesystem::exists(tmp / "md-only" / "report.csv"));
}
