#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

std::string binary() {
    const char* env = std::getenv("ORBITHULL_BIN");
    REQUIRE(env != nullptr);
    return env;
}

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run(const std::string& args) {
    const std::string out_file = "cli_test_stdout.tmp";
    const std::string cmd = binary() + " " + args + " > " + out_file + " 2> cli_test_stderr.tmp";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(raw);
    std::ifstream in(out_file);
    std::ostringstream ss;
    ss << in.rdbuf();
    r.stdout_text = ss.str();
    return r;
}

void write_matrix(const std::string& path, const json& entries) {
    json m = {{"n", entries.size()}, {"entries", entries}};
    std::ofstream out(path);
    out << m.dump();
}

json strip_timestamp(json j) {
    j.erase("timestamp");
    return j;
}

struct Fixtures {
    Fixtures() {
        write_matrix("cli_a.json", json::array({json::array({json::array({2.0, 0.0}), json::array({0.0, 0.0})}),
                                                json::array({json::array({0.0, 0.0}), json::array({0.0, 0.0})})}));
        write_matrix("cli_b.json", json::array({json::array({json::array({1.0, 0.0}), json::array({0.0, 0.0})}),
                                                json::array({json::array({0.0, 0.0}), json::array({1.0, 0.0})})}));
        write_matrix("cli_far.json", json::array({json::array({json::array({3.0, 0.0}), json::array({0.0, 0.0})}),
                                                  json::array({json::array({0.0, 0.0}), json::array({3.0, 0.0})})}));
        write_matrix("cli_nonherm.json",
                     json::array({json::array({json::array({0.0, 0.0}), json::array({1.0, 0.0})}),
                                  json::array({json::array({0.0, 0.0}), json::array({0.0, 0.0})})}));
    }
};

const Fixtures fixtures;

} // namespace

TEST_CASE("check-majorization exit codes and report") {
    RunResult yes = run("check-majorization cli_b.json cli_a.json");
    CHECK(yes.exit_code == 0);
    const json report = json::parse(yes.stdout_text);
    CHECK(report.at("majorizes_partial_sums") == true);
    CHECK(report.at("majorizes_levelsets") == true);
    CHECK(report.at("partial_sum_slack").get<double>() == doctest::Approx(1.0));
    CHECK(report.at("trace_gap").get<double>() == doctest::Approx(0.0));
    CHECK(report.contains("timestamp"));

    RunResult no = run("check-majorization cli_a.json cli_b.json");
    CHECK(no.exit_code == 1);
    CHECK(json::parse(no.stdout_text).at("majorizes_partial_sums") == false);

    CHECK(run("check-majorization cli_missing.json cli_a.json").exit_code == 2);
    CHECK(run("check-majorization cli_nonherm.json cli_a.json").exit_code == 2);
}

TEST_CASE("certify produces a certificate that verify accepts") {
    RunResult cert = run("certify cli_b.json cli_a.json --output cli_cert.json");
    CHECK(cert.exit_code == 0);
    std::ifstream in("cli_cert.json");
    const json parsed = json::parse(in);
    CHECK(parsed.at("valid") == true);
    CHECK(parsed.at("weights").size() == parsed.at("unitaries").size());
    CHECK(parsed.at("residual").get<double>() <= 1e-7);

    CHECK(run("verify cli_cert.json").exit_code == 0);

    // Reversed order is not majorized: exit 1 with the failing prefix.
    RunResult fail = run("certify cli_a.json cli_b.json");
    CHECK(fail.exit_code == 1);
    CHECK(json::parse(fail.stdout_text).contains("failing_prefix"));

    CHECK(run("certify cli_nonherm.json cli_a.json").exit_code == 2);
    CHECK(run("verify cli_a.json").exit_code == 2); // matrix file is not a certificate
}

TEST_CASE("membership exit codes per verdict") {
    RunResult inside = run("membership cli_b.json cli_a.json");
    CHECK(inside.exit_code == 0);
    const json in_report = json::parse(inside.stdout_text);
    CHECK(in_report.at("status") == "inside");
    CHECK(in_report.at("lmo_exact") == true);
    CHECK(in_report.at("certificate").is_object());

    RunResult outside = run("membership cli_far.json cli_a.json");
    CHECK(outside.exit_code == 1);
    const json out_report = json::parse(outside.stdout_text);
    CHECK(out_report.at("status") == "outside");
    CHECK(out_report.at("witness").is_object());
    CHECK(out_report.at("margin").get<double>() > 0.0);

    CHECK(run("membership cli_far.json cli_a.json --orbit twosided").exit_code == 1);
    CHECK(run("membership cli_far.json cli_a.json --orbit bogus").exit_code == 2);
    CHECK(run("membership cli_b.json cli_a.json --tol -1").exit_code == 2);
    CHECK(run("membership cli_b.json cli_a.json --restarts 0").exit_code == 2);
}

TEST_CASE("duel exit codes distinguish certified and uncertified failure") {
    CHECK(run("duel cli_b.json cli_a.json cli_far.json").exit_code == 0);

    RunResult certified = run("duel cli_far.json cli_a.json cli_b.json");
    CHECK(certified.exit_code == 1);
    const json report = json::parse(certified.stdout_text);
    CHECK(report.at("certified") == true);
    CHECK(report.at("success") == false);

    RunResult weighted = run("duel cli_b.json cli_a.json cli_far.json --state cli_b.json");
    CHECK(weighted.exit_code == 2); // cli_b.json has trace 2, not a density matrix

    write_matrix("cli_rho.json",
                 json::array({json::array({json::array({0.5, 0.0}), json::array({0.0, 0.0})}),
                              json::array({json::array({0.0, 0.0}), json::array({0.5, 0.0})})}));
    CHECK(run("duel cli_b.json cli_a.json cli_far.json --state cli_rho.json").exit_code == 0);
}

TEST_CASE("reports are deterministic for a fixed seed modulo the timestamp") {
    RunResult first = run("membership cli_far.json cli_a.json --seed 7");
    RunResult second = run("membership cli_far.json cli_a.json --seed 7");
    CHECK(strip_timestamp(json::parse(first.stdout_text)) ==
          strip_timestamp(json::parse(second.stdout_text)));

    RunResult d1 = run("demo halfspace --trials 5 --seed 3");
    RunResult d2 = run("demo halfspace --trials 5 --seed 3");
    CHECK(strip_timestamp(json::parse(d1.stdout_text)) == strip_timestamp(json::parse(d2.stdout_text)));
}

TEST_CASE("demo scenarios pass their own assertions") {
    RunResult c2 = run("demo c2-counterexample");
    CHECK(c2.exit_code == 0);
    const json report = json::parse(c2.stdout_text);
    CHECK(report.at("pass") == true);
    CHECK(report.at("hull_distance").get<double>() == doctest::Approx(0.7071067811865476));

    CHECK(run("demo halfspace --trials 10").exit_code == 0);
    CHECK(run("demo inclusion-chain --trials 2").exit_code == 0);

    RunResult eq = run("demo equivalence-suite --trials 4");
    CHECK(eq.exit_code == 0);
    CHECK(json::parse(eq.stdout_text).at("disagreements") == 0);

    CHECK(run("demo no-such-demo").exit_code == 2);
}

TEST_CASE("missing subcommand or bad flags exit 2") {
    CHECK(run("").exit_code == 2);
    CHECK(run("frobnicate cli_a.json").exit_code == 2);
    CHECK(run("membership cli_b.json").exit_code == 2); // missing positional
}
