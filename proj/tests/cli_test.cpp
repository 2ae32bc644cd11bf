// Drives the built CLI end to end: output goldens, exit codes, file formats.

#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "json.hpp"

#ifndef IMPSEL_CLI_PATH
#error "IMPSEL_CLI_PATH must point at the built binary"
#endif
#ifndef IMPSEL_TEST_DATA
#error "IMPSEL_TEST_DATA must point at the fixture directory"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(IMPSEL_CLI_PATH) + " " + args + " 2>&1";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string fixture(const std::string& name) {
    return std::string(IMPSEL_TEST_DATA) + "/" + name;
}

}  // namespace

TEST_CASE("select is seed-deterministic and echoes its configuration") {
    auto r = run_cli("select " + fixture("single_edge_2.txt") + " --mech permutation --seed 1");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["winner"] == 2);  // frozen from the stream discipline
    CHECK(j["seed"] == 1);
    CHECK(j["mech"]["kind"] == "permutation");
    CHECK(j["config"].contains("guards"));

    auto again = run_cli("select " + fixture("single_edge_2.txt") + " --mech permutation --seed 1");
    CHECK(again.out == r.out);

    auto hex = run_cli("select " + fixture("single_edge_2.txt") + " --mech permutation --seed 0x1");
    CHECK(nlohmann::json::parse(hex.out)["winner"] == 2);
}

TEST_CASE("dist prints exact rationals") {
    auto r = run_cli("dist " + fixture("single_edge_2.txt") + " --mech two-partition");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["probs"] == nlohmann::json::array({"1/2", "1/2"}));
    CHECK(j["expected_degree"] == "1/2");
}

TEST_CASE("ratio reports the hub gadget value") {
    auto r = run_cli("ratio " + fixture("perm_up.txt") + " --mech permutation");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["ratio"] == "2/3");
    CHECK(j["delta"] == 3);
    CHECK(j["expected_degree"] == "2/1");
}

TEST_CASE("ratio on an edgeless graph is null with a note") {
    auto r = run_cli("ratio " + fixture("edgeless_3.txt") + " --mech permutation");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["ratio"].is_null());
    CHECK(j["note"] == "delta zero");
}

TEST_CASE("json graph files are accepted") {
    auto r = run_cli("ratio " + fixture("perm_up.json") + " --mech permutation");
    CHECK(r.exit_code == 0);
    CHECK(nlohmann::json::parse(r.out)["ratio"] == "2/3");
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("select " + fixture("single_edge_2.txt") + " --mech k-partition").exit_code == 2);
    CHECK(run_cli("select " + fixture("single_edge_2.txt") + " --mech nonesuch").exit_code == 2);
    CHECK(run_cli("select no_such_file.txt --mech permutation").exit_code == 2);
    CHECK(run_cli("select " + fixture("bad_loop.txt") + " --mech permutation").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("bounds --table alpha9").exit_code == 2);
    CHECK(run_cli("select " + fixture("single_edge_2.txt") +
                  " --mech permutation --seed zebra").exit_code == 2);
}

TEST_CASE("size guards exit with code 3 and can be overridden") {
    auto refused = run_cli("dist " + fixture("cycle_plus_12.txt") + " --mech permutation");
    CHECK(refused.exit_code == 3);
    CHECK(refused.out.find("guard") != std::string::npos);

    auto searched = run_cli("search --n 5 --class all --mech permutation");
    CHECK(searched.exit_code == 3);

    auto overridden =
        run_cli("--guard max_enum_all_n=5 search --n 5 --class all --mech two-partition "
                "--threads 2");
    // 2^20 graphs with the 2^5-assignment oracle: seconds, and now permitted.
    CHECK(overridden.exit_code == 0);
    auto j = nlohmann::json::parse(overridden.out);
    CHECK(j["config"]["guards"].get<std::string>().find("max_enum_all_n=5") != std::string::npos);
    CHECK(run_cli("--guard bogus=1 gen --gadget perm_up").exit_code == 2);
}

TEST_CASE("the guards environment variable is honored and echoed") {
    std::string saved_prefix = "IMPSEL_GUARDS=max_permutation_n=3 ";
    std::string cmd = saved_prefix + std::string(IMPSEL_CLI_PATH) + " dist " +
                      fixture("perm_up.txt") + " --mech permutation 2>&1";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    CHECK(r.exit_code == 3);  // the n=4 oracle is now over the tightened guard

    std::string echo_cmd = saved_prefix + std::string(IMPSEL_CLI_PATH) + " gen --gadget perm_up";
    RunResult echoed;
    pipe = popen(echo_cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe))
        echoed.out.append(buf.data(), got);
    pclose(pipe);
    CHECK(echoed.out.find("max_permutation_n=3") != std::string::npos);
}

TEST_CASE("bounds emits the frozen alpha2 rows") {
    auto r = run_cli("bounds --table alpha2 --delta 1..4");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("bound_id,k,delta_or_n,class,value_num,value_den,value_float") !=
          std::string::npos);
    CHECK(r.out.find("alpha2,,1,,1,4,0.25") != std::string::npos);
    CHECK(r.out.find("alpha2,,2,,3,8,0.375") != std::string::npos);
    CHECK(r.out.find("alpha2,,3,,3,8,0.375") != std::string::npos);
    CHECK(r.out.find("alpha2,,4,,13,32,0.40625") != std::string::npos);
}

TEST_CASE("bounds upper table matches the certificates") {
    auto r = run_cli("bounds --table upper --class no-abstention --n 3..7");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("upper,,3,no-abstention,3,4,0.75") != std::string::npos);
    CHECK(r.out.find("upper,,4,no-abstention,11,16,0.6875") != std::string::npos);
    CHECK(r.out.find("upper,,5,no-abstention,7,10,0.7") != std::string::npos);
    CHECK(r.out.find("upper,,6,no-abstention,17,24,") != std::string::npos);
    CHECK(r.out.find("upper,,7,no-abstention,5,7,") != std::string::npos);
}

TEST_CASE("bounds alphak table collapses to alpha2 at k=2") {
    auto r = run_cli("bounds --table alphak --k 2 --delta 5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("alpha_k,2,5,,13,32,0.40625") != std::string::npos);
}

TEST_CASE("gen round-trips through the parser") {
    auto r = run_cli("gen --gadget perm_up");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("4\n") != std::string::npos);
    CHECK(r.out.find("3 2\n") != std::string::npos);
    CHECK(run_cli("gen --gadget nonesuch").exit_code == 2);
    CHECK(run_cli("gen --gadget cycle_plus --n 5").out.find("5 1") != std::string::npos);
}

TEST_CASE("verify formulas suite passes") {
    auto r = run_cli("verify --suite formulas");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["failed"] == 0);
    CHECK(j["passed"].get<int>() >= 8);
}

TEST_CASE("mc reports frequencies with a band") {
    auto r = run_cli("mc " + fixture("perm_up.txt") +
                     " --mech permutation --trials 20000 --seed 3");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["trials"] == 20000);
    CHECK(j["seed"] == 3);
    CHECK(j["freq"].size() == 4);
    CHECK(j["delta"] == 3);
    double mean = j["mean_degree"].get<double>();
    CHECK(mean > 1.8);
    CHECK(mean < 2.2);
    CHECK(j["band"].get<double>() > 0.0);
}

TEST_CASE("search reports the worst case over a class") {
    auto r = run_cli("search --n 3 --class no-abstention --mech permutation");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["min_ratio"] == "3/4");
    CHECK(j["examined"] == 27);
}
