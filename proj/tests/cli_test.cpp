#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "stiefel/error.hpp"

using json = nlohmann::json;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r;
    r.code = stiefel::cli::run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

json run_json(std::vector<std::string> args) {
    args.insert(args.begin(), {"--format", "json"});
    const Run r = run(args);
    REQUIRE(r.code == 0);
    return json::parse(r.out);
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("stiefel_cli_test_" + name);
}

int verify_file(const json& doc, const std::string& name) {
    const auto path = temp_file(name);
    std::ofstream(path) << doc.dump();
    const int code = run({"verify", path.string()}).code;
    std::filesystem::remove(path);
    return code;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("adams matrix example") {
    const json j = run_json({"adams", "--k", "2", "--n", "5", "--m", "3"});
    CHECK(j.at("entries") == json::parse("[[8,0],[12,16]]"));
    CHECK(j.at("basis") == json::parse("[3,4]"));
    CHECK(j.at("k") == 2);
}

TEST_CASE("verdict examples") {
    const json a = run_json({"verdict", "--r", "2", "--l", "2", "--n", "8"});
    CHECK(a.at("status") == "NoSection");
    CHECK(a.at("no_section_over_integers") == true);
    const json b = run_json({"verdict", "--r", "3", "--l", "1", "--n", "28"});
    CHECK(b.at("status") == "NecessaryConditionOnly");
    const json c = run_json({"verdict", "--r", "1", "--l", "1", "--n", "4"});
    CHECK(c.at("status") == "SectionExists");

    const Run csv = run({"--format", "csv", "verdict", "--r", "2", "--l", "2", "--n", "8"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("r,l,n,char,status,chain_length,certificate_ref\n", 0) == 0);
    CHECK(csv.out.find("2,2,8,0,NoSection,") != std::string::npos);
    CHECK(csv.out.find("retract(8,6,4;2)") != std::string::npos);

    const Run human = run({"verdict", "--r", "2", "--l", "2", "--n", "8", "--stably-free"});
    REQUIRE(human.code == 0);
    CHECK(human.out.find("status: NoSection") != std::string::npos);
    CHECK(human.out.find("stably free reading") != std::string::npos);
}

TEST_CASE("field flags reach the verdict") {
    const json j = run_json({"verdict", "--r", "2", "--l", "2", "--n", "9", "--char", "5", "--no-perfect"});
    CHECK(j.at("status") == "Unknown");
    CHECK(j.at("query").at("field").at("perfect") == false);
    const json k = run_json({"verdict", "--r", "2", "--l", "2", "--n", "9", "--no-fin-2-cohdim"});
    CHECK(k.at("status") == "Unknown");
    CHECK(run({"verdict", "--r", "2", "--l", "2", "--n", "9", "--char", "4"}).code == 2);
    CHECK(run({"verdict", "--r", "2", "--l", "2", "--n", "9", "--no-perfect"}).code == 2);
}

TEST_CASE("retract examples") {
    const json imp = run_json({"retract", "--n", "9", "--s", "7", "--t", "5", "--k", "2"});
    CHECK(imp.at("verdict") == "impossible");
    const json ex = run_json({"retract", "--n", "27", "--s", "25", "--t", "24", "--k", "2"});
    CHECK(ex.at("verdict") == "exists");
    const json multi = run_json({"retract", "--n", "9", "--s", "7", "--t", "6", "--k", "2,3"});
    CHECK(multi.at("problem").at("ks") == json::parse("[2,3]"));
}

TEST_CASE("join coefficients and connectivity") {
    const json j = run_json({"join-coeffs", "--r", "2", "--n", "5", "--m", "6", "--splitting"});
    CHECK(j.at("replay") == true);
    CHECK(j.at("splitting").at("success") == true);
    const json c = run_json({"connectivity", "--proof", "lift-l2", "--n", "8"});
    CHECK(c.at("passed") == true);
    const json d = run_json({"connectivity", "--proof", "lift-l2", "--n", "7"});
    CHECK(d.at("passed") == false);
    const json e = run_json({"connectivity", "--proof", "comparison-map", "--r", "3", "--n", "9"});
    CHECK(e.at("conclusion") == 11);
}

TEST_CASE("--verify round trip on every command") {
    const std::vector<std::vector<std::string>> cmds = {
        {"verdict", "--r", "2", "--l", "2", "--n", "8"},
        {"verdict", "--r", "3", "--l", "1", "--n", "28"},
        {"verdict", "--r", "1", "--l", "2", "--n", "7", "--char", "2"},
        {"retract", "--n", "12", "--s", "10", "--t", "8", "--k", "2"},
        {"retract", "--n", "27", "--s", "25", "--t", "24", "--k", "2"},
        {"adams", "--k", "3", "--n", "8", "--m", "2"},
        {"join-coeffs", "--r", "2", "--n", "4", "--m", "6"},
        {"connectivity", "--proof", "join-lift", "--r", "2", "--n", "5", "--m", "6"},
        {"connectivity", "--proof", "lift-l1", "--r", "3", "--n", "6"},
        {"sweep", "--r-max", "3", "--l-max", "3", "--n-max", "10"},
    };
    for (const auto& format : {"human", "json", "csv"}) {
        for (auto cmd : cmds) {
            const bool csv_ok = cmd[0] == "verdict" || cmd[0] == "sweep";
            cmd.insert(cmd.begin(), {"--verify", "--format", format});
            const Run r = run(cmd);
            CAPTURE(cmd[3]);
            CAPTURE(format);
            CHECK(r.code == (std::string(format) == "csv" && !csv_ok ? 2 : 0));
        }
    }
}

TEST_CASE("sweep output") {
    const json j = run_json({"sweep", "--r-min", "2", "--r-max", "2", "--l-min", "2", "--l-max", "2", "--n-max", "12"});
    CHECK(j.at("verdicts").size() == 9);  // n = 4..12
    const auto path = temp_file("sweep.csv");
    const Run r = run({"--format", "csv", "sweep", "--r-max", "2", "--l-max", "2", "--n-max", "8", "--output", path.string()});
    REQUIRE(r.code == 0);
    std::ifstream f(path);
    std::string header;
    std::getline(f, header);
    CHECK(header == "r,l,n,char,status,chain_length,certificate_ref");
    std::filesystem::remove(path);
}

TEST_CASE("verify subcommand detects tampering") {
    const json v = run_json({"verdict", "--r", "2", "--l", "2", "--n", "9"});
    CHECK(verify_file(v, "v.json") == 0);
    json bad = v;
    bad["status"] = "SectionExists";
    CHECK(verify_file(bad, "v_bad.json") == 1);
    bad = v;
    bad["chain"].erase(bad["chain"].size() - 1);
    CHECK(verify_file(bad, "v_short.json") == 1);

    const json rt = run_json({"retract", "--n", "27", "--s", "25", "--t", "24", "--k", "2"});
    CHECK(verify_file(rt, "r.json") == 0);
    json rbad = rt;
    auto& w = rbad["witness"]["entries"];
    REQUIRE(w.is_array());
    w[0][0] = w[0][0].is_string() ? json(std::to_string(std::stol(w[0][0].get<std::string>()) + 1))
                                  : json(w[0][0].get<long>() + 1);
    CHECK(verify_file(rbad, "r_bad.json") == 1);

    const json a = run_json({"adams", "--k", "2", "--n", "5", "--m", "3"});
    json abad = a;
    abad["entries"][1][0] = 13;
    CHECK(verify_file(a, "a.json") == 0);
    CHECK(verify_file(abad, "a_bad.json") == 1);

    const json c = run_json({"connectivity", "--proof", "lift-l2", "--n", "7"});
    json cbad = c;
    cbad["passed"] = true;
    CHECK(verify_file(c, "c.json") == 0);
    CHECK(verify_file(cbad, "c_bad.json") == 1);

    const json jc = run_json({"join-coeffs", "--r", "2", "--n", "4", "--m", "4"});
    json jbad = jc;
    jbad["r"] = 3;
    CHECK(verify_file(jc, "j.json") == 0);
    CHECK(verify_file(jbad, "j_bad.json") != 0);

    CHECK(verify_file(json::object({{"hello", 1}}), "unknown.json") == 2);
    CHECK(run({"verify", temp_file("does_not_exist.json").string()}).code == 2);
    const auto garbage = temp_file("garbage.json");
    std::ofstream(garbage) << "{not json";
    CHECK(run({"verify", garbage.string()}).code == 2);
    std::filesystem::remove(garbage);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"verdict", "--r", "2"}).code == 2);
    CHECK(run({"verdict", "--r", "x", "--l", "1", "--n", "4"}).code == 2);
    CHECK(run({"verdict", "--r", "3", "--l", "3", "--n", "5"}).code == 2);
    CHECK(run({"verdict", "--r", "1", "--l", "1", "--n", "501"}).code == 2);
    CHECK(run({"retract", "--n", "9", "--s", "7", "--t", "8", "--k", "2"}).code == 2);
    CHECK(run({"retract", "--n", "9", "--s", "7", "--t", "5", "--k", "1"}).code == 2);
    CHECK(run({"retract", "--n", "400", "--s", "300", "--t", "200", "--k", "2"}).code == 2);
    CHECK(run({"adams", "--k", "0", "--n", "5", "--m", "3"}).code == 2);
    CHECK(run({"join-coeffs", "--r", "2", "--n", "5", "--m", "5"}).code == 2);
    CHECK(run({"connectivity", "--proof", "lift-l2", "--n", "5"}).code == 2);
    CHECK(run({"connectivity", "--proof", "nonsense"}).code == 2);
    CHECK(run({"connectivity", "--proof", "comparison-map", "--r", "2", "--n", "2001"}).code == 2);
    CHECK(run({"--format", "xml", "adams", "--k", "2", "--n", "5", "--m", "3"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"verdict", "--help"}).code == 0);
}

TEST_CASE("random argument vectors only exit 0 or 2") {
    const std::uint64_t seed = 20261015;
    MESSAGE("cli fuzz seed " << seed);
    std::mt19937_64 rng(seed);
    const std::vector<std::string> commands = {"verdict", "retract", "adams", "join-coeffs", "connectivity", "sweep", "verify", "bogus"};
    const std::vector<std::string> flags = {"--r", "--l", "--n", "--m", "--s", "--t", "--k", "--char", "--proof",
                                            "--alg-closed", "--no-perfect", "--no-fin-2-cohdim", "--splitting",
                                            "--stably-free", "--r-max", "--l-max", "--n-max", "--n-min", "--format",
                                            "--verify", "--help-me"};
    const std::vector<std::string> values = {"-3", "-1", "0", "1", "2", "3", "4", "5", "6", "7", "8", "9", "12", "27",
                                             "x", "", "2,3", "json", "csv", "human", "lift-l1", "lift-l2",
                                             "join-lift", "comparison-map", "1e3", "99999999999999999999"};
    auto pick = [&](const std::vector<std::string>& v) { return v[rng() % v.size()]; };
    int successes = 0;
    for (int trial = 0; trial < 600; ++trial) {
        std::vector<std::string> args;
        if (rng() % 4 == 0) args.push_back(pick({"--verify", "--format"}));
        if (!args.empty() && args.back() == "--format") args.push_back(pick({"json", "csv", "human", "yaml"}));
        args.push_back(pick(commands));
        const int extra = static_cast<int>(rng() % 9);
        for (int i = 0; i < extra; ++i) {
            args.push_back(pick(flags));
            if (rng() % 5 != 0) args.push_back(pick(values));
        }
        if (args[args.size() > 1 && args[0] == "--verify" ? 1 : 0] == "verify") continue;  // would read files named by the fuzzer
        const Run r = run(args);
        std::string joined;
        for (const auto& a : args) joined += a + " ";
        CAPTURE(joined);
        CAPTURE(r.err);
        CHECK((r.code == 0 || r.code == 2));
        if (r.code == 0) ++successes;
    }
    MESSAGE("fuzz successes: " << successes);
}

}  // TEST_SUITE
