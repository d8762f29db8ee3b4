#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(ORDERCALC_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

nlohmann::json as_json(const RunResult& r) {
    return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("exit code contract: 0 pass, 1 failed verdict, 2 usage errors") {
    CHECK(run("characterize \"w* + w\" --target \"[w]^{w|w}\"").exit_code == 0);
    CHECK(run("characterize \"w\" --target \"[w]^{w|w}\"").exit_code == 1);
    CHECK(run("characterize \"w +\" --target \"[w]^{w|w}\"").exit_code == 2);
    CHECK(run("characterize \"w\" --target \"[w]^{w|\"").exit_code == 2);
    CHECK(run("nonsense").exit_code == 2);
    CHECK(run("build \"Q\" -n 8").exit_code == 1);   // refusal
    CHECK(run("build \"w* + w\" -n 8").exit_code == 0);
    CHECK(run("oracle --pn 1").exit_code == 0);
    CHECK(run("oracle --pn 7").exit_code == 2);      // cap
    CHECK(run("topology -n 4 -s 2").exit_code == 0);
    CHECK(run("topology -n 4 -s 4").exit_code == 2);  // precondition
}

TEST_CASE("analyze reports the attribute record") {
    auto r = run("analyze \"w* + w\"");
    REQUIRE(r.exit_code == 0);
    auto j = as_json(r);
    CHECK(j["weakly_boolean"] == true);
    CHECK(j["has_min"] == false);
    CHECK(j["has_max"] == false);

    auto q = as_json(run("analyze \"Q\""));
    CHECK(q["dense_jumps"] == false);

    auto k = as_json(run("analyze --cardinals \"fin<aleph0<k\" \"k* + k\""));
    CHECK(k["w_init"]["exact"] == nlohmann::json::array({"k"}));
    CHECK(k["w_fin"]["exact"] == nlohmann::json::array({"k"}));
    CHECK(k["w_init"]["ranges"].empty());
}

TEST_CASE("characterize matches the symbolic cases") {
    auto b = as_json(
        run("characterize --cardinals \"fin<aleph0<l<+l+<k\" \"l* + l+\" --target \"[k]^{l|k}\""));
    CHECK(b["case"] == "b");
    CHECK(b["passed"] == true);

    auto c = as_json(
        run("characterize --cardinals \"fin<aleph0<l<+l+<k\" \"(l+)* + l\" --target \"[k]^{k|l}\""));
    CHECK(c["case"] == "c");
    CHECK(c["passed"] == true);

    auto w = as_json(run("characterize \"w\" --target \"[w]^{w|w}\""));
    CHECK(w["passed"] == false);
    CHECK(w["failures"][0]["condition"] == "has_min");
}

TEST_CASE("build emits the dump and certificate") {
    auto r = run("build \"w* + w\" -n 16");
    REQUIRE(r.exit_code == 0);
    auto j = as_json(r);
    CHECK(j["certificate"]["pass"] == true);
    CHECK(j["certificate"]["n"] == 16);
    CHECK(j["d_prefix"].size() == 16);
    CHECK(j["certificate"]["steps"].size() == 16);
    for (auto& step : j["certificate"]["steps"]) CHECK(step["ok"] == true);

    auto refused = run("build \"Q\" -n 8");
    CHECK(refused.exit_code == 1);
    auto rj = as_json(refused);
    CHECK(rj["refused"] == true);
    CHECK(rj["verdict"]["passed"] == false);
}

TEST_CASE("oracle sweeps") {
    auto j = as_json(run("oracle --pn 4"));
    CHECK(j["chain_count"] == 24);
    CHECK(j["claim1_all"] == true);
    CHECK(j["day_all"] == true);

    auto one = as_json(run("oracle --pn 1"));
    CHECK(one["chain_count"] == 1);
}

TEST_CASE("topology report") {
    auto j = as_json(run("topology -n 4 -s 2"));
    CHECK(j["class_size"] == 6);
    CHECK(j["pair_failures"] == 0);
    CHECK(j["passed"] == true);

    auto j31 = as_json(run("topology -n 3 -s 1"));
    CHECK(j31["class_size"] == 3);
}

TEST_CASE("runs are deterministic and --out writes the same report") {
    auto a = run("build \"Z\" -n 12");
    auto b = run("build \"Z\" -n 12");
    CHECK(a.out == b.out);

    std::string path = "/tmp/ordercalc_cli_out.json";
    std::remove(path.c_str());
    auto r = run("build \"Z\" -n 12 --out " + path);
    CHECK(r.exit_code == 0);
    std::ifstream f(path);
    REQUIRE(f.good());
    std::string content((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(content == a.out);
    std::remove(path.c_str());
}

TEST_CASE("text format renders the same data") {
    auto r = run("--format text analyze \"Z\"");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("weakly_boolean: true") != std::string::npos);
}
