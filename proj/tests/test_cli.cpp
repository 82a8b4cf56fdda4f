// End-to-end tests run against the installed binary through a shell; the
// TAU_WALK_BIN macro is injected by the build.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "tauwalk/io.hpp"

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "tau_walk_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

RunResult run(const std::string& args) {
    fs::path o = work_dir() / "stdout.txt", e = work_dir() / "stderr.txt";
    std::string cmd = std::string(TAU_WALK_BIN) + " " + args + " >" + o.string() + " 2>" + e.string();
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(o);
    r.err = slurp(e);
    return r;
}

tw::Json json_of(const RunResult& r) { return tw::Json::parse(r.out); }

}  // namespace

TEST_CASE("exact distribution for a short walk") {
    auto r = run("exact --steps 3");
    REQUIRE(r.code == 0);
    auto j = json_of(r);
    CHECK(j["Z0"] == "7");
    CHECK(j["spec"]["steps"] == 3);
    // endpoints of a 3-tick walk have odd weight
    for (const auto& row : j["entries"]) {
        long w = 0;
        for (const auto& part : row["partition"]) w += part.get<long>();
        CHECK(w % 2 == 1);
    }
    auto r0 = run("exact --steps 0");
    REQUIRE(r0.code == 0);
    CHECK(json_of(r0)["Z0"] == "1");
}

TEST_CASE("exact respects the summation bound") {
    auto r = run("exact --steps 41");
    CHECK(r.code == 3);
    auto ok = run("exact --steps 41 --cap 41 --format csv");
    CHECK(ok.code == 0);
}

TEST_CASE("argument validation exits with code 2") {
    CHECK(run("exact --steps -2").code == 2);
    CHECK(run("exact").code == 2);
    CHECK(run("exact --steps 2 --no-such-flag").code == 2);
    CHECK(run("exact --steps 2 --rate abc").code == 2);
    CHECK(run("nonsense").code == 2);
    CHECK(run("check --suite nope").code == 2);
    CHECK(run("--help").code == 0);
    CHECK(run("exact --help").code == 0);
}

TEST_CASE("exact output is byte-deterministic") {
    fs::path a = work_dir() / "exact_a.json", b = work_dir() / "exact_b.json";
    REQUIRE(run("exact --steps 6 --rate 3/2 --out " + a.string()).code == 0);
    REQUIRE(run("exact --steps 6 --rate 3/2 --out " + b.string()).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
}

TEST_CASE("exact csv format") {
    auto r = run("exact --steps 2 --format csv");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("partition,log_weight,probability\n", 0) == 0);
    CHECK(r.out.find("\"\",") != std::string::npos);  // vacuum row
}

TEST_CASE("sampler is reproducible for a fixed seed") {
    fs::path a = work_dir() / "sample_a.json", b = work_dir() / "sample_b.json";
    REQUIRE(run("sample --steps 6 --samples 2000 --seed 3 --out " + a.string()).code == 0);
    REQUIRE(run("sample --steps 6 --samples 2000 --seed 3 --out " + b.string()).code == 0);
    CHECK(slurp(a) == slurp(b));
    auto j = tw::Json::parse(slurp(a));
    CHECK(j["n"] == 2000);
    CHECK(j["z_hat"].get<double>() > 0);
    long total = 0;
    for (const auto& row : j["endpoints"]) total += row["count"].get<long>();
    CHECK(total == 2000);
    auto csv = run("sample --steps 4 --samples 100 --seed 9 --format csv");
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("partition,count,weight_sum\n", 0) == 0);
}

TEST_CASE("shape writes the profile and reports the mode") {
    fs::path csv = work_dir() / "shape.csv";
    auto r = run("shape --steps 400 --rate 1 --mode-search --restarts 2 --out " + csv.string());
    REQUIRE(r.code == 0);
    std::string table = slurp(csv);
    CHECK(table.rfind("h,sigma_predicted,sigma_mode\n", 0) == 0);
    auto j = json_of(r);
    CHECK(j["predicted"]["R"].get<double>() == doctest::Approx(std::sqrt(2.0 * 400)).epsilon(1e-6));
    CHECK(j.contains("mode"));
    long area = j["mode"]["area"].get<long>();
    CHECK(area > 100);
    CHECK(area < 300);
    auto plain = run("shape --steps 100");
    REQUIRE(plain.code == 0);
    CHECK(plain.out.rfind("h,sigma_predicted\n", 0) == 0);
}

TEST_CASE("schur special values through the tool") {
    auto r = run("schur --partition 3,1");
    REQUIRE(r.code == 0);
    CHECK(json_of(r)["value"] == "1/8");
    auto skew = run("schur --partition 2,1 --skew 1 --point tinfty");
    REQUIRE(skew.code == 0);
    CHECK(json_of(skew)["value"] == "1");
    auto ps = run("schur --partition 2,1 --point powersums --x 1/2,1/3");
    REQUIRE(ps.code == 0);
    CHECK(json_of(ps)["value"] == "5/36");
    auto ta = run("schur --partition 2 --point ta1 --a 3");
    REQUIRE(ta.code == 0);
    CHECK(json_of(ta)["value"] == "6");
    auto q = run("schur --partition 3,1 --point tinfq --q 0.37");
    REQUIRE(q.code == 0);
    CHECK(json_of(q)["value"].is_number());
}

TEST_CASE("gv determinants with the enumeration cross-check") {
    auto r = run("gv --top 3,1 --bottom 2,0");
    REQUIRE(r.code == 0);
    auto j = json_of(r);
    CHECK(j["determinant"] == "3");
    CHECK(j["agree"] == true);
    auto big = run("gv --top 30,20 --bottom 10,5");
    REQUIRE(big.code == 0);
    CHECK(json_of(big)["path_count"].is_null());
}

TEST_CASE("vicious chain weights through the tool") {
    auto r = run("vicious --walkers 2 --steps 1 --start 2,0 --end 3,1");
    REQUIRE(r.code == 0);
    auto j = json_of(r);
    CHECK(j["weight"].get<double>() == doctest::Approx(1.0));
    CHECK(j["weight_exact"] == "1");
    CHECK(j["W_plus"].get<double>() == doctest::Approx(1.0));
    CHECK(j["W_minus"].get<double>() == doctest::Approx(0.0));

    auto back = run("vicious --walkers 1 --steps 2 --start 2 --end 2");
    REQUIRE(back.code == 0);
    CHECK(json_of(back)["weight"].get<double>() == doctest::Approx(2.0));

    auto crossed = run("vicious --walkers 2 --steps 1 --start 1,0 --end 1,0");
    REQUIRE(crossed.code == 0);
    CHECK(json_of(crossed)["weight"].get<double>() == doctest::Approx(-1.0));

    CHECK(run("vicious --walkers 2 --steps 1 --start 2 --end 3,1").code == 2);
    CHECK(run("vicious --walkers 2 --steps 1 --start 2,0 --end 3,1 --window 2").code == 2);

    auto ring = run("vicious --walkers 1 --steps 2 --start 0 --end 0 --ring 3");
    REQUIRE(ring.code == 0);
    // up-down, down-up, and both seam round trips
    CHECK(json_of(ring)["weight"].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("layering chains through the tool") {
    fs::path out = work_dir() / "lay.json";
    auto r = run("layering --word 1:0.5 --start \"\" --cap 6 --out " + out.string());
    REQUIRE(r.code == 0);
    auto j = tw::Json::parse(slurp(out));
    CHECK(j["spilled"].get<double>() > 0);
    for (const auto& row : j["states"]) {
        long k = 0;
        for (const auto& part : row["partition"]) {
            CHECK(part.get<long>() == 1);
            ++k;
        }
        CHECK(row["weight"].get<double>() == doctest::Approx(std::pow(0.5, k)).epsilon(1e-12));
    }
    CHECK(run("layering --word 1:0.5 --start \"\" --cap 6 --strict").code == 3);
    CHECK(run("layering --word 7:0.5 --start \"\" --cap 6").code == 2);
}

TEST_CASE("built-in check suites pass") {
    CHECK(run("check --suite appendix").code == 0);
    CHECK(run("check --suite closed-form").code == 0);
    CHECK(run("check --suite ensemble").code == 0);
    CHECK(run("check --suite commutator").code == 0);
}
