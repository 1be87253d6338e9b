#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <vvmf/cli.hpp>

using namespace vvmf;
namespace fs = std::filesystem;

namespace
{

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(const std::vector<std::string> &args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// A scratch directory removed at scope exit.
struct TempDir {
    fs::path path;
    TempDir()
    {
        static int counter = 0;
        path = fs::temp_directory_path() / ("vvmf_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir()
    {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string write(const std::string &name, const std::string &text) const
    {
        const fs::path p = path / name;
        std::ofstream(p) << text;
        return p.string();
    }
};

Json parse(const std::string &s)
{
    return Json::parse(s);
}

} // namespace

TEST_CASE("JSON values round-trip")
{
    const QuadNum z(frac(-3, 4), frac(5, 7), 13);
    CHECK(quad_from_json(to_json(z)) == z);
    CHECK(rat_from_json(to_json(frac(22, 7))) == frac(22, 7));
    CHECK(rat_from_json(Json(5)) == 5);
    CHECK(quad_from_json(Json("1/2")) == QuadNum(frac(1, 2)));
    CHECK_THROWS_AS(rat_from_json(Json(1.5)), ConfigError);
    CHECK_THROWS_AS(rat_from_json(Json("x/2")), ConfigError);

    MonomialMap m{{{1, 0}, QuadNum(frac(1, 2), BigRat(1), 2)}, {{0, 1}, QuadNum(3).in_field(2)}};
    CHECK(monomial_map_from_json(to_json(m)) == m);
    CHECK_THROWS_AS(monomial_map_from_json(Json::object()), ConfigError);

    const OffsetSeries s{frac(1, 3), QuadSeries(BigRat(0), {QuadNum(1), QuadNum::sqrt_of(2), QuadNum(0)})};
    const OffsetSeries back = offset_series_from_json(to_json(s));
    CHECK(back.base == s.base);
    CHECK(back.coeffs() == s.coeffs());
    CHECK_THROWS_AS(offset_series_from_json(Json{{"base", "0"}}), ConfigError);
}

TEST_CASE("instances from both JSON forms agree")
{
    const InstanceParams a = instance_from_json(parse(R"({"k0":0,"l1":"0","l2":"1/2","r":{"rat":"0","surd":"1","M":2}})"));
    const InstanceParams b = instance_from_json(parse(R"({"k0":0,"a":"-1/3","b":"2/3","c":"-2/3","M":2})"));
    CHECK(a.A == b.A);
    CHECK(a.B == b.B);
    CHECK(a.c == b.c);
    CHECK(to_json(a) == to_json(cli::seed_instance("m2")));
    CHECK_THROWS_AS(instance_from_json(parse(R"({"k0":0})")), ConfigError);
    CHECK_THROWS_AS(instance_from_json(parse(R"({"l1":"0","l2":"1/2"})")), ConfigError);
    CHECK_THROWS_AS(instance_from_json(parse(R"({"l1":"0","l2":"1","r":{"rat":"-1/4","surd":"1","M":2}})")),
                    ValidationError);
}

TEST_CASE("run configurations")
{
    const cli::RunConfig c1 = cli::parse_config(R"({"seed_instance":"m5","kmax":12,"method":"closed"})");
    CHECK(c1.instance.M == 5);
    CHECK(c1.kmax == 12);
    CHECK(c1.method == Method::Closed);
    const cli::RunConfig c2 =
        cli::parse_config(R"({"instance":{"l1":"0","l2":"1/2","r":{"surd":"1","M":3}},"factor_bound":1000})");
    CHECK(c2.instance.M == 3);
    CHECK(c2.factor_bound == 1000);
    CHECK(c2.kmax == 40);
    const cli::RunConfig c3 = cli::parse_config(R"({"l1":"0","l2":"1/2","r":{"surd":"1","M":2},"format":"table"})");
    CHECK(c3.format == "table");
    CHECK_THROWS_AS(cli::parse_config(R"({"seed_instance":"m7"})"), ConfigError);
    CHECK_THROWS_AS(cli::parse_config(R"({"seed_instance":"m2","kmax":0})"), ConfigError);
    CHECK_THROWS_AS(cli::parse_config(R"({"seed_instance":"m2","method":"fast"})"), ConfigError);
    CHECK_THROWS_AS(cli::parse_config("[1, 2]"), ConfigError);
    CHECK_THROWS_AS(cli::parse_config(R"({"seed_instance":)"), nlohmann::json::parse_error);
}

TEST_CASE("verify-identities and expand")
{
    const Result v = run_cli({"verify-identities", "--order", "30"});
    CHECK(v.code == cli::kOk);
    const Json j = parse(v.out);
    CHECK(j["ok"] == true);
    CHECK(j["checks"].size() > 5);

    const Result t = run_cli({"verify-identities", "--order", "30", "--format", "table"});
    CHECK(t.code == cli::kOk);
    CHECK(t.out.find("PASS") != std::string::npos);

    const Result k = run_cli({"expand", "--name", "K", "--order", "6"});
    CHECK(k.code == cli::kOk);
    const Json kj = parse(k.out);
    CHECK(kj["lead"] == "-1");
    CHECK(kj["coeffs"][1] == "40");
    CHECK(kj["coeffs"][6] == "184024");
    CHECK(run_cli({"expand", "--name", "nothing"}).code == cli::kUsage);
}

TEST_CASE("expansion cache directory")
{
    TempDir dir;
    ::setenv("GAMMA02_CACHE_DIR", dir.path.c_str(), 1);
    const Result first = run_cli({"expand", "--name", "E4", "--order", "10"});
    CHECK(first.code == cli::kOk);
    CHECK(fs::exists(dir.path / "E4_10.json"));
    // A cached file is served verbatim.
    dir.write("E4_10.json", "{\"cached\": true}\n");
    const Result second = run_cli({"expand", "--name", "E4", "--order", "10"});
    CHECK(second.out == "{\"cached\": true}\n");
    ::unsetenv("GAMMA02_CACHE_DIR");
    const Result third = run_cli({"expand", "--name", "E4", "--order", "10"});
    CHECK(third.out == first.out);
}

TEST_CASE("minform on the sqrt 2 instance")
{
    const Result r = run_cli({"minform", "--seed-instance", "m2", "--kmax", "10"});
    REQUIRE(r.code == cli::kOk);
    const Json j = parse(r.out);
    CHECK(j["coefficients"][1]["d"]["rat"] == "256");
    CHECK(j["coefficients"][2]["d"]["rat"] == "34816/3");
    CHECK(j["coefficients"][1]["d_tilde"]["rat"] == "260/3");
    CHECK(j["coefficients"][1]["t1"]["rat"] == "256");
    for (const auto &c : j["residual"]) {
        CHECK(c["passed"] == true);
    }
    // Deterministic output.
    CHECK(run_cli({"minform", "--seed-instance", "m2", "--kmax", "10"}).out == r.out);
    // All methods agree.
    CHECK(run_cli({"minform", "--seed-instance", "m2", "--kmax", "10", "--method", "closed"}).out == r.out);
    CHECK(run_cli({"minform", "--seed-instance", "m2", "--kmax", "10", "--method", "frobenius"}).out == r.out);
}

TEST_CASE("minform reads config files and writes output files")
{
    TempDir dir;
    const std::string cfg = dir.write("c.json", R"({"instance":{"k0":2,"l1":"0","l2":"1/2","r":{"rat":"-1/4","surd":"1","M":2}},"kmax":8})");
    // l1 + l2 + 2 Re r = 0 != 1/2
    CHECK(run_cli({"minform", "--config", cfg}).code == cli::kInvalid);
    const std::string good = dir.write("g.json", R"({"instance":{"k0":2,"l1":"0","l2":"1/2","r":{"rat":"0","surd":"1","M":2}},"kmax":8})");
    const std::string out = (dir.path / "out.json").string();
    const Result r = run_cli({"minform", "--config", good, "-o", out});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.empty());
    std::ifstream f(out);
    const Json j = Json::parse(f);
    CHECK(j["params"]["k0"] == 2);
    CHECK(j["base1"] == "1/6");
}

TEST_CASE("denoms reports the expected passing primes")
{
    const Result r = run_cli({"denoms", "--seed-instance", "m2", "--kmax", "30"});
    REQUIRE(r.code == cli::kOk);
    const Json j = parse(r.out);
    CHECK(j["ok"] == true);
    const Json &passing = j["sections"][0]["passing"];
    for (const char *p : {"5", "11", "13", "19", "29"}) {
        CHECK(std::find(passing.begin(), passing.end(), Json(p)) != passing.end());
    }
    const Result t = run_cli({"denoms", "--seed-instance", "m2", "--kmax", "20", "--format", "table"});
    CHECK(t.out.find("all audited rows pass") != std::string::npos);

    TempDir dir;
    const std::string comb = dir.write("comb.json", R"({"k":4,"m1":[{"G":0,"E4":1,"coeff":"1"}],"m2":[{"G":1,"E4":0,"coeff":"2"}]})");
    const Result c = run_cli({"denoms", "--seed-instance", "m2", "--kmax", "30", "--combination", comb});
    CHECK(c.code == cli::kOk);
    CHECK(parse(c.out)["combination"]["ok"] == true);
}

TEST_CASE("decompose through coefficient maps and explicit series")
{
    TempDir dir;
    const std::string in = dir.write("z.json", R"({"k":6,"m1":[{"G":3,"E4":0,"coeff":"1"},{"G":1,"E4":1,"coeff":"-2/3"}],"m2":[{"G":0,"E4":1,"coeff":"5"}]})");
    const Result r = run_cli({"decompose", "--seed-instance", "m2", "--kmax", "20", "--input", in});
    REQUIRE(r.code == cli::kOk);
    const Json j = parse(r.out);
    bool found = false;
    for (const auto &e : j["m1"]) {
        if (e["G"] == 1 && e["E4"] == 1) {
            CHECK(e["coeff"]["rat"] == "-2/3");
            found = true;
        }
    }
    CHECK(found);

    // Feed back the components of F' itself.
    const Result mf = run_cli({"minform", "--seed-instance", "m2", "--kmax", "20"});
    const Json mj = parse(mf.out);
    Json z1 = Json::array(), z2 = Json::array();
    for (const auto &row : mj["coefficients"]) {
        z1.push_back(row["d"]);
        z2.push_back(row["d_tilde"]);
    }
    const Json spec{{"k", 0}, {"Z1", {{"base", mj["base1"]}, {"coeffs", z1}}}, {"Z2", {{"base", mj["base2"]}, {"coeffs", z2}}}};
    const std::string f = dir.write("f.json", spec.dump());
    const Result d = run_cli({"decompose", "--seed-instance", "m2", "--kmax", "20", "--input", f});
    REQUIRE(d.code == cli::kOk);
    CHECK(parse(d.out)["m1"][0]["coeff"]["rat"] == "1");

    // Perturbed Z is not in the module.
    Json bad = spec;
    bad["Z1"]["coeffs"][15] = Json{{"rat", "1/7"}, {"surd", "0"}, {"M", 2}};
    const std::string fb = dir.write("bad.json", bad.dump());
    CHECK(run_cli({"decompose", "--seed-instance", "m2", "--kmax", "20", "--input", fb}).code == cli::kInvalid);
}

TEST_CASE("probe verdicts and preconditions")
{
    const Result r = run_cli({"probe", "--x-rat", "0", "--x-surd", "1", "--M", "2", "--R", "0", "--p", "5", "--tmax", "20"});
    CHECK(r.code == cli::kOk);
    CHECK(parse(r.out)["status"] == "coprime");
    CHECK(run_cli({"probe", "--x-rat", "0", "--x-surd", "1", "--M", "2", "--R", "0", "--p", "7"}).code == cli::kInvalid);
    CHECK(run_cli({"probe", "--x-rat", "0", "--x-surd", "q", "--M", "2", "--p", "5"}).code == cli::kInvalid);
}

TEST_CASE("exit codes for bad invocations")
{
    TempDir dir;
    CHECK(run_cli({}).code == cli::kUsage);
    CHECK(run_cli({"frobnicate"}).code == cli::kUsage);
    CHECK(run_cli({"minform"}).code == cli::kUsage);
    CHECK(run_cli({"minform", "--seed-instance", "m2", "--kmax", "abc"}).code == cli::kUsage);
    CHECK(run_cli({"minform", "--config", (dir.path / "missing.json").string()}).code == cli::kUsage);
    const std::string trunc = dir.write("t.json", R"({"seed_instance": "m2", )");
    CHECK(run_cli({"minform", "--config", trunc}).code == cli::kUsage);
    const std::string same = dir.write("s.json", R"({"instance":{"l1":"1/4","l2":"1/4","r":{"surd":"1","M":2}}})");
    const Result r = run_cli({"minform", "--config", same});
    CHECK(r.code == cli::kInvalid);
    CHECK(r.err.find("l1 - l2 not in Z") != std::string::npos);
    CHECK(run_cli({"--help"}).code == cli::kOk);
}
