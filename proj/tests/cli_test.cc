#include <rakit/cli.hh>

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using rakit::cli::run;

namespace
{
    struct Result
    {
        int code;
        std::string out, err;
    };

    auto invoke(std::vector<std::string> args) -> Result
    {
        std::ostringstream out, err;
        for (auto & a : args)
            if (a.ends_with(".ra") || a.ends_with(".net") || a.ends_with(".rep"))
                if (! a.starts_with("/"))
                    a = std::string{RAKIT_CORPUS_DIR} + "/" + a;
        auto code = run(args, out, err);
        return {code, out.str(), err.str()};
    }
}

TEST_CASE("cli verdicts and exit codes")
{
    CHECK(invoke({"validate", "point.ra"}).code == 0);
    CHECK(invoke({"validate", "leftlinear.ra"}).code == 0);
    CHECK(invoke({"solve", "point.ra", "cycle3.net"}).code == 1);
    CHECK(invoke({"solve", "point.ra", "chain3.net"}).code == 0);
    CHECK(invoke({"pc", "point.ra", "cycle3.net"}).code == 1);
    CHECK(invoke({"atomic", "b9.ra", "b9-n.net"}).code == 0);
    CHECK(invoke({"modelcheck", "b9.rep", "b9-n.net"}).code == 1);
    CHECK(invoke({"derive", "b9.rep"}).code == 0);
    CHECK(invoke({"amalgamation", "point.ra"}).code == 0);
    CHECK(invoke({"bounds", "point.ra"}).code == 0);
    CHECK(invoke({"grow", "point.ra", "--size", "6", "--seed", "3"}).code == 0);

    auto composed = invoke({"compose", "point.ra", "lt", "gt"});
    CHECK(composed.code == 0);
    CHECK(composed.out == "eq,lt,gt\n");

    auto atomic = invoke({"atomic", "point.ra", "cycle3.net"});
    CHECK(atomic.code == 1);
    CHECK(atomic.out.starts_with("NOT ATOMIC: triangle"));
}

TEST_CASE("cli usage and parse errors exit with 2")
{
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"validate", "/nonexistent/file.ra"}).code == 2);
    CHECK(invoke({"compose", "point.ra", "lt", "zz"}).code == 2);
    auto wrong = invoke({"solve", "b9.ra", "cycle3.net"});
    CHECK(wrong.code == 2);
    CHECK(wrong.err.starts_with("error: parse: "));
    CHECK(wrong.err.find('\n') == wrong.err.size() - 1);
}

TEST_CASE("cli amalgamation witness files")
{
    auto dir = std::filesystem::temp_directory_path() / "rakit-cli-witness";
    std::filesystem::remove_all(dir);
    auto r = invoke({"amalgamation", "leftlinear.ra", "--witness", "--witness-dir", dir.string()});
    CHECK(r.code == 1);
    CHECK(r.out.starts_with("NO\nedge (p,q) admits no atom:"));
    for (const char * role : {"base", "left", "right"})
        CHECK(std::filesystem::exists(dir / (std::string{"leftlinear-witness-"} + role + ".net")));
    std::filesystem::remove_all(dir);
}

TEST_CASE("cli budget exhaustion exits with 3")
{
    CHECK(invoke({"amalgamation", "leftlinear.ra", "--budget", "3"}).code == 3);
}

TEST_CASE("cli output is deterministic and machine mode agrees with text mode")
{
    for (auto args : std::vector<std::vector<std::string>>{{"solve", "point.ra", "chain3.net"}, {"amalgamation", "leftlinear.ra"},
             {"grow", "leftlinear.ra", "--size", "8", "--seed", "5"}, {"modelcheck", "b9.rep", "b9-n.net"}}) {
        auto first = invoke(args), second = invoke(args);
        CHECK(first.out == second.out);
        auto machine_args = args;
        machine_args.insert(machine_args.begin(), "--machine");
        auto m1 = invoke(machine_args), m2 = invoke(machine_args);
        CHECK(m1.out == m2.out);
        CHECK(m1.code == first.code);
        auto doc = nlohmann::json::parse(m1.out);
        if (doc["verdict"] != "OK")
            CHECK(first.out.starts_with(doc["verdict"].get<std::string>()));
        CHECK(doc["exit_code"] == first.code);
    }
    auto timed = nlohmann::json::parse(invoke({"--machine", "--timings", "validate", "point.ra"}).out);
    CHECK(timed["timings"].contains("total_ms"));
}
