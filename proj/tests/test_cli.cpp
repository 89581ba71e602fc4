#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nqp/cli.hpp"
#include "nqp/generate.hpp"
#include "nqp/instance_io.hpp"

using namespace nqp;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "nqp");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text)
{
    const auto path = std::filesystem::temp_directory_path() / ("nqp_test_" + name);
    std::ofstream(path) << text;
    return path.string();
}

const std::string ubqp_text = "NQP 1\nDOMAIN int\nPSD declared\nN 1\nS 2 : 0 1\nQ\n2\nC\n-3\n";

}  // namespace

TEST_CASE("validate", "[cli]")
{
    const auto good = temp_file("good", ubqp_text);
    auto r = run({"validate", good});
    CHECK(r.code == 0);
    CHECK(r.out == "VALID yes\n");

    const auto bad = temp_file("bad", "NQP 1\nDOMAIN int\nPSD declared\nN 1\nS 2 : 0 1\nQ\n-1\nC\n0\n");
    r = run({"validate", bad});
    CHECK(r.code == cli::invalid_input);
    CHECK(r.out.find("VALID no") != std::string::npos);

    const auto broken = temp_file("broken", "NQP 1\nDOMAIN int\n");
    r = run({"validate", broken});
    CHECK(r.code == cli::invalid_input);
    CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("solve", "[cli]")
{
    const auto file = temp_file("solve", "NQP 1\nDOMAIN int\nPSD declared\nN 2\nS 2 : 0 1\nQ\n1 0\n0 1\nC\n-3 1\n");
    auto r = run({"solve", file, "--solver", "brute"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("OBJECTIVE -2\nASSIGNMENT 1 0\n", 0) == 0);
    CHECK(r.out.find("OPTIMAL proven") != std::string::npos);

    for (const char* solver : {"local", "anneal", "multi"}) {
        r = run({"solve", file, "--solver", solver, "--seed", "3"});
        CHECK(r.code == 0);
        CHECK(r.out.find("OBJECTIVE -2\n") != std::string::npos);
        CHECK(r.out.find("SEED 3") != std::string::npos);
    }

    const auto big = generate_random_instance(12, LevelSet({0, 1, 2}), 1, 2);
    const auto big_file = temp_file("big", serialize_instance(big));
    r = run({"solve", big_file, "--solver", "brute", "--budget", "1000"});
    CHECK(r.code == cli::budget_exceeded);

    r = run({"solve", file, "--solver", "nope"});
    CHECK(r.code == cli::invalid_input);
}

TEST_CASE("reduce and verify-reduction", "[cli]")
{
    const auto src = temp_file("ubqp", ubqp_text);
    const auto out = (std::filesystem::temp_directory_path() / "nqp_test_reduced").string();
    auto r = run({"reduce", src, "--set", "0,1,2", "--out", out});
    CHECK(r.code == 0);
    CHECK(r.out.find("M 10\n") != std::string::npos);
    const auto reduced = std::get<IntInstance>(read_instance_file(out));
    CHECK(reduced.q == std::vector<Int>{12});
    CHECK(reduced.c == std::vector<Int>{-13});

    r = run({"verify-reduction", src, "--set", "0,1,2", "--exhaustive"});
    CHECK(r.code == 0);
    CHECK(r.out.find("SOUNDNESS ok") != std::string::npos);
    CHECK(r.out.find("SEPARATION ok") != std::string::npos);

    r = run({"reduce", src, "--set", "2,1"});
    CHECK(r.code == cli::invalid_input);

    const auto real = temp_file("real", "NQP 1\nDOMAIN real\nPSD declared\nN 1\nS 2 : 0 1\nQ\n2\nC\n-3\n");
    CHECK(run({"reduce", real, "--set", "0,1,2"}).code == cli::invalid_input);

    const auto big = generate_random_instance(14, LevelSet({0, 1}), 1, 2);
    const auto big_file = temp_file("bigubqp", serialize_instance(big));
    CHECK(run({"verify-reduction", big_file, "--set", "0,1,2", "--budget", "10000"}).code == cli::budget_exceeded);
}

TEST_CASE("rc-demo and bench", "[cli]")
{
    auto r = run({"rc-demo", "--neurons", "12", "--length", "200", "--washout", "20", "--seed", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("NMSE continuous ") != std::string::npos);
    CHECK(r.out.find("NMSE discrete ") != std::string::npos);
    CHECK(r.out.find("GAP ") != std::string::npos);

    r = run({"rc-demo", "--neurons", "10", "--length", "200", "--task", "sine", "--solver", "anneal"});
    CHECK(r.code == 0);
    CHECK(run({"rc-demo", "--task", "square"}).code == cli::invalid_input);

    r = run({"bench", "--dims", "2,3", "--levels", "2,3", "--trials", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("BENCH   3   3   3       3") != std::string::npos);
}

TEST_CASE("the installed binary runs", "[cli]")
{
    const auto file = temp_file("bin", ubqp_text);
    const std::string command = std::string(NQP_CLI_PATH) + " solve " + file + " --solver brute";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe);
    std::string output;
    std::array<char, 256> buf{};
    while (fgets(buf.data(), buf.size(), pipe)) output += buf.data();
    CHECK(pclose(pipe) == 0);
    CHECK(output.rfind("OBJECTIVE -1\nASSIGNMENT 1\n", 0) == 0);
}
