#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"

#include "beltrami/cli.hpp"

using namespace beltrami;
using namespace beltrami::cli;

namespace {

ParseResult parse_args(std::vector<const char*> args)
{
    args.insert(args.begin(), "beltrami");
    return parse(static_cast<int>(args.size()), args.data());
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

std::filesystem::path scratch(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / ("beltrami_cli_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

int run_binary(const std::string& args, const std::filesystem::path& log)
{
    const std::string cmd = std::string("\"") + BELTRAMI_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
#ifdef WEXITSTATUS
    return WEXITSTATUS(status);
#else
    return status;
#endif
}

} // namespace

TEST_CASE("solve flags", "[cli]")
{
    const auto r = parse_args({"solve", "--R", "2", "--ell", "5", "--n", "1000", "--k", "4", "--format", "json"});
    REQUIRE_FALSE(r.exit_now);
    CHECK(r.config.command == Command::solve);
    CHECK(r.config.radii == std::vector<double>{2.0});
    CHECK(r.config.ells == std::vector<int>{5});
    CHECK(r.config.n == 1000);
    CHECK(r.config.k == 4);
    CHECK(r.config.format == "json");
    CHECK_FALSE(r.config.u_max);
    CHECK(r.config.scenario(2.0, 5).u_max == 20.0);
}

TEST_CASE("flags after the subcommand and lists", "[cli]")
{
    const auto r = parse_args({"--mode", "split-half", "--n", "999", "sweep", "--R", "1,10,20", "--ell", "0,5"});
    REQUIRE_FALSE(r.exit_now);
    CHECK(r.config.command == Command::sweep);
    CHECK(r.config.mode == GridMode::split_half);
    CHECK(r.config.radii == std::vector<double>{1.0, 10.0, 20.0});
    CHECK(r.config.ells == std::vector<int>{0, 5});
}

TEST_CASE("usage errors name the offending key", "[cli]")
{
    auto r = parse_args({"solve", "--R", "-1"});
    REQUIRE(r.exit_now);
    CHECK(*r.exit_now == exit_code::usage);
    CHECK(r.message.find("R") != std::string::npos);

    r = parse_args({"solve", "--n", "65"});
    REQUIRE(r.exit_now);
    CHECK(r.message.find("n:") != std::string::npos);

    r = parse_args({"solve", "--R", "1,2"});
    REQUIRE(r.exit_now);
    CHECK(r.message.find("single radius") != std::string::npos);

    r = parse_args({"solve", "--mode", "odd"});
    REQUIRE(r.exit_now);
    CHECK(r.message.find("mode") != std::string::npos);

    r = parse_args({"reproduce", "fig9"});
    REQUIRE(r.exit_now);
    CHECK(*r.exit_now == exit_code::usage);

    r = parse_args({});
    REQUIRE(r.exit_now);
    CHECK(*r.exit_now == exit_code::usage);

    r = parse_args({"--help"});
    REQUIRE(r.exit_now);
    CHECK(*r.exit_now == exit_code::success);
    CHECK(r.message.find("reproduce") != std::string::npos);
}

TEST_CASE("config files", "[cli]")
{
    const auto dir = scratch("config");
    {
        std::ofstream f(dir / "good.ini");
        f << "R = 3\nell = 5\nn = 800\n";
    }
    {
        std::ofstream f(dir / "bad.ini");
        f << "R = 3\nradius = 4\n";
    }
    const std::string good = (dir / "good.ini").string();
    const std::string bad = (dir / "bad.ini").string();

    auto r = parse_args({"solve", "--config", good.c_str()});
    REQUIRE_FALSE(r.exit_now);
    CHECK(r.config.radii == std::vector<double>{3.0});
    CHECK(r.config.n == 800);

    // flags beat the file
    r = parse_args({"solve", "--config", good.c_str(), "--n", "1200"});
    REQUIRE_FALSE(r.exit_now);
    CHECK(r.config.n == 1200);

    r = parse_args({"solve", "--config", bad.c_str()});
    REQUIRE(r.exit_now);
    CHECK(*r.exit_now == exit_code::usage);
    CHECK(r.message.find("radius") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("reproduce parses its figure", "[cli]")
{
    const auto r = parse_args({"reproduce", "fig6"});
    REQUIRE_FALSE(r.exit_now);
    CHECK(r.config.command == Command::reproduce);
    CHECK(r.config.figure == "fig6");
}

TEST_CASE("echoed configuration", "[cli]")
{
    const auto r = parse_args({"solve", "--R", "2", "--ell", "3"});
    const auto kv = r.config.echo();
    REQUIRE(kv.size() == 11);
    CHECK(kv[0] == std::pair<std::string, std::string>{"command", "solve"});
    CHECK(kv[1] == std::pair<std::string, std::string>{"R", "2"});
    CHECK(kv[4] == std::pair<std::string, std::string>{"mass", "1"});
    CHECK(kv[5] == std::pair<std::string, std::string>{"umax", "20"});
}

TEST_CASE("in-process run writes spectra", "[cli]")
{
    const auto dir = scratch("run");
    const std::string out = dir.string();
    const auto r = parse_args({"solve", "--ell", "5", "--n", "800", "--k", "4", "--out", out.c_str()});
    REQUIRE_FALSE(r.exit_now);
    std::ostringstream o, e;
    CHECK(run(r.config, o, e) == exit_code::success);
    CHECK(std::filesystem::exists(dir / "R1_l5_spectrum.csv"));
    CHECK(std::filesystem::exists(dir / "R1_l5_state3.csv"));
    CHECK(o.str().find("4 bound") != std::string::npos);
    const std::string csv = slurp(dir / "R1_l5_spectrum.csv");
    CHECK(csv.rfind("# command = solve\n", 0) == 0);
    CHECK(csv.find("# n = 800\n") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("binary output is byte-identical across runs", "[cli]")
{
    const auto a = scratch("det_a");
    const auto b = scratch("det_b");
    for (const auto& d : {a, b}) {
        CHECK(run_binary("reproduce fig2 --out \"" + d.string() + "\"", d / "log.txt") == exit_code::success);
        CHECK(run_binary("solve --ell 5 --n 1000 --k 4 --out \"" + d.string() + "\"", d / "log2.txt")
              == exit_code::success);
    }
    std::size_t compared = 0;
    for (const auto& entry : std::filesystem::directory_iterator(a)) {
        const auto other = b / entry.path().filename();
        REQUIRE(std::filesystem::exists(other));
        if (entry.path().extension() == ".csv") {
            CHECK(slurp(entry.path()) == slurp(other));
            ++compared;
        }
    }
    CHECK(compared >= 8);
    std::filesystem::remove_all(a);
    std::filesystem::remove_all(b);
}

TEST_CASE("binary exit codes", "[cli]")
{
    const auto d = scratch("codes");
    CHECK(run_binary("validate --out \"" + d.string() + "\"", d / "v.txt") == exit_code::success);
    CHECK(slurp(d / "v.txt").find("validation passed") != std::string::npos);
    CHECK(std::filesystem::exists(d / "validation.csv"));
    CHECK(run_binary("solve --R 0", d / "u.txt") == exit_code::usage);
    CHECK(slurp(d / "u.txt").find("R") != std::string::npos);
    CHECK(run_binary("-h", d / "h.txt") == exit_code::success);
    // an unwritable output location is a runtime failure
    {
        std::ofstream blocker(d / "file");
        blocker << "x";
    }
    CHECK(run_binary("geometry --out \"" + (d / "file").string() + "\"", d / "w.txt") == exit_code::usage);
    std::filesystem::remove_all(d);
}
