#include "herzkit/builtins.hpp"
#include "herzkit/cli.hpp"
#include "herzkit/errors.hpp"
#include "herzkit/io.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <unistd.h>

using namespace herzkit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / ("herzkit_test_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

struct Run {
    int code = 0;
    std::string out;
    std::string err;
    Json report() const { return Json::parse(out); }
};

Run cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "herzkit");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = run_command_line(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

void write_text(const fs::path& p, const std::string& s)
{
    std::ofstream(p) << s;
}

std::string read_text(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("csv round trip")
{
    TempDir tmp;
    for (const Grid& g : {Grid({33}, {2.0}), Grid({9, 7}, {1.5, 3.0})}) {
        const auto f = SampledFunction::sample(g, [](std::span<const double> x) {
            double s = 0.1;
            for (double v : x)
                s += std::sin(3.1 * v) / 7.0;
            return s;
        });
        const auto p = tmp.path / "f.csv";
        write_text(p, to_csv(f));
        const auto back = read_csv(p);
        CHECK(back.grid() == g);
        for (std::size_t i = 0; i < g.size(); ++i)
            CHECK(back[i] == f[i]);
    }

    // Shuffled rows with a header line.
    write_text(tmp.path / "s.csv", "x,value\n0.5,3\n-0.5,1\n0,2\n");
    const auto s = read_csv(tmp.path / "s.csv");
    REQUIRE(s.size() == 3);
    CHECK(s[0] == 1.0);
    CHECK(s[1] == 2.0);
    CHECK(s[2] == 3.0);

    write_text(tmp.path / "gap.csv", "-1,0,1\n1,0,1\n-1,1,2\n");
    CHECK_THROWS_AS(read_csv(tmp.path / "gap.csv"), Error);
    write_text(tmp.path / "bad.csv", "0,abc\n");
    CHECK_THROWS_AS(read_csv(tmp.path / "bad.csv"), Error);
    try {
        read_csv(tmp.path / "missing.csv");
        FAIL("expected io error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::io);
    }
}

TEST_CASE("json round trip")
{
    TempDir tmp;
    const Grid g({17, 5}, {2.0, 0.5});
    const auto f = builtin_function("gauss", g, {{"sigma", 0.3}}).with_label("g");
    const auto j = to_json(f);
    const auto back = function_from_json(Json::parse(j.dump()));
    CHECK(back.grid() == g);
    CHECK(back.label() == "g");
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(back[i] == f[i]);

    write_atomic(tmp.path / "w.json", Json{{"function", j}}.dump());
    CHECK(read_function(tmp.path / "w.json")[3] == f[3]);
    for (const auto& e : fs::directory_iterator(tmp.path))
        CHECK(e.path().extension() != ".tmp");

    CHECK(number_json(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(number_json(0.1).get<double>() == 0.1);

    auto broken = j;
    broken["values"].erase(0);
    CHECK_THROWS_AS(function_from_json(broken), Error);
    CHECK_THROWS_AS(read_function(tmp.path / "x.txt"), Error);
}

TEST_CASE("cli reports and exit codes")
{
    TempDir tmp;
    const auto norm = cli({"norm", "--builtin", "gauss", "--q", "2", "--grid", "129", "--L", "6"});
    CHECK(norm.code == exit_ok);
    // ||e^{-x^2/2}||_2 = pi^{1/4}
    CHECK(std::stod(norm.out) == doctest::Approx(std::pow(std::numbers::pi, 0.25)).epsilon(1e-8));

    const auto herz = cli({"herz", "--builtin", "gauss", "--alpha", "0.5", "--p", "1", "--q", "2", "--grid", "257"});
    CHECK(herz.code == exit_ok);
    const auto hr = herz.report();
    CHECK(hr.at("schema") == 1);
    CHECK(hr.contains("truncation"));

    const auto strict = cli({"herz", "--builtin", "gauss", "--bparam", "sigma=3", "--alpha", "0.5", "--q", "2",
                             "--kmax", "0", "--strict"});
    CHECK(strict.code == exit_truncation);

    const auto unknown = cli({"frobnicate"});
    CHECK(unknown.code != exit_ok);
    const auto badgrid = cli({"norm", "--builtin", "gauss", "--q", "2", "--grid", "12x"});
    CHECK(badgrid.code == exit_parse);
    const auto missing = cli({"norm", "--input", (tmp.path / "nope.csv").string(), "--q", "2"});
    CHECK(missing.code == exit_parse);
    const auto mj = Json::parse(missing.err.empty() ? missing.out : missing.err);
    CHECK(mj.at("error").at("category") == "io");
    const auto domain = cli({"herz", "--builtin", "gauss", "--p", "-1", "--q", "2"});
    CHECK(domain.code == exit_precondition);
    const auto twice = cli({"norm", "--builtin", "gauss", "--input", "f.csv", "--q", "2"});
    CHECK(twice.code == exit_parse);

    write_text(tmp.path / "job.ini", "builtin=gauss\nq=2\ngrid=129\nL=6\n");
    const auto conf = cli({"norm", "--config", (tmp.path / "job.ini").string()});
    CHECK(conf.code == exit_ok);
    CHECK(conf.out == norm.out);
    const auto over = cli({"norm", "--config", (tmp.path / "job.ini").string(), "--q", "1"});
    CHECK(std::stod(over.out) == doctest::Approx(std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-8));
}

TEST_CASE("decompose and synthesize through files")
{
    TempDir tmp;
    for (const std::string kind : {"block", "atomic"}) {
        const auto report = (tmp.path / (kind + ".json")).string();
        const auto dec = cli({"decompose", "--kind", kind, "--builtin", "mexhat", "--grid", "257", "--L", "8",
                              "--alpha", "0.75", "--p", "1", "--q", "2", "--kmin", "-4", "--kmax", "3", "--output", report});
        REQUIRE(dec.code == exit_ok);
        const auto dj = Json::parse(read_text(report));
        CHECK(dj.at("residual_report").at("max_abs").get<double>() <= 1e-12);
        const auto values = (tmp.path / (kind + "_sum.json")).string();
        const auto syn = cli({"synthesize", "--input", report, "--values", values});
        REQUIRE(syn.code == exit_ok);
        const auto sj = syn.report();
        CHECK(sj.at("residual_report").at("max_abs").get<double>() <= 1e-12);
        const auto source = builtin_function("mexhat", Grid({257}, {8.0}));
        const auto sum = read_function(values);
        CHECK((sum - source).max_abs() <= 1e-12);
    }

    // A zero input gives an empty block list and a zero synthesis.
    const Grid g({65}, {4.0});
    write_text(tmp.path / "zero.json", to_json(SampledFunction::zeros(g)).dump());
    const auto zr = (tmp.path / "zero_dec.json").string();
    const auto z = cli({"decompose", "--input", (tmp.path / "zero.json").string(), "--q", "2", "--alpha", "0.5",
                        "--output", zr});
    REQUIRE(z.code == exit_ok);
    CHECK(Json::parse(read_text(zr)).at("blocks").empty());
    const auto zs = cli({"synthesize", "--input", zr, "--values", (tmp.path / "zero_sum.json").string()});
    CHECK(zs.code == exit_ok);
    CHECK(read_function(tmp.path / "zero_sum.json").is_zero());

    write_text(tmp.path / "junk.json", "{\"kind\": 3}");
    CHECK(cli({"synthesize", "--input", (tmp.path / "junk.json").string()}).code == exit_parse);
}

TEST_CASE("batteries are deterministic in the seed")
{
    const std::vector<std::string> args{"atoms", "--grid", "513", "--L", "8", "--alpha", "0.75", "--q", "2",
                                        "--count", "4", "--ks", "-1,0,1", "--seed", "77"};
    const auto a = cli(args);
    const auto b = cli(args);
    CHECK(a.code == exit_ok);
    CHECK(a.out == b.out);
    auto other = args;
    other.back() = "78";
    CHECK(cli(other).out != a.out);
}

TEST_CASE("installed binary")
{
    const std::string bin = HERZKIT_CLI_PATH;
    auto status = [&](const std::string& args) {
        const int s = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    CHECK(status("norm --builtin gauss --q 2 --grid 65 --L 4") == 0);
    CHECK(status("norm --builtin nosuch --q 2") == exit_parse);
    CHECK(status("verify --suite quasinorm --count 200") == 0);
}
