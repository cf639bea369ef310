#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <sstream>

#include "test_support.hpp"
#include "vosedge/cli.hpp"
#include "vosedge/imageio.hpp"

using namespace vosedge;
using testing::TempDir;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::main(args, out, err);
    return {code, out.str(), err.str()};
}

std::string usage_error(const std::vector<std::string>& args) {
    try {
        cli::parse_args(args);
    } catch (const cli::UsageError& e) {
        return e.what();
    }
    FAIL("expected a usage error");
    return {};
}

int shell(const std::string& cmd) {
    const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("detect defaults") {
    const auto inv = cli::parse_args({"detect", "--input", "a.png", "--output", "e.png"});
    const auto& d = std::get<cli::DetectCommand>(inv);
    CHECK(d.input == "a.png");
    CHECK(d.output == "e.png");
    CHECK(d.config.op == Operator::MVR);
    CHECK(d.config.k == 3);
    CHECK(std::holds_alternative<OtsuThreshold>(d.config.threshold));
    CHECK(d.config.nms);
    CHECK(d.config.border == BorderPolicy::Replicate);
    CHECK_FALSE(d.schemes);
    CHECK_FALSE(d.response_out);
}

TEST_CASE("detect options") {
    const auto inv = cli::parse_args({"detect", "--input", "a.ppm", "--output", "e.pgm", "--operator", "vd", "--k",
                                      "5", "--threshold", "12.5", "--no-nms", "--border", "reflect", "--schemes",
                                      "s.txt", "--response-out", "r.csv"});
    const auto& d = std::get<cli::DetectCommand>(inv);
    CHECK(d.config.op == Operator::VD);
    CHECK(d.config.k == 5);
    CHECK(std::get<FixedThreshold>(d.config.threshold).value == 12.5);
    CHECK_FALSE(d.config.nms);
    CHECK(d.config.border == BorderPolicy::Reflect);
    CHECK(*d.schemes == "s.txt");
    CHECK(*d.response_out == "r.csv");

    const auto p = std::get<cli::DetectCommand>(
        cli::parse_args({"detect", "--input", "a", "--output", "b", "--percentile", "90"}));
    CHECK(std::get<PercentileThreshold>(p.config.threshold).percentile == 90.0);
}

TEST_CASE("usage errors name the flag") {
    const std::vector<std::string> base{"detect", "--input", "a.png", "--output", "e.png"};
    auto with = [&](std::vector<std::string> extra) {
        auto args = base;
        args.insert(args.end(), extra.begin(), extra.end());
        return args;
    };
    CHECK(usage_error(with({"--k", "0"})).find("--k") != std::string::npos);
    CHECK(usage_error(with({"--k", "9"})).find("--k") != std::string::npos);
    CHECK(usage_error(with({"--operator", "sobel"})).find("--operator") != std::string::npos);
    CHECK(usage_error(with({"--threshold", "500"})).find("--threshold") != std::string::npos);
    CHECK(usage_error(with({"--percentile", "100"})).find("--percentile") != std::string::npos);
    CHECK(usage_error(with({"--bogus"})).find("--bogus") != std::string::npos);
    CHECK(usage_error(with({"--threshold", "5", "--otsu"})).find("--") != std::string::npos);
    CHECK(usage_error({"detect", "--input", "a"}).find("--output") != std::string::npos);
    usage_error({});
    usage_error({"frobnicate"});
    CHECK(usage_error({"synth", "--pattern", "disk", "--size", "20", "--radius", "9", "--out", "a.png",
                                   "--truth-out", "t.png"}).find("--radius") != std::string::npos);
    CHECK(usage_error({"synth", "--pattern", "step", "--color-a", "1,2", "--out", "a.png", "--truth-out",
                                   "t.png"}).find("--color-a") != std::string::npos);
    CHECK(invoke(with({"--k", "0"})).code == cli::kExitUsage);
}

TEST_CASE("eval metric selection") {
    const auto all = std::get<cli::EvalCommand>(
        cli::parse_args({"eval", "--detected", "d.png", "--truth", "t.png", "--metric", "all"}));
    CHECK(all.fom);
    CHECK(all.endpoints);
    CHECK(all.components);
    const auto one = std::get<cli::EvalCommand>(
        cli::parse_args({"eval", "--detected", "d.png", "--truth", "t.png", "--metric", "endpoints"}));
    CHECK_FALSE(one.fom);
    CHECK(one.endpoints);
    CHECK_FALSE(one.components);
}

TEST_CASE("detect on a uniform image") {
    TempDir dir;
    save_image(RgbImage(16, 16, ColorPixel{50, 60, 70}), dir / "u.ppm");
    const auto r = invoke({"detect", "--input", (dir / "u.ppm").string(), "--output", (dir / "e.pgm").string(),
                           "--threshold", "10"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == "threshold=10.000000\n");
    CHECK(edge_count(load_edge_map(dir / "e.pgm")) == 0);
}

TEST_CASE("detect on a missing file") {
    TempDir dir;
    const auto missing = (dir / "nope.png").string();
    const auto r = invoke({"detect", "--input", missing, "--output", (dir / "e.png").string()});
    CHECK(r.code == cli::kExitRuntime);
    CHECK(r.err.find(missing) != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("synth, detect, eval") {
    TempDir dir;
    const auto img = (dir / "disk.png").string();
    const auto truth = (dir / "truth.png").string();
    auto r = invoke({"synth", "--pattern", "disk", "--size", "64", "--radius", "20", "--out", img, "--truth-out",
                     truth});
    REQUIRE(r.code == cli::kExitOk);

    r = invoke({"eval", "--detected", truth, "--truth", truth});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == "fom=1.000000\nendpoints=0.000000\ncomponents=1.000000\n");

    const auto edges = (dir / "edges.png").string();
    const auto resp = (dir / "resp.png").string();
    r = invoke({"detect", "--input", img, "--output", edges, "--response-out", resp});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.rfind("threshold=", 0) == 0);
    CHECK(std::filesystem::exists(resp));

    r = invoke({"eval", "--detected", edges, "--truth", truth, "--metric", "components"});
    CHECK(r.out == "components=1.000000\n");

    // Size mismatch is a runtime failure.
    invoke({"synth", "--pattern", "step", "--width", "32", "--out", (dir / "s.png").string(), "--truth-out",
            (dir / "st.png").string()});
    r = invoke({"eval", "--detected", (dir / "st.png").string(), "--truth", truth});
    CHECK(r.code == cli::kExitRuntime);
    CHECK(r.out.empty());
}

TEST_CASE("custom scheme file") {
    TempDir dir;
    const auto [img, truth] = generate_step_image(32, 32, {255, 0, 0}, {0, 0, 255}, StepOrientation::Vertical);
    save_image(img, dir / "s.ppm");
    testing::write_bytes(dir / "schemes.txt", "# left against right only\nN: a={0,3,6} b={2,5,8}\n");
    auto r = invoke({"detect", "--input", (dir / "s.ppm").string(), "--output", (dir / "e.pgm").string(),
                     "--schemes", (dir / "schemes.txt").string(), "--threshold", "100"});
    CHECK(r.code == cli::kExitOk);
    CHECK(load_edge_map(dir / "e.pgm") == truth.map);

    testing::write_bytes(dir / "bad.txt", "Q: a={0} b={1}\n");
    r = invoke({"detect", "--input", (dir / "s.ppm").string(), "--output", (dir / "e.pgm").string(), "--schemes",
                (dir / "bad.txt").string()});
    CHECK(r.code == cli::kExitRuntime);
    CHECK(r.err.find("line 1") != std::string::npos);
}

TEST_CASE("runs are byte-for-byte reproducible") {
    TempDir dir;
    for (int run = 0; run < 2; ++run) {
        const std::string tag = std::to_string(run);
        invoke({"synth", "--pattern", "disk", "--noise", "0.01", "--seed", "1234", "--out",
                (dir / ("n" + tag + ".png")).string(), "--truth-out", (dir / ("t" + tag + ".png")).string()});
        const auto r = invoke({"detect", "--input", (dir / ("n" + tag + ".png")).string(), "--output",
                               (dir / ("e" + tag + ".png")).string(), "--response-out",
                               (dir / ("r" + tag + ".csv")).string()});
        CHECK(r.code == 0);
    }
    for (const char* stem : {"n", "t", "e", "r"}) {
        const std::string ext = std::string(stem) == "r" ? ".csv" : ".png";
        CHECK(testing::read_bytes(dir / (stem + std::string("0") + ext)) ==
              testing::read_bytes(dir / (stem + std::string("1") + ext)));
    }
}

TEST_CASE("executable exit codes") {
    TempDir dir;
    const std::string exe = VOSEDGE_CLI_PATH;
    CHECK(shell(exe + " --help") == 0);
    CHECK(shell(exe + " detect --input x.png --output y.png --k 0") == 2);
    CHECK(shell(exe + " detect --input " + (dir / "missing.png").string() + " --output y.png") == 1);
    CHECK(shell(exe + " synth --pattern step --out " + (dir / "a.ppm").string() + " --truth-out " +
                (dir / "t.pgm").string()) == 0);
}
