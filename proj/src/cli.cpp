#include "vosedge/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <ostream>

#include "vosedge/error.hpp"
#include "vosedge/imageio.hpp"

namespace vosedge::cli {

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

ColorPixel parse_color(const std::string& text, const std::string& flag) {
    ColorPixel c;
    double* channels[3] = {&c.r, &c.g, &c.b};
    std::string_view rest = text;
    for (int i = 0; i < 3; ++i) {
        const auto comma = rest.find(',');
        if ((i < 2) == (comma == std::string_view::npos)) {
            throw UsageError(flag + ": expected R,G,B, got '" + text + "'");
        }
        const std::string_view tok = rest.substr(0, comma);
        int v = -1;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || v < 0 || v > 255) {
            throw UsageError(flag + ": channel '" + std::string(tok) + "' is not an integer in [0, 255]");
        }
        *channels[i] = v;
        if (comma != std::string_view::npos) rest.remove_prefix(comma + 1);
    }
    return c;
}

const std::map<std::string, Operator> kOperators{
    {"vr", Operator::VR}, {"mvr", Operator::MVR}, {"vd", Operator::VD}, {"mvd", Operator::MVD}};
const std::map<std::string, BorderPolicy> kBorders{
    {"replicate", BorderPolicy::Replicate}, {"reflect", BorderPolicy::Reflect}, {"zero", BorderPolicy::Zero}};
const std::map<std::string, StepOrientation> kOrientations{{"vertical", StepOrientation::Vertical},
                                                           {"horizontal", StepOrientation::Horizontal},
                                                           {"diagonal", StepOrientation::Diagonal}};

int run_detect(const DetectCommand& cmd, std::ostream& out) {
    const RgbImage img = load_image(cmd.input);
    const auto schemes = cmd.schemes ? load_schemes(*cmd.schemes) : build_default_schemes();
    const Detection det = run_detector(img, cmd.config, schemes);
    save_edge_map(det.edges, cmd.output);
    if (cmd.response_out) save_response_map(det.response, *cmd.response_out);
    out << "threshold=" << fixed6(det.threshold) << '\n';
    return kExitOk;
}

int run_synth(const SynthCommand& cmd) {
    auto [img, truth] = cmd.pattern == Pattern::Step
                            ? generate_step_image(cmd.width, cmd.height, cmd.color_a, cmd.color_b, cmd.orientation)
                            : generate_disk_image(cmd.size, cmd.radius, cmd.color_a, cmd.color_b);
    if (cmd.noise > 0.0) add_salt_and_pepper(img, cmd.noise, cmd.seed);
    save_image(img, cmd.out);
    save_edge_map(truth.map, cmd.truth_out);
    return kExitOk;
}

int run_eval(const EvalCommand& cmd, std::ostream& out) {
    const EdgeMap detected = load_edge_map(cmd.detected);
    const GroundTruth truth{load_edge_map(cmd.truth), cmd.truth.string()};
    if (!detected.same_shape(truth.map)) {
        throw InvalidArgument("--detected and --truth images differ in size");
    }
    // Compute everything before printing so a failure leaves stdout empty.
    std::string text;
    if (cmd.fom) text += "fom=" + fixed6(pratt_fom(detected, truth, cmd.alpha)) + "\n";
    if (cmd.endpoints) text += "endpoints=" + fixed6(double(endpoint_count(detected))) + "\n";
    if (cmd.components) text += "components=" + fixed6(double(connected_components(detected))) + "\n";
    out << text;
    return kExitOk;
}

Invocation parse_impl(const std::vector<std::string>& args) {
    CLI::App app{"Colour edge detection with vector order statistics", "vosedge"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    // detect
    DetectCommand detect;
    std::string op_name = "mvr";
    std::string border_name = "replicate";
    std::optional<double> fixed;
    std::optional<double> percentile;
    bool otsu = false;
    bool no_nms = false;
    std::string schemes_path;
    std::string response_path;
    std::string detect_in;
    std::string detect_out;
    auto* d = app.add_subcommand("detect", "Detect edges in an RGB image");
    d->add_option("--input", detect_in, "Input image (PNG or PPM)")->required();
    d->add_option("--output", detect_out, "Edge map (PNG or PGM)")->required();
    d->add_option("--operator", op_name, "vr, mvr, vd or mvd")
        ->check(CLI::IsMember({"vr", "mvr", "vd", "mvd"}));
    d->add_option("--k", detect.config.k, "Outliers rejected + 1 (mvr/mvd)")->check(CLI::Range(1, 8));
    auto* t_opt = d->add_option("--threshold", fixed, "Fixed threshold in [0, 441.673]")
                      ->check(CLI::Range(0.0, kMaxDistance));
    auto* o_opt = d->add_flag("--otsu", otsu, "Otsu threshold (default)");
    auto* p_opt = d->add_option("--percentile", percentile, "Percentile of non-zero responses, in (0, 100)");
    t_opt->excludes(o_opt)->excludes(p_opt);
    o_opt->excludes(p_opt);
    d->add_flag("--no-nms", no_nms, "Skip non-maximum suppression");
    d->add_option("--border", border_name, "replicate, reflect or zero")
        ->check(CLI::IsMember({"replicate", "reflect", "zero"}));
    d->add_option("--schemes", schemes_path, "Collection scheme file");
    d->add_option("--response-out", response_path, "Write the response map (PNG, PGM or CSV)");

    // synth
    SynthCommand synth;
    std::string pattern = "step";
    std::string orientation = "vertical";
    std::string color_a = "255,0,0";
    std::string color_b = "0,0,255";
    std::string synth_out;
    std::string truth_out;
    auto* s = app.add_subcommand("synth", "Generate a synthetic test image and its ground truth");
    s->add_option("--pattern", pattern, "step or disk")->required()->check(CLI::IsMember({"step", "disk"}));
    s->add_option("--width", synth.width, "Step image width")->check(CLI::Range(8, 1 << 16));
    s->add_option("--height", synth.height, "Step image height")->check(CLI::Range(8, 1 << 16));
    s->add_option("--orientation", orientation, "vertical, horizontal or diagonal")
        ->check(CLI::IsMember({"vertical", "horizontal", "diagonal"}));
    s->add_option("--size", synth.size, "Disk image side length")->check(CLI::Range(6, 1 << 16));
    s->add_option("--radius", synth.radius, "Disk radius")->check(CLI::Range(1, 1 << 15));
    s->add_option("--color-a", color_a, "Background / first half-plane colour R,G,B");
    s->add_option("--color-b", color_b, "Disk / second half-plane colour R,G,B");
    s->add_option("--noise", synth.noise, "Salt-and-pepper rate")->check(CLI::Range(0.0, 1.0));
    s->add_option("--seed", synth.seed, "Noise seed");
    s->add_option("--out", synth_out, "Image output (PNG or PPM)")->required();
    s->add_option("--truth-out", truth_out, "Ground-truth edge map (PNG or PGM)")->required();

    // eval
    EvalCommand eval;
    std::string metric = "all";
    std::string detected_path;
    std::string truth_path;
    auto* e = app.add_subcommand("eval", "Score an edge map against ground truth");
    e->add_option("--detected", detected_path, "Detected edge map")->required();
    e->add_option("--truth", truth_path, "Ground-truth edge map")->required();
    e->add_option("--metric", metric, "fom, endpoints, components or all")
        ->check(CLI::IsMember({"fom", "endpoints", "components", "all"}));
    e->add_option("--alpha", eval.alpha, "Pratt scaling constant")->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help()};
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& err) {
        throw UsageError(err.what());
    }

    if (d->parsed()) {
        detect.input = detect_in;
        detect.output = detect_out;
        detect.config.op = kOperators.at(op_name);
        detect.config.border = kBorders.at(border_name);
        detect.config.nms = !no_nms;
        if (fixed) detect.config.threshold = FixedThreshold{*fixed};
        if (percentile) {
            if (!(*percentile > 0.0 && *percentile < 100.0)) {
                throw UsageError("--percentile: value must lie in (0, 100)");
            }
            detect.config.threshold = PercentileThreshold{*percentile};
        }
        if (!schemes_path.empty()) detect.schemes = schemes_path;
        if (!response_path.empty()) detect.response_out = response_path;
        return detect;
    }
    if (s->parsed()) {
        synth.pattern = pattern == "step" ? Pattern::Step : Pattern::Disk;
        synth.orientation = kOrientations.at(orientation);
        synth.color_a = parse_color(color_a, "--color-a");
        synth.color_b = parse_color(color_b, "--color-b");
        synth.out = synth_out;
        synth.truth_out = truth_out;
        if (synth.pattern == Pattern::Disk && 2 * synth.radius + 4 > synth.size) {
            throw UsageError("--radius: " + std::to_string(synth.radius) + " too large for --size " +
                             std::to_string(synth.size) + " (need 2*radius+4 <= size)");
        }
        return synth;
    }
    eval.detected = detected_path;
    eval.truth = truth_path;
    const bool all = metric == "all";
    eval.fom = all || metric == "fom";
    eval.endpoints = all || metric == "endpoints";
    eval.components = all || metric == "components";
    return eval;
}

}  // namespace

Invocation parse_args(const std::vector<std::string>& args) {
    return parse_impl(args);
}

int run(const Invocation& inv, std::ostream& out, std::ostream& err) {
    try {
        if (const auto* d = std::get_if<DetectCommand>(&inv)) return run_detect(*d, out);
        if (const auto* s = std::get_if<SynthCommand>(&inv)) return run_synth(*s);
        return run_eval(std::get<EvalCommand>(inv), out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Invocation inv;
    try {
        inv = parse_args(args);
    } catch (const HelpRequested& help) {
        out << help.text;
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\nRun with --help for more information.\n";
        return kExitUsage;
    }
    return run(inv, out, err);
}

}  // namespace vosedge::cli
