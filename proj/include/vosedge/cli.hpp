#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "vosedge/metrics.hpp"
#include "vosedge/pipeline.hpp"

namespace vosedge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

struct DetectCommand {
    std::filesystem::path input;
    std::filesystem::path output;
    PipelineConfig config;
    std::optional<std::filesystem::path> schemes;
    std::optional<std::filesystem::path> response_out;
};

enum class Pattern { Step, Disk };

struct SynthCommand {
    Pattern pattern = Pattern::Step;
    std::size_t width = 64;
    std::size_t height = 64;
    std::size_t size = 64;
    std::size_t radius = 20;
    StepOrientation orientation = StepOrientation::Vertical;
    ColorPixel color_a{255, 0, 0};
    ColorPixel color_b{0, 0, 255};
    double noise = 0.0;
    std::uint64_t seed = 0;
    std::filesystem::path out;
    std::filesystem::path truth_out;
};

struct EvalCommand {
    std::filesystem::path detected;
    std::filesystem::path truth;
    bool fom = true;
    bool endpoints = true;
    bool components = true;
    double alpha = kPrattAlpha;
};

using Invocation = std::variant<DetectCommand, SynthCommand, EvalCommand>;

/// Bad command line. The message names the offending flag.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown by parse_args for --help; carries the rendered help text.
struct HelpRequested {
    std::string text;
};

/// argv without the program name.
Invocation parse_args(const std::vector<std::string>& args);

/// Returns kExitOk, kExitRuntime on I/O or decode failures. Results go to
/// out, diagnostics to err.
int run(const Invocation& inv, std::ostream& out, std::ostream& err);

/// parse_args + run, mapping UsageError to kExitUsage. Help requests exit 0.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vosedge::cli
