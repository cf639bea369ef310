#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "vosedge/collection.hpp"
#include "vosedge/image.hpp"
#include "vosedge/vos.hpp"

namespace vosedge {

enum class BorderPolicy {
    Replicate,  // nearest edge pixel
    Reflect,    // mirror about the edge pixel, which is not repeated
    Zero,       // black
};

struct FixedThreshold {
    double value = 0.0;
};
struct OtsuThreshold {};
/// Threshold at the given percentile of the non-zero responses.
struct PercentileThreshold {
    double percentile = 90.0;
};
using ThresholdMode = std::variant<FixedThreshold, OtsuThreshold, PercentileThreshold>;

struct PipelineConfig {
    Operator op = Operator::MVR;
    int k = 3;
    ThresholdMode threshold = OtsuThreshold{};
    bool nms = true;
    BorderPolicy border = BorderPolicy::Replicate;

    /// Throws InvalidArgument for k outside [1, 8], a fixed threshold outside
    /// [0, kMaxDistance] or a percentile outside (0, 100).
    void validate() const;
};

std::string_view to_string(Operator op) noexcept;
std::string_view to_string(BorderPolicy border) noexcept;

/// 3x3 neighbourhood of (x, y), row-major, with out-of-image samples filled
/// according to the border policy.
WindowSample extract_window(const RgbImage& img, std::size_t x, std::size_t y, BorderPolicy border);

/// Per pixel: the configured operator on the reduced-ordered window, and the
/// best collection scheme. Rows are processed independently.
ResponseMap compute_response_map(const RgbImage& img, const PipelineConfig& cfg,
                                 std::span<const CollectionScheme> schemes);

/// Keeps a response iff it is >= both neighbours along its scheme's
/// suppression axis. Neighbours outside the image count as 0.
///
/// Plateaus: when the neighbour that follows in raster order along the axis
/// has the same response, shares the axis and is itself a local maximum, the
/// pixel yields to it, so a two-pixel-wide ridge thins to one pixel. Every
/// other tie is kept. The result is idempotent.
ResponseMap non_max_suppression(const ResponseMap& rm);

/// Otsu maximises between-class variance over a 512-bin histogram of
/// [0, kMaxDistance]. Percentile interpolates linearly between the sorted
/// non-zero responses and yields 0 when there are none.
double select_threshold(const ResponseMap& rm, const ThresholdMode& mode);

/// Edge iff response > t.
EdgeMap apply_threshold(const ResponseMap& rm, double t);

EdgeMap threshold(const ResponseMap& rm, const ThresholdMode& mode);

struct Detection {
    ResponseMap response;  // after NMS when enabled
    double threshold = 0.0;
    EdgeMap edges;
};

Detection run_detector(const RgbImage& img, const PipelineConfig& cfg,
                       std::span<const CollectionScheme> schemes);

EdgeMap detect_edges(const RgbImage& img, const PipelineConfig& cfg,
                     std::span<const CollectionScheme> schemes);

/// Uses build_default_schemes().
EdgeMap detect_edges(const RgbImage& img, const PipelineConfig& cfg = {});

}  // namespace vosedge
