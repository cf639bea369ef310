#include "vosedge/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "vosedge/error.hpp"

namespace vosedge {

namespace {

constexpr std::size_t kOtsuBins = 512;

std::ptrdiff_t resolve_coord(std::ptrdiff_t v, std::ptrdiff_t n, BorderPolicy border) {
    if (v >= 0 && v < n) return v;
    if (border == BorderPolicy::Reflect) {
        v = v < 0 ? -v : 2 * (n - 1) - v;
    }
    return std::clamp<std::ptrdiff_t>(v, 0, n - 1);
}

struct Offset {
    int dx;
    int dy;
};

// {before, after}: "after" follows the pixel in raster order.
std::pair<Offset, Offset> axis_neighbors(Axis axis) {
    switch (axis) {
        case Axis::Vertical: return {{0, -1}, {0, 1}};
        case Axis::Horizontal: return {{-1, 0}, {1, 0}};
        case Axis::AntiDiagonal: return {{1, -1}, {-1, 1}};
        case Axis::MainDiagonal: return {{-1, -1}, {1, 1}};
    }
    return {{0, -1}, {0, 1}};
}

class SuppressionView {
public:
    explicit SuppressionView(const ResponseMap& rm)
        : rm_(rm), w_(static_cast<std::ptrdiff_t>(rm.width())), h_(static_cast<std::ptrdiff_t>(rm.height())) {}

    bool inside(std::ptrdiff_t x, std::ptrdiff_t y) const { return x >= 0 && y >= 0 && x < w_ && y < h_; }

    double response(std::ptrdiff_t x, std::ptrdiff_t y) const {
        return inside(x, y) ? rm_.response.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) : 0.0;
    }

    Axis axis(std::ptrdiff_t x, std::ptrdiff_t y) const {
        return suppression_axis(rm_.direction.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)));
    }

    bool local_max(std::ptrdiff_t x, std::ptrdiff_t y) const {
        const auto [before, after] = axis_neighbors(axis(x, y));
        const double r = response(x, y);
        return r >= response(x + before.dx, y + before.dy) && r >= response(x + after.dx, y + after.dy);
    }

    bool keep(std::ptrdiff_t x, std::ptrdiff_t y) const {
        const double r = response(x, y);
        if (r <= 0.0 || !local_max(x, y)) return false;
        const Axis a = axis(x, y);
        const Offset after = axis_neighbors(a).second;
        const std::ptrdiff_t fx = x + after.dx;
        const std::ptrdiff_t fy = y + after.dy;
        const bool yields = inside(fx, fy) && response(fx, fy) == r && axis(fx, fy) == a && local_max(fx, fy);
        return !yields;
    }

private:
    const ResponseMap& rm_;
    std::ptrdiff_t w_;
    std::ptrdiff_t h_;
};

double otsu_threshold(const ResponseMap& rm) {
    const double bin_width = kMaxDistance / static_cast<double>(kOtsuBins);
    std::array<double, kOtsuBins> hist{};
    double max_response = 0.0;
    for (double r : rm.response.data()) {
        const auto bin = std::min(static_cast<std::size_t>(r / kMaxDistance * static_cast<double>(kOtsuBins)),
                                  kOtsuBins - 1);
        hist[bin] += 1.0;
        max_response = std::max(max_response, r);
    }

    double total = 0.0;
    double total_moment = 0.0;
    for (std::size_t i = 0; i < kOtsuBins; ++i) {
        total += hist[i];
        total_moment += hist[i] * (static_cast<double>(i) + 0.5) * bin_width;
    }

    double best_var = -1.0;
    std::size_t best_t = 0;
    double w0 = 0.0;
    double m0 = 0.0;
    for (std::size_t t = 1; t < kOtsuBins; ++t) {
        w0 += hist[t - 1];
        m0 += hist[t - 1] * (static_cast<double>(t - 1) + 0.5) * bin_width;
        const double w1 = total - w0;
        if (w0 == 0.0 || w1 == 0.0) continue;
        const double diff = m0 / w0 - (total_moment - m0) / w1;
        const double var = w0 * w1 * diff * diff;
        if (var > best_var) {
            best_var = var;
            best_t = t;
        }
    }
    // A single occupied bin cannot be split: nothing stands out.
    if (best_t == 0) return max_response;
    return static_cast<double>(best_t) * bin_width;
}

double percentile_threshold(const ResponseMap& rm, double p) {
    std::vector<double> nonzero;
    for (double r : rm.response.data()) {
        if (r > 0.0) nonzero.push_back(r);
    }
    if (nonzero.empty()) return 0.0;
    std::sort(nonzero.begin(), nonzero.end());
    const double rank = p / 100.0 * static_cast<double>(nonzero.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const std::size_t hi = std::min(lo + 1, nonzero.size() - 1);
    const double frac = rank - static_cast<double>(lo);
    return nonzero[lo] + frac * (nonzero[hi] - nonzero[lo]);
}

}  // namespace

void PipelineConfig::validate() const {
    validate_order(k);
    if (const auto* f = std::get_if<FixedThreshold>(&threshold)) {
        if (!(f->value >= 0.0 && f->value <= kMaxDistance)) {
            throw InvalidArgument("fixed threshold must lie in [0, " + std::to_string(kMaxDistance) + "]");
        }
    }
    if (const auto* p = std::get_if<PercentileThreshold>(&threshold)) {
        if (!(p->percentile > 0.0 && p->percentile < 100.0)) {
            throw InvalidArgument("percentile must lie in (0, 100)");
        }
    }
}

std::string_view to_string(Operator op) noexcept {
    switch (op) {
        case Operator::VR: return "vr";
        case Operator::MVR: return "mvr";
        case Operator::VD: return "vd";
        case Operator::MVD: return "mvd";
    }
    return "?";
}

std::string_view to_string(BorderPolicy border) noexcept {
    switch (border) {
        case BorderPolicy::Replicate: return "replicate";
        case BorderPolicy::Reflect: return "reflect";
        case BorderPolicy::Zero: return "zero";
    }
    return "?";
}

WindowSample extract_window(const RgbImage& img, std::size_t x, std::size_t y, BorderPolicy border) {
    if (x >= img.width() || y >= img.height()) {
        throw InvalidArgument("window centre (" + std::to_string(x) + ", " + std::to_string(y) +
                              ") outside the image");
    }
    const auto w = static_cast<std::ptrdiff_t>(img.width());
    const auto h = static_cast<std::ptrdiff_t>(img.height());
    WindowSample win;
    std::size_t i = 0;
    for (std::ptrdiff_t dy = -1; dy <= 1; ++dy) {
        for (std::ptrdiff_t dx = -1; dx <= 1; ++dx, ++i) {
            const std::ptrdiff_t sx = static_cast<std::ptrdiff_t>(x) + dx;
            const std::ptrdiff_t sy = static_cast<std::ptrdiff_t>(y) + dy;
            const bool outside = sx < 0 || sy < 0 || sx >= w || sy >= h;
            if (outside && border == BorderPolicy::Zero) {
                win[i] = ColorPixel{};
                continue;
            }
            win[i] = img.at(static_cast<std::size_t>(resolve_coord(sx, w, border)),
                            static_cast<std::size_t>(resolve_coord(sy, h, border)));
        }
    }
    return win;
}

ResponseMap compute_response_map(const RgbImage& img, const PipelineConfig& cfg,
                                 std::span<const CollectionScheme> schemes) {
    cfg.validate();
    validate_image(img);
    if (schemes.empty()) {
        throw InvalidArgument("at least one collection scheme is required");
    }
    ResponseMap rm(img.width(), img.height());
    for (std::size_t y = 0; y < img.height(); ++y) {
        for (std::size_t x = 0; x < img.width(); ++x) {
            const WindowSample win = extract_window(img, x, y, cfg.border);
            const OrderedWindow ow = reduced_order(win);
            rm.response.at(x, y) = apply_operator(cfg.op, ow, win, cfg.k);
            rm.direction.at(x, y) = best_direction(win, schemes).id;
        }
    }
    return rm;
}

ResponseMap non_max_suppression(const ResponseMap& rm) {
    ResponseMap out(rm.width(), rm.height());
    out.direction = rm.direction;
    const SuppressionView view(rm);
    for (std::size_t y = 0; y < rm.height(); ++y) {
        for (std::size_t x = 0; x < rm.width(); ++x) {
            if (view.keep(static_cast<std::ptrdiff_t>(x), static_cast<std::ptrdiff_t>(y))) {
                out.response.at(x, y) = rm.response.at(x, y);
            }
        }
    }
    return out;
}

double select_threshold(const ResponseMap& rm, const ThresholdMode& mode) {
    if (const auto* f = std::get_if<FixedThreshold>(&mode)) {
        return f->value;
    }
    if (const auto* p = std::get_if<PercentileThreshold>(&mode)) {
        return percentile_threshold(rm, p->percentile);
    }
    return otsu_threshold(rm);
}

EdgeMap apply_threshold(const ResponseMap& rm, double t) {
    EdgeMap em(rm.width(), rm.height(), 0);
    const auto src = rm.response.data();
    auto dst = em.data();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] > t ? 1 : 0;
    return em;
}

EdgeMap threshold(const ResponseMap& rm, const ThresholdMode& mode) {
    return apply_threshold(rm, select_threshold(rm, mode));
}

Detection run_detector(const RgbImage& img, const PipelineConfig& cfg, std::span<const CollectionScheme> schemes) {
    Detection d;
    d.response = compute_response_map(img, cfg, schemes);
    if (cfg.nms) d.response = non_max_suppression(d.response);
    d.threshold = select_threshold(d.response, cfg.threshold);
    d.edges = apply_threshold(d.response, d.threshold);
    return d;
}

EdgeMap detect_edges(const RgbImage& img, const PipelineConfig& cfg, std::span<const CollectionScheme> schemes) {
    return run_detector(img, cfg, schemes).edges;
}

EdgeMap detect_edges(const RgbImage& img, const PipelineConfig& cfg) {
    const auto schemes = build_default_schemes();
    return detect_edges(img, cfg, schemes);
}

}  // namespace vosedge
