#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace vosedge {

/// Largest RGB distance between two pixels, sqrt(3) * 255 rounded up.
/// Thresholds and response rasters are scaled against this value.
inline constexpr double kMaxDistance = 441.673;

inline constexpr double kChannelMax = 255.0;

/// One RGB sample. Channels are reals in [0, 255]; 8-bit sources are
/// promoted without rescaling.
struct ColorPixel {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;

    bool is_valid() const noexcept {
        const auto ok = [](double c) { return std::isfinite(c) && c >= 0.0 && c <= kChannelMax; };
        return ok(r) && ok(g) && ok(b);
    }

    friend bool operator==(const ColorPixel&, const ColorPixel&) = default;
};

/// Euclidean distance in RGB space.
///
/// The squared channel differences are summed smallest-first, which makes the
/// result bit-identical under any permutation of the channels.
inline double distance(const ColorPixel& a, const ColorPixel& b) noexcept {
    std::array<double, 3> sq{(a.r - b.r) * (a.r - b.r), (a.g - b.g) * (a.g - b.g),
                             (a.b - b.b) * (a.b - b.b)};
    if (sq[0] > sq[1]) std::swap(sq[0], sq[1]);
    if (sq[1] > sq[2]) std::swap(sq[1], sq[2]);
    if (sq[0] > sq[1]) std::swap(sq[0], sq[1]);
    return std::sqrt((sq[0] + sq[1]) + sq[2]);
}

}  // namespace vosedge
