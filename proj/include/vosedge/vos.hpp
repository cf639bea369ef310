#pragma once

// Vector order statistics on a 3x3 colour window.
//
// Pixels are ranked by reduced (aggregate-distance) ordering: each pixel is
// reduced to the sum of its RGB distances to every pixel in the window and
// the window is sorted ascending on that scalar. The lowest-ranked pixel is
// the vector median; the highest-ranked pixels are the outliers. All four
// edge operators measure how far the outliers sit from the centre of the
// distribution.

#include <array>
#include <cstddef>
#include <cstdint>

#include "vosedge/color.hpp"

namespace vosedge {

inline constexpr std::size_t kWindowSize = 9;
inline constexpr std::size_t kWindowCenter = 4;

/// 3x3 neighbourhood, row-major: index = 3 * row + col, centre at 4.
using WindowSample = std::array<ColorPixel, kWindowSize>;

struct OrderedWindow {
    /// Window indices by ascending aggregate distance; ties by ascending index.
    std::array<std::uint8_t, kWindowSize> order{};
    /// aggregates[i] belongs to window index order[i].
    std::array<double, kWindowSize> aggregates{};

    std::size_t median_index() const noexcept { return order.front(); }
    std::size_t extreme_index() const noexcept { return order.back(); }
};

enum class Operator { VR, MVR, VD, MVD };

/// Sum of distances from w[i] to all nine window pixels (self term included).
double aggregate_distance(std::size_t i, const WindowSample& w);

OrderedWindow reduced_order(const WindowSample& w);

/// Distance from the highest-ranked pixel to the vector median.
double vector_range(const OrderedWindow& ow, const WindowSample& w);

/// Minimum over the k highest-ranked pixels of their distance to the vector
/// median. Up to k - 1 outliers in the window are ignored. k must lie in [1, 8].
double min_vector_range(const OrderedWindow& ow, const WindowSample& w, int k);

/// Distance from the highest-ranked pixel to the channel-wise window mean.
double vector_dispersion(const OrderedWindow& ow, const WindowSample& w);

/// Minimum over the k highest-ranked pixels of their distance to the window
/// mean. k must lie in [1, 8].
double mean_vector_dispersion(const OrderedWindow& ow, const WindowSample& w, int k);

ColorPixel window_mean(const WindowSample& w) noexcept;

/// Dispatches to one of the four operators; k is ignored by VR and VD.
double apply_operator(Operator op, const OrderedWindow& ow, const WindowSample& w, int k);

void validate_order(int k);

}  // namespace vosedge
