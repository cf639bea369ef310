#pragma once

// Synthetic test patterns with known edges and edge-map quality measures.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>

#include "vosedge/image.hpp"

namespace vosedge {

struct GroundTruth {
    EdgeMap map;
    std::string provenance;
};

enum class StepOrientation { Vertical, Horizontal, Diagonal };

/// colorA fills the first half-plane (left, top, or below the diagonal
/// x >= y * w / h), colorB the rest. The truth is the 1-pixel boundary line on
/// the colorB side. Requires w, h >= 8.
std::pair<RgbImage, GroundTruth> generate_step_image(std::size_t w, std::size_t h, ColorPixel color_a,
                                                     ColorPixel color_b, StepOrientation orientation);

/// Disk of colorB, centre (size / 2, size / 2), on a colorA background.
/// Inside means (x - c)^2 + (y - c)^2 <= radius^2. The truth is every inside
/// pixel with at least one 4-neighbour outside. Requires radius >= 1 and
/// 2 * radius + 4 <= size.
std::pair<RgbImage, GroundTruth> generate_disk_image(std::size_t size, std::size_t radius, ColorPixel color_a,
                                                     ColorPixel color_b);

/// Replaces each pixel, with probability rate, by black or white (equally
/// likely). Fully determined by the seed.
void add_salt_and_pepper(RgbImage& img, double rate, std::uint64_t seed);

/// Edge pixels with exactly one edge pixel among their 8 neighbours.
std::size_t endpoint_count(const EdgeMap& em);

/// Number of 8-connected components of edge pixels.
std::size_t connected_components(const EdgeMap& em);

inline constexpr double kPrattAlpha = 1.0 / 9.0;

/// Pratt's figure of merit, (1 / max(Nd, Nt)) * sum over detected pixels of
/// 1 / (1 + alpha * d^2), with d the Euclidean distance to the nearest truth
/// pixel. 0 when nothing is detected. Throws InvalidArgument on a dimension
/// mismatch or an empty truth map.
double pratt_fom(const EdgeMap& detected, const GroundTruth& truth, double alpha = kPrattAlpha);

}  // namespace vosedge
