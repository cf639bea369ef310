#pragma once

// Lossless image codecs: binary and ASCII PPM/PGM (maxval 255) and 8-bit PNG
// through libpng. 16-bit grayscale PNG/PGM is written for response maps only.

#include <filesystem>

#include "vosedge/image.hpp"

namespace vosedge {

enum class ImageFormat { Png, Pnm };

/// Decodes PNG (gray, gray+alpha, RGB, RGBA, palette; 8-bit only) or
/// PPM/PGM (P2, P3, P5, P6; maxval 255). Gray is replicated to three
/// channels and alpha is dropped. Throws ImageIoError.
RgbImage load_image(const std::filesystem::path& path);

/// Writes a .png (8-bit RGB) or .ppm (P6). Channels are rounded to the
/// nearest integer and clamped to [0, 255].
void save_image(const RgbImage& img, const std::filesystem::path& path);

/// 8-bit single channel: 255 for edges, 0 otherwise. PNG, or PGM (P5) for
/// .pgm/.pnm.
void save_edge_map(const EdgeMap& em, const std::filesystem::path& path);

/// Any image load_image accepts; a pixel is an edge when its first channel
/// exceeds 127.
EdgeMap load_edge_map(const std::filesystem::path& path);

/// 16-bit grayscale PNG (or P5 PGM with maxval 65535) with responses scaled
/// linearly from [0, kMaxDistance] to [0, 65535], rounded half-up. A .csv
/// path receives the exact responses instead, one image row per line.
void save_response_map(const ResponseMap& rm, const std::filesystem::path& path);

/// Linear response-to-16-bit mapping used by save_response_map.
std::uint16_t quantize_response(double response) noexcept;

}  // namespace vosedge
