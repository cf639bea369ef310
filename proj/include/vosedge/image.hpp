#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vosedge/collection.hpp"
#include "vosedge/color.hpp"
#include "vosedge/error.hpp"

namespace vosedge {

/// Row-major 2-D grid with non-zero dimensions.
template <typename T>
class Grid {
public:
    Grid() = default;

    Grid(std::size_t width, std::size_t height, T fill = T{})
        : width_(width), height_(height) {
        if (width == 0 || height == 0) {
            throw InvalidArgument("grid dimensions must be positive");
        }
        data_.assign(width * height, fill);
    }

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    T& at(std::size_t x, std::size_t y) { return data_[y * width_ + x]; }
    const T& at(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }

    std::span<T> data() noexcept { return data_; }
    std::span<const T> data() const noexcept { return data_; }

    bool same_shape(std::size_t width, std::size_t height) const noexcept {
        return width_ == width && height_ == height;
    }
    template <typename U>
    bool same_shape(const Grid<U>& other) const noexcept {
        return same_shape(other.width(), other.height());
    }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<T> data_;
};

using RgbImage = Grid<ColorPixel>;

/// Binary edge decision per pixel; 1 = edge, 0 = background.
using EdgeMap = Grid<std::uint8_t>;

/// Operator magnitude per pixel plus the collection scheme that best
/// explains the local structure.
struct ResponseMap {
    Grid<double> response;
    Grid<SchemeId> direction;

    ResponseMap() = default;
    ResponseMap(std::size_t width, std::size_t height)
        : response(width, height, 0.0), direction(width, height, SchemeId::E) {}

    std::size_t width() const noexcept { return response.width(); }
    std::size_t height() const noexcept { return response.height(); }

    friend bool operator==(const ResponseMap&, const ResponseMap&) = default;
};

/// Throws InvalidArgument when any pixel is non-finite or outside [0, 255].
void validate_image(const RgbImage& img);

std::size_t edge_count(const EdgeMap& em) noexcept;

}  // namespace vosedge
