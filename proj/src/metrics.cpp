#include "vosedge/metrics.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "vosedge/error.hpp"

namespace vosedge {

namespace {

void require_color(const ColorPixel& c, const char* name) {
    if (!c.is_valid()) {
        throw InvalidArgument(std::string(name) + " must have channels in [0, 255]");
    }
}

// Pixels of the colorB region that touch the colorA region through a
// 4-neighbour.
EdgeMap inner_boundary(const Grid<std::uint8_t>& inside) {
    EdgeMap truth(inside.width(), inside.height(), 0);
    const auto w = static_cast<std::ptrdiff_t>(inside.width());
    const auto h = static_cast<std::ptrdiff_t>(inside.height());
    constexpr int kDx[4] = {1, -1, 0, 0};
    constexpr int kDy[4] = {0, 0, 1, -1};
    for (std::ptrdiff_t y = 0; y < h; ++y) {
        for (std::ptrdiff_t x = 0; x < w; ++x) {
            if (!inside.at(std::size_t(x), std::size_t(y))) continue;
            for (int k = 0; k < 4; ++k) {
                const std::ptrdiff_t nx = x + kDx[k];
                const std::ptrdiff_t ny = y + kDy[k];
                if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                if (!inside.at(std::size_t(nx), std::size_t(ny))) {
                    truth.at(std::size_t(x), std::size_t(y)) = 1;
                    break;
                }
            }
        }
    }
    return truth;
}

RgbImage paint(const Grid<std::uint8_t>& inside, ColorPixel color_a, ColorPixel color_b) {
    RgbImage img(inside.width(), inside.height(), color_a);
    const auto mask = inside.data();
    auto px = img.data();
    for (std::size_t i = 0; i < px.size(); ++i) {
        if (mask[i]) px[i] = color_b;
    }
    return img;
}

std::string describe(const ColorPixel& c) {
    return "(" + std::to_string(int(c.r)) + "," + std::to_string(int(c.g)) + "," + std::to_string(int(c.b)) + ")";
}

bool is_edge(const EdgeMap& em, std::ptrdiff_t x, std::ptrdiff_t y) {
    return x >= 0 && y >= 0 && x < std::ptrdiff_t(em.width()) && y < std::ptrdiff_t(em.height()) &&
           em.at(std::size_t(x), std::size_t(y)) != 0;
}

}  // namespace

std::pair<RgbImage, GroundTruth> generate_step_image(std::size_t w, std::size_t h, ColorPixel color_a,
                                                     ColorPixel color_b, StepOrientation orientation) {
    if (w < 8 || h < 8) {
        throw InvalidArgument("step image needs width and height >= 8");
    }
    require_color(color_a, "colorA");
    require_color(color_b, "colorB");

    Grid<std::uint8_t> inside(w, h, 0);
    std::string name;
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            bool b = false;
            switch (orientation) {
                case StepOrientation::Vertical: b = x >= w / 2; break;
                case StepOrientation::Horizontal: b = y >= h / 2; break;
                case StepOrientation::Diagonal: b = x * h >= y * w; break;
            }
            inside.at(x, y) = b ? 1 : 0;
        }
    }
    switch (orientation) {
        case StepOrientation::Vertical: name = "vertical"; break;
        case StepOrientation::Horizontal: name = "horizontal"; break;
        case StepOrientation::Diagonal: name = "diagonal"; break;
    }
    GroundTruth truth{inner_boundary(inside), "step " + name + " " + std::to_string(w) + "x" + std::to_string(h) +
                                                  " a=" + describe(color_a) + " b=" + describe(color_b)};
    return {paint(inside, color_a, color_b), std::move(truth)};
}

std::pair<RgbImage, GroundTruth> generate_disk_image(std::size_t size, std::size_t radius, ColorPixel color_a,
                                                     ColorPixel color_b) {
    if (radius < 1) {
        throw InvalidArgument("disk radius must be >= 1");
    }
    if (2 * radius + 4 > size) {
        throw InvalidArgument("disk radius " + std::to_string(radius) + " too large for a " + std::to_string(size) +
                              "-pixel image");
    }
    require_color(color_a, "colorA");
    require_color(color_b, "colorB");

    const auto c = static_cast<std::ptrdiff_t>(size / 2);
    const auto r2 = static_cast<std::ptrdiff_t>(radius * radius);
    Grid<std::uint8_t> inside(size, size, 0);
    for (std::size_t y = 0; y < size; ++y) {
        for (std::size_t x = 0; x < size; ++x) {
            const std::ptrdiff_t dx = std::ptrdiff_t(x) - c;
            const std::ptrdiff_t dy = std::ptrdiff_t(y) - c;
            inside.at(x, y) = dx * dx + dy * dy <= r2 ? 1 : 0;
        }
    }
    GroundTruth truth{inner_boundary(inside), "disk " + std::to_string(size) + " r=" + std::to_string(radius) +
                                                  " a=" + describe(color_a) + " b=" + describe(color_b)};
    return {paint(inside, color_a, color_b), std::move(truth)};
}

void add_salt_and_pepper(RgbImage& img, double rate, std::uint64_t seed) {
    if (!(rate >= 0.0 && rate <= 1.0)) {
        throw InvalidArgument("noise rate must lie in [0, 1]");
    }
    // Raw engine output only: distributions are implementation-defined.
    std::mt19937_64 gen(seed);
    for (auto& p : img.data()) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        if (u >= rate) continue;
        const double v = (gen() >> 63) ? kChannelMax : 0.0;
        p = {v, v, v};
    }
}

std::size_t endpoint_count(const EdgeMap& em) {
    std::size_t count = 0;
    for (std::ptrdiff_t y = 0; y < std::ptrdiff_t(em.height()); ++y) {
        for (std::ptrdiff_t x = 0; x < std::ptrdiff_t(em.width()); ++x) {
            if (!is_edge(em, x, y)) continue;
            int neighbours = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if ((dx || dy) && is_edge(em, x + dx, y + dy)) ++neighbours;
                }
            }
            count += neighbours == 1;
        }
    }
    return count;
}

std::size_t connected_components(const EdgeMap& em) {
    if (em.empty()) return 0;
    Grid<std::uint8_t> seen(em.width(), em.height(), 0);
    std::vector<std::pair<std::ptrdiff_t, std::ptrdiff_t>> stack;
    std::size_t components = 0;
    for (std::ptrdiff_t y = 0; y < std::ptrdiff_t(em.height()); ++y) {
        for (std::ptrdiff_t x = 0; x < std::ptrdiff_t(em.width()); ++x) {
            if (!is_edge(em, x, y) || seen.at(std::size_t(x), std::size_t(y))) continue;
            ++components;
            seen.at(std::size_t(x), std::size_t(y)) = 1;
            stack.emplace_back(x, y);
            while (!stack.empty()) {
                const auto [cx, cy] = stack.back();
                stack.pop_back();
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const std::ptrdiff_t nx = cx + dx;
                        const std::ptrdiff_t ny = cy + dy;
                        if (is_edge(em, nx, ny) && !seen.at(std::size_t(nx), std::size_t(ny))) {
                            seen.at(std::size_t(nx), std::size_t(ny)) = 1;
                            stack.emplace_back(nx, ny);
                        }
                    }
                }
            }
        }
    }
    return components;
}

double pratt_fom(const EdgeMap& detected, const GroundTruth& truth, double alpha) {
    if (!detected.same_shape(truth.map)) {
        throw InvalidArgument("detected and ground-truth maps differ in size");
    }
    std::vector<std::pair<std::ptrdiff_t, std::ptrdiff_t>> truth_px;
    std::vector<std::pair<std::ptrdiff_t, std::ptrdiff_t>> detected_px;
    for (std::size_t y = 0; y < detected.height(); ++y) {
        for (std::size_t x = 0; x < detected.width(); ++x) {
            if (truth.map.at(x, y)) truth_px.emplace_back(x, y);
            if (detected.at(x, y)) detected_px.emplace_back(x, y);
        }
    }
    if (truth_px.empty()) {
        throw InvalidArgument("ground truth has no edge pixels");
    }
    if (detected_px.empty()) return 0.0;

    double sum = 0.0;
    for (const auto& [dx, dy] : detected_px) {
        auto best = std::numeric_limits<std::ptrdiff_t>::max();
        for (const auto& [tx, ty] : truth_px) {
            const std::ptrdiff_t d2 = (dx - tx) * (dx - tx) + (dy - ty) * (dy - ty);
            best = std::min(best, d2);
            if (best == 0) break;
        }
        sum += 1.0 / (1.0 + alpha * static_cast<double>(best));
    }
    return sum / static_cast<double>(std::max(detected_px.size(), truth_px.size()));
}

}  // namespace vosedge
