#include "vosedge/vos.hpp"

#include <string>

#include "vosedge/error.hpp"

namespace vosedge {

namespace {

// Top-k minimum distance to a reference pixel, walking down from X(9).
double min_top_k_distance(const OrderedWindow& ow, const WindowSample& w, int k, const ColorPixel& ref) {
    double best = distance(w[ow.order[kWindowSize - 1]], ref);
    for (int j = 1; j < k; ++j) {
        const double d = distance(w[ow.order[kWindowSize - 1 - static_cast<std::size_t>(j)]], ref);
        if (d < best) best = d;
    }
    return best;
}

}  // namespace

void validate_order(int k) {
    if (k < 1 || k > 8) {
        throw InvalidArgument("operator order k must lie in [1, 8], got " + std::to_string(k));
    }
}

double aggregate_distance(std::size_t i, const WindowSample& w) {
    if (i >= kWindowSize) {
        throw InvalidArgument("window index must lie in [0, 8], got " + std::to_string(i));
    }
    double sum = 0.0;
    for (const auto& p : w) sum += distance(w[i], p);
    return sum;
}

OrderedWindow reduced_order(const WindowSample& w) {
    std::array<std::array<double, kWindowSize>, kWindowSize> dist{};
    for (std::size_t i = 0; i < kWindowSize; ++i) {
        for (std::size_t j = i + 1; j < kWindowSize; ++j) {
            dist[i][j] = dist[j][i] = distance(w[i], w[j]);
        }
    }

    OrderedWindow ow;
    std::array<double, kWindowSize> agg{};
    for (std::size_t i = 0; i < kWindowSize; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < kWindowSize; ++j) sum += dist[i][j];
        agg[i] = sum;
        ow.order[i] = static_cast<std::uint8_t>(i);
    }

    // Insertion sort keeps equal aggregates in index order.
    for (std::size_t i = 1; i < kWindowSize; ++i) {
        const std::uint8_t idx = ow.order[i];
        std::size_t j = i;
        while (j > 0 && agg[ow.order[j - 1]] > agg[idx]) {
            ow.order[j] = ow.order[j - 1];
            --j;
        }
        ow.order[j] = idx;
    }
    for (std::size_t i = 0; i < kWindowSize; ++i) ow.aggregates[i] = agg[ow.order[i]];
    return ow;
}

double vector_range(const OrderedWindow& ow, const WindowSample& w) {
    return distance(w[ow.extreme_index()], w[ow.median_index()]);
}

double min_vector_range(const OrderedWindow& ow, const WindowSample& w, int k) {
    validate_order(k);
    return min_top_k_distance(ow, w, k, w[ow.median_index()]);
}

ColorPixel window_mean(const WindowSample& w) noexcept {
    ColorPixel m;
    for (const auto& p : w) {
        m.r += p.r;
        m.g += p.g;
        m.b += p.b;
    }
    m.r /= static_cast<double>(kWindowSize);
    m.g /= static_cast<double>(kWindowSize);
    m.b /= static_cast<double>(kWindowSize);
    return m;
}

double vector_dispersion(const OrderedWindow& ow, const WindowSample& w) {
    return distance(w[ow.extreme_index()], window_mean(w));
}

double mean_vector_dispersion(const OrderedWindow& ow, const WindowSample& w, int k) {
    validate_order(k);
    return min_top_k_distance(ow, w, k, window_mean(w));
}

double apply_operator(Operator op, const OrderedWindow& ow, const WindowSample& w, int k) {
    switch (op) {
        case Operator::VR: return vector_range(ow, w);
        case Operator::MVR: return min_vector_range(ow, w, k);
        case Operator::VD: return vector_dispersion(ow, w);
        case Operator::MVD: return mean_vector_dispersion(ow, w, k);
    }
    throw InvalidArgument("unknown operator");
}

}  // namespace vosedge
