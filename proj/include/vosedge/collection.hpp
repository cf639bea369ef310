#pragma once

// Pixel-collection schemes over the 8-neighbourhood of a 3x3 window.
//
// Positions use the row-major integer notation 0..8 with 4 at the centre:
//
//     0 1 2
//     3 4 5
//     6 7 8
//
// A scheme splits (part of) the ring of eight neighbours into two opposing
// collections. Step schemes cut the ring with a straight line through the
// centre; curve schemes pair a five-pixel corner wedge with the opposite
// three-pixel wedge, modelling roof/curved profiles.

#include <array>
#include <bitset>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vosedge/vos.hpp"

namespace vosedge {

enum class SchemeId : std::uint8_t { E, NE, N, NW, CE, CNE, CN, CNW };

/// Axis across which non-maximum suppression compares a pixel.
enum class Axis : std::uint8_t {
    Vertical,      // pixels above and below
    Horizontal,    // pixels left and right
    AntiDiagonal,  // window positions 2 and 6
    MainDiagonal,  // window positions 0 and 8
};

std::string_view to_string(SchemeId id) noexcept;
std::optional<SchemeId> parse_scheme_id(std::string_view text) noexcept;

/// E -> vertical, N -> horizontal, NE -> anti-diagonal, NW -> main diagonal.
/// Curve schemes share the axis of their base direction.
Axis suppression_axis(SchemeId id) noexcept;

using NeighborSet = std::bitset<kWindowSize>;

class CollectionScheme {
public:
    /// Throws InvalidArgument unless both sides are non-empty, disjoint, in
    /// 0..8 and exclude the centre.
    CollectionScheme(SchemeId id, std::initializer_list<int> side_a, std::initializer_list<int> side_b);
    CollectionScheme(SchemeId id, std::span<const int> side_a, std::span<const int> side_b);

    SchemeId id() const noexcept { return id_; }
    const NeighborSet& side_a() const noexcept { return a_; }
    const NeighborSet& side_b() const noexcept { return b_; }

    friend bool operator==(const CollectionScheme&, const CollectionScheme&) = default;

private:
    SchemeId id_;
    NeighborSet a_;
    NeighborSet b_;
};

struct Mask {
    std::array<double, kWindowSize> coefficients{};

    double at(int row, int col) const { return coefficients[static_cast<std::size_t>(3 * row + col)]; }
    double sum() const noexcept;
};

/// E, NE, N, NW step schemes followed by CE, CNE, CN, CNW curve schemes.
std::vector<CollectionScheme> build_default_schemes();

/// +1/|a| on side a, -1/|b| on side b, 0 elsewhere.
Mask scheme_to_mask(const CollectionScheme& s);

/// RGB distance between the mean colour of side a and the mean colour of
/// side b; the magnitude of the mask applied to each channel.
double directional_response(const WindowSample& w, const CollectionScheme& s);

struct DirectionChoice {
    SchemeId id;
    std::size_t index;
    double response;
};

/// Argmax of directional_response; the earliest scheme wins ties.
DirectionChoice best_direction(const WindowSample& w, std::span<const CollectionScheme> schemes);

/// Parses the text scheme format, one scheme per line:
///
///     E: a={0,1,2} b={6,7,8}
///
/// Blank lines and lines starting with '#' are skipped. Errors name the line.
std::vector<CollectionScheme> parse_schemes(std::string_view text);
std::vector<CollectionScheme> load_schemes(const std::filesystem::path& path);
std::string format_scheme(const CollectionScheme& s);

}  // namespace vosedge
