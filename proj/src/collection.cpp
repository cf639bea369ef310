#include "vosedge/collection.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "vosedge/error.hpp"

namespace vosedge {

namespace {

constexpr std::array<std::string_view, 8> kSchemeNames{"E", "NE", "N", "NW", "CE", "CNE", "CN", "CNW"};

template <typename Range>
NeighborSet make_side(const Range& indices, const char* label) {
    NeighborSet set;
    for (int i : indices) {
        if (i < 0 || i >= static_cast<int>(kWindowSize)) {
            throw InvalidArgument(std::string("scheme side ") + label + ": index " + std::to_string(i) +
                                  " outside 0..8");
        }
        if (i == static_cast<int>(kWindowCenter)) {
            throw InvalidArgument(std::string("scheme side ") + label + " contains the centre index 4");
        }
        set.set(static_cast<std::size_t>(i));
    }
    if (set.none()) {
        throw InvalidArgument(std::string("scheme side ") + label + " is empty");
    }
    return set;
}

ColorPixel side_sum(const WindowSample& w, const NeighborSet& side) {
    ColorPixel s;
    for (std::size_t i = 0; i < kWindowSize; ++i) {
        if (!side.test(i)) continue;
        s.r += w[i].r;
        s.g += w[i].g;
        s.b += w[i].b;
    }
    return s;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Parses "a={0,1,2}" style fields; returns the indices.
std::vector<int> parse_side(std::string_view field, char label, std::size_t line_no) {
    const auto fail = [&](const std::string& why) {
        return InvalidArgument("scheme line " + std::to_string(line_no) + ": " + why);
    };
    field = trim(field);
    if (field.size() < 4 || field[0] != label || field[1] != '=' || field[2] != '{' || field.back() != '}') {
        throw fail(std::string("expected ") + label + "={...}");
    }
    std::vector<int> out;
    std::string_view body = field.substr(3, field.size() - 4);
    while (!body.empty()) {
        const auto comma = body.find(',');
        const std::string_view tok = trim(body.substr(0, comma));
        int v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
            throw fail("bad index '" + std::string(tok) + "'");
        }
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

std::string_view to_string(SchemeId id) noexcept { return kSchemeNames[static_cast<std::size_t>(id)]; }

std::optional<SchemeId> parse_scheme_id(std::string_view text) noexcept {
    for (std::size_t i = 0; i < kSchemeNames.size(); ++i) {
        if (kSchemeNames[i] == text) return static_cast<SchemeId>(i);
    }
    return std::nullopt;
}

Axis suppression_axis(SchemeId id) noexcept {
    switch (id) {
        case SchemeId::E:
        case SchemeId::CE: return Axis::Vertical;
        case SchemeId::N:
        case SchemeId::CN: return Axis::Horizontal;
        case SchemeId::NE:
        case SchemeId::CNE: return Axis::AntiDiagonal;
        case SchemeId::NW:
        case SchemeId::CNW: return Axis::MainDiagonal;
    }
    return Axis::Vertical;
}

CollectionScheme::CollectionScheme(SchemeId id, std::initializer_list<int> side_a,
                                   std::initializer_list<int> side_b)
    : CollectionScheme(id, std::span<const int>(side_a.begin(), side_a.size()),
                       std::span<const int>(side_b.begin(), side_b.size())) {}

CollectionScheme::CollectionScheme(SchemeId id, std::span<const int> side_a, std::span<const int> side_b)
    : id_(id), a_(make_side(side_a, "a")), b_(make_side(side_b, "b")) {
    if ((a_ & b_).any()) {
        throw InvalidArgument("scheme " + std::string(to_string(id)) + ": sides overlap");
    }
}

double Mask::sum() const noexcept {
    double s = 0.0;
    for (double c : coefficients) s += c;
    return s;
}

std::vector<CollectionScheme> build_default_schemes() {
    return {
        // Step profiles: a straight cut through the centre.
        {SchemeId::E, {0, 1, 2}, {6, 7, 8}},
        {SchemeId::NE, {1, 2, 5}, {3, 6, 7}},
        {SchemeId::N, {0, 3, 6}, {2, 5, 8}},
        {SchemeId::NW, {0, 1, 3}, {5, 7, 8}},
        // Roof/curve profiles: CE rotated around the ring in 45 degree steps.
        {SchemeId::CE, {0, 1, 2, 3, 5}, {6, 7, 8}},
        {SchemeId::CNE, {0, 1, 2, 5, 8}, {3, 6, 7}},
        {SchemeId::CN, {0, 1, 3, 6, 7}, {2, 5, 8}},
        {SchemeId::CNW, {0, 1, 2, 3, 6}, {5, 7, 8}},
    };
}

Mask scheme_to_mask(const CollectionScheme& s) {
    Mask m;
    const double pos = 1.0 / static_cast<double>(s.side_a().count());
    const double neg = -1.0 / static_cast<double>(s.side_b().count());
    for (std::size_t i = 0; i < kWindowSize; ++i) {
        if (s.side_a().test(i)) m.coefficients[i] = pos;
        if (s.side_b().test(i)) m.coefficients[i] = neg;
    }
    return m;
}

double directional_response(const WindowSample& w, const CollectionScheme& s) {
    // mean_a - mean_b over a common denominator: exact for integer pixels, so
    // adding a constant colour to the window cannot perturb the result.
    const ColorPixel sa = side_sum(w, s.side_a());
    const ColorPixel sb = side_sum(w, s.side_b());
    const auto na = static_cast<double>(s.side_a().count());
    const auto nb = static_cast<double>(s.side_b().count());
    const double denom = na * nb;
    const ColorPixel diff{(sa.r * nb - sb.r * na) / denom, (sa.g * nb - sb.g * na) / denom,
                          (sa.b * nb - sb.b * na) / denom};
    return distance(diff, ColorPixel{});
}

DirectionChoice best_direction(const WindowSample& w, std::span<const CollectionScheme> schemes) {
    if (schemes.empty()) {
        throw InvalidArgument("best_direction needs at least one scheme");
    }
    DirectionChoice best{schemes[0].id(), 0, directional_response(w, schemes[0])};
    for (std::size_t i = 1; i < schemes.size(); ++i) {
        const double r = directional_response(w, schemes[i]);
        if (r > best.response) best = {schemes[i].id(), i, r};
    }
    return best;
}

std::vector<CollectionScheme> parse_schemes(std::string_view text) {
    std::vector<CollectionScheme> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') continue;

        const auto colon = line.find(':');
        if (colon == std::string_view::npos) {
            throw InvalidArgument("scheme line " + std::to_string(line_no) + ": missing ':'");
        }
        const std::string_view name = trim(line.substr(0, colon));
        const auto id = parse_scheme_id(name);
        if (!id) {
            throw InvalidArgument("scheme line " + std::to_string(line_no) + ": unknown scheme id '" +
                                  std::string(name) + "'");
        }
        const std::string_view rest = trim(line.substr(colon + 1));
        const auto b_pos = rest.find("b=");
        if (b_pos == std::string_view::npos) {
            throw InvalidArgument("scheme line " + std::to_string(line_no) + ": expected b={...}");
        }
        const auto a = parse_side(rest.substr(0, b_pos), 'a', line_no);
        const auto b = parse_side(rest.substr(b_pos), 'b', line_no);
        try {
            out.emplace_back(*id, a, b);
        } catch (const InvalidArgument& e) {
            throw InvalidArgument("scheme line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (out.empty()) {
        throw InvalidArgument("scheme file defines no schemes");
    }
    return out;
}

std::vector<CollectionScheme> load_schemes(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ImageIoError(IoErrorKind::MissingFile, path.string(), "cannot open scheme file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_schemes(buf.str());
}

std::string format_scheme(const CollectionScheme& s) {
    const auto side = [](const NeighborSet& set) {
        std::string out = "{";
        for (std::size_t i = 0; i < kWindowSize; ++i) {
            if (!set.test(i)) continue;
            if (out.size() > 1) out += ',';
            out += std::to_string(i);
        }
        return out + "}";
    };
    return std::string(to_string(s.id())) + ": a=" + side(s.side_a()) + " b=" + side(s.side_b());
}

}  // namespace vosedge
