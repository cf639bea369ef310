#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "vosedge/collection.hpp"
#include "vosedge/error.hpp"

using namespace vosedge;

namespace {

std::set<int> as_set(const NeighborSet& s) {
    const auto m = oracle::members(s);
    return {m.begin(), m.end()};
}

// 90 degree counter-clockwise rotation of the window contents:
// new(row, col) = old(col, 2 - row).
WindowSample rot90(const WindowSample& w) {
    WindowSample out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out[std::size_t(3 * r + c)] = w[std::size_t(3 * c + (2 - r))];
    return out;
}

const CollectionScheme& by_id(const std::vector<CollectionScheme>& all, SchemeId id) {
    for (const auto& s : all)
        if (s.id() == id) return s;
    throw std::logic_error("missing scheme");
}

}  // namespace

TEST_CASE("default schemes") {
    const auto schemes = build_default_schemes();
    REQUIRE(schemes.size() == 8);
    CHECK(as_set(schemes[0].side_a()) == std::set<int>{0, 1, 2});
    CHECK(as_set(schemes[0].side_b()) == std::set<int>{6, 7, 8});
    CHECK(as_set(by_id(schemes, SchemeId::N).side_a()) == std::set<int>{0, 3, 6});
    CHECK(as_set(by_id(schemes, SchemeId::NE).side_b()) == std::set<int>{3, 6, 7});
    CHECK(as_set(by_id(schemes, SchemeId::NW).side_b()) == std::set<int>{5, 7, 8});
    CHECK(as_set(by_id(schemes, SchemeId::CE).side_a()) == std::set<int>{0, 1, 2, 3, 5});

    const std::vector<SchemeId> ids{SchemeId::E,  SchemeId::NE,  SchemeId::N,  SchemeId::NW,
                                    SchemeId::CE, SchemeId::CNE, SchemeId::CN, SchemeId::CNW};
    for (std::size_t i = 0; i < schemes.size(); ++i) {
        const auto& s = schemes[i];
        CHECK(s.id() == ids[i]);
        CHECK((s.side_a() & s.side_b()).none());
        CHECK(s.side_a().any());
        CHECK(s.side_b().any());
        CHECK_FALSE(s.side_a().test(4));
        CHECK_FALSE(s.side_b().test(4));
    }
}

TEST_CASE("curve schemes contain their base step scheme") {
    const auto s = build_default_schemes();
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& step = s[i];
        const auto& curve = s[i + 4];
        CHECK(suppression_axis(step.id()) == suppression_axis(curve.id()));
        CHECK((step.side_a() & ~curve.side_a()).none());
        CHECK((step.side_b() & ~curve.side_b()).none());
        CHECK(curve.side_a().count() == 5);
        CHECK(curve.side_b().count() == 3);
    }
}

TEST_CASE("scheme construction rejects bad sides") {
    CHECK_THROWS_AS(CollectionScheme(SchemeId::E, {0, 4}, {6}), InvalidArgument);
    CHECK_THROWS_AS(CollectionScheme(SchemeId::E, {0, 1}, {1, 2}), InvalidArgument);
    CHECK_THROWS_AS(CollectionScheme(SchemeId::E, {}, {1}), InvalidArgument);
    CHECK_THROWS_AS(CollectionScheme(SchemeId::E, {9}, {1}), InvalidArgument);
    CHECK_THROWS_AS(CollectionScheme(SchemeId::E, {-1}, {1}), InvalidArgument);
}

TEST_CASE("scheme_to_mask") {
    const auto s = build_default_schemes();
    const Mask e = scheme_to_mask(s[0]);
    for (int c = 0; c < 3; ++c) {
        CHECK(e.at(0, c) == doctest::Approx(1.0 / 3.0));
        CHECK(e.at(1, c) == 0.0);
        CHECK(e.at(2, c) == doctest::Approx(-1.0 / 3.0));
    }
    const Mask ce = scheme_to_mask(by_id(s, SchemeId::CE));
    for (int i : {0, 1, 2, 3, 5}) CHECK(ce.coefficients[std::size_t(i)] == doctest::Approx(0.2));
    for (int i : {6, 7, 8}) CHECK(ce.coefficients[std::size_t(i)] == doctest::Approx(-1.0 / 3.0));
    CHECK(ce.coefficients[4] == 0.0);
    for (const auto& scheme : s) CHECK(scheme_to_mask(scheme).sum() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("directional_response") {
    const auto s = build_default_schemes();
    WindowSample uniform;
    uniform.fill({12, 34, 56});
    for (const auto& scheme : s) CHECK(directional_response(uniform, scheme) == 0.0);

    WindowSample two_tone;
    for (std::size_t i = 0; i < 9; ++i) two_tone[i] = i < 3 ? ColorPixel{255, 255, 255} : ColorPixel{0, 0, 0};
    CHECK(directional_response(two_tone, s[0]) == doctest::Approx(441.6729559300637).epsilon(1e-14));

    std::mt19937_64 rng(17);
    for (int n = 0; n < 500; ++n) {
        const auto w = gen::real_window(rng);
        for (const auto& scheme : s) {
            const double r = directional_response(w, scheme);
            CHECK(r == doctest::Approx(oracle::directional(w, scheme)).epsilon(1e-12));
            // Swapping the sides changes nothing.
            const auto a = oracle::members(scheme.side_a());
            const auto b = oracle::members(scheme.side_b());
            const CollectionScheme swapped(scheme.id(), b, a);
            CHECK(directional_response(w, swapped) == doctest::Approx(r).epsilon(1e-12));
        }
    }
}

TEST_CASE("rotating the window cycles the step schemes") {
    const auto s = build_default_schemes();
    const auto& e = by_id(s, SchemeId::E);
    const auto& n = by_id(s, SchemeId::N);
    const auto& ne = by_id(s, SchemeId::NE);
    const auto& nw = by_id(s, SchemeId::NW);
    std::mt19937_64 rng(19);
    for (int i = 0; i < 300; ++i) {
        const auto w = gen::window(rng);
        const auto r = rot90(w);
        CHECK(directional_response(w, e) == doctest::Approx(directional_response(r, n)).epsilon(1e-12));
        CHECK(directional_response(w, n) == doctest::Approx(directional_response(r, e)).epsilon(1e-12));
        CHECK(directional_response(w, ne) == doctest::Approx(directional_response(r, nw)).epsilon(1e-12));
        CHECK(directional_response(w, nw) == doctest::Approx(directional_response(r, ne)).epsilon(1e-12));
    }
}

TEST_CASE("best_direction") {
    const auto s = build_default_schemes();
    WindowSample uniform;
    uniform.fill({1, 2, 3});
    const auto u = best_direction(uniform, s);
    CHECK(u.id == SchemeId::E);
    CHECK(u.index == 0);
    CHECK(u.response == 0.0);

    WindowSample horizontal;
    for (std::size_t i = 0; i < 9; ++i) horizontal[i] = i < 3 ? ColorPixel{200, 10, 10} : ColorPixel{10, 10, 200};
    CHECK(best_direction(horizontal, s).id == SchemeId::E);

    CHECK_THROWS_AS(best_direction(uniform, std::span<const CollectionScheme>{}), InvalidArgument);

    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> shift(0, 100);
    for (int n = 0; n < 500; ++n) {
        const auto w = gen::real_window(rng);
        const auto b = best_direction(w, s);
        CHECK(b.index == oracle::best(w, s));
        CHECK(b.id == s[b.index].id());

        // Constant offset leaves the argmax unchanged (integer data, exact).
        auto wi = gen::window(rng);
        for (auto& p : wi) p = {std::floor(p.r * 0.5), std::floor(p.g * 0.5), std::floor(p.b * 0.5)};
        auto shifted = wi;
        const double c = shift(rng);
        for (auto& p : shifted) p = {p.r + c, p.g + c, p.b + c};
        CHECK(best_direction(shifted, s).index == best_direction(wi, s).index);
    }
}

TEST_CASE("scheme text format") {
    const auto defaults = build_default_schemes();
    std::string text = "# default set\n\n";
    for (const auto& s : defaults) text += format_scheme(s) + "\n";
    CHECK(parse_schemes(text) == defaults);
    CHECK(format_scheme(defaults[0]) == "E: a={0,1,2} b={6,7,8}");

    const auto custom = parse_schemes("  CN : a={ 0, 3 } b={5,8}  \n");
    REQUIRE(custom.size() == 1);
    CHECK(custom[0].id() == SchemeId::CN);
    CHECK(as_set(custom[0].side_a()) == std::set<int>{0, 3});

    CHECK_THROWS_AS(parse_schemes(""), InvalidArgument);
    CHECK_THROWS_AS(parse_schemes("X: a={0} b={1}"), InvalidArgument);
    CHECK_THROWS_AS(parse_schemes("E a={0} b={1}"), InvalidArgument);
    CHECK_THROWS_AS(parse_schemes("E: a={0,4} b={1}"), InvalidArgument);
    CHECK_THROWS_AS(parse_schemes("E: a={0,x} b={1}"), InvalidArgument);
    CHECK_THROWS_WITH_AS(parse_schemes("E: a={0} b={8}\nN: a={0} b={0}"), doctest::Contains("line 2"),
                         InvalidArgument);
}
