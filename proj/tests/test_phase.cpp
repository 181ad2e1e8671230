#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "acmdm/error.hpp"
#include "acmdm/phase.hpp"
#include "loops.hpp"

using namespace acmdm;

namespace {

PolylinePath square(Vec2 centre, bool ccw) {
    std::vector<Vec2> v = {{centre.x - 0.5, centre.y - 0.5},
                           {centre.x + 0.5, centre.y - 0.5},
                           {centre.x + 0.5, centre.y + 0.5},
                           {centre.x - 0.5, centre.y + 0.5}};
    PolylinePath p(std::move(v), true);
    return ccw ? p : p.reversed();
}

std::vector<Vec2> ngon(int n, double r, Vec2 c = {}, double from = 0.0, double to = 2.0 * std::numbers::pi,
                       bool include_end = false) {
    std::vector<Vec2> v;
    const int count = include_end ? n + 1 : n;
    for (int k = 0; k < count; ++k) {
        const double t = from + (to - from) * k / n;
        v.push_back({c.x + r * std::cos(t), c.y + r * std::sin(t)});
    }
    return v;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected acmdm::Error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("PolylinePath validation") {
    CHECK(code_of([] { PolylinePath({{0, 0}}, false); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { PolylinePath({{0, 0}, {1, 0}}, true); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { PolylinePath({{0, 0}, {1, 0}, {1, 1}, {0, 0}}, true); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { PolylinePath({{0, 0}, {NAN, 0}}, false); }) == ErrorCode::InvalidArgument);
    CHECK_NOTHROW(PolylinePath({{0, 0}, {1, 0}}, false));
}

TEST_CASE("winding_number") {
    CHECK(winding_number(square({0, 0}, true), {0, 0}) == 1);
    CHECK(winding_number(square({0, 0}, false), {0, 0}) == -1);
    CHECK(winding_number(square({10, 10}, true), {0, 0}) == 0);

    auto twice = ngon(40, 1.0, {}, 0.0, 4.0 * std::numbers::pi);
    CHECK(winding_number(PolylinePath(twice, true), {0.1, -0.2}) == 2);

    CHECK(code_of([] { winding_number(square({0, 0}, true), {0.5, 0.0}); }) == ErrorCode::PointOnPath);
    CHECK(code_of([] { winding_number(square({0, 0}, true), {-0.5, -0.5}); }) == ErrorCode::PointOnPath);
    CHECK(code_of([] { winding_number(PolylinePath({{0, 0}, {1, 0}}, false), {5, 5}); }) ==
          ErrorCode::InvalidArgument);
}

TEST_CASE("line_integral_dual: analytic loop values") {
    const double tol = 1e-8;
    const double lambda = 1.7;
    const PolylinePath circle(ngon(256, 1.0), true);

    const auto one = line_integral_dual(circle, FieldConfig({{{0, 0}, lambda}}), tol);
    CHECK(std::abs(one.value + lambda) <= tol);
    CHECK(one.error_estimate <= tol);

    CHECK(line_integral_dual(circle, FieldConfig{}, tol).value == 0.0);

    const auto two = line_integral_dual(circle, FieldConfig({{{0, 0}, 0.9}, {{5, 0}, -2.3}}), tol);
    CHECK(std::abs(two.value + 0.9) <= tol);
}

TEST_CASE("line_integral_dual: path grazing a charge") {
    const double tol = 1e-8;
    // Charge 1e-6 inside the bottom edge of a unit square.
    const FieldConfig near({{{0.1, -0.5 + 1e-6}, 1.0}});
    const auto r = line_integral_dual(square({0, 0}, true), near, tol);
    CHECK(std::abs(r.value + 1.0) <= tol);

    const FieldConfig on_edge({{{0.1, -0.5}, 1.0}});
    CHECK(code_of([&] { line_integral_dual(square({0, 0}, true), on_edge, tol); }) == ErrorCode::SingularPath);
    const FieldConfig on_vertex({{{0.5, 0.5}, 1.0}});
    CHECK(code_of([&] { line_integral_dual(square({0, 0}, true), on_vertex, tol); }) == ErrorCode::SingularPath);
}

TEST_CASE("ac_phase: spinor gets g Lambda, scalar -g Lambda") {
    const double tol = 1e-8, g = 0.8, lambda = 2.5;
    const PolylinePath circle(ngon(256, 1.0), true);
    const FieldConfig line({{{0, 0}, lambda}});

    const auto spinor = ac_phase(circle, line, g, Species::spinor, tol);
    const auto scalar = ac_phase(circle, line, g, Species::scalar, tol);
    CHECK(std::abs(spinor.phase - g * lambda) <= tol);
    CHECK(std::abs(scalar.phase + g * lambda) <= tol);
    CHECK(spinor.phase == -scalar.phase);
    CHECK(spinor.windings == std::vector<int>{1});
    CHECK(spinor.convention_s == 1);

    CHECK(code_of([&] { ac_phase(PolylinePath({{0, 0}, {1, 0}}, false), line, g, Species::spinor, tol); }) ==
          ErrorCode::InvalidArgument);
}

TEST_CASE("ac_phase: a star-shaped loop with winding 1 gives the same phase") {
    const double tol = 1e-8, g = 1.3, lambda = -0.6;
    std::vector<Vec2> star;
    for (int k = 0; k < 50; ++k) {
        const double t = 2.0 * std::numbers::pi * k / 50.0;
        const double r = (k % 2 == 0) ? 3.0 : 0.2;
        star.push_back({r * std::cos(t), r * std::sin(t)});
    }
    const auto r = ac_phase(PolylinePath(star, true), FieldConfig({{{0.05, -0.02}, lambda}}), g, Species::spinor, tol);
    CHECK(std::abs(r.phase - g * lambda) <= 10 * tol);
}

TEST_CASE("ac_phase: orientation, additivity and sign opposition on random loops") {
    const double tol = 1e-8;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> gdist(0.2, 2.0);
    int checked = 0;
    while (checked < 20) {
        const auto config = loops::random_charges(rng, 2);
        auto va = loops::random_loop(rng, {0, 0});
        auto vb = loops::random_loop(rng, {0.3, -0.2});
        if (loops::min_clearance(va, config) < 0.02 || loops::min_clearance(vb, config) < 0.02) continue;
        // Loop b is shifted so both start at the same point; the joined loop
        // traverses a, then the link to b's start, b, and the link back.
        const Vec2 shift = va.front() - vb.front();
        for (auto& p : vb) p += shift;
        if (loops::min_clearance(vb, config) < 0.02) continue;
        std::vector<Vec2> joined = va;
        joined.push_back(va.front());
        joined.insert(joined.end(), vb.begin() + 1, vb.end());
        if (loops::min_clearance(joined, config) < 0.02) continue;

        const double g = gdist(rng);
        const PolylinePath a(va, true), b(vb, true), ab(joined, true);
        const auto pa = ac_phase(a, config, g, Species::spinor, tol);
        const auto pb = ac_phase(b, config, g, Species::spinor, tol);
        const auto pab = ac_phase(ab, config, g, Species::spinor, tol);
        CHECK(std::abs(pab.phase - (pa.phase + pb.phase)) <= 10 * tol);

        const auto rev = ac_phase(a.reversed(), config, g, Species::spinor, tol);
        CHECK(std::abs(rev.phase + pa.phase) <= 10 * tol);

        const auto scalar = ac_phase(a, config, g, Species::scalar, tol);
        CHECK(scalar.phase == -pa.phase);

        double predicted = 0.0;
        for (std::size_t i = 0; i < config.size(); ++i)
            predicted += g * config.charges()[i].lambda * pa.windings[i];
        CHECK(std::abs(pa.phase - predicted) <= 10 * tol);
        ++checked;
    }
}

TEST_CASE("fringe_shift") {
    const double tol = 1e-8, g = 0.9, lambda = 1.4;
    const FieldConfig line({{{0, 0}, lambda}});
    // Both arms run from (1, 0) to (-1, 0): upper arm counter-clockwise, lower arm clockwise.
    const PolylinePath upper(ngon(128, 1.0, {}, 0.0, std::numbers::pi, true), false);
    const PolylinePath lower(ngon(128, 1.0, {}, 0.0, -std::numbers::pi, true), false);

    const auto f = fringe_shift(upper, lower, line, g, Species::spinor, tol);
    CHECK(std::abs(f.delta_phase - g * lambda) <= 10 * tol);
    CHECK(f.contrast == doctest::Approx(std::pow(std::cos(0.5 * g * lambda), 2)).epsilon(1e-8));

    const auto same = fringe_shift(upper, upper, line, g, Species::spinor, tol);
    CHECK(same.delta_phase == 0.0);
    CHECK(same.contrast == 1.0);

    // g Lambda = pi gives a dark fringe.
    const auto dark = fringe_shift(upper, lower, FieldConfig({{{0, 0}, std::numbers::pi}}), 1.0, Species::spinor, tol);
    CHECK(std::abs(dark.delta_phase - std::numbers::pi) <= 10 * tol);
    CHECK(dark.contrast <= 1e-15);

    const PolylinePath elsewhere({{1, 0}, {0, 3}, {-1, 0.5}}, false);
    CHECK(code_of([&] { fringe_shift(upper, elsewhere, line, g, Species::spinor, tol); }) ==
          ErrorCode::EndpointMismatch);
    const PolylinePath loop(ngon(16, 1.0), true);
    CHECK(code_of([&] { fringe_shift(loop, upper, line, g, Species::spinor, tol); }) == ErrorCode::InvalidArgument);
}
