#pragma once

// Random closed polylines around a centre for phase tests. Each loop is a
// sequence of angular passes (+/- one turn each) at random radii, so charges
// in different annuli see different winding numbers.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "acmdm/field.hpp"
#include "acmdm/phase.hpp"

namespace loops {

inline double min_clearance(const std::vector<acmdm::Vec2>& verts, const acmdm::FieldConfig& config) {
    double best = INFINITY;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const auto a = verts[i], b = verts[(i + 1) % verts.size()];
        for (const auto& ch : config.charges())
            best = std::min(best, acmdm::segment_distance(ch.position, a, b));
    }
    return best;
}

// 1 to 3 passes; pass directions are random so total windings span -3..3.
inline std::vector<acmdm::Vec2> random_loop(std::mt19937_64& rng, acmdm::Vec2 centre) {
    std::uniform_int_distribution<int> n_passes(1, 3), n_steps(12, 40), dir(0, 1);
    std::uniform_real_distribution<double> radius(0.4, 3.0), wobble(-0.15, 0.15), phase0(0.0, 1.0);
    std::vector<acmdm::Vec2> verts;
    const int passes = n_passes(rng);
    const double start = 2.0 * std::numbers::pi * phase0(rng);
    for (int p = 0; p < passes; ++p) {
        const double sense = dir(rng) ? 1.0 : -1.0;
        const double r0 = radius(rng);
        const int steps = n_steps(rng);
        for (int k = 0; k < steps; ++k) {
            const double t = start + sense * 2.0 * std::numbers::pi * k / steps;
            const double r = r0 * (1.0 + wobble(rng));
            verts.push_back({centre.x + r * std::cos(t), centre.y + r * std::sin(t)});
        }
    }
    return verts;
}

// Crossing-number winding (Sunday's rule), independent of the library's
// angle-sum implementation.
inline int crossing_winding(const std::vector<acmdm::Vec2>& verts, acmdm::Vec2 p) {
    int w = 0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const auto a = verts[i], b = verts[(i + 1) % verts.size()];
        const double side = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y);
        if (a.y <= p.y) {
            if (b.y > p.y && side > 0) ++w;
        } else if (b.y <= p.y && side < 0) {
            --w;
        }
    }
    return w;
}

inline acmdm::FieldConfig random_charges(std::mt19937_64& rng, int count) {
    std::uniform_real_distribution<double> pos(-2.5, 2.5), lam(-2.0, 2.0);
    std::vector<acmdm::LineCharge> charges;
    for (int i = 0; i < count; ++i) charges.push_back({{pos(rng), pos(rng)}, lam(rng)});
    return acmdm::FieldConfig(std::move(charges));
}

}  // namespace loops
