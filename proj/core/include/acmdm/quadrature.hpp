#pragma once

#include <cstdint>
#include <functional>

namespace acmdm {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // absolute; 1-sigma standard error for Monte Carlo
    std::uint64_t evaluations = 0;
};

// Integrand over the Feynman-parameter triangle {0 <= x <= y <= 1}.
using TriangleIntegrand = std::function<double(double x, double y)>;

struct TriangleQuadratureOptions {
    // Hard cap on integrand evaluations. Exceeding it raises NonConvergence.
    std::uint64_t max_evaluations = 10'000'000;
    // The (u, v) square starts as a 2^depth x 2^depth grid of cells.
    int initial_depth = 1;
};

/// Adaptive integration of f over the triangle {0 <= x <= 1, x <= y <= 1}.
///
/// The triangle is mapped onto the unit square by x = u*v, y = v (Jacobian v),
/// which turns the (0,0) corner into the edge v = 0. The square is refined by
/// global adaptive bisection; each cell uses a tensor 7/15-point Gauss-Kronrod
/// pair, and the cell is split along the axis whose embedded-rule discrepancy
/// is larger.
///
/// Tolerance is absolute. On success error_estimate <= tol.
/// Throws Error{NonConvergence} when the evaluation budget runs out and
/// Error{NonFiniteIntegrand} on a NaN/inf sample.
QuadratureResult integrate_triangle(const TriangleIntegrand& f, double tol,
                                    const TriangleQuadratureOptions& options = {});

/// Plain Monte Carlo over the triangle with uniform samples.
///
/// Sample i is drawn from a counter-based generator keyed on (seed, i), and
/// partial sums are reduced in a fixed block order, so the result is
/// bit-identical for any thread count. error_estimate is the 1-sigma
/// standard error.
QuadratureResult mc_integrate_triangle(const TriangleIntegrand& f, std::uint64_t samples,
                                       std::uint64_t seed, unsigned threads = 0);

}  // namespace acmdm
