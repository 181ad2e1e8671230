#pragma once

#include <vector>

#include "acmdm/field.hpp"
#include "acmdm/quadrature.hpp"
#include "acmdm/vec2.hpp"

namespace acmdm {

// Particle trajectory as a polyline. A closed path has >= 3 vertices and the
// closing segment last -> first is implicit (the first vertex is not repeated).
class PolylinePath {
public:
    PolylinePath(std::vector<Vec2> vertices, bool closed);

    [[nodiscard]] const std::vector<Vec2>& vertices() const noexcept { return vertices_; }
    [[nodiscard]] bool closed() const noexcept { return closed_; }
    [[nodiscard]] std::size_t segment_count() const noexcept {
        return closed_ ? vertices_.size() : vertices_.size() - 1;
    }
    [[nodiscard]] Vec2 segment_start(std::size_t i) const { return vertices_[i]; }
    [[nodiscard]] Vec2 segment_end(std::size_t i) const { return vertices_[(i + 1) % vertices_.size()]; }
    [[nodiscard]] Vec2 front() const { return vertices_.front(); }
    [[nodiscard]] Vec2 back() const { return vertices_.back(); }

    // Largest vertex-to-vertex distance.
    [[nodiscard]] double diameter() const noexcept;
    [[nodiscard]] PolylinePath reversed() const;

private:
    std::vector<Vec2> vertices_;
    bool closed_;
};

enum class Species { spinor, scalar };

// +1 for the spinor, -1 for the scalar: a loop enclosing charge Lambda once
// counter-clockwise picks up sign * g * Lambda.
constexpr int species_sign(Species s) noexcept { return s == Species::spinor ? 1 : -1; }

// Sign of the gamma-matrix convention gamma^mu gamma^nu = g^{mu nu} + i s eps^{mu nu lambda} gamma_lambda.
// Reported alongside results; the implemented phase signs do not depend on it.
inline constexpr int kConventionS = +1;

struct PhaseResult {
    double phase = 0.0;  // radians
    std::vector<int> windings;  // one per charge, in configuration order
    double error_estimate = 0.0;
    Species species = Species::spinor;
    int convention_s = kConventionS;
};

struct FringeResult {
    double delta_phase = 0.0;
    double contrast = 1.0;  // cos^2(delta_phase / 2)
    double error_estimate = 0.0;
};

/// Signed winding of a closed path around `point` (counter-clockwise
/// positive), from summed signed angle increments. Throws PointOnPath when
/// the point lies within 1e-12 * diameter of a segment.
int winding_number(const PolylinePath& path, Vec2 point);

/// Line integral of the dual field S along the path, segment by segment.
///
/// Pieces closer to a charge than 0.1x their own length are bisected first;
/// then each segment is refined adaptively with a 7/15-point Gauss-Kronrod
/// pair until its error sum is below tol / segment_count. Throws SingularPath
/// if a segment passes through a charge and NonConvergence when refinement
/// runs away.
QuadratureResult line_integral_dual(const PolylinePath& path, const FieldConfig& config, double tol);

/// Aharonov-Casher phase of a closed loop: -g * loop integral for the spinor,
/// +g * loop integral for the scalar. Windings are reported per charge.
PhaseResult ac_phase(const PolylinePath& path, const FieldConfig& config, double g, Species species,
                     double tol);

/// Two-arm interferometer. Both arms are open and share their endpoints; the
/// phase difference equals the closed-loop phase of arm a followed by the
/// reverse of arm b. Throws EndpointMismatch otherwise.
FringeResult fringe_shift(const PolylinePath& path_a, const PolylinePath& path_b, const FieldConfig& config,
                          double g, Species species, double tol);

}  // namespace acmdm
