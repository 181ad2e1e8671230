#pragma once

#include <span>
#include <vector>

#include "acmdm/vec2.hpp"

namespace acmdm {

// An infinite line charge piercing the plane at `position`, with charge per
// unit length `lambda`.
struct LineCharge {
    Vec2 position;
    double lambda = 0.0;
};

// Static, purely electric 2-D configuration. Positions are finite and pairwise
// distinct (checked on construction).
class FieldConfig {
public:
    FieldConfig() = default;
    explicit FieldConfig(std::vector<LineCharge> charges);

    [[nodiscard]] std::span<const LineCharge> charges() const noexcept { return charges_; }
    [[nodiscard]] bool empty() const noexcept { return charges_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return charges_.size(); }

    // Union of two configurations; the result must still have distinct positions.
    [[nodiscard]] FieldConfig merged(const FieldConfig& other) const;

private:
    std::vector<LineCharge> charges_;
};

/// E(r) = sum_i (lambda_i / 2 pi) (r - r_i) / |r - r_i|^2.
///
/// With this normalisation the loop integral of the dual field around a single
/// charge is exactly -lambda times the winding number. Throws SingularPoint at
/// a charge position.
Vec2 efield(const FieldConfig& config, Vec2 point);

/// Spatial part of S_mu = (1/2) eps_{mu alpha beta} F^{alpha beta} for a
/// purely electric field: (E_2, -E_1). The time component vanishes.
constexpr Vec2 dual_field(Vec2 e) noexcept { return {e.y, -e.x}; }

}  // namespace acmdm
