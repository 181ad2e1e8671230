#include "acmdm/field.hpp"

#include <numbers>
#include <sstream>

#include "acmdm/error.hpp"

namespace acmdm {

FieldConfig::FieldConfig(std::vector<LineCharge> charges) : charges_(std::move(charges)) {
    for (std::size_t i = 0; i < charges_.size(); ++i) {
        const auto& c = charges_[i];
        if (!is_finite(c.position) || !std::isfinite(c.lambda))
            throw Error(ErrorCode::InvalidArgument,
                        "line charge " + std::to_string(i) + " has a non-finite position or density");
        for (std::size_t j = 0; j < i; ++j) {
            if (charges_[j].position == c.position)
                throw Error(ErrorCode::InvalidArgument, "line charges " + std::to_string(j) + " and " +
                                                            std::to_string(i) + " share a position");
        }
    }
}

FieldConfig FieldConfig::merged(const FieldConfig& other) const {
    std::vector<LineCharge> all(charges_.begin(), charges_.end());
    all.insert(all.end(), other.charges_.begin(), other.charges_.end());
    return FieldConfig(std::move(all));
}

Vec2 efield(const FieldConfig& config, Vec2 point) {
    Vec2 e{};
    for (const auto& c : config.charges()) {
        const Vec2 d = point - c.position;
        const double r2 = norm2(d);
        if (r2 == 0.0) {
            std::ostringstream msg;
            msg << "field evaluated at a line charge position (" << point.x << ", " << point.y << ")";
            throw Error(ErrorCode::SingularPoint, msg.str());
        }
        e += (c.lambda / (2.0 * std::numbers::pi * r2)) * d;
    }
    return e;
}

}  // namespace acmdm
