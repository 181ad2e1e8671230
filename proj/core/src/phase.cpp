#include "acmdm/phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "acmdm/error.hpp"
#include "gauss_kronrod.hpp"

namespace acmdm {

namespace {

constexpr double kOnPathRelative = 1e-12;
constexpr double kNearChargeRatio = 0.1;
constexpr std::size_t kMaxPiecesPerSegment = 200'000;

std::string point_str(Vec2 p) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << p.x << ", " << p.y << ")";
    return os.str();
}

struct Piece {
    double t0, t1;
    double value;
    double error;
};

struct PieceOrder {
    bool operator()(const Piece& a, const Piece& b) const noexcept { return a.error < b.error; }
};

class SegmentIntegrator {
public:
    SegmentIntegrator(const FieldConfig& config, Vec2 a, Vec2 b) : config_(config), a_(a), d_(b - a) {}

    Piece evaluate(double t0, double t1) {
        using detail::gk15;
        const double h = 0.5 * (t1 - t0);
        const double c = 0.5 * (t0 + t1);
        double k = 0.0, g = 0.0, abs_k = 0.0;
        for (int i = 0; i < gk15.size; ++i) {
            const double t = c + h * gk15.node[i];
            const double val = dot(dual_field(efield(config_, a_ + t * d_)), d_);
            k += gk15.kronrod_weight[i] * val;
            g += gk15.gauss_weight[i] * val;
            abs_k += gk15.kronrod_weight[i] * std::abs(val);
        }
        evaluations += gk15.size;
        const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * abs_k * h;
        return {t0, t1, k * h, std::max(std::abs(k - g) * h, roundoff)};
    }

    // True when some charge sits closer than kNearChargeRatio x length to [t0, t1].
    [[nodiscard]] bool near_charge(double t0, double t1) const {
        const Vec2 p0 = a_ + t0 * d_;
        const Vec2 p1 = a_ + t1 * d_;
        const double len = norm(p1 - p0);
        for (const auto& ch : config_.charges())
            if (segment_distance(ch.position, p0, p1) < kNearChargeRatio * len) return true;
        return false;
    }

    std::uint64_t evaluations = 0;

private:
    const FieldConfig& config_;
    Vec2 a_;
    Vec2 d_;
};

void split_near_charges(const SegmentIntegrator& seg, double t0, double t1, int depth,
                        std::vector<std::pair<double, double>>& out) {
    if (depth < 200 && seg.near_charge(t0, t1)) {
        const double mid = 0.5 * (t0 + t1);
        split_near_charges(seg, t0, mid, depth + 1, out);
        split_near_charges(seg, mid, t1, depth + 1, out);
        return;
    }
    out.emplace_back(t0, t1);
}

QuadratureResult integrate_segment(const FieldConfig& config, Vec2 a, Vec2 b, double tol) {
    SegmentIntegrator seg(config, a, b);

    std::vector<std::pair<double, double>> initial;
    split_near_charges(seg, 0.0, 1.0, 0, initial);

    std::vector<Piece> heap;
    heap.reserve(initial.size() * 2);
    double total_error = 0.0;
    for (auto [t0, t1] : initial) {
        heap.push_back(seg.evaluate(t0, t1));
        total_error += heap.back().error;
    }
    std::make_heap(heap.begin(), heap.end(), PieceOrder{});

    std::vector<Piece> frozen;
    while (total_error > tol) {
        if (heap.empty() || heap.size() + frozen.size() > kMaxPiecesPerSegment) {
            std::ostringstream msg;
            msg << "line integral along " << point_str(a) << " -> " << point_str(b)
                << " did not reach tolerance " << tol << " (error " << total_error << ")";
            throw Error(ErrorCode::NonConvergence, msg.str());
        }
        std::pop_heap(heap.begin(), heap.end(), PieceOrder{});
        const Piece worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.t0 + worst.t1);
        if (!(mid > worst.t0 && mid < worst.t1)) {
            frozen.push_back(worst);
            continue;
        }
        const Piece left = seg.evaluate(worst.t0, mid);
        const Piece right = seg.evaluate(mid, worst.t1);
        total_error += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), PieceOrder{});
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), PieceOrder{});
    }

    // Sum in parameter order so the result does not depend on heap layout.
    heap.insert(heap.end(), frozen.begin(), frozen.end());
    std::sort(heap.begin(), heap.end(), [](const Piece& x, const Piece& y) { return x.t0 < y.t0; });
    QuadratureResult r;
    for (const auto& p : heap) {
        r.value += p.value;
        r.error_estimate += p.error;
    }
    r.evaluations = seg.evaluations;
    return r;
}

double path_scale(const PolylinePath& path) {
    const double d = path.diameter();
    return d > 0.0 ? d : 1.0;
}

}  // namespace

PolylinePath::PolylinePath(std::vector<Vec2> vertices, bool closed)
    : vertices_(std::move(vertices)), closed_(closed) {
    if (vertices_.size() < 2)
        throw Error(ErrorCode::InvalidArgument, "a path needs at least 2 vertices");
    if (closed_ && vertices_.size() < 3)
        throw Error(ErrorCode::InvalidArgument, "a closed path needs at least 3 vertices");
    for (const auto& v : vertices_)
        if (!is_finite(v)) throw Error(ErrorCode::InvalidArgument, "path vertex is not finite");
    if (closed_ && vertices_.front() == vertices_.back())
        throw Error(ErrorCode::InvalidArgument,
                    "closed path repeats its first vertex at the end; closure is implicit");
}

double PolylinePath::diameter() const noexcept {
    double best = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        for (std::size_t j = i + 1; j < vertices_.size(); ++j)
            best = std::max(best, norm(vertices_[i] - vertices_[j]));
    return best;
}

PolylinePath PolylinePath::reversed() const {
    std::vector<Vec2> r(vertices_.rbegin(), vertices_.rend());
    return PolylinePath(std::move(r), closed_);
}

int winding_number(const PolylinePath& path, Vec2 point) {
    if (!path.closed()) throw Error(ErrorCode::InvalidArgument, "winding_number requires a closed path");
    const double min_distance = kOnPathRelative * path_scale(path);
    double total_angle = 0.0;
    for (std::size_t i = 0; i < path.segment_count(); ++i) {
        const Vec2 a = path.segment_start(i);
        const Vec2 b = path.segment_end(i);
        if (segment_distance(point, a, b) <= min_distance)
            throw Error(ErrorCode::PointOnPath, "point " + point_str(point) + " lies on segment " +
                                                    std::to_string(i) + " of the path");
        const Vec2 ra = a - point;
        const Vec2 rb = b - point;
        total_angle += std::atan2(cross(ra, rb), dot(ra, rb));
    }
    return static_cast<int>(std::lround(total_angle / (2.0 * std::numbers::pi)));
}

QuadratureResult line_integral_dual(const PolylinePath& path, const FieldConfig& config, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be > 0");
    QuadratureResult total;
    if (config.empty()) return total;

    const std::size_t segments = path.segment_count();
    const double singular_distance = kOnPathRelative * path_scale(path);
    for (std::size_t i = 0; i < segments; ++i) {
        const Vec2 a = path.segment_start(i);
        const Vec2 b = path.segment_end(i);
        for (const auto& ch : config.charges()) {
            if (segment_distance(ch.position, a, b) <= singular_distance)
                throw Error(ErrorCode::SingularPath, "segment " + std::to_string(i) +
                                                         " passes through the line charge at " +
                                                         point_str(ch.position));
        }
        const auto r = integrate_segment(config, a, b, tol / static_cast<double>(segments));
        total.value += r.value;
        total.error_estimate += r.error_estimate;
        total.evaluations += r.evaluations;
    }
    return total;
}

PhaseResult ac_phase(const PolylinePath& path, const FieldConfig& config, double g, Species species,
                     double tol) {
    if (!path.closed())
        throw Error(ErrorCode::InvalidArgument,
                    "ac_phase requires a closed path; use fringe_shift for open arms");
    if (!std::isfinite(g)) throw Error(ErrorCode::InvalidArgument, "g must be finite");

    const auto loop = line_integral_dual(path, config, tol);
    PhaseResult r;
    r.species = species;
    // spinor: -g * loop, scalar: +g * loop; negating g keeps the pair exact negatives.
    r.phase = (species == Species::spinor ? -g : g) * loop.value;
    r.error_estimate = std::abs(g) * loop.error_estimate;
    r.windings.reserve(config.size());
    for (const auto& ch : config.charges()) r.windings.push_back(winding_number(path, ch.position));
    return r;
}

FringeResult fringe_shift(const PolylinePath& path_a, const PolylinePath& path_b, const FieldConfig& config,
                          double g, Species species, double tol) {
    if (path_a.closed() || path_b.closed())
        throw Error(ErrorCode::InvalidArgument, "fringe_shift takes two open arms");
    if (!std::isfinite(g)) throw Error(ErrorCode::InvalidArgument, "g must be finite");
    const double scale = std::max(path_scale(path_a), path_scale(path_b));
    const double match = kOnPathRelative * scale;
    if (norm(path_a.front() - path_b.front()) > match || norm(path_a.back() - path_b.back()) > match)
        throw Error(ErrorCode::EndpointMismatch,
                    "interferometer arms must share start and end points: arm a " + point_str(path_a.front()) +
                        " -> " + point_str(path_a.back()) + ", arm b " + point_str(path_b.front()) + " -> " +
                        point_str(path_b.back()));

    const auto la = line_integral_dual(path_a, config, 0.5 * tol);
    const auto lb = line_integral_dual(path_b, config, 0.5 * tol);
    const double factor = species == Species::spinor ? -g : g;

    FringeResult r;
    r.delta_phase = factor * la.value - factor * lb.value;
    const double c = std::cos(0.5 * r.delta_phase);
    r.contrast = c * c;
    r.error_estimate = std::abs(g) * (la.error_estimate + lb.error_estimate);
    return r;
}

}  // namespace acmdm
