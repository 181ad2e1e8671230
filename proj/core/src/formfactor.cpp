#include "acmdm/formfactor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "acmdm/error.hpp"

namespace acmdm {

namespace {

constexpr double kGuardThreshold = 1e-9;
constexpr int kGuardU = 64;  // u = i / 64, i = 0..64
constexpr int kGuardV = 64;  // v = j / 64, j = 1..64
constexpr int kGuardCornerMin = 7;
constexpr int kGuardCornerMax = 40;

bool finite_all(std::initializer_list<double> xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// Mass pair as seen by one Yukawa term: `heavy` multiplies y in the
// numerator, `corner` is the mass that survives at x = y = 0.
struct TermMasses {
    double heavy;
    double corner;
};

TermMasses term_masses(const YukawaParams& p, YukawaTerm term) {
    return term == YukawaTerm::first ? TermMasses{p.m1_hat, p.m2_hat} : TermMasses{p.m2_hat, p.m1_hat};
}

// The x(y-x)q^2 part is subtracted from y^2 first in both models so that the
// reduction limit produces bit-identical denominators.
double susy_denominator(double x, double y, const SusyParams& p) {
    return (y * y - x * (y - x) * p.q_hat2) + (1.0 - x) * p.mcs_hat2;
}

double yukawa_denominator(double x, double y, double q_hat2, TermMasses m) {
    const double mass_split = m.heavy * m.heavy - m.corner * m.corner;
    return (y * y - x * (y - x) * q_hat2) + m.corner * m.corner - y * (1.0 - mass_split);
}

template <class ScaledDenominator>
void guard_scaled(ScaledDenominator&& scaled, const std::string& what) {
    double min_value = std::numeric_limits<double>::infinity();
    double at_u = 0.0, at_v = 0.0;
    auto probe = [&](double u, double v) {
        const double d = scaled(u, v);
        if (!(d > min_value)) {
            min_value = d;
            at_u = u;
            at_v = v;
        }
    };
    for (int i = 0; i <= kGuardU; ++i) {
        const double u = double(i) / kGuardU;
        for (int j = 1; j <= kGuardV; ++j) probe(u, double(j) / kGuardV);
        for (int k = kGuardCornerMin; k <= kGuardCornerMax; ++k) probe(u, std::ldexp(1.0, -k));
    }
    if (!(min_value > kGuardThreshold)) {
        std::ostringstream msg;
        msg << what << ": denominator not positive on the integration domain (scaled minimum "
            << min_value << " at x = " << at_u * at_v << ", y = " << at_v
            << "); kinematics above threshold";
        throw Error(ErrorCode::DomainError, msg.str());
    }
}

}  // namespace

void SusyParams::validate() const {
    if (!finite_all({q_hat2, mcs_hat2}))
        throw Error(ErrorCode::InvalidArgument, "susy parameters must be finite");
    if (mcs_hat2 < 0.0)
        throw Error(ErrorCode::InvalidArgument, "mcs_hat2 must be >= 0, got " + fmt(mcs_hat2));
}

void YukawaParams::validate() const {
    if (!finite_all({q_hat2, m1_hat, m2_hat, e1, e2, a_abs2}))
        throw Error(ErrorCode::InvalidArgument, "yukawa parameters must be finite");
    if (!(m1_hat > 0.0))
        throw Error(ErrorCode::InvalidArgument, "m1_hat must be > 0, got " + fmt(m1_hat));
    if (m2_hat < 0.0)
        throw Error(ErrorCode::InvalidArgument, "m2_hat must be >= 0, got " + fmt(m2_hat));
    if (a_abs2 < 0.0)
        throw Error(ErrorCode::InvalidArgument, "a_abs2 must be >= 0, got " + fmt(a_abs2));
}

YukawaParams YukawaParams::swapped() const {
    YukawaParams s = *this;
    std::swap(s.m1_hat, s.m2_hat);
    std::swap(s.e1, s.e2);
    return s;
}

double susy_integrand(double x, double y, const SusyParams& params) {
    const double d = susy_denominator(x, y, params);
    if (!(d > 0.0))
        throw Error(ErrorCode::DomainError,
                    "susy denominator not positive at (" + fmt(x) + ", " + fmt(y) + ")");
    return y / (d * std::sqrt(d));
}

double yukawa_integrand(double x, double y, const YukawaParams& params, YukawaTerm term) {
    const TermMasses m = term_masses(params, term);
    const double d = yukawa_denominator(x, y, params.q_hat2, m);
    if (!(d > 0.0))
        throw Error(ErrorCode::DomainError,
                    "yukawa denominator not positive at (" + fmt(x) + ", " + fmt(y) + ")");
    const double numerator = (m.heavy + m.corner) * y - m.corner;
    return numerator / (d * std::sqrt(d));
}

void check_denominator_positive(const SusyParams& params) {
    guard_scaled(
        [&](double u, double v) { return susy_denominator(u * v, v, params) / (v * v); },
        "susy (q_hat2 = " + fmt(params.q_hat2) + ", mcs_hat2 = " + fmt(params.mcs_hat2) + ")");
}

void check_denominator_positive(const YukawaParams& params, YukawaTerm term) {
    const TermMasses m = term_masses(params, term);
    guard_scaled(
        [&](double u, double v) { return yukawa_denominator(u * v, v, params.q_hat2, m) / (v * v); },
        std::string("yukawa ") + (term == YukawaTerm::first ? "first" : "swapped") +
            " term (q_hat2 = " + fmt(params.q_hat2) + ", masses " + fmt(m.heavy) + ", " +
            fmt(m.corner) + ")");
}

void check_infrared_finite(const SusyParams& params) {
    if (params.mcs_hat2 == 0.0)
        throw Error(ErrorCode::InfraredDivergent,
                    "susy form factor is logarithmically infrared divergent without a "
                    "Chern-Simons mass (q_hat2 = " + fmt(params.q_hat2) +
                        ", mcs_hat2 = 0): the integrand behaves as 1/v at the x = y = 0 corner");
}

void check_infrared_finite(const YukawaParams& params, YukawaTerm term) {
    const TermMasses m = term_masses(params, term);
    if (m.corner == 0.0 && m.heavy == 1.0)
        throw Error(ErrorCode::InfraredDivergent,
                    std::string("yukawa ") + (term == YukawaTerm::first ? "first" : "swapped") +
                        " term is logarithmically infrared divergent (massless fermion with the "
                        "other mass equal to m_phi, q_hat2 = " + fmt(params.q_hat2) + ")");
}

FormFactorResult susy_form_factor(const SusyParams& params, double tol,
                                  const TriangleQuadratureOptions& options) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be > 0");
    params.validate();
    check_denominator_positive(params);
    check_infrared_finite(params);

    const auto q = integrate_triangle(
        [&params](double x, double y) { return susy_integrand(x, y, params); }, tol, options);
    return {q.value, q.error_estimate, q.evaluations, kSusyPrefactor};
}

FormFactorResult yukawa_form_factor(const YukawaParams& params, double tol,
                                    const TriangleQuadratureOptions& options) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be > 0");
    params.validate();

    FormFactorResult out{0.0, 0.0, 0, kYukawaPrefactor};
    const double charge_sum = std::abs(params.e1) + std::abs(params.e2);
    if (charge_sum == 0.0) return out;

    const double term_tol = tol / charge_sum;
    for (const auto& [term, charge] : {std::pair{YukawaTerm::first, params.e1},
                                      std::pair{YukawaTerm::swapped, params.e2}}) {
        if (charge == 0.0) continue;
        check_denominator_positive(params, term);
        check_infrared_finite(params, term);
        const auto q = integrate_triangle(
            [&params, term](double x, double y) { return yukawa_integrand(x, y, params, term); },
            term_tol, options);
        out.integral += charge * q.value;
        out.error_estimate += std::abs(charge) * q.error_estimate;
        out.evaluations += q.evaluations;
    }
    return out;
}

YukawaParams reduction_params(double q_hat2) {
    YukawaParams p;
    p.q_hat2 = q_hat2;
    p.m1_hat = 1.0;
    p.m2_hat = 0.0;
    p.e1 = 1.0;
    p.e2 = 0.0;
    return p;
}

namespace {

void check_spacelike_grid(std::span<const double> grid, const char* what) {
    if (grid.empty()) throw Error(ErrorCode::InvalidArgument, std::string(what) + ": empty q_hat2 grid");
    for (double q : grid)
        if (!(q < 0.0) || !std::isfinite(q))
            throw Error(ErrorCode::InvalidArgument,
                        std::string(what) + ": q_hat2 values must be finite and negative, got " + fmt(q));
}

}  // namespace

double reduction_check(std::span<const double> q_hat2_grid, double tol, double m1_hat) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be > 0");
    check_spacelike_grid(q_hat2_grid, "reduction_check");
    double worst = 0.0;
    for (double q : q_hat2_grid) {
        YukawaParams yp = reduction_params(q);
        yp.m1_hat = m1_hat;
        const auto yukawa = yukawa_form_factor(yp, tol);
        const auto susy = susy_form_factor({q, 0.0}, tol);
        worst = std::max(worst, std::abs(yukawa.integral - susy.integral));
    }
    return worst;
}

double reduction_pointwise_deviation(std::span<const double> q_hat2_grid, std::uint64_t samples,
                                     std::uint64_t seed, double m1_hat) {
    check_spacelike_grid(q_hat2_grid, "reduction_pointwise_deviation");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (double q : q_hat2_grid) {
        YukawaParams yp = reduction_params(q);
        yp.m1_hat = m1_hat;
        const SusyParams sp{q, 0.0};
        for (std::uint64_t i = 0; i < samples; ++i) {
            double a = unit(rng), b = unit(rng);
            if (a > b) std::swap(a, b);
            if (b == 0.0) continue;
            const double dev = std::abs(yukawa_integrand(a, b, yp, YukawaTerm::first) - susy_integrand(a, b, sp));
            worst = std::max(worst, dev);
        }
    }
    return worst;
}

LinearFit fit_line(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.empty())
        throw Error(ErrorCode::InvalidArgument, "fit_line: need matching, non-empty samples");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    LinearFit fit;
    if (sxx == 0.0) {
        fit.intercept = my;
        return fit;
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy > 0.0) fit.r_squared = (sxy * sxy) / (sxx * syy);
    return fit;
}

IrScanResult ir_scan(std::span<const double> q_hat2_list, double mcs_hat2, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be > 0");
    check_spacelike_grid(q_hat2_list, "ir_scan");
    for (std::size_t i = 1; i < q_hat2_list.size(); ++i)
        if (!(q_hat2_list[i] > q_hat2_list[i - 1]))
            throw Error(ErrorCode::InvalidArgument, "ir_scan: q_hat2 list must be strictly increasing");

    IrScanResult scan;
    std::vector<double> log_inv, values;
    for (double q : q_hat2_list) {
        auto r = susy_form_factor({q, mcs_hat2}, tol);
        log_inv.push_back(-std::log(std::abs(q)));
        values.push_back(r.integral);
        scan.rows.push_back({q, std::move(r)});
    }
    if (scan.rows.size() >= 2) scan.fit = fit_line(log_inv, values);
    return scan;
}

}  // namespace acmdm
