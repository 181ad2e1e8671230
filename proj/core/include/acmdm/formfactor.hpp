#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "acmdm/quadrature.hpp"

namespace acmdm {

// One-loop anomalous magnetic-moment form factors in 2+1 dimensions.
//
// Every result is the dimensionless Feynman-parameter double integral I over
// {0 <= x <= y <= 1}; the physical coupling is g = prefactor * I, with the
// prefactor reported as text and never multiplied in.
//
// Supersymmetric model (Chern-Simons mass optional):
//   I = int dx int dy  y / (y^2 + (1-x) Mcs^2/m^2 - x(y-x) q^2/m^2)^{3/2}
//   g = e^3/(16 pi m^2) * I
//
// Yukawa model, L = a psi1-bar psi2 phi + h.c.:
//   I = e1 * I_first + e2 * I_swapped
//   I_first = int dx int dy [(m1+m2) y - m2] / [y^2 - x(y-x) q^2 + m2^2 - y(1 - (m1^2 - m2^2))]^{3/2}
//   (all masses in units of m_phi), I_swapped is I_first with m1 <-> m2.
//   g = |a|^2/(16 pi^2 m_phi^2) * I
//
// Kinematics with q^2 > 0 are timelike; the integrals exist only below the
// pair-production threshold, which is enforced by check_denominator_positive.

inline constexpr const char* kSusyPrefactor = "e^3/(16*pi*m^2)";
inline constexpr const char* kYukawaPrefactor = "|a|^2/(16*pi^2*m_phi^2) [charges e1, e2 included in integral]";

struct SusyParams {
    double q_hat2 = 0.0;    // q^2 / m^2
    double mcs_hat2 = 0.0;  // M_cs^2 / m^2, >= 0

    // Throws InvalidArgument for non-finite values or mcs_hat2 < 0.
    void validate() const;
};

struct YukawaParams {
    double q_hat2 = 0.0;  // q^2 / m_phi^2
    double m1_hat = 1.0;  // m1 / m_phi, > 0
    double m2_hat = 0.0;  // m2 / m_phi, >= 0
    double e1 = 1.0;      // charge of psi1, mass^{1/2}
    double e2 = 0.0;      // charge of psi2, mass^{1/2}
    double a_abs2 = 1.0;  // |a|^2, mass; only enters the symbolic prefactor

    void validate() const;
    [[nodiscard]] YukawaParams swapped() const;
};

enum class YukawaTerm { first, swapped };

struct FormFactorResult {
    double integral = 0.0;
    double error_estimate = 0.0;
    std::uint64_t evaluations = 0;
    std::string prefactor;
};

double susy_integrand(double x, double y, const SusyParams& params);
double yukawa_integrand(double x, double y, const YukawaParams& params, YukawaTerm term);

/// Rejects kinematics where the denominator can vanish inside the triangle.
///
/// The scaled denominator D(u v, v) / v^2 is minimised over a 64 x 64 grid of
/// the (u, v) square plus a geometric refinement v = 2^-k towards the corner.
/// Dividing by v^2 keeps massless corners (D ~ v^2) from tripping the guard;
/// a minimum <= 1e-9 raises DomainError.
void check_denominator_positive(const SusyParams& params);
void check_denominator_positive(const YukawaParams& params, YukawaTerm term);

/// Throws InfraredDivergent when the integrand behaves as 1/v at the (0,0)
/// corner after the substitution, i.e. the integral does not exist.
///
/// Susy: any mcs_hat2 == 0. The integrand times Jacobian is then exactly
/// (1/v) (1 - u(1-u) q^2)^{-3/2}, so q^2 does not regulate the corner.
/// Yukawa term: corner mass (m2 for the first term) exactly 0 together with
/// the other mass exactly m_phi.
void check_infrared_finite(const SusyParams& params);
void check_infrared_finite(const YukawaParams& params, YukawaTerm term);

FormFactorResult susy_form_factor(const SusyParams& params, double tol,
                                  const TriangleQuadratureOptions& options = {});

// Terms whose charge is exactly zero are skipped. Each remaining term is
// integrated to tol / (|e1| + |e2|).
FormFactorResult yukawa_form_factor(const YukawaParams& params, double tol,
                                    const TriangleQuadratureOptions& options = {});

/// Yukawa parameters in which the Yukawa integral reduces to the susy one
/// with no Chern-Simons mass: m1 = m_phi, m2 = 0, e1 = 1, e2 = 0.
YukawaParams reduction_params(double q_hat2);

/// Max |I_yukawa(reduction_params(q)) - I_susy(q, 0)| over the grid. Each q
/// must be negative. m1_hat overrides the reduction mass so a perturbed limit
/// can be checked. Form-factor errors propagate.
double reduction_check(std::span<const double> q_hat2_grid, double tol, double m1_hat = 1.0);

/// Max |yukawa_integrand - susy_integrand| over `samples` uniform points of
/// the triangle for each grid value (no integration).
double reduction_pointwise_deviation(std::span<const double> q_hat2_grid, std::uint64_t samples,
                                     std::uint64_t seed, double m1_hat = 1.0);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::optional<double> r_squared;  // empty when the fit is degenerate
};

struct IrScanRow {
    double q_hat2 = 0.0;
    FormFactorResult result;
};

struct IrScanResult {
    std::vector<IrScanRow> rows;
    std::optional<LinearFit> fit;  // fit of I against ln(1/|q^2|); empty for < 2 points
};

/// Least-squares line through (xs, ys). r_squared is empty when the abscissae
/// or the ordinates have zero spread.
LinearFit fit_line(std::span<const double> xs, std::span<const double> ys);

/// Susy integral along a spacelike sweep, fitted against ln(1/|q^2|).
/// Requires every q^2 < 0 and the list strictly increasing.
IrScanResult ir_scan(std::span<const double> q_hat2_list, double mcs_hat2, double tol);

}  // namespace acmdm
