#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace neighborly {

enum class Curve { rho_N_prime, rho_D_prime };

const char* to_string(Curve c);

struct ThresholdPoint {
  double alpha = 0;
  double beta = 0;
  /// Exponent c(alpha, beta) at the returned point.
  double residual = 0;
  Curve curve = Curve::rho_N_prime;
  /// (beta, c(alpha, beta)) pairs evaluated while bracketing the root.
  std::vector<std::pair<double, double>> scan;
};

/// c(alpha, beta) = alpha H(beta/alpha) + (alpha - beta)(H((alpha-1)/(alpha-beta)) - 1).
/// Negative c means subsets of size ~beta*d are faces with probability -> 1.
/// Domain: alpha > 1, 0 < beta < alpha, (alpha-1)/(alpha-beta) in (0,1).
double neighborliness_exponent(double alpha, double beta);

/// Smallest root in beta of c(alpha, .) above the scan origin, 1 < alpha < 2.
/// Throws NoSignChange (carrying the scan) if none is bracketed, and
/// std::runtime_error if bisection cannot meet `tol` on the residual.
ThresholdPoint rho_N_prime(double alpha, double tol = 1e-12);

/// Face-density threshold 2 - alpha.
ThresholdPoint rho_D_prime(double alpha);

enum class DeltaCurve { N, D };

/// delta = 1/alpha reparameterization; 1/2 < delta < 1.
ThresholdPoint rho_delta(double delta, DeltaCurve which);

struct CurveRow {
  ThresholdPoint neighborly;
  ThresholdPoint density;
};

/// Evenly spaced alpha grid (endpoints included). Enforces rho_N' < rho_D'.
std::vector<CurveRow> threshold_curve(double alpha_min, double alpha_max, std::size_t steps);

/// Columns alpha,rho_N_prime,rho_D_prime,residual[,delta,rho_N,rho_D].
void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows, bool with_delta);

/// Two-curve line plot (rho_N dashed, rho_D solid) against alpha, or against
/// delta = 1/alpha when `against_delta`.
std::string curve_svg(const std::vector<CurveRow>& rows, bool against_delta);

}  // namespace neighborly
