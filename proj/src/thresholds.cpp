#include "neighborly/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

#include "neighborly/bounds.hpp"
#include "neighborly/errors.hpp"
#include "neighborly/svg_plot.hpp"

namespace neighborly {
namespace {

constexpr double kScanOrigin = 1e-12;
constexpr std::size_t kScanPoints = 400;

void require_alpha(double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0)) throw std::domain_error("threshold: alpha must lie in (1, 2)");
}

}  // namespace

const char* to_string(Curve c) { return c == Curve::rho_N_prime ? "rho_N_prime" : "rho_D_prime"; }

double neighborliness_exponent(double alpha, double beta) {
  if (!(alpha > 1.0)) throw std::domain_error("neighborliness_exponent: need alpha > 1");
  if (!(beta > 0.0 && beta < alpha)) throw std::domain_error("neighborliness_exponent: need 0 < beta < alpha");
  const double ratio = (alpha - 1.0) / (alpha - beta);
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw std::domain_error("neighborliness_exponent: (alpha-1)/(alpha-beta) must lie in (0,1)");
  }
  return alpha * binary_entropy(beta / alpha) + (alpha - beta) * (binary_entropy(ratio) - 1.0);
}

ThresholdPoint rho_N_prime(double alpha, double tol) {
  require_alpha(alpha);
  ThresholdPoint point;
  point.alpha = alpha;
  point.curve = Curve::rho_N_prime;

  // Geometric scan; stays strictly below beta = 1 where the ratio leaves (0,1).
  const double cap = std::min(1.0, 2.0 - alpha + 0.2) * (1.0 - 1e-9);
  const double growth = std::pow(cap / kScanOrigin, 1.0 / static_cast<double>(kScanPoints - 1));
  double lo = 0, hi = 0;
  bool bracketed = false;
  double beta = kScanOrigin;
  for (std::size_t i = 0; i < kScanPoints; ++i, beta *= growth) {
    const double b = std::min(beta, cap);
    const double value = neighborliness_exponent(alpha, b);
    point.scan.emplace_back(b, value);
    if (value >= 0.0) {
      if (i == 0) break;
      lo = point.scan[i - 1].first;
      hi = b;
      bracketed = true;
      break;
    }
  }
  if (!bracketed) {
    throw NoSignChange(point.scan, "rho_N_prime: no sign change of c(alpha, .) on the scan grid for alpha=" +
                                       std::to_string(alpha));
  }

  auto f = [alpha](double b) { return neighborliness_exponent(alpha, b); };
  const auto [a, b] = boost::math::tools::bisect(f, lo, hi, boost::math::tools::eps_tolerance<double>(
                                                                std::numeric_limits<double>::digits - 1));
  const double fa = f(a), fb = f(b);
  point.beta = std::abs(fa) <= std::abs(fb) ? a : b;
  point.residual = std::abs(fa) <= std::abs(fb) ? fa : fb;
  if (!(std::abs(point.residual) <= tol)) {
    throw std::runtime_error("rho_N_prime: residual " + std::to_string(point.residual) + " exceeds tolerance");
  }
  return point;
}

ThresholdPoint rho_D_prime(double alpha) {
  require_alpha(alpha);
  ThresholdPoint point;
  point.alpha = alpha;
  point.beta = 2.0 - alpha;
  point.curve = Curve::rho_D_prime;
  point.residual = neighborliness_exponent(alpha, point.beta);
  return point;
}

ThresholdPoint rho_delta(double delta, DeltaCurve which) {
  if (!(delta > 0.5 && delta < 1.0)) throw std::domain_error("rho_delta: delta must lie in (1/2, 1)");
  const double alpha = 1.0 / delta;
  return which == DeltaCurve::N ? rho_N_prime(alpha) : rho_D_prime(alpha);
}

std::vector<CurveRow> threshold_curve(double alpha_min, double alpha_max, std::size_t steps) {
  if (!(alpha_min > 1.0 && alpha_min < alpha_max && alpha_max < 2.0)) {
    throw std::domain_error("threshold_curve: need 1 < alpha_min < alpha_max < 2");
  }
  if (steps < 2) throw std::domain_error("threshold_curve: need steps >= 2");
  std::vector<CurveRow> rows;
  rows.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double alpha = alpha_min + (alpha_max - alpha_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
    CurveRow row{rho_N_prime(alpha), rho_D_prime(alpha)};
    if (!(row.neighborly.beta < row.density.beta)) {
      throw std::logic_error("threshold_curve: rho_N' >= rho_D' at alpha=" + std::to_string(alpha));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows, bool with_delta) {
  out << "alpha,rho_N_prime,rho_D_prime,residual";
  if (with_delta) out << ",delta,rho_N,rho_D";
  out << '\n';
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.15g,%.15g,%.15g,%.6e", r.neighborly.alpha, r.neighborly.beta, r.density.beta,
                  r.neighborly.residual);
    out << buf;
    if (with_delta) {
      std::snprintf(buf, sizeof buf, ",%.15g,%.15g,%.15g", 1.0 / r.neighborly.alpha, r.neighborly.beta,
                    r.density.beta);
      out << buf;
    }
    out << '\n';
  }
}

std::string curve_svg(const std::vector<CurveRow>& rows, bool against_delta) {
  PlotSeries lower{against_delta ? "rho_N(delta)" : "rho_N'(alpha)", {}, true, "#d62728"};
  PlotSeries upper{against_delta ? "rho_D(delta)" : "rho_D'(alpha)", {}, false, "#1f77b4"};
  for (const auto& r : rows) {
    const double x = against_delta ? 1.0 / r.neighborly.alpha : r.neighborly.alpha;
    lower.points.emplace_back(x, r.neighborly.beta);
    upper.points.emplace_back(x, r.density.beta);
  }
  if (against_delta) {
    std::reverse(lower.points.begin(), lower.points.end());
    std::reverse(upper.points.begin(), upper.points.end());
  }
  return line_plot_svg({lower, upper}, against_delta ? "Thresholds vs delta" : "Thresholds vs alpha",
                       against_delta ? "delta = d/n" : "alpha = n/d", "rho");
}

}  // namespace neighborly
