#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "neighborly/bounds.hpp"
#include "neighborly/thresholds.hpp"
#include "neighborly/verification.hpp"

using namespace neighborly;

TEST_CASE("exponent is negative at alpha = 1.25, beta = 0.05") {
  CHECK(neighborliness_exponent(1.25, 0.05) < 0);
  // The beta -> 0 limit alpha (H((alpha-1)/alpha) - 1).
  const double alpha = 1.5;
  const double limit = alpha * (binary_entropy((alpha - 1) / alpha) - 1);
  CHECK(limit < 0);
  CHECK(neighborliness_exponent(alpha, 1e-12) == doctest::Approx(limit).epsilon(1e-9));
}

TEST_CASE("exponent domain") {
  CHECK_THROWS_AS(neighborliness_exponent(1.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(neighborliness_exponent(1.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(neighborliness_exponent(1.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(neighborliness_exponent(1.5, 1.2), std::domain_error);
}

TEST_CASE("exponent sign agrees with the product form, grid properties") {
  const auto r = check_exponent_properties();
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("rho_N_prime against independently computed roots") {
  // Roots computed independently by plain bisection of the exponent.
  const std::pair<double, double> reference[] = {
      {1.05, 0.15004}, {1.1, 0.11166},    {1.25, 0.052146}, {1.5, 0.014321},
      {1.75, 0.0023081}, {1.9, 2.65e-4}, {1.95, 5.58e-5},  {1.99, 1.676e-6},
  };
  for (const auto& [alpha, beta] : reference) {
    const auto p = rho_N_prime(alpha);
    INFO("alpha=" << alpha);
    CHECK(p.beta == doctest::Approx(beta).epsilon(2e-3));
    CHECK(std::abs(p.residual) <= 1e-12);
    CHECK(p.curve == Curve::rho_N_prime);
  }
  CHECK(rho_N_prime(1.25).beta >= 0.05);
  CHECK(rho_N_prime(1.99).beta < 0.01);
}

TEST_CASE("rho_N_prime keeps its sign scan") {
  const auto p = rho_N_prime(1.5);
  REQUIRE(p.scan.size() >= 2);
  CHECK(p.scan.front().first == doctest::Approx(1e-12));
  for (std::size_t i = 0; i + 1 < p.scan.size(); ++i) CHECK(p.scan[i].second < 0);
  CHECK(p.scan.back().second >= 0);
  CHECK(p.beta > p.scan[p.scan.size() - 2].first);
  CHECK(p.beta <= p.scan.back().first);
}

TEST_CASE("rho_N_prime domain") {
  CHECK_THROWS_AS(rho_N_prime(1.0), std::domain_error);
  CHECK_THROWS_AS(rho_N_prime(2.0), std::domain_error);
}

TEST_CASE("rho_D_prime") {
  CHECK(rho_D_prime(1.25).beta == 0.75);
  CHECK(rho_D_prime(1.5).beta == 0.5);
  CHECK(rho_D_prime(2 - 1e-6).beta == doctest::Approx(1e-6));
  CHECK(rho_D_prime(1.5).curve == Curve::rho_D_prime);
  CHECK_THROWS(rho_D_prime(2.5));
}

TEST_CASE("delta parameterization") {
  CHECK(rho_delta(0.5 + 1e-9, DeltaCurve::D).beta == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(rho_delta(0.8, DeltaCurve::D).beta == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(rho_delta(0.8, DeltaCurve::N).beta == rho_N_prime(1.25).beta);
  CHECK_THROWS(rho_delta(0.5, DeltaCurve::N));
  CHECK_THROWS(rho_delta(1.0, DeltaCurve::D));
}

TEST_CASE("threshold curve ordering and residuals") {
  const auto r = check_threshold_curve(1.05, 1.95, 19);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("curve endpoints approach zero near alpha = 2") {
  const auto rows = threshold_curve(1.5, 1.999, 5);
  CHECK(rows.back().density.beta == doctest::Approx(0.001));
  CHECK(rows.back().neighborly.beta < 1e-6);
  CHECK(rows.back().neighborly.beta > 0);
  CHECK_THROWS(threshold_curve(1.5, 1.4, 5));
  CHECK_THROWS(threshold_curve(1.2, 1.4, 1));
}

TEST_CASE("curve CSV and SVG") {
  const auto rows = threshold_curve(1.05, 1.95, 90);
  std::ostringstream csv;
  write_curve_csv(csv, rows, false);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "alpha,rho_N_prime,rho_D_prime,residual");
  std::size_t count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 90);

  std::ostringstream with_delta;
  write_curve_csv(with_delta, rows, true);
  CHECK(with_delta.str().substr(0, with_delta.str().find('\n')) ==
        "alpha,rho_N_prime,rho_D_prime,residual,delta,rho_N,rho_D");

  const std::string svg = curve_svg(rows, true);
  CHECK(svg.rfind("<svg", 0) == 0);
  std::size_t polylines = 0;
  for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++polylines;
  CHECK(polylines == 2);
  CHECK(svg.find("delta") != std::string::npos);
}
