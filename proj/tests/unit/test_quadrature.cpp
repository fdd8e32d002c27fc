#include <doctest.h>

#include <cmath>
#include <numeric>

#include "splitstep/errors.hpp"
#include "splitstep/quadrature.hpp"

using namespace splitstep;

TEST_CASE("panel weights are the classical Newton-Cotes sets") {
  auto t = QuadRule::trapezoid().panel_weights();
  CHECK(t.size() == 2);
  CHECK(t[0] == 0.5);

  auto s = QuadRule::simpson().panel_weights();
  REQUIRE(s.size() == 3);
  CHECK(s[0] == doctest::Approx(1.0 / 6.0));
  CHECK(s[1] == doctest::Approx(4.0 / 6.0));

  auto b = QuadRule::bode().panel_weights();
  REQUIRE(b.size() == 5);
  CHECK(b[0] * 90 == doctest::Approx(7));
  CHECK(b[1] * 90 == doctest::Approx(32));
  CHECK(b[2] * 90 == doctest::Approx(12));

  CHECK(QuadRule::trapezoid().nominal_order() == 2);
  CHECK(QuadRule::simpson().nominal_order() == 3);
  CHECK(QuadRule::bode().nominal_order() == 4);
}

TEST_CASE("rule names") {
  CHECK(QuadRule::parse("Trapezoid") == QuadRule::trapezoid());
  CHECK(QuadRule::parse("bdf3") == QuadRule::simpson());
  CHECK(QuadRule::parse("bode") == QuadRule::bode());
  CHECK_FALSE(QuadRule::parse("xyz").has_value());
  CHECK(QuadRule::simpson().label() == "BDF3/Simpson");
}

// Each rule integrates polynomials up to its panel degree exactly, at every
// node of the grid, partial panels included.
TEST_CASE("property: cumulative weights are exact on low-degree polynomials") {
  for (const QuadRule rule : {QuadRule::trapezoid(), QuadRule::simpson(), QuadRule::bode()}) {
    const int p = rule.panel_width();
    const int exact_degree = p;
    for (int grid : {p, 5, 10, 13}) {
      if (grid < p) continue;
      for (int m = 0; m <= grid; ++m) {
        const auto w = cumulative_weights(rule, m, grid);
        CHECK(static_cast<int>(w.size()) <= grid + 1);
        for (int deg = 0; deg <= exact_degree; ++deg) {
          double quad = 0.0;
          for (std::size_t j = 0; j < w.size(); ++j) quad += w[j] * std::pow(static_cast<double>(j), deg);
          const double exact = std::pow(static_cast<double>(m), deg + 1) / (deg + 1);
          CHECK(quad == doctest::Approx(exact).epsilon(1e-12).scale(1.0));
        }
      }
    }
  }
}

TEST_CASE("grid too coarse for the rule") {
  CHECK_THROWS_AS(cumulative_weights(QuadRule::bode(), 1, 3), GridIncompatible);
  CHECK_THROWS_AS(cumulative_weights(QuadRule::simpson(), 1, 1), GridIncompatible);
  CHECK_NOTHROW(cumulative_weights(QuadRule::trapezoid(), 1, 1));
  CHECK_THROWS_AS(cumulative_weights(QuadRule::trapezoid(), 4, 3), GridIncompatible);
}

TEST_CASE("interpolatory weights reproduce the full panel") {
  const auto w = interpolatory_weights(4, 0.0, 4.0);
  const auto b = QuadRule::bode().panel_weights();
  for (int k = 0; k <= 4; ++k) CHECK(w[k] == doctest::Approx(4.0 * b[k]).epsilon(1e-13));
}

TEST_CASE("integrate_samples converges at the rule order") {
  // int_0^1 e^x dx = e - 1
  const auto err = [](const QuadRule& rule, int n) {
    std::vector<double> f(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) f[j] = std::exp(static_cast<double>(j) / n);
    return std::abs(integrate_samples(rule, f, 1.0 / n) - (std::exp(1.0) - 1.0));
  };
  CHECK(std::log2(err(QuadRule::trapezoid(), 16) / err(QuadRule::trapezoid(), 32)) ==
        doctest::Approx(2.0).epsilon(0.02));
  CHECK(std::log2(err(QuadRule::simpson(), 16) / err(QuadRule::simpson(), 32)) ==
        doctest::Approx(4.0).epsilon(0.02));
  CHECK(std::log2(err(QuadRule::bode(), 8) / err(QuadRule::bode(), 16)) ==
        doctest::Approx(6.0).epsilon(0.03));
}
