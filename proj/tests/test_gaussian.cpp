#include <doctest.h>

#include <cmath>

#include "augustin/gaussian.hpp"
#include "augustin/mean.hpp"
#include "support.hpp"

using namespace augustin;
using testsupport::order_of;

namespace {

// Cell masses of N(mean, var) on a uniform partition of [lo, hi], tails
// folded into the end cells.  Independent of the library discretizer.
std::vector<double> gaussian_cells(double mean, double var, double lo,
                                   double hi, std::size_t cells) {
  auto cdf = [&](double z) {
    return 0.5 * std::erfc(-(z - mean) / std::sqrt(2.0 * var));
  };
  std::vector<double> r(cells);
  double width = (hi - lo) / cells;
  double prev = cdf(lo);
  for (std::size_t c = 0; c < cells; ++c) {
    double cur = cdf(lo + width * (c + 1));
    r[c] = cur - prev;
    prev = cur;
  }
  r[0] += cdf(lo);
  r[cells - 1] += 1.0 - prev;
  return r;
}

}  // namespace

TEST_CASE("center variance closed form") {
  // alpha = 1 collapses to sigma^2 + rho
  CHECK(scalar_center_variance(Order::one(), 1.0, 1.0) == doctest::Approx(2.0));
  CHECK(scalar_center_variance(Order::one(), 0.5, 2.0) ==
        doctest::Approx(2.5));

  // cubic residual across a parameter grid
  for (double a : {0.25, 0.5, 1.0, 2.0, 8.0}) {
    for (double s2 : {0.5, 1.0, 3.0}) {
      for (double rho : {0.1, 1.0, 5.0}) {
        double theta = scalar_center_variance(order_of(a), s2, rho);
        CHECK(theta > s2);
        CHECK(std::fabs(scalar_center_cubic_residual(order_of(a), s2, rho,
                                                     theta)) <= 1e-10);
      }
    }
  }

  // rho -> 0 limit is sigma^2 for alpha >= 1
  for (double a : {1.0, 2.0, 4.0})
    CHECK(scalar_center_variance(order_of(a), 1.0, 1e-12) ==
          doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS(scalar_center_variance(Order::one(), -1.0, 1.0));
  CHECK_THROWS(scalar_center_variance(Order::one(), 1.0, 0.0));
}

TEST_CASE("scalar capacity closed form") {
  CHECK(scalar_capacity(Order::one(), 1.0, 1.0) ==
        doctest::Approx(0.5 * std::log(2.0)));

  // continuity across the order-one seam
  for (double rho : {0.5, 1.0, 2.0}) {
    double at_one = scalar_capacity(Order::one(), 1.0, rho);
    CHECK(std::fabs(scalar_capacity(Order::of(1.0 + 1e-6), 1.0, rho) -
                    at_one) <= 1e-5);
    CHECK(std::fabs(scalar_capacity(Order::of(1.0 - 1e-6), 1.0, rho) -
                    at_one) <= 1e-5);
  }

  // increasing in rho, nonnegative
  for (double a : {0.5, 1.0, 2.0}) {
    double prev = 0.0;
    for (double rho : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      double c = scalar_capacity(order_of(a), 1.0, rho);
      CHECK(c > prev);
      prev = c;
    }
  }

  // capacity equals the conditional divergence to the center under the
  // matching-power Gaussian input: quadrature over the input
  for (double a : {0.5, 2.0}) {
    double s2 = 1.0, rho = 1.5;
    double theta = scalar_center_variance(order_of(a), s2, rho);
    double sum = 0.0;
    int n = 4001;
    double lo = -10.0 * std::sqrt(rho), hi = 10.0 * std::sqrt(rho);
    double width = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
      double x = lo + width * i;
      double wgt = std::exp(-x * x / (2.0 * rho)) /
                   std::sqrt(2.0 * M_PI * rho) * width;
      sum += wgt * gaussian_divergence(order_of(a), x, s2, theta);
    }
    CHECK(sum == doctest::Approx(scalar_capacity(order_of(a), s2, rho))
                     .epsilon(1e-6));
  }
}

TEST_CASE("gaussian divergence closed form") {
  CHECK(gaussian_divergence(Order::of(2.0), 0.0, 1.0, 1.0) ==
        doctest::Approx(0.0));
  CHECK(gaussian_divergence(Order::one(), 0.0, 1.0, 1.0) ==
        doctest::Approx(0.0));

  // alpha = 1 branch
  double d1 = gaussian_divergence(Order::one(), 1.5, 1.0, 2.0);
  CHECK(d1 == doctest::Approx((1.0 + 2.25 - 2.0) / 4.0 + 0.5 * std::log(2.0)));

  // degeneracy reported as infinite
  CHECK(std::isinf(gaussian_divergence(Order::of(4.0), 0.0, 1.0, 0.2)));

  // matches the discretized numerical divergence
  auto wrow = gaussian_cells(0.5, 1.0, -10.0, 10.0, 4000);
  auto qrow = gaussian_cells(0.0, 1.5, -10.0, 10.0, 4000);
  double numeric = renyi_divergence_raw(Order::of(2.0), wrow, qrow);
  CHECK(std::fabs(numeric -
                  gaussian_divergence(Order::of(2.0), 0.5, 1.0, 1.5)) <= 1e-4);
}

TEST_CASE("operator variance map") {
  // alpha = 1: rho + sigma^2 regardless of theta
  for (double theta : {0.5, 1.0, 3.0})
    CHECK(gaussian_operator_variance_map(Order::one(), 1.5, 1.0, theta) ==
          doctest::Approx(2.5));

  // hand value at alpha=2, theta=2, sigma2=1, rho=1
  CHECK(gaussian_operator_variance_map(Order::of(2.0), 1.0, 1.0, 2.0) ==
        doctest::Approx(16.0 / 9.0 + 2.0 / 3.0));

  // the center variance is a fixed point
  for (double a : {0.5, 1.0, 2.0, 8.0}) {
    for (double rho : {0.5, 2.0}) {
      double theta = scalar_center_variance(order_of(a), 1.0, rho);
      CHECK(std::fabs(gaussian_operator_variance_map(order_of(a), rho, 1.0,
                                                     theta) -
                      theta) <= 1e-9);
    }
  }
}

TEST_CASE("capacity derivative in rho") {
  CHECK(scalar_capacity_derivative(Order::one(), 1.0, 1.0) ==
        doctest::Approx(0.25));

  // the two printed forms agree
  for (double a : {0.5, 1.0, 2.0, 8.0})
    for (double rho : {0.2, 1.0, 3.0})
      CHECK(std::fabs(scalar_capacity_derivative(order_of(a), 1.0, rho) -
                      scalar_capacity_derivative_via_theta(order_of(a), 1.0,
                                                           rho)) <= 1e-10);

  // rho -> 0 limit alpha/(2 sigma^2)
  for (double a : {0.5, 1.0, 2.0})
    CHECK(scalar_capacity_derivative(order_of(a), 1.0, 1e-10) ==
          doctest::Approx(a / 2.0).epsilon(1e-4));

  // matches finite differences of the capacity, decreasing in rho
  for (double a : {0.5, 1.0, 2.0}) {
    auto f = [&](double r) { return scalar_capacity(order_of(a), 1.0, r); };
    double prev = std::numeric_limits<double>::infinity();
    for (double rho : {0.3, 0.8, 1.5, 3.0}) {
      double analytic = scalar_capacity_derivative(order_of(a), 1.0, rho);
      double numeric = testsupport::central_difference(f, rho, 1e-4);
      CHECK(std::fabs(analytic - numeric) <= 1e-6);
      CHECK(analytic < prev);
      CHECK(analytic > 0.0);
      CHECK(analytic < a / 2.0);
      prev = analytic;
    }
  }
}

TEST_CASE("al capacity closed form") {
  // indicator boundary
  for (double a : {0.5, 1.0, 2.0}) {
    double edge = a / 2.0;  // sigma2 = 1
    CHECK(scalar_al_capacity(order_of(a), 1.0, edge) == 0.0);
    CHECK(scalar_al_center_variance(order_of(a), 1.0, edge) ==
          doctest::Approx(1.0));
    CHECK(scalar_al_capacity(order_of(a), 1.0, edge * 2.0) == 0.0);
  }

  // alpha = 1, lambda = 1/4
  CHECK(scalar_al_capacity(Order::one(), 1.0, 0.25) ==
        doctest::Approx(0.25 - 0.5 * (1.0 - std::log(2.0))));

  // Fenchel direction: C^l = sup_rho [C(rho) - l rho] by golden section
  for (double a : {0.5, 1.0, 2.0}) {
    for (double lam : {0.1, 0.2, 0.4}) {
      if (lam >= a / 2.0) continue;
      auto g = [&](double rho) {
        return scalar_capacity(order_of(a), 1.0, rho) - lam * rho;
      };
      double lo = 1e-9, hi = 64.0;
      const double iphi = (std::sqrt(5.0) - 1.0) / 2.0;
      double c = hi - iphi * (hi - lo), d = lo + iphi * (hi - lo);
      double fc = g(c), fd = g(d);
      for (int it = 0; it < 200; ++it) {
        if (fc >= fd) {
          hi = d;
          d = c;
          fd = fc;
          c = hi - iphi * (hi - lo);
          fc = g(c);
        } else {
          lo = c;
          c = d;
          fc = fd;
          d = lo + iphi * (hi - lo);
          fd = g(d);
        }
      }
      CHECK(std::max(fc, fd) ==
            doctest::Approx(scalar_al_capacity(order_of(a), 1.0, lam))
                .epsilon(1e-6));
    }
  }
}

TEST_CASE("al capacity derivative") {
  CHECK(al_capacity_derivative(Order::one(), 1.0, 0.25) ==
        doctest::Approx(-1.0));
  CHECK(al_capacity_derivative(Order::of(2.0), 1.0, 1.5) == 0.0);

  for (double a : {0.5, 1.0, 2.0}) {
    for (double lam : {0.05, 0.15, 0.35}) {
      if (lam >= a / 2.0) continue;
      auto f = [&](double l) {
        return scalar_al_capacity(order_of(a), 1.0, l);
      };
      double analytic = al_capacity_derivative(order_of(a), 1.0, lam);
      double numeric = testsupport::central_difference(f, lam, 1e-5);
      CHECK(std::fabs(analytic - numeric) <= 1e-6);

      // inverse-function consistency: dC/drho at rho = -dC^l/dl equals l
      double rho_star = -analytic;
      CHECK(scalar_capacity_derivative(order_of(a), 1.0, rho_star) ==
            doctest::Approx(lam).epsilon(1e-6));
    }
  }
}

TEST_CASE("parallel waterfill") {
  // single channel takes everything
  WaterfillResult one = parallel_waterfill(Order::of(0.7), {1.0}, 2.0);
  CHECK(one.allocations[0] == doctest::Approx(2.0));
  CHECK(one.capacity ==
        doctest::Approx(scalar_capacity(Order::of(0.7), 1.0, 2.0)));

  // symmetric split
  WaterfillResult sym = parallel_waterfill(Order::of(2.0), {1.0, 1.0}, 2.0);
  CHECK(sym.allocations[0] == doctest::Approx(1.0));
  CHECK(sym.allocations[1] == doctest::Approx(1.0));
  CHECK(sym.capacity ==
        doctest::Approx(2.0 * scalar_capacity(Order::of(2.0), 1.0, 1.0)));

  // order one, noise (1,4), rho=1: all power to the better channel
  WaterfillResult skew = parallel_waterfill(Order::one(), {1.0, 4.0}, 1.0);
  CHECK(std::fabs(skew.allocations[0] - 1.0) <= 1e-9);
  CHECK(std::fabs(skew.allocations[1]) <= 1e-9);
  CHECK(skew.capacity == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-9));

  // KKT: active components share the multiplier, inactive fall below
  for (double a : {0.5, 1.0, 2.0}) {
    WaterfillResult res =
        parallel_waterfill(order_of(a), {0.5, 1.0, 3.0}, 2.0);
    double total = 0.0;
    for (double r : res.allocations) total += r;
    CHECK(total == doctest::Approx(2.0).epsilon(1e-9));
    const double s2s[] = {0.5, 1.0, 3.0};
    for (std::size_t t = 0; t < 3; ++t) {
      if (res.allocations[t] > 1e-12) {
        CHECK(scalar_capacity_derivative(order_of(a), s2s[t],
                                         res.allocations[t]) ==
              doctest::Approx(res.lambda_star).epsilon(1e-8));
        CHECK(res.center_variances[t] >= s2s[t]);
      } else {
        CHECK(a / (2.0 * s2s[t]) <= res.lambda_star + 1e-9);
      }
    }
    // allocations do not increase with noise
    CHECK(res.allocations[0] >= res.allocations[1] - 1e-12);
    CHECK(res.allocations[1] >= res.allocations[2] - 1e-12);
  }
}

TEST_CASE("discretizer") {
  auto [ch, cost] = discretize_scalar_gaussian(1.0, {0.0, 0.0, 1.0}, -8.0,
                                               8.0, 1600);
  CHECK(ch.num_inputs() == 3);
  CHECK(ch.num_outputs() == 1600);
  CHECK(cost.cost(2)[0] == doctest::Approx(1.0));

  // identical input points give identical rows
  for (std::size_t y = 0; y < 1600; ++y) CHECK(ch.at(0, y) == ch.at(1, y));

  // symmetric input: cell-mean zero
  double mean = 0.0;
  for (std::size_t y = 0; y < 1600; ++y) {
    double mid = -8.0 + 16.0 * (y + 0.5) / 1600.0;
    mean += mid * ch.at(0, y);
  }
  CHECK(std::fabs(mean) <= 1e-6);

  // point input reproduces the closed-form divergence to N(0, theta)
  auto qrow = gaussian_cells(0.0, 1.5, -8.0, 8.0, 1600);
  double numeric = renyi_divergence_raw(Order::of(2.0), ch.row(2), qrow);
  CHECK(std::fabs(numeric -
                  gaussian_divergence(Order::of(2.0), 1.0, 1.0, 1.5)) <= 1e-4);

  CHECK_THROWS(discretize_scalar_gaussian(1.0, {0.0}, 2.0, -2.0, 100));
  CHECK_THROWS(discretize_scalar_gaussian(1.0, {0.0}, -2.0, 2.0, 1));
}

TEST_CASE("analytic-numeric bridge at moderate resolution") {
  // quantized N(0,1) input on a coarse grid; the Augustin information of
  // the discretized channel approximates the closed-form value
  const int npoints = 41;
  std::vector<double> points(npoints);
  for (int i = 0; i < npoints; ++i) points[i] = -4.0 + 8.0 * i / (npoints - 1);
  auto [ch, cost] = discretize_scalar_gaussian(1.0, points, -8.0, 8.0, 400);

  std::vector<double> pw(points.size());
  double rho = 1.0, s = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    pw[i] = std::exp(-points[i] * points[i] / (2.0 * rho));
    s += pw[i];
  }
  for (double& v : pw) v /= s;
  Prob p(pw);

  for (double a : {0.5, 1.0, 2.0}) {
    double numeric = augustin_information(order_of(a), p, ch);
    double theta = scalar_center_variance(order_of(a), 1.0, rho);
    double crd = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
      crd += p[i] * gaussian_divergence(order_of(a), points[i], 1.0, theta);
    CHECK(std::fabs(numeric - crd) <= 5e-3);
  }
}
