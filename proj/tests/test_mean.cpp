#include <doctest.h>

#include <cmath>
#include <random>

#include "augustin/mean.hpp"
#include "support.hpp"

using namespace augustin;
using testsupport::order_of;

namespace {

const double kOrders[] = {0.25, 0.5, 0.9, 1.5, 2.0, 3.0};

Channel bsc(double delta) {
  return Channel({{1.0 - delta, delta}, {delta, 1.0 - delta}});
}

}  // namespace

TEST_CASE("order_one_mean") {
  Channel w = bsc(0.1);
  CHECK(total_variation(order_one_mean(Prob({1.0, 0.0}), w), w.row_prob(0)) ==
        0.0);
  CHECK(total_variation(order_one_mean(uniform_prob(2), w), uniform_prob(2)) <
        1e-15);
  Channel id({{1.0, 0.0}, {0.0, 1.0}});
  Prob p({0.3, 0.7});
  CHECK(total_variation(order_one_mean(p, id), p) == 0.0);
}

TEST_CASE("power_mean_measure") {
  Channel w = bsc(0.1);
  Prob p({0.3, 0.7});
  Measure m1 = power_mean_measure(Order::one(), p, w);
  Prob q1 = order_one_mean(p, w);
  for (std::size_t y = 0; y < 2; ++y) CHECK(m1[y] == doctest::Approx(q1[y]));

  // single-input channel gives back its row at every order
  Channel single({{0.2, 0.3, 0.5}});
  for (double a : kOrders) {
    Measure m = power_mean_measure(order_of(a), uniform_prob(1), single);
    for (std::size_t y = 0; y < 3; ++y)
      CHECK(m[y] == doctest::Approx(single.at(0, y)));
  }

  // alpha=2, disjoint unit rows: entries sqrt(1/2), mass sqrt(2)
  Channel disjoint({{1.0, 0.0}, {0.0, 1.0}});
  Measure m2 = power_mean_measure(Order::of(2.0), uniform_prob(2), disjoint);
  CHECK(m2[0] == doctest::Approx(std::sqrt(0.5)));
  CHECK(m2[1] == doctest::Approx(std::sqrt(0.5)));
  CHECK(m2.total() == doctest::Approx(std::sqrt(2.0)));

  Prob r2 = renyi_mean(Order::of(2.0), uniform_prob(2), disjoint);
  CHECK(r2[0] == doctest::Approx(0.5));
  CHECK(r2[1] == doctest::Approx(0.5));
}

TEST_CASE("augustin_operator basics") {
  Channel w = bsc(0.1);
  Prob p({0.4, 0.6});
  // alpha = 1: the operator ignores q
  Prob q({0.9, 0.1});
  CHECK(total_variation(augustin_operator(Order::one(), p, w, q),
                        order_one_mean(p, w)) < 1e-15);
  // symmetric fixed point
  Prob u = uniform_prob(2);
  for (double a : kOrders)
    CHECK(total_variation(augustin_operator(order_of(a), u, w, u), u) < 1e-14);
  // q outside the domain
  Channel id({{1.0, 0.0}, {0.0, 1.0}});
  CHECK_THROWS(augustin_operator(Order::of(2.0), uniform_prob(2), id,
                                 Prob({1.0, 0.0})));
}

TEST_CASE("solve_augustin_mean closed form and symmetric cases") {
  Channel w = bsc(0.15);
  AugustinSolution s1 = solve_augustin_mean(Order::one(), uniform_prob(2), w);
  CHECK(s1.iterations == 0);
  CHECK(s1.converged);
  double h = shannon_entropy(w.row_prob(0));
  CHECK(s1.info == doctest::Approx(std::log(2.0) - h));

  for (double a : kOrders) {
    AugustinSolution s = solve_augustin_mean(order_of(a), uniform_prob(2), w);
    CHECK(s.converged);
    CHECK(total_variation(s.mean, uniform_prob(2)) < 1e-10);
    CHECK(s.fixed_point_residual <= 1e-10);
  }
}

TEST_CASE("solver certification on random channels") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t nx = 2 + rng() % 5, ny = 2 + rng() % 5;
    Channel w = testsupport::random_channel(rng, nx, ny);
    Prob p = testsupport::random_prob(rng, nx);
    for (double a : kOrders) {
      AugustinSolution s = solve_augustin_mean(order_of(a), p, w);
      CHECK(s.converged);
      CHECK(s.fixed_point_residual <= 1e-10);
      CHECK(s.info >= -1e-12);
      CHECK(s.info <= shannon_entropy(p) + 1e-9);
      // sandwich bound against random reference measures
      for (int k = 0; k < 5; ++k) {
        Prob q = testsupport::random_prob(rng, ny);
        double crd = conditional_divergence(order_of(a), w, q, p).nats;
        double hi =
            renyi_divergence(order_of(std::max(a, 1.0)), s.mean, q).nats;
        double lo =
            renyi_divergence(order_of(std::min(a, 1.0)), s.mean, q).nats;
        CHECK(hi >= crd - s.info - 1e-9);
        CHECK(crd - s.info >= lo - 1e-9);
      }
    }
  }
}

TEST_CASE("monotone descent of the conditional divergence for alpha < 1") {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    Channel w = testsupport::random_channel(rng, 4, 5);
    Prob p = testsupport::random_prob(rng, 4);
    for (double a : {0.25, 0.5, 0.75}) {
      Order order = order_of(a);
      Prob q = renyi_mean(order, p, w);
      double prev = conditional_divergence(order, w, q, p).nats;
      for (int it = 0; it < 50; ++it) {
        q = augustin_operator(order, p, w, q);
        double cur = conditional_divergence(order, w, q, p).nats;
        CHECK(cur <= prev + 1e-12);
        prev = cur;
      }
    }
  }
}

TEST_CASE("solver matches the brute-force oracle") {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 8; ++trial) {
    Channel w = testsupport::random_channel(rng, 3, 3);
    Prob p = testsupport::random_prob(rng, 3);
    for (double a : {0.5, 2.0}) {
      double solver = augustin_information(order_of(a), p, w);
      double oracle =
          testsupport::brute_force_augustin_info(order_of(a), p, w, 1e-2);
      CHECK(solver == doctest::Approx(oracle).epsilon(1e-6));
    }
  }
  // the spec's 3x4 instance class at alpha = 1/2
  Channel w = testsupport::random_channel(rng, 3, 4);
  Prob p = testsupport::random_prob(rng, 3);
  double solver = augustin_information(Order::of(0.5), p, w);
  double oracle =
      testsupport::brute_force_augustin_info(Order::of(0.5), p, w, 0.05);
  CHECK(std::fabs(solver - oracle) < 1e-8);
}

TEST_CASE("augustin_information special channels") {
  Channel id({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
  Prob p({0.2, 0.3, 0.5});
  CHECK(augustin_information(Order::one(), p, id) ==
        doctest::Approx(shannon_entropy(p)));

  Channel single({{0.25, 0.75}, {0.25, 0.75}});
  for (double a : kOrders)
    CHECK(augustin_information(order_of(a), uniform_prob(2), single) ==
          doctest::Approx(0.0).epsilon(1e-12));

  double expect = std::log(2.0) -
                  (0.1 * std::log(10.0) + 0.9 * std::log(10.0 / 9.0));
  CHECK(augustin_information(Order::one(), uniform_prob(2), bsc(0.1)) ==
        doctest::Approx(expect));
  CHECK(expect == doctest::Approx(0.368065).epsilon(1e-5));
}

TEST_CASE("renyi_information closed form") {
  Channel id({{1.0, 0.0}, {0.0, 1.0}});
  CHECK(renyi_information(Order::of(2.0), uniform_prob(2), id) ==
        doctest::Approx(std::log(2.0)));
  CHECK(renyi_information(Order::one(), uniform_prob(2), bsc(0.1)) ==
        doctest::Approx(
            augustin_information(Order::one(), uniform_prob(2), bsc(0.1))));
  Channel single({{0.25, 0.75}, {0.25, 0.75}});
  for (double a : kOrders)
    CHECK(renyi_information(order_of(a), uniform_prob(2), single) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("renyi vs augustin information ordering") {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 50; ++trial) {
    Channel w = testsupport::random_channel(rng, 4, 3);
    Prob p = testsupport::random_prob(rng, 4);
    for (double a : kOrders) {
      double ia = augustin_information(order_of(a), p, w);
      double ig = renyi_information(order_of(a), p, w);
      if (a <= 1.0)
        CHECK(ig <= ia + 1e-9);
      else
        CHECK(ig >= ia - 1e-9);
    }
  }
}

TEST_CASE("al and rg information") {
  Channel w = bsc(0.1);
  CostSpec cost(1, {{0.0}, {1.0}});
  std::vector<double> lam{0.5};
  double base = augustin_information(Order::one(), uniform_prob(2), w);
  CHECK(al_information(Order::one(), uniform_prob(2), w, lam, cost) ==
        doctest::Approx(base - 0.25));

  std::vector<double> zero{0.0};
  std::mt19937_64 rng(113);
  for (int trial = 0; trial < 20; ++trial) {
    Channel rw = testsupport::random_channel(rng, 3, 3);
    Prob p = testsupport::random_prob(rng, 3);
    CostSpec rc(1, {{0.3}, {1.1}, {0.0}});
    for (double a : kOrders) {
      CHECK(al_information(order_of(a), p, rw, zero, rc) ==
            doctest::Approx(augustin_information(order_of(a), p, rw)));
      CHECK(rg_information(order_of(a), p, rw, zero, rc) ==
            doctest::Approx(renyi_information(order_of(a), p, rw)));
      std::vector<double> l{0.7};
      double ial = al_information(order_of(a), p, rw, l, rc);
      double irg = rg_information(order_of(a), p, rw, l, rc);
      if (a <= 1.0)
        CHECK(ial >= irg - 1e-9);
      else
        CHECK(ial <= irg + 1e-9);
    }
  }
  CHECK(rg_information(Order::one(), uniform_prob(2), w, lam, cost) ==
        doctest::Approx(base - 0.25));
}

TEST_CASE("poltyrev and shayevitz transforms") {
  // symmetric channel with uniform input: all exponents equal
  Channel w = bsc(0.2);
  for (double a : {0.5, 2.0}) {
    TransformPair tp = poltyrev_transform(order_of(a), uniform_prob(2), w);
    CHECK(total_variation(tp.transformed, uniform_prob(2)) < 1e-12);
    CHECK(tp.value_identity_residual < 1e-9);
    TransformPair ts = shayevitz_transform(order_of(a), uniform_prob(2), w);
    CHECK(total_variation(ts.transformed, uniform_prob(2)) < 1e-12);
    CHECK(ts.value_identity_residual < 1e-9);
  }

  std::mt19937_64 rng(127);
  for (int trial = 0; trial < 10; ++trial) {
    Channel rw = testsupport::random_channel(rng, 3, 3);
    Prob p = testsupport::random_prob(rng, 3);
    for (double a : {0.5, 0.7, 2.0}) {
      CHECK(poltyrev_transform(order_of(a), p, rw).value_identity_residual <
            1e-9);
      CHECK(shayevitz_transform(order_of(a), p, rw).value_identity_residual <
            1e-9);
    }
  }
  for (int trial = 0; trial < 10; ++trial) {
    Channel rw = testsupport::random_channel(rng, 4, 3);
    Prob p = testsupport::random_prob(rng, 4);
    CostSpec cost(1, {{0.0}, {0.5}, {1.0}, {2.0}});
    std::vector<double> lam{0.4};
    for (double a : {0.7, 2.0}) {
      CHECK(poltyrev_transform(order_of(a), p, rw, lam, &cost)
                .value_identity_residual < 1e-9);
      CHECK(shayevitz_transform(order_of(a), p, rw, lam, &cost)
                .value_identity_residual < 1e-9);
    }
  }
}

TEST_CASE("csiszar decomposition") {
  std::mt19937_64 rng(131);
  CHECK(csiszar_decomposition_residual(Order::of(0.5), uniform_prob(2),
                                       bsc(0.3)) < 1e-9);
  for (int trial = 0; trial < 10; ++trial) {
    Channel w33 = testsupport::random_channel(rng, 3, 3);
    Prob p3 = testsupport::random_prob(rng, 3);
    CHECK(csiszar_decomposition_residual(Order::of(0.5), p3, w33) < 1e-9);
    Channel w24 = testsupport::random_channel(rng, 2, 4);
    Prob p2 = testsupport::random_prob(rng, 2);
    CHECK(csiszar_decomposition_residual(Order::of(3.0), p2, w24) < 1e-9);
  }
}

TEST_CASE("information order derivative") {
  // identity channel: I_alpha is constant in alpha
  Channel id({{1.0, 0.0}, {0.0, 1.0}});
  Prob p({0.3, 0.7});
  for (double a : {0.5, 1.0, 2.0})
    CHECK(augustin_info_order_derivative(order_of(a), p, id) ==
          doctest::Approx(0.0).epsilon(1e-10));

  Channel single({{0.25, 0.75}});
  for (double a : {0.5, 1.0, 2.0})
    CHECK(augustin_info_order_derivative(order_of(a), uniform_prob(1),
                                         single) ==
          doctest::Approx(0.0).epsilon(1e-12));

  std::mt19937_64 rng(137);
  for (int trial = 0; trial < 10; ++trial) {
    Channel w = testsupport::random_channel(rng, 3, 4);
    Prob pp = testsupport::random_prob(rng, 3);
    auto f = [&](double a) { return augustin_information(order_of(a), pp, w); };
    for (double a : {0.5, 1.0, 2.0}) {
      double analytic = augustin_info_order_derivative(order_of(a), pp, w);
      double numeric = testsupport::central_difference(f, a, 1e-3);
      CHECK(analytic >= -1e-12);
      CHECK(std::fabs(analytic - numeric) <=
            1e-5 * (std::fabs(numeric) + 1e-3));
    }
  }
}

TEST_CASE("mean bounds") {
  std::mt19937_64 rng(139);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t nx = 2 + rng() % 4, ny = 2 + rng() % 4;
    Channel w = testsupport::random_channel(rng, nx, ny);
    Prob p = testsupport::random_prob(rng, nx);
    double pmin = 1.0;
    for (std::size_t x = 0; x < nx; ++x) pmin = std::min(pmin, p[x]);
    for (double a : kOrders) {
      AugustinSolution s = solve_augustin_mean(order_of(a), p, w);
      REQUIRE(s.converged);
      Prob q1 = order_one_mean(p, w);
      for (std::size_t x = 0; x < nx; ++x) {
        double d = renyi_divergence(order_of(a), w.row_prob(x), s.mean).nats;
        CHECK(d <= std::log(1.0 / p[x]) + 1e-9);
        double factor = std::pow(p[x], 1.0 / std::min(a, 1.0));
        for (std::size_t y = 0; y < ny; ++y)
          CHECK(factor * w.at(x, y) <= s.mean[y] + 1e-9);
      }
      double bound = std::fabs(a - 1.0) / a * std::log(1.0 / pmin);
      for (std::size_t y = 0; y < ny; ++y)
        if (q1[y] > 0.0)
          CHECK(std::fabs(std::log(s.mean[y] / q1[y])) <= bound + 1e-9);
    }
  }
}

TEST_CASE("order monotonicity of the information") {
  std::mt19937_64 rng(149);
  const double grid[] = {0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 4.0};
  for (int trial = 0; trial < 20; ++trial) {
    Channel w = testsupport::random_channel(rng, 4, 4);
    Prob p = testsupport::random_prob(rng, 4);
    double prev = -1.0, prev_scaled = std::numeric_limits<double>::infinity();
    for (double a : grid) {
      double info = augustin_information(order_of(a), p, w);
      CHECK(info >= prev - 1e-10);
      prev = info;
      double scaled = (1.0 - a) / a * info;
      CHECK(scaled <= prev_scaled + 1e-10);
      prev_scaled = scaled;
    }
  }
}

TEST_CASE("product additivity") {
  std::mt19937_64 rng(151);
  for (int trial = 0; trial < 10; ++trial) {
    Channel a = testsupport::random_channel(rng, 2, 3);
    Channel b = testsupport::random_channel(rng, 3, 2);
    Prob pa = testsupport::random_prob(rng, 2);
    Prob pb = testsupport::random_prob(rng, 3);
    Channel prod = product_channel({a, b});
    Prob pp = product_prob({pa, pb});
    for (double al : {0.5, 1.0, 2.0}) {
      AugustinSolution sa = solve_augustin_mean(order_of(al), pa, a);
      AugustinSolution sb = solve_augustin_mean(order_of(al), pb, b);
      AugustinSolution sp = solve_augustin_mean(order_of(al), pp, prod);
      CHECK(sp.info == doctest::Approx(sa.info + sb.info).epsilon(1e-9));
      CHECK(total_variation(sp.mean, product_prob({sa.mean, sb.mean})) < 1e-9);
    }
  }
}

TEST_CASE("degenerate input weights are dropped") {
  Channel w = bsc(0.1);
  Prob p({1.0 - 1e-16, 1e-16});
  AugustinSolution s = solve_augustin_mean(Order::of(2.0), p, w);
  CHECK(s.converged);
  // effectively a point mass: mean is the row itself, info 0
  CHECK(s.info == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(total_variation(s.mean, w.row_prob(0)) < 1e-9);
}
