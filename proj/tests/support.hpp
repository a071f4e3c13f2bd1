// Shared test helpers: seeded random channels and distributions, central
// finite differences, and an independent brute-force minimizer of the
// conditional divergence over the output simplex (the oracle the Augustin
// mean solver is checked against).

#ifndef AUGUSTIN_TESTS_SUPPORT_HPP
#define AUGUSTIN_TESTS_SUPPORT_HPP

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "augustin/core.hpp"
#include "augustin/detail/simplex_opt.hpp"
#include "augustin/divergence.hpp"

namespace testsupport {

using augustin::Channel;
using augustin::Order;
using augustin::Prob;

inline Prob random_prob(std::mt19937_64& rng, std::size_t n,
                        double floor = 0.02) {
  std::uniform_real_distribution<double> u(floor, 1.0);
  std::vector<double> v(n);
  double s = 0.0;
  for (auto& x : v) {
    x = u(rng);
    s += x;
  }
  for (auto& x : v) x /= s;
  return Prob(std::move(v));
}

inline Channel random_channel(std::mt19937_64& rng, std::size_t nx,
                              std::size_t ny, double floor = 0.02) {
  std::vector<std::vector<double>> rows;
  rows.reserve(nx);
  for (std::size_t x = 0; x < nx; ++x)
    rows.push_back(random_prob(rng, ny, floor).weights());
  return Channel(std::move(rows));
}

// Five-point central stencils, O(h^4) truncation.
inline double central_difference(const std::function<double(double)>& f,
                                 double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) /
         (12.0 * h);
}

inline double second_central_difference(const std::function<double(double)>& f,
                                        double x, double h) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) -
          f(x - 2 * h)) /
         (12.0 * h * h);
}

inline Order order_of(double a) {
  return a == 1.0 ? Order::one() : Order::of(a);
}

// Independent oracle: minimize D_alpha(W||q|P) over the output simplex by
// grid sweep plus Nelder-Mead refinement.  Only uses the divergence kernel,
// never the fixed-point solver.
inline double brute_force_augustin_info(Order alpha, const Prob& p,
                                        const Channel& w, double grid_step) {
  auto objective = [&](const std::vector<double>& qv) {
    double mass = 0.0;
    for (double v : qv) mass += v;
    if (std::fabs(mass - 1.0) > 1e-6 || mass <= 0.0)
      return -std::numeric_limits<double>::infinity();
    std::vector<double> norm(qv);
    for (double& v : norm) v /= mass;
    double crd = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (p[x] == 0.0) continue;
      double d = augustin::renyi_divergence_raw(alpha, w.row(x), norm);
      if (!std::isfinite(d)) return -std::numeric_limits<double>::infinity();
      crd += p[x] * d;
    }
    return -crd;  // maximize the negative
  };

  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> best_q(w.num_outputs(),
                             1.0 / static_cast<double>(w.num_outputs()));
  augustin::detail::simplex_grid_foreach(
      w.num_outputs(), grid_step, [&](const std::vector<double>& q) {
        double v = objective(q);
        if (v > best) {
          best = v;
          best_q = q;
        }
      });
  auto refined = augustin::detail::nelder_mead_simplex_max(
      w.num_outputs(), best_q, grid_step, 2000, objective);
  best = std::max(best, objective(refined));
  return -best;
}

// Splits every output cell in two equal halves; divergences must not move
// for channels whose rows are cell-constant densities.
inline Channel split_cells(const Channel& w) {
  std::vector<std::vector<double>> rows;
  rows.reserve(w.num_inputs());
  for (std::size_t x = 0; x < w.num_inputs(); ++x) {
    std::vector<double> r;
    r.reserve(2 * w.num_outputs());
    for (std::size_t y = 0; y < w.num_outputs(); ++y) {
      r.push_back(w.at(x, y) / 2.0);
      r.push_back(w.at(x, y) / 2.0);
    }
    rows.push_back(std::move(r));
  }
  return Channel(std::move(rows));
}

}  // namespace testsupport

#endif  // AUGUSTIN_TESTS_SUPPORT_HPP
