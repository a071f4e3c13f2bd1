// Small derivative-free helpers on probability simplices: grid sweeps and a
// Nelder-Mead refinement.  Shared by the brute-force capacity oracle and
// the duality-gap certificate; desk-scale dimensions only.

#ifndef AUGUSTIN_DETAIL_SIMPLEX_OPT_HPP
#define AUGUSTIN_DETAIL_SIMPLEX_OPT_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace augustin::detail {

/// Calls f on every point of the n-simplex grid with the given step.
inline void simplex_grid_foreach(
    std::size_t n, double step,
    const std::function<void(const std::vector<double>&)>& f) {
  const int m = static_cast<int>(std::lround(1.0 / step));
  std::vector<int> counts(n, 0);
  std::vector<double> point(n, 0.0);
  // iterate compositions of m into n parts
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == n) {
      counts[i] = left;
      for (std::size_t k = 0; k < n; ++k)
        point[k] = static_cast<double>(counts[k]) / m;
      f(point);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[i] = c;
      rec(i + 1, left - c);
    }
  };
  rec(0, m);
}

/// Nelder-Mead maximization over the n-simplex.  Points are parametrized
/// by their first n-1 coordinates; infeasible probes score -inf.
/// Returns the best point found (full n coordinates).
inline std::vector<double> nelder_mead_simplex_max(
    std::size_t n, const std::vector<double>& start, double scale,
    int max_evals, const std::function<double(const std::vector<double>&)>& f) {
  if (n == 1) return {1.0};
  const std::size_t d = n - 1;
  auto lift = [&](const std::vector<double>& z) {
    std::vector<double> p(n);
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      p[i] = z[i];
      s += z[i];
    }
    p[d] = 1.0 - s;
    return p;
  };
  auto eval = [&](const std::vector<double>& z) {
    auto p = lift(z);
    for (double v : p)
      if (v < 0.0) return -std::numeric_limits<double>::infinity();
    return f(p);
  };

  std::vector<std::vector<double>> simplex;
  std::vector<double> z0(start.begin(), start.begin() + d);
  simplex.push_back(z0);
  for (std::size_t i = 0; i < d; ++i) {
    auto z = z0;
    z[i] += scale;
    simplex.push_back(z);
  }
  std::vector<double> val(simplex.size());
  int evals = 0;
  for (std::size_t i = 0; i < simplex.size(); ++i) {
    val[i] = eval(simplex[i]);
    ++evals;
  }

  while (evals < max_evals) {
    // order ascending; we maximize, so last is best
    std::vector<std::size_t> idx(simplex.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
    std::size_t worst = idx[0], best = idx.back();
    if (std::isfinite(val[best]) && std::isfinite(val[worst]) &&
        val[best] - val[worst] < 1e-14)
      break;

    std::vector<double> centroid(d, 0.0);
    for (std::size_t i : idx)
      if (i != worst)
        for (std::size_t k = 0; k < d; ++k) centroid[k] += simplex[i][k];
    for (double& c : centroid) c /= static_cast<double>(d);

    auto probe = [&](double t) {
      std::vector<double> z(d);
      for (std::size_t k = 0; k < d; ++k)
        z[k] = centroid[k] + t * (centroid[k] - simplex[worst][k]);
      return z;
    };

    auto zr = probe(1.0);
    double fr = eval(zr);
    ++evals;
    if (fr > val[best]) {
      auto ze = probe(2.0);
      double fe = eval(ze);
      ++evals;
      if (fe > fr) {
        simplex[worst] = ze;
        val[worst] = fe;
      } else {
        simplex[worst] = zr;
        val[worst] = fr;
      }
    } else if (fr > val[idx[1]]) {
      simplex[worst] = zr;
      val[worst] = fr;
    } else {
      auto zc = probe(0.5);
      double fc = eval(zc);
      ++evals;
      if (fc > val[worst]) {
        simplex[worst] = zc;
        val[worst] = fc;
      } else {
        for (std::size_t i : idx) {
          if (i == best) continue;
          for (std::size_t k = 0; k < d; ++k)
            simplex[i][k] = 0.5 * (simplex[i][k] + simplex[best][k]);
          val[i] = eval(simplex[i]);
          ++evals;
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < simplex.size(); ++i)
    if (val[i] > val[best]) best = i;
  return lift(simplex[best]);
}

/// Maximizes a segment-concave function along every edge of the simplex,
/// optionally restricted to the feasible interval of a scalar cost bound
/// c.p <= rho (pass empty costs for no constraint).  Catches optima on
/// simplex faces that defeat the Nelder-Mead lift.
inline double simplex_edge_max(
    std::size_t n, const std::vector<double>& costs, double rho,
    const std::function<double(const std::vector<double>&)>& f) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // p(t) = t e_i + (1-t) e_j; restrict t so that the cost bound holds
      double lo = 0.0, hi = 1.0;
      if (!costs.empty()) {
        double ci = costs[i], cj = costs[j];
        // t ci + (1-t) cj <= rho
        if (ci == cj) {
          if (ci > rho) continue;
        } else {
          double t_star = (rho - cj) / (ci - cj);
          if (ci > cj)
            hi = std::min(hi, t_star);
          else
            lo = std::max(lo, t_star);
          if (lo > hi) continue;
        }
      }
      auto at = [&](double t) {
        std::vector<double> p(n, 0.0);
        p[i] = t;
        p[j] = 1.0 - t;
        return f(p);
      };
      best = std::max(best, std::max(at(lo), at(hi)));
      double a = lo, b = hi;
      double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
      double fc = at(c), fd = at(d);
      for (int it = 0; it < 80; ++it) {
        if (fc >= fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - inv_phi * (b - a);
          fc = at(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + inv_phi * (b - a);
          fd = at(d);
        }
      }
      best = std::max(best, std::max(fc, fd));
    }
  }
  return best;
}

/// Maximizes a function that is concave along line segments over the slice
/// {p in simplex : c.p = rho} of a scalar cost constraint.  The slice's
/// vertices lie on simplex edges; every vertex pair is searched by golden
/// section.  Returns -inf when the slice is empty.
inline double constraint_slice_max(
    const std::vector<double>& costs, double rho,
    const std::function<double(const std::vector<double>&)>& f) {
  const std::size_t n = costs.size();
  std::vector<std::vector<double>> verts;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::fabs(costs[i] - rho) < 1e-14) {
      std::vector<double> p(n, 0.0);
      p[i] = 1.0;
      verts.push_back(p);
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      double den = costs[i] - costs[j];
      if (den == 0.0) continue;
      double t = (rho - costs[j]) / den;
      if (t <= 0.0 || t >= 1.0) continue;
      std::vector<double> p(n, 0.0);
      p[i] = t;
      p[j] = 1.0 - t;
      verts.push_back(p);
    }
  }
  if (verts.empty()) return -std::numeric_limits<double>::infinity();

  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : verts) best = std::max(best, f(v));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t a = 0; a < verts.size(); ++a) {
    for (std::size_t b = a + 1; b < verts.size(); ++b) {
      auto at = [&](double t) {
        std::vector<double> p(n);
        for (std::size_t k = 0; k < n; ++k)
          p[k] = (1.0 - t) * verts[a][k] + t * verts[b][k];
        return f(p);
      };
      double lo = 0.0, hi = 1.0;
      double c = hi - inv_phi * (hi - lo), d = lo + inv_phi * (hi - lo);
      double fc = at(c), fd = at(d);
      for (int it = 0; it < 80; ++it) {
        if (fc >= fd) {
          hi = d;
          d = c;
          fd = fc;
          c = hi - inv_phi * (hi - lo);
          fc = at(c);
        } else {
          lo = c;
          c = d;
          fc = fd;
          d = lo + inv_phi * (hi - lo);
          fd = at(d);
        }
      }
      best = std::max(best, std::max(fc, fd));
    }
  }
  return best;
}

}  // namespace augustin::detail

#endif  // AUGUSTIN_DETAIL_SIMPLEX_OPT_HPP
