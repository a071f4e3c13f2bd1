#include "augustin/shift_examples.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "augustin/detail/simplex_opt.hpp"
#include "augustin/mean.hpp"

namespace augustin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Gadget {
  long p = 1;   // number of shifts = number of arcs
  long q = 1;   // arcs covered by each shift; density is p/q
  double cost = 0.0;
};

// Builds the merged cell partition and the rows of a union of cyclic block
// gadgets on [0,1).
ShiftFamily assemble(const std::vector<Gadget>& gadgets) {
  std::vector<double> breaks{0.0};
  for (const auto& g : gadgets)
    for (long k = 1; k < g.p; ++k)
      breaks.push_back(static_cast<double>(k) / static_cast<double>(g.p));
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double a, double b) { return std::fabs(a - b) < 1e-14; }),
               breaks.end());

  std::size_t cells = breaks.size();
  std::vector<double> len(cells), mid(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    double hi = (c + 1 < cells) ? breaks[c + 1] : 1.0;
    len[c] = hi - breaks[c];
    mid[c] = 0.5 * (breaks[c] + hi);
  }

  std::vector<std::vector<double>> rows;
  std::vector<std::vector<double>> costs;
  std::vector<ShiftClassInfo> classes;
  for (const auto& g : gadgets) {
    ShiftClassInfo info;
    info.cost = g.cost;
    info.info = std::log(static_cast<double>(g.p) / static_cast<double>(g.q));
    info.first_input = rows.size();
    info.count = static_cast<std::size_t>(g.p);
    double density = static_cast<double>(g.p) / static_cast<double>(g.q);
    double support = static_cast<double>(g.q) / static_cast<double>(g.p);
    for (long k = 0; k < g.p; ++k) {
      double start = static_cast<double>(k) / static_cast<double>(g.p);
      std::vector<double> row(cells, 0.0);
      for (std::size_t c = 0; c < cells; ++c) {
        double rel = mid[c] - start;
        rel -= std::floor(rel);
        if (rel < support) row[c] = density * len[c];
      }
      rows.push_back(std::move(row));
      costs.push_back({g.cost});
    }
    classes.push_back(info);
  }

  Channel ch(std::move(rows));
  CostSpec cs(1, std::move(costs));
  ShiftFamily fam{std::move(ch), std::move(cs),
                  AnalyticDualCurve{0.0, 0.0, Prob(len)}, len,
                  std::move(classes)};
  return fam;
}

}  // namespace

Prob ShiftFamily::class_uniform(std::size_t class_index) const {
  const auto& ci = classes.at(class_index);
  std::vector<double> p(channel.num_inputs(), 0.0);
  for (std::size_t k = 0; k < ci.count; ++k)
    p[ci.first_input + k] = 1.0 / static_cast<double>(ci.count);
  return Prob(std::move(p));
}

ShiftFamily build_affine_example(int truncation) {
  if (truncation < 1)
    throw std::invalid_argument("build_affine_example: truncation must be >= 1");
  // Closest small rationals to e^{i+1}; classes above 4 would need
  // thousands of shifts, and they are inactive for desk-scale constraints.
  static const Gadget kClasses[] = {
      {19, 7, 0.0}, {37, 5, 1.0}, {20, 1, 2.0}, {55, 1, 3.0}, {148, 1, 4.0}};
  int top = std::min(truncation, 4);
  std::vector<Gadget> gadgets(kClasses, kClasses + top + 1);
  ShiftFamily fam = assemble(gadgets);
  fam.analytic.lambda_min_finite = 1.0;
  fam.analytic.plateau = 1.0;
  return fam;
}

ShiftFamily build_nonusc_example(int truncation) {
  if (truncation < 1)
    throw std::invalid_argument("build_nonusc_example: truncation must be >= 1");
  std::vector<Gadget> gadgets;
  gadgets.push_back({3, 2, 0.0});  // density 3/2 on 2/3 of the circle
  int pos = std::min(truncation, 4);
  for (int i = 1; i <= pos; ++i)
    gadgets.push_back({1L << (i + 1), 1, static_cast<double>(i)});
  for (int j = 1; j <= truncation; ++j)
    gadgets.push_back({2, 1, std::pow(2.0, -j)});
  ShiftFamily fam = assemble(gadgets);
  fam.analytic.lambda_min_finite = std::log(2.0);
  fam.analytic.plateau = std::log(2.0);
  return fam;
}

ShiftFamily build_product_example(int truncation) {
  int n = std::max(1, std::min(truncation, 3));
  ShiftFamily a = build_affine_example(std::min(n, 1));
  ShiftFamily b = build_nonusc_example(n);

  Channel prod = product_channel({a.channel, b.channel});
  std::vector<std::vector<double>> costs;
  costs.reserve(prod.num_inputs());
  for (std::size_t xa = 0; xa < a.channel.num_inputs(); ++xa)
    for (std::size_t xb = 0; xb < b.channel.num_inputs(); ++xb)
      costs.push_back({a.cost.cost(xa)[0] + b.cost.cost(xb)[0]});

  std::vector<double> len;
  len.reserve(a.cell_lengths.size() * b.cell_lengths.size());
  for (double la : a.cell_lengths)
    for (double lb : b.cell_lengths) len.push_back(la * lb);

  ShiftFamily fam{std::move(prod), CostSpec(1, std::move(costs)),
                  AnalyticDualCurve{
                      std::max(a.analytic.lambda_min_finite,
                               b.analytic.lambda_min_finite),
                      a.analytic.plateau + b.analytic.plateau, Prob(len)},
                  len,
                  {}};
  return fam;
}

double affine_capacity(double rho) {
  if (rho < 0.0) throw std::invalid_argument("affine_capacity: rho < 0");
  return rho + 1.0;
}

double affine_al_capacity(double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("affine_al_capacity: lambda < 0");
  return lambda < 1.0 ? kInf : 1.0;
}

double nonusc_capacity(double rho) {
  if (rho < 0.0) throw std::invalid_argument("nonusc_capacity: rho < 0");
  if (rho == 0.0) return std::log(1.5);
  return (rho + 1.0) * std::log(2.0);
}

double nonusc_al_capacity(double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("nonusc_al_capacity: lambda < 0");
  return lambda < std::log(2.0) ? kInf : std::log(2.0);
}

double product_example_capacity(double rho) {
  if (rho < 0.0) throw std::invalid_argument("product_example_capacity: rho < 0");
  if (rho == 0.0) return 1.0 + std::log(1.5);
  return rho + 1.0 + std::log(2.0);
}

DualityGapReport duality_gap_certificate(Order alpha, const Channel& w,
                                         const CostSpec& cost,
                                         std::span<const double> rho,
                                         std::span<const double> lambda_grid,
                                         const AnalyticDualCurve* analytic,
                                         const CapacitySolverOptions& opt) {
  if (cost.dim() != 1 || rho.size() != 1)
    throw std::invalid_argument("duality_gap_certificate: scalar costs only");
  AugustinSolverOptions mean_opt{opt.mean_tol, 10000};

  // Dual side: smallest C^lambda + lambda.rho over the supplied grid,
  // sharpened by golden section between the best grid point's neighbours
  // (the dual is convex in lambda).
  auto dual_at = [&](double l) {
    double cl;
    if (analytic) {
      cl = (l < analytic->lambda_min_finite - 1e-15) ? kInf
                                                     : analytic->plateau;
    } else {
      std::vector<double> lam{l};
      cl = rg_capacity(alpha, w, lam, &cost, opt).value;
    }
    return std::isfinite(cl) ? cl + l * rho[0] : kInf;
  };
  std::vector<double> grid(lambda_grid.begin(), lambda_grid.end());
  std::sort(grid.begin(), grid.end());
  double dual = kInf;
  std::size_t best_idx = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double v = dual_at(grid[i]);
    if (v < dual) {
      dual = v;
      best_idx = i;
    }
  }
  if (grid.size() >= 2 && std::isfinite(dual)) {
    double lo = grid[best_idx > 0 ? best_idx - 1 : 0];
    double hi = grid[std::min(best_idx + 1, grid.size() - 1)];
    if (hi > lo) {
      const double iphi = (std::sqrt(5.0) - 1.0) / 2.0;
      double c = hi - iphi * (hi - lo), d = lo + iphi * (hi - lo);
      double fc = dual_at(c), fd = dual_at(d);
      for (int it = 0; it < 60 && (hi - lo) > 1e-10; ++it) {
        if (fc <= fd) {
          hi = d;
          d = c;
          fd = fc;
          c = hi - iphi * (hi - lo);
          fc = dual_at(c);
        } else {
          lo = c;
          c = d;
          fc = fd;
          d = lo + iphi * (hi - lo);
          fd = dual_at(d);
        }
      }
      dual = std::min(dual, std::min(fc, fd));
    }
  }

  // Primal side.
  double primal;
  double margin = cost.feasibility_margin(rho);
  if (margin > 1e-12)
    throw std::domain_error("duality_gap_certificate: rho infeasible");
  if (margin > -1e-12) {
    // Boundary constraint: feasible inputs are exactly the cheapest ones.
    double cmin = cost.componentwise_min()[0];
    std::vector<std::size_t> keep;
    for (std::size_t x = 0; x < w.num_inputs(); ++x)
      if (cost.cost(x)[0] <= cmin + 1e-12) keep.push_back(x);
    std::vector<std::vector<double>> rows;
    for (std::size_t x : keep)
      rows.emplace_back(w.row(x).begin(), w.row(x).end());
    Channel sub(rows);
    primal = augustin_capacity_unconstrained(alpha, sub, opt).value;
  } else if (w.num_inputs() <= 3) {
    // Grid + refinement over feasible input distributions.
    auto objective = [&](const std::vector<double>& pv) {
      double mass = 0.0;
      for (double v : pv) mass += v;
      if (std::fabs(mass - 1.0) > 1e-6) return -kInf;
      std::vector<double> norm(pv);
      for (double& v : norm) v /= mass;
      Prob p(std::move(norm));
      if (cost.expected_cost(p)[0] > rho[0] + 1e-12) return -kInf;
      return augustin_information(alpha, p, w, mean_opt);
    };
    double best = -kInf;
    std::vector<double> best_p(w.num_inputs(),
                               1.0 / static_cast<double>(w.num_inputs()));
    detail::simplex_grid_foreach(w.num_inputs(), 1e-2,
                                 [&](const std::vector<double>& p) {
                                   double v = objective(p);
                                   if (v > best) {
                                     best = v;
                                     best_p = p;
                                   }
                                 });
    auto refined = detail::nelder_mead_simplex_max(w.num_inputs(), best_p,
                                                   1e-2, 400, objective);
    primal = std::max(best, objective(refined));
    // The constrained optimum usually sits on the cost slice or a simplex
    // face, where the cliffed simplex search stalls.
    std::vector<double> col(w.num_inputs());
    for (std::size_t x = 0; x < col.size(); ++x) col[x] = cost.cost(x)[0];
    auto info_only = [&](const std::vector<double>& p) {
      return augustin_information(alpha, Prob(p), w, mean_opt);
    };
    primal = std::max(primal,
                      detail::constraint_slice_max(col, rho[0], info_only));
    primal = std::max(
        primal, detail::simplex_edge_max(w.num_inputs(), col, rho[0],
                                         info_only));
  } else {
    // Large instance in the interior: the constrained solve's own primal
    // candidate is the certificate.
    CapacityResult r =
        cost_constrained_capacity(alpha, w, cost, rho, opt, analytic);
    primal = r.value - r.diagnostics.dual_gap_estimate;
  }

  return DualityGapReport{primal, dual, dual - primal};
}

}  // namespace augustin
