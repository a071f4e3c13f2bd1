#include "augustin/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "augustin/detail/simplex_opt.hpp"

namespace augustin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double lambda_dot(const CostSpec* cost, std::size_t x,
                  std::span<const double> lambda) {
  return lambda.empty() ? 0.0 : cost->dot(x, lambda);
}

// Euclidean projection onto the probability simplex.
std::vector<double> project_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, theta = 0.0;
  int k = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    css += u[i];
    double t = (css - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) {
      theta = t;
      k = static_cast<int>(i) + 1;
    }
  }
  (void)k;
  for (double& x : v) x = std::max(0.0, x - theta);
  double s = 0.0;
  for (double x : v) s += x;
  for (double& x : v) x /= s;
  return v;
}

struct Bracket {
  double lower = -kInf;  // best attained information
  double upper = kInf;   // best radius-form bound
  Prob center_at_upper;  // mean achieving the upper bound
  Prob input_at_lower;   // input achieving the lower bound
  Bracket(std::size_t ny, std::size_t nx)
      : center_at_upper(uniform_prob(ny)), input_at_lower(uniform_prob(nx)) {}
  double gap() const { return upper - lower; }
};

// One evaluation of the R-G objective and its radius bound at P.
// Returns d(x) = D_a(W(x)||q~^l_P) - lambda.c(x) through `d`.
void rg_evaluate(Order alpha, const Channel& w, std::span<const double> lambda,
                 const CostSpec* cost, const Prob& p, std::vector<double>& d,
                 double& lower, double& upper, Prob& mean) {
  mean = renyi_mean(alpha, p, w, lambda, cost);
  d.assign(w.num_inputs(), 0.0);
  upper = -kInf;
  for (std::size_t x = 0; x < w.num_inputs(); ++x) {
    double div = renyi_divergence_raw(alpha, w.row(x), mean.weights());
    d[x] = div - lambda_dot(cost, x, lambda);
    upper = std::max(upper, d[x]);
  }
  if (alpha.is_one()) {
    lower = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x)
      if (p[x] > 0.0) lower += p[x] * d[x];
  } else {
    double a = alpha.alpha();
    double mass = power_mean_measure(alpha, p, w, lambda, cost).total();
    lower = a / (a - 1.0) * std::log(mass);
  }
}

// Gradient of G^l_a at P (interior P); alpha != 1.
std::vector<double> rg_gradient(Order alpha, const Channel& w,
                                std::span<const double> lambda,
                                const CostSpec* cost, const Prob& p) {
  const double a = alpha.alpha();
  Measure mu = power_mean_measure(alpha, p, w, lambda, cost);
  double mass = mu.total();
  std::vector<double> g(p.size(), 0.0);
  for (std::size_t x = 0; x < p.size(); ++x) {
    // sum_y W(x,y)^a mu_y^{1-a} in log space
    double m = -kInf;
    std::vector<double> terms;
    for (std::size_t y = 0; y < mu.size(); ++y) {
      if (w.at(x, y) == 0.0 || mu[y] == 0.0) continue;
      double t = a * std::log(w.at(x, y)) + (1.0 - a) * std::log(mu[y]);
      terms.push_back(t);
      m = std::max(m, t);
    }
    if (terms.empty()) {
      g[x] = 0.0;
      continue;
    }
    double s = 0.0;
    for (double t : terms) s += std::exp(t - m);
    double ln_sum = m + std::log(s);
    double lc = lambda_dot(cost, x, lambda);
    g[x] = 1.0 / (a - 1.0) * std::exp((1.0 - a) * lc + ln_sum - std::log(mass));
  }
  return g;
}

CapacityResult finish(const Bracket& br, std::int64_t iters, double tol) {
  CapacityResult res;
  res.value = br.upper;
  res.center = br.center_at_upper;
  res.argmax_input = br.input_at_lower;
  res.diagnostics.iterations = iters;
  res.diagnostics.inner_residual = br.gap();
  res.diagnostics.converged = br.gap() <= tol;
  return res;
}

}  // namespace

CapacityResult rg_capacity(Order alpha, const Channel& w,
                           std::span<const double> lambda,
                           const CostSpec* cost,
                           const CapacitySolverOptions& opt,
                           const Prob* warm_start) {
  if (!lambda.empty() && cost == nullptr)
    throw std::invalid_argument("rg_capacity: lambda given without costs");
  if (cost && cost->num_inputs() != w.num_inputs())
    throw std::invalid_argument("rg_capacity: cost/input mismatch");

  const std::size_t nx = w.num_inputs();
  const double a = alpha.alpha();
  Prob p = uniform_prob(nx);
  if (warm_start && warm_start->size() == nx) {
    // keep every input revivable: blend the hint with the uniform start
    std::vector<double> v(nx);
    for (std::size_t x = 0; x < nx; ++x)
      v[x] = 0.9 * (*warm_start)[x] + 0.1 / static_cast<double>(nx);
    p = Prob(std::move(v));
  }
  Bracket br(w.num_outputs(), nx);
  std::vector<double> d;
  std::int64_t it = 0;
  std::int64_t since_progress = 0;
  bool fallback = false;

  for (; it < opt.max_iter; ++it) {
    double lower, upper;
    Prob mean = uniform_prob(w.num_outputs());
    rg_evaluate(alpha, w, lambda, cost, p, d, lower, upper, mean);
    bool progressed = false;
    if (lower > br.lower) {
      br.lower = lower;
      br.input_at_lower = p;
      progressed = true;
    }
    if (upper < br.upper) {
      br.upper = upper;
      br.center_at_upper = mean;
      progressed = true;
    }
    if (br.gap() <= opt.tol) {
      ++it;
      break;
    }
    since_progress = progressed ? 0 : since_progress + 1;
    if (!fallback && since_progress >= opt.stall_window && !alpha.is_one()) {
      fallback = true;  // switch to projected gradient on G^l
      p = br.input_at_lower;
    }

    if (!fallback) {
      // Arimoto-style multiplicative update P <- P e^{alpha d(x)}.
      std::vector<double> logits(nx, -kInf);
      double m = -kInf;
      for (std::size_t x = 0; x < nx; ++x) {
        if (p[x] == 0.0) continue;
        logits[x] = std::log(p[x]) + a * d[x];
        m = std::max(m, logits[x]);
      }
      std::vector<double> np(nx, 0.0);
      double s = 0.0;
      for (std::size_t x = 0; x < nx; ++x) {
        if (logits[x] == -kInf) continue;
        np[x] = std::exp(logits[x] - m);
        s += np[x];
      }
      for (double& v : np) v /= s;
      p = Prob(std::move(np));
    } else {
      std::vector<double> g = rg_gradient(alpha, w, lambda, cost, p);
      double gn = 0.0;
      for (double v : g) gn = std::max(gn, std::fabs(v));
      if (gn == 0.0) break;
      double step = 1.0 / gn;
      double base = lower;
      bool accepted = false;
      for (int bt = 0; bt < 30; ++bt) {
        std::vector<double> cand(p.weights());
        for (std::size_t x = 0; x < nx; ++x) cand[x] += step * g[x];
        Prob pc(project_simplex(std::move(cand)));
        double lo2, up2;
        Prob mean2 = uniform_prob(w.num_outputs());
        rg_evaluate(alpha, w, lambda, cost, pc, d, lo2, up2, mean2);
        if (lo2 > base) {
          p = pc;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;  // stationary; bracket reports what we have
    }
  }
  CapacityResult res = finish(br, it, opt.tol);
  res.dual_multiplier.assign(lambda.begin(), lambda.end());
  return res;
}

CapacityResult al_capacity(Order alpha, const Channel& w,
                           std::span<const double> lambda,
                           const CostSpec& cost,
                           const CapacitySolverOptions& opt) {
  return rg_capacity(alpha, w, lambda, &cost, opt);
}

CapacityResult al_capacity_direct_ascent(Order alpha, const Channel& w,
                                         std::span<const double> lambda,
                                         const CostSpec& cost,
                                         const CapacitySolverOptions& opt) {
  const std::size_t nx = w.num_inputs();
  AugustinSolverOptions mean_opt{opt.mean_tol, 10000};
  Prob p = uniform_prob(nx);
  Bracket br(w.num_outputs(), nx);
  std::vector<double> d(nx, 0.0);
  std::int64_t it = 0;

  for (; it < opt.max_iter; ++it) {
    AugustinSolution sol = solve_augustin_mean(alpha, p, w, mean_opt);
    double lower = sol.info;
    double upper = -kInf;
    for (std::size_t x = 0; x < nx; ++x) {
      double div = renyi_divergence_raw(alpha, w.row(x), sol.mean.weights());
      d[x] = div - lambda_dot(&cost, x, lambda);
      upper = std::max(upper, d[x]);
    }
    auto e = cost.expected_cost(p);
    for (std::size_t i = 0; i < lambda.size(); ++i) lower -= lambda[i] * e[i];

    if (lower > br.lower) {
      br.lower = lower;
      br.input_at_lower = p;
    }
    if (upper < br.upper) {
      br.upper = upper;
      br.center_at_upper = sol.mean;
    }
    if (br.gap() <= opt.tol) {
      ++it;
      break;
    }

    // mirror step P <- P e^{d(x)} in the KL geometry
    std::vector<double> logits(nx, -kInf);
    double m = -kInf;
    for (std::size_t x = 0; x < nx; ++x) {
      if (p[x] == 0.0) continue;
      logits[x] = std::log(p[x]) + d[x];
      m = std::max(m, logits[x]);
    }
    std::vector<double> np(nx, 0.0);
    double s = 0.0;
    for (std::size_t x = 0; x < nx; ++x) {
      if (logits[x] == -kInf) continue;
      np[x] = std::exp(logits[x] - m);
      s += np[x];
    }
    for (double& v : np) v /= s;
    p = Prob(std::move(np));
  }
  CapacityResult res = finish(br, it, opt.tol);
  res.dual_multiplier.assign(lambda.begin(), lambda.end());
  return res;
}

CapacityResult augustin_capacity_unconstrained(Order alpha, const Channel& w,
                                               const CapacitySolverOptions&
                                                   opt) {
  return rg_capacity(alpha, w, {}, nullptr, opt);
}

namespace {

// Evaluates C^l for the dual search, numerically or from an analytic curve.
// Numeric evaluations run at a relaxed tolerance and warm-start from the
// previous multiplier's maximizer; the solve at the final multiplier is
// polished at full tolerance.
struct DualEvaluator {
  Order alpha;
  const Channel* w;
  const CostSpec* cost;
  const CapacitySolverOptions* opt;
  const AnalyticDualCurve* analytic;
  mutable std::optional<CapacityResult> last;

  double value(std::span<const double> lambda, bool polish = false) const {
    if (analytic) {
      double lmin = analytic->lambda_min_finite;
      for (double l : lambda)
        if (l < lmin - 1e-15) return kInf;
      return analytic->plateau;
    }
    CapacitySolverOptions local = *opt;
    if (!polish) local.tol = std::max(opt->tol, 1e-7);
    const Prob* hint =
        (last && last->argmax_input) ? &*last->argmax_input : nullptr;
    last = rg_capacity(alpha, *w, lambda, cost, local, hint);
    return last->value;
  }

  Prob center(std::span<const double> lambda) const {
    if (analytic) return analytic->center;
    value(lambda, true);
    return *last->center;
  }
};

// Golden-section minimization of a convex univariate function on [lo, hi].
double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double tol, std::int64_t max_iter = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (std::int64_t i = 0; i < max_iter && (b - a) > tol; ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return (fc <= fd) ? c : d;
}

}  // namespace

CapacityResult cost_constrained_capacity(Order alpha, const Channel& w,
                                         const CostSpec& cost,
                                         std::span<const double> rho,
                                         const CapacitySolverOptions& opt,
                                         const AnalyticDualCurve* analytic) {
  if (rho.size() != cost.dim())
    throw std::invalid_argument("cost_constrained_capacity: rho dimension");
  if (cost.dim() > 3)
    throw std::invalid_argument(
        "cost_constrained_capacity: cost dimensions above 3 are not supported");
  // A constraint no input can violate is vacuous; the problem is the
  // unconstrained one with a zero multiplier.
  bool vacuous = true;
  auto cmax = cost.componentwise_max();
  for (std::size_t i = 0; i < cost.dim(); ++i)
    vacuous = vacuous && cmax[i] <= rho[i];
  if (vacuous) {
    CapacityResult res = rg_capacity(alpha, w, {}, nullptr, opt);
    res.dual_multiplier.assign(cost.dim(), 0.0);
    return res;
  }

  double margin = cost.feasibility_margin(rho);
  if (margin > 1e-12)
    throw std::domain_error("cost_constrained_capacity: rho is infeasible");
  if (margin > -1e-12)
    throw std::domain_error(
        "cost_constrained_capacity: rho lies on the boundary of the feasible "
        "set, where duality can fail (non-upper-semicontinuous example)");

  DualEvaluator eval{alpha, &w, &cost, &opt, analytic, std::nullopt};
  const std::size_t ell = cost.dim();

  auto g = [&](const std::vector<double>& lambda) {
    double v = eval.value(lambda);
    if (!std::isfinite(v)) return kInf;
    for (std::size_t i = 0; i < ell; ++i) v += lambda[i] * rho[i];
    return v;
  };

  // Bracket each coordinate: the dual grows once lambda_i(rho_i - min c_i)
  // dominates, so doubling from 1 finds an upper end.
  std::vector<double> lambda(ell, 0.0);
  double lambda_floor = analytic ? analytic->lambda_min_finite : 0.0;
  std::vector<double> lo(ell, lambda_floor), hi(ell, 0.0);
  for (std::size_t i = 0; i < ell; ++i) {
    double h = std::max(1.0, 2.0 * lambda_floor + 1e-6);
    std::vector<double> probe(lambda);
    double base;
    for (;;) {
      probe[i] = h;
      for (std::size_t j = 0; j < ell; ++j)
        if (j != i) probe[j] = std::max(lambda[j], lambda_floor);
      base = g(probe);
      probe[i] = 2.0 * h;
      double far = g(probe);
      if (far >= base || h > 1e9) break;
      h *= 2.0;
    }
    hi[i] = 2.0 * h;
    lambda[i] = std::max(lambda_floor, 0.0);
  }

  const double lam_tol = 1e-8;
  std::int64_t sweeps = (ell == 1) ? 1 : 30;
  for (std::int64_t s = 0; s < sweeps; ++s) {
    double moved = 0.0;
    for (std::size_t i = 0; i < ell; ++i) {
      auto f1 = [&](double li) {
        std::vector<double> lam2(lambda);
        lam2[i] = li;
        return g(lam2);
      };
      double best = golden_min(f1, lo[i], hi[i], lam_tol);
      moved = std::max(moved, std::fabs(best - lambda[i]));
      lambda[i] = best;
    }
    if (moved < 1e-9) break;
  }

  CapacityResult res;
  res.dual_multiplier = lambda;
  double cl = eval.value(lambda, true);
  res.value = cl;
  for (std::size_t i = 0; i < ell; ++i) res.value += lambda[i] * rho[i];
  res.center = analytic ? analytic->center : *eval.last->center;
  res.diagnostics.converged = std::isfinite(res.value);

  // Primal candidate: the inner argmax, pulled onto the feasible set if
  // needed by blending toward the cheapest input.
  if (!analytic && eval.last && eval.last->argmax_input) {
    Prob cand = *eval.last->argmax_input;
    auto exceeds = [&](const Prob& p) {
      auto e = cost.expected_cost(p);
      for (std::size_t i = 0; i < ell; ++i)
        if (e[i] > rho[i] + 1e-12) return true;
      return false;
    };
    if (exceeds(cand)) {
      // cheapest input w.r.t. the multiplier direction
      std::size_t x0 = 0;
      double bestc = kInf;
      for (std::size_t x = 0; x < w.num_inputs(); ++x) {
        double cx = 0.0;
        for (std::size_t i = 0; i < ell; ++i) cx += cost.cost(x)[i];
        if (cx < bestc) {
          bestc = cx;
          x0 = x;
        }
      }
      double t_lo = 0.0, t_hi = 1.0;
      for (int k = 0; k < 60; ++k) {
        double t = 0.5 * (t_lo + t_hi);
        std::vector<double> v(cand.weights());
        for (std::size_t x = 0; x < v.size(); ++x) v[x] *= (1.0 - t);
        v[x0] += t;
        if (exceeds(Prob(v)))
          t_lo = t;
        else
          t_hi = t;
      }
      std::vector<double> v(cand.weights());
      for (std::size_t x = 0; x < v.size(); ++x) v[x] *= (1.0 - t_hi);
      v[x0] += t_hi;
      cand = Prob(std::move(v));
    }
    AugustinSolverOptions mo{opt.mean_tol, 10000};
    double primal = augustin_information(alpha, cand, w, mo);
    res.argmax_input = cand;
    res.diagnostics.dual_gap_estimate = res.value - primal;
  }
  if (eval.last) res.diagnostics.iterations = eval.last->diagnostics.iterations;
  return res;
}

AllocationResult cost_allocation_capacity(Order alpha,
                                          const std::vector<AllocationPart>&
                                              parts,
                                          std::span<const double> rho,
                                          const CapacitySolverOptions& opt) {
  if (parts.empty())
    throw std::invalid_argument("cost_allocation_capacity: no parts");
  const std::size_t ell = parts[0].cost->dim();
  if (rho.size() != ell)
    throw std::invalid_argument("cost_allocation_capacity: rho dimension");
  for (const auto& part : parts)
    if (part.cost->dim() != ell)
      throw std::invalid_argument(
          "cost_allocation_capacity: inconsistent cost dimensions");
  if (ell != 1)
    throw std::invalid_argument(
        "cost_allocation_capacity: only scalar costs are supported");

  double lambda_floor = 0.0;
  for (const auto& part : parts)
    if (part.analytic)
      lambda_floor = std::max(lambda_floor, part.analytic->lambda_min_finite);

  auto part_value = [&](const AllocationPart& part, double l) {
    std::vector<double> lam{l};
    if (part.analytic) {
      if (l < part.analytic->lambda_min_finite - 1e-15) return kInf;
      return part.analytic->plateau;
    }
    return rg_capacity(alpha, *part.channel, lam, part.cost, opt).value;
  };
  auto g = [&](double l) {
    double v = l * rho[0];
    for (const auto& part : parts) {
      double pv = part_value(part, l);
      if (!std::isfinite(pv)) return kInf;
      v += pv;
    }
    return v;
  };

  double h = std::max(1.0, 2.0 * lambda_floor + 1e-6);
  while (g(2.0 * h) < g(h) && h < 1e9) h *= 2.0;
  double lam_star = golden_min(g, lambda_floor, 2.0 * h, 1e-10);

  AllocationResult out;
  out.lambda_star = {lam_star};
  out.value = lam_star * rho[0];
  for (const auto& part : parts) {
    std::vector<double> lam{lam_star};
    if (part.analytic) {
      out.part_values.push_back(part.analytic->plateau);
      out.part_centers.push_back(part.analytic->center);
      out.value += part.analytic->plateau;
    } else {
      CapacityResult r = rg_capacity(alpha, *part.channel, lam, part.cost, opt);
      out.part_values.push_back(r.value);
      out.part_centers.push_back(*r.center);
      out.value += r.value;
      out.diagnostics.inner_residual = std::max(
          out.diagnostics.inner_residual, r.diagnostics.inner_residual);
    }
  }
  out.diagnostics.converged = std::isfinite(out.value);
  return out;
}

ProductCheck product_al_capacity_check(Order alpha,
                                       const std::vector<AllocationPart>&
                                           parts,
                                       std::span<const double> lambda,
                                       const CapacitySolverOptions& opt,
                                       std::size_t max_product_size) {
  if (parts.empty())
    throw std::invalid_argument("product_al_capacity_check: no parts");
  std::size_t nx = 1, ny = 1;
  for (const auto& part : parts) {
    nx *= part.channel->num_inputs();
    ny *= part.channel->num_outputs();
  }
  if (nx > max_product_size || ny > max_product_size)
    throw std::invalid_argument("product_al_capacity_check: product too large");

  std::vector<Channel> channels;
  for (const auto& part : parts) channels.push_back(*part.channel);
  Channel prod = product_channel(channels);

  // additive cost on the product, same multiplier dimension everywhere
  const std::size_t ell = parts[0].cost->dim();
  std::vector<std::vector<double>> pc;
  pc.reserve(nx);
  std::vector<std::size_t> idx(parts.size(), 0);
  for (std::size_t flat = 0; flat < nx; ++flat) {
    std::vector<double> c(ell, 0.0);
    std::size_t rem = flat;
    for (std::size_t t = parts.size(); t-- > 0;) {
      std::size_t n_t = parts[t].channel->num_inputs();
      idx[t] = rem % n_t;
      rem /= n_t;
    }
    for (std::size_t t = 0; t < parts.size(); ++t)
      for (std::size_t i = 0; i < ell; ++i)
        c[i] += parts[t].cost->cost(idx[t])[i];
    pc.push_back(std::move(c));
  }
  CostSpec prod_cost(ell, std::move(pc));

  CapacityResult whole = rg_capacity(alpha, prod, lambda, &prod_cost, opt);
  double sum = 0.0;
  std::vector<Prob> centers;
  for (const auto& part : parts) {
    CapacityResult r = rg_capacity(alpha, *part.channel, lambda, part.cost, opt);
    sum += r.value;
    centers.push_back(*r.center);
  }

  ProductCheck check;
  check.capacity_gap = std::fabs(whole.value - sum);

  Prob tensor = product_prob(centers);
  double radius = -kInf;
  for (std::size_t x = 0; x < prod.num_inputs(); ++x) {
    double div = renyi_divergence_raw(alpha, prod.row(x), tensor.weights());
    double lc = lambda.empty() ? 0.0 : prod_cost.dot(x, lambda);
    radius = std::max(radius, div - lc);
  }
  check.center_radius_gap = std::fabs(radius - sum);
  return check;
}

double ehb_gap(Order alpha, const Channel& w, std::span<const double> lambda,
               const CostSpec* cost, const CapacityResult& result,
               const Prob& q, bool gallager_form) {
  if (!result.center)
    throw std::invalid_argument("ehb_gap: capacity result has no center");
  double radius = -kInf;
  for (std::size_t x = 0; x < w.num_inputs(); ++x) {
    double div = renyi_divergence_raw(alpha, w.row(x), q.weights());
    double lc = (lambda.empty() || !cost) ? 0.0 : cost->dot(x, lambda);
    radius = std::max(radius, div - lc);
  }
  if (!std::isfinite(radius)) return kInf;
  Order r = gallager_form
                ? alpha
                : (alpha.is_one() || alpha.alpha() < 1.0 ? alpha : Order::one());
  double dcq =
      renyi_divergence_raw(r, result.center->weights(), q.weights());
  if (!std::isfinite(dcq)) return kInf;
  return radius - result.value - dcq;
}

double brute_force_capacity(Order alpha, const Channel& w,
                            std::span<const double> lambda,
                            const CostSpec* cost, double grid_step,
                            const AugustinSolverOptions& mean_opt) {
  if (w.num_inputs() > 3)
    throw std::invalid_argument("brute_force_capacity: |X| must be <= 3");
  const std::size_t nx = w.num_inputs();

  auto objective = [&](const std::vector<double>& pv) {
    double mass = 0.0;
    for (double v : pv) mass += v;
    if (std::fabs(mass - 1.0) > 1e-6) return -kInf;
    std::vector<double> norm(pv);
    for (double& v : norm) v /= mass;
    Prob p(std::move(norm));
    double info = augustin_information(alpha, p, w, mean_opt);
    if (!lambda.empty() && cost) {
      auto e = cost->expected_cost(p);
      for (std::size_t i = 0; i < lambda.size(); ++i) info -= lambda[i] * e[i];
    }
    return info;
  };

  double best = -kInf;
  std::vector<double> best_p(nx, 1.0 / static_cast<double>(nx));
  detail::simplex_grid_foreach(nx, grid_step,
                               [&](const std::vector<double>& p) {
                                 double v = objective(p);
                                 if (v > best) {
                                   best = v;
                                   best_p = p;
                                 }
                               });
  auto refined = detail::nelder_mead_simplex_max(nx, best_p, grid_step, 400,
                                                 objective);
  best = std::max(best, objective(refined));
  // face optima sit outside the Nelder-Mead lift's reach
  best = std::max(best, detail::simplex_edge_max(nx, {}, 0.0, objective));
  return best;
}

std::vector<SweepRow> capacity_order_curve(const Channel& w,
                                           std::span<const double> orders,
                                           std::span<const double> lambda,
                                           const CostSpec* cost,
                                           const CapacitySolverOptions& opt) {
  std::vector<SweepRow> rows;
  std::optional<Prob> prev_center;
  std::vector<double> sorted(orders.begin(), orders.end());
  std::sort(sorted.begin(), sorted.end());
  for (double a : sorted) {
    Order order = (a == 1.0) ? Order::one() : Order::of(a);
    CapacityResult r = rg_capacity(order, w, lambda, cost, opt);
    SweepRow row;
    row.parameter = a;
    row.value = r.value;
    row.converged = r.diagnostics.converged;
    if (prev_center && r.center)
      row.center_tv_to_previous = total_variation(*r.center, *prev_center);
    prev_center = r.center;
    rows.push_back(row);
  }
  return rows;
}

std::vector<SweepRow> capacity_cost_curve(Order alpha, const Channel& w,
                                          const CostSpec& cost,
                                          std::span<const double> rhos,
                                          const CapacitySolverOptions& opt,
                                          const AnalyticDualCurve* analytic) {
  std::vector<SweepRow> rows;
  std::optional<Prob> prev_center;
  std::vector<double> sorted(rhos.begin(), rhos.end());
  std::sort(sorted.begin(), sorted.end());
  for (double rho : sorted) {
    std::vector<double> rv(cost.dim(), rho);
    CapacityResult r =
        cost_constrained_capacity(alpha, w, cost, rv, opt, analytic);
    SweepRow row;
    row.parameter = rho;
    row.value = r.value;
    row.lambda_star = r.dual_multiplier.empty() ? 0.0 : r.dual_multiplier[0];
    row.converged = r.diagnostics.converged;
    if (prev_center && r.center)
      row.center_tv_to_previous = total_variation(*r.center, *prev_center);
    prev_center = r.center;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace augustin
