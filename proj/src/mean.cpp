#include "augustin/mean.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace augustin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSupportFloor = 1e-15;

// Zeroes input weights below the support floor; the ln(1/P(x)) bounds on
// the mean blow up otherwise.
Prob trim_support(const Prob& p) {
  bool dirty = false;
  for (std::size_t x = 0; x < p.size(); ++x)
    if (p[x] > 0.0 && p[x] < kSupportFloor) dirty = true;
  if (!dirty) return p;
  std::vector<double> v = p.weights();
  for (double& x : v)
    if (x < kSupportFloor) x = 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  for (double& x : v) x /= s;
  return Prob(std::move(v));
}

double kl_raw(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    if (b[i] == 0.0) return kInf;
    s += a[i] * (std::log(a[i]) - std::log(b[i]));
  }
  return s;
}

void check_lambda_cost(const Channel& w, std::span<const double> lambda,
                       const CostSpec* cost) {
  if (lambda.empty()) return;
  if (cost == nullptr)
    throw std::invalid_argument("lambda given without a cost spec");
  if (cost->dim() != lambda.size())
    throw std::invalid_argument("lambda/cost dimension mismatch");
  if (cost->num_inputs() != w.num_inputs())
    throw std::invalid_argument("cost/input dimension mismatch");
}

// Normalizes exp(logits) restricted to the support of p.
Prob softmax_over_support(const Prob& p, const std::vector<double>& logits) {
  double m = -kInf;
  for (std::size_t x = 0; x < p.size(); ++x)
    if (p[x] > 0.0) m = std::max(m, logits[x]);
  std::vector<double> v(p.size(), 0.0);
  double s = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;
    v[x] = std::exp(logits[x] - m);
    s += v[x];
  }
  for (double& x : v) x /= s;
  return Prob(std::move(v));
}

}  // namespace

Prob order_one_mean(const Prob& p, const Channel& w) {
  if (p.size() != w.num_inputs())
    throw std::invalid_argument("order_one_mean: input index mismatch");
  std::vector<double> q(w.num_outputs(), 0.0);
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;
    auto r = w.row(x);
    for (std::size_t y = 0; y < q.size(); ++y) q[y] += p[x] * r[y];
  }
  return Prob(std::move(q));
}

Measure power_mean_measure(Order order, const Prob& p, const Channel& w,
                           std::span<const double> lambda,
                           const CostSpec* cost) {
  if (p.size() != w.num_inputs())
    throw std::invalid_argument("power_mean_measure: input index mismatch");
  check_lambda_cost(w, lambda, cost);
  if (order.is_one() && lambda.empty()) {
    return Measure(order_one_mean(p, w).weights());
  }
  const double a = order.alpha();
  std::vector<double> mu(w.num_outputs(), 0.0);
  for (std::size_t y = 0; y < mu.size(); ++y) {
    // log-sum-exp across inputs for entry y
    double m = -kInf;
    std::vector<double> terms;
    terms.reserve(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (p[x] == 0.0 || w.at(x, y) == 0.0) continue;
      double t = std::log(p[x]) + a * std::log(w.at(x, y));
      if (!lambda.empty()) t += (1.0 - a) * cost->dot(x, lambda);
      terms.push_back(t);
      m = std::max(m, t);
    }
    if (terms.empty()) {
      mu[y] = 0.0;
      continue;
    }
    double s = 0.0;
    for (double t : terms) s += std::exp(t - m);
    mu[y] = std::exp((m + std::log(s)) / a);
  }
  return Measure(std::move(mu));
}

Prob renyi_mean(Order order, const Prob& p, const Channel& w,
                std::span<const double> lambda, const CostSpec* cost) {
  return power_mean_measure(order, p, w, lambda, cost).normalize();
}

Prob augustin_operator(Order order, const Prob& p, const Channel& w,
                       const Prob& q) {
  if (p.size() != w.num_inputs())
    throw std::invalid_argument("augustin_operator: input index mismatch");
  if (q.size() != w.num_outputs())
    throw std::invalid_argument("augustin_operator: output index mismatch");
  if (order.is_one()) return order_one_mean(p, w);
  std::vector<double> out(w.num_outputs(), 0.0);
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;
    double div = renyi_divergence_raw(order, w.row(x), q.weights());
    if (!std::isfinite(div))
      throw std::domain_error(
          "augustin_operator: q outside the operator domain");
    Prob t = tilted_measure(order, w.row_prob(x), q);
    for (std::size_t y = 0; y < out.size(); ++y) out[y] += p[x] * t[y];
  }
  return Prob(std::move(out));
}

namespace {

// One step of the fixed-point identity in its power-mean form:
//   q' propto [ sum_x P(x) W(x,y)^a e^{(1-a) D_a(W(x)||q)} ]^{1/a}.
// This is the Augustin operator with a geometric 1/a damping; unlike the
// plain operator it cannot leave the domain for a > 1 because its support
// always equals supp q_{1,P}.
Prob weighted_power_mean_step(Order order, const Prob& p, const Channel& w,
                              const Prob& q) {
  const double a = order.alpha();
  std::vector<double> div(p.size(), 0.0);
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;
    div[x] = renyi_divergence_raw(order, w.row(x), q.weights());
    if (!std::isfinite(div[x]))
      throw std::domain_error("augustin mean step: q outside the domain");
  }
  std::vector<double> out(q.size(), 0.0);
  for (std::size_t y = 0; y < q.size(); ++y) {
    double m = -kInf;
    std::vector<double> terms;
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (p[x] == 0.0 || w.at(x, y) == 0.0) continue;
      double t = std::log(p[x]) + a * std::log(w.at(x, y)) +
                 (1.0 - a) * div[x];
      terms.push_back(t);
      m = std::max(m, t);
    }
    if (terms.empty()) continue;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - m);
    out[y] = std::exp((m + std::log(s)) / a);
  }
  return Measure(std::move(out)).normalize();
}

}  // namespace

AugustinSolution solve_augustin_mean(Order order, const Prob& p_in,
                                     const Channel& w,
                                     const AugustinSolverOptions& opt) {
  Prob p = trim_support(p_in);
  if (order.is_one()) {
    Prob mean = order_one_mean(p, w);
    double info = conditional_divergence(Order::one(), w, mean, p).nats;
    return AugustinSolution{std::move(mean), info, 0, 0.0, 0.0, true};
  }

  // For a < 1 the plain operator iteration converges from the Renyi mean;
  // for a > 1 it can be repelled from the fixed point, so the damped
  // power-mean step is used there.
  const double a = order.alpha();
  const bool use_power_step = a > 1.0;
  Prob q = renyi_mean(order, p, w);
  double residual = kInf;
  double best_residual = kInf;
  Prob best = q;
  std::int64_t it = 0;
  std::int64_t stalled = 0;
  bool damped = false;

  for (; it < opt.max_iter; ++it) {
    Prob next = use_power_step ? weighted_power_mean_step(order, p, w, q)
                               : augustin_operator(order, p, w, q);
    if (damped) {
      std::vector<double> avg(next.size());
      for (std::size_t y = 0; y < next.size(); ++y)
        avg[y] = 0.5 * (next[y] + q[y]);
      next = Prob(std::move(avg));
    }
    residual = total_variation(next, q);
    q = std::move(next);
    if (residual < best_residual) {
      best_residual = residual;
      best = q;
      stalled = 0;
    } else if (a > 1.0 && ++stalled >= 50 && !damped) {
      damped = true;  // averaged updates once the plain step stalls
      stalled = 0;
    }
    if (residual <= opt.tol) {
      ++it;
      break;
    }
  }

  bool converged = residual <= opt.tol;
  if (!converged) q = best;

  AugustinSolution sol{q,
                       conditional_divergence(order, w, q, p).nats,
                       it,
                       converged ? residual : best_residual,
                       0.0,
                       converged};
  sol.fixed_point_residual =
      total_variation(augustin_operator(order, p, w, q), q);
  return sol;
}

double augustin_information(Order order, const Prob& p, const Channel& w,
                            const AugustinSolverOptions& opt) {
  return solve_augustin_mean(order, p, w, opt).info;
}

double renyi_information(Order order, const Prob& p, const Channel& w) {
  if (order.is_one()) return augustin_information(order, p, w);
  const double a = order.alpha();
  double mass = power_mean_measure(order, p, w).total();
  return a / (a - 1.0) * std::log(mass);
}

double al_information(Order order, const Prob& p, const Channel& w,
                      std::span<const double> lambda, const CostSpec& cost,
                      const AugustinSolverOptions& opt) {
  double info = augustin_information(order, p, w, opt);
  auto e = cost.expected_cost(p);
  double shift = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) shift += lambda[i] * e[i];
  return info - shift;
}

double rg_information(Order order, const Prob& p, const Channel& w,
                      std::span<const double> lambda, const CostSpec& cost) {
  if (order.is_one()) {
    double mi = augustin_information(order, p, w);
    auto e = cost.expected_cost(p);
    double shift = 0.0;
    for (std::size_t i = 0; i < lambda.size(); ++i) shift += lambda[i] * e[i];
    return mi - shift;
  }
  const double a = order.alpha();
  double mass = power_mean_measure(order, p, w, lambda, &cost).total();
  return a / (a - 1.0) * std::log(mass);
}

TransformPair poltyrev_transform(Order order, const Prob& p, const Channel& w,
                                 std::span<const double> lambda,
                                 const CostSpec* cost,
                                 const AugustinSolverOptions& opt) {
  if (order.is_one())
    throw std::invalid_argument("poltyrev_transform: order must differ from 1");
  check_lambda_cost(w, lambda, cost);
  const double a = order.alpha();
  AugustinSolution sol = solve_augustin_mean(order, p, w, opt);
  if (!sol.converged)
    throw std::domain_error("poltyrev_transform: mean solve did not converge");

  std::vector<double> logits(p.size(), 0.0);
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;
    double d = renyi_divergence_raw(order, w.row(x), sol.mean.weights());
    double lc = lambda.empty() ? 0.0 : cost->dot(x, lambda);
    logits[x] = std::log(p[x]) + (1.0 - a) * d + (a - 1.0) * lc;
  }
  Prob u = softmax_over_support(p, logits);

  CostSpec zero = CostSpec::zero(w.num_inputs(), lambda.empty() ? 1 : lambda.size());
  const CostSpec& cs = cost ? *cost : zero;
  std::vector<double> lam(lambda.begin(), lambda.end());
  if (lam.empty()) lam.assign(cs.dim(), 0.0);

  double lhs = al_information(order, p, w, lam, cs, opt);
  double g_u = rg_information(order, u, w, lam, cs);
  double rhs = g_u + kl_raw(p.weights(), u.weights()) / (a - 1.0);
  return TransformPair{p, std::move(u), std::fabs(lhs - rhs)};
}

TransformPair shayevitz_transform(Order order, const Prob& p, const Channel& w,
                                  std::span<const double> lambda,
                                  const CostSpec* cost,
                                  const AugustinSolverOptions& opt) {
  if (order.is_one())
    throw std::invalid_argument(
        "shayevitz_transform: order must differ from 1");
  check_lambda_cost(w, lambda, cost);
  const double a = order.alpha();
  Prob rg_mean = renyi_mean(order, p, w, lambda, cost);

  std::vector<double> logits(p.size(), 0.0);
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;
    double d = renyi_divergence_raw(order, w.row(x), rg_mean.weights());
    double lc = lambda.empty() ? 0.0 : cost->dot(x, lambda);
    logits[x] = std::log(p[x]) + (a - 1.0) * d + (1.0 - a) * lc;
  }
  Prob trans = softmax_over_support(p, logits);

  CostSpec zero = CostSpec::zero(w.num_inputs(), lambda.empty() ? 1 : lambda.size());
  const CostSpec& cs = cost ? *cost : zero;
  std::vector<double> lam(lambda.begin(), lambda.end());
  if (lam.empty()) lam.assign(cs.dim(), 0.0);

  double lhs = rg_information(order, p, w, lam, cs);
  double i_a = al_information(order, trans, w, lam, cs, opt);
  double rhs = i_a - kl_raw(trans.weights(), p.weights()) / (a - 1.0);
  return TransformPair{p, std::move(trans), std::fabs(lhs - rhs)};
}

double csiszar_decomposition_residual(Order order, const Prob& p,
                                      const Channel& w,
                                      const AugustinSolverOptions& opt) {
  if (order.is_one())
    throw std::invalid_argument(
        "csiszar_decomposition_residual: order must differ from 1");
  const double a = order.alpha();
  AugustinSolution sol = solve_augustin_mean(order, p, w, opt);
  if (!sol.converged)
    throw std::domain_error(
        "csiszar_decomposition_residual: mean solve did not converge");

  // Tilted channel rows on the support of P; off-support rows are unused.
  std::vector<std::vector<double>> rows(w.num_inputs());
  for (std::size_t x = 0; x < w.num_inputs(); ++x) {
    if (p[x] > 0.0) {
      rows[x] = tilted_measure(order, w.row_prob(x), sol.mean).weights();
    } else {
      rows[x] = std::vector<double>(w.row(x).begin(), w.row(x).end());
    }
  }
  Channel tilted(rows);

  double crd = 0.0;  // D_1(W^q_a || W | P)
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;
    crd += p[x] * kl_raw(tilted.row(x), w.row(x));
  }
  double mi = augustin_information(Order::one(), p, tilted, opt);
  double rhs = a / (1.0 - a) * crd + mi;
  return std::fabs(sol.info - rhs);
}

double augustin_info_order_derivative(Order order, const Prob& p,
                                      const Channel& w,
                                      const AugustinSolverOptions& opt) {
  if (order.is_one()) {
    Prob q1 = order_one_mean(trim_support(p), w);
    double s = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (p[x] == 0.0) continue;
      double d1 = renyi_divergence_raw(Order::one(), w.row(x), q1.weights());
      double m = 0.0;
      auto r = w.row(x);
      for (std::size_t y = 0; y < q1.size(); ++y) {
        if (r[y] == 0.0) continue;
        double lr = std::log(r[y]) - std::log(q1[y]) - d1;
        m += r[y] * lr * lr;
      }
      s += 0.5 * p[x] * m;
    }
    return s;
  }
  const double a = order.alpha();
  AugustinSolution sol = solve_augustin_mean(order, p, w, opt);
  if (!sol.converged)
    throw std::domain_error(
        "augustin_info_order_derivative: mean solve did not converge");
  double crd = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;
    Prob t = tilted_measure(order, w.row_prob(x), sol.mean);
    crd += p[x] * kl_raw(t.weights(), w.row(x));
  }
  return crd / ((a - 1.0) * (a - 1.0));
}

}  // namespace augustin
