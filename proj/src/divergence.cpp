#include "augustin/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace augustin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log sum exp over finite terms; empty -> -inf.
double log_sum_exp(const std::vector<double>& t) {
  if (t.empty()) return -kInf;
  double m = *std::max_element(t.begin(), t.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double v : t) s += std::exp(v - m);
  return m + std::log(s);
}

double total_mass(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

double renyi_divergence_raw(Order order, std::span<const double> w,
                            std::span<const double> q) {
  if (w.size() != q.size())
    throw std::invalid_argument("renyi_divergence: index sets differ");
  if (!(total_mass(w) > 0.0) || !(total_mass(q) > 0.0))
    throw std::invalid_argument("renyi_divergence: zero total mass");

  if (order.is_one()) {
    double s = 0.0;
    for (std::size_t y = 0; y < w.size(); ++y) {
      if (w[y] == 0.0) continue;
      if (q[y] == 0.0) return kInf;
      s += w[y] * (std::log(w[y]) - std::log(q[y]));
    }
    return s;
  }

  const double a = order.alpha();
  std::vector<double> logratio;
  std::vector<double> mass;
  logratio.reserve(w.size());
  for (std::size_t y = 0; y < w.size(); ++y) {
    if (w[y] == 0.0) continue;
    if (q[y] == 0.0) {
      if (a > 1.0) return kInf;
      continue;  // alpha < 1: the term w^a q^(1-a) vanishes
    }
    logratio.push_back(std::log(w[y]) - std::log(q[y]));
    mass.push_back(w[y]);
  }
  if (mass.empty()) return kInf;  // disjoint supports

  // sum w^a q^(1-a) = sum w e^{(a-1) ln(w/q)}.  Near a = 1 the log of the
  // sum cancels catastrophically; the expm1/log1p form keeps full relative
  // accuracy there.
  double xmax = 0.0;
  for (double r : logratio) xmax = std::max(xmax, std::fabs((a - 1.0) * r));
  if (xmax <= 0.5) {
    double base = 0.0, delta = 0.0;
    for (std::size_t i = 0; i < mass.size(); ++i) {
      base += mass[i];
      delta += mass[i] * std::expm1((a - 1.0) * logratio[i]);
    }
    return (std::log(base) + std::log1p(delta / base)) / (a - 1.0);
  }

  std::vector<double> terms(mass.size());
  for (std::size_t i = 0; i < mass.size(); ++i)
    terms[i] = std::log(mass[i]) + (a - 1.0) * logratio[i];
  return log_sum_exp(terms) / (a - 1.0);
}

DivergenceValue renyi_divergence(Order order, const Measure& w,
                                 const Measure& q) {
  return {renyi_divergence_raw(order, w.weights(), q.weights())};
}

DivergenceValue renyi_divergence(Order order, const Prob& w, const Prob& q) {
  return {renyi_divergence_raw(order, w.weights(), q.weights())};
}

Prob tilted_measure(Order order, const Prob& w, const Prob& q) {
  if (order.is_one()) return w;
  const double a = order.alpha();
  double div = renyi_divergence_raw(order, w.weights(), q.weights());
  if (!std::isfinite(div))
    throw std::domain_error("tilted_measure: infinite divergence");
  std::vector<double> t(w.size(), 0.0);
  for (std::size_t y = 0; y < w.size(); ++y) {
    if (w[y] == 0.0 || q[y] == 0.0) continue;
    t[y] = std::exp(a * std::log(w[y]) + (1.0 - a) * std::log(q[y]) +
                    (1.0 - a) * div);
  }
  // The normalizer above is exact in exact arithmetic; trim rounding.
  double s = total_mass(t);
  for (double& v : t) v /= s;
  return Prob(std::move(t));
}

TiltedChannel tilted_channel(Order order, const Channel& w, const Prob& q) {
  if (q.size() != w.num_outputs())
    throw std::invalid_argument("tilted_channel: output index mismatch");
  TiltedChannel out;
  out.rows.resize(w.num_inputs());
  out.defined.assign(w.num_inputs(), false);
  for (std::size_t x = 0; x < w.num_inputs(); ++x) {
    double div = renyi_divergence_raw(order, w.row(x), q.weights());
    if (!std::isfinite(div)) continue;
    out.rows[x] = tilted_measure(order, w.row_prob(x), q).weights();
    out.defined[x] = true;
    ++out.num_defined;
  }
  if (out.num_defined == 0)
    throw std::domain_error("tilted_channel: every row diverges");
  return out;
}

DivergenceValue conditional_divergence(Order order, const Channel& w,
                                       const Prob& q, const Prob& p) {
  if (p.size() != w.num_inputs())
    throw std::invalid_argument("conditional_divergence: input index mismatch");
  if (q.size() != w.num_outputs())
    throw std::invalid_argument(
        "conditional_divergence: output index mismatch");
  double s = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;
    double d = renyi_divergence_raw(order, w.row(x), q.weights());
    if (!std::isfinite(d)) return DivergenceValue::infinity();
    s += p[x] * d;
  }
  return {s};
}

namespace {

// KL divergence between two equal-length pmfs given as plain vectors.
double kl(const std::vector<double>& a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    if (b[i] == 0.0) return kInf;
    s += a[i] * (std::log(a[i]) - std::log(b[i]));
  }
  return s;
}

void require_finite_neighborhood(Order order, const Prob& w, const Prob& q) {
  double here = renyi_divergence_raw(order, w.weights(), q.weights());
  if (!std::isfinite(here))
    throw std::domain_error("divergence derivative: divergence infinite");
  // Finiteness at a slightly larger order certifies an open interval of
  // analyticity around alpha on finite alphabets.
  double bump = order.is_one() ? 1.0 + 1e-3 : order.alpha() * (1.0 + 1e-3);
  double above = renyi_divergence_raw(Order::of(bump), w.weights(), q.weights());
  if (!std::isfinite(above))
    throw std::domain_error(
        "divergence derivative: divergence infinite just above alpha");
}

}  // namespace

double divergence_derivative_in_order(Order order, const Prob& w,
                                      const Prob& q) {
  require_finite_neighborhood(order, w, q);
  if (order.is_one()) {
    double d1 = renyi_divergence_raw(Order::one(), w.weights(), q.weights());
    double s = 0.0;
    for (std::size_t y = 0; y < w.size(); ++y) {
      if (w[y] == 0.0) continue;
      double r = std::log(w[y]) - std::log(q[y]) - d1;
      s += w[y] * r * r;
    }
    return 0.5 * s;
  }
  const double a = order.alpha();
  Prob t = tilted_measure(order, w, q);
  double d1tw = kl(t.weights(), w.weights());
  return d1tw / ((a - 1.0) * (a - 1.0));
}

double divergence_second_derivative_in_order(Order order, const Prob& w,
                                             const Prob& q) {
  require_finite_neighborhood(order, w, q);
  if (order.is_one()) {
    double d1 = renyi_divergence_raw(Order::one(), w.weights(), q.weights());
    double s = 0.0;
    for (std::size_t y = 0; y < w.size(); ++y) {
      if (w[y] == 0.0) continue;
      double r = std::log(w[y]) - std::log(q[y]) - d1;
      s += w[y] * r * r * r;
    }
    return s / 3.0;
  }
  const double a = order.alpha();
  Prob t = tilted_measure(order, w, q);
  double d1tw = kl(t.weights(), w.weights());
  double second_moment = 0.0;
  for (std::size_t y = 0; y < t.size(); ++y) {
    if (t[y] == 0.0) continue;
    double lr = std::log(t[y]) - std::log(w[y]);
    second_moment += t[y] * lr * lr;
  }
  double c = (a - 1.0);
  return (second_moment - 2.0 * d1tw - d1tw * d1tw) / (c * c * c);
}

double variational_residual(Order order, const Prob& w, const Prob& q) {
  if (order.is_one())
    throw std::invalid_argument("variational_residual: order must differ from 1");
  const double a = order.alpha();
  double div = renyi_divergence_raw(order, w.weights(), q.weights());
  if (!std::isfinite(div))
    throw std::domain_error("variational_residual: infinite divergence");
  Prob t = tilted_measure(order, w, q);
  double d1tw = kl(t.weights(), w.weights());
  if (!std::isfinite(d1tw))
    throw std::domain_error("variational_residual: D_1(tilted||w) infinite");
  double d1tq = kl(t.weights(), q.weights());
  double rhs = a / (1.0 - a) * d1tw + d1tq;
  return std::fabs(div - rhs);
}

}  // namespace augustin
