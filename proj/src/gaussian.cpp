#include "augustin/gaussian.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace augustin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
}

}  // namespace

double scalar_center_variance(Order alpha, double sigma2, double rho) {
  require_positive(sigma2, "sigma2");
  require_positive(rho, "rho");
  const double a = alpha.alpha();
  double half_gap = rho / 2.0 - sigma2 / (2.0 * a);
  return sigma2 + rho / 2.0 - sigma2 / (2.0 * a) +
         std::sqrt(half_gap * half_gap + rho * sigma2);
}

double scalar_center_cubic_residual(Order alpha, double sigma2, double rho,
                                    double theta) {
  const double a = alpha.alpha();
  return theta * (theta * theta - theta * (rho + (2.0 - 1.0 / a) * sigma2) +
                  (1.0 - 1.0 / a) * sigma2 * sigma2);
}

double scalar_capacity(Order alpha, double sigma2, double rho) {
  require_positive(sigma2, "sigma2");
  require_positive(rho, "rho");
  if (alpha.is_one()) return 0.5 * std::log1p(rho / sigma2);
  const double a = alpha.alpha();
  double theta = scalar_center_variance(alpha, sigma2, rho);
  double denom = a * theta + (1.0 - a) * sigma2;
  return a * rho / (2.0 * denom) +
         1.0 / (a - 1.0) *
             (0.5 * a * std::log(theta) + (1.0 - a) * std::log(std::sqrt(sigma2)) -
              0.5 * std::log(denom));
}

double gaussian_divergence(Order alpha, double x, double sigma2,
                           double theta) {
  require_positive(sigma2, "sigma2");
  require_positive(theta, "theta");
  if (alpha.is_one())
    return (sigma2 + x * x - theta) / (2.0 * theta) +
           0.5 * std::log(theta / sigma2);
  const double a = alpha.alpha();
  double denom = a * theta + (1.0 - a) * sigma2;
  if (denom <= 0.0) return kInf;  // the defining integral diverges
  return a * x * x / (2.0 * denom) +
         1.0 / (a - 1.0) *
             (0.5 * a * std::log(theta) + (1.0 - a) * std::log(std::sqrt(sigma2)) -
              0.5 * std::log(denom));
}

double gaussian_operator_variance_map(Order alpha, double rho, double sigma2,
                                      double theta) {
  require_positive(sigma2, "sigma2");
  require_positive(theta, "theta");
  const double a = alpha.alpha();
  double denom = a * theta + (1.0 - a) * sigma2;
  if (denom <= 0.0)
    throw std::domain_error("gaussian operator: degenerate exponent");
  double shrink = a * theta / denom;
  return shrink * shrink * rho + sigma2 * theta / denom;
}

double scalar_capacity_derivative(Order alpha, double sigma2, double rho) {
  require_positive(sigma2, "sigma2");
  require_positive(rho, "rho");
  const double a = alpha.alpha();
  double gap = a * rho - sigma2;
  return a / (a * rho + sigma2 +
              std::sqrt(gap * gap + 4.0 * rho * a * a * sigma2));
}

double scalar_capacity_derivative_via_theta(Order alpha, double sigma2,
                                            double rho) {
  const double a = alpha.alpha();
  double theta = scalar_center_variance(alpha, sigma2, rho);
  return a / (2.0 * (a * theta + (1.0 - a) * sigma2));
}

double scalar_al_capacity(Order alpha, double sigma2, double lambda) {
  require_positive(sigma2, "sigma2");
  require_positive(lambda, "lambda");
  const double a = alpha.alpha();
  if (lambda >= a / (2.0 * sigma2)) return 0.0;
  double u = 2.0 * sigma2 * lambda / a;
  if (alpha.is_one()) return sigma2 * lambda - 0.5 * std::log(2.0 * M_E * sigma2 * lambda);
  return a / (a - 1.0) * 0.5 * std::log(1.0 / a + (a - 1.0) / a * u) -
         0.5 * std::log(u);
}

double scalar_al_center_variance(Order alpha, double sigma2, double lambda) {
  require_positive(sigma2, "sigma2");
  require_positive(lambda, "lambda");
  const double a = alpha.alpha();
  return sigma2 + std::max(0.0, 1.0 / (2.0 * lambda) - sigma2 / a);
}

double al_capacity_derivative(Order alpha, double sigma2, double lambda) {
  require_positive(sigma2, "sigma2");
  require_positive(lambda, "lambda");
  const double a = alpha.alpha();
  if (lambda >= a / (2.0 * sigma2)) return 0.0;
  return -(a - 2.0 * sigma2 * lambda) /
         (2.0 * lambda * (a + (a - 1.0) * 2.0 * sigma2 * lambda));
}

WaterfillResult parallel_waterfill(Order alpha,
                                   const std::vector<double>& sigma2s,
                                   double rho) {
  require_positive(rho, "rho");
  if (sigma2s.empty())
    throw std::invalid_argument("parallel_waterfill: no channels");
  for (double s : sigma2s) require_positive(s, "sigma2");
  const double a = alpha.alpha();

  auto allocation = [&](double s2, double lam) {
    double num = a - 2.0 * s2 * lam;
    if (num <= 0.0) return 0.0;
    return num / (2.0 * lam * (a + 2.0 * (a - 1.0) * s2 * lam));
  };
  auto total = [&](double lam) {
    double t = 0.0;
    for (double s : sigma2s) t += allocation(s, lam);
    return t;
  };

  // The total allocation is nonincreasing in lambda, +inf at 0+ and 0 at
  // max_t alpha/(2 sigma_t^2).
  double lo = 1e-12, hi = 0.0;
  for (double s : sigma2s) hi = std::max(hi, a / (2.0 * s));
  if (total(lo) < rho)
    throw std::domain_error("parallel_waterfill: bracket failure");
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (total(mid) > rho)
      lo = mid;
    else
      hi = mid;
  }
  double lam = 0.5 * (lo + hi);

  WaterfillResult out;
  out.lambda_star = lam;
  out.allocations.resize(sigma2s.size());
  out.center_variances.resize(sigma2s.size());
  double sum = 0.0;
  for (std::size_t t = 0; t < sigma2s.size(); ++t) {
    out.allocations[t] = allocation(sigma2s[t], lam);
    sum += out.allocations[t];
    out.center_variances[t] =
        sigma2s[t] + std::max(0.0, 1.0 / (2.0 * lam) - sigma2s[t] / a);
  }
  // Distribute bisection round-off so the allocations sum to rho exactly.
  if (sum > 0.0) {
    double scale = rho / sum;
    for (double& r : out.allocations) r *= scale;
  }
  out.capacity = 0.0;
  for (std::size_t t = 0; t < sigma2s.size(); ++t)
    if (out.allocations[t] > 0.0)
      out.capacity += scalar_capacity(alpha, sigma2s[t], out.allocations[t]);
  return out;
}

std::pair<Channel, CostSpec> discretize_scalar_gaussian(
    double sigma2, const std::vector<double>& input_points, double lo,
    double hi, std::size_t cells) {
  require_positive(sigma2, "sigma2");
  if (!(hi > lo)) throw std::invalid_argument("discretize: invalid range");
  if (cells < 2) throw std::invalid_argument("discretize: need >= 2 cells");
  if (input_points.empty())
    throw std::invalid_argument("discretize: no input points");

  const double sd = std::sqrt(sigma2);
  const double width = (hi - lo) / static_cast<double>(cells);
  auto cdf = [&](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };

  std::vector<std::vector<double>> rows;
  std::vector<std::vector<double>> costs;
  std::vector<std::string> in_labels;
  rows.reserve(input_points.size());
  for (double x : input_points) {
    std::vector<double> r(cells, 0.0);
    double prev = cdf((lo - x) / sd);
    for (std::size_t c = 0; c < cells; ++c) {
      double edge = lo + width * static_cast<double>(c + 1);
      double cur = cdf((edge - x) / sd);
      r[c] = std::max(0.0, cur - prev);
      prev = cur;
    }
    // fold tails into the end cells so the row is exactly stochastic
    r[0] += cdf((lo - x) / sd);
    r[cells - 1] += 1.0 - prev;
    double mass = 0.0;
    for (double v : r) mass += v;
    for (double& v : r) v /= mass;  // trims cdf round-off only
    rows.push_back(std::move(r));
    costs.push_back({x * x});
    in_labels.push_back(std::to_string(x));
  }
  Channel ch(std::move(rows), std::move(in_labels));
  return {std::move(ch), CostSpec(1, std::move(costs))};
}

}  // namespace augustin
