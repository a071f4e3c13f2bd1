#include "augustin/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace augustin {

Order Order::of(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("order must be positive");
  if (alpha == 1.0) return one();
  if (std::fabs(alpha - 1.0) <= 1e-12)
    throw std::invalid_argument(
        "order within 1e-12 of 1; use Order::one() for the exact-one branch");
  return Order(alpha, false);
}

namespace {

// Validates nonnegativity and, when `stochastic`, renormalizes a near-unit
// total mass.  Returns true when a renormalization happened.
bool validate_weights(std::vector<double>& w, bool stochastic,
                      const char* what) {
  if (w.empty()) throw std::invalid_argument(std::string(what) + ": empty");
  for (double v : w) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string(what) +
                                  ": negative or non-finite weight");
  }
  double s = std::accumulate(w.begin(), w.end(), 0.0);
  if (!stochastic) return false;
  if (s <= 0.0) throw std::invalid_argument(std::string(what) + ": zero mass");
  if (std::fabs(s - 1.0) > kNormalizationTolerance)
    throw std::invalid_argument(std::string(what) +
                                ": weights do not sum to 1");
  if (s == 1.0) return false;
  for (double& v : w) v /= s;
  return true;
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::to_string(i);
  return out;
}

}  // namespace

Prob::Prob(std::vector<double> weights) : w_(std::move(weights)) {
  renormalized_ = validate_weights(w_, true, "Prob");
}

std::vector<std::size_t> Prob::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i] > 0.0) s.push_back(i);
  return s;
}

Measure::Measure(std::vector<double> weights) : w_(std::move(weights)) {
  validate_weights(w_, false, "Measure");
}

double Measure::total() const {
  return std::accumulate(w_.begin(), w_.end(), 0.0);
}

Prob Measure::normalize() const {
  double s = total();
  if (!(s > 0.0))
    throw std::domain_error("Measure::normalize: zero total mass");
  std::vector<double> v(w_);
  for (double& x : v) x /= s;
  return Prob(std::move(v));
}

Channel::Channel(std::vector<std::vector<double>> rows,
                 std::vector<std::string> input_labels,
                 std::vector<std::string> output_labels) {
  if (rows.empty()) throw std::invalid_argument("Channel: no rows");
  nx_ = rows.size();
  ny_ = rows[0].size();
  if (ny_ == 0) throw std::invalid_argument("Channel: empty rows");
  m_.reserve(nx_ * ny_);
  for (auto& r : rows) {
    if (r.size() != ny_)
      throw std::invalid_argument("Channel: ragged rows");
    Prob p(std::move(r));  // validates + renormalizes
    renormalized_ = renormalized_ || p.was_renormalized();
    m_.insert(m_.end(), p.weights().begin(), p.weights().end());
  }
  in_labels_ =
      input_labels.empty() ? default_labels(nx_) : std::move(input_labels);
  out_labels_ =
      output_labels.empty() ? default_labels(ny_) : std::move(output_labels);
  if (in_labels_.size() != nx_ || out_labels_.size() != ny_)
    throw std::invalid_argument("Channel: label count mismatch");
}

Prob Channel::row_prob(std::size_t x) const {
  auto r = row(x);
  return Prob(std::vector<double>(r.begin(), r.end()));
}

CostSpec::CostSpec(std::size_t dim, std::vector<std::vector<double>> costs)
    : dim_(dim), costs_(std::move(costs)) {
  if (dim_ == 0) throw std::invalid_argument("CostSpec: dim must be >= 1");
  if (costs_.empty()) throw std::invalid_argument("CostSpec: no inputs");
  for (const auto& c : costs_) {
    if (c.size() != dim_)
      throw std::invalid_argument("CostSpec: cost dimension mismatch");
    for (double v : c)
      if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument("CostSpec: negative cost component");
  }
}

CostSpec CostSpec::zero(std::size_t num_inputs, std::size_t dim) {
  return CostSpec(dim, std::vector<std::vector<double>>(
                           num_inputs, std::vector<double>(dim, 0.0)));
}

std::vector<double> CostSpec::expected_cost(const Prob& p) const {
  if (p.size() != costs_.size())
    throw std::invalid_argument("CostSpec::expected_cost: size mismatch");
  std::vector<double> e(dim_, 0.0);
  for (std::size_t x = 0; x < costs_.size(); ++x)
    for (std::size_t i = 0; i < dim_; ++i) e[i] += p[x] * costs_[x][i];
  return e;
}

double CostSpec::dot(std::size_t x, std::span<const double> lambda) const {
  if (lambda.size() != dim_)
    throw std::invalid_argument("CostSpec::dot: multiplier dimension");
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += lambda[i] * costs_[x][i];
  return s;
}

namespace {

// min over inputs of w.(c(x)-rho) for a fixed weight vector w.
double min_slack(const std::vector<std::vector<double>>& costs,
                 std::span<const double> rho, std::span<const double> w) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : costs) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * (c[i] - rho[i]);
    best = std::min(best, s);
  }
  return best;
}

}  // namespace

// Exact evaluation of max_{w in simplex} min_x w.(c(x)-rho).
// The inner min is concave piecewise-linear in w; its maximum over the
// weight simplex sits either at a simplex vertex, at a pairwise crossing of
// the linear pieces (dim 2 faces), or at a triple crossing (dim 3).
// Enumeration is exact for dim <= 3, which is all this library supports.
double CostSpec::feasibility_margin(std::span<const double> rho) const {
  if (rho.size() != dim_)
    throw std::invalid_argument("CostSpec: constraint dimension mismatch");
  const auto& C = costs_;
  const std::size_t n = C.size();

  double best = -std::numeric_limits<double>::infinity();
  auto consider = [&](std::span<const double> w) {
    best = std::max(best, min_slack(C, rho, w));
  };

  // Vertices of the weight simplex: single-component constraints.
  for (std::size_t i = 0; i < dim_; ++i) {
    std::vector<double> w(dim_, 0.0);
    w[i] = 1.0;
    consider(w);
  }
  if (dim_ == 1) return best;

  // Crossings on each 2-face spanned by components (i, j):
  // t*(d_i(x) - d_j(x)) + d_j(x) for lines x, y cross at a rational t.
  auto d = [&](std::size_t x, std::size_t i) { return C[x][i] - rho[i]; };
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) {
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = x + 1; y < n; ++y) {
          double ax = d(x, i) - d(x, j), bx = d(x, j);
          double ay = d(y, i) - d(y, j), by = d(y, j);
          double den = ax - ay;
          if (den == 0.0) continue;
          double t = (by - bx) / den;
          if (t <= 0.0 || t >= 1.0) continue;
          std::vector<double> w(dim_, 0.0);
          w[i] = t;
          w[j] = 1.0 - t;
          consider(w);
        }
      }
    }
  }
  if (dim_ == 2) return best;

  // Interior candidates of the full 2-simplex (dim 3): points where three
  // affine pieces coincide, solved from a 3x3 linear system.
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      for (std::size_t z = y + 1; z < n; ++z) {
        // w . d(x) = w . d(y) = w . d(z), sum w = 1.
        double a[3][3] = {
            {d(x, 0) - d(y, 0), d(x, 1) - d(y, 1), d(x, 2) - d(y, 2)},
            {d(x, 0) - d(z, 0), d(x, 1) - d(z, 1), d(x, 2) - d(z, 2)},
            {1.0, 1.0, 1.0}};
        double rhs[3] = {0.0, 0.0, 1.0};
        // Gaussian elimination with partial pivoting.
        int piv[3] = {0, 1, 2};
        bool singular = false;
        for (int col = 0; col < 3 && !singular; ++col) {
          int p = col;
          for (int r = col + 1; r < 3; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[p][col])) p = r;
          if (std::fabs(a[p][col]) < 1e-14) {
            singular = true;
            break;
          }
          std::swap(a[col], a[p]);
          std::swap(rhs[col], rhs[p]);
          (void)piv;
          for (int r = col + 1; r < 3; ++r) {
            double f = a[r][col] / a[col][col];
            for (int cc = col; cc < 3; ++cc) a[r][cc] -= f * a[col][cc];
            rhs[r] -= f * rhs[col];
          }
        }
        if (singular) continue;
        double w2 = rhs[2] / a[2][2];
        double w1 = (rhs[1] - a[1][2] * w2) / a[1][1];
        double w0 = (rhs[0] - a[0][1] * w1 - a[0][2] * w2) / a[0][0];
        if (w0 <= 0.0 || w1 <= 0.0 || w2 <= 0.0) continue;
        double w[3] = {w0, w1, w2};
        consider(std::span<const double>(w, 3));
      }
    }
  }
  return best;
}

bool CostSpec::is_feasible(std::span<const double> rho) const {
  return feasibility_margin(rho) <= 1e-12;
}

bool CostSpec::is_interior(std::span<const double> rho) const {
  return feasibility_margin(rho) < -1e-12;
}

std::vector<double> CostSpec::componentwise_min() const {
  std::vector<double> m(costs_[0]);
  for (const auto& c : costs_)
    for (std::size_t i = 0; i < dim_; ++i) m[i] = std::min(m[i], c[i]);
  return m;
}

std::vector<double> CostSpec::componentwise_max() const {
  std::vector<double> m(costs_[0]);
  for (const auto& c : costs_)
    for (std::size_t i = 0; i < dim_; ++i) m[i] = std::max(m[i], c[i]);
  return m;
}

Channel product_channel(const std::vector<Channel>& parts) {
  if (parts.empty())
    throw std::invalid_argument("product_channel: empty part list");
  if (parts.size() == 1) return parts[0];

  Channel acc = parts[0];
  for (std::size_t k = 1; k < parts.size(); ++k) {
    const Channel& b = parts[k];
    std::size_t nx = acc.num_inputs() * b.num_inputs();
    std::size_t ny = acc.num_outputs() * b.num_outputs();
    std::vector<std::vector<double>> rows;
    rows.reserve(nx);
    std::vector<std::string> in_labels, out_labels;
    in_labels.reserve(nx);
    out_labels.reserve(ny);
    for (std::size_t xa = 0; xa < acc.num_inputs(); ++xa) {
      for (std::size_t xb = 0; xb < b.num_inputs(); ++xb) {
        std::vector<double> r;
        r.reserve(ny);
        for (std::size_t ya = 0; ya < acc.num_outputs(); ++ya)
          for (std::size_t yb = 0; yb < b.num_outputs(); ++yb)
            r.push_back(acc.at(xa, ya) * b.at(xb, yb));
        rows.push_back(std::move(r));
        in_labels.push_back(acc.input_labels()[xa] + "," +
                            b.input_labels()[xb]);
      }
    }
    for (std::size_t ya = 0; ya < acc.num_outputs(); ++ya)
      for (std::size_t yb = 0; yb < b.num_outputs(); ++yb)
        out_labels.push_back(acc.output_labels()[ya] + "," +
                             b.output_labels()[yb]);
    acc = Channel(std::move(rows), std::move(in_labels), std::move(out_labels));
  }
  return acc;
}

Prob product_prob(const std::vector<Prob>& parts) {
  if (parts.empty())
    throw std::invalid_argument("product_prob: empty part list");
  std::vector<double> acc = parts[0].weights();
  for (std::size_t k = 1; k < parts.size(); ++k) {
    const auto& b = parts[k].weights();
    std::vector<double> next;
    next.reserve(acc.size() * b.size());
    for (double va : acc)
      for (double vb : b) next.push_back(va * vb);
    acc = std::move(next);
  }
  return Prob(std::move(acc));
}

double total_variation(const Prob& a, const Prob& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("total_variation: index sets differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

double shannon_entropy(const Prob& p) {
  double h = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) h -= p[i] * std::log(p[i]);
  return h;
}

Prob uniform_prob(std::size_t n) {
  return Prob(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

}  // namespace augustin
