// Finite-alphabet probability objects, channels and cost geometry.
//
// Conventions: all information quantities are in nats; weights are stored in
// linear scale, divergence kernels switch to log scale internally.

#ifndef AUGUSTIN_CORE_HPP
#define AUGUSTIN_CORE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace augustin {

// Ingestion tolerance: inputs whose total mass deviates from 1 by at most
// this much are renormalized; larger deviations are rejected.
inline constexpr double kNormalizationTolerance = 1e-9;
// Post-condition on renormalized objects.
inline constexpr double kNormalizedWithin = 1e-12;

/// Order of a Renyi divergence.  The alpha = 1 branch is selected only
/// through the explicit flag; values within 1e-12 of 1 (but not exactly 1)
/// are rejected so that the 1/(alpha-1) factors stay well conditioned.
class Order {
 public:
  static Order one() { return Order(1.0, true); }
  static Order of(double alpha);

  double alpha() const { return alpha_; }
  bool is_one() const { return one_; }

 private:
  Order(double alpha, bool one) : alpha_(alpha), one_(one) {}
  double alpha_;
  bool one_;
};

/// Probability mass function on a finite set.
class Prob {
 public:
  explicit Prob(std::vector<double> weights);

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  const std::vector<double>& weights() const { return w_; }
  bool was_renormalized() const { return renormalized_; }

  /// Indices with strictly positive weight.
  std::vector<std::size_t> support() const;

 private:
  std::vector<double> w_;
  bool renormalized_ = false;
};

/// Nonnegative finite measure on a finite set (not necessarily normalized).
class Measure {
 public:
  explicit Measure(std::vector<double> weights);

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  const std::vector<double>& weights() const { return w_; }

  double total() const;
  /// Defined only for positive total mass.
  Prob normalize() const;

 private:
  std::vector<double> w_;
};

/// Row-stochastic transition matrix W: inputs x outputs.
class Channel {
 public:
  Channel(std::vector<std::vector<double>> rows,
          std::vector<std::string> input_labels = {},
          std::vector<std::string> output_labels = {});

  std::size_t num_inputs() const { return nx_; }
  std::size_t num_outputs() const { return ny_; }
  double at(std::size_t x, std::size_t y) const { return m_[x * ny_ + y]; }
  std::span<const double> row(std::size_t x) const {
    return {m_.data() + x * ny_, ny_};
  }
  Prob row_prob(std::size_t x) const;

  const std::vector<std::string>& input_labels() const { return in_labels_; }
  const std::vector<std::string>& output_labels() const { return out_labels_; }
  bool was_renormalized() const { return renormalized_; }

 private:
  std::size_t nx_, ny_;
  std::vector<double> m_;  // row major
  std::vector<std::string> in_labels_, out_labels_;
  bool renormalized_ = false;
};

/// Per-input cost vectors c(x) in R^l, every component >= 0, together with
/// the feasibility geometry of the constraint set
///   Gamma_c = { rho : exists P with E_P[c] <= rho }.
class CostSpec {
 public:
  CostSpec(std::size_t dim, std::vector<std::vector<double>> costs);

  /// All-zero costs (the unconstrained case).
  static CostSpec zero(std::size_t num_inputs, std::size_t dim = 1);

  std::size_t dim() const { return dim_; }
  std::size_t num_inputs() const { return costs_.size(); }
  const std::vector<double>& cost(std::size_t x) const { return costs_[x]; }

  std::vector<double> expected_cost(const Prob& p) const;
  double dot(std::size_t x, std::span<const double> lambda) const;

  /// Worst-case slack max_{w in simplex} min_x w.(c(x)-rho).
  /// Negative: rho interior; zero: boundary; positive: infeasible.
  double feasibility_margin(std::span<const double> rho) const;
  bool is_feasible(std::span<const double> rho) const;
  bool is_interior(std::span<const double> rho) const;

  std::vector<double> componentwise_min() const;
  std::vector<double> componentwise_max() const;

 private:
  std::size_t dim_;
  std::vector<std::vector<double>> costs_;
};

// ---- operations ----

Channel product_channel(const std::vector<Channel>& parts);
Prob product_prob(const std::vector<Prob>& parts);

/// L1 distance, in [0, 2] for probability arguments.
double total_variation(const Prob& a, const Prob& b);

/// -sum p ln p, with 0 ln 0 := 0.  Nats.
double shannon_entropy(const Prob& p);

/// Uniform distribution on n points.
Prob uniform_prob(std::size_t n);

}  // namespace augustin

#endif  // AUGUSTIN_CORE_HPP
