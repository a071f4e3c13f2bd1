// Closed forms for the scalar Gaussian channel with quadratic cost and its
// parallel combinations: center variance, capacity, A-L capacity, their
// derivatives, the water-filling allocation, and a discretizer that bridges
// the analytic family to the finite-alphabet pipeline.

#ifndef AUGUSTIN_GAUSSIAN_HPP
#define AUGUSTIN_GAUSSIAN_HPP

#include <utility>
#include <vector>

#include "augustin/core.hpp"

namespace augustin {

/// Variance theta of the order-alpha Augustin center of N(.,sigma2) under
/// input power rho; the unique root greater than sigma2 of the fixed-point
/// cubic.
double scalar_center_variance(Order alpha, double sigma2, double rho);

/// Residual of the cubic theta[theta^2 - theta(rho + (2 - 1/a) s2)
///                              + (1 - 1/a) s2^2] at theta.
double scalar_center_cubic_residual(Order alpha, double sigma2, double rho,
                                    double theta);

/// C_alpha(W, rho) of the scalar Gaussian channel.
double scalar_capacity(Order alpha, double sigma2, double rho);

/// D_alpha( N(x, sigma2) || N(0, theta) ); +inf when the exponent matrix
/// degenerates (alpha theta + (1-alpha) sigma2 <= 0).
double gaussian_divergence(Order alpha, double x, double sigma2, double theta);

/// Output variance of A_{alpha,N(0,rho)}(N(0,theta)); theta at the center
/// variance is a fixed point.
double gaussian_operator_variance_map(Order alpha, double rho, double sigma2,
                                      double theta);

/// dC/drho, in (0, alpha/(2 sigma2)).
double scalar_capacity_derivative(Order alpha, double sigma2, double rho);
/// Same derivative through the center variance.
double scalar_capacity_derivative_via_theta(Order alpha, double sigma2,
                                            double rho);

/// A-L capacity C^lambda of the scalar Gaussian channel; 0 once
/// lambda >= alpha/(2 sigma2).
double scalar_al_capacity(Order alpha, double sigma2, double lambda);
/// Variance of the A-L center: sigma2 + (1/(2 lambda) - sigma2/alpha)^+.
double scalar_al_center_variance(Order alpha, double sigma2, double lambda);
/// dC^lambda/dlambda, nonpositive.
double al_capacity_derivative(Order alpha, double sigma2, double lambda);

struct WaterfillResult {
  std::vector<double> allocations;       // rho_t, sums to rho
  double lambda_star = 0.0;
  double capacity = 0.0;
  std::vector<double> center_variances;  // theta_t
};

/// Optimal power split across parallel Gaussian channels: bisection on the
/// multiplier so the per-channel allocations sum to rho.
WaterfillResult parallel_waterfill(Order alpha,
                                   const std::vector<double>& sigma2s,
                                   double rho);

/// Finite-channel bridge: rows are the cell probabilities of N(x, sigma2)
/// on a uniform partition of [lo, hi] with the two tail masses folded into
/// the end cells; cost c(x) = x^2.
std::pair<Channel, CostSpec> discretize_scalar_gaussian(
    double sigma2, const std::vector<double>& input_points, double lo,
    double hi, std::size_t cells);

}  // namespace augustin

#endif  // AUGUSTIN_GAUSSIAN_HPP
