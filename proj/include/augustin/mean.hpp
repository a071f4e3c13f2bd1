// The Augustin operator, the fixed-point solver for the Augustin mean, and
// the per-input-distribution information quantities built on it: Augustin,
// Renyi, Augustin-Legendre and Renyi-Gallager informations, the
// Poltyrev/Shayevitz transforms relating them, and order derivatives.

#ifndef AUGUSTIN_MEAN_HPP
#define AUGUSTIN_MEAN_HPP

#include <cstdint>
#include <span>

#include "augustin/core.hpp"
#include "augustin/divergence.hpp"

namespace augustin {

struct AugustinSolution {
  Prob mean;                         // q_{alpha,P}
  double info = 0.0;                 // I_alpha(P;W), nats
  std::int64_t iterations = 0;
  double residual = 0.0;             // TV between successive iterates
  double fixed_point_residual = 0.0; // TV(A(mean), mean)
  bool converged = false;
};

struct AugustinSolverOptions {
  double tol = 1e-12;
  std::int64_t max_iter = 10000;
};

/// q_{1,P}: the P-mixture of the rows of W.
Prob order_one_mean(const Prob& p, const Channel& w);

/// mu_{alpha,P} entries [ sum_x P(x) e^{(1-alpha) lambda.c(x)} W(x,y)^alpha ]^{1/alpha}.
/// Omit lambda/cost for the plain mean measure.
Measure power_mean_measure(Order alpha, const Prob& p, const Channel& w,
                           std::span<const double> lambda = {},
                           const CostSpec* cost = nullptr);

/// Normalized power mean measure (the Renyi / R-G mean).
Prob renyi_mean(Order alpha, const Prob& p, const Channel& w,
                std::span<const double> lambda = {},
                const CostSpec* cost = nullptr);

/// A_{alpha,P}(q): the P-mixture of the rows of W tilted toward q.
/// Requires conditional_divergence(alpha, W, q, P) finite.
Prob augustin_operator(Order alpha, const Prob& p, const Channel& w,
                       const Prob& q);

/// Fixed-point solve for the Augustin mean, started at the Renyi mean.
/// alpha = 1 takes the closed-form branch.  Input weights below 1e-15 are
/// dropped from the support before iterating.
AugustinSolution solve_augustin_mean(Order alpha, const Prob& p,
                                     const Channel& w,
                                     const AugustinSolverOptions& opt = {});

/// I_alpha(P;W) in [0, H(P)].
double augustin_information(Order alpha, const Prob& p, const Channel& w,
                            const AugustinSolverOptions& opt = {});

/// Gallager/Sibson form: (alpha/(alpha-1)) ln ||mu_{alpha,P}|| for
/// alpha != 1, mutual information at alpha = 1.
double renyi_information(Order alpha, const Prob& p, const Channel& w);

/// I_alpha(P;W) - lambda . E_P[c]; may be negative.
double al_information(Order alpha, const Prob& p, const Channel& w,
                      std::span<const double> lambda, const CostSpec& cost,
                      const AugustinSolverOptions& opt = {});

/// Cost-tilted Gallager form G^lambda_alpha(P;W).
double rg_information(Order alpha, const Prob& p, const Channel& w,
                      std::span<const double> lambda, const CostSpec& cost);

struct TransformPair {
  Prob source;
  Prob transformed;
  double value_identity_residual = 0.0;
};

/// u^lambda_{alpha,P}(x) prop P(x) e^{(1-alpha) D_alpha(W(x)||q_{alpha,P}) + (alpha-1) lambda.c(x)}
/// together with the residual of I^l_a(P) = G^l_a(u) + D_1(P||u)/(alpha-1).
TransformPair poltyrev_transform(Order alpha, const Prob& p, const Channel& w,
                                 std::span<const double> lambda = {},
                                 const CostSpec* cost = nullptr,
                                 const AugustinSolverOptions& opt = {});

/// a^lambda_{alpha,P}(x) prop P(x) e^{(alpha-1) D_alpha(W(x)||q~^l_{alpha,P}) + (1-alpha) lambda.c(x)}
/// together with the residual of G^l_a(P) = I^l_a(a) - D_1(a||P)/(alpha-1).
TransformPair shayevitz_transform(Order alpha, const Prob& p, const Channel& w,
                                  std::span<const double> lambda = {},
                                  const CostSpec* cost = nullptr,
                                  const AugustinSolverOptions& opt = {});

/// Residual of the decomposition
/// I_a(P;W) = a/(1-a) D_1(W^q_a || W | P) + I_1(P; W^q_a) at q = q_{alpha,P}.
double csiszar_decomposition_residual(Order alpha, const Prob& p,
                                      const Channel& w,
                                      const AugustinSolverOptions& opt = {});

/// d/dalpha I_alpha(P;W); nonnegative.
double augustin_info_order_derivative(Order alpha, const Prob& p,
                                      const Channel& w,
                                      const AugustinSolverOptions& opt = {});

}  // namespace augustin

#endif  // AUGUSTIN_MEAN_HPP
