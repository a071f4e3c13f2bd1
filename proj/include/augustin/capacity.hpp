// Capacity solvers: the unconstrained Augustin (= Renyi) capacity, the
// Augustin-Legendre capacity via Renyi-Gallager maximization, and the cost
// constrained capacity via Lagrange duality.
//
// Every inner solve is certified by a bracket: the attained information is
// a lower bound on the capacity and the radius form evaluated at the
// current mean, sup_x [D_a(W(x)||Q) - lambda.c(x)], is an upper bound for
// any Q.  A solve converged when the bracket closes below tolerance.

#ifndef AUGUSTIN_CAPACITY_HPP
#define AUGUSTIN_CAPACITY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "augustin/core.hpp"
#include "augustin/mean.hpp"

namespace augustin {

struct CapacityDiagnostics {
  std::int64_t iterations = 0;
  double inner_residual = 0.0;     // certified bracket width at exit
  double dual_gap_estimate = 0.0;  // dual value minus best feasible primal
  bool converged = false;
};

struct CapacityResult {
  double value = 0.0;
  std::optional<Prob> center;
  std::optional<Prob> argmax_input;
  std::vector<double> dual_multiplier;
  CapacityDiagnostics diagnostics;
};

struct CapacitySolverOptions {
  double tol = 1e-9;           // bracket width target
  std::int64_t max_iter = 50000;
  double mean_tol = 1e-12;     // inner Augustin-mean solves
  std::int64_t stall_window = 200;  // iterations without progress before
                                    // the projected-gradient fallback
};

/// Closed-form A-L capacity curve of an analytic fixture (the shift
/// invariant families of the pathological examples): C^l is +inf strictly
/// below `lambda_min_finite` and constant `plateau` from there on; `center`
/// is the shared A-L center expressed on the companion truncation's cells.
struct AnalyticDualCurve {
  double lambda_min_finite = 0.0;
  double plateau = 0.0;
  Prob center;
};

/// sup_P G^l_a(P): the R-G capacity, equal to the A-L capacity.  Iterates
/// the Arimoto-style update P <- P e^{alpha d(x)} with
/// d(x) = D_a(W(x)||q~^l_P) - lambda.c(x).
CapacityResult rg_capacity(Order alpha, const Channel& w,
                           std::span<const double> lambda = {},
                           const CostSpec* cost = nullptr,
                           const CapacitySolverOptions& opt = {},
                           const Prob* warm_start = nullptr);

/// A-L capacity C^l_a(W); computed through rg_capacity (the two are equal).
CapacityResult al_capacity(Order alpha, const Channel& w,
                           std::span<const double> lambda,
                           const CostSpec& cost,
                           const CapacitySolverOptions& opt = {});

/// Independent route: mirror ascent directly on I^l_a(P) with an inner
/// Augustin-mean solve per iterate.  Used to cross-check al_capacity.
CapacityResult al_capacity_direct_ascent(Order alpha, const Channel& w,
                                         std::span<const double> lambda,
                                         const CostSpec& cost,
                                         const CapacitySolverOptions& opt = {});

/// C_a(W) over the full simplex; equals the Renyi radius.
CapacityResult augustin_capacity_unconstrained(
    Order alpha, const Channel& w, const CapacitySolverOptions& opt = {});

/// Cost constrained capacity via the dual  C(rho) = inf_l C^l + l.rho,
/// valid for rho in the interior of the feasible set (boundary points are
/// rejected: the non-upper-semicontinuous example has a duality gap there).
/// l = 1 uses golden-section on the convex dual; l in {2,3} cyclic
/// coordinate descent.  When `analytic` is given, C^l comes from the
/// closed-form curve instead of an inner numeric solve.
CapacityResult cost_constrained_capacity(Order alpha, const Channel& w,
                                         const CostSpec& cost,
                                         std::span<const double> rho,
                                         const CapacitySolverOptions& opt = {},
                                         const AnalyticDualCurve* analytic =
                                             nullptr);

struct AllocationPart {
  const Channel* channel = nullptr;
  const CostSpec* cost = nullptr;
  const AnalyticDualCurve* analytic = nullptr;
};

/// Capacity of a product channel with additive costs, computed through the
/// additive dual  C(rho) = inf_l sum_t C^l_t + l.rho  without forming the
/// product.  Reports per-part centers at the optimal multiplier.
struct AllocationResult {
  double value = 0.0;
  std::vector<double> lambda_star;
  std::vector<Prob> part_centers;
  std::vector<double> part_values;  // C^l_t at lambda_star
  CapacityDiagnostics diagnostics;
};
AllocationResult cost_allocation_capacity(Order alpha,
                                          const std::vector<AllocationPart>&
                                              parts,
                                          std::span<const double> rho,
                                          const CapacitySolverOptions& opt =
                                              {});

/// Additivity check of the A-L capacity across a product: computes C^l on
/// the explicit product channel and compares with the sum over parts; also
/// checks the tensor product of the part centers through the radius form.
struct ProductCheck {
  double capacity_gap = 0.0;       // |C^l(product) - sum_t C^l(part_t)|
  double center_radius_gap = 0.0;  // |radius at tensor center - sum value|
};
ProductCheck product_al_capacity_check(Order alpha,
                                       const std::vector<AllocationPart>&
                                           parts,
                                       std::span<const double> lambda,
                                       const CapacitySolverOptions& opt = {},
                                       std::size_t max_product_size = 4096);

/// Slack of the van Erven-Harremoes bound at Q:
///   sup_x [D_a(W(x)||Q) - l.c(x)] - value - D_r(center||Q)
/// with r = a for the Gallager form, r = min(a,1) otherwise.
/// Nonnegative (up to tolerance) whenever `result` is a valid capacity.
double ehb_gap(Order alpha, const Channel& w, std::span<const double> lambda,
               const CostSpec* cost, const CapacityResult& result,
               const Prob& q, bool gallager_form);

/// Grid + Nelder-Mead maximization of I^l_a over the input simplex.
/// Test oracle; requires |X| <= 3.
double brute_force_capacity(Order alpha, const Channel& w,
                            std::span<const double> lambda = {},
                            const CostSpec* cost = nullptr,
                            double grid_step = 1e-2,
                            const AugustinSolverOptions& mean_opt = {});

struct SweepRow {
  double parameter = 0.0;
  double value = 0.0;
  double lambda_star = 0.0;  // meaningful for cost sweeps
  double center_tv_to_previous = 0.0;
  bool converged = false;
};

std::vector<SweepRow> capacity_order_curve(const Channel& w,
                                           std::span<const double> orders,
                                           std::span<const double> lambda = {},
                                           const CostSpec* cost = nullptr,
                                           const CapacitySolverOptions& opt =
                                               {});

std::vector<SweepRow> capacity_cost_curve(Order alpha, const Channel& w,
                                          const CostSpec& cost,
                                          std::span<const double> rhos,
                                          const CapacitySolverOptions& opt = {},
                                          const AnalyticDualCurve* analytic =
                                              nullptr);

}  // namespace augustin

#endif  // AUGUSTIN_CAPACITY_HPP
