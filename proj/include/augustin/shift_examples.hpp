// Finite representations of the shift-invariant example channels on [0,1):
// the affine-capacity family, the non-upper-semicontinuous family, and
// their product, together with their closed-form capacity curves and a
// duality-gap certificate.
//
// Each integer class of the continuum channel is represented by a cyclic
// block gadget: p shifted copies of a density of height p/q covering q of p
// equal arcs.  Every gadget maps the uniform distribution to itself under
// the Augustin operator, so class mixtures have the uniform center exactly
// and the class information equals ln(p/q) at every order.  The dyadic
// families are exact; the affine family's heights e^{i+1} are irrational,
// so its gadgets carry the closest small rational ln(p/q) and the exact
// paper values enter through the closed-form dual curve instead.

#ifndef AUGUSTIN_SHIFT_EXAMPLES_HPP
#define AUGUSTIN_SHIFT_EXAMPLES_HPP

#include <span>
#include <vector>

#include "augustin/capacity.hpp"
#include "augustin/core.hpp"

namespace augustin {

struct ShiftClassInfo {
  double cost = 0.0;
  double info = 0.0;           // exact per-class information of the gadget
  std::size_t first_input = 0;
  std::size_t count = 0;
};

struct ShiftFamily {
  Channel channel;
  CostSpec cost;
  AnalyticDualCurve analytic;        // paper's C^lambda curve, center u0
  std::vector<double> cell_lengths;  // output partition of [0,1)
  std::vector<ShiftClassInfo> classes;

  /// Uniform input distribution over one class's representatives.
  Prob class_uniform(std::size_t class_index) const;
};

/// Affine-capacity family: classes 0..min(N,4), cost(class i) = i,
/// per-class information ~ i+1 (closest small rational).
ShiftFamily build_affine_example(int truncation);

/// Non-upper-semicontinuous family: positive classes 1..min(N,4) (cost i,
/// information (i+1) ln 2, exact), the three-shift class 0 (cost 0,
/// information ln(3/2), exact), and negative classes -1..-N (cost 2^-j,
/// information ln 2, exact).
ShiftFamily build_nonusc_example(int truncation);

/// Product of small affine and non-usc truncations with additive cost.
ShiftFamily build_product_example(int truncation);

// Closed-form capacities of the untruncated families.
double affine_capacity(double rho);      // rho + 1
double affine_al_capacity(double lambda);
double nonusc_capacity(double rho);      // (rho+1) ln 2 for rho > 0, ln(3/2) at 0
double nonusc_al_capacity(double lambda);
double product_example_capacity(double rho);

struct DualityGapReport {
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;  // dual - primal, nonnegative up to tolerance
};

/// Primal capacity via direct maximization over feasible inputs versus the
/// dual value on a multiplier grid.  In the interior of the feasible set
/// the gap vanishes; on the boundary of the non-usc family it equals
/// ln 2 - ln(3/2).
DualityGapReport duality_gap_certificate(Order alpha, const Channel& w,
                                         const CostSpec& cost,
                                         std::span<const double> rho,
                                         std::span<const double> lambda_grid,
                                         const AnalyticDualCurve* analytic =
                                             nullptr,
                                         const CapacitySolverOptions& opt = {});

}  // namespace augustin

#endif  // AUGUSTIN_SHIFT_EXAMPLES_HPP
