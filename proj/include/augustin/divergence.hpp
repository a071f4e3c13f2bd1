// Renyi divergence of any positive order between finite measures, tilted
// measures and channels, the conditional divergence, and the first two
// order derivatives.
//
// Support conventions (fixed throughout):
//   terms with w_y = 0 contribute 0 for every order;
//   alpha >= 1 and some w_y > 0 with q_y = 0        -> divergence +inf;
//   alpha in (0,1) and disjoint supports            -> divergence +inf,
//   otherwise the sum runs over the common support.
//
// Infinite divergence is an ordinary value (+inf), not an exception;
// solvers branch on it.

#ifndef AUGUSTIN_DIVERGENCE_HPP
#define AUGUSTIN_DIVERGENCE_HPP

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "augustin/core.hpp"

namespace augustin {

/// Extended-real divergence value in nats.  May be negative for
/// unnormalized measure arguments; +inf encodes the absolute-continuity
/// failures listed above.
struct DivergenceValue {
  double nats = 0.0;
  bool finite() const { return std::isfinite(nats); }
  static DivergenceValue infinity() {
    return {std::numeric_limits<double>::infinity()};
  }
};

DivergenceValue renyi_divergence(Order alpha, const Measure& w,
                                 const Measure& q);
DivergenceValue renyi_divergence(Order alpha, const Prob& w, const Prob& q);

/// Raw-span kernel used by the solvers; both arguments must have the same
/// length and positive total mass.
double renyi_divergence_raw(Order alpha, std::span<const double> w,
                            std::span<const double> q);

/// Normalized geometric interpolation w^alpha q^(1-alpha); requires finite
/// divergence.  For alpha = 1 returns w.
Prob tilted_measure(Order alpha, const Prob& w, const Prob& q);

/// Channel whose rows are tilted toward q; rows with infinite divergence
/// are undefined and flagged.
struct TiltedChannel {
  std::vector<std::vector<double>> rows;  // valid only where defined
  std::vector<bool> defined;
  std::size_t num_defined = 0;
};
TiltedChannel tilted_channel(Order alpha, const Channel& w, const Prob& q);

/// sum_x P(x) D_alpha(W(x) || q); +inf as soon as a supported row diverges.
DivergenceValue conditional_divergence(Order alpha, const Channel& w,
                                       const Prob& q, const Prob& p);

/// d/dalpha D_alpha(w||q), evaluated with the tilted-measure identity.
double divergence_derivative_in_order(Order alpha, const Prob& w,
                                      const Prob& q);
/// d^2/dalpha^2 D_alpha(w||q).
double divergence_second_derivative_in_order(Order alpha, const Prob& w,
                                             const Prob& q);

/// | D_alpha(w||q) - [ alpha/(1-alpha) D_1(t||w) + D_1(t||q) ] | for the
/// tilted measure t = w^q_alpha; identically ~0 on valid inputs.
double variational_residual(Order alpha, const Prob& w, const Prob& q);

}  // namespace augustin

#endif  // AUGUSTIN_DIVERGENCE_HPP
