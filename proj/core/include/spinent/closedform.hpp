#pragma once

#include <complex>

#include "spinent/model.hpp"

namespace spinent {

// Apparatus sums shared by the closed-form measures, for the populated rows
// d = 3, 4 with u_alpha = 1 + x_{3 alpha}, v_alpha = 1 + x_{4 alpha} (same for y):
//   x3 = sum |u|^2, x4 = sum |v|^2, x34 = sum u conj(v).
// The *_gram and *_diff members are the Gram determinant x3*x4 - |x34|^2 and the
// difference x3 - x4, evaluated without cancellation (see branch_sums).
struct BranchSums {
  double x3 = 0.0;
  double x4 = 0.0;
  double y3 = 0.0;
  double y4 = 0.0;
  std::complex<double> x34;
  std::complex<double> y34;

  double x_gram = 0.0;
  double y_gram = 0.0;
  double x_diff = 0.0;
  double y_diff = 0.0;
};

// Throws ModeError unless set.is_two_level().
//
// Gram determinants are computed from s = u + v and w = (u - v) projected
// orthogonally to s, as |s|^2 |w|^2 / 4. This is nonnegative by construction,
// stays accurate when u and v are nearly parallel (the large-S regime) and is
// exactly invariant under swapping rows 3 and 4. Sums switch to compensated
// accumulation at kCompensatedSumThreshold terms.
BranchSums branch_sums(const CoefficientSet& set);

// max{0, 2|c3 c4| |x34 y34| / N^2}.
//
// Evaluated as 1 - deficit / N^2, where the deficit
//   N^2 - 2|c3 c4||x34 y34| = (a - b)^2 + 2|c3 c4| (sqrt(x3 x4 y3 y4) - |x34 y34|),
//   a = |c3| sqrt(x3 y3), b = |c4| sqrt(x4 y4),
// is assembled from the cancellation-free branch quantities.
double concurrence_closed(const CoefficientSet& set);

// 4 |c3 c4|^2 x3 x4 y3 y4 / N^4.
double one_tangle_closed(const CoefficientSet& set);

// tau - C^2 = 4 |c3 c4|^2 (x3 x4 y3 y4 - |x34 y34|^2) / N^4 >= 0.
double monogamy_slack(const CoefficientSet& set);

// All four figures from a single pass over the coefficients.
EntanglementReport evaluate(const CoefficientSet& set);
EntanglementReport evaluate(const BranchSums& sums, const DeviceWeights& c);

struct FirstOrderApprox {
  double c2_approx = 0.0;
  double tau_approx = 0.0;
};

// C^2 and tau with the perturbations kept to linear order in Re x, Re y:
//   [2|c3 c4| (1 + xbar3 + xbar4 + ybar3 + ybar4) / n1]^2,
//   n1 = |c3|^2 (1 + 2 xbar3 + 2 ybar3) + |c4|^2 (1 + 2 xbar4 + 2 ybar4),
// where xbar_d is the mean of Re x_{d alpha} over alpha (m_a m_b cancels).
// Both members are the same number; at this order C^2 and tau coincide.
FirstOrderApprox first_order_expansion(const CoefficientSet& set);

}  // namespace spinent
