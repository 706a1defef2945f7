#include "spinent/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "spinent/errors.hpp"
#include "spinent/summation.hpp"

namespace spinent {

namespace {

struct PairSums {
  double w3 = 0.0;
  double w4 = 0.0;
  cplx cross;
  double gram = 0.0;
  double diff = 0.0;
};

template <class Acc>
PairSums pair_sums(const std::vector<cplx>& r3, const std::vector<cplx>& r4) {
  const std::size_t m = r3.size();
  Acc w3;
  Acc w4;
  ComplexAcc<Acc> cross;
  Acc ss;
  ComplexAcc<Acc> sd;
  for (std::size_t i = 0; i < m; ++i) {
    const cplx u = 1.0 + r3[i];
    const cplx v = 1.0 + r4[i];
    const cplx s = 2.0 + (r3[i] + r4[i]);
    const cplx delta = r3[i] - r4[i];
    w3.add(std::norm(u));
    w4.add(std::norm(v));
    cross.add(u * std::conj(v));
    ss.add(std::norm(s));
    sd.add(std::conj(s) * delta);
  }
  PairSums out;
  out.w3 = w3.value();
  out.w4 = w4.value();
  out.cross = cross.value();
  const double s_norm = ss.value();
  const cplx s_dot_delta = sd.value();
  // |u|^2 - |v|^2 = Re(conj(s) delta)
  out.diff = s_dot_delta.real();
  if (s_norm > 0.0) {
    const cplx mu = s_dot_delta / s_norm;
    Acc ww;
    for (std::size_t i = 0; i < m; ++i) {
      const cplx s = 2.0 + (r3[i] + r4[i]);
      const cplx delta = r3[i] - r4[i];
      ww.add(std::norm(delta - mu * s));
    }
    out.gram = 0.25 * s_norm * ww.value();
  }
  return out;
}

PairSums pair_sums(const std::vector<cplx>& r3, const std::vector<cplx>& r4) {
  return r3.size() >= kCompensatedSumThreshold ? pair_sums<CompensatedSum>(r3, r4)
                                               : pair_sums<PlainSum>(r3, r4);
}

void require_two_level(const CoefficientSet& set) {
  if (!set.is_two_level()) {
    throw ModeError("closed forms require c_1 = c_2 = 0 (two-level device)");
  }
}

struct Derived {
  double n2 = 0.0;        // N^2
  double deficit = 0.0;   // N^2 - 2|c3c4||x34 y34|
  double tangle = 0.0;
  double slack = 0.0;
};

Derived derive(const BranchSums& b, const DeviceWeights& c) {
  const double p = std::norm(c[kLevel00]);
  const double q = std::norm(c[kLevel11]);
  const double c34 = std::abs(c[kLevel00]) * std::abs(c[kLevel11]);

  const double a2 = b.x3 * b.y3;
  const double b2 = b.x4 * b.y4;
  Derived out;
  out.n2 = p * a2 + q * b2;
  if (!(out.n2 > 0.0)) throw DegenerateError("normalization: all device weights are zero");

  // Both differences are written symmetrically so that the row swap 3 <-> 4
  // negates them exactly.
  const double a2_minus_b2 = 0.5 * (b.x_diff * (b.y3 + b.y4) + (b.x3 + b.x4) * b.y_diff);
  const double pa2_minus_qb2 = 0.5 * ((p + q) * a2_minus_b2 + (p - q) * (a2 + b2));
  const double a = std::sqrt(p * a2);
  const double bb = std::sqrt(q * b2);
  const double amb = pa2_minus_qb2 / (a + bb);

  const double px = b.x3 * b.x4;
  const double py = b.y3 * b.y4;
  const double qx = std::norm(b.x34);
  // px py - qx qy
  const double gram = b.x_gram * py + qx * b.y_gram;
  const double root_gap_den = std::sqrt(px * py) + std::abs(b.x34) * std::abs(b.y34);
  const double root_gap = root_gap_den > 0.0 ? gram / root_gap_den : 0.0;

  out.deficit = amb * amb + 2.0 * c34 * root_gap;
  const double n4 = out.n2 * out.n2;
  out.tangle = 4.0 * c34 * c34 * px * py / n4;
  out.slack = 4.0 * c34 * c34 * gram / n4;
  return out;
}

double concurrence_from(const Derived& d) {
  return std::clamp(1.0 - d.deficit / d.n2, 0.0, 1.0);
}

}  // namespace

BranchSums branch_sums(const CoefficientSet& set) {
  require_two_level(set);
  const PairSums xs = pair_sums(set.x[kLevel00], set.x[kLevel11]);
  const PairSums ys = pair_sums(set.y[kLevel00], set.y[kLevel11]);
  BranchSums b;
  b.x3 = xs.w3;
  b.x4 = xs.w4;
  b.x34 = xs.cross;
  b.x_gram = xs.gram;
  b.x_diff = xs.diff;
  b.y3 = ys.w3;
  b.y4 = ys.w4;
  b.y34 = ys.cross;
  b.y_gram = ys.gram;
  b.y_diff = ys.diff;
  return b;
}

EntanglementReport evaluate(const BranchSums& sums, const DeviceWeights& c) {
  const Derived d = derive(sums, c);
  EntanglementReport r;
  r.concurrence = concurrence_from(d);
  r.one_tangle = std::min(d.tangle, 1.0);
  r.monogamy_slack = d.slack;
  r.gap = -d.slack;
  return r;
}

EntanglementReport evaluate(const CoefficientSet& set) {
  return evaluate(branch_sums(set), set.c);
}

double concurrence_closed(const CoefficientSet& set) { return evaluate(set).concurrence; }

double one_tangle_closed(const CoefficientSet& set) { return evaluate(set).one_tangle; }

double monogamy_slack(const CoefficientSet& set) { return evaluate(set).monogamy_slack; }

FirstOrderApprox first_order_expansion(const CoefficientSet& set) {
  require_two_level(set);
  auto mean_re = [](const std::vector<cplx>& row) {
    double s = 0.0;
    for (const auto& v : row) s += v.real();
    return s / static_cast<double>(row.size());
  };
  const double x3 = mean_re(set.x[kLevel00]);
  const double x4 = mean_re(set.x[kLevel11]);
  const double y3 = mean_re(set.y[kLevel00]);
  const double y4 = mean_re(set.y[kLevel11]);
  const double p = std::norm(set.c[kLevel00]);
  const double q = std::norm(set.c[kLevel11]);
  const double c34 = std::abs(set.c[kLevel00]) * std::abs(set.c[kLevel11]);
  const double n1 = p * (1.0 + 2.0 * x3 + 2.0 * y3) + q * (1.0 + 2.0 * x4 + 2.0 * y4);
  if (!(n1 > 0.0)) throw DegenerateError("first_order_expansion: vanishing normalization");
  const double lin = 2.0 * c34 * (1.0 + x3 + x4 + y3 + y4) / n1;
  return {lin * lin, lin * lin};
}

}  // namespace spinent
