#include "spinent/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spinent/errors.hpp"
#include "spinent/summation.hpp"

namespace spinent {

SpinDims::SpinDims(int two_s_a, int two_s_b) : two_s_a_(two_s_a), two_s_b_(two_s_b) {
  if (two_s_a < 0 || two_s_b < 0) {
    throw DomainError("SpinDims: 2S must be nonnegative (got " + std::to_string(two_s_a) +
                      ", " + std::to_string(two_s_b) + ")");
  }
}

CoefficientSet CoefficientSet::unperturbed(SpinDims dims, const DeviceWeights& c) {
  CoefficientSet set;
  set.dims = dims;
  set.c = c;
  for (std::size_t d = 0; d < kDeviceDim; ++d) {
    set.x[d].assign(dims.m_a(), cplx{});
    set.y[d].assign(dims.m_b(), cplx{});
  }
  return set;
}

void CoefficientSet::validate() const {
  double weight = 0.0;
  for (std::size_t d = 0; d < kDeviceDim; ++d) {
    if (x[d].size() != dims.m_a() || y[d].size() != dims.m_b()) {
      throw InvalidStateError("CoefficientSet: row " + std::to_string(d + 1) +
                              " does not match the spin dimensions");
    }
    weight += std::norm(c[d]);
  }
  if (std::abs(weight - 1.0) > 1e-12) {
    throw InvalidStateError("CoefficientSet: sum |c_d|^2 = " + std::to_string(weight) +
                            ", expected 1");
  }
}

bool CoefficientSet::is_two_level() const {
  return c[kLevel01] == cplx{} && c[kLevel10] == cplx{};
}

DeviceWeights bell_weights() {
  const double h = std::numbers::sqrt2 / 2.0;
  return {cplx{}, cplx{}, cplx{h}, cplx{h}};
}

DeviceWeights normalized(const DeviceWeights& c) {
  double w = 0.0;
  for (const auto& v : c) w += std::norm(v);
  if (!(w > 0.0) || !std::isfinite(w)) throw DegenerateError("device weights are all zero");
  const double s = 1.0 / std::sqrt(w);
  DeviceWeights out = c;
  for (auto& v : out) v *= s;
  return out;
}

double x_max_schedule(int two_s, int n) {
  if (two_s < 1) throw DomainError("x_max_schedule: requires 2S >= 1");
  if (n < 1 || n > 3) throw DomainError("x_max_schedule: exponent n must be 1, 2 or 3");
  // 1 / (2 (two_s/2)^n) = 2^(n-1) / two_s^n; two_s^n is exact for two_s < 2^17.
  double denom = 1.0;
  for (int k = 0; k < n; ++k) denom *= static_cast<double>(two_s);
  return std::ldexp(1.0, n - 1) / denom;
}

namespace {

void fill_row(std::vector<cplx>& row, double upper, RandomStream& rng, bool complex_mode) {
  for (auto& v : row) {
    const double modulus = rng.uniform_open_closed(upper);
    if (complex_mode) {
      const double phase = 2.0 * std::numbers::pi * rng.uniform();
      v = std::polar(modulus, phase);
    } else {
      v = cplx{modulus};
    }
  }
}

}  // namespace

CoefficientSet sample_coefficients(SpinDims dims, double x_max, double y_max,
                                   const DeviceWeights& c, RandomStream& rng,
                                   SamplingOptions opts) {
  if (!(x_max > 0.0) || !(y_max > 0.0)) {
    throw DomainError("sample_coefficients: x_max and y_max must be positive");
  }
  CoefficientSet set = CoefficientSet::unperturbed(dims, c);
  set.validate();
  for (std::size_t d : {kLevel00, kLevel11}) fill_row(set.x[d], x_max, rng, opts.complex_mode);
  for (std::size_t d : {kLevel00, kLevel11}) fill_row(set.y[d], y_max, rng, opts.complex_mode);
  return set;
}

namespace {

template <class Acc>
double row_weight_impl(const std::vector<cplx>& row) {
  Acc acc;
  for (const auto& v : row) acc.add(std::norm(1.0 + v));
  return acc.value();
}

}  // namespace

double row_weight(const std::vector<cplx>& row) {
  return row.size() >= kCompensatedSumThreshold ? row_weight_impl<CompensatedSum>(row)
                                                : row_weight_impl<PlainSum>(row);
}

double normalization_squared(const CoefficientSet& set) {
  double n2 = 0.0;
  for (std::size_t d = 0; d < kDeviceDim; ++d) {
    if (set.c[d] == cplx{}) continue;
    n2 += std::norm(set.c[d]) * row_weight(set.x[d]) * row_weight(set.y[d]);
  }
  if (!(n2 > 0.0)) throw DegenerateError("normalization: all device weights are zero");
  return n2;
}

double normalization(const CoefficientSet& set) { return std::sqrt(normalization_squared(set)); }

}  // namespace spinent
