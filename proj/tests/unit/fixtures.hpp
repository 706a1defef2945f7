#pragma once

#include "spinent/model.hpp"
#include "spinent/random.hpp"

namespace spinent::testing {

// m_a = m_b = 2, x3 = (0.1, 0.3), x4 = (0.2, 0.2), y = 0, Bell weights.
inline CoefficientSet worked_example() {
  CoefficientSet s = CoefficientSet::unperturbed(SpinDims(1), bell_weights());
  s.x[kLevel00] = {0.1, 0.3};
  s.x[kLevel11] = {0.2, 0.2};
  return s;
}

inline CoefficientSet random_set(RandomStream& rng, int two_s_a, int two_s_b, double x_max,
                                 bool complex_mode = false) {
  return sample_coefficients(SpinDims(two_s_a, two_s_b), x_max, x_max, bell_weights(), rng,
                             SamplingOptions{complex_mode});
}

// Scales every perturbation by t.
inline CoefficientSet scaled(CoefficientSet s, double t) {
  for (auto& row : s.x)
    for (auto& v : row) v *= t;
  for (auto& row : s.y)
    for (auto& v : row) v *= t;
  return s;
}

inline double perturbation_l1(const CoefficientSet& s) {
  double acc = 0.0;
  for (const auto& row : s.x)
    for (const auto& v : row) acc += std::abs(v);
  for (const auto& row : s.y)
    for (const auto& v : row) acc += std::abs(v);
  return acc;
}

}  // namespace spinent::testing
