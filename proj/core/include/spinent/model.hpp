#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "spinent/random.hpp"

namespace spinent {

using cplx = std::complex<double>;

// Device basis indices (0-based). The two-level device lives on kLevel00/kLevel11.
inline constexpr std::size_t kLevel01 = 0;  // |d=1>
inline constexpr std::size_t kLevel10 = 1;  // |d=2>
inline constexpr std::size_t kLevel00 = 2;  // |d=3>
inline constexpr std::size_t kLevel11 = 3;  // |d=4>
inline constexpr std::size_t kDeviceDim = 4;

// Spin sizes carried as 2S so half-integer spins stay exact.
class SpinDims {
 public:
  // S_A = S_B = two_s / 2.
  explicit SpinDims(int two_s) : SpinDims(two_s, two_s) {}
  SpinDims(int two_s_a, int two_s_b);

  int two_s_a() const { return two_s_a_; }
  int two_s_b() const { return two_s_b_; }
  std::size_t m_a() const { return static_cast<std::size_t>(two_s_a_) + 1; }
  std::size_t m_b() const { return static_cast<std::size_t>(two_s_b_) + 1; }
  std::size_t apparatus_dim() const { return m_a() * m_b(); }
  std::size_t total_dim() const { return kDeviceDim * apparatus_dim(); }

  friend bool operator==(const SpinDims&, const SpinDims&) = default;

 private:
  int two_s_a_;
  int two_s_b_;
};

using DeviceWeights = std::array<cplx, kDeviceDim>;

// Amplitude ansatz  c_d (1 + x_{d alpha}) (1 + y_{d beta}) / N.
// x[d] has m_a entries, y[d] has m_b entries.
struct CoefficientSet {
  SpinDims dims{0};
  DeviceWeights c{};
  std::array<std::vector<cplx>, kDeviceDim> x;
  std::array<std::vector<cplx>, kDeviceDim> y;

  // All perturbations zero.
  static CoefficientSet unperturbed(SpinDims dims, const DeviceWeights& c);

  // Throws InvalidStateError on shape mismatch or sum |c_d|^2 != 1 (1e-12).
  void validate() const;

  // c_1 = c_2 = 0: only |00> and |11> of the device are populated.
  bool is_two_level() const;
};

// Entanglement figures of one coefficient draw. gap = -monogamy_slack.
struct EntanglementReport {
  double concurrence = 0.0;     // C_{Q1Q2}
  double one_tangle = 0.0;      // tau_{Q1}
  double gap = 0.0;             // C^2 - tau
  double monogamy_slack = 0.0;  // tau - C^2
};

// Bell weights (0, 0, 1/sqrt2, 1/sqrt2).
DeviceWeights bell_weights();

// Rescales c so that sum |c_d|^2 = 1. Throws DegenerateError on c = 0.
DeviceWeights normalized(const DeviceWeights& c);

// Bound of the perturbation interval: 1 / (2 S^n), S = two_s / 2.
double x_max_schedule(int two_s, int n);

struct SamplingOptions {
  bool complex_mode = false;  // uniform modulus on (0, max], uniform phase
};

// Rows d=3,4 of x then y filled uniformly on (0, x_max] / (0, y_max], alpha ascending.
// In complex mode each entry draws its modulus, then its phase.
CoefficientSet sample_coefficients(SpinDims dims, double x_max, double y_max,
                                   const DeviceWeights& c, RandomStream& rng,
                                   SamplingOptions opts = {});

// N = sqrt( sum_d |c_d|^2 sum_alpha |1+x|^2 sum_beta |1+y|^2 ), the value that
// normalizes the assembled state. Note that N^2 ~ m_a m_b at small
// perturbations; it does not tend to 1.
double normalization(const CoefficientSet& set);
double normalization_squared(const CoefficientSet& set);

// sum_alpha |1 + v_alpha|^2 for one perturbation row.
double row_weight(const std::vector<cplx>& row);

}  // namespace spinent
