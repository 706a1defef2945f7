#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinent/model.hpp"

namespace spinent {

// 2S = 2, 4, 10, ..., 1000 (S = 1 .. 500).
std::vector<int> default_two_s_grid();

struct SweepConfig {
  std::vector<int> two_s_values = default_two_s_grid();
  std::vector<int> n_values{1, 2, 3};
  int trials = 200;
  DeviceWeights c = bell_weights();
  std::uint64_t master_seed = 0;
  bool complex_mode = false;
  // Trials with m_a * m_b at or below this are re-evaluated by the dense oracle.
  std::size_t oracle_crosscheck_max_dim = 64;

  // Throws DomainError on an empty/unsorted grid, 2S < 1, n outside {1,2,3},
  // trials < 1 or unnormalized weights.
  void validate() const;
};

struct SampleStats {
  int trials = 0;
  double mean_c = 0.0;
  double std_c = 0.0;
  double mean_tau = 0.0;
  double std_tau = 0.0;
  double mean_gap = 0.0;
  double std_gap = 0.0;
  double mean_abs_gap = 0.0;
  double min_slack = 0.0;
};

struct SweepPoint {
  int two_s = 0;
  int n = 0;
  SampleStats stats;
};

// Means and (n-1)-denominator standard deviations; std is 0 for one sample.
// Throws std::invalid_argument on empty input.
SampleStats summarize(std::span<const EntanglementReport> samples);

// Raised when a trial throws or breaks an invariant; names the offending trial.
class TrialFailure : public std::runtime_error {
 public:
  TrialFailure(int two_s, int n, int trial, const std::string& what);
  int two_s() const { return two_s_; }
  int n() const { return n_; }
  int trial() const { return trial_; }

 private:
  int two_s_;
  int n_;
  int trial_;
};

// The coefficient draw of trial `trial` (1-based) at (two_s, n).
CoefficientSet draw_trial(const SweepConfig& config, int two_s, int n, int trial);

// Evaluates one trial, including the invariant and optional oracle checks.
// Throws TrialFailure.
EntanglementReport run_trial(const SweepConfig& config, int two_s, int n, int trial);

// Points are ordered n-major, two_s-minor. workers = 0 uses every hardware
// thread. Output is identical for every worker count.
std::vector<SweepPoint> run_sweep(const SweepConfig& config, unsigned workers = 0);

}  // namespace spinent
