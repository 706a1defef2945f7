#include "spinent/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>

#include "spinent/closedform.hpp"
#include "spinent/errors.hpp"
#include "spinent/oracle.hpp"
#include "spinent/random.hpp"
#include "spinent/summation.hpp"

namespace spinent {

namespace {

constexpr double kMonogamyFloor = -1e-12;
constexpr double kOracleTolerance = 1e-10;

std::string trial_label(int two_s, int n, int trial) {
  return "two_s=" + std::to_string(two_s) + " n=" + std::to_string(n) + " t=" +
         std::to_string(trial);
}

}  // namespace

std::vector<int> default_two_s_grid() { return {2, 4, 10, 20, 40, 100, 200, 400, 1000}; }

void SweepConfig::validate() const {
  if (two_s_values.empty()) throw DomainError("sweep: two_s grid is empty");
  for (std::size_t i = 0; i < two_s_values.size(); ++i) {
    if (two_s_values[i] < 1) throw DomainError("sweep: every 2S must be >= 1");
    if (i > 0 && two_s_values[i] <= two_s_values[i - 1]) {
      throw DomainError("sweep: two_s grid must be strictly ascending");
    }
  }
  if (n_values.empty()) throw DomainError("sweep: no exponents given");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 1 || n_values[i] > 3) throw DomainError("sweep: n must be 1, 2 or 3");
    if (i > 0 && n_values[i] <= n_values[i - 1]) {
      throw DomainError("sweep: exponents must be strictly ascending");
    }
  }
  if (trials < 1) throw DomainError("sweep: trials must be >= 1");
  double w = 0.0;
  for (const auto& v : c) w += std::norm(v);
  if (std::abs(w - 1.0) > 1e-12) throw DomainError("sweep: device weights are not normalized");
}

SampleStats summarize(std::span<const EntanglementReport> samples) {
  if (samples.empty()) throw std::invalid_argument("summarize: no samples");
  const auto count = static_cast<double>(samples.size());

  auto mean_of = [&](auto field) {
    CompensatedSum s;
    for (const auto& r : samples) s.add(field(r));
    return s.value() / count;
  };
  auto std_of = [&](auto field, double mean) {
    if (samples.size() == 1) return 0.0;
    CompensatedSum s;
    for (const auto& r : samples) {
      const double dev = field(r) - mean;
      s.add(dev * dev);
    }
    return std::sqrt(s.value() / (count - 1.0));
  };

  const auto c = [](const EntanglementReport& r) { return r.concurrence; };
  const auto tau = [](const EntanglementReport& r) { return r.one_tangle; };
  const auto gap = [](const EntanglementReport& r) { return r.gap; };
  const auto abs_gap = [](const EntanglementReport& r) { return std::abs(r.gap); };

  SampleStats out;
  out.trials = static_cast<int>(samples.size());
  out.mean_c = mean_of(c);
  out.std_c = std_of(c, out.mean_c);
  out.mean_tau = mean_of(tau);
  out.std_tau = std_of(tau, out.mean_tau);
  out.mean_gap = mean_of(gap);
  out.std_gap = std_of(gap, out.mean_gap);
  out.mean_abs_gap = mean_of(abs_gap);
  out.min_slack = std::numeric_limits<double>::infinity();
  for (const auto& r : samples) out.min_slack = std::min(out.min_slack, r.monogamy_slack);
  return out;
}

TrialFailure::TrialFailure(int two_s, int n, int trial, const std::string& what)
    : std::runtime_error("trial failed (" + trial_label(two_s, n, trial) + "): " + what),
      two_s_(two_s),
      n_(n),
      trial_(trial) {}

CoefficientSet draw_trial(const SweepConfig& config, int two_s, int n, int trial) {
  const double bound = x_max_schedule(two_s, n);
  RandomStream rng(trial_seed(config.master_seed, static_cast<std::uint64_t>(two_s),
                              static_cast<std::uint64_t>(trial)));
  return sample_coefficients(SpinDims(two_s), bound, bound, config.c, rng,
                             SamplingOptions{config.complex_mode});
}

EntanglementReport run_trial(const SweepConfig& config, int two_s, int n, int trial) {
  try {
    const CoefficientSet set = draw_trial(config, two_s, n, trial);
    const EntanglementReport r = evaluate(set);
    if (!(r.concurrence >= 0.0 && r.concurrence <= 1.0)) {
      throw InvalidStateError("concurrence outside [0,1]");
    }
    if (!(r.one_tangle >= 0.0 && r.one_tangle <= 1.0)) {
      throw InvalidStateError("one-tangle outside [0,1]");
    }
    if (!(r.monogamy_slack >= kMonogamyFloor)) {
      throw InvalidStateError("monogamy violated: slack " + std::to_string(r.monogamy_slack));
    }
    if (set.dims.apparatus_dim() <= config.oracle_crosscheck_max_dim) {
      const OracleReport o = oracle_evaluate(set);
      if (std::abs(o.concurrence - r.concurrence) > kOracleTolerance ||
          std::abs(o.tangle_q1 - r.one_tangle) > kOracleTolerance) {
        throw InvalidStateError("closed form disagrees with the dense oracle");
      }
    }
    return r;
  } catch (const TrialFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw TrialFailure(two_s, n, trial, e.what());
  }
}

std::vector<SweepPoint> run_sweep(const SweepConfig& config, unsigned workers) {
  config.validate();
  struct Task {
    std::size_t point;
    int trial;
  };
  std::vector<SweepPoint> points;
  for (int n : config.n_values) {
    for (int two_s : config.two_s_values) points.push_back({two_s, n, {}});
  }
  const auto trials = static_cast<std::size_t>(config.trials);
  const std::size_t total = points.size() * trials;
  std::vector<EntanglementReport> reports(total);

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_failure{kNone};
  std::mutex failure_mutex;
  std::optional<TrialFailure> failure;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      // Tasks are handed out in index order, so every task below the first
      // failure is still completed and the reported failure is deterministic.
      if (i >= total || i > first_failure.load()) return;
      const SweepPoint& p = points[i / trials];
      const int trial = static_cast<int>(i % trials) + 1;
      try {
        reports[i] = run_trial(config, p.two_s, p.n, trial);
      } catch (const TrialFailure& e) {
        std::lock_guard lock(failure_mutex);
        if (i < first_failure.load()) {
          first_failure.store(i);
          failure.emplace(e);
        }
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) throw *failure;

  for (std::size_t p = 0; p < points.size(); ++p) {
    points[p].stats = summarize(std::span<const EntanglementReport>(reports).subspan(p * trials, trials));
  }
  return points;
}

}  // namespace spinent
