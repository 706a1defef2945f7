#include "verify.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "output.hpp"
#include "spinent/closedform.hpp"
#include "spinent/oracle.hpp"

namespace spinent::cli {

namespace {

constexpr std::uint64_t kVerifyStream = 0x7665726966790000ULL;
constexpr std::array<double, 3> kXMax{0.5, 0.1, 0.01};

CoefficientSet scaled(CoefficientSet s, double t) {
  for (auto& row : s.x)
    for (auto& v : row) v *= t;
  for (auto& row : s.y)
    for (auto& v : row) v *= t;
  return s;
}

std::string describe(const VerifyCase& vc, std::uint64_t seed) {
  std::ostringstream os;
  os << "seed=" << seed << " case=" << vc.index << " two_s_a=" << vc.set.dims.two_s_a()
     << " two_s_b=" << vc.set.dims.two_s_b() << " x_max=" << format_real(vc.x_max);
  return os.str();
}

}  // namespace

VerifyCase draw_verify_case(std::uint64_t seed, int index, int two_s_max) {
  RandomStream rng(trial_seed(seed, kVerifyStream, static_cast<std::uint64_t>(index)));
  const int ta = static_cast<int>(rng.uniform_int(1, two_s_max));
  const int tb = static_cast<int>(rng.uniform_int(1, two_s_max));
  const double r3 = 0.2 + rng.uniform();
  const double r4 = 0.2 + rng.uniform();
  const double p3 = 2.0 * std::numbers::pi * rng.uniform();
  const double p4 = 2.0 * std::numbers::pi * rng.uniform();
  const DeviceWeights c = normalized({cplx{}, cplx{}, std::polar(r3, p3), std::polar(r4, p4)});
  VerifyCase vc;
  vc.index = index;
  vc.x_max = kXMax[static_cast<std::size_t>(index) % kXMax.size()];
  vc.set = sample_coefficients(SpinDims(ta, tb), vc.x_max, vc.x_max, c, rng,
                               SamplingOptions{index % 4 == 3});
  return vc;
}

VerifyResult run_verify(const VerifyOptions& options) {
  VerifyResult result;
  const std::array<std::string, 8> names{"monogamy",     "oracle-concurrence", "oracle-tangle",
                                         "symmetry",     "separability",       "quadratic-gap",
                                         "phase",        "row-swap"};
  for (const auto& n : names) result.families.push_back({n, 0, 0});

  int first = 0;
  int last = options.cases;
  if (options.only_case) {
    first = *options.only_case;
    last = first + 1;
  }
  const double tol = options.tol;

  for (int k = first; k < last; ++k) {
    const VerifyCase vc = draw_verify_case(options.seed, k, options.two_s_max);
    const auto r = evaluate(vc.set);
    const auto o = oracle_evaluate(vc.set);

    auto record = [&](std::size_t family, bool ok, const std::string& detail) {
      auto& f = result.families[family];
      ++f.total;
      if (ok) {
        ++f.passed;
      } else {
        result.failures.push_back({f.name, k, describe(vc, options.seed) + ": " + detail});
      }
    };
    auto value = [](const char* what, double v) { return std::string(what) + "=" + format_real(v); };

    record(0, r.monogamy_slack >= -1e-12 && r.one_tangle <= 1.0 + 1e-12 && r.concurrence >= 0.0,
           value("slack", r.monogamy_slack) + " " + value("tau", r.one_tangle));

    const double dc = std::abs(r.concurrence - o.concurrence);
    record(1, dc <= tol, value("|C - C_oracle|", dc));

    const double dt = std::abs(r.one_tangle - o.tangle_q1);
    record(2, dt <= tol, value("|tau - tau_oracle|", dt));

    const double ds = std::abs(o.tangle_q1 - o.tangle_q2);
    record(3, ds <= tol, value("|tau_Q1 - tau_Q2|", ds));

    const double sep = separability_deviation(vc.set);
    record(4, sep <= tol, value("deviation", sep));

    bool quad_ok = true;
    std::string quad_detail;
    for (double t : {1.0 / 8, 1.0 / 16, 1.0 / 32}) {
      const double f = evaluate(scaled(vc.set, t)).gap;
      const double f_half = evaluate(scaled(vc.set, t / 2)).gap;
      if (std::abs(f) < 1e-14) continue;
      if (std::abs(f_half) > 0.4 * std::abs(f)) {
        quad_ok = false;
        quad_detail = value("t", t) + " " + value("ratio", std::abs(f_half / f));
      }
    }
    record(5, quad_ok, quad_detail);

    CoefficientSet rotated = vc.set;
    rotated.c[kLevel00] *= std::polar(1.0, 1.0 + 0.37 * k);
    rotated.c[kLevel11] *= std::polar(1.0, -0.5 - 0.11 * k);
    const auto rr = evaluate(rotated);
    const double dp = std::max(std::abs(rr.concurrence - r.concurrence),
                               std::abs(rr.one_tangle - r.one_tangle));
    record(6, dp <= tol, value("phase drift", dp));

    CoefficientSet swapped = vc.set;
    std::swap(swapped.x[kLevel00], swapped.x[kLevel11]);
    std::swap(swapped.y[kLevel00], swapped.y[kLevel11]);
    std::swap(swapped.c[kLevel00], swapped.c[kLevel11]);
    const auto rs = evaluate(swapped);
    record(7, rs.concurrence == r.concurrence && rs.one_tangle == r.one_tangle,
           value("dC", rs.concurrence - r.concurrence) + " " +
               value("dtau", rs.one_tangle - r.one_tangle));
  }
  return result;
}

}  // namespace spinent::cli
