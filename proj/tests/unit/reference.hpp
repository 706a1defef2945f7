// Independent reference computations used only by the tests. Everything here is
// written from the definitions with explicit index loops in long double, and
// shares no code path with the library beyond the CoefficientSet layout.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "spinent/model.hpp"

namespace spinent::reference {

using lcplx = std::complex<long double>;

inline lcplx widen(cplx v) { return {v.real(), v.imag()}; }

// psi(d, alpha, beta) before normalization.
inline lcplx raw_amp(const CoefficientSet& s, std::size_t d, std::size_t a, std::size_t b) {
  return widen(s.c[d]) * (1.0L + widen(s.x[d][a])) * (1.0L + widen(s.y[d][b]));
}

// <Psi|Psi> of the unnormalized ansatz, i.e. N^2, by direct triple summation.
inline long double norm_squared(const CoefficientSet& s) {
  long double acc = 0.0L;
  for (std::size_t d = 0; d < kDeviceDim; ++d)
    for (std::size_t a = 0; a < s.dims.m_a(); ++a)
      for (std::size_t b = 0; b < s.dims.m_b(); ++b) acc += std::norm(raw_amp(s, d, a, b));
  return acc;
}

// rho_D(d, e) = sum_{alpha beta} psi(d) conj(psi(e)) / N^2 by explicit contraction.
inline std::vector<std::vector<lcplx>> device_rho(const CoefficientSet& s) {
  const long double n2 = norm_squared(s);
  std::vector<std::vector<lcplx>> rho(kDeviceDim, std::vector<lcplx>(kDeviceDim));
  for (std::size_t d = 0; d < kDeviceDim; ++d)
    for (std::size_t e = 0; e < kDeviceDim; ++e) {
      lcplx acc = 0.0L;
      for (std::size_t a = 0; a < s.dims.m_a(); ++a)
        for (std::size_t b = 0; b < s.dims.m_b(); ++b)
          acc += raw_amp(s, d, a, b) * std::conj(raw_amp(s, e, a, b));
      rho[d][e] = acc / n2;
    }
  return rho;
}

// rho_M((a,b),(a',b')) by explicit contraction over d.
inline std::vector<std::vector<lcplx>> apparatus_rho(const CoefficientSet& s) {
  const long double n2 = norm_squared(s);
  const std::size_t ma = s.dims.m_a();
  const std::size_t mb = s.dims.m_b();
  std::vector<std::vector<lcplx>> rho(ma * mb, std::vector<lcplx>(ma * mb));
  for (std::size_t a = 0; a < ma; ++a)
    for (std::size_t b = 0; b < mb; ++b)
      for (std::size_t ap = 0; ap < ma; ++ap)
        for (std::size_t bp = 0; bp < mb; ++bp) {
          lcplx acc = 0.0L;
          for (std::size_t d = 0; d < kDeviceDim; ++d)
            acc += raw_amp(s, d, a, b) * std::conj(raw_amp(s, d, ap, bp));
          rho[a * mb + b][ap * mb + bp] = acc / n2;
        }
  return rho;
}

struct DirectSums {
  long double x3 = 0, x4 = 0, y3 = 0, y4 = 0;
  lcplx x34, y34;
};

inline DirectSums direct_sums(const CoefficientSet& s) {
  DirectSums out;
  for (std::size_t a = 0; a < s.dims.m_a(); ++a) {
    const lcplx u = 1.0L + widen(s.x[kLevel00][a]);
    const lcplx v = 1.0L + widen(s.x[kLevel11][a]);
    out.x3 += std::norm(u);
    out.x4 += std::norm(v);
    out.x34 += u * std::conj(v);
  }
  for (std::size_t b = 0; b < s.dims.m_b(); ++b) {
    const lcplx u = 1.0L + widen(s.y[kLevel00][b]);
    const lcplx v = 1.0L + widen(s.y[kLevel11][b]);
    out.y3 += std::norm(u);
    out.y4 += std::norm(v);
    out.y34 += u * std::conj(v);
  }
  return out;
}

// The printed closed forms, evaluated literally.
inline long double literal_concurrence(const CoefficientSet& s) {
  const DirectSums d = direct_sums(s);
  const long double c34 = std::abs(widen(s.c[kLevel00])) * std::abs(widen(s.c[kLevel11]));
  const long double v = 2.0L * c34 * std::abs(d.x34 * d.y34) / norm_squared(s);
  return v > 0.0L ? v : 0.0L;
}

inline long double literal_tangle(const CoefficientSet& s) {
  const DirectSums d = direct_sums(s);
  const long double c34 = std::abs(widen(s.c[kLevel00])) * std::abs(widen(s.c[kLevel11]));
  const long double n2 = norm_squared(s);
  return 4.0L * c34 * c34 * d.x3 * d.x4 * d.y3 * d.y4 / (n2 * n2);
}

// 2x2 Werner-type mixture p |Phi+><Phi+| + (1-p) I/4 in the product basis.
inline std::vector<std::vector<double>> werner(double p) {
  std::vector<std::vector<double>> m(4, std::vector<double>(4, 0.0));
  for (int i = 0; i < 4; ++i) m[i][i] = (1.0 - p) / 4.0;
  m[0][0] += p / 2.0;
  m[3][3] += p / 2.0;
  m[0][3] += p / 2.0;
  m[3][0] += p / 2.0;
  return m;
}

}  // namespace spinent::reference
