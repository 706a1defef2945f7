#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstddef>

#include "spinent/model.hpp"

namespace spinent {

// State assembly is refused above this apparatus dimension m_a * m_b.
inline constexpr std::size_t kOracleMaxApparatusDim = 4096;

// Dense amplitudes psi(d, alpha, beta), flattened with d slowest and beta fastest.
struct PureState {
  SpinDims dims{0};
  Eigen::VectorXcd amp;

  cplx operator()(std::size_t d, std::size_t alpha, std::size_t beta) const {
    return amp[static_cast<Eigen::Index>((d * dims.m_a() + alpha) * dims.m_b() + beta)];
  }
};

// Hermitian, unit-trace matrix. Construction rejects violations beyond 1e-12.
class DensityMatrix {
 public:
  static constexpr double kTolerance = 1e-12;
  static constexpr double kEigenFloor = -1e-10;

  explicit DensityMatrix(Eigen::MatrixXcd entries);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  cplx operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  double hermiticity_error() const;  // max |rho - rho^dagger|
  double trace_error() const;        // |tr rho - 1|
  Eigen::VectorXd eigenvalues() const;  // ascending
  double min_eigenvalue() const;
  // Throws InvalidStateError if an eigenvalue lies below kEigenFloor.
  void check_positive() const;

 private:
  Eigen::MatrixXcd entries_;
};

enum class Subsystem { Device, Qubit1, Qubit2, Apparatus, SpinA, SpinB };

// psi(d, alpha, beta) = c_d (1 + x_{d alpha}) (1 + y_{d beta}) / N, any device mode.
// Throws DomainError above kOracleMaxApparatusDim, DegenerateError if c = 0.
PureState assemble_state(const CoefficientSet& set);

// Partial trace onto `keep`. Device results use the device basis order d = 1..4;
// single-qubit results identify d=1 <-> |01>, d=2 <-> |10>, d=3 <-> |00>, d=4 <-> |11>
// (qubit 1 written first). Apparatus indices are (alpha, beta) with beta fastest.
DensityMatrix reduce(const PureState& state, Subsystem keep);

// Reorders a device-basis density matrix into the product basis |00>,|01>,|10>,|11>.
DensityMatrix to_qubit_basis(const DensityMatrix& device);

// Spin-flip concurrence of a two-qubit state given in the product basis:
// max{0, l1 - l2 - l3 - l4}, l_i the descending square roots of the eigenvalues of
// R = rho (sy x sy) rho* (sy x sy).
//
// The l_i are obtained as the singular values of W^T (sy x sy) W, where
// rho = W W^dagger is a pivoted Cholesky factor. Taking square roots of the
// eigenvalues of R directly turns round-off of order 1e-16 in a vanishing
// eigenvalue into an error of order 1e-8 in l_i (e.g. for every pure state).
// Rejects inputs with an eigenvalue below DensityMatrix::kEigenFloor.
double wootters_concurrence(const DensityMatrix& rho);

// The l_i from the factor route above, descending.
std::array<double, 4> spin_flip_singular_values(const DensityMatrix& rho);

// The l_i from the eigenvalues of R (isolating structurally decoupled indices
// first, clamping eigenvalues within -1e-10 of zero), descending. Kept as an
// independent cross-check of spin_flip_singular_values.
std::array<double, 4> spin_flip_spectrum(const DensityMatrix& rho);

// 4 det rho for a single qubit.
double one_tangle(const DensityMatrix& rho);

// Compares rho_M from the partial trace with the explicit mixture of product
// states sum_d p_d |a_d><a_d| x |b_d><b_d|. True iff max entrywise deviation <= tol.
bool separability_structure_check(const CoefficientSet& set, double tol);
double separability_deviation(const CoefficientSet& set);

// Brute-force figures for one coefficient set.
struct OracleReport {
  double concurrence = 0.0;      // Wootters on rho_D
  double coherence_bound = 0.0;  // 2 |rho_{34}|, equals the concurrence in two-level mode
  double tangle_q1 = 0.0;
  double tangle_q2 = 0.0;
};
OracleReport oracle_evaluate(const CoefficientSet& set);

}  // namespace spinent
