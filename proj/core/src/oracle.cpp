#include "spinent/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "spinent/errors.hpp"

namespace spinent {

namespace {

using RowMajorMatrixXcd = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Product-basis position (2 q1 + q2) of each device level.
constexpr std::array<Eigen::Index, kDeviceDim> kQubitIndex = {1, 2, 0, 3};

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& m) { return 0.5 * (m + m.adjoint()); }

// Eigenvalues of a general matrix. Indices whose row or column is zero off the
// diagonal (within the remaining active set) are split off exactly, as in
// LAPACK's permutation balancing; the rest goes to the QR iteration. Without
// this the structural zeros of R = rho rho~ pick up round-off in the Hessenberg
// reduction, and the square roots taken downstream amplify it to ~1e-8.
// Used only for the rho rho~ cross-check route.
std::vector<cplx> isolated_eigenvalues(const Eigen::Matrix4cd& m) {
  std::vector<Eigen::Index> active{0, 1, 2, 3};
  std::vector<cplx> values;
  bool found = true;
  while (found && !active.empty()) {
    found = false;
    for (std::size_t a = 0; a < active.size(); ++a) {
      const Eigen::Index i = active[a];
      bool row_zero = true;
      bool col_zero = true;
      for (const Eigen::Index j : active) {
        if (j == i) continue;
        row_zero = row_zero && m(i, j) == cplx{};
        col_zero = col_zero && m(j, i) == cplx{};
      }
      if (row_zero || col_zero) {
        values.push_back(m(i, i));
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(a));
        found = true;
        break;
      }
    }
  }
  if (!active.empty()) {
    const auto n = static_cast<Eigen::Index>(active.size());
    Eigen::MatrixXcd sub(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) sub(r, c) = m(active[r], active[c]);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(sub, false);
    if (solver.info() != Eigen::Success) {
      throw InvalidStateError("wootters_concurrence: eigenvalue iteration did not converge");
    }
    for (Eigen::Index r = 0; r < n; ++r) values.push_back(solver.eigenvalues()[r]);
  }
  return values;
}

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw InvalidStateError("DensityMatrix: entries must form a nonempty square matrix");
  }
  if (!entries_.allFinite()) throw InvalidStateError("DensityMatrix: non-finite entries");
  if (const double h = hermiticity_error(); h > kTolerance) {
    throw InvalidStateError("DensityMatrix: not Hermitian (deviation " + std::to_string(h) + ")");
  }
  if (const double t = trace_error(); t > kTolerance) {
    throw InvalidStateError("DensityMatrix: trace differs from 1 by " + std::to_string(t));
  }
}

double DensityMatrix::hermiticity_error() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::trace_error() const { return std::abs(entries_.trace() - cplx{1.0}); }

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double DensityMatrix::min_eigenvalue() const { return eigenvalues().minCoeff(); }

void DensityMatrix::check_positive() const {
  if (const double lo = min_eigenvalue(); lo < kEigenFloor) {
    throw InvalidStateError("DensityMatrix: negative eigenvalue " + std::to_string(lo));
  }
}

PureState assemble_state(const CoefficientSet& set) {
  set.validate();
  const std::size_t ma = set.dims.m_a();
  const std::size_t mb = set.dims.m_b();
  if (ma * mb > kOracleMaxApparatusDim) {
    throw DomainError("assemble_state: apparatus dimension " + std::to_string(ma * mb) +
                      " exceeds the dense limit " + std::to_string(kOracleMaxApparatusDim));
  }
  const double inv_n = 1.0 / normalization(set);
  PureState state{set.dims, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(set.dims.total_dim()))};
  Eigen::Index k = 0;
  for (std::size_t d = 0; d < kDeviceDim; ++d) {
    const cplx cd = set.c[d] * inv_n;
    for (std::size_t a = 0; a < ma; ++a) {
      const cplx ga = cd * (1.0 + set.x[d][a]);
      for (std::size_t b = 0; b < mb; ++b) state.amp[k++] = ga * (1.0 + set.y[d][b]);
    }
  }
  return state;
}

DensityMatrix reduce(const PureState& state, Subsystem keep) {
  const auto ma = static_cast<Eigen::Index>(state.dims.m_a());
  const auto mb = static_cast<Eigen::Index>(state.dims.m_b());
  const Eigen::Index mm = ma * mb;
  if (state.amp.size() != static_cast<Eigen::Index>(kDeviceDim) * mm) {
    throw InvalidStateError("reduce: amplitude length does not match the dimensions");
  }
  // Column d holds the apparatus amplitudes attached to device level d.
  const Eigen::Map<const Eigen::MatrixXcd> phi(state.amp.data(), mm, kDeviceDim);

  auto block = [&](Eigen::Index d) {
    return Eigen::Map<const RowMajorMatrixXcd>(state.amp.data() + d * mm, ma, mb);
  };

  switch (keep) {
    case Subsystem::Device:
      return DensityMatrix(hermitian_part(phi.transpose() * phi.conjugate()));
    case Subsystem::Apparatus:
      return DensityMatrix(hermitian_part(phi * phi.adjoint()));
    case Subsystem::SpinA: {
      Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(ma, ma);
      for (Eigen::Index d = 0; d < static_cast<Eigen::Index>(kDeviceDim); ++d) {
        rho.noalias() += block(d) * block(d).adjoint();
      }
      return DensityMatrix(hermitian_part(rho));
    }
    case Subsystem::SpinB: {
      Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(mb, mb);
      for (Eigen::Index d = 0; d < static_cast<Eigen::Index>(kDeviceDim); ++d) {
        rho.noalias() += block(d).transpose() * block(d).conjugate();
      }
      return DensityMatrix(hermitian_part(rho));
    }
    case Subsystem::Qubit1:
    case Subsystem::Qubit2: {
      const Eigen::MatrixXcd two = to_qubit_basis(reduce(state, Subsystem::Device)).entries();
      const bool first = keep == Subsystem::Qubit1;
      Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
      for (int q = 0; q < 2; ++q) {
        for (int qp = 0; qp < 2; ++qp) {
          for (int other = 0; other < 2; ++other) {
            const int i = first ? 2 * q + other : 2 * other + q;
            const int j = first ? 2 * qp + other : 2 * other + qp;
            rho(q, qp) += two(i, j);
          }
        }
      }
      return DensityMatrix(hermitian_part(rho));
    }
  }
  throw InvalidStateError("reduce: unknown subsystem selector");
}

DensityMatrix to_qubit_basis(const DensityMatrix& device) {
  if (device.dim() != kDeviceDim) throw InvalidStateError("to_qubit_basis: expected a 4x4 matrix");
  Eigen::MatrixXcd out(4, 4);
  for (std::size_t d = 0; d < kDeviceDim; ++d) {
    for (std::size_t e = 0; e < kDeviceDim; ++e) out(kQubitIndex[d], kQubitIndex[e]) = device(d, e);
  }
  return DensityMatrix(std::move(out));
}

namespace {

Eigen::Matrix4cd spin_flip_matrix() {
  Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  return flip;
}

void require_two_qubit_psd(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw InvalidStateError("wootters_concurrence: expected a 4x4 matrix");
  if (rho.min_eigenvalue() < DensityMatrix::kEigenFloor) {
    throw InvalidStateError("wootters_concurrence: input is not positive semidefinite");
  }
}

// Pivots at or below this are treated as zero in the rank-revealing factor.
constexpr double kPivotFloor = 1e-15;

// rho = W W^dagger by Cholesky with diagonal pivoting, stopped at kPivotFloor.
Eigen::MatrixXcd pivoted_factor(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix4cd rest = rho;
  Eigen::MatrixXcd w(4, 0);
  for (int k = 0; k < 4; ++k) {
    Eigen::Index j = 0;
    rest.diagonal().real().maxCoeff(&j);
    const double pivot = rest(j, j).real();
    if (!(pivot > kPivotFloor)) break;
    const Eigen::Vector4cd col = rest.col(j) / std::sqrt(pivot);
    rest -= col * col.adjoint();
    w.conservativeResize(Eigen::NoChange, w.cols() + 1);
    w.col(w.cols() - 1) = col;
  }
  return w;
}

}  // namespace

std::array<double, 4> spin_flip_spectrum(const DensityMatrix& rho) {
  require_two_qubit_psd(rho);
  const Eigen::Matrix4cd flip = spin_flip_matrix();
  const Eigen::Matrix4cd r = rho.entries();
  const Eigen::Matrix4cd product = r * (flip * r.conjugate() * flip);
  std::array<double, 4> lambda{};
  std::size_t k = 0;
  for (const cplx ev : isolated_eigenvalues(product)) {
    double re = ev.real();
    if (re < 0.0) {
      if (re < DensityMatrix::kEigenFloor) {
        throw InvalidStateError("spin_flip_spectrum: negative eigenvalue of rho rho~");
      }
      re = 0.0;
    }
    lambda[k++] = std::sqrt(re);
  }
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return lambda;
}

std::array<double, 4> spin_flip_singular_values(const DensityMatrix& rho) {
  require_two_qubit_psd(rho);
  const Eigen::MatrixXcd w = pivoted_factor(rho.entries());
  std::array<double, 4> lambda{};
  if (w.cols() == 0) return lambda;
  const Eigen::MatrixXcd overlap = w.transpose() * spin_flip_matrix() * w;
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(overlap);
  const Eigen::VectorXd sv = svd.singularValues();  // descending
  for (Eigen::Index i = 0; i < sv.size(); ++i) lambda[static_cast<std::size_t>(i)] = sv[i];
  return lambda;
}

double wootters_concurrence(const DensityMatrix& rho) {
  const auto lambda = spin_flip_singular_values(rho);
  return std::clamp(lambda[0] - lambda[1] - lambda[2] - lambda[3], 0.0, 1.0);
}

double one_tangle(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw InvalidStateError("one_tangle: expected a 2x2 matrix");
  const double det = (rho(0, 0) * rho(1, 1) - rho(0, 1) * rho(1, 0)).real();
  const double tau = 4.0 * det;
  constexpr double kEdge = DensityMatrix::kTolerance;
  if (tau < -kEdge || tau > 1.0 + kEdge) {
    throw InvalidStateError("one_tangle: 4 det rho = " + std::to_string(tau) + " outside [0,1]");
  }
  return std::clamp(tau, 0.0, 1.0);
}

double separability_deviation(const CoefficientSet& set) {
  const DensityMatrix traced = reduce(assemble_state(set), Subsystem::Apparatus);
  const std::size_t ma = set.dims.m_a();
  const std::size_t mb = set.dims.m_b();
  const double n2 = normalization_squared(set);

  Eigen::MatrixXcd mixture = Eigen::MatrixXcd::Zero(traced.entries().rows(), traced.entries().cols());
  for (std::size_t d = 0; d < kDeviceDim; ++d) {
    if (set.c[d] == cplx{}) continue;
    Eigen::VectorXcd a(static_cast<Eigen::Index>(ma));
    Eigen::VectorXcd b(static_cast<Eigen::Index>(mb));
    for (std::size_t i = 0; i < ma; ++i) a[static_cast<Eigen::Index>(i)] = 1.0 + set.x[d][i];
    for (std::size_t i = 0; i < mb; ++i) b[static_cast<Eigen::Index>(i)] = 1.0 + set.y[d][i];
    const double wa = a.squaredNorm();
    const double wb = b.squaredNorm();
    const double p = std::norm(set.c[d]) * wa * wb / n2;
    a /= std::sqrt(wa);
    b /= std::sqrt(wb);
    Eigen::VectorXcd ab(static_cast<Eigen::Index>(ma * mb));
    for (std::size_t i = 0; i < ma; ++i) {
      ab.segment(static_cast<Eigen::Index>(i * mb), static_cast<Eigen::Index>(mb)) =
          a[static_cast<Eigen::Index>(i)] * b;
    }
    mixture.noalias() += p * (ab * ab.adjoint());
  }
  return (traced.entries() - mixture).cwiseAbs().maxCoeff();
}

bool separability_structure_check(const CoefficientSet& set, double tol) {
  return separability_deviation(set) <= tol;
}

OracleReport oracle_evaluate(const CoefficientSet& set) {
  const PureState state = assemble_state(set);
  const DensityMatrix device = reduce(state, Subsystem::Device);
  OracleReport r;
  r.concurrence = wootters_concurrence(to_qubit_basis(device));
  r.coherence_bound = 2.0 * std::abs(device(kLevel00, kLevel11));
  r.tangle_q1 = one_tangle(reduce(state, Subsystem::Qubit1));
  r.tangle_q2 = one_tangle(reduce(state, Subsystem::Qubit2));
  return r;
}

}  // namespace spinent
