#pragma once

// Dense complex linear algebra over truncated Fock spaces. Everything here
// is small (dim <= ~60 single cavity, <= 9 for the two-cavity states), so
// plain dense Eigen storage is used throughout. All values are immutable
// after construction.

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <utility>

namespace gbsbell {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Default absolute comparison tolerance: every matrix in this library is
// at most 9x9 in the main path, so accumulation error stays far below this.
inline constexpr double kDefaultTol = 1e-10;
// Tolerance for normalization / hermiticity / orthogonality assertions.
inline constexpr double kStrictTol = 1e-12;

/// Complex amplitude vector over a truncated Fock basis, either a single
/// cavity or a two-cavity tensor product (cavity 1 = slow/leftmost index).
class StateVector {
 public:
  StateVector(Vector amplitudes, std::string basis_label);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex amplitude(int i) const { return amplitudes_(i); }
  const std::string& basis_label() const { return basis_label_; }

  double norm() const { return amplitudes_.norm(); }
  bool is_normalized(double tol = kStrictTol) const;

 private:
  Vector amplitudes_;
  std::string basis_label_;
};

/// Dense operator on a truncated Fock space. When constructed with
/// hermitian = true the matrix is checked entrywise against its adjoint.
class LinearOperator {
 public:
  LinearOperator(Matrix entries, bool hermitian);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  bool is_hermitian_flagged() const { return hermitian_; }

  LinearOperator adjoint() const;

 private:
  Matrix entries_;
  bool hermitian_;
};

/// Lowering operator: <n-1| a |n> = sqrt(n) on the truncated space.
LinearOperator annihilation_op(int dim);
/// Raising operator, the conjugate transpose of annihilation_op.
LinearOperator creation_op(int dim);
/// Photon number operator a†a, diagonal (0, 1, ..., dim-1).
LinearOperator number_op(int dim);
LinearOperator identity_op(int dim);

// Kronecker products; the first operand is the slow (leftmost) index, i.e.
// the cavity-1 factor in every two-cavity construction.
StateVector tensor_product(const StateVector& a, const StateVector& b);
LinearOperator tensor_product(const LinearOperator& a, const LinearOperator& b);

/// <a|b>, conjugate-linear in the first argument.
Complex inner_product(const StateVector& a, const StateVector& b);

/// <psi|M|psi>. The imaginary part is a numerical residue whenever the
/// operator is Hermitian.
Complex expectation(const StateVector& state, const LinearOperator& op);

}  // namespace gbsbell
