#include "gbsbell/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace gbsbell {

StateVector::StateVector(Vector amplitudes, std::string basis_label)
    : amplitudes_(std::move(amplitudes)), basis_label_(std::move(basis_label)) {
  if (amplitudes_.size() < 1) {
    throw std::invalid_argument("StateVector: dimension must be positive");
  }
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(amplitudes_.squaredNorm() - 1.0) <= tol;
}

LinearOperator::LinearOperator(Matrix entries, bool hermitian)
    : entries_(std::move(entries)), hermitian_(hermitian) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("LinearOperator: matrix must be square and non-empty");
  }
  if (hermitian_) {
    const double dev = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (dev >= kStrictTol) {
      throw std::invalid_argument("LinearOperator: hermitian flag set but max|M - M†| = " +
                                  std::to_string(dev));
    }
  }
}

LinearOperator LinearOperator::adjoint() const {
  return LinearOperator(entries_.adjoint(), hermitian_);
}

LinearOperator annihilation_op(int dim) {
  if (dim < 1) throw std::invalid_argument("annihilation_op: dim must be >= 1");
  Matrix m = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) {
    m(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return LinearOperator(std::move(m), /*hermitian=*/false);
}

LinearOperator creation_op(int dim) { return annihilation_op(dim).adjoint(); }

LinearOperator number_op(int dim) {
  if (dim < 1) throw std::invalid_argument("number_op: dim must be >= 1");
  Matrix m = Matrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) m(n, n) = static_cast<double>(n);
  return LinearOperator(std::move(m), /*hermitian=*/true);
}

LinearOperator identity_op(int dim) {
  if (dim < 1) throw std::invalid_argument("identity_op: dim must be >= 1");
  return LinearOperator(Matrix::Identity(dim, dim), /*hermitian=*/true);
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  const int da = a.dim(), db = b.dim();
  Vector out(static_cast<Eigen::Index>(da) * db);
  for (int i = 0; i < da; ++i) {
    out.segment(static_cast<Eigen::Index>(i) * db, db) = a.amplitudes()(i) * b.amplitudes();
  }
  return StateVector(std::move(out),
                     "tensor[" + a.basis_label() + " x " + b.basis_label() + "]");
}

LinearOperator tensor_product(const LinearOperator& a, const LinearOperator& b) {
  const int da = a.dim(), db = b.dim();
  Matrix out(static_cast<Eigen::Index>(da) * db, static_cast<Eigen::Index>(da) * db);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) {
      out.block(static_cast<Eigen::Index>(i) * db, static_cast<Eigen::Index>(j) * db, db, db) =
          a.entries()(i, j) * b.entries();
    }
  }
  return LinearOperator(std::move(out),
                        a.is_hermitian_flagged() && b.is_hermitian_flagged());
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("inner_product: dimension mismatch");
  }
  return a.amplitudes().dot(b.amplitudes());  // Eigen dot conjugates the left factor
}

Complex expectation(const StateVector& state, const LinearOperator& op) {
  if (state.dim() != op.dim()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  return state.amplitudes().dot(op.entries() * state.amplitudes());
}

}  // namespace gbsbell
