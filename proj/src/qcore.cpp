#include "ebnet/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "factor_ops.hpp"

namespace ebnet {

int total_dim(std::span<const int> dims) {
  int n = 1;
  for (int d : dims) {
    if (d <= 0) throw std::invalid_argument("factor dimensions must be positive");
    n *= d;
  }
  return n;
}

namespace {

void check_shape(const Matrix& m, const Dims& dims) {
  if (m.rows() != m.cols()) throw std::invalid_argument("density matrix must be square");
  if (dims.empty()) throw std::invalid_argument("state needs at least one factor");
  if (total_dim(dims) != m.rows())
    throw std::invalid_argument("factor dimensions do not multiply to the matrix dimension");
}

std::vector<int> sorted_copy(std::span<const int> v) {
  std::vector<int> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

QuantumState::QuantumState(Matrix matrix, Dims dims) : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  check_shape(matrix_, dims_);
  validate();
}

QuantumState::QuantumState(Matrix matrix, Dims dims, NoCheck)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  check_shape(matrix_, dims_);
}

QuantumState QuantumState::unchecked(Matrix matrix, Dims dims) {
  return QuantumState(std::move(matrix), std::move(dims), NoCheck{});
}

QuantumState QuantumState::from_ket(const Vector& ket, Dims dims) {
  const double norm = ket.norm();
  if (norm < 1e-12) throw std::invalid_argument("zero ket");
  const Vector unit = ket / norm;
  return QuantumState(unit * unit.adjoint(), std::move(dims));
}

double QuantumState::purity() const { return (matrix_ * matrix_).trace().real(); }

QuantumState QuantumState::with_dims(Dims dims) const {
  if (total_dim(dims) != dim()) throw std::invalid_argument("refactorization must keep the total dimension");
  return unchecked(matrix_, std::move(dims));
}

void QuantumState::validate(double tol) const {
  const double herm = (matrix_ - matrix_.adjoint()).norm();
  if (herm > tol) throw std::domain_error("state is not Hermitian (deviation " + std::to_string(herm) + ")");
  const double tr = std::abs(matrix_.trace() - Complex(1.0, 0.0));
  if (tr > tol) throw std::domain_error("state trace deviates from 1 by " + std::to_string(tr));
  const double min_eig = hermitian_eigenvalues(matrix_).minCoeff();
  if (min_eig < -tol) throw std::domain_error("state has negative eigenvalue " + std::to_string(min_eig));
}

bool QuantumState::is_valid(double tol) const noexcept {
  try {
    validate(tol);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

UnitaryOperator::UnitaryOperator(Matrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0)
    throw std::invalid_argument("unitary must be a non-empty square matrix");
  const auto n = matrix_.rows();
  const double dev = (matrix_.adjoint() * matrix_ - Matrix::Identity(n, n)).norm();
  if (dev > kInvariantTol) throw std::domain_error("matrix is not unitary (deviation " + std::to_string(dev) + ")");
}

UnitaryOperator UnitaryOperator::adjoint() const { return UnitaryOperator(matrix_.adjoint()); }

UnitaryOperator operator*(const UnitaryOperator& lhs, const UnitaryOperator& rhs) {
  if (lhs.dim() != rhs.dim()) throw std::invalid_argument("unitary dimension mismatch");
  return UnitaryOperator(lhs.matrix() * rhs.matrix());
}

QuantumState computational_basis_state(int d, int j) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  if (j < 0 || j >= d) throw std::out_of_range("basis index " + std::to_string(j) + " out of range for d=" + std::to_string(d));
  Matrix m = Matrix::Zero(d, d);
  m(j, j) = 1.0;
  return QuantumState::unchecked(std::move(m), {d});
}

QuantumState maximally_mixed_state(const Dims& dims) {
  const int n = total_dim(dims);
  return QuantumState::unchecked(Matrix::Identity(n, n) / static_cast<double>(n), dims);
}

QuantumState maximally_entangled_state(int d) {
  if (d < 2) throw std::invalid_argument("maximally entangled state needs d >= 2");
  Vector ket = Vector::Zero(d * d);
  for (int j = 0; j < d; ++j) ket(j * d + j) = 1.0 / std::sqrt(static_cast<double>(d));
  return QuantumState::unchecked(ket * ket.adjoint(), {d, d});
}

UnitaryOperator weyl_operator(int d, int a, int b) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  if (a < 0 || a >= d || b < 0 || b >= d)
    throw std::out_of_range("Weyl indices (" + std::to_string(a) + "," + std::to_string(b) + ") out of range for d=" +
                            std::to_string(d));
  Matrix u = Matrix::Zero(d, d);
  const double step = 2.0 * std::numbers::pi / d;
  for (int j = 0; j < d; ++j) {
    // Phase index reduced mod d keeps the angle small and exact at d=2.
    u((j + a) % d, j) = std::polar(1.0, step * ((b * j) % d));
  }
  return UnitaryOperator(std::move(u));
}

QuantumState generalized_bell_state(int d, int a, int b) {
  if (d < 2) throw std::invalid_argument("Bell states need d >= 2");
  const UnitaryOperator u = weyl_operator(d, a, b);
  Vector ket = Vector::Zero(d * d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) ket(i * d + j) = u.matrix()(i, j) / std::sqrt(static_cast<double>(d));
  return QuantumState::unchecked(ket * ket.adjoint(), {d, d});
}

QuantumState tensor(const QuantumState& lhs, const QuantumState& rhs) {
  Dims dims = lhs.dims();
  dims.insert(dims.end(), rhs.dims().begin(), rhs.dims().end());
  return QuantumState::unchecked(Eigen::kroneckerProduct(lhs.matrix(), rhs.matrix()).eval(), std::move(dims));
}

QuantumState tensor(std::span<const QuantumState> factors) {
  if (factors.empty()) throw std::invalid_argument("tensor of zero states");
  QuantumState acc = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) acc = tensor(acc, factors[k]);
  return acc;
}

QuantumState permute_factors(const QuantumState& s, std::span<const int> order) {
  if (static_cast<int>(order.size()) != s.num_factors()) throw std::invalid_argument("permutation has wrong length");
  detail::check_factor_selection(order, s.num_factors());
  Dims dims;
  for (int f : order) dims.push_back(s.dims()[f]);
  return QuantumState::unchecked(detail::permute_matrix(s.matrix(), s.dims(), order), std::move(dims));
}

QuantumState partial_trace(const QuantumState& s, std::span<const int> keep) {
  detail::check_factor_selection(keep, s.num_factors());
  const auto kept = sorted_copy(keep);
  const auto rest = detail::complement(kept, s.num_factors());

  std::vector<int> order(kept.begin(), kept.end());
  order.insert(order.end(), rest.begin(), rest.end());
  Dims kept_dims;
  int k_dim = 1;
  for (int f : kept) {
    kept_dims.push_back(s.dims()[f]);
    k_dim *= s.dims()[f];
  }
  const int r_dim = s.dim() / k_dim;

  const Matrix p = detail::permute_matrix(s.matrix(), s.dims(), order);
  Matrix out = Matrix::Zero(k_dim, k_dim);
  for (int j = 0; j < k_dim; ++j)
    for (int i = 0; i < k_dim; ++i) {
      Complex acc = 0.0;
      for (int r = 0; r < r_dim; ++r) acc += p(i * r_dim + r, j * r_dim + r);
      out(i, j) = acc;
    }
  return QuantumState::unchecked(std::move(out), std::move(kept_dims));
}

QuantumState partial_trace(const QuantumState& s, std::initializer_list<int> keep) {
  return partial_trace(s, std::span<const int>(keep.begin(), keep.size()));
}

QuantumState apply_unitary(const QuantumState& s, const UnitaryOperator& u, std::span<const int> factors) {
  detail::check_factor_selection(factors, s.num_factors());
  int sel = 1;
  for (int f : factors) sel *= s.dims()[f];
  if (sel != u.dim())
    throw std::invalid_argument("unitary dimension " + std::to_string(u.dim()) +
                                " does not match selected factors (" + std::to_string(sel) + ")");

  // Split the unitary's output back into the selected factors so every
  // factor returns to its own slot.
  Dims out_dims;
  for (int f : factors) out_dims.push_back(s.dims()[f]);
  const Matrix k[] = {u.matrix()};
  auto acted = detail::apply_on_selected(s.matrix(), s.dims(), k, factors, out_dims);

  // apply_on_selected clusters the outputs at the first selected slot; undo that.
  const int n = s.num_factors();
  const int first = *std::min_element(factors.begin(), factors.end());
  std::vector<int> layout;  // original factor index currently at each slot
  for (int p = 0; p < n; ++p) {
    if (p == first) {
      layout.insert(layout.end(), factors.begin(), factors.end());
    } else if (std::find(factors.begin(), factors.end(), p) == factors.end()) {
      layout.push_back(p);
    }
  }
  std::vector<int> order(n);
  for (int slot = 0; slot < n; ++slot) order[layout[slot]] = slot;
  return QuantumState::unchecked(detail::permute_matrix(acted.matrix, acted.dims, order), s.dims());
}

QuantumState apply_unitary(const QuantumState& s, const UnitaryOperator& u, std::initializer_list<int> factors) {
  return apply_unitary(s, u, std::span<const int>(factors.begin(), factors.size()));
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver failed to converge");
  return solver.eigenvalues();
}

double spectrum_entropy(const Eigen::VectorXd& eigenvalues) {
  double s = 0.0;
  for (double lambda : eigenvalues) {
    if (lambda < -kEigenClamp)
      throw std::domain_error("eigenvalue " + std::to_string(lambda) + " is too negative for a density matrix");
    if (lambda <= kEigenClamp) continue;
    s -= lambda * std::log2(lambda);
  }
  return std::max(s, 0.0);
}

double von_neumann_entropy(const QuantumState& s) { return spectrum_entropy(hermitian_eigenvalues(s.matrix())); }

double fidelity_with_pure(const QuantumState& s, const QuantumState& target) {
  if (s.dim() != target.dim()) throw std::invalid_argument("fidelity requires equal total dimension");
  if (std::abs(target.purity() - 1.0) > kInvariantTol) throw std::invalid_argument("fidelity target is not pure");
  // For target = |psi><psi|, Tr(rho target) = <psi|rho|psi>.
  const double f = (s.matrix() * target.matrix()).trace().real();
  return std::clamp(f, 0.0, 1.0);
}

namespace {

Matrix ginibre(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  return g;
}

}  // namespace

QuantumState random_pure_state(int d, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("random pure state needs d >= 2");
  return QuantumState::from_ket(ginibre(d, 1, seed).col(0), {d});
}

UnitaryOperator random_unitary(int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  const Matrix g = ginibre(d, d, seed);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(j) *= diag / mag;
  }
  return UnitaryOperator(std::move(q));
}

QuantumState random_mixed_state(int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  const Vector ket = ginibre(d * d, 1, seed).col(0);
  const QuantumState pure = QuantumState::from_ket(ket, {d, d});
  return partial_trace(pure, {0});
}

}  // namespace ebnet
