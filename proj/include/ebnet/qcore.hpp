#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ebnet {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Dims = std::vector<int>;

/// Tolerance used for every state/channel invariant check.
inline constexpr double kInvariantTol = 1e-9;

/// Eigenvalues at or below this magnitude contribute nothing to entropies.
inline constexpr double kEigenClamp = 1e-12;

int total_dim(std::span<const int> dims);

/// Density matrix over an ordered list of tensor factors.
///
/// Public construction validates hermiticity, unit trace and positivity
/// (all at kInvariantTol). Operations in this library that provably preserve
/// those properties build their results through the unchecked path.
class QuantumState {
 public:
  QuantumState(Matrix matrix, Dims dims);

  static QuantumState unchecked(Matrix matrix, Dims dims);
  static QuantumState from_ket(const Vector& ket, Dims dims);

  const Matrix& matrix() const noexcept { return matrix_; }
  const Dims& dims() const noexcept { return dims_; }
  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }
  int num_factors() const noexcept { return static_cast<int>(dims_.size()); }

  double purity() const;

  /// Same matrix viewed over a different factorization of the same space.
  QuantumState with_dims(Dims dims) const;

  /// Throws std::domain_error naming the first violated invariant.
  void validate(double tol = kInvariantTol) const;
  bool is_valid(double tol = kInvariantTol) const noexcept;

 private:
  struct NoCheck {};
  QuantumState(Matrix matrix, Dims dims, NoCheck);

  Matrix matrix_;
  Dims dims_;
};

class UnitaryOperator {
 public:
  explicit UnitaryOperator(Matrix matrix);

  const Matrix& matrix() const noexcept { return matrix_; }
  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }
  UnitaryOperator adjoint() const;

 private:
  Matrix matrix_;
};

UnitaryOperator operator*(const UnitaryOperator& lhs, const UnitaryOperator& rhs);

QuantumState computational_basis_state(int d, int j);
QuantumState maximally_mixed_state(const Dims& dims);
QuantumState maximally_entangled_state(int d);

/// X^a Z^b with X|j> = |j+1 mod d>, Z|j> = exp(2 pi i j / d)|j>.
UnitaryOperator weyl_operator(int d, int a, int b);

/// Flat Bell/Weyl index i = a*d + b.
inline int bell_index(int d, int a, int b) { return a * d + b; }

/// (X^a Z^b (x) I)|Phi+>.
QuantumState generalized_bell_state(int d, int a, int b);

QuantumState tensor(const QuantumState& lhs, const QuantumState& rhs);
QuantumState tensor(std::span<const QuantumState> factors);

/// Reorders tensor factors: factor k of the result is factor order[k] of s.
/// `order` must be a permutation of 0..num_factors-1.
QuantumState permute_factors(const QuantumState& s, std::span<const int> order);

/// Reduced state on `keep`; kept factors retain their original relative order.
QuantumState partial_trace(const QuantumState& s, std::span<const int> keep);
QuantumState partial_trace(const QuantumState& s, std::initializer_list<int> keep);

QuantumState apply_unitary(const QuantumState& s, const UnitaryOperator& u,
                           std::span<const int> factors);
QuantumState apply_unitary(const QuantumState& s, const UnitaryOperator& u,
                           std::initializer_list<int> factors);

/// Eigenvalues in ascending order; Hermitian input assumed.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);

/// Entropy in bits of a probability-like spectrum. Entries in
/// [-kEigenClamp, kEigenClamp] count as zero; anything more negative throws.
double spectrum_entropy(const Eigen::VectorXd& eigenvalues);

double von_neumann_entropy(const QuantumState& s);

/// <psi|rho|psi> for pure `target` = |psi><psi|, clamped to [0, 1].
double fidelity_with_pure(const QuantumState& s, const QuantumState& target);

/// Haar-random pure state; deterministic for a given seed.
QuantumState random_pure_state(int d, std::uint64_t seed);

/// Haar-random unitary (QR of a Ginibre matrix with phase fix).
UnitaryOperator random_unitary(int d, std::uint64_t seed);

/// Random mixed state of given rank: partial trace of a random pure state.
QuantumState random_mixed_state(int d, std::uint64_t seed);

}  // namespace ebnet
