#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "ebnet/qcore.hpp"

namespace ebnet {

/// CPTP map in Kraus form. Every Kraus matrix is out_dim x in_dim and the
/// family satisfies sum_k A_k^dagger A_k = I to kInvariantTol.
class QuantumChannel {
 public:
  QuantumChannel(std::vector<Matrix> kraus, Dims in_dims, Dims out_dims);

  const std::vector<Matrix>& kraus() const noexcept { return kraus_; }
  const Dims& in_dims() const noexcept { return in_dims_; }
  const Dims& out_dims() const noexcept { return out_dims_; }
  int in_dim() const noexcept { return in_dim_; }
  int out_dim() const noexcept { return out_dim_; }
  std::size_t num_kraus() const noexcept { return kraus_.size(); }

  /// Frobenius norm of sum_k A_k^dagger A_k - I.
  double trace_preservation_error() const;

 private:
  std::vector<Matrix> kraus_;
  Dims in_dims_;
  Dims out_dims_;
  int in_dim_ = 0;
  int out_dim_ = 0;
};

/// Unnormalized Choi matrix J = sum_ij |i><j| (x) L(|i><j|), input factor first.
struct ChoiMatrix {
  Matrix matrix;
  int in_dim = 0;
  int out_dim = 0;

  /// Tr_out J; the identity on the input for a trace-preserving map.
  Matrix input_marginal() const;
  /// Hermitian, PSD and Tr_out J = I, all to `tol`.
  bool is_valid(double tol = kInvariantTol) const;
};

QuantumState apply(const QuantumChannel& ch, const QuantumState& s);

/// (ch (x) id_rest) on the listed factors, which must match ch.in_dims()
/// factor by factor. The channel's output factors take the slot of the
/// lowest-numbered selected factor; other factors keep their order.
QuantumState apply_on_factors(const QuantumChannel& ch, const QuantumState& s, std::span<const int> factors);
QuantumState apply_on_factors(const QuantumChannel& ch, const QuantumState& s, std::initializer_list<int> factors);

/// `second` after `first`; Kraus family {B_j A_k} without pruning.
QuantumChannel compose_serial(const QuantumChannel& second, const QuantumChannel& first);
QuantumChannel compose_parallel(const QuantumChannel& lhs, const QuantumChannel& rhs);

/// Convex combination via the union of sqrt-weighted Kraus families.
/// Zero-weight members contribute no operators.
QuantumChannel mixture(std::span<const double> weights, std::span<const QuantumChannel> channels);

ChoiMatrix choi(const QuantumChannel& ch);
double choi_distance(const QuantumChannel& lhs, const QuantumChannel& rhs);

QuantumChannel identity_channel(int d);
QuantumChannel identity_channel(const Dims& dims);

/// Random CPTP map: Kraus blocks of the first in_dim columns of a Haar
/// unitary on num_kraus*out_dim. Requires num_kraus*out_dim >= in_dim.
QuantumChannel random_channel(int in_dim, int out_dim, int num_kraus, std::uint64_t seed);

/// rho -> Tr(rho) I/out_dim.
QuantumChannel uniform_noise_channel(const Dims& in_dims, const Dims& out_dims);

/// rho -> (1-x) rho + x I/d, realized as a Weyl twirl.
QuantumChannel depolarizing_channel(int d, double x);

/// Measures the (d*d)-dimensional register in the computational basis and
/// applies weyl_operator(d, a, b) for outcome a*d+b to the qudit; the
/// register is discarded. in_dims {d*d, d}, out_dims {d}.
QuantumChannel controlled_weyl_channel(int d);

/// Bell measurement on two qudits, result written to a d*d classical register.
QuantumChannel bell_measurement_channel(int d);

/// Alice's classical d*d register selects a Weyl unitary on Bob's qudit,
/// which then passes through D_x. in_dims {d*d, d}, out_dims {d}.
QuantumChannel dense_coding_mac(int d, double x);

/// Bell measurement with weight 1-q, uniform register noise with weight q.
QuantumChannel noisy_bm_channel(int d, double q);

/// Weight 1-q: flag |0>, payload = Bell-measurement register.
/// Weight q: flag |1>, payload = both input qudits untouched.
/// in_dims {d, d}, out_dims {2, d*d}.
QuantumChannel flagged_bm_identity_channel(int d, double q);

/// Two-sender, two-receiver network. in_dims {d*d, d, d*d, d} for
/// (Alice register a, Alice qudit, Bob register b, Bob qudit); out_dims {d, d}.
/// Alice's qudit gets U_b then D_x and exits first; Bob's gets U_a then D_x.
QuantumChannel butterfly_channel(int d, double x);

}  // namespace ebnet
