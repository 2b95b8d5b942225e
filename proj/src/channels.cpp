#include "ebnet/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "factor_ops.hpp"

namespace ebnet {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
}

void check_dimension(int d) {
  if (d < 2) throw std::invalid_argument("qudit dimension must be >= 2, got " + std::to_string(d));
}

Matrix kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

Matrix basis_bra(int n, int k) {
  Matrix bra = Matrix::Zero(1, n);
  bra(0, k) = 1.0;
  return bra;
}

Matrix basis_ket(int n, int k) {
  Matrix ket = Matrix::Zero(n, 1);
  ket(k, 0) = 1.0;
  return ket;
}

Vector bell_ket(int d, int a, int b) {
  const Matrix u = weyl_operator(d, a, b).matrix();
  Vector ket(d * d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) ket(i * d + j) = u(i, j) * norm;
  return ket;
}

}  // namespace

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus, Dims in_dims, Dims out_dims)
    : kraus_(std::move(kraus)), in_dims_(std::move(in_dims)), out_dims_(std::move(out_dims)) {
  if (kraus_.empty()) throw std::invalid_argument("channel needs at least one Kraus operator");
  if (in_dims_.empty() || out_dims_.empty()) throw std::invalid_argument("channel needs input and output factors");
  in_dim_ = total_dim(in_dims_);
  out_dim_ = total_dim(out_dims_);
  for (const Matrix& k : kraus_)
    if (k.rows() != out_dim_ || k.cols() != in_dim_)
      throw std::invalid_argument("Kraus operator shape " + std::to_string(k.rows()) + "x" + std::to_string(k.cols()) +
                                  " does not match " + std::to_string(out_dim_) + "x" + std::to_string(in_dim_));
  const double tp = trace_preservation_error();
  if (tp > kInvariantTol) throw std::domain_error("Kraus family is not trace preserving (error " + std::to_string(tp) + ")");
}

double QuantumChannel::trace_preservation_error() const {
  Matrix acc = Matrix::Zero(in_dim_, in_dim_);
  for (const Matrix& k : kraus_) acc.noalias() += k.adjoint() * k;
  return (acc - Matrix::Identity(in_dim_, in_dim_)).norm();
}

Matrix ChoiMatrix::input_marginal() const {
  Matrix m = Matrix::Zero(in_dim, in_dim);
  for (int i = 0; i < in_dim; ++i)
    for (int j = 0; j < in_dim; ++j) m(i, j) = matrix.block(i * out_dim, j * out_dim, out_dim, out_dim).trace();
  return m;
}

bool ChoiMatrix::is_valid(double tol) const {
  if ((matrix - matrix.adjoint()).norm() > tol) return false;
  if (hermitian_eigenvalues(matrix).minCoeff() < -tol) return false;
  return (input_marginal() - Matrix::Identity(in_dim, in_dim)).norm() <= tol;
}

QuantumState apply(const QuantumChannel& ch, const QuantumState& s) {
  if (s.dim() != ch.in_dim())
    throw std::invalid_argument("state dimension " + std::to_string(s.dim()) + " does not match channel input " +
                                std::to_string(ch.in_dim()));
  Matrix out = Matrix::Zero(ch.out_dim(), ch.out_dim());
  for (const Matrix& k : ch.kraus()) out.noalias() += k * s.matrix() * k.adjoint();
  return QuantumState::unchecked(std::move(out), ch.out_dims());
}

QuantumState apply_on_factors(const QuantumChannel& ch, const QuantumState& s, std::span<const int> factors) {
  detail::check_factor_selection(factors, s.num_factors());
  Dims selected;
  for (int f : factors) selected.push_back(s.dims()[f]);
  if (selected != ch.in_dims())
    throw std::invalid_argument("selected factor dimensions do not match the channel's input factors");
  auto acted = detail::apply_on_selected(s.matrix(), s.dims(), ch.kraus(), factors, ch.out_dims());
  return QuantumState::unchecked(std::move(acted.matrix), std::move(acted.dims));
}

QuantumState apply_on_factors(const QuantumChannel& ch, const QuantumState& s, std::initializer_list<int> factors) {
  return apply_on_factors(ch, s, std::span<const int>(factors.begin(), factors.size()));
}

QuantumChannel compose_serial(const QuantumChannel& second, const QuantumChannel& first) {
  if (first.out_dim() != second.in_dim())
    throw std::invalid_argument("serial composition: output dimension " + std::to_string(first.out_dim()) +
                                " does not feed input dimension " + std::to_string(second.in_dim()));
  std::vector<Matrix> kraus;
  kraus.reserve(first.num_kraus() * second.num_kraus());
  for (const Matrix& b : second.kraus())
    for (const Matrix& a : first.kraus()) kraus.push_back(b * a);
  return QuantumChannel(std::move(kraus), first.in_dims(), second.out_dims());
}

QuantumChannel compose_parallel(const QuantumChannel& lhs, const QuantumChannel& rhs) {
  std::vector<Matrix> kraus;
  kraus.reserve(lhs.num_kraus() * rhs.num_kraus());
  for (const Matrix& a : lhs.kraus())
    for (const Matrix& b : rhs.kraus()) kraus.push_back(kron(a, b));
  Dims in = lhs.in_dims();
  in.insert(in.end(), rhs.in_dims().begin(), rhs.in_dims().end());
  Dims out = lhs.out_dims();
  out.insert(out.end(), rhs.out_dims().begin(), rhs.out_dims().end());
  return QuantumChannel(std::move(kraus), std::move(in), std::move(out));
}

QuantumChannel mixture(std::span<const double> weights, std::span<const QuantumChannel> channels) {
  if (weights.size() != channels.size() || channels.empty())
    throw std::invalid_argument("mixture needs one weight per channel");
  double total = 0.0;
  for (double w : weights) total += w;
  if (std::abs(total - 1.0) > kInvariantTol) throw std::invalid_argument("mixture weights must sum to 1");
  std::vector<Matrix> kraus;
  for (std::size_t c = 0; c < channels.size(); ++c) {
    if (weights[c] < 0.0) throw std::invalid_argument("mixture weights must be non-negative");
    if (channels[c].in_dims() != channels[0].in_dims() || channels[c].out_dims() != channels[0].out_dims())
      throw std::invalid_argument("mixture members must share input and output factors");
    if (weights[c] == 0.0) continue;
    const double amp = std::sqrt(weights[c]);
    for (const Matrix& k : channels[c].kraus()) kraus.push_back(amp * k);
  }
  return QuantumChannel(std::move(kraus), channels[0].in_dims(), channels[0].out_dims());
}

ChoiMatrix choi(const QuantumChannel& ch) {
  const int n_in = ch.in_dim();
  const int n_out = ch.out_dim();
  const int n = n_in * n_out;
  Matrix j = Matrix::Zero(n, n);
  // J = sum_k |A_k>><<A_k| with |A>> = sum_i |i> (x) A|i>.
  Vector v(n);
  for (const Matrix& k : ch.kraus()) {
    for (int i = 0; i < n_in; ++i) v.segment(i * n_out, n_out) = k.col(i);
    j.noalias() += v * v.adjoint();
  }
  return {std::move(j), n_in, n_out};
}

double choi_distance(const QuantumChannel& lhs, const QuantumChannel& rhs) {
  if (lhs.in_dim() != rhs.in_dim() || lhs.out_dim() != rhs.out_dim())
    throw std::invalid_argument("Choi comparison needs equal input and output dimensions");
  return (choi(lhs).matrix - choi(rhs).matrix).norm();
}

QuantumChannel identity_channel(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  return QuantumChannel({Matrix::Identity(d, d)}, {d}, {d});
}

QuantumChannel identity_channel(const Dims& dims) {
  const int n = total_dim(dims);
  return QuantumChannel({Matrix::Identity(n, n)}, dims, dims);
}

QuantumChannel random_channel(int in_dim, int out_dim, int num_kraus, std::uint64_t seed) {
  if (in_dim < 1 || out_dim < 1 || num_kraus < 1) throw std::invalid_argument("random channel sizes must be positive");
  if (num_kraus * out_dim < in_dim) throw std::invalid_argument("random channel needs num_kraus*out_dim >= in_dim");
  const Matrix iso = random_unitary(num_kraus * out_dim, seed).matrix().leftCols(in_dim);
  std::vector<Matrix> kraus;
  for (int k = 0; k < num_kraus; ++k) kraus.push_back(iso.middleRows(k * out_dim, out_dim));
  return QuantumChannel(std::move(kraus), {in_dim}, {out_dim});
}

QuantumChannel uniform_noise_channel(const Dims& in_dims, const Dims& out_dims) {
  const int n_in = total_dim(in_dims);
  const int n_out = total_dim(out_dims);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n_out));
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(n_in) * n_out);
  for (int m = 0; m < n_out; ++m)
    for (int n = 0; n < n_in; ++n) kraus.push_back(amp * basis_ket(n_out, m) * basis_bra(n_in, n));
  return QuantumChannel(std::move(kraus), in_dims, out_dims);
}

QuantumChannel depolarizing_channel(int d, double x) {
  check_probability(x, "depolarizing parameter x");
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  const double d2 = static_cast<double>(d) * d;
  std::vector<Matrix> kraus;
  kraus.push_back(std::sqrt(1.0 - x + x / d2) * Matrix::Identity(d, d));
  if (x > 0.0) {
    const double amp = std::sqrt(x / d2);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        if (a != 0 || b != 0) kraus.push_back(amp * weyl_operator(d, a, b).matrix());
  }
  return QuantumChannel(std::move(kraus), {d}, {d});
}

QuantumChannel controlled_weyl_channel(int d) {
  check_dimension(d);
  std::vector<Matrix> kraus;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) kraus.push_back(kron(basis_bra(d * d, bell_index(d, a, b)), weyl_operator(d, a, b).matrix()));
  return QuantumChannel(std::move(kraus), {d * d, d}, {d});
}

QuantumChannel bell_measurement_channel(int d) {
  check_dimension(d);
  const int n = d * d;
  std::vector<Matrix> kraus;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const int i = bell_index(d, a, b);
      kraus.push_back(basis_ket(n, i) * bell_ket(d, a, b).adjoint());
    }
  return QuantumChannel(std::move(kraus), {d, d}, {n});
}

QuantumChannel dense_coding_mac(int d, double x) {
  check_probability(x, "depolarizing parameter x");
  return compose_serial(depolarizing_channel(d, x), controlled_weyl_channel(d));
}

QuantumChannel noisy_bm_channel(int d, double q) {
  check_probability(q, "noise probability q");
  check_dimension(d);
  const QuantumChannel parts[] = {bell_measurement_channel(d), uniform_noise_channel({d, d}, {d * d})};
  const double weights[] = {1.0 - q, q};
  return mixture(weights, parts);
}

QuantumChannel flagged_bm_identity_channel(int d, double q) {
  check_probability(q, "noise probability q");
  check_dimension(d);
  const int n = d * d;
  std::vector<Matrix> kraus;
  if (q < 1.0) {
    const double amp = std::sqrt(1.0 - q);
    const QuantumChannel bm = bell_measurement_channel(d);
    for (const Matrix& k : bm.kraus()) kraus.push_back(amp * kron(basis_ket(2, 0), k));
  }
  if (q > 0.0) kraus.push_back(std::sqrt(q) * kron(basis_ket(2, 1), Matrix::Identity(n, n)));
  return QuantumChannel(std::move(kraus), {d, d}, {2, n});
}

QuantumChannel butterfly_channel(int d, double x) {
  check_probability(x, "depolarizing parameter x");
  check_dimension(d);
  const int n = d * d;
  std::vector<Matrix> controlled;
  controlled.reserve(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Matrix u_a = weyl_operator(d, a / d, a % d).matrix();
      const Matrix u_b = weyl_operator(d, b / d, b % d).matrix();
      // Cross control: register b acts on Alice's qudit, register a on Bob's.
      controlled.push_back(kron(kron(basis_bra(n, a), u_b), kron(basis_bra(n, b), u_a)));
    }
  const QuantumChannel stage(std::move(controlled), {n, d, n, d}, {d, d});
  const QuantumChannel noise = compose_parallel(depolarizing_channel(d, x), depolarizing_channel(d, x));
  return compose_serial(noise, stage);
}

}  // namespace ebnet
