#include <doctest.h>

#include <cmath>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "ebnet/channels.hpp"
#include "oracles.hpp"

using namespace ebnet;

namespace {

double dist(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

Matrix kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

Matrix proj(int n, int k) {
  Matrix m = Matrix::Zero(n, n);
  m(k, k) = 1.0;
  return m;
}

/// (U_(a,b) (x) I)|Phi+><Phi+|(...)^dagger from the explicit shift/clock matrices.
Matrix bell_oracle(int d, int k) {
  const Matrix u = kron(oracle::weyl(d, k / d, k % d), Matrix::Identity(d, d));
  return u * oracle::phi_plus(d) * u.adjoint();
}

/// Depolarizing map on the first factor of a two-factor operator, via partial trace.
Matrix depolarize_first(const Matrix& rho, int d, int other, double x) {
  Matrix reduced = Matrix::Zero(other, other);
  for (int i = 0; i < d; ++i) reduced += rho.block(i * other, i * other, other, other);
  return (1.0 - x) * rho + x * kron(Matrix::Identity(d, d) / static_cast<double>(d), reduced);
}

Matrix off_diagonal(const Matrix& m) {
  Matrix o = m;
  o.diagonal().setZero();
  return o;
}

}  // namespace

TEST_CASE("channel construction validates Kraus sets") {
  Matrix half = Matrix::Identity(2, 2) * std::sqrt(0.5);
  CHECK_NOTHROW(QuantumChannel({half, half}, {2}, {2}));
  CHECK_THROWS_AS(QuantumChannel({half}, {2}, {2}), std::domain_error);
  CHECK_THROWS_AS(QuantumChannel({half, half}, {3}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(QuantumChannel({}, {2}, {2}), std::invalid_argument);
}

TEST_CASE("apply") {
  const QuantumState rho = random_mixed_state(3, 3);
  CHECK(dist(apply(identity_channel(3), rho).matrix(), rho.matrix()) < 1e-15);
  CHECK(dist(apply(depolarizing_channel(3, 1.0), rho).matrix(), Matrix::Identity(3, 3) / 3.0) < 1e-12);
  const Matrix expected = Eigen::Vector2cd(0.75, 0.25).asDiagonal();
  CHECK(dist(apply(depolarizing_channel(2, 0.5), computational_basis_state(2, 0)).matrix(), expected) < 1e-12);
  CHECK_THROWS_AS(apply(identity_channel(2), rho), std::invalid_argument);

  SUBCASE("depolarizing agrees with the mixing formula") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const int d = 2 + seed % 3;
      const double x = 0.05 * seed;
      const QuantumState s = random_mixed_state(d, seed);
      CHECK(dist(apply(depolarizing_channel(d, x), s).matrix(), oracle::depolarize(s.matrix(), x)) < 1e-12);
    }
  }
}

TEST_CASE("apply_on_factors") {
  const QuantumState phi = maximally_entangled_state(2);
  CHECK(dist(apply_on_factors(identity_channel(2), phi, {0}).matrix(), phi.matrix()) < 1e-15);

  for (int d : {2, 3, 4})
    for (double x : {0.0, 0.3, 0.8, 1.0}) {
      const QuantumState out = apply_on_factors(depolarizing_channel(d, x), maximally_entangled_state(d), {0});
      CHECK(dist(out.matrix(), oracle::isotropic(d, x)) < 1e-12);
    }

  SUBCASE("commutes with tracing an untouched factor") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const QuantumState s = random_mixed_state(12, seed).with_dims({2, 3, 2});
      const QuantumChannel ch = random_channel(3, 3, 2, seed + 40);
      const QuantumState first = partial_trace(apply_on_factors(ch, s, {1}), {1, 2});
      const QuantumState second = apply_on_factors(ch, partial_trace(s, {1, 2}), {0});
      CHECK(dist(first.matrix(), second.matrix()) < 1e-12);
    }
  }

  SUBCASE("dimension-changing map lands in the slot of the lowest selected factor") {
    // Bell measurement of factors 0 and 2 of |Psi^k> (x) |0> reordered as [A, C, B].
    const int d = 2;
    for (int k = 0; k < d * d; ++k) {
      const QuantumState bell = generalized_bell_state(d, k / d, k % d);
      const QuantumState s = tensor(bell, computational_basis_state(3, 1));  // [A, B, C]
      const int order[] = {0, 2, 1};
      const QuantumState reordered = permute_factors(s, order);  // [A, C, B]
      const QuantumState out = apply_on_factors(bell_measurement_channel(d), reordered, {0, 2});
      CHECK(out.dims() == Dims{4, 3});
      CHECK(dist(out.matrix(), kron(proj(4, k), proj(3, 1))) < 1e-12);
    }
  }

  CHECK_THROWS_AS(apply_on_factors(identity_channel(3), phi, {0}), std::invalid_argument);
  CHECK_THROWS_AS(apply_on_factors(compose_parallel(identity_channel(2), identity_channel(2)), phi, {0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_on_factors(identity_channel(2), phi, {2}), std::invalid_argument);
}

TEST_CASE("compose_serial") {
  for (int d : {2, 3}) {
    const QuantumChannel a = random_channel(d, d, 3, 17);
    CHECK(choi_distance(compose_serial(identity_channel(d), a), a) < 1e-12);
    CHECK(compose_serial(random_channel(d, d, 2, 5), a).num_kraus() == 6);
    for (double x : {0.0, 0.2, 0.5})
      for (double y : {0.1, 0.6, 1.0}) {
        const QuantumChannel both = compose_serial(depolarizing_channel(d, x), depolarizing_channel(d, y));
        CHECK(choi_distance(both, depolarizing_channel(d, x + y - x * y)) < 1e-12);
      }
  }
  CHECK_THROWS_AS(compose_serial(identity_channel(2), identity_channel(3)), std::invalid_argument);
}

TEST_CASE("compose_parallel") {
  const QuantumChannel both = compose_parallel(identity_channel(2), identity_channel(2));
  CHECK(both.in_dims() == Dims{2, 2});
  CHECK(dist(choi(both).matrix, choi(identity_channel(4)).matrix) < 1e-15);
  const QuantumChannel mixed = compose_parallel(random_channel(2, 3, 2, 1), random_channel(3, 2, 3, 2));
  CHECK(mixed.trace_preservation_error() < 1e-12);
  CHECK(mixed.out_dims() == Dims{3, 2});
  CHECK(mixed.num_kraus() == 6);
}

TEST_CASE("compose_parallel reproduces the teleportation pre-correction state") {
  for (int d : {2, 3}) {
    const QuantumState input = random_pure_state(d, 5);
    const QuantumState s = tensor(input, maximally_entangled_state(d));  // A, B, B'
    const QuantumChannel stage = compose_parallel(bell_measurement_channel(d), identity_channel(d));
    const QuantumState out = apply(stage, s);
    CHECK(out.dims() == Dims{d * d, d});

    // sum_k |k><k| (x) (<Psi_k| (x) I) rho (|Psi_k> (x) I), contracted by hand.
    const int n = d * d;
    Matrix expected = Matrix::Zero(n * d, n * d);
    for (int k = 0; k < n; ++k) {
      const Matrix bell = bell_oracle(d, k);
      Matrix block = Matrix::Zero(d, d);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (std::abs(bell(j, i)) == 0.0) continue;
          block += bell(j, i) * s.matrix().block(i * d, j * d, d, d);
        }
      expected.block(k * d, k * d, d, d) = block;
    }
    CHECK(dist(out.matrix(), expected) < 1e-12);
  }
}

TEST_CASE("mixture") {
  const QuantumChannel parts[] = {identity_channel(2), depolarizing_channel(2, 1.0)};
  const double weights[] = {0.6, 0.4};
  CHECK(choi_distance(mixture(weights, parts), depolarizing_channel(2, 0.4)) < 1e-12);
  const double bad[] = {0.6, 0.5};
  CHECK_THROWS_AS(mixture(bad, parts), std::invalid_argument);
}

TEST_CASE("choi") {
  for (int d : {2, 3}) {
    const ChoiMatrix j = choi(identity_channel(d));
    CHECK(dist(j.matrix, d * oracle::phi_plus(d)) < 1e-12);
    CHECK(dist(j.input_marginal(), Matrix::Identity(d, d)) < 1e-12);
  }
  SUBCASE("agrees with entry-wise construction") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const QuantumChannel ch = random_channel(2, 3, 2, seed);
      const Matrix expected = oracle::choi_of(2, 3, [&](const Matrix& e) {
        Matrix out = Matrix::Zero(3, 3);
        for (const Matrix& k : ch.kraus()) out += k * e * k.adjoint();
        return out;
      });
      CHECK(dist(choi(ch).matrix, expected) < 1e-12);
    }
  }
  SUBCASE("depolarizing Choi is the scaled isotropic state") {
    for (int d : {2, 3})
      for (double x : {0.0, 0.4, 1.0}) CHECK(dist(choi(depolarizing_channel(d, x)).matrix, d * oracle::isotropic(d, x)) < 1e-12);
  }
}

TEST_CASE("bell_measurement_channel") {
  for (int d : {2, 3}) {
    const QuantumChannel bm = bell_measurement_channel(d);
    CHECK(bm.out_dims() == Dims{d * d});
    for (int k = 0; k < d * d; ++k) {
      const QuantumState in(bell_oracle(d, k), {d, d});
      CHECK(dist(apply(bm, in).matrix(), proj(d * d, k)) < 1e-12);
    }
    CHECK(dist(apply(bm, maximally_mixed_state({d, d})).matrix(), Matrix::Identity(d * d, d * d) / double(d * d)) <
          1e-12);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const QuantumState out = apply(bm, random_mixed_state(d * d, seed).with_dims({d, d}));
      CHECK(off_diagonal(out.matrix()).norm() <= 1e-12);
    }
  }
}

TEST_CASE("depolarizing_channel") {
  for (int d : {2, 3}) {
    CHECK(choi_distance(depolarizing_channel(d, 0.0), identity_channel(d)) < 1e-12);
    CHECK(choi_distance(depolarizing_channel(d, 1.0), uniform_noise_channel({d}, {d})) < 1e-12);
  }
  Eigen::Vector2cd plus(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  const QuantumState p = QuantumState::from_ket(plus, {2});
  const Matrix expected = 0.5 * p.matrix() + 0.25 * Matrix::Identity(2, 2);
  CHECK(dist(apply(depolarizing_channel(2, 0.5), p).matrix(), expected) < 1e-12);
  CHECK_THROWS_AS(depolarizing_channel(2, 1.1), std::invalid_argument);
  CHECK_THROWS_AS(depolarizing_channel(2, -0.1), std::invalid_argument);

  SUBCASE("covariance under random unitaries") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const int d = 2 + seed % 3;
      const QuantumChannel ch = depolarizing_channel(d, 0.05 * seed);
      const QuantumState rho = random_mixed_state(d, seed);
      const UnitaryOperator u = random_unitary(d, seed + 7);
      const Matrix lhs = apply(ch, apply_unitary(rho, u, {0})).matrix();
      const Matrix rhs = apply_unitary(apply(ch, rho), u, {0}).matrix();
      CHECK(dist(lhs, rhs) <= 1e-9);
    }
  }
}

TEST_CASE("dense_coding_mac") {
  for (int d : {2, 3}) {
    const QuantumChannel mac = dense_coding_mac(d, 0.0);
    CHECK(mac.in_dims() == Dims{d * d, d});
    CHECK(mac.out_dims() == Dims{d});
    const QuantumState bob = random_mixed_state(d, 4);
    CHECK(dist(apply(mac, tensor(computational_basis_state(d * d, 0), bob)).matrix(), bob.matrix()) < 1e-12);

    for (double x : {0.0, 0.3, 0.9}) {
      const QuantumChannel noisy = dense_coding_mac(d, x);
      for (int i = 0; i < d * d; ++i) {
        // Alice's register i, Bob sends half of |Phi+>, the other half stays aside.
        const QuantumState s = tensor(computational_basis_state(d * d, i), maximally_entangled_state(d));
        const QuantumState out = apply_on_factors(noisy, s, {0, 1});
        CHECK(dist(out.matrix(), depolarize_first(bell_oracle(d, i), d, d, x)) < 1e-12);
      }
    }

    const QuantumState any = tensor(random_mixed_state(d * d, 9), random_mixed_state(d, 10));
    CHECK(dist(apply(dense_coding_mac(d, 1.0), any).matrix(), Matrix::Identity(d, d) / double(d)) < 1e-12);
  }
}

TEST_CASE("noisy_bm_channel") {
  for (int d : {2, 3}) {
    CHECK(choi_distance(noisy_bm_channel(d, 0.0), bell_measurement_channel(d)) < 1e-12);
    CHECK(choi_distance(noisy_bm_channel(d, 1.0), uniform_noise_channel({d, d}, {d * d})) < 1e-12);
    const int n = d * d;
    for (int k = 0; k < n; ++k) {
      const QuantumState out = apply(noisy_bm_channel(d, 0.3), QuantumState(bell_oracle(d, k), {d, d}));
      CHECK(dist(out.matrix(), 0.7 * proj(n, k) + 0.3 * Matrix::Identity(n, n) / double(n)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(noisy_bm_channel(2, 2.0), std::invalid_argument);
}

TEST_CASE("flagged_bm_identity_channel") {
  for (int d : {2, 3}) {
    const int n = d * d;
    const QuantumState in = random_mixed_state(n, 21).with_dims({d, d});

    const QuantumState measured = apply(flagged_bm_identity_channel(d, 0.0), in);
    CHECK(measured.dims() == Dims{2, n});
    CHECK(dist(measured.matrix(), kron(proj(2, 0), apply(bell_measurement_channel(d), in).matrix())) < 1e-12);

    const QuantumState passed = apply(flagged_bm_identity_channel(d, 1.0), in);
    CHECK(dist(passed.matrix(), kron(proj(2, 1), in.matrix())) < 1e-12);

    for (double q : {0.0, 0.25, 0.5, 1.0}) {
      const QuantumState out = apply(flagged_bm_identity_channel(d, q), in);
      const Matrix flag = partial_trace(out, {0}).matrix();
      CHECK(dist(flag, Eigen::Vector2cd(1.0 - q, q).asDiagonal().toDenseMatrix()) < 1e-12);
    }
  }
}

TEST_CASE("butterfly_channel") {
  const int d = 2;
  const int n = d * d;
  const QuantumChannel ch = butterfly_channel(d, 0.0);
  CHECK(ch.in_dims() == Dims{n, d, n, d});
  CHECK(ch.out_dims() == Dims{d, d});

  const QuantumState alice = random_mixed_state(d, 31);
  const QuantumState bob = random_mixed_state(d, 32);
  const QuantumState parts[] = {computational_basis_state(n, 0), alice, computational_basis_state(n, 0), bob};
  const QuantumState in = tensor(parts);
  CHECK(dist(apply(ch, in).matrix(), tensor(alice, bob).matrix()) < 1e-12);
  CHECK(dist(apply(butterfly_channel(d, 1.0), in).matrix(), Matrix::Identity(4, 4) / 4.0) < 1e-12);

  SUBCASE("Bob's output pair is the depolarized encoded Bell state") {
    for (double x : {0.0, 0.3, 2.0 / 3.0}) {
      const QuantumChannel bf = butterfly_channel(d, x);
      for (int a = 0; a < n; ++a) {
        // [a, A, b=0, B, B'] with B B' in |Phi+>.
        const QuantumState s_parts[] = {computational_basis_state(n, a), computational_basis_state(d, 0),
                                        computational_basis_state(n, 0), maximally_entangled_state(d)};
        const QuantumState s = tensor(s_parts);
        const QuantumState out = apply_on_factors(bf, s, {0, 1, 2, 3});  // [A~, B~, B']
        const QuantumState pair = partial_trace(out, {1, 2});
        CHECK(dist(pair.matrix(), depolarize_first(bell_oracle(d, a), d, d, x)) < 1e-12);
      }
    }
  }
  CHECK(ch.trace_preservation_error() < 1e-9);
}

TEST_CASE("identity_channel") {
  for (int d : {2, 5}) {
    const QuantumChannel id = identity_channel(d);
    CHECK(dist(choi(id).matrix, d * oracle::phi_plus(d)) < 1e-12);
    CHECK(choi_distance(compose_serial(id, id), id) < 1e-15);
    const QuantumState rho = random_mixed_state(d, 2);
    CHECK(dist(apply(id, rho).matrix(), rho.matrix()) == 0.0);
  }
}

TEST_CASE("property: constructors are trace preserving with valid Choi matrices") {
  for (int d : {2, 3, 4})
    for (double p : {0.0, 0.1, 0.5, double(d) / (d + 1), 0.9, 1.0}) {
      std::vector<QuantumChannel> family{depolarizing_channel(d, p), dense_coding_mac(d, p), noisy_bm_channel(d, p),
                                         flagged_bm_identity_channel(d, p), bell_measurement_channel(d),
                                         controlled_weyl_channel(d)};
      for (const auto& ch : family) {
        CHECK(ch.trace_preservation_error() <= 1e-9);
        CHECK(choi(ch).is_valid());
      }
    }
  CHECK(butterfly_channel(2, 0.4).trace_preservation_error() <= 1e-9);
}

TEST_CASE("property: composition homomorphisms on random channels") {
  std::uint64_t seed = 300;
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + trial % 3;
    const QuantumChannel a = random_channel(d, d, 1 + trial % 3, ++seed);
    const QuantumChannel b = random_channel(d, 2, 2, ++seed);
    const QuantumState rho = random_mixed_state(d, ++seed);
    const QuantumState sigma = random_mixed_state(d, ++seed);
    CHECK(dist(apply(compose_serial(b, a), rho).matrix(), apply(b, apply(a, rho)).matrix()) <= 1e-12);
    CHECK(dist(apply(compose_parallel(a, b), tensor(rho, sigma)).matrix(),
               tensor(apply(a, rho), apply(b, sigma)).matrix()) <= 1e-12);
    CHECK(choi(a).is_valid());
    CHECK(choi(b).is_valid());
  }
}
