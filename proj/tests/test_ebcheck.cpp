#include <doctest.h>

#include <cmath>

#include "ebnet/ebcheck.hpp"
#include "oracles.hpp"

using namespace ebnet;

namespace {

/// Closed form of the smallest PT eigenvalue of the isotropic Choi state.
double isotropic_pt_min(int d, double x) { return -(1.0 - x) / d + x / (double(d) * d); }

}  // namespace

TEST_CASE("rank-one Kraus witness") {
  for (int d : {2, 3}) {
    CHECK(kraus_rank_one_witness(bell_measurement_channel(d)));
    CHECK_FALSE(kraus_rank_one_witness(identity_channel(d)));
  }
  // The Weyl Kraus set of D_x is full rank, so the witness is inconclusive even where D_x is EB.
  CHECK_FALSE(kraus_rank_one_witness(depolarizing_channel(2, 0.9)));
  CHECK(kraus_rank_one_witness(uniform_noise_channel({2}, {3})));
}

TEST_CASE("partial transpose of the normalized Choi state") {
  // Identity channel: the PT of |Phi+><Phi+| (= J/2) has smallest eigenvalue -1/2.
  CHECK(choi_partial_transpose_min_eig(identity_channel(2)) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(oracle::min_eigenvalue_general(oracle::partial_transpose_first(oracle::phi_plus(2), 2, 2)) ==
        doctest::Approx(-0.5).epsilon(1e-12));

  for (int d : {2, 3, 4}) {
    CHECK(std::abs(choi_partial_transpose_min_eig(depolarizing_channel(d, eb_threshold_exact(d)))) <= 1e-9);
    CHECK(choi_partial_transpose_min_eig(bell_measurement_channel(d)) >= -1e-9);
  }
  CHECK(std::abs(choi_partial_transpose_min_eig(depolarizing_channel(2, 2.0 / 3.0))) <= 1e-9);

  SUBCASE("matches the entrywise partial transpose and the isotropic closed form") {
    for (int d : {2, 3, 4})
      for (int k = 0; k <= 10; ++k) {
        const double x = 0.1 * k;
        const double got = choi_partial_transpose_min_eig(depolarizing_channel(d, x));
        const double general =
            oracle::min_eigenvalue_general(oracle::partial_transpose_first(oracle::isotropic(d, x), d, d));
        CHECK(got == doctest::Approx(general).epsilon(1e-9));
        CHECK(got == doctest::Approx(std::min(isotropic_pt_min(d, x), (1.0 - x) / d + x / (double(d) * d))).epsilon(1e-9));
      }
  }
}

TEST_CASE("EB verdict") {
  const EbVerdict bm = eb_verdict(bell_measurement_channel(2));
  CHECK(bm.is_eb_by_kraus);
  CHECK(bm.is_ppt);
  const EbVerdict id = eb_verdict(identity_channel(3));
  CHECK_FALSE(id.is_eb_by_kraus);
  CHECK_FALSE(id.is_ppt);
  CHECK(id.min_pt_eigenvalue < 0.0);
}

TEST_CASE("EB threshold bisection") {
  CHECK(eb_threshold_scan(2) == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  CHECK(eb_threshold_scan(3) == doctest::Approx(3.0 / 4.0).epsilon(1e-6));
  CHECK(eb_threshold_scan(4) == doctest::Approx(4.0 / 5.0).epsilon(1e-6));
  for (int d : {2, 3, 4}) CHECK(std::abs(eb_threshold_scan(d) - eb_threshold_exact(d)) <= 1e-6);
  CHECK_THROWS_AS(eb_threshold_scan(1), std::invalid_argument);
}

TEST_CASE("property: PPT exactly on the EB side of the threshold") {
  for (int d : {2, 3, 4}) {
    const double thr = eb_threshold_exact(d);
    for (int k = 0; k <= 100; ++k) {
      const double x = 0.01 * k;
      const double m = choi_partial_transpose_min_eig(depolarizing_channel(d, x));
      if (x >= thr) CHECK(m >= -1e-9);
      if (x < thr - 0.01) CHECK(m < -1e-6);
    }
  }
}

TEST_CASE("property: EB implies PPT; dense-coding MAC is PPT in the EB regime") {
  for (int d : {2, 3}) {
    for (double x : {eb_threshold_exact(d), 0.9, 1.0}) {
      const EbVerdict v = eb_verdict(dense_coding_mac(d, x));
      CHECK(v.is_ppt);
      if (v.is_eb_by_kraus) CHECK(v.is_ppt);
    }
    for (const auto& ch : {bell_measurement_channel(d), noisy_bm_channel(d, 0.4), uniform_noise_channel({d}, {d})}) {
      const EbVerdict v = eb_verdict(ch);
      CHECK(v.is_eb_by_kraus);
      CHECK(v.is_ppt);
    }
  }
}
