#include "ebnet/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <sstream>
#include <stdexcept>

#include "ebnet/capacity.hpp"
#include "ebnet/channels.hpp"
#include "ebnet/ebcheck.hpp"
#include "ebnet/protocols.hpp"

namespace ebnet {

namespace {

constexpr double kTol = 1e-9;

/// Accumulates failures for one check; the first few are kept for the report.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++cases_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ << (failures_ > 1 ? "; " : "") << what;
  }

  CheckResult result(std::string name) const {
    std::ostringstream detail;
    detail << cases_ << " cases";
    if (failures_ > 0) detail << ", " << failures_ << " failed: " << notes_.str();
    return {std::move(name), failures_ == 0 && cases_ > 0, detail.str(), 0.0};
  }

 private:
  int cases_ = 0;
  int failures_ = 0;
  std::ostringstream notes_;
};

std::string at(int d, double v, const char* label = "x") {
  std::ostringstream s;
  s << "d=" << d << " " << label << "=" << v;
  return s.str();
}

std::vector<double> capacity_grid(int d) { return {0.0, 0.25, eb_threshold_exact(d), 0.9, 1.0}; }

CheckResult check_teleportation(int d_max) {
  Tally t;
  for (int d = 2; d <= d_max; ++d)
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto r = teleportation_demo(d, seed);
      t.expect(r.passed(), at(d, static_cast<double>(seed), "seed"));
    }
  return t.result("teleportation fidelity 1 on every Bell outcome");
}

CheckResult check_dense_coding(int d_max) {
  Tally t;
  for (int d = 2; d <= d_max; ++d)
    for (double x : capacity_grid(d)) {
      const auto dense = dense_coding_superadditivity_demo(d, x);
      t.expect(dense.passed(), "chi != C_E at " + at(d, x));
      const auto solo = bob_solo_rate_demo(d, x);
      t.expect(solo.passed(), "Bob-solo rate at " + at(d, x));
      const double chi_c = solo.observables.at("chi_through_mac");
      t.expect(std::abs(chi_c - holevo_capacity_depolarizing(d, x)) <= kTol, "basis chi != C at " + at(d, x));
      if (x > 0.0 && x < 1.0) t.expect(dense.metric_value > chi_c, "no C_E > C witness at " + at(d, x));
    }
  return t.result("dense-coding superadditivity chi = C_E, basis chi = C");
}

CheckResult check_eb_threshold(int d_max) {
  Tally t;
  for (int d = 2; d <= d_max; ++d) {
    const double thr = eb_threshold_exact(d);
    t.expect(std::abs(eb_threshold_scan(d) - thr) <= 1e-6, "bisection off at d=" + std::to_string(d));
    for (int k = 0; k <= 100; ++k) {
      const double x = 0.01 * k;
      const double m = choi_partial_transpose_min_eig(depolarizing_channel(d, x));
      if (x >= thr) t.expect(m >= -kTol, "NPT above threshold at " + at(d, x));
      if (x < thr - 0.01) t.expect(m < -1e-6, "PPT below threshold at " + at(d, x));
    }
    t.expect(kraus_rank_one_witness(bell_measurement_channel(d)), "Bell measurement not rank one");
    t.expect(!kraus_rank_one_witness(identity_channel(d)), "identity reported rank one");
    for (double x : {thr, 0.5 * (thr + 1.0), 1.0})
      t.expect(eb_verdict(dense_coding_mac(d, x)).is_ppt, "dense-coding MAC NPT at " + at(d, x));
  }
  return t.result("EB threshold d/(d+1) and PPT grid");
}

CheckResult check_ratio(int d_max) {
  Tally t;
  for (int d = 2; d <= std::min(d_max, 3); ++d) {
    const double ratio = superadditivity_ratio(d, 1.0 - 1e-4);
    t.expect(std::abs(ratio - (d + 1)) <= 0.01 * (d + 1), "ratio limit off at d=" + std::to_string(d));
    double prev = 0.0;
    const double lo = eb_threshold_exact(d);
    const double hi = 1.0 - 1e-3;
    for (int k = 0; k <= 50; ++k) {
      const double x = lo + (hi - lo) * k / 50.0;
      const double r = superadditivity_ratio(d, x);
      if (k > 0) t.expect(r > prev, "ratio not increasing at " + at(d, x));
      prev = r;
    }
  }
  t.expect(std::abs(holevo_capacity_depolarizing(2, 2.0 / 3.0) - 0.081704165945510) <= 1e-9, "C spot value");
  t.expect(std::abs(ea_capacity_depolarizing(2, 2.0 / 3.0) - 0.207518749639422) <= 1e-9, "C_E spot value");
  t.expect(std::abs(superadditivity_ratio(2, 2.0 / 3.0) - 2.539879665105683) <= 1e-9, "ratio spot value");
  return t.result("C_E/C -> d+1 and monotone on the EB range");
}

CheckResult check_noisy_i(int d_max) {
  Tally t;
  for (int d = 2; d <= d_max; ++d)
    for (double q : {0.0, 0.3, 0.7, 1.0}) t.expect(noisy_extension_i_demo(d, q).passed(), at(d, q, "q"));
  return t.result("noisy extension (i) simulates D_q");
}

CheckResult check_noisy_ii(int d_max) {
  Tally t;
  for (int d = 2; d <= d_max; ++d)
    for (double q : {0.0, 0.5, 1.0})
      for (std::uint64_t seed = 1; seed <= 5; ++seed) t.expect(noisy_extension_ii_demo(d, q, seed).passed(), at(d, q, "q"));
  return t.result("noisy extension (ii) flag-decoded fidelity 1");
}

CheckResult check_butterfly() {
  Tally t;
  for (double x : {0.0, 2.0 / 3.0, 0.9, 1.0}) {
    const auto r = butterfly_demo(2, x);
    t.expect(r.passed(), "butterfly chi != C_E at " + at(2, x));
    if (x == 2.0 / 3.0) t.expect(r.observables.at("excess_over_bare_bound") >= 1e-3, "excess below 1e-3 bits");
    const auto region = butterfly_outer_region(2, x);
    if (x > 0.0 && x < 1.0)
      t.expect(!region.bare.contains(region.assisted_cross_transfer), "assisted point inside bare bound at " + at(2, x));
  }
  return t.result("butterfly cross rates C_E beyond the bare bound C");
}

CheckResult check_channel_algebra(int d_max) {
  Tally t;
  std::uint64_t seed = 1000;
  for (int d = 2; d <= d_max; ++d) {
    // Constructors: trace preservation and Choi validity.
    for (double p : {0.0, 0.3, eb_threshold_exact(d), 1.0}) {
      const QuantumChannel family[] = {depolarizing_channel(d, p), dense_coding_mac(d, p), noisy_bm_channel(d, p),
                                       flagged_bm_identity_channel(d, p)};
      for (const auto& ch : family) {
        t.expect(ch.trace_preservation_error() <= kTol, "TP at " + at(d, p));
        t.expect(choi(ch).is_valid(), "Choi invalid at " + at(d, p));
      }
    }
    // Bell basis orthonormality.
    double gram_dev = 0.0;
    for (int i = 0; i < d * d; ++i)
      for (int j = 0; j < d * d; ++j) {
        const double overlap =
            (generalized_bell_state(d, i / d, i % d).matrix() * generalized_bell_state(d, j / d, j % d).matrix())
                .trace()
                .real();
        gram_dev = std::max(gram_dev, std::abs(overlap - (i == j ? 1.0 : 0.0)));
      }
    t.expect(gram_dev <= kTol, "Bell basis not orthonormal at d=" + std::to_string(d));

    for (int trial = 0; trial < 25; ++trial) {
      const QuantumState rho = random_mixed_state(d, ++seed);
      const QuantumState sigma = random_mixed_state(d, ++seed);
      const QuantumChannel a = random_channel(d, d, 2, ++seed);
      const QuantumChannel b = random_channel(d, d, 3, ++seed);
      const double serial =
          (apply(compose_serial(b, a), rho).matrix() - apply(b, apply(a, rho)).matrix()).norm();
      t.expect(serial <= 1e-12, "serial composition mismatch");
      const double parallel = (apply(compose_parallel(a, b), tensor(rho, sigma)).matrix() -
                               tensor(apply(a, rho), apply(b, sigma)).matrix())
                                  .norm();
      t.expect(parallel <= 1e-12, "parallel composition mismatch");
      const double additivity = std::abs(von_neumann_entropy(tensor(rho, sigma)) - von_neumann_entropy(rho) -
                                         von_neumann_entropy(sigma));
      t.expect(additivity <= kTol, "entropy not additive");
      const double reduce = (partial_trace(tensor(rho, sigma), {0}).matrix() - rho.matrix()).norm();
      t.expect(reduce <= 1e-12, "partial trace of product");
      t.expect(choi(a).is_valid(), "random channel Choi invalid");
      const UnitaryOperator u = random_unitary(d, ++seed);
      const QuantumChannel depol = depolarizing_channel(d, 0.37);
      const double covariance = (apply(depol, apply_unitary(rho, u, {0})).matrix() -
                                 apply_unitary(apply(depol, rho), u, {0}).matrix())
                                    .norm();
      t.expect(covariance <= kTol, "depolarizing covariance");
    }
  }
  return t.result("channel algebra and state invariants");
}

CheckResult check_capacity_invariants(int d_max) {
  Tally t;
  for (int d = 2; d <= d_max; ++d) {
    for (int k = 0; k <= 20; ++k) {
      const double x = 0.05 * k;
      t.expect(ea_capacity_depolarizing(d, x) >= holevo_capacity_depolarizing(d, x), "C_E < C at " + at(d, x));
      t.expect(product_region_extreme_points(d, x).is_self_consistent(), "product region at " + at(d, x));
      const auto bf = butterfly_outer_region(d, x);
      t.expect(bf.bare.is_self_consistent() && bf.assisting.is_self_consistent(), "butterfly region at " + at(d, x));
    }
    t.expect(quantum_product_region(d).is_self_consistent(), "quantum region");
    for (int k = 1; k < 20; ++k) {
      const double p = 0.05 * k;
      const double mid = h_d(d, p);
      const double chord = 0.5 * (h_d(d, p - 0.05) + h_d(d, p + 0.05));
      t.expect(mid >= chord - kTol, "H_d not concave at " + at(d, p, "p"));
    }
  }
  // Data processing for random ensembles through random channels.
  std::uint64_t seed = 5000;
  for (int d = 2; d <= std::min(d_max, 3); ++d)
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Ensemble::Item> items;
      double total = 0.0;
      for (int i = 0; i < 3; ++i) {
        const double w = 1.0 + i + trial % 3;
        total += w;
        items.push_back({w, random_mixed_state(d, ++seed)});
      }
      for (auto& it : items) it.probability /= total;
      const Ensemble in(items);
      const QuantumChannel ch = random_channel(d, d, 2, ++seed);
      std::vector<Ensemble::Item> pushed;
      for (const auto& it : in.items()) pushed.push_back({it.probability, apply(ch, it.state)});
      t.expect(holevo_quantity(Ensemble(std::move(pushed))) <= holevo_quantity(in) + kTol, "data processing");
    }
  return t.result("capacity formulas, regions, data processing");
}

}  // namespace

std::vector<CheckResult> run_verify_all(int d_max, bool parallel) {
  if (d_max < 2 || d_max > 4) throw std::invalid_argument("d_max must be 2, 3 or 4");
  struct Check {
    std::string name;
    std::function<CheckResult()> run;
  };
  const std::vector<Check> checks{
      {"teleportation", [=] { return check_teleportation(d_max); }},
      {"dense coding", [=] { return check_dense_coding(d_max); }},
      {"EB threshold", [=] { return check_eb_threshold(d_max); }},
      {"ratio limit", [=] { return check_ratio(d_max); }},
      {"noisy extension (i)", [=] { return check_noisy_i(d_max); }},
      {"noisy extension (ii)", [=] { return check_noisy_ii(d_max); }},
      {"butterfly", [] { return check_butterfly(); }},
      {"channel algebra", [=] { return check_channel_algebra(d_max); }},
      {"capacity invariants", [=] { return check_capacity_invariants(d_max); }},
  };

  auto timed = [](const Check& check) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = check.run();
    } catch (const std::exception& e) {
      r.name = check.name;
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  };

  std::vector<CheckResult> results;
  if (!parallel) {
    for (const auto& c : checks) results.push_back(timed(c));
    return results;
  }
  std::vector<std::future<CheckResult>> pending;
  for (const auto& c : checks) pending.push_back(std::async(std::launch::async, timed, c));
  for (auto& f : pending) results.push_back(f.get());
  return results;
}

}  // namespace ebnet
