#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ebnet/qcore.hpp"

namespace ebnet {

/// Probability-weighted family of states on a common factorization.
class Ensemble {
 public:
  struct Item {
    double probability;
    QuantumState state;
  };

  explicit Ensemble(std::vector<Item> items);

  static Ensemble uniform(std::vector<QuantumState> states);

  const std::vector<Item>& items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  QuantumState average() const;

 private:
  std::vector<Item> items_;
};

/// H_d(p) = -p log p - (1-p) log((1-p)/(d-1)), in bits, with 0 log 0 = 0.
double h_d(int d, double p);

/// Holevo capacity of D_x: log d - H_d(1 - x(d-1)/d).
double holevo_capacity_depolarizing(int d, double x);

/// Entanglement-assisted capacity of D_x: 2 log d - H_{d^2}(1 - x(d^2-1)/d^2).
double ea_capacity_depolarizing(int d, double x);

/// chi = S(sum p_i rho_i) - sum p_i S(rho_i).
double holevo_quantity(const Ensemble& e);

/// C_E / C. Throws std::domain_error once C drops below 1e-12.
double superadditivity_ratio(int d, double x);

// ---------------------------------------------------------------------------
// Rate regions

/// Rate components of the two-sender/two-receiver network, in storage order.
enum class NetworkRate { AtoAtilde = 0, AtoBtilde, BtoAtilde, BtoBtilde, ACommon, BCommon };
inline constexpr int kNetworkRateCount = 6;

/// Rates in bits (or qubits) per channel use, all non-negative.
///
/// A MAC point carries two components (R_A, R_B); a network point carries
/// the six components indexed by NetworkRate. The common-information rates
/// exist in the model only; no implemented strategy makes them nonzero.
class RateVector {
 public:
  explicit RateVector(std::vector<double> components);

  static RateVector mac(double r_a, double r_b);
  static RateVector network(double r_a_tilde_a, double r_a_tilde_b, double r_b_tilde_a, double r_b_tilde_b,
                            double r_a_common = 0.0, double r_b_common = 0.0);

  const std::vector<double>& components() const noexcept { return components_; }
  std::size_t size() const noexcept { return components_.size(); }
  double operator[](std::size_t i) const { return components_.at(i); }
  double operator[](NetworkRate r) const { return components_.at(static_cast<std::size_t>(r)); }

  double r_a() const;
  double r_b() const;

 private:
  std::vector<double> components_;
};

/// coefficients . R <= bound
struct RateInequality {
  std::vector<double> coefficients;
  double bound = 0.0;
  std::string label;

  double slack(const RateVector& r) const;
};

enum class PointKind {
  Achievable,    ///< realized by an explicit protocol
  OuterVertex,   ///< vertex of the outer bound, no achievability claimed
};

struct RegionPoint {
  RateVector rates;
  PointKind kind;
  std::string label;
};

/// Outer-bound inequalities plus annotated corner points. The region between
/// the two is not computed.
struct RateRegion {
  std::vector<std::string> component_names;
  std::vector<RateInequality> inequalities;
  std::vector<RegionPoint> extreme_points;

  bool contains(const RateVector& r, double tol = kInvariantTol) const;
  /// Labels of inequalities holding with equality at `r` (|slack| <= tol).
  std::vector<std::string> saturated(const RateVector& r, double tol = kInvariantTol) const;
  /// Labels of inequalities `r` violates by more than tol.
  std::vector<std::string> violated(const RateVector& r, double tol = kInvariantTol) const;
  /// Every listed extreme point satisfies every inequality.
  bool is_self_consistent(double tol = kInvariantTol) const;
};

/// Classical region of dense_coding_mac (x) identity: corner points (C_E, 0)
/// and (0, C + log d), bounded by R_A <= C_E and R_A + R_B <= C + log d.
RateRegion product_region_extreme_points(int d, double x);

/// Quantum region of bell_measurement_channel (x) identity: R_A + R_B <= log d.
RateRegion quantum_product_region(int d);

struct ButterflyRegions {
  /// Six-component outer bound of the bare network (receiver-side D_x limits).
  RateRegion bare;
  /// Two-component region (R_{A'A~'}, R_{B'B~'}) of the assisting identity pair.
  RateRegion assisting;
  /// Cross-transfer rates reached with the assisting channels; lies outside `bare` whenever C_E > C.
  RateVector assisted_cross_transfer;
};

ButterflyRegions butterfly_outer_region(int d, double x);

}  // namespace ebnet
