#include "ebnet/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ebnet {

namespace {

constexpr double kRatioGuard = 1e-12;

void check_params(int d, double x) {
  if (d < 2) throw std::invalid_argument("capacity formulas need d >= 2, got " + std::to_string(d));
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("x must lie in [0, 1], got " + std::to_string(x));
}

double xlog2x(double v) { return v > 0.0 ? v * std::log2(v) : 0.0; }

}  // namespace

Ensemble::Ensemble(std::vector<Item> items) : items_(std::move(items)) {
  if (items_.empty()) throw std::invalid_argument("ensemble must not be empty");
  double total = 0.0;
  for (const Item& it : items_) {
    if (it.probability < 0.0) throw std::invalid_argument("ensemble probabilities must be non-negative");
    if (it.state.dims() != items_.front().state.dims())
      throw std::invalid_argument("ensemble states must share one factorization");
    total += it.probability;
  }
  if (std::abs(total - 1.0) > kInvariantTol)
    throw std::invalid_argument("ensemble probabilities sum to " + std::to_string(total));
}

Ensemble Ensemble::uniform(std::vector<QuantumState> states) {
  if (states.empty()) throw std::invalid_argument("ensemble must not be empty");
  const double p = 1.0 / static_cast<double>(states.size());
  std::vector<Item> items;
  items.reserve(states.size());
  for (QuantumState& s : states) items.push_back({p, std::move(s)});
  return Ensemble(std::move(items));
}

QuantumState Ensemble::average() const {
  Matrix avg = Matrix::Zero(items_.front().state.dim(), items_.front().state.dim());
  for (const Item& it : items_) avg += it.probability * it.state.matrix();
  return QuantumState::unchecked(std::move(avg), items_.front().state.dims());
}

double h_d(int d, double p) {
  if (d < 2) throw std::invalid_argument("H_d needs d >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("H_d argument must lie in [0, 1], got " + std::to_string(p));
  // -(1-p) log((1-p)/(d-1)) = -(1-p) log(1-p) + (1-p) log(d-1)
  return -xlog2x(p) - xlog2x(1.0 - p) + (1.0 - p) * std::log2(static_cast<double>(d - 1));
}

double holevo_capacity_depolarizing(int d, double x) {
  check_params(d, x);
  const double p = 1.0 - x * (d - 1.0) / d;
  return std::max(0.0, std::log2(static_cast<double>(d)) - h_d(d, p));
}

double ea_capacity_depolarizing(int d, double x) {
  check_params(d, x);
  const int d2 = d * d;
  const double p = 1.0 - x * (d2 - 1.0) / d2;
  return std::max(0.0, 2.0 * std::log2(static_cast<double>(d)) - h_d(d2, p));
}

double holevo_quantity(const Ensemble& e) {
  double conditional = 0.0;
  for (const auto& it : e.items())
    if (it.probability > 0.0) conditional += it.probability * von_neumann_entropy(it.state);
  return std::max(0.0, von_neumann_entropy(e.average()) - conditional);
}

double superadditivity_ratio(int d, double x) {
  check_params(d, x);
  const double c = holevo_capacity_depolarizing(d, x);
  if (c < kRatioGuard)
    throw std::domain_error("Holevo capacity " + std::to_string(c) + " too small for a meaningful ratio at x=" +
                            std::to_string(x));
  return ea_capacity_depolarizing(d, x) / c;
}

// ---------------------------------------------------------------------------

RateVector::RateVector(std::vector<double> components) : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("rate vector needs at least one component");
  for (double r : components_)
    if (!(r >= 0.0)) throw std::invalid_argument("rates must be non-negative");
}

RateVector RateVector::mac(double r_a, double r_b) { return RateVector({r_a, r_b}); }

RateVector RateVector::network(double r_a_tilde_a, double r_a_tilde_b, double r_b_tilde_a, double r_b_tilde_b,
                               double r_a_common, double r_b_common) {
  return RateVector({r_a_tilde_a, r_a_tilde_b, r_b_tilde_a, r_b_tilde_b, r_a_common, r_b_common});
}

double RateVector::r_a() const {
  if (size() != 2) throw std::logic_error("r_a() is defined for two-component MAC rates only");
  return components_[0];
}

double RateVector::r_b() const {
  if (size() != 2) throw std::logic_error("r_b() is defined for two-component MAC rates only");
  return components_[1];
}

double RateInequality::slack(const RateVector& r) const {
  if (r.size() != coefficients.size()) throw std::invalid_argument("rate vector and inequality differ in length");
  double lhs = 0.0;
  for (std::size_t i = 0; i < coefficients.size(); ++i) lhs += coefficients[i] * r[i];
  return bound - lhs;
}

bool RateRegion::contains(const RateVector& r, double tol) const {
  return std::all_of(inequalities.begin(), inequalities.end(),
                     [&](const RateInequality& q) { return q.slack(r) >= -tol; });
}

std::vector<std::string> RateRegion::saturated(const RateVector& r, double tol) const {
  std::vector<std::string> out;
  for (const auto& q : inequalities)
    if (std::abs(q.slack(r)) <= tol) out.push_back(q.label);
  return out;
}

std::vector<std::string> RateRegion::violated(const RateVector& r, double tol) const {
  std::vector<std::string> out;
  for (const auto& q : inequalities)
    if (q.slack(r) < -tol) out.push_back(q.label);
  return out;
}

bool RateRegion::is_self_consistent(double tol) const {
  return std::all_of(extreme_points.begin(), extreme_points.end(),
                     [&](const RegionPoint& p) { return contains(p.rates, tol); });
}

namespace {

std::vector<RateInequality> non_negativity(const std::vector<std::string>& names) {
  std::vector<RateInequality> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::vector<double> c(names.size(), 0.0);
    c[i] = -1.0;
    out.push_back({std::move(c), 0.0, names[i] + " >= 0"});
  }
  return out;
}

}  // namespace

RateRegion product_region_extreme_points(int d, double x) {
  check_params(d, x);
  const double c = holevo_capacity_depolarizing(d, x);
  const double c_e = ea_capacity_depolarizing(d, x);
  const double log_d = std::log2(static_cast<double>(d));

  RateRegion region;
  region.component_names = {"R_A", "R_B"};
  region.inequalities = non_negativity(region.component_names);
  region.inequalities.push_back({{1.0, 0.0}, c_e, "R_A <= C_E"});
  region.inequalities.push_back({{1.0, 1.0}, c + log_d, "R_A + R_B <= C + log d"});
  region.extreme_points = {
      {RateVector::mac(c_e, 0.0), PointKind::Achievable, "dense coding through the EB MAC (C_E, 0)"},
      {RateVector::mac(0.0, c + log_d), PointKind::Achievable, "Bob alone (0, C + log d)"},
      {RateVector::mac(0.0, 0.0), PointKind::Achievable, "origin"},
  };
  return region;
}

RateRegion quantum_product_region(int d) {
  if (d < 2) throw std::invalid_argument("region needs d >= 2");
  const double log_d = std::log2(static_cast<double>(d));
  RateRegion region;
  region.component_names = {"R_A", "R_B"};
  region.inequalities = non_negativity(region.component_names);
  region.inequalities.push_back({{1.0, 1.0}, log_d, "R_A + R_B <= log d"});
  region.extreme_points = {
      {RateVector::mac(log_d, 0.0), PointKind::Achievable, "teleportation through the Bell-measurement MAC"},
      {RateVector::mac(0.0, log_d), PointKind::Achievable, "Bob through the identity channel"},
      {RateVector::mac(0.0, 0.0), PointKind::Achievable, "origin"},
  };
  return region;
}

ButterflyRegions butterfly_outer_region(int d, double x) {
  check_params(d, x);
  const double c = holevo_capacity_depolarizing(d, x);
  const double c_e = ea_capacity_depolarizing(d, x);
  const double log_d = std::log2(static_cast<double>(d));

  RateRegion bare;
  bare.component_names = {"R_AA~", "R_AB~", "R_BA~", "R_BB~", "R_A^(o)", "R_B^(o)"};
  bare.inequalities = non_negativity(bare.component_names);
  bare.inequalities.push_back({{1, 0, 1, 0, 1, 0}, c, "R_AA~ + R_BA~ + R_A^(o) <= C"});
  bare.inequalities.push_back({{0, 1, 0, 1, 0, 1}, c, "R_AB~ + R_BB~ + R_B^(o) <= C"});
  bare.extreme_points = {
      {RateVector::network(0, 0, 0, 0), PointKind::OuterVertex, "origin"},
      {RateVector::network(c, 0, 0, c), PointKind::OuterVertex, "direct transfers at C"},
      {RateVector::network(0, c, c, 0), PointKind::OuterVertex, "cross transfers at C"},
  };

  RateRegion assisting;
  assisting.component_names = {"R_A'A~'", "R_B'B~'"};
  assisting.inequalities = non_negativity(assisting.component_names);
  assisting.inequalities.push_back({{1, 0}, log_d, "R_A'A~' <= log d"});
  assisting.inequalities.push_back({{0, 1}, log_d, "R_B'B~' <= log d"});
  assisting.extreme_points = {
      {RateVector::mac(log_d, log_d), PointKind::Achievable, "both identity channels used directly"},
      {RateVector::mac(0.0, 0.0), PointKind::Achievable, "origin"},
  };

  return {std::move(bare), std::move(assisting), RateVector::network(0, c_e, c_e, 0)};
}

}  // namespace ebnet
