#include "ebnet/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <ostream>
#include <stdexcept>

#include "ebnet/capacity.hpp"
#include "ebnet/ebcheck.hpp"

namespace ebnet {

namespace {

constexpr double kRatioFloor = 1e-12;

}  // namespace

SweepRow make_sweep_row(int d, double x) {
  SweepRow row;
  row.d = d;
  row.x = x;
  row.c = holevo_capacity_depolarizing(d, x);
  row.c_e = ea_capacity_depolarizing(d, x);
  if (row.c > kRatioFloor) row.ratio = row.c_e / row.c;
  row.eb = x >= eb_threshold_exact(d) - 1e-12;
  return row;
}

std::vector<SweepRow> capacity_sweep(int d, double x_min, double x_max, int steps, bool parallel) {
  if (d < 2) throw std::invalid_argument("sweep needs d >= 2");
  if (!(x_min >= 0.0 && x_min < x_max && x_max <= 1.0))
    throw std::invalid_argument("sweep needs 0 <= x_min < x_max <= 1");
  if (steps < 2) throw std::invalid_argument("sweep needs at least 2 steps");

  auto x_at = [&](int k) {
    if (k == steps - 1) return x_max;
    return x_min + (x_max - x_min) * static_cast<double>(k) / (steps - 1);
  };
  std::vector<SweepRow> rows;
  rows.reserve(steps);
  if (!parallel) {
    for (int k = 0; k < steps; ++k) rows.push_back(make_sweep_row(d, x_at(k)));
    return rows;
  }
  std::vector<std::future<SweepRow>> pending;
  pending.reserve(steps);
  for (int k = 0; k < steps; ++k) pending.push_back(std::async(std::launch::async, make_sweep_row, d, x_at(k)));
  for (auto& f : pending) rows.push_back(f.get());
  return rows;
}

std::string format_sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

double round_sig12(double v) { return std::stod(format_sig12(v)); }

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "d,x,C,C_E,ratio,eb\n";
  for (const SweepRow& r : rows) {
    out << r.d << ',' << format_sig12(r.x) << ',' << format_sig12(r.c) << ',' << format_sig12(r.c_e) << ','
        << (r.ratio ? format_sig12(*r.ratio) : std::string{}) << ',' << (r.eb ? "true" : "false") << '\n';
  }
}

nlohmann::ordered_json sweep_to_json(const std::vector<SweepRow>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const SweepRow& r : rows) {
    nlohmann::ordered_json j;
    j["d"] = r.d;
    j["x"] = round_sig12(r.x);
    j["C"] = round_sig12(r.c);
    j["C_E"] = round_sig12(r.c_e);
    j["ratio"] = r.ratio ? nlohmann::ordered_json(round_sig12(*r.ratio)) : nlohmann::ordered_json(nullptr);
    j["eb"] = r.eb;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::vector<SweepRow> sweep_from_json(const nlohmann::json& j) {
  std::vector<SweepRow> rows;
  for (const auto& item : j) {
    SweepRow r;
    r.d = item.at("d").get<int>();
    r.x = item.at("x").get<double>();
    r.c = item.at("C").get<double>();
    r.c_e = item.at("C_E").get<double>();
    if (!item.at("ratio").is_null()) r.ratio = item.at("ratio").get<double>();
    r.eb = item.at("eb").get<bool>();
    rows.push_back(r);
  }
  return rows;
}

namespace {

nlohmann::ordered_json rounded_map(const std::map<std::string, double>& m) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : m) j[k] = round_sig12(v);
  return j;
}

}  // namespace

nlohmann::ordered_json report_to_json(const ProtocolReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["parameters"] = rounded_map(r.parameters);
  j["metric_name"] = r.metric_name;
  j["metric_value"] = round_sig12(r.metric_value);
  j["claimed_value"] = round_sig12(r.claimed_value);
  j["discrepancy"] = round_sig12(r.discrepancy);
  j["tolerance"] = r.tolerance;
  j["passed"] = r.passed();
  j["residuals"] = rounded_map(r.residuals);
  j["observables"] = rounded_map(r.observables);
  j["metadata"] = r.metadata;
  return j;
}

ProtocolReport report_from_json(const nlohmann::json& j) {
  ProtocolReport r;
  r.name = j.at("name").get<std::string>();
  r.parameters = j.at("parameters").get<std::map<std::string, double>>();
  r.metric_name = j.at("metric_name").get<std::string>();
  r.metric_value = j.at("metric_value").get<double>();
  r.claimed_value = j.at("claimed_value").get<double>();
  r.discrepancy = j.at("discrepancy").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.residuals = j.at("residuals").get<std::map<std::string, double>>();
  r.observables = j.at("observables").get<std::map<std::string, double>>();
  r.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
  return r;
}

}  // namespace ebnet
