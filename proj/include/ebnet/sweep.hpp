#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ebnet/protocols.hpp"

namespace ebnet {

/// One tabulated point of the capacity formulas.
struct SweepRow {
  int d = 2;
  double x = 0.0;
  double c = 0.0;
  double c_e = 0.0;
  std::optional<double> ratio;  ///< absent when C <= 1e-12
  bool eb = false;              ///< x >= d/(d+1) - 1e-12

  bool operator==(const SweepRow&) const = default;
};

SweepRow make_sweep_row(int d, double x);

/// `steps` evenly spaced points on [x_min, x_max], endpoints included.
/// With `parallel`, points are evaluated concurrently and assembled in order.
std::vector<SweepRow> capacity_sweep(int d, double x_min, double x_max, int steps, bool parallel = false);

/// Shortest "%.12g" rendering: 12 significant digits, no trailing zeros.
std::string format_sig12(double v);

/// Value after a trip through format_sig12, so JSON numbers carry the same
/// 12 significant digits as the CSV.
double round_sig12(double v);

/// Header `d,x,C,C_E,ratio,eb`, one row per line, empty ratio when absent.
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

nlohmann::ordered_json sweep_to_json(const std::vector<SweepRow>& rows);
std::vector<SweepRow> sweep_from_json(const nlohmann::json& j);

/// Report with keys in schema order; floating values at 12 significant digits.
nlohmann::ordered_json report_to_json(const ProtocolReport& r);
ProtocolReport report_from_json(const nlohmann::json& j);

}  // namespace ebnet
