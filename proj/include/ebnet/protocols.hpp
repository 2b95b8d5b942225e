#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ebnet/channels.hpp"

namespace ebnet {

/// Result of one exact protocol simulation.
///
/// `discrepancy` is |metric_value - claimed_value|. `residuals` are extra
/// identities the simulation verified (each must be <= tolerance for the run
/// to pass); `observables` are informational values.
struct ProtocolReport {
  std::string name;
  std::map<std::string, double> parameters;
  std::string metric_name;
  double metric_value = 0.0;
  double claimed_value = 0.0;
  double discrepancy = 0.0;
  double tolerance = kInvariantTol;
  std::map<std::string, double> residuals;
  std::map<std::string, double> observables;
  std::map<std::string, std::string> metadata;

  bool passed() const;
};

/// Outcome of measuring one classical register factor.
struct RegisterOutcome {
  double probability = 0.0;
  /// Post-measurement state on the remaining factors; meaningful only when
  /// probability > 0.
  QuantumState state;
};

/// Projects factor `factor` onto |outcome> and traces it out.
RegisterOutcome condition_on_register(const QuantumState& s, int factor, int outcome);

/// Unitary Charlie applies to the retained qudit after Bell outcome (a, b)
/// with Bell basis (X^a Z^b (x) I)|Phi+>: the Weyl operator X^a Z^b itself.
UnitaryOperator teleportation_correction(int d, int a, int b);

/// Teleports `input` through bell_measurement_channel (x) identity_channel.
/// Metric: outcome-averaged fidelity; every outcome is also checked alone.
ProtocolReport teleportation_demo(int d, const QuantumState& input, std::uint64_t seed);
/// Same, with a Haar-random input drawn from `seed`.
ProtocolReport teleportation_demo(int d, std::uint64_t seed);

/// Holevo quantity of Charlie's d^2 dense-coding codewords through
/// dense_coding_mac (x) identity; claimed value C_E.
ProtocolReport dense_coding_superadditivity_demo(int d, double x);

/// Bob alone: basis signalling through dense_coding_mac plus the identity
/// channel; claimed value C + log d.
ProtocolReport bob_solo_rate_demo(int d, double x);

/// End-to-end Alice-to-Charlie map through noisy_bm_channel (x) identity with
/// register-conditioned correction; metric is its Choi distance to D_q.
ProtocolReport noisy_extension_i_demo(int d, double q);

/// Flag-conditioned decoding through flagged_bm_identity_channel (x) identity;
/// metric is the worst fidelity over flag branches and Bell outcomes.
ProtocolReport noisy_extension_ii_demo(int d, double q, std::uint64_t seed);

/// Butterfly network assisted by two identity channels, cross dense coding.
/// Metric: min of the two receivers' Holevo quantities; claimed value C_E.
/// The dense state has d^8 entries squared, so d = 2 is the practical size.
ProtocolReport butterfly_demo(int d, double x);

/// Names accepted by run_demo, in CLI order.
const std::vector<std::string>& demo_names();

/// Dispatches by CLI name (teleport, densecode, bobsolo, noisy-i, noisy-ii,
/// butterfly). Throws std::invalid_argument for an unknown name.
ProtocolReport run_demo(const std::string& name, int d, double x, double q, std::uint64_t seed);

}  // namespace ebnet
