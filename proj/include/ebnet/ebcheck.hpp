#pragma once

#include "ebnet/channels.hpp"

namespace ebnet {

/// Outcome of the two entanglement-breaking tests on one channel.
/// A rank-one Kraus family proves EB; a PPT Choi state is necessary for EB
/// and, for isotropic/depolarizing channels, sufficient.
struct EbVerdict {
  bool is_eb_by_kraus = false;
  double min_pt_eigenvalue = 0.0;
  bool is_ppt = false;
};

/// True iff every Kraus operator has at most one singular value above 1e-9.
/// A false result is inconclusive.
bool kraus_rank_one_witness(const QuantumChannel& ch);

/// Minimum eigenvalue of the normalized Choi state J/in_dim after transposing
/// the input factor.
double choi_partial_transpose_min_eig(const QuantumChannel& ch);

EbVerdict eb_verdict(const QuantumChannel& ch, double tol = kInvariantTol);

/// Zero crossing in x of choi_partial_transpose_min_eig(depolarizing_channel(d, x)),
/// bracketed on [0, 1] and bisected to 1e-8 (at most 60 steps).
double eb_threshold_scan(int d);

/// Closed form of the same crossing, d/(d+1).
inline double eb_threshold_exact(int d) { return static_cast<double>(d) / (d + 1); }

}  // namespace ebnet
