#include "ebnet/ebcheck.hpp"

#include <stdexcept>
#include <string>

namespace ebnet {

namespace {

constexpr double kRankTol = 1e-9;
constexpr double kBisectionTol = 1e-8;
constexpr int kBisectionMaxIter = 60;

}  // namespace

bool kraus_rank_one_witness(const QuantumChannel& ch) {
  for (const Matrix& k : ch.kraus()) {
    Eigen::JacobiSVD<Matrix> svd(k);
    const auto& sv = svd.singularValues();
    for (Eigen::Index i = 1; i < sv.size(); ++i)
      if (sv(i) > kRankTol) return false;
  }
  return true;
}

double choi_partial_transpose_min_eig(const QuantumChannel& ch) {
  const ChoiMatrix j = choi(ch);
  const int n_in = j.in_dim;
  const int n_out = j.out_dim;
  // Transposing the input factor swaps the (i, j) blocks of J.
  Matrix pt(j.matrix.rows(), j.matrix.cols());
  for (int i = 0; i < n_in; ++i)
    for (int k = 0; k < n_in; ++k)
      pt.block(i * n_out, k * n_out, n_out, n_out) = j.matrix.block(k * n_out, i * n_out, n_out, n_out);
  pt /= static_cast<double>(n_in);
  return hermitian_eigenvalues(pt).minCoeff();
}

EbVerdict eb_verdict(const QuantumChannel& ch, double tol) {
  EbVerdict v;
  v.is_eb_by_kraus = kraus_rank_one_witness(ch);
  v.min_pt_eigenvalue = choi_partial_transpose_min_eig(ch);
  v.is_ppt = v.min_pt_eigenvalue >= -tol;
  return v;
}

double eb_threshold_scan(int d) {
  if (d < 2) throw std::invalid_argument("threshold scan needs d >= 2");
  auto f = [d](double x) { return choi_partial_transpose_min_eig(depolarizing_channel(d, x)); };
  double lo = 0.0;
  double hi = 1.0;
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (!(f_lo < 0.0 && f_hi >= 0.0))
    throw std::runtime_error("no sign change of the partial-transpose eigenvalue on [0, 1] for d=" + std::to_string(d));
  for (int it = 0; it < kBisectionMaxIter && hi - lo > kBisectionTol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    (f_mid < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace ebnet
