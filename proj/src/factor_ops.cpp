#include "factor_ops.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ebnet::detail {

std::vector<int> permutation_index_map(std::span<const int> dims, std::span<const int> order) {
  const int n = static_cast<int>(dims.size());
  // Strides of the original layout (factor 0 most significant).
  std::vector<int> stride(n, 1);
  for (int f = n - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

  std::vector<int> new_dims(n);
  for (int k = 0; k < n; ++k) new_dims[k] = dims[order[k]];

  const int total = total_dim(dims);
  std::vector<int> map(total);
  std::vector<int> digit(n, 0);
  for (int idx = 0; idx < total; ++idx) {
    int old = 0;
    for (int k = 0; k < n; ++k) old += digit[k] * stride[order[k]];
    map[idx] = old;
    for (int k = n - 1; k >= 0; --k) {
      if (++digit[k] < new_dims[k]) break;
      digit[k] = 0;
    }
  }
  return map;
}

Matrix permute_matrix(const Matrix& m, std::span<const int> dims, std::span<const int> order) {
  bool identity = true;
  for (std::size_t k = 0; k < order.size(); ++k) identity = identity && order[k] == static_cast<int>(k);
  if (identity) return m;

  const auto map = permutation_index_map(dims, order);
  const Eigen::Index n = m.rows();
  Matrix out(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) out(r, c) = m(map[r], map[c]);
  return out;
}

void check_factor_selection(std::span<const int> factors, int num_factors) {
  if (factors.empty()) throw std::invalid_argument("empty factor selection");
  std::vector<bool> seen(num_factors, false);
  for (int f : factors) {
    if (f < 0 || f >= num_factors)
      throw std::invalid_argument("factor index " + std::to_string(f) + " out of range");
    if (seen[f]) throw std::invalid_argument("factor " + std::to_string(f) + " selected twice");
    seen[f] = true;
  }
}

std::vector<int> complement(std::span<const int> selected, int num_factors) {
  std::vector<int> rest;
  for (int f = 0; f < num_factors; ++f)
    if (std::find(selected.begin(), selected.end(), f) == selected.end()) rest.push_back(f);
  return rest;
}

Matrix left_apply_minor(const Matrix& k, const Matrix& m, int rest) {
  const Eigen::Index in = k.cols();
  const Eigen::Index out = k.rows();
  const Eigen::Index cols = m.cols();
  Matrix result(out * rest, cols);
  // Column-major storage: with the operator factor minor, M is exactly an
  // in x (rest*cols) matrix in memory.
  Eigen::Map<const Matrix> mv(m.data(), in, rest * cols);
  Eigen::Map<Matrix> rv(result.data(), out, rest * cols);
  rv.noalias() = k * mv;
  return result;
}

Matrix sandwich_minor(std::span<const Matrix> kraus, const Matrix& rho, int rest) {
  const Eigen::Index out = kraus.front().rows();
  Matrix acc = Matrix::Zero(out * rest, out * rest);
  for (const Matrix& k : kraus) {
    const Matrix left = left_apply_minor(k, rho, rest);
    const Matrix both = left_apply_minor(k, left.adjoint(), rest);
    acc += both.adjoint();
  }
  return acc;
}

FactorAction apply_on_selected(const Matrix& rho, const Dims& dims, std::span<const Matrix> kraus,
                               std::span<const int> factors, const Dims& out_dims) {
  const int n = static_cast<int>(dims.size());
  check_factor_selection(factors, n);
  const auto rest = complement(factors, n);

  std::vector<int> order(rest.begin(), rest.end());
  order.insert(order.end(), factors.begin(), factors.end());
  int rest_dim = 1;
  for (int f : rest) rest_dim *= dims[f];

  const Matrix permuted = permute_matrix(rho, dims, order);
  Matrix acted = sandwich_minor(kraus, permuted, rest_dim);

  // Current layout: rest factors, then out_dims. Move the outputs to where
  // the first selected factor sat.
  const int first = *std::min_element(factors.begin(), factors.end());
  const int n_rest = static_cast<int>(rest.size());
  const int n_out = static_cast<int>(out_dims.size());
  Dims current_dims;
  for (int f : rest) current_dims.push_back(dims[f]);
  current_dims.insert(current_dims.end(), out_dims.begin(), out_dims.end());

  std::vector<int> final_order;
  for (int p = 0; p < n; ++p) {
    if (p == first) {
      for (int o = 0; o < n_out; ++o) final_order.push_back(n_rest + o);
    } else {
      auto it = std::find(rest.begin(), rest.end(), p);
      if (it != rest.end()) final_order.push_back(static_cast<int>(it - rest.begin()));
    }
  }
  Dims final_dims;
  for (int k : final_order) final_dims.push_back(current_dims[k]);
  return {permute_matrix(acted, current_dims, final_order), std::move(final_dims)};
}

}  // namespace ebnet::detail
