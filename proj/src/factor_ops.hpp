#pragma once

// Internal tensor-factor bookkeeping shared by qcore and channels.

#include <span>
#include <vector>

#include "ebnet/qcore.hpp"

namespace ebnet::detail {

/// For each flat index of the permuted space, the flat index in the original.
std::vector<int> permutation_index_map(std::span<const int> dims, std::span<const int> order);

Matrix permute_matrix(const Matrix& m, std::span<const int> dims, std::span<const int> order);

/// Validates a factor selection (in range, no duplicates); throws std::invalid_argument.
void check_factor_selection(std::span<const int> factors, int num_factors);

/// Factors of `dims` not in `selected`, ascending.
std::vector<int> complement(std::span<const int> selected, int num_factors);

/// (I_rest (x) K) M for M of shape (in*rest) x N with the operator factor minor.
Matrix left_apply_minor(const Matrix& k, const Matrix& m, int rest);

/// Sum_k (I (x) K_k) rho (I (x) K_k)^dagger where `rho` has the acted-on
/// factors minor and `rest` is the dimension of everything else.
Matrix sandwich_minor(std::span<const Matrix> kraus, const Matrix& rho, int rest);

struct FactorAction {
  Matrix matrix;
  Dims dims;
};

/// Applies a Kraus family on the listed factors. The output factors are
/// placed where the lowest-numbered selected factor sat; the untouched
/// factors keep their relative order.
FactorAction apply_on_selected(const Matrix& rho, const Dims& dims, std::span<const Matrix> kraus,
                               std::span<const int> factors, const Dims& out_dims);

}  // namespace ebnet::detail
