#pragma once

// Dense helpers shared by the geometry and symmetry code. Private to core.

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace psr::detail {

using Rows = std::vector<std::vector<double>>;

inline constexpr double kRankThreshold = 1e-10;

inline Eigen::MatrixXd to_matrix(const Rows& rows, std::size_t cols) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  }
  return m;
}

// Orthonormal basis of {x : rows * x = 0}. Singular values at or below
// kRankThreshold * max(1, sigma_max) count as zero.
Rows null_space(const Rows& rows, std::size_t cols);

std::size_t rank(const Rows& rows, std::size_t cols);

}  // namespace psr::detail
