#include "linalg.hpp"

#include <algorithm>

namespace psr::detail {

namespace {

struct Decomposition {
  Eigen::MatrixXd v;
  std::size_t rank = 0;
};

Decomposition decompose(const Rows& rows, std::size_t cols) {
  const auto n = static_cast<Eigen::Index>(cols);
  if (rows.empty()) return {Eigen::MatrixXd::Identity(n, n), 0};
  // Pad to a square-or-taller matrix so JacobiSVD returns the full V.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(std::max<Eigen::Index>(static_cast<Eigen::Index>(rows.size()), n), n);
  m.topRows(static_cast<Eigen::Index>(rows.size())) = to_matrix(rows, cols);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cutoff = kRankThreshold * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) ++r;
  }
  return {svd.matrixV(), r};
}

}  // namespace

Rows null_space(const Rows& rows, std::size_t cols) {
  const Decomposition d = decompose(rows, cols);
  Rows basis;
  for (std::size_t k = d.rank; k < cols; ++k) {
    std::vector<double> v(cols);
    for (std::size_t i = 0; i < cols; ++i) v[i] = d.v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const Rows& rows, std::size_t cols) { return decompose(rows, cols).rank; }

}  // namespace psr::detail
