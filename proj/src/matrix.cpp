#include "vill/matrix.hpp"

#include <vector>

namespace vill {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = Rational(m(r, c));
  return out;
}

RatVector to_rational(const IntVector& v) {
  RatVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = Rational(v(i));
  return out;
}

RatVector apply_affine(const RatMatrix& m, const RatVector& h) {
  return m.transpose() * h;
}

bool is_column_stochastic(const RatMatrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Rational sum = 0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (m(r, c) < 0 || m(r, c) > 1) return false;
      sum += m(r, c);
    }
    if (sum != 1) return false;
  }
  return true;
}

Rational l1_column_diameter(const RatMatrix& m) {
  Rational best = 0;
  for (Eigen::Index a = 0; a < m.cols(); ++a)
    for (Eigen::Index b = a + 1; b < m.cols(); ++b) {
      Rational d = 0;
      for (Eigen::Index r = 0; r < m.rows(); ++r) d += rational_abs(m(r, a) - m(r, b));
      if (d > best) best = d;
    }
  return best;
}

Rational dobrushin_coefficient(const RatMatrix& m) {
  if (m.cols() <= 1) return Rational(0);
  Rational worst = 0;
  for (Eigen::Index a = 0; a < m.cols(); ++a)
    for (Eigen::Index b = a + 1; b < m.cols(); ++b) {
      Rational overlap = 0;
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        overlap += m(r, a) < m(r, b) ? m(r, a) : m(r, b);
      Rational c = Rational(1) - overlap;
      if (c > worst) worst = c;
    }
  return worst;
}

bool is_primitive(const IntMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cols() != n) return false;
  std::vector<std::vector<bool>> pos(n, std::vector<bool>(n));
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) pos[r][c] = m(r, c) > 0;

  auto all_positive = [&](const std::vector<std::vector<bool>>& p) {
    for (const auto& row : p)
      for (bool b : row)
        if (!b) return false;
    return true;
  };

  const Eigen::Index bound = (n - 1) * (n - 1) + 1;
  auto cur = pos;
  for (Eigen::Index power = 1; power <= bound; ++power) {
    if (all_positive(cur)) return true;
    std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index k = 0; k < n; ++k)
        if (cur[r][k])
          for (Eigen::Index c = 0; c < n; ++c)
            if (pos[k][c]) next[r][c] = true;
    cur = std::move(next);
  }
  return false;
}

Rational sup_norm(const RatVector& v) {
  Rational best = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    Rational a = rational_abs(v(i));
    if (a > best) best = a;
  }
  return best;
}

}  // namespace vill
