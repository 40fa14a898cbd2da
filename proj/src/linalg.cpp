#include "quivcon/linalg.hpp"

#include "quivcon/error.hpp"
#include "quivcon/subspace.hpp"

namespace quivcon {

  RowEchelon rref(Matrix m) {
    std::vector<std::size_t> pivots;
    std::size_t              rows = m.rows(), cols = m.cols();
    std::size_t              r    = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
      std::size_t p = r;
      while (p < rows && m(p, c).is_zero()) {
        ++p;
      }
      if (p == rows) {
        continue;
      }
      if (p != r) {
        for (std::size_t j = c; j < cols; ++j) {
          std::swap(m(p, j), m(r, j));
        }
      }
      Scalar inv = m(r, c).inverse();
      for (std::size_t j = c; j < cols; ++j) {
        if (!m(r, j).is_zero()) {
          m(r, j) *= inv;
        }
      }
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == r || m(i, c).is_zero()) {
          continue;
        }
        Scalar f = m(i, c);
        for (std::size_t j = c; j < cols; ++j) {
          if (!m(r, j).is_zero()) {
            m(i, j).subtract_product(f, m(r, j));
          }
        }
      }
      pivots.push_back(c);
      ++r;
    }
    return {std::move(m), std::move(pivots)};
  }

  std::size_t rank(Matrix const& m) {
    return rref(m).pivots.size();
  }

  Subspace kernel(Matrix const& m) {
    auto [red, pivots] = rref(m);
    std::size_t              n = m.cols();
    std::vector<bool>        is_pivot(n, false);
    for (auto p : pivots) {
      is_pivot[p] = true;
    }
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < n; ++f) {
      if (is_pivot[f]) {
        continue;
      }
      Vector v(n);
      v[f] = 1;
      for (std::size_t i = 0; i < pivots.size(); ++i) {
        v[pivots[i]] = -red(i, f);
      }
      basis.push_back(std::move(v));
    }
    return Subspace::span(n, basis);
  }

  std::optional<Vector> solve(Matrix const& m, Vector const& b) {
    if (b.size() != m.rows()) {
      throw Error("solve: right-hand side has wrong length");
    }
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        aug(r, c) = m(r, c);
      }
      aug(r, m.cols()) = b[r];
    }
    auto [red, pivots] = rref(std::move(aug));
    if (!pivots.empty() && pivots.back() == m.cols()) {
      return std::nullopt;
    }
    Vector x(m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      x[pivots[i]] = red(i, m.cols());
    }
    return x;
  }

  std::optional<Matrix> solve(Matrix const& m, Matrix const& b) {
    if (b.rows() != m.rows()) {
      throw Error("solve: right-hand side has wrong row count");
    }
    std::size_t n = m.cols(), k = b.cols();
    Matrix      aug(m.rows(), n + k);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        aug(r, c) = m(r, c);
      }
      for (std::size_t c = 0; c < k; ++c) {
        aug(r, n + c) = b(r, c);
      }
    }
    auto [red, pivots] = rref(std::move(aug));
    std::size_t rank_m = 0;
    while (rank_m < pivots.size() && pivots[rank_m] < n) {
      ++rank_m;
    }
    if (rank_m != pivots.size()) {
      return std::nullopt;
    }
    Matrix x(n, k);
    for (std::size_t i = 0; i < rank_m; ++i) {
      for (std::size_t c = 0; c < k; ++c) {
        x(pivots[i], c) = red(i, n + c);
      }
    }
    return x;
  }

  std::optional<Matrix> inverse(Matrix const& m) {
    if (!m.is_square()) {
      return std::nullopt;
    }
    if (rank(m) != m.rows()) {
      return std::nullopt;
    }
    return solve(m, Matrix::identity(m.rows()));
  }

}  // namespace quivcon
