#include "quivcon/matrix.hpp"

#include <algorithm>
#include <ostream>

#include "quivcon/error.hpp"

namespace quivcon {

  Vector zero_vector(std::size_t n) {
    return Vector(n);
  }

  Vector unit_vector(std::size_t n, std::size_t i) {
    Vector v(n);
    v.at(i) = 1;
    return v;
  }

  bool is_zero(Vector const& v) {
    return std::all_of(v.begin(), v.end(), [](Scalar const& s) { return s.is_zero(); });
  }

  Vector operator+(Vector const& a, Vector const& b) {
    if (a.size() != b.size()) {
      throw Error("vector length mismatch");
    }
    Vector r(a);
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] += b[i];
    }
    return r;
  }

  Vector operator-(Vector const& a, Vector const& b) {
    if (a.size() != b.size()) {
      throw Error("vector length mismatch");
    }
    Vector r(a);
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] -= b[i];
    }
    return r;
  }

  Vector operator*(Scalar const& c, Vector const& v) {
    Vector r(v);
    for (auto& x : r) {
      x *= c;
    }
    return r;
  }

  void axpy(Vector& y, Scalar const& c, Vector const& x) {
    if (c.is_zero()) {
      return;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!x[i].is_zero()) {
        y[i].add_product(c, x[i]);
      }
    }
  }

  void axpy(Vector& y, Scalar const& c, SparseVector const& x) {
    if (c.is_zero()) {
      return;
    }
    for (auto const& [i, v] : x) {
      y[i].add_product(c, v);
    }
  }

  std::size_t leading_index(Vector const& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_zero()) {
        return i;
      }
    }
    return v.size();
  }

  bool canonical_less(Vector const& x, Vector const& y) {
    auto lx = leading_index(x), ly = leading_index(y);
    if (lx != ly) {
      return lx < ly;
    }
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                        [](Scalar const& a, Scalar const& b) {
                                          if (a.is_rational() && b.is_rational()) {
                                            return a.rational() < b.rational();
                                          }
                                          return a.residue() < b.residue();
                                        });
  }

  Vector kron(Vector const& x, Vector const& y) {
    Vector out(x.size() * y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].is_zero()) {
        continue;
      }
      for (std::size_t j = 0; j < y.size(); ++j) {
        if (!y[j].is_zero()) {
          out[i * y.size() + j] = x[i] * y[j];
        }
      }
    }
    return out;
  }

  Vector kron_apply(Matrix const& a, Matrix const& b, Vector const& v) {
    std::size_t ac = a.cols(), bc = b.cols(), ar = a.rows(), br = b.rows();
    if (v.size() != ac * bc) {
      throw Error("kron_apply: vector has wrong length");
    }
    // t = v reshaped (ac x bc) times b^T, then a times t.
    std::vector<Scalar> t(ac * br);
    for (std::size_t i = 0; i < ac; ++i) {
      for (std::size_t k = 0; k < bc; ++k) {
        auto const& w = v[i * bc + k];
        if (w.is_zero()) {
          continue;
        }
        for (std::size_t j = 0; j < br; ++j) {
          if (!b(j, k).is_zero()) {
            t[i * br + j].add_product(b(j, k), w);
          }
        }
      }
    }
    Vector out(ar * br);
    for (std::size_t i = 0; i < ac; ++i) {
      for (std::size_t j = 0; j < br; ++j) {
        auto const& w = t[i * br + j];
        if (w.is_zero()) {
          continue;
        }
        for (std::size_t r = 0; r < ar; ++r) {
          if (!a(r, i).is_zero()) {
            out[r * br + j].add_product(a(r, i), w);
          }
        }
      }
    }
    return out;
  }

  SparseVector to_sparse(Vector const& v) {
    SparseVector s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_zero()) {
        s.emplace_back(i, v[i]);
      }
    }
    return s;
  }

  Vector to_dense(SparseVector const& v, std::size_t n) {
    Vector d(n);
    for (auto const& [i, x] : v) {
      d.at(i) += x;
    }
    return d;
  }

  Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = 1;
    }
    return m;
  }

  Matrix Matrix::from_rows(std::vector<Vector> const& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      m.set_row(r, rows[r]);
    }
    return m;
  }

  Matrix Matrix::from_columns(std::vector<Vector> const& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      m.set_column(c, cols[c]);
    }
    return m;
  }

  Vector Matrix::row(std::size_t r) const {
    return Vector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }

  Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      v[r] = (*this)(r, c);
    }
    return v;
  }

  void Matrix::set_row(std::size_t r, Vector const& v) {
    if (v.size() != cols_) {
      throw Error("row length mismatch");
    }
    std::copy(v.begin(), v.end(), data_.begin() + r * cols_);
  }

  void Matrix::set_column(std::size_t c, Vector const& v) {
    if (v.size() != rows_) {
      throw Error("column length mismatch");
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      (*this)(r, c) = v[r];
    }
  }

  Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        t(c, r) = (*this)(r, c);
      }
    }
    return t;
  }

  Vector Matrix::apply(Vector const& v) const {
    if (v.size() != cols_) {
      throw Error("matrix-vector shape mismatch");
    }
    Vector out(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
      if (v[c].is_zero()) {
        continue;
      }
      for (std::size_t r = 0; r < rows_; ++r) {
        auto const& x = (*this)(r, c);
        if (!x.is_zero()) {
          out[r].add_product(x, v[c]);
        }
      }
    }
    return out;
  }

  Matrix Matrix::kronecker(Matrix const& o) const {
    Matrix k(rows_ * o.rows_, cols_ * o.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        auto const& x = (*this)(r, c);
        if (x.is_zero()) {
          continue;
        }
        for (std::size_t i = 0; i < o.rows_; ++i) {
          for (std::size_t j = 0; j < o.cols_; ++j) {
            k(r * o.rows_ + i, c * o.cols_ + j) = x * o(i, j);
          }
        }
      }
    }
    return k;
  }

  bool Matrix::is_zero() const {
    return quivcon::is_zero(data_);
  }

  bool Matrix::is_identity() const {
    return is_square() && *this == identity(rows_);
  }

  Matrix operator*(Matrix const& a, Matrix const& b) {
    if (a.cols_ != b.rows_) {
      throw Error("matrix product shape mismatch");
    }
    Matrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        auto const& x = a(i, k);
        if (x.is_zero()) {
          continue;
        }
        for (std::size_t j = 0; j < b.cols_; ++j) {
          auto const& y = b(k, j);
          if (!y.is_zero()) {
            p(i, j).add_product(x, y);
          }
        }
      }
    }
    return p;
  }

  Matrix operator+(Matrix const& a, Matrix const& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
      throw Error("matrix sum shape mismatch");
    }
    Matrix s(a);
    for (std::size_t i = 0; i < s.data_.size(); ++i) {
      s.data_[i] += b.data_[i];
    }
    return s;
  }

  Matrix operator-(Matrix const& a, Matrix const& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
      throw Error("matrix difference shape mismatch");
    }
    Matrix s(a);
    for (std::size_t i = 0; i < s.data_.size(); ++i) {
      s.data_[i] -= b.data_[i];
    }
    return s;
  }

  Matrix operator*(Scalar const& c, Matrix const& m) {
    Matrix s(m);
    for (auto& x : s.data_) {
      x *= c;
    }
    return s;
  }

  bool operator==(Matrix const& a, Matrix const& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::ostream& operator<<(std::ostream& os, Matrix const& m) {
    os << "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
      os << (r ? ", [" : "[");
      for (std::size_t c = 0; c < m.cols(); ++c) {
        os << (c ? ", " : "") << m(r, c);
      }
      os << "]";
    }
    return os << "]";
  }

  Matrix direct_sum(std::vector<Matrix> const& blocks) {
    std::size_t rows = 0, cols = 0;
    for (auto const& b : blocks) {
      rows += b.rows();
      cols += b.cols();
    }
    Matrix      m(rows, cols);
    std::size_t r0 = 0, c0 = 0;
    for (auto const& b : blocks) {
      for (std::size_t r = 0; r < b.rows(); ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) {
          m(r0 + r, c0 + c) = b(r, c);
        }
      }
      r0 += b.rows();
      c0 += b.cols();
    }
    return m;
  }

  SparseMatrix::SparseMatrix(Matrix const& dense)
      : rows_(dense.rows()), cols_(dense.cols()), columns_(dense.cols()) {
    for (std::size_t c = 0; c < cols_; ++c) {
      for (std::size_t r = 0; r < rows_; ++r) {
        if (!dense(r, c).is_zero()) {
          columns_[c].emplace_back(r, dense(r, c));
        }
      }
    }
  }

  void SparseMatrix::set_column(std::size_t c, SparseVector entries) {
    std::sort(entries.begin(), entries.end(), [](auto const& a, auto const& b) {
      return a.first < b.first;
    });
    SparseVector merged;
    for (auto& [i, x] : entries) {
      if (i >= rows_) {
        throw Error("sparse column entry out of range");
      }
      if (!merged.empty() && merged.back().first == i) {
        merged.back().second += x;
      } else {
        merged.emplace_back(i, std::move(x));
      }
    }
    std::erase_if(merged, [](auto const& e) { return e.second.is_zero(); });
    columns_.at(c) = std::move(merged);
  }

  Vector SparseMatrix::apply(Vector const& v) const {
    if (v.size() != cols_) {
      throw Error("sparse matrix-vector shape mismatch");
    }
    Vector out(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!v[c].is_zero()) {
        axpy(out, v[c], columns_[c]);
      }
    }
    return out;
  }

  Vector SparseMatrix::apply(SparseVector const& v) const {
    Vector out(rows_);
    for (auto const& [c, x] : v) {
      axpy(out, x, columns_.at(c));
    }
    return out;
  }

  Matrix SparseMatrix::to_dense() const {
    Matrix m(rows_, cols_);
    for (std::size_t c = 0; c < cols_; ++c) {
      for (auto const& [r, x] : columns_[c]) {
        m(r, c) = x;
      }
    }
    return m;
  }

  std::size_t SparseMatrix::nonzeros() const {
    std::size_t n = 0;
    for (auto const& c : columns_) {
      n += c.size();
    }
    return n;
  }

  bool operator==(SparseMatrix const& a, SparseMatrix const& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.columns_ == b.columns_;
  }

}  // namespace quivcon
