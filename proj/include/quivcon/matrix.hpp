#ifndef QUIVCON_MATRIX_HPP_
#define QUIVCON_MATRIX_HPP_

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "quivcon/scalar.hpp"

namespace quivcon {

  using Vector = std::vector<Scalar>;

  // (index, nonzero coefficient) pairs sorted by index.
  using SparseVector = std::vector<std::pair<std::size_t, Scalar>>;

  Vector zero_vector(std::size_t n);
  Vector unit_vector(std::size_t n, std::size_t i);
  bool   is_zero(Vector const& v);
  Vector operator+(Vector const& a, Vector const& b);
  Vector operator-(Vector const& a, Vector const& b);
  Vector operator*(Scalar const& c, Vector const& v);
  // y += c * x
  void axpy(Vector& y, Scalar const& c, Vector const& x);
  // Index of the first nonzero entry, or v.size() for the zero vector.
  std::size_t leading_index(Vector const& v);
  // Leading index first, then entries lexicographically (rationals by
  // value, GF(p) by residue). Used to fix canonical basis orders.
  bool canonical_less(Vector const& x, Vector const& y);

  // x (x) y with index i * y.size() + j.
  Vector kron(Vector const& x, Vector const& y);

  SparseVector to_sparse(Vector const& v);
  Vector       to_dense(SparseVector const& v, std::size_t n);

  // Dense row-major matrix. A linear map V -> W is stored as a
  // dim W x dim V matrix acting on column vectors.
  class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix from_rows(std::vector<Vector> const& rows, std::size_t cols);
    static Matrix from_columns(std::vector<Vector> const& cols, std::size_t rows);

    std::size_t rows() const noexcept {
      return rows_;
    }
    std::size_t cols() const noexcept {
      return cols_;
    }
    bool is_square() const noexcept {
      return rows_ == cols_;
    }

    Scalar& operator()(std::size_t r, std::size_t c) {
      return data_[r * cols_ + c];
    }
    Scalar const& operator()(std::size_t r, std::size_t c) const {
      return data_[r * cols_ + c];
    }

    Vector row(std::size_t r) const;
    Vector column(std::size_t c) const;
    void   set_row(std::size_t r, Vector const& v);
    void   set_column(std::size_t c, Vector const& v);

    Matrix transpose() const;
    Vector apply(Vector const& v) const;
    Matrix kronecker(Matrix const& other) const;

    bool is_zero() const;
    bool is_identity() const;

    friend Matrix operator*(Matrix const& a, Matrix const& b);
    friend Matrix operator+(Matrix const& a, Matrix const& b);
    friend Matrix operator-(Matrix const& a, Matrix const& b);
    friend Matrix operator*(Scalar const& c, Matrix const& m);
    friend bool   operator==(Matrix const& a, Matrix const& b);

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vector      data_;
  };

  // (a (x) b) v without forming the Kronecker matrix.
  Vector kron_apply(Matrix const& a, Matrix const& b, Vector const& v);

  std::ostream& operator<<(std::ostream& os, Matrix const& m);

  // Block-diagonal assembly.
  Matrix direct_sum(std::vector<Matrix> const& blocks);

  // Column-compressed sparse matrix, used for module actions where most
  // entries vanish.
  class SparseMatrix {
   public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), columns_(cols) {}
    explicit SparseMatrix(Matrix const& dense);

    std::size_t rows() const noexcept {
      return rows_;
    }
    std::size_t cols() const noexcept {
      return cols_;
    }

    SparseVector const& column(std::size_t c) const {
      return columns_[c];
    }
    // Replaces column c; zero entries are dropped.
    void set_column(std::size_t c, SparseVector entries);

    Vector       apply(Vector const& v) const;
    Vector       apply(SparseVector const& v) const;
    Matrix       to_dense() const;
    std::size_t  nonzeros() const;

    friend bool operator==(SparseMatrix const& a, SparseMatrix const& b);

   private:
    std::size_t               rows_ = 0;
    std::size_t               cols_ = 0;
    std::vector<SparseVector> columns_;
  };

  // y += c * x for a sparse x.
  void axpy(Vector& y, Scalar const& c, SparseVector const& x);

}  // namespace quivcon

#endif  // QUIVCON_MATRIX_HPP_
