#include "quivcon/subspace.hpp"

#include "quivcon/error.hpp"
#include "quivcon/linalg.hpp"

namespace quivcon {

  namespace {
    // v -= c * row, where row vanishes before column `from`.
    void eliminate(Vector& v, Scalar const& c, Vector const& row, std::size_t from) {
      for (std::size_t j = from; j < row.size(); ++j) {
        if (!row[j].is_zero()) {
          v[j].subtract_product(c, row[j]);
        }
      }
    }
  }  // namespace

  Subspace Subspace::full(std::size_t n) {
    Subspace s(n);
    for (std::size_t i = 0; i < n; ++i) {
      s.rows_.push_back(unit_vector(n, i));
      s.pivots_.push_back(i);
    }
    return s;
  }

  Subspace Subspace::span(std::size_t n, std::vector<Vector> const& vectors) {
    SubspaceBuilder b(n);
    for (auto const& v : vectors) {
      b.add(v);
    }
    return b.finish();
  }

  Subspace Subspace::column_space(Matrix const& m) {
    SubspaceBuilder b(m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c) {
      b.add(m.column(c));
    }
    return b.finish();
  }

  void Subspace::check_ambient(std::size_t n) const {
    if (n != ambient_) {
      throw Error("subspace dimension mismatch: ambient " + std::to_string(ambient_)
                  + " vs " + std::to_string(n));
    }
  }

  std::vector<std::size_t> Subspace::free_columns() const {
    std::vector<std::size_t> out;
    std::size_t              k = 0;
    for (std::size_t c = 0; c < ambient_; ++c) {
      if (k < pivots_.size() && pivots_[k] == c) {
        ++k;
      } else {
        out.push_back(c);
      }
    }
    return out;
  }

  Vector Subspace::reduce(Vector v) const {
    check_ambient(v.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      std::size_t p = pivots_[i];
      if (!v[p].is_zero()) {
        Scalar c = v[p];
        eliminate(v, c, rows_[i], p);
      }
    }
    return v;
  }

  bool Subspace::contains(Vector const& v) const {
    return quivcon::is_zero(reduce(v));
  }

  bool Subspace::contains(Subspace const& other) const {
    check_ambient(other.ambient_);
    for (auto const& r : other.rows_) {
      if (!contains(r)) {
        return false;
      }
    }
    return true;
  }

  Vector Subspace::coordinates(Vector const& v) const {
    check_ambient(v.size());
    Vector c(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      c[i] = v[pivots_[i]];
    }
    return c;
  }

  Vector Subspace::from_coordinates(Vector const& c) const {
    if (c.size() != rows_.size()) {
      throw Error("coordinate vector has wrong length");
    }
    Vector v(ambient_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      axpy(v, c[i], rows_[i]);
    }
    return v;
  }

  Subspace Subspace::sum(Subspace const& other) const {
    check_ambient(other.ambient_);
    SubspaceBuilder b(ambient_);
    for (auto const& r : rows_) {
      b.add(r);
    }
    for (auto const& r : other.rows_) {
      b.add(r);
    }
    return b.finish();
  }

  Subspace Subspace::intersect(Subspace const& other) const {
    check_ambient(other.ambient_);
    // Solve sum a_i u_i = sum b_j w_j.
    std::size_t k = dim(), l = other.dim();
    Matrix      m(ambient_, k + l);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t r = 0; r < ambient_; ++r) {
        m(r, i) = rows_[i][r];
      }
    }
    for (std::size_t j = 0; j < l; ++j) {
      for (std::size_t r = 0; r < ambient_; ++r) {
        m(r, k + j) = -other.rows_[j][r];
      }
    }
    std::vector<Vector> gens;
    auto const ker = kernel(m);
    for (auto const& sol : ker.basis()) {
      Vector v(ambient_);
      for (std::size_t i = 0; i < k; ++i) {
        axpy(v, sol[i], rows_[i]);
      }
      gens.push_back(std::move(v));
    }
    return span(ambient_, gens);
  }

  Subspace Subspace::image(Matrix const& m) const {
    check_ambient(m.cols());
    SubspaceBuilder b(m.rows());
    for (auto const& r : rows_) {
      b.add(m.apply(r));
    }
    return b.finish();
  }

  bool operator==(Subspace const& a, Subspace const& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
  }

  void SubspaceBuilder::reduce(Vector& v) const {
    for (auto const& [p, row] : rows_) {
      if (!v[p].is_zero()) {
        Scalar c = v[p];
        eliminate(v, c, row, p);
      }
    }
  }

  bool SubspaceBuilder::contains(Vector v) const {
    if (v.size() != ambient_) {
      throw Error("subspace dimension mismatch");
    }
    reduce(v);
    return is_zero(v);
  }

  bool SubspaceBuilder::add(Vector v) {
    if (v.size() != ambient_) {
      throw Error("subspace dimension mismatch: ambient " + std::to_string(ambient_)
                  + " vs " + std::to_string(v.size()));
    }
    reduce(v);
    std::size_t lead = leading_index(v);
    if (lead == v.size()) {
      return false;
    }
    Scalar inv = v[lead].inverse();
    for (std::size_t j = lead; j < v.size(); ++j) {
      if (!v[j].is_zero()) {
        v[j] *= inv;
      }
    }
    rows_.emplace(lead, std::move(v));
    return true;
  }

  bool SubspaceBuilder::add(SparseVector const& v) {
    return add(to_dense(v, ambient_));
  }

  Subspace SubspaceBuilder::finish() const {
    std::vector<std::size_t> pivots;
    std::vector<Vector>      rows;
    for (auto const& [p, row] : rows_) {
      pivots.push_back(p);
      rows.push_back(row);
    }
    // Back substitution: clear each pivot column above its row.
    for (std::size_t i = rows.size(); i-- > 0;) {
      for (std::size_t j = 0; j < i; ++j) {
        if (!rows[j][pivots[i]].is_zero()) {
          Scalar c = rows[j][pivots[i]];
          eliminate(rows[j], c, rows[i], pivots[i]);
        }
      }
    }
    Subspace s(ambient_);
    s.rows_   = std::move(rows);
    s.pivots_ = std::move(pivots);
    return s;
  }

  QuotientSpace::QuotientSpace(Subspace big, Subspace small)
      : big_(std::move(big)), small_(std::move(small)) {
    if (!big_.contains(small_)) {
      throw Error("quotient: subspace is not contained in the ambient space");
    }
    SubspaceBuilder b(big_.ambient_dim());
    for (auto const& r : big_.basis()) {
      b.add(small_.reduce(r));
    }
    representatives_ = b.finish();
  }

  QuotientSpace QuotientSpace::from_maps(Matrix projection, Matrix lift) {
    if (projection.cols() != lift.rows() || projection.rows() != lift.cols()
        || !(projection * lift).is_identity()) {
      throw Error("quotient maps: projection * lift is not the identity");
    }
    QuotientSpace q;
    q.big_         = Subspace::full(projection.cols());
    q.explicit_    = true;
    q.projection_  = std::move(projection);
    q.lift_        = std::move(lift);
    return q;
  }

  Subspace const& QuotientSpace::small() const {
    if (explicit_) {
      throw Error("quotient given by explicit maps does not store its kernel");
    }
    return small_;
  }

  Vector QuotientSpace::project(Vector const& v) const {
    if (explicit_) {
      return projection_.apply(v);
    }
    return representatives_.coordinates(small_.reduce(v));
  }

  Vector QuotientSpace::lift(Vector const& c) const {
    if (explicit_) {
      return lift_.apply(c);
    }
    return representatives_.from_coordinates(c);
  }

  Matrix QuotientSpace::projection_matrix() const {
    if (explicit_) {
      return projection_;
    }
    std::size_t n = ambient_dim();
    Matrix      m(dim(), n);
    for (std::size_t c = 0; c < n; ++c) {
      auto col = project(unit_vector(n, c));
      m.set_column(c, col);
    }
    return m;
  }

  Matrix QuotientSpace::lift_matrix() const {
    if (explicit_) {
      return lift_;
    }
    return Matrix::from_rows(representatives_.basis(), ambient_dim()).transpose();
  }

}  // namespace quivcon
