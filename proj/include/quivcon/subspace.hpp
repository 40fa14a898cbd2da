#ifndef QUIVCON_SUBSPACE_HPP_
#define QUIVCON_SUBSPACE_HPP_

#include <cstddef>
#include <map>
#include <vector>

#include "quivcon/matrix.hpp"

namespace quivcon {

  // A linear subspace of k^n held as the rows of its reduced row-echelon
  // basis. The representation is canonical, so equality is row equality.
  class Subspace {
   public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

    static Subspace zero(std::size_t n) {
      return Subspace(n);
    }
    static Subspace full(std::size_t n);
    static Subspace span(std::size_t n, std::vector<Vector> const& vectors);
    static Subspace column_space(Matrix const& m);

    std::size_t ambient_dim() const noexcept {
      return ambient_;
    }
    std::size_t dim() const noexcept {
      return rows_.size();
    }
    bool is_zero() const noexcept {
      return rows_.empty();
    }

    std::vector<Vector> const& basis() const noexcept {
      return rows_;
    }
    std::vector<std::size_t> const& pivots() const noexcept {
      return pivots_;
    }
    // Complement of the pivots in [0, ambient_dim).
    std::vector<std::size_t> free_columns() const;

    // v minus its component along the basis: the unique representative of
    // v + S vanishing on every pivot column.
    Vector reduce(Vector v) const;
    bool   contains(Vector const& v) const;
    bool   contains(Subspace const& other) const;
    // Coefficients of v in the basis; v must lie in the subspace.
    Vector coordinates(Vector const& v) const;
    Vector from_coordinates(Vector const& c) const;

    Subspace sum(Subspace const& other) const;
    Subspace intersect(Subspace const& other) const;
    // Image of the subspace under a linear map.
    Subspace image(Matrix const& m) const;

    friend bool operator==(Subspace const& a, Subspace const& b);

   private:
    friend class SubspaceBuilder;
    void check_ambient(std::size_t n) const;

    std::size_t              ambient_ = 0;
    std::vector<Vector>      rows_;
    std::vector<std::size_t> pivots_;
  };

  // Incremental span construction; keeps an echelon basis and finishes into
  // reduced form once.
  class SubspaceBuilder {
   public:
    explicit SubspaceBuilder(std::size_t ambient_dim) : ambient_(ambient_dim) {}

    // Returns true when v enlarged the span.
    bool add(Vector v);
    bool add(SparseVector const& v);

    std::size_t dim() const noexcept {
      return rows_.size();
    }
    bool contains(Vector v) const;
    // Reduces v against the current echelon basis in place.
    void reduce(Vector& v) const;

    Subspace finish() const;

   private:
    std::size_t                   ambient_;
    std::map<std::size_t, Vector> rows_;  // keyed by pivot column
  };

  // The quotient big / small (small contained in big) with canonical
  // coordinates: the quotient is identified with the span of the reduced
  // representatives small.reduce(big), whose echelon basis gives the
  // coordinate axes.
  class QuotientSpace {
   public:
    QuotientSpace() = default;
    QuotientSpace(Subspace big, Subspace small);
    // The quotient of the whole ambient space by ker(projection), given
    // directly by maps with projection * lift = identity. big() is the full
    // space; small() is not materialized and throws.
    static QuotientSpace from_maps(Matrix projection, Matrix lift);

    std::size_t dim() const noexcept {
      return explicit_ ? projection_.rows() : representatives_.dim();
    }
    std::size_t ambient_dim() const noexcept {
      return big_.ambient_dim();
    }
    Subspace const& big() const noexcept {
      return big_;
    }
    Subspace const& small() const;

    // Coordinates of v + small; v must lie in big.
    Vector project(Vector const& v) const;
    // The canonical representative in big of the class with coordinates c.
    Vector lift(Vector const& c) const;

    // Matrix of project restricted to an arbitrary spanning family.
    Matrix projection_matrix() const;  // dim x ambient_dim, valid on big
    Matrix lift_matrix() const;        // ambient_dim x dim

   private:
    Subspace big_;
    Subspace small_;
    Subspace representatives_;
    bool     explicit_ = false;
    Matrix   projection_, lift_;
  };

}  // namespace quivcon

#endif  // QUIVCON_SUBSPACE_HPP_
