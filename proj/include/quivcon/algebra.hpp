#ifndef QUIVCON_ALGEBRA_HPP_
#define QUIVCON_ALGEBRA_HPP_

#include <string>
#include <tuple>
#include <vector>

#include "quivcon/error.hpp"
#include "quivcon/matrix.hpp"
#include "quivcon/quotient_algebra.hpp"
#include "quivcon/subspace.hpp"

namespace quivcon {

  struct StructureConstant {
    std::size_t i, j, k;
    Scalar      c;
  };

  // Finite-dimensional associative unital algebra given by structure
  // constants b_i b_j = sum_k c_ij^k b_k.
  class FiniteDimAlgebra {
   public:
    FiniteDimAlgebra() = default;
    // Throws Error on out-of-range indices or a unit of the wrong length.
    // Repeated triples are summed.
    FiniteDimAlgebra(Field field, std::vector<std::string> labels,
                     std::vector<StructureConstant> const& constants, Vector unit);
    // kQ/I with basis labels the path names.
    static FiniteDimAlgebra from_quotient(QuotientAlgebra const& qa,
                                          Field field = Field::rationals());

    Field const& field() const noexcept {
      return field_;
    }
    std::size_t dim() const noexcept {
      return labels_.size();
    }
    std::vector<std::string> const& labels() const noexcept {
      return labels_;
    }
    Vector const& unit() const noexcept {
      return unit_;
    }
    SparseVector const& product(std::size_t i, std::size_t j) const {
      return table_[i * labels_.size() + j];
    }
    std::vector<StructureConstant> structure_constants() const;

    Vector multiply(Vector const& x, Vector const& y) const;
    // Matrices of y -> x y and y -> y x.
    Matrix left_multiplication(Vector const& x) const;
    Matrix right_multiplication(Vector const& x) const;

    friend bool operator==(FiniteDimAlgebra const& a, FiniteDimAlgebra const& b) {
      return a.field_ == b.field_ && a.labels_ == b.labels_ && a.table_ == b.table_
             && a.unit_ == b.unit_;
    }

   private:
    Field                     field_;
    std::vector<std::string>  labels_;
    std::vector<SparseVector> table_;
    Vector                    unit_;
  };

  // Associativity on all basis triples and the two-sided unit law.
  Verdict check_algebra(FiniteDimAlgebra const& a);

  // span{s t : s in S, t in T}.
  Subspace product_space(FiniteDimAlgebra const& a, Subspace const& s, Subspace const& t);
  bool     is_two_sided_ideal(FiniteDimAlgebra const& a, Subspace const& s);

  // Kernel of the trace form (x, y) -> tr(L_{xy}). Characteristic 0 only;
  // throws UnsupportedField otherwise.
  Subspace radical(FiniteDimAlgebra const& a);

  // rad, rad^2, ..., ending with the first zero power. For a semisimple
  // algebra this is just [0]. Throws Error if the chain stalls above 0.
  std::vector<Subspace> radical_powers(FiniteDimAlgebra const& a, Subspace const& rad);

  // Products in A/rad, in the canonical coordinates of `top`.
  Vector top_multiply(FiniteDimAlgebra const& a, QuotientSpace const& top, Vector const& x,
                      Vector const& y);

  // Complete set of primitive orthogonal idempotents of A/rad in top
  // coordinates, sorted by first nonzero index, then lexicographically.
  // Throws NotBasic if A/rad is not commutative or not split.
  std::vector<Vector> top_primitive_idempotents(FiniteDimAlgebra const& a,
                                                QuotientSpace const& top);

  // Lifts of those idempotents to orthogonal idempotents of A summing to 1.
  std::vector<Vector> find_primitive_idempotents(FiniteDimAlgebra const& a, Subspace const& rad);
  std::vector<Vector> lift_idempotents(FiniteDimAlgebra const& a, QuotientSpace const& top,
                                       std::vector<Vector> const& top_idempotents);

}  // namespace quivcon

#endif  // QUIVCON_ALGEBRA_HPP_
