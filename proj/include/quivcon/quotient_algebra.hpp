#ifndef QUIVCON_QUOTIENT_ALGEBRA_HPP_
#define QUIVCON_QUOTIENT_ALGEBRA_HPP_

#include <map>
#include <optional>
#include <vector>

#include "quivcon/error.hpp"
#include "quivcon/ideal.hpp"
#include "quivcon/matrix.hpp"

namespace quivcon {

  // kQ/I with basis the standard paths in path order.
  class QuotientAlgebra {
   public:
    explicit QuotientAlgebra(BoundQuiver bq);

    BoundQuiver const& bound_quiver() const noexcept {
      return bq_;
    }
    Quiver const& quiver() const {
      return bq_.quiver();
    }
    std::size_t dim() const noexcept {
      return basis_.size();
    }
    std::vector<Path> const& basis() const noexcept {
      return basis_;
    }
    std::optional<std::size_t> index_of(Path const& p) const;

    // Coordinates of basis[i] * basis[j].
    SparseVector const& product(std::size_t i, std::size_t j) const {
      return table_[i * basis_.size() + j];
    }
    Vector     multiply(Vector const& x, Vector const& y) const;
    Vector     coordinates(PathVector const& v) const;
    PathVector element(Vector const& c) const;
    Vector     unit() const;

    Verdict check_associativity() const;

   private:
    BoundQuiver                 bq_;
    std::vector<Path>           basis_;
    std::map<Path, std::size_t> index_;
    std::vector<SparseVector>   table_;
  };

  // Span of the classes of paths of length >= k, which is rad^k.
  Subspace radical_power_basis(QuotientAlgebra const& qa, std::size_t k);

}  // namespace quivcon

#endif  // QUIVCON_QUOTIENT_ALGEBRA_HPP_
