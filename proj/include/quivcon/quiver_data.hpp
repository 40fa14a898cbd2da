#ifndef QUIVCON_QUIVER_DATA_HPP_
#define QUIVCON_QUIVER_DATA_HPP_

#include <vector>

#include "quivcon/algebra.hpp"

namespace quivcon {

  // A basic algebra with lifting maps delta1: A/rad -> A and
  // delta2: rad/rad^2 -> rad, both written in the canonical quotient
  // coordinates of `top` and `layer`.
  class AlgebraWithQuiverData {
   public:
    AlgebraWithQuiverData() = default;
    // Throws Error on misshapen matrices, NotBasic if A/rad does not split.
    AlgebraWithQuiverData(FiniteDimAlgebra algebra, Subspace rad, Matrix delta1, Matrix delta2);

    FiniteDimAlgebra const& algebra() const noexcept {
      return algebra_;
    }
    std::size_t dim() const noexcept {
      return algebra_.dim();
    }
    Subspace const& rad() const noexcept {
      return powers_.front();
    }
    Subspace const& rad2() const noexcept {
      return powers_.size() > 1 ? powers_[1] : powers_.front();
    }
    // rad, rad^2, ..., 0.
    std::vector<Subspace> const& radical_powers() const noexcept {
      return powers_;
    }
    std::size_t nilpotency_degree() const noexcept {
      return rad().is_zero() ? 1 : powers_.size();
    }
    QuotientSpace const& top() const noexcept {
      return top_;
    }
    QuotientSpace const& layer() const noexcept {
      return layer_;
    }
    Matrix const& delta1() const noexcept {
      return delta1_;
    }
    Matrix const& delta2() const noexcept {
      return delta2_;
    }
    // Primitive idempotents of A/rad in top coordinates, canonically sorted.
    std::vector<Vector> const& top_idempotents() const noexcept {
      return top_idempotents_;
    }
    // f_i = delta1(e_i).
    std::vector<Vector> const& idempotents() const noexcept {
      return idempotents_;
    }
    // Image of delta2, the chosen arrow representatives.
    Subspace arrow_space() const;

    friend bool operator==(AlgebraWithQuiverData const& a, AlgebraWithQuiverData const& b) {
      return a.algebra_ == b.algebra_ && a.rad() == b.rad() && a.delta1_ == b.delta1_
             && a.delta2_ == b.delta2_;
    }

   private:
    FiniteDimAlgebra      algebra_;
    std::vector<Subspace> powers_;
    QuotientSpace         top_;
    QuotientSpace         layer_;
    Matrix                delta1_;
    Matrix                delta2_;
    std::vector<Vector>   top_idempotents_;
    std::vector<Vector>   idempotents_;
  };

  // The three defining conditions, each reported separately.
  Verdict validate_quiver_data(AlgebraWithQuiverData const& awd);

  // Quiver data built from lifted primitive idempotents; delta2 sends a
  // basis of each f_a (rad/rad^2) f_b to f_a lift(z) f_b.
  AlgebraWithQuiverData canonical_quiver_data(FiniteDimAlgebra const& a, Subspace const& rad);
  // Same, with the radical from the trace form (characteristic 0).
  AlgebraWithQuiverData canonical_quiver_data(FiniteDimAlgebra const& a);

}  // namespace quivcon

#endif  // QUIVCON_QUIVER_DATA_HPP_
