#ifndef QUIVCON_GABRIEL_HPP_
#define QUIVCON_GABRIEL_HPP_

#include <vector>

#include "quivcon/ideal.hpp"
#include "quivcon/quiver_data.hpp"

namespace quivcon {

  // Bound quiver (Q_A, I_A) of a basic algebra with quiver data, together
  // with the surjection rho: kQ_A -> A on paths of length < bound.
  struct GabrielPresentation {
    BoundQuiver         bound_quiver;
    std::vector<Vector> vertex_images;  // f_i, vertex v<i+1>
    std::vector<Vector> arrow_images;   // arrow a<j+1>
    std::vector<Path>   domain;         // sorted paths of length < bound
    Matrix              rho;            // dim A x domain.size()

    // rho on an arbitrary combination of paths; paths at or past the
    // bound go to zero.
    Vector apply(PathVector const& v) const;
  };

  // Vertices v1..vn follow the sorted idempotents; arrows a1.. are rref
  // bases of each f_a delta2(rad/rad^2) f_b, ordered by first nonzero
  // coordinate then lexicographically. The bound is max(nilpotency degree, 2).
  // Throws Error if the data is invalid or rho fails to be onto.
  GabrielPresentation gabriel_presentation(AlgebraWithQuiverData const& awd);

  // rho restricted to the standard paths of I_A must be a bijection onto A
  // that respects products and the unit.
  Verdict check_presentation(GabrielPresentation const& gp, AlgebraWithQuiverData const& awd);

}  // namespace quivcon

#endif  // QUIVCON_GABRIEL_HPP_
