#ifndef QUIVCON_EQUIVALENCE_HPP_
#define QUIVCON_EQUIVALENCE_HPP_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quivcon/bimodule.hpp"
#include "quivcon/connection.hpp"
#include "quivcon/gabriel.hpp"

namespace quivcon {

  // kQ/I with data sending vertex classes to trivial paths and arrow classes
  // to arrows. Basis index i is the i-th standard path.
  struct ObjectImage {
    BoundQuiver                            bound_quiver;
    std::shared_ptr<QuotientAlgebra const> quotient;
    AlgebraPtr                             algebra;
  };
  ObjectImage p_object(BoundQuiver const& bq, Field field = Field::rationals());

  // The right kQ_H/I_H module spanned by gamma p (p a standard H-path from
  // the end of gamma), with the left action through transport. Basis is
  // ordered by the index of p among the standard paths, then by gamma.
  struct ConnectionImage {
    std::shared_ptr<QuiverConnection const>           connection;
    std::shared_ptr<QuotientAlgebra const>            source, target;
    BimodulePtr                                       bimodule;
    std::vector<std::pair<std::size_t, std::size_t>> basis;  // (gamma, standard path index)
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;

    // Coordinates of gamma (x) w for an H-path vector w.
    Vector element(std::size_t gamma, PathVector const& w) const;
    std::size_t gamma_index(std::size_t gamma) const;  // position of gamma e_h
  };
  // Throws Error if c is not ideally connected between the two objects or
  // the result fails any of its checks.
  ConnectionImage p_connection(std::shared_ptr<QuiverConnection const> c, ObjectImage const& source,
                               ObjectImage const& target);

  // Acts on gamma labels and fixes the H-path parts.
  BimoduleMorphism p_morphism(ConnectionMorphism const& f, ConnectionImage const& source,
                              ConnectionImage const& target);

  // P(Gamma (x) Delta) -> P(Gamma) (x) P(Delta).
  struct MuIso {
    ConnectionImage  first, second;
    ConnectionImage  composite;
    TensorProduct    tensor;
    BimoduleMorphism mu;
    BimoduleMorphism mu_inverse;
  };
  MuIso mu(ConnectionImage const& gamma, ConnectionImage const& delta, ObjectImage const& first,
           ObjectImage const& middle, ObjectImage const& last);
  // Mutually inverse and both intertwiners.
  Verdict check_mu(MuIso const& m);

  // P(f) (x) P(g) o mu = mu' o P(f (x) g) for f: Gamma -> Gamma', g: Delta -> Delta'.
  Verdict check_mu_naturality(ConnectionMorphism const& f, ConnectionMorphism const& g,
                              MuIso const& source, MuIso const& target);

  struct RecoveredConnection {
    QuiverConnection    connection;
    std::vector<Vector> gammas;  // element of M behind each gamma
  };
  // Gamma_{i,k} = canonical basis of e_i delta1(M/rad M) f_k and U solved
  // from the arrow actions. Quivers default to the Gabriel quivers of the
  // two algebras; supplied quivers must match them vertex for vertex and
  // arrow for arrow. Throws Error with the failing system on inputs outside
  // the essential image.
  RecoveredConnection connection_from_bimodule(BimoduleWithQuiverData const& m,
                                               std::optional<Quiver> const& source = std::nullopt,
                                               std::optional<Quiver> const& target = std::nullopt);

  // c -> connection_from_bimodule(P(c)), gamma -> its coordinates.
  ConnectionMorphism roundtrip_connection(std::shared_ptr<QuiverConnection const> c,
                                          ObjectImage const& source, ObjectImage const& target);

  struct AlgebraIso {
    GabrielPresentation presentation;
    ObjectImage         image;
    Matrix              phi;  // P(Q_A, I_A) -> A
    Matrix              phi_inverse;
    Verdict             homomorphism;
    Verdict             delta1_square;
    Verdict             delta2_square;  // diagnostic only
  };
  AlgebraIso roundtrip_algebra(AlgebraWithQuiverData const& awd);

  // For P_object then gabriel_presentation: vertex count, arrow counts per
  // pair, equal ideals after the induced change of arrows (compared on all
  // paths up to the larger bound), and equal dimensions.
  Verdict compare_presentation(BoundQuiver const& original, GabrielPresentation const& gp,
                               QuotientAlgebra const& qa);

}  // namespace quivcon

#endif  // QUIVCON_EQUIVALENCE_HPP_
