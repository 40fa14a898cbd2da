#ifndef QUIVCON_GENERATORS_HPP_
#define QUIVCON_GENERATORS_HPP_

#include <memory>
#include <random>
#include <string>

#include "quivcon/connection.hpp"
#include "quivcon/ideal.hpp"

namespace quivcon {

  using Rng = std::mt19937_64;

  struct GeneratorBounds {
    std::size_t max_vertices   = 3;
    std::size_t max_edges      = 4;
    std::size_t max_nilpotency = 4;
    std::size_t max_gamma_dim  = 3;
  };

  std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi);
  // Small nonzero-biased integer in [-2, 2].
  Scalar small_scalar(Rng& rng);

  // Vertices "<prefix>1".."<prefix>n", edges "<prefix>a1"...
  Quiver random_quiver(Rng& rng, std::size_t vertices, std::size_t edges,
                       std::string const& prefix = "");
  Quiver random_quiver(Rng& rng, GeneratorBounds const& b, std::string const& prefix = "");

  // Up to `count` generators, each a random combination of paths of one
  // length in [2, n) sharing endpoints. With `monomial` each is one path.
  BoundQuiver random_bound_quiver(Rng& rng, Quiver q, std::size_t n, std::size_t count,
                                  bool monomial = false);

  // Random n x n integer matrix with small entries that is invertible.
  Matrix random_invertible(Rng& rng, std::size_t n);

  // Dimensions d_{g,h} <= max_dim with A_G d = d A_H, so U blocks are square.
  // Prefers a nonzero solution when one exists.
  std::map<VertexPair, std::size_t> random_balanced_dims(Rng& rng, Quiver const& G,
                                                         Quiver const& H, std::size_t max_dim);

  // Random valid connection with the given dimensions and random invertible
  // U blocks; labels "<prefix>1", "<prefix>2", ...
  QuiverConnection random_connection(Rng& rng, Quiver const& G, Quiver const& H,
                                     std::map<VertexPair, std::size_t> const& dims,
                                     std::string const& prefix);
  QuiverConnection random_connection(Rng& rng, Quiver const& G, Quiver const& H,
                                     std::size_t max_dim, std::string const& prefix);

  struct ConnectedInstance {
    BoundQuiver      source;
    BoundQuiver      target;
    QuiverConnection connection;
  };

  // Truncated ideals on both sides (same n).
  ConnectedInstance random_truncated_instance(Rng& rng, GeneratorBounds const& b);
  // An ideally connected connection from a bound quiver with a nonzero
  // ideal to itself.
  ConnectedInstance random_ideal_instance(Rng& rng, GeneratorBounds const& b);

  // Composable triple of ideally connected connections over truncated
  // bound quivers sharing one bound.
  struct ComposableTriple {
    std::vector<BoundQuiver>      objects;
    std::vector<QuiverConnection> arrows;
  };
  ComposableTriple random_composable(Rng& rng, GeneratorBounds const& b, std::size_t length);

  // Rejection sampling on top of the generators above: retries until every
  // path algebra kQ/I involved has dimension <= max_dim.
  std::size_t       quotient_dim(BoundQuiver const& bq);
  ConnectedInstance random_small_instance(Rng& rng, GeneratorBounds const& b, bool with_ideal,
                                          std::size_t max_dim);
  ComposableTriple  random_small_composable(Rng& rng, GeneratorBounds const& b, std::size_t length,
                                            std::size_t max_dim);

  // Random invertible block-diagonal matrix in c's gamma coordinates.
  Matrix random_block_invertible(Rng& rng, QuiverConnection const& c);
  // Random element of the space of 2-morphisms a -> b.
  ConnectionMorphism random_morphism(Rng& rng, std::shared_ptr<QuiverConnection const> a,
                                     std::shared_ptr<QuiverConnection const> b);

}  // namespace quivcon

#endif  // QUIVCON_GENERATORS_HPP_
