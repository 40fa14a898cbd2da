#ifndef QUIVCON_CONNECTION_HPP_
#define QUIVCON_CONNECTION_HPP_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "quivcon/error.hpp"
#include "quivcon/ideal.hpp"
#include "quivcon/matrix.hpp"
#include "quivcon/path_vector.hpp"

namespace quivcon {

  using VertexPair = std::pair<std::size_t, std::size_t>;

  // A G,H connection: spaces Gamma_{g,h} with named basis vectors and
  // isomorphisms U_{g,h} from (+)_{g'} E^G_{g,g'} (x) Gamma_{g',h} to
  // (+)_{h'} Gamma_{g,h'} (x) E^H_{h',h}.
  //
  // Gamma basis vectors get a global index ordered by (g, h, declared order).
  // The domain of U_{g,h} has basis (edge, gamma) sorted by edge index, then
  // gamma index; the codomain has basis (gamma, edge) sorted the same way.
  class QuiverConnection {
   public:
    struct Gamma {
      std::string label;
      std::size_t g;
      std::size_t h;
    };
    // (edge, gamma) for domains, (gamma, edge) for codomains.
    using BasisPair = std::pair<std::size_t, std::size_t>;

    QuiverConnection() = default;
    // Blocks absent from `u` are taken to be zero matrices of the right
    // shape. Throws Error on unknown vertices or duplicate labels; shape and
    // invertibility problems are left for validate().
    QuiverConnection(Quiver G, Quiver H, std::map<VertexPair, std::vector<std::string>> gamma,
                     std::map<VertexPair, Matrix> u);

    Quiver const& source() const noexcept {
      return G_;
    }
    Quiver const& target() const noexcept {
      return H_;
    }

    std::size_t gamma_count() const noexcept {
      return gammas_.size();
    }
    Gamma const& gamma(std::size_t i) const {
      return gammas_.at(i);
    }
    std::vector<Gamma> const& gammas() const noexcept {
      return gammas_;
    }
    // Global indices of the basis of Gamma_{g,h}, in declared order.
    std::vector<std::size_t> const& gamma_block(std::size_t g, std::size_t h) const;
    std::size_t                     gamma_dim(std::size_t g, std::size_t h) const {
      return gamma_block(g, h).size();
    }
    std::optional<std::size_t> find_gamma(std::string const& label) const;
    // Position of a gamma inside its block.
    std::size_t local_index(std::size_t gamma) const {
      return local_.at(gamma);
    }

    std::vector<BasisPair> const& domain_basis(std::size_t g, std::size_t h) const;
    std::vector<BasisPair> const& codomain_basis(std::size_t g, std::size_t h) const;
    std::size_t domain_index(std::size_t g, std::size_t h, BasisPair const& b) const;
    std::size_t codomain_index(std::size_t g, std::size_t h, BasisPair const& b) const;

    Matrix const& U(std::size_t g, std::size_t h) const;
    // Throws Error if the block is singular or misshapen.
    Matrix const& U_inverse(std::size_t g, std::size_t h) const;

    // Dimension balance and invertibility of every block.
    Verdict validate() const;
    bool    is_valid() const {
      return validate().ok;
    }

    // Image of edge (x) gamma under U as (gamma', edge', coefficient).
    struct Term {
      std::size_t gamma;
      std::size_t edge;
      Scalar      coeff;
    };
    std::vector<Term> const& forward(std::size_t edge, std::size_t gamma) const;
    // Image of gamma (x) edge under U^{-1} as (edge', gamma', coefficient).
    std::vector<Term> const& backward(std::size_t gamma, std::size_t edge) const;

    std::map<VertexPair, std::vector<std::string>> gamma_labels() const;

    friend bool operator==(QuiverConnection const& a, QuiverConnection const& b);

   private:
    struct Block {
      std::vector<std::size_t>                    gammas;
      std::vector<BasisPair>                      dom;
      std::vector<BasisPair>                      cod;
      std::map<BasisPair, std::size_t>            dom_index;
      std::map<BasisPair, std::size_t>            cod_index;
      Matrix                                      u;
      std::optional<Matrix>                       u_inv;
    };
    Block const& block(std::size_t g, std::size_t h) const;

    Quiver                                    G_;
    Quiver                                    H_;
    std::vector<Gamma>                        gammas_;
    std::vector<std::size_t>                  local_;
    std::map<std::string, std::size_t>        label_index_;
    std::map<VertexPair, Block>               blocks_;
    std::map<BasisPair, std::vector<Term>>    forward_;
    std::map<BasisPair, std::vector<Term>>    backward_;
  };

  // A path of type (m, n): G-path, then a gamma, then an H-path.
  struct MixedPath {
    Path        g_path;
    std::size_t gamma;
    Path        h_path;

    friend auto operator<=>(MixedPath const&, MixedPath const&) = default;
    friend bool operator==(MixedPath const&, MixedPath const&) = default;
  };

  class MixedPathVector {
   public:
    using Terms = std::map<MixedPath, Scalar>;

    MixedPathVector() = default;
    static MixedPathVector of(MixedPath p, Scalar c = Scalar(1));

    Terms const& terms() const noexcept {
      return terms_;
    }
    bool is_zero() const noexcept {
      return terms_.empty();
    }
    void add(MixedPath const& p, Scalar const& c);

    MixedPathVector& operator+=(MixedPathVector const& o);
    friend MixedPathVector operator+(MixedPathVector a, MixedPathVector const& b) {
      return a += b;
    }
    friend MixedPathVector operator*(Scalar const& c, MixedPathVector const& v);
    friend bool operator==(MixedPathVector const&, MixedPathVector const&) = default;

    // Group by gamma: the coefficient of gamma as a G-path (resp. H-path)
    // vector. Requires the other side to be trivial.
    std::map<std::size_t, PathVector> h_components() const;
    std::map<std::size_t, PathVector> g_components() const;

    std::string to_string(QuiverConnection const& c) const;

   private:
    Terms terms_;
  };

  // Builds p (x) gamma (x) q for compatible endpoints (throws otherwise).
  MixedPath mixed_path(QuiverConnection const& c, Path const& p, std::size_t gamma, Path const& q);
  // v (x) gamma for a G-path vector v ending where gamma starts.
  MixedPathVector left_tensor(QuiverConnection const& c, PathVector const& v, std::size_t gamma);
  // gamma (x) w for an H-path vector w starting where gamma ends.
  MixedPathVector right_tensor(QuiverConnection const& c, std::size_t gamma, PathVector const& w);

  // Moves every G-edge across, last edge first; H-parts are carried along.
  MixedPathVector transport(QuiverConnection const& c, MixedPathVector const& v);
  // Moves every H-edge back, first edge first; G-parts are carried along.
  MixedPathVector inverse_transport(QuiverConnection const& c, MixedPathVector const& v);

  QuiverConnection identity_connection(Quiver const& q);

  // Gamma (x) Delta, basis (gamma, delta) with labels "(g,d)" ordered by
  // block, then middle vertex, then gamma, then delta.
  QuiverConnection compose_connections(QuiverConnection const& first,
                                       QuiverConnection const& second);
  // The (gamma, delta) pair behind each composite basis vector.
  std::vector<std::pair<std::size_t, std::size_t>> composite_basis(QuiverConnection const& first,
                                                                   QuiverConnection const& second);

  // A family of maps f_{g,h}: Gamma_{g,h} -> Delta_{g,h}, stored as one
  // block-diagonal matrix in global gamma coordinates.
  class ConnectionMorphism {
   public:
    ConnectionMorphism(std::shared_ptr<QuiverConnection const> source,
                       std::shared_ptr<QuiverConnection const> target, Matrix global);
    static ConnectionMorphism identity(std::shared_ptr<QuiverConnection const> c);

    QuiverConnection const& source() const {
      return *source_;
    }
    QuiverConnection const& target() const {
      return *target_;
    }
    std::shared_ptr<QuiverConnection const> const& source_ptr() const noexcept {
      return source_;
    }
    std::shared_ptr<QuiverConnection const> const& target_ptr() const noexcept {
      return target_;
    }
    Matrix const& matrix() const noexcept {
      return global_;
    }
    Matrix block(std::size_t g, std::size_t h) const;
    bool   is_invertible() const;

   private:
    std::shared_ptr<QuiverConnection const> source_;
    std::shared_ptr<QuiverConnection const> target_;
    Matrix                                  global_;
  };

  // The connection T.c.T^{-1} for a block-diagonal invertible T (global gamma
  // coordinates); T is then a 2-isomorphism c -> result. Labels get `suffix`.
  QuiverConnection conjugate_connection(QuiverConnection const& c, Matrix const& T,
                                        std::string const& suffix);

  // The intertwining law blockwise; on failure names (g, g', h, h').
  Verdict check_morphism(ConnectionMorphism const& f);

  ConnectionMorphism compose_vertical(ConnectionMorphism const& f, ConnectionMorphism const& g);
  // f (x) g between the composites of the sources and of the targets.
  ConnectionMorphism compose_horizontal(ConnectionMorphism const& f, ConnectionMorphism const& g);

  // ((a, b), c) -> (a, (b, c)).
  ConnectionMorphism associator(QuiverConnection const& a, QuiverConnection const& b,
                                QuiverConnection const& c);
  // Id (x) c -> c and c (x) Id -> c.
  ConnectionMorphism left_unitor(QuiverConnection const& c);
  ConnectionMorphism right_unitor(QuiverConnection const& c);

  // Basis of all 2-morphisms a -> b.
  std::vector<ConnectionMorphism> morphism_space(std::shared_ptr<QuiverConnection const> a,
                                                 std::shared_ptr<QuiverConnection const> b);

  // Transport carries I_G (x) Gamma into Gamma (x) I_H and the inverse
  // carries Gamma (x) I_H into I_G (x) Gamma. Tested on the generators and
  // on the paths of length exactly n, which generate the rest.
  Verdict check_ideally_connected(QuiverConnection const& c, BoundQuiver const& bg,
                                  BoundQuiver const& bh);

}  // namespace quivcon

#endif  // QUIVCON_CONNECTION_HPP_
