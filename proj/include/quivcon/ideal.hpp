#ifndef QUIVCON_IDEAL_HPP_
#define QUIVCON_IDEAL_HPP_

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "quivcon/path_vector.hpp"
#include "quivcon/quiver.hpp"
#include "quivcon/subspace.hpp"

namespace quivcon {

  // Admissible ideal I of kQ containing every path of length >= bound. Only
  // the part below the bound is stored, as one subspace per (source, target)
  // block of short paths.
  class AdmissibleIdeal {
   public:
    struct Block {
      // Coordinates of the block, in descending path order so that echelon
      // pivots fall on the longest paths.
      std::vector<Path>        paths;
      std::map<Path, std::size_t> index;
      Subspace                 ideal;
      // Paths not eliminated by the ideal, ascending.
      std::vector<Path> standard;
    };

    // Throws Error when a generator has a term of length <= 1, mixes
    // endpoints, or when bound < 2.
    AdmissibleIdeal(Quiver q, std::vector<PathVector> generators, std::size_t bound);

    Quiver const& quiver() const noexcept {
      return quiver_;
    }
    std::vector<PathVector> const& generators() const noexcept {
      return generators_;
    }
    std::size_t bound() const noexcept {
      return bound_;
    }
    Block const& block(std::size_t s, std::size_t t) const;

    Vector     to_block(PathVector const& v, std::size_t s, std::size_t t) const;
    PathVector from_block(Vector const& v, std::size_t s, std::size_t t) const;

    // Unique representative supported on standard paths.
    PathVector normal_form(PathVector const& v) const;
    bool       contains(PathVector const& v) const;

    // All standard paths in path order; a basis of kQ/I.
    std::vector<Path> standard_paths() const;
    std::size_t       ideal_dimension() const;

    // Vectors spanning I intersected with paths from s to t of length <= max_len.
    std::vector<PathVector> spanning_set(std::size_t s, std::size_t t, std::size_t max_len) const;

   private:
    Quiver                                            quiver_;
    std::vector<PathVector>                           generators_;
    std::size_t                                       bound_;
    std::map<std::pair<std::size_t, std::size_t>, Block> blocks_;
  };

  // (Q, I). Cheap to copy; the ideal data is shared and immutable.
  class BoundQuiver {
   public:
    BoundQuiver() = default;
    BoundQuiver(Quiver q, std::vector<PathVector> generators, std::size_t bound)
        : ideal_(std::make_shared<AdmissibleIdeal>(std::move(q), std::move(generators), bound)) {}

    // The truncated ideal rad^n.
    static BoundQuiver truncated(Quiver q, std::size_t bound) {
      return BoundQuiver(std::move(q), {}, bound);
    }

    Quiver const& quiver() const {
      return ideal_->quiver();
    }
    AdmissibleIdeal const& ideal() const {
      return *ideal_;
    }
    std::size_t bound() const {
      return ideal_->bound();
    }
    bool is_truncated() const {
      return ideal_->ideal_dimension() == 0;
    }

    // Same quiver and same ideal (as subspaces, same bound).
    friend bool operator==(BoundQuiver const& a, BoundQuiver const& b);

   private:
    std::shared_ptr<AdmissibleIdeal const> ideal_;
  };

}  // namespace quivcon

#endif  // QUIVCON_IDEAL_HPP_
