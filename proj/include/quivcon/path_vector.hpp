#ifndef QUIVCON_PATH_VECTOR_HPP_
#define QUIVCON_PATH_VECTOR_HPP_

#include <map>
#include <optional>
#include <utility>

#include "quivcon/quiver.hpp"
#include "quivcon/scalar.hpp"

namespace quivcon {

  // Finite linear combination of paths. Zero coefficients are never stored.
  class PathVector {
   public:
    using Terms = std::map<Path, Scalar>;

    PathVector() = default;
    static PathVector of(Path p, Scalar c = Scalar(1));

    Terms const& terms() const noexcept {
      return terms_;
    }
    bool is_zero() const noexcept {
      return terms_.empty();
    }
    std::size_t size() const noexcept {
      return terms_.size();
    }
    Scalar coefficient(Path const& p) const;

    void add(Path const& p, Scalar const& c);

    PathVector& operator+=(PathVector const& o);
    PathVector& operator-=(PathVector const& o);
    friend PathVector operator+(PathVector a, PathVector const& b) {
      return a += b;
    }
    friend PathVector operator-(PathVector a, PathVector const& b) {
      return a -= b;
    }
    friend PathVector operator*(Scalar const& c, PathVector const& v);
    // Concatenation product extended bilinearly.
    friend PathVector operator*(PathVector const& a, PathVector const& b);
    friend bool       operator==(PathVector const& a, PathVector const& b) = default;

    // Terms of length < n only.
    PathVector truncated(std::size_t n) const;
    std::size_t min_length() const;
    // Common (source, target) of all terms, if any.
    std::optional<std::pair<std::size_t, std::size_t>> endpoints() const;
    std::map<std::pair<std::size_t, std::size_t>, PathVector> split_by_endpoints() const;

    std::string to_string(Quiver const& q) const;

   private:
    Terms terms_;
  };

}  // namespace quivcon

#endif  // QUIVCON_PATH_VECTOR_HPP_
