#include "quivcon/path_vector.hpp"

#include <limits>

namespace quivcon {

  PathVector PathVector::of(Path p, Scalar c) {
    PathVector v;
    v.add(p, c);
    return v;
  }

  Scalar PathVector::coefficient(Path const& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void PathVector::add(Path const& p, Scalar const& c) {
    if (c.is_zero()) {
      return;
    }
    auto [it, inserted] = terms_.try_emplace(p, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) {
        terms_.erase(it);
      }
    }
  }

  PathVector& PathVector::operator+=(PathVector const& o) {
    for (auto const& [p, c] : o.terms_) {
      add(p, c);
    }
    return *this;
  }

  PathVector& PathVector::operator-=(PathVector const& o) {
    for (auto const& [p, c] : o.terms_) {
      add(p, -c);
    }
    return *this;
  }

  PathVector operator*(Scalar const& c, PathVector const& v) {
    PathVector out;
    if (c.is_zero()) {
      return out;
    }
    for (auto const& [p, x] : v.terms_) {
      out.terms_.emplace(p, c * x);
    }
    return out;
  }

  PathVector operator*(PathVector const& a, PathVector const& b) {
    PathVector out;
    for (auto const& [p, x] : a.terms_) {
      for (auto const& [q, y] : b.terms_) {
        if (auto r = compose(p, q)) {
          out.add(*r, x * y);
        }
      }
    }
    return out;
  }

  PathVector PathVector::truncated(std::size_t n) const {
    PathVector out;
    for (auto const& [p, c] : terms_) {
      if (p.length() < n) {
        out.terms_.emplace(p, c);
      }
    }
    return out;
  }

  std::size_t PathVector::min_length() const {
    std::size_t m = std::numeric_limits<std::size_t>::max();
    for (auto const& [p, c] : terms_) {
      m = std::min(m, p.length());
    }
    return m;
  }

  std::optional<std::pair<std::size_t, std::size_t>> PathVector::endpoints() const {
    std::optional<std::pair<std::size_t, std::size_t>> ends;
    for (auto const& [p, c] : terms_) {
      std::pair st{p.source(), p.target()};
      if (ends && *ends != st) {
        return std::nullopt;
      }
      ends = st;
    }
    return ends;
  }

  std::map<std::pair<std::size_t, std::size_t>, PathVector> PathVector::split_by_endpoints()
      const {
    std::map<std::pair<std::size_t, std::size_t>, PathVector> out;
    for (auto const& [p, c] : terms_) {
      out[{p.source(), p.target()}].terms_.emplace(p, c);
    }
    return out;
  }

  std::string PathVector::to_string(Quiver const& q) const {
    if (terms_.empty()) {
      return "0";
    }
    std::string s;
    for (auto const& [p, c] : terms_) {
      if (!s.empty()) {
        s += " + ";
      }
      if (!c.is_one()) {
        s += "(" + c.to_string() + ")";
      }
      s += q.name(p);
    }
    return s;
  }

}  // namespace quivcon
