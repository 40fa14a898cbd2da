#include "quivcon/ideal.hpp"

#include <algorithm>
#include <deque>

#include "quivcon/error.hpp"

namespace quivcon {

  AdmissibleIdeal::AdmissibleIdeal(Quiver q, std::vector<PathVector> generators,
                                   std::size_t bound)
      : quiver_(std::move(q)), generators_(std::move(generators)), bound_(bound) {
    if (bound_ < 2) {
      throw Error("nilpotency bound must be at least 2");
    }
    for (auto const& g : generators_) {
      for (auto const& [p, c] : g.terms()) {
        for (auto e : p.edges()) {
          if (e >= quiver_.edge_count()) {
            throw Error("generator references an unknown edge");
          }
        }
        if (p.source() >= quiver_.vertex_count()) {
          throw Error("generator references an unknown vertex");
        }
        if (p.length() < 2) {
          throw Error("non-admissible generator: term " + quiver_.name(p)
                      + " has length " + std::to_string(p.length()));
        }
      }
      if (!g.is_zero() && !g.endpoints()) {
        throw Error("non-admissible generator: mixed endpoints in " + g.to_string(quiver_));
      }
    }

    std::size_t nv = quiver_.vertex_count();
    std::map<std::pair<std::size_t, std::size_t>, SubspaceBuilder> builders;
    for (std::size_t s = 0; s < nv; ++s) {
      for (std::size_t t = 0; t < nv; ++t) {
        Block b;
        b.paths = enumerate_paths(quiver_, bound_ - 1, s, t);
        std::reverse(b.paths.begin(), b.paths.end());
        for (std::size_t i = 0; i < b.paths.size(); ++i) {
          b.index.emplace(b.paths[i], i);
        }
        builders.emplace(std::pair{s, t}, SubspaceBuilder(b.paths.size()));
        blocks_.emplace(std::pair{s, t}, std::move(b));
      }
    }

    // Saturate by single arrows on either side; each newly independent
    // vector is queued once.
    std::deque<PathVector> work;
    auto adjoin = [&](PathVector const& v) {
      auto w = v.truncated(bound_);
      if (w.is_zero()) {
        return;
      }
      auto [s, t] = *w.endpoints();
      auto& b     = builders.at({s, t});
      if (b.add(to_block(w, s, t))) {
        work.push_back(std::move(w));
      }
    };
    for (auto const& g : generators_) {
      adjoin(g);
    }
    while (!work.empty()) {
      PathVector v = std::move(work.front());
      work.pop_front();
      auto [s, t] = *v.endpoints();
      for (auto e : quiver_.in_edges(s)) {
        adjoin(PathVector::of(quiver_.arrow(e)) * v);
      }
      for (auto e : quiver_.out_edges(t)) {
        adjoin(v * PathVector::of(quiver_.arrow(e)));
      }
    }

    for (auto& [st, b] : blocks_) {
      b.ideal = builders.at(st).finish();
      for (auto c : b.ideal.free_columns()) {
        b.standard.push_back(b.paths[c]);
      }
      std::reverse(b.standard.begin(), b.standard.end());
    }
  }

  AdmissibleIdeal::Block const& AdmissibleIdeal::block(std::size_t s, std::size_t t) const {
    auto it = blocks_.find({s, t});
    if (it == blocks_.end()) {
      throw Error("vertex index out of range");
    }
    return it->second;
  }

  Vector AdmissibleIdeal::to_block(PathVector const& v, std::size_t s, std::size_t t) const {
    auto const& b = block(s, t);
    Vector      out(b.paths.size());
    for (auto const& [p, c] : v.terms()) {
      if (p.length() >= bound_) {
        continue;
      }
      if (p.source() != s || p.target() != t) {
        throw Error("path vector does not lie in the requested block");
      }
      out[b.index.at(p)] = c;
    }
    return out;
  }

  PathVector AdmissibleIdeal::from_block(Vector const& v, std::size_t s, std::size_t t) const {
    auto const& b = block(s, t);
    PathVector  out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.add(b.paths[i], v[i]);
    }
    return out;
  }

  PathVector AdmissibleIdeal::normal_form(PathVector const& v) const {
    PathVector out;
    for (auto const& [st, part] : v.truncated(bound_).split_by_endpoints()) {
      auto const& b = block(st.first, st.second);
      out += from_block(b.ideal.reduce(to_block(part, st.first, st.second)), st.first,
                        st.second);
    }
    return out;
  }

  bool AdmissibleIdeal::contains(PathVector const& v) const {
    return normal_form(v).is_zero();
  }

  std::vector<Path> AdmissibleIdeal::standard_paths() const {
    std::vector<Path> out;
    for (auto const& [st, b] : blocks_) {
      out.insert(out.end(), b.standard.begin(), b.standard.end());
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t AdmissibleIdeal::ideal_dimension() const {
    std::size_t d = 0;
    for (auto const& [st, b] : blocks_) {
      d += b.ideal.dim();
    }
    return d;
  }

  std::vector<PathVector> AdmissibleIdeal::spanning_set(std::size_t s, std::size_t t,
                                                        std::size_t max_len) const {
    auto const&             b = block(s, t);
    std::vector<PathVector> out;
    for (auto const& r : b.ideal.basis()) {
      out.push_back(from_block(r, s, t));
    }
    for (auto const& p : enumerate_paths(quiver_, max_len, s, t)) {
      if (p.length() >= bound_) {
        out.push_back(PathVector::of(p));
      }
    }
    return out;
  }

  bool operator==(BoundQuiver const& a, BoundQuiver const& b) {
    if (a.ideal_ == b.ideal_) {
      return true;
    }
    if (!a.ideal_ || !b.ideal_) {
      return false;
    }
    if (!(a.quiver() == b.quiver()) || a.bound() != b.bound()) {
      return false;
    }
    std::size_t nv = a.quiver().vertex_count();
    for (std::size_t s = 0; s < nv; ++s) {
      for (std::size_t t = 0; t < nv; ++t) {
        if (!(a.ideal().block(s, t).ideal == b.ideal().block(s, t).ideal)) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace quivcon
