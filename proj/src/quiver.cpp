#include "quivcon/quiver.hpp"

#include <algorithm>

#include "quivcon/error.hpp"

namespace quivcon {

  std::strong_ordering operator<=>(Path const& a, Path const& b) {
    if (auto c = a.length() <=> b.length(); c != 0) {
      return c;
    }
    if (a.is_trivial()) {
      return a.source_ <=> b.source_;
    }
    return a.edges_ <=> b.edges_;
  }

  std::optional<Path> compose(Path const& p, Path const& q) {
    if (p.target_ != q.source_) {
      return std::nullopt;
    }
    Path r;
    r.source_ = p.source_;
    r.target_ = q.target_;
    r.edges_  = p.edges_;
    r.edges_.insert(r.edges_.end(), q.edges_.begin(), q.edges_.end());
    return r;
  }

  Path Path::slice(Quiver const& q, std::size_t from, std::size_t to) const {
    if (from > to || to > edges_.size()) {
      throw Error("path slice out of range");
    }
    if (from == to) {
      std::size_t v = from == 0 ? source_ : q.edge(edges_[from - 1]).target;
      return Path::trivial(v);
    }
    return q.path(std::vector<std::size_t>(edges_.begin() + from, edges_.begin() + to));
  }

  Quiver::Quiver(std::vector<std::string> vertices, std::vector<EdgeSpec> const& edges)
      : vertices_(std::move(vertices)), out_(vertices_.size()), in_(vertices_.size()) {
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
      if (!vertex_index_.emplace(vertices_[v], v).second) {
        throw Error("duplicate vertex id \"" + vertices_[v] + "\"");
      }
    }
    for (auto const& spec : edges) {
      if (edge_index_.contains(spec.id)) {
        throw Error("duplicate edge id \"" + spec.id + "\"");
      }
      auto s = find_vertex(spec.source);
      auto t = find_vertex(spec.target);
      if (!s || !t) {
        throw Error("edge \"" + spec.id + "\" has an undeclared endpoint");
      }
      std::size_t e = edges_.size();
      edge_index_.emplace(spec.id, e);
      edges_.push_back({spec.id, *s, *t});
      out_[*s].push_back(e);
      in_[*t].push_back(e);
    }
  }

  std::optional<std::size_t> Quiver::find_vertex(std::string const& name) const {
    auto it = vertex_index_.find(name);
    if (it == vertex_index_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  std::optional<std::size_t> Quiver::find_edge(std::string const& id) const {
    auto it = edge_index_.find(id);
    if (it == edge_index_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  std::size_t Quiver::vertex_index(std::string const& name) const {
    auto v = find_vertex(name);
    if (!v) {
      throw Error("unknown vertex \"" + name + "\"");
    }
    return *v;
  }

  std::size_t Quiver::edge_index(std::string const& id) const {
    auto e = find_edge(id);
    if (!e) {
      throw Error("unknown edge \"" + id + "\"");
    }
    return *e;
  }

  std::vector<std::size_t> Quiver::edges_between(std::size_t a, std::size_t b) const {
    std::vector<std::size_t> out;
    for (auto e : out_.at(a)) {
      if (edges_[e].target == b) {
        out.push_back(e);
      }
    }
    return out;
  }

  std::size_t Quiver::edge_count_between(std::size_t a, std::size_t b) const {
    return edges_between(a, b).size();
  }

  Path Quiver::trivial_path(std::size_t v) const {
    if (v >= vertices_.size()) {
      throw Error("vertex index out of range");
    }
    return Path::trivial(v);
  }

  Path Quiver::arrow(std::size_t e) const {
    return path(std::vector<std::size_t>{e});
  }

  Path Quiver::path(std::vector<std::size_t> const& edges) const {
    if (edges.empty()) {
      throw Error("a nontrivial path needs at least one edge");
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (edges[i] >= edges_.size()) {
        throw Error("path references an unknown edge");
      }
      if (i > 0 && edges_[edges[i - 1]].target != edges_[edges[i]].source) {
        throw Error("edges " + edges_[edges[i - 1]].id + " and " + edges_[edges[i]].id
                    + " do not compose");
      }
    }
    Path p;
    p.source_ = edges_[edges.front()].source;
    p.target_ = edges_[edges.back()].target;
    p.edges_  = edges;
    return p;
  }

  Path Quiver::path(std::vector<std::string> const& edge_ids) const {
    std::vector<std::size_t> idx;
    idx.reserve(edge_ids.size());
    for (auto const& id : edge_ids) {
      idx.push_back(edge_index(id));
    }
    return path(idx);
  }

  std::string Quiver::name(Path const& p) const {
    if (p.is_trivial()) {
      return "e_" + vertices_.at(p.source());
    }
    std::string s;
    for (auto e : p.edges()) {
      if (!s.empty()) {
        s += "*";
      }
      s += edges_.at(e).id;
    }
    return s;
  }

  std::vector<std::string> Quiver::edge_ids() const {
    std::vector<std::string> ids;
    for (auto const& e : edges_) {
      ids.push_back(e.id);
    }
    return ids;
  }

  std::vector<std::pair<std::size_t, std::size_t>> Quiver::endpoints() const {
    std::vector<std::pair<std::size_t, std::size_t>> ends;
    for (auto const& e : edges_) {
      ends.emplace_back(e.source, e.target);
    }
    return ends;
  }

  std::vector<Path> enumerate_paths(Quiver const&              q,
                                    std::size_t                max_len,
                                    std::optional<std::size_t> source,
                                    std::optional<std::size_t> target) {
    std::vector<Path> frontier;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      if (!source || *source == v) {
        frontier.push_back(Path::trivial(v));
      }
    }
    std::vector<Path> out;
    for (std::size_t len = 0;; ++len) {
      for (auto const& p : frontier) {
        if (!target || p.target() == *target) {
          out.push_back(p);
        }
      }
      if (len == max_len) {
        break;
      }
      std::vector<Path> next;
      for (auto const& p : frontier) {
        for (auto e : q.out_edges(p.target())) {
          next.push_back(*compose(p, q.arrow(e)));
        }
      }
      if (next.empty()) {
        break;
      }
      frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

}  // namespace quivcon
