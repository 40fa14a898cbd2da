#ifndef QUIVCON_QUIVER_HPP_
#define QUIVCON_QUIVER_HPP_

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace quivcon {

  class Quiver;

  // A path in a quiver: either the trivial path at a vertex or a nonempty
  // sequence of composable edges, stored by index. Paths are ordered by
  // length, then lexicographically by edge index (trivial paths by vertex).
  class Path {
   public:
    Path() = default;

    static Path trivial(std::size_t vertex) {
      Path p;
      p.source_ = p.target_ = vertex;
      return p;
    }

    std::size_t source() const noexcept {
      return source_;
    }
    std::size_t target() const noexcept {
      return target_;
    }
    std::size_t length() const noexcept {
      return edges_.size();
    }
    bool is_trivial() const noexcept {
      return edges_.empty();
    }
    std::vector<std::size_t> const& edges() const noexcept {
      return edges_;
    }

    // Sub-path of edges [from, to); the empty range gives the trivial path at
    // the appropriate vertex.
    Path slice(Quiver const& q, std::size_t from, std::size_t to) const;

    friend std::strong_ordering operator<=>(Path const& a, Path const& b);
    friend bool operator==(Path const& a, Path const& b) = default;

   private:
    friend class Quiver;
    friend std::optional<Path> compose(Path const&, Path const&);

    std::size_t              source_ = 0;
    std::size_t              target_ = 0;
    std::vector<std::size_t> edges_;
  };

  // Concatenation pq (p first), or nullopt when target(p) != source(q).
  // Trivial paths act as local units.
  std::optional<Path> compose(Path const& p, Path const& q);

  struct Edge {
    std::string id;
    std::size_t source;
    std::size_t target;
  };

  // Finite directed multigraph with named vertices and edges. Loops and
  // parallel edges are allowed.
  class Quiver {
   public:
    struct EdgeSpec {
      std::string id;
      std::string source;
      std::string target;
    };

    Quiver() = default;
    // Throws Error on duplicate ids or unknown endpoints.
    Quiver(std::vector<std::string> vertices, std::vector<EdgeSpec> const& edges);

    std::size_t vertex_count() const noexcept {
      return vertices_.size();
    }
    std::size_t edge_count() const noexcept {
      return edges_.size();
    }
    std::vector<std::string> const& vertices() const noexcept {
      return vertices_;
    }
    std::vector<Edge> const& edges() const noexcept {
      return edges_;
    }
    Edge const& edge(std::size_t e) const {
      return edges_.at(e);
    }
    std::string const& vertex_name(std::size_t v) const {
      return vertices_.at(v);
    }

    std::optional<std::size_t> find_vertex(std::string const& name) const;
    std::optional<std::size_t> find_edge(std::string const& id) const;
    std::size_t                vertex_index(std::string const& name) const;
    std::size_t                edge_index(std::string const& id) const;

    std::vector<std::size_t> const& out_edges(std::size_t v) const {
      return out_.at(v);
    }
    std::vector<std::size_t> const& in_edges(std::size_t v) const {
      return in_.at(v);
    }
    std::vector<std::size_t> edges_between(std::size_t a, std::size_t b) const;
    std::size_t              edge_count_between(std::size_t a, std::size_t b) const;

    Path trivial_path(std::size_t v) const;
    Path arrow(std::size_t e) const;
    // Throws Error unless the edges compose.
    Path path(std::vector<std::size_t> const& edges) const;
    Path path(std::vector<std::string> const& edge_ids) const;

    // "e_v" for trivial paths, "a*b*c" otherwise.
    std::string name(Path const& p) const;

    friend bool operator==(Quiver const& a, Quiver const& b) {
      return a.vertices_ == b.vertices_ && a.edge_ids() == b.edge_ids()
             && a.endpoints() == b.endpoints();
    }

   private:
    std::vector<std::string>                              edge_ids() const;
    std::vector<std::pair<std::size_t, std::size_t>>      endpoints() const;

    std::vector<std::string>              vertices_;
    std::vector<Edge>                     edges_;
    std::map<std::string, std::size_t>    vertex_index_;
    std::map<std::string, std::size_t>    edge_index_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
  };

  // All paths of length <= max_len with the given optional endpoints, in
  // path order.
  std::vector<Path> enumerate_paths(Quiver const&              q,
                                    std::size_t                max_len,
                                    std::optional<std::size_t> source = std::nullopt,
                                    std::optional<std::size_t> target = std::nullopt);

}  // namespace quivcon

#endif  // QUIVCON_QUIVER_HPP_
