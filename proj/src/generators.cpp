#include "quivcon/generators.hpp"

#include <algorithm>
#include <tuple>

#include "quivcon/linalg.hpp"

namespace quivcon {

  std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  }

  Scalar small_scalar(Rng& rng) {
    static constexpr int values[] = {-2, -1, 1, 1, 2, 0};
    return Scalar(values[uniform(rng, 0, 5)]);
  }

  Quiver random_quiver(Rng& rng, std::size_t vertices, std::size_t edges,
                       std::string const& prefix) {
    std::vector<std::string> vs;
    for (std::size_t v = 1; v <= vertices; ++v) {
      vs.push_back(prefix + std::to_string(v));
    }
    std::vector<Quiver::EdgeSpec> es;
    if (vertices > 0) {
      for (std::size_t e = 1; e <= edges; ++e) {
        es.push_back({prefix + "a" + std::to_string(e), vs[uniform(rng, 0, vertices - 1)],
                      vs[uniform(rng, 0, vertices - 1)]});
      }
    }
    return Quiver(vs, es);
  }

  Quiver random_quiver(Rng& rng, GeneratorBounds const& b, std::string const& prefix) {
    return random_quiver(rng, uniform(rng, 1, std::max<std::size_t>(b.max_vertices, 1)),
                         uniform(rng, 0, b.max_edges), prefix);
  }

  BoundQuiver random_bound_quiver(Rng& rng, Quiver q, std::size_t n, std::size_t count,
                                  bool monomial) {
    std::vector<Path> candidates;
    for (auto const& p : enumerate_paths(q, n - 1)) {
      if (p.length() >= 2) {
        candidates.push_back(p);
      }
    }
    std::vector<PathVector> gens;
    for (std::size_t i = 0; i < count && !candidates.empty(); ++i) {
      auto const& lead = candidates[uniform(rng, 0, candidates.size() - 1)];
      PathVector  g    = PathVector::of(lead);
      if (!monomial) {
        for (auto const& p : candidates) {
          if (!(p == lead) && p.length() == lead.length() && p.source() == lead.source()
              && p.target() == lead.target()) {
            g.add(p, small_scalar(rng));
          }
        }
      }
      gens.push_back(std::move(g));
    }
    return BoundQuiver(std::move(q), std::move(gens), n);
  }

  Matrix random_invertible(Rng& rng, std::size_t n) {
    for (int attempt = 0; attempt < 100; ++attempt) {
      Matrix m(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          m(i, j) = small_scalar(rng);
        }
      }
      if (inverse(m)) {
        return m;
      }
    }
    return Matrix::identity(n);
  }

  namespace {
    using Adjacency = std::vector<std::vector<std::size_t>>;

    Adjacency adjacency(Quiver const& q) {
      Adjacency a(q.vertex_count(), std::vector<std::size_t>(q.vertex_count()));
      for (auto const& e : q.edges()) {
        ++a[e.source][e.target];
      }
      return a;
    }

    bool balanced(Adjacency const& ag, Adjacency const& ah, std::vector<std::size_t> const& d,
                  std::size_t nh) {
      std::size_t ng = ag.size();
      for (std::size_t g = 0; g < ng; ++g) {
        for (std::size_t h = 0; h < nh; ++h) {
          std::size_t left = 0, right = 0;
          for (std::size_t k = 0; k < ng; ++k) {
            left += ag[g][k] * d[k * nh + h];
          }
          for (std::size_t k = 0; k < nh; ++k) {
            right += d[g * nh + k] * ah[k][h];
          }
          if (left != right) {
            return false;
          }
        }
      }
      return true;
    }

    // All balanced dimension vectors, cached per shape.
    std::vector<std::vector<std::size_t>> const& balanced_solutions(Adjacency const& ag,
                                                                    Adjacency const& ah,
                                                                    std::size_t      max_dim) {
      using Key = std::tuple<Adjacency, Adjacency, std::size_t>;
      static thread_local std::map<Key, std::vector<std::vector<std::size_t>>> cache;
      Key key{ag, ah, max_dim};
      if (auto it = cache.find(key); it != cache.end()) {
        return it->second;
      }
      auto&       out   = cache[key];
      std::size_t cells = ag.size() * ah.size();
      double      total = 1;
      for (std::size_t i = 0; i < cells; ++i) {
        total *= static_cast<double>(max_dim + 1);
      }
      if (total > 1e6) {
        return out;
      }
      std::vector<std::size_t> d(cells, 0);
      while (true) {
        if (balanced(ag, ah, d, ah.size())
            && std::any_of(d.begin(), d.end(), [](std::size_t x) { return x != 0; })) {
          out.push_back(d);
        }
        std::size_t i = 0;
        while (i < cells && d[i] == max_dim) {
          d[i++] = 0;
        }
        if (i == cells) {
          break;
        }
        ++d[i];
      }
      return out;
    }
  }  // namespace

  std::map<VertexPair, std::size_t> random_balanced_dims(Rng& rng, Quiver const& G,
                                                         Quiver const& H, std::size_t max_dim) {
    auto ag = adjacency(G);
    auto ah = adjacency(H);
    std::size_t nh = H.vertex_count();
    std::map<VertexPair, std::size_t> out;
    auto const& sols = balanced_solutions(ag, ah, max_dim);
    if (!sols.empty()) {
      auto const& d = sols[uniform(rng, 0, sols.size() - 1)];
      for (std::size_t g = 0; g < G.vertex_count(); ++g) {
        for (std::size_t h = 0; h < nh; ++h) {
          if (d[g * nh + h] != 0) {
            out[{g, h}] = d[g * nh + h];
          }
        }
      }
      return out;
    }
    // Too many cells to enumerate: fall back to multiples of the identity
    // when the quivers agree, else the zero connection.
    if (ag == ah && max_dim > 0) {
      std::size_t k = uniform(rng, 1, max_dim);
      for (std::size_t v = 0; v < G.vertex_count(); ++v) {
        out[{v, v}] = k;
      }
    }
    return out;
  }

  QuiverConnection random_connection(Rng& rng, Quiver const& G, Quiver const& H,
                                     std::map<VertexPair, std::size_t> const& dims,
                                     std::string const& prefix) {
    std::map<VertexPair, std::vector<std::string>> gamma;
    std::size_t                                    label = 1;
    for (auto const& [gh, d] : dims) {
      for (std::size_t i = 0; i < d; ++i) {
        gamma[gh].push_back(prefix + std::to_string(label++));
      }
    }
    QuiverConnection             shape(G, H, gamma, {});
    std::map<VertexPair, Matrix> u;
    for (std::size_t g = 0; g < G.vertex_count(); ++g) {
      for (std::size_t h = 0; h < H.vertex_count(); ++h) {
        u[{g, h}] = random_invertible(rng, shape.domain_basis(g, h).size());
      }
    }
    return QuiverConnection(G, H, gamma, u);
  }

  QuiverConnection random_connection(Rng& rng, Quiver const& G, Quiver const& H,
                                     std::size_t max_dim, std::string const& prefix) {
    return random_connection(rng, G, H, random_balanced_dims(rng, G, H, max_dim), prefix);
  }

  namespace {
    // Gamma_{v,v} of dimension d; e (x) gamma -> c_e (S gamma) (x) e. Such a
    // connection moves each path to itself, so it preserves any ideal whose
    // generators are length-homogeneous (all c_e = 1) or monomial.
    QuiverConnection diagonal_connection(Rng& rng, Quiver const& q, std::size_t d,
                                         bool edge_scalars, std::string const& prefix) {
      std::map<VertexPair, std::vector<std::string>> gamma;
      std::size_t                                    label = 1;
      for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        for (std::size_t i = 0; i < d; ++i) {
          gamma[{v, v}].push_back(prefix + std::to_string(label++));
        }
      }
      Matrix              S = random_invertible(rng, d);
      std::vector<Scalar> c(q.edge_count(), Scalar(1));
      if (edge_scalars) {
        for (auto& x : c) {
          x = Scalar(static_cast<long>(uniform(rng, 1, 3)));
        }
      }
      QuiverConnection             shape(q, q, gamma, {});
      std::map<VertexPair, Matrix> u;
      for (std::size_t g = 0; g < q.vertex_count(); ++g) {
        for (std::size_t h = 0; h < q.vertex_count(); ++h) {
          auto const& dom = shape.domain_basis(g, h);
          Matrix      m(dom.size(), dom.size());
          for (std::size_t col = 0; col < dom.size(); ++col) {
            auto [e, x] = dom[col];
            for (auto y : shape.gamma_block(g, g)) {
              auto row  = shape.codomain_index(g, h, {y, e});
              m(row, col) = c[e] * S(shape.local_index(y), shape.local_index(x));
            }
          }
          u[{g, h}] = std::move(m);
        }
      }
      return QuiverConnection(q, q, gamma, u);
    }
  }  // namespace

  ConnectedInstance random_truncated_instance(Rng& rng, GeneratorBounds const& b) {
    std::size_t n = uniform(rng, 2, std::max<std::size_t>(b.max_nilpotency, 2));
    auto        G = random_quiver(rng, b, "g");
    auto        H = random_quiver(rng, b, "h");
    auto        c = random_connection(rng, G, H, b.max_gamma_dim, "x");
    return {BoundQuiver::truncated(G, n), BoundQuiver::truncated(H, n), std::move(c)};
  }

  ConnectedInstance random_ideal_instance(Rng& rng, GeneratorBounds const& b) {
    std::size_t n = uniform(rng, 3, std::max<std::size_t>(b.max_nilpotency, 3));
    for (int attempt = 0; attempt < 20; ++attempt) {
      auto q = random_quiver(rng, uniform(rng, 1, std::max<std::size_t>(b.max_vertices, 1)),
                             uniform(rng, 1, std::max<std::size_t>(b.max_edges, 1)), "q");
      bool monomial = uniform(rng, 0, 1) == 0;
      auto bq       = random_bound_quiver(rng, q, n, uniform(rng, 1, 2), monomial);
      if (bq.is_truncated()) {
        continue;
      }
      // Sometimes try an unconstrained random connection and keep it when it
      // happens to be ideally connected.
      if (uniform(rng, 0, 2) == 0) {
        auto c = random_connection(rng, q, q, b.max_gamma_dim, "x");
        if (c.gamma_count() > 0 && check_ideally_connected(c, bq, bq)) {
          return {bq, bq, std::move(c)};
        }
      }
      std::size_t d = uniform(rng, 1, std::max<std::size_t>(b.max_gamma_dim, 1));
      auto        c = diagonal_connection(rng, q, d, monomial, "x");
      return {bq, bq, std::move(c)};
    }
    auto q  = Quiver({"q1"}, {{"qa1", "q1", "q1"}});
    auto x  = PathVector::of(q.arrow(0));
    auto bq = BoundQuiver(q, {x * x}, 3);
    return {bq, bq, diagonal_connection(rng, q, 1, true, "x")};
  }

  ComposableTriple random_composable(Rng& rng, GeneratorBounds const& b, std::size_t length) {
    ComposableTriple out;
    if (uniform(rng, 0, 3) == 0) {
      auto inst = random_ideal_instance(rng, b);
      auto q    = inst.source.quiver();
      for (std::size_t i = 0; i <= length; ++i) {
        out.objects.push_back(inst.source);
      }
      for (std::size_t i = 0; i < length; ++i) {
        std::size_t d = uniform(rng, 1, std::max<std::size_t>(b.max_gamma_dim, 1));
        bool monomial = true;
        for (auto const& g : inst.source.ideal().generators()) {
          monomial = monomial && g.size() == 1;
        }
        out.arrows.push_back(diagonal_connection(rng, q, d, monomial, std::string(1, char('x' + i))));
      }
      return out;
    }
    std::size_t n = uniform(rng, 2, std::max<std::size_t>(b.max_nilpotency, 2));
    for (std::size_t i = 0; i <= length; ++i) {
      out.objects.push_back(
          BoundQuiver::truncated(random_quiver(rng, b, std::string(1, char('p' + i))), n));
    }
    for (std::size_t i = 0; i < length; ++i) {
      out.arrows.push_back(random_connection(rng, out.objects[i].quiver(),
                                             out.objects[i + 1].quiver(), b.max_gamma_dim,
                                             std::string(1, char('x' + i))));
    }
    return out;
  }

  Matrix random_block_invertible(Rng& rng, QuiverConnection const& c) {
    Matrix T(c.gamma_count(), c.gamma_count());
    for (std::size_t g = 0; g < c.source().vertex_count(); ++g) {
      for (std::size_t h = 0; h < c.target().vertex_count(); ++h) {
        auto const& idx = c.gamma_block(g, h);
        auto        m   = random_invertible(rng, idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
          for (std::size_t j = 0; j < idx.size(); ++j) {
            T(idx[i], idx[j]) = m(i, j);
          }
        }
      }
    }
    return T;
  }

  ConnectionMorphism random_morphism(Rng& rng, std::shared_ptr<QuiverConnection const> a,
                                     std::shared_ptr<QuiverConnection const> b) {
    auto   basis = morphism_space(a, b);
    Matrix m(b->gamma_count(), a->gamma_count());
    for (auto const& f : basis) {
      m = m + small_scalar(rng) * f.matrix();
    }
    return ConnectionMorphism(a, b, std::move(m));
  }

  std::size_t quotient_dim(BoundQuiver const& bq) {
    return bq.ideal().standard_paths().size();
  }

  ConnectedInstance random_small_instance(Rng& rng, GeneratorBounds const& b, bool with_ideal,
                                          std::size_t max_dim) {
    for (;;) {
      auto inst = with_ideal ? random_ideal_instance(rng, b) : random_truncated_instance(rng, b);
      if (quotient_dim(inst.source) <= max_dim && quotient_dim(inst.target) <= max_dim) {
        return inst;
      }
    }
  }

  ComposableTriple random_small_composable(Rng& rng, GeneratorBounds const& b, std::size_t length,
                                           std::size_t max_dim) {
    for (;;) {
      auto tr = random_composable(rng, b, length);
      bool ok = true;
      for (auto const& o : tr.objects) {
        ok = ok && quotient_dim(o) <= max_dim;
      }
      if (ok) {
        return tr;
      }
    }
  }

}  // namespace quivcon
