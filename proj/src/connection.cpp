#include "quivcon/connection.hpp"

#include <algorithm>

#include "quivcon/linalg.hpp"
#include "quivcon/subspace.hpp"

namespace quivcon {

  namespace {
    std::string pair_name(Quiver const& G, Quiver const& H, std::size_t g, std::size_t h) {
      return "(" + G.vertex_name(g) + "," + H.vertex_name(h) + ")";
    }
  }  // namespace

  QuiverConnection::QuiverConnection(Quiver G, Quiver H,
                                     std::map<VertexPair, std::vector<std::string>> gamma,
                                     std::map<VertexPair, Matrix> u)
      : G_(std::move(G)), H_(std::move(H)) {
    std::size_t ng = G_.vertex_count(), nh = H_.vertex_count();
    for (auto const& [gh, labels] : gamma) {
      if (gh.first >= ng || gh.second >= nh) {
        throw Error("gamma block refers to an unknown vertex");
      }
    }
    for (auto const& [gh, m] : u) {
      if (gh.first >= ng || gh.second >= nh) {
        throw Error("U block refers to an unknown vertex");
      }
    }
    for (std::size_t g = 0; g < ng; ++g) {
      for (std::size_t h = 0; h < nh; ++h) {
        Block b;
        if (auto it = gamma.find({g, h}); it != gamma.end()) {
          std::size_t local = 0;
          for (auto const& label : it->second) {
            if (!label_index_.emplace(label, gammas_.size()).second) {
              throw Error("duplicate gamma label \"" + label + "\"");
            }
            b.gammas.push_back(gammas_.size());
            gammas_.push_back({label, g, h});
            local_.push_back(local++);
          }
        }
        blocks_.emplace(VertexPair{g, h}, std::move(b));
      }
    }
    for (auto& [gh, b] : blocks_) {
      auto [g, h] = gh;
      for (std::size_t e = 0; e < G_.edge_count(); ++e) {
        if (G_.edge(e).source != g) {
          continue;
        }
        for (auto x : blocks_.at({G_.edge(e).target, h}).gammas) {
          b.dom.emplace_back(e, x);
        }
      }
      for (std::size_t hp = 0; hp < nh; ++hp) {
        for (auto x : blocks_.at({g, hp}).gammas) {
          for (auto f : H_.edges_between(hp, h)) {
            b.cod.emplace_back(x, f);
          }
        }
      }
      std::sort(b.cod.begin(), b.cod.end());
      for (std::size_t i = 0; i < b.dom.size(); ++i) {
        b.dom_index.emplace(b.dom[i], i);
      }
      for (std::size_t i = 0; i < b.cod.size(); ++i) {
        b.cod_index.emplace(b.cod[i], i);
      }
      if (auto it = u.find(gh); it != u.end()) {
        b.u = it->second;
      } else {
        b.u = Matrix(b.cod.size(), b.dom.size());
      }
      bool shaped = b.u.rows() == b.cod.size() && b.u.cols() == b.dom.size();
      if (shaped) {
        b.u_inv = inverse(b.u);
        for (std::size_t c = 0; c < b.dom.size(); ++c) {
          auto& terms = forward_[b.dom[c]];
          for (std::size_t r = 0; r < b.cod.size(); ++r) {
            if (!b.u(r, c).is_zero()) {
              terms.push_back({b.cod[r].first, b.cod[r].second, b.u(r, c)});
            }
          }
        }
      }
      if (b.u_inv) {
        for (std::size_t c = 0; c < b.cod.size(); ++c) {
          auto& terms = backward_[b.cod[c]];
          for (std::size_t r = 0; r < b.dom.size(); ++r) {
            if (!(*b.u_inv)(r, c).is_zero()) {
              terms.push_back({b.dom[r].second, b.dom[r].first, (*b.u_inv)(r, c)});
            }
          }
        }
      }
    }
  }

  QuiverConnection::Block const& QuiverConnection::block(std::size_t g, std::size_t h) const {
    auto it = blocks_.find({g, h});
    if (it == blocks_.end()) {
      throw Error("connection block index out of range");
    }
    return it->second;
  }

  std::vector<std::size_t> const& QuiverConnection::gamma_block(std::size_t g,
                                                               std::size_t h) const {
    return block(g, h).gammas;
  }

  std::optional<std::size_t> QuiverConnection::find_gamma(std::string const& label) const {
    auto it = label_index_.find(label);
    if (it == label_index_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  std::vector<QuiverConnection::BasisPair> const& QuiverConnection::domain_basis(
      std::size_t g, std::size_t h) const {
    return block(g, h).dom;
  }

  std::vector<QuiverConnection::BasisPair> const& QuiverConnection::codomain_basis(
      std::size_t g, std::size_t h) const {
    return block(g, h).cod;
  }

  std::size_t QuiverConnection::domain_index(std::size_t g, std::size_t h,
                                             BasisPair const& b) const {
    return block(g, h).dom_index.at(b);
  }

  std::size_t QuiverConnection::codomain_index(std::size_t g, std::size_t h,
                                               BasisPair const& b) const {
    return block(g, h).cod_index.at(b);
  }

  Matrix const& QuiverConnection::U(std::size_t g, std::size_t h) const {
    return block(g, h).u;
  }

  Matrix const& QuiverConnection::U_inverse(std::size_t g, std::size_t h) const {
    auto const& b = block(g, h);
    if (!b.u_inv) {
      throw Error("U block " + pair_name(G_, H_, g, h) + " is not invertible");
    }
    return *b.u_inv;
  }

  Verdict QuiverConnection::validate() const {
    for (auto const& [gh, b] : blocks_) {
      auto name = pair_name(G_, H_, gh.first, gh.second);
      if (b.dom.size() != b.cod.size()) {
        return Verdict::fail("dimension mismatch at " + name + ": domain "
                             + std::to_string(b.dom.size()) + ", codomain "
                             + std::to_string(b.cod.size()));
      }
      if (b.u.rows() != b.cod.size() || b.u.cols() != b.dom.size()) {
        return Verdict::fail("U block " + name + " has shape " + std::to_string(b.u.rows())
                             + "x" + std::to_string(b.u.cols()) + ", expected "
                             + std::to_string(b.cod.size()) + "x"
                             + std::to_string(b.dom.size()));
      }
      if (!b.u_inv) {
        return Verdict::fail("singular U block at " + name);
      }
    }
    return Verdict::pass();
  }

  std::vector<QuiverConnection::Term> const& QuiverConnection::forward(std::size_t edge,
                                                                       std::size_t gamma) const {
    auto it = forward_.find({edge, gamma});
    if (it == forward_.end()) {
      throw Error("transport undefined for edge " + G_.edge(edge).id + " and gamma "
                  + gammas_.at(gamma).label);
    }
    return it->second;
  }

  std::vector<QuiverConnection::Term> const& QuiverConnection::backward(std::size_t gamma,
                                                                        std::size_t edge) const {
    auto it = backward_.find({gamma, edge});
    if (it == backward_.end()) {
      throw Error("inverse transport undefined for gamma " + gammas_.at(gamma).label
                  + " and edge " + H_.edge(edge).id);
    }
    return it->second;
  }

  std::map<VertexPair, std::vector<std::string>> QuiverConnection::gamma_labels() const {
    std::map<VertexPair, std::vector<std::string>> out;
    for (auto const& x : gammas_) {
      out[{x.g, x.h}].push_back(x.label);
    }
    return out;
  }

  bool operator==(QuiverConnection const& a, QuiverConnection const& b) {
    if (!(a.G_ == b.G_) || !(a.H_ == b.H_) || a.gamma_labels() != b.gamma_labels()) {
      return false;
    }
    for (auto const& [gh, blk] : a.blocks_) {
      if (!(blk.u == b.blocks_.at(gh).u)) {
        return false;
      }
    }
    return true;
  }

  MixedPathVector MixedPathVector::of(MixedPath p, Scalar c) {
    MixedPathVector v;
    v.add(p, c);
    return v;
  }

  void MixedPathVector::add(MixedPath const& p, Scalar const& c) {
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

  MixedPathVector& MixedPathVector::operator+=(MixedPathVector const& o) {
    for (auto const& [p, c] : o.terms_) {
      add(p, c);
    }
    return *this;
  }

  MixedPathVector operator*(Scalar const& c, MixedPathVector const& v) {
    MixedPathVector out;
    for (auto const& [p, x] : v.terms_) {
      out.add(p, c * x);
    }
    return out;
  }

  std::map<std::size_t, PathVector> MixedPathVector::h_components() const {
    std::map<std::size_t, PathVector> out;
    for (auto const& [p, c] : terms_) {
      if (!p.g_path.is_trivial()) {
        throw Error("expected a vector with trivial G-parts");
      }
      out[p.gamma].add(p.h_path, c);
    }
    return out;
  }

  std::map<std::size_t, PathVector> MixedPathVector::g_components() const {
    std::map<std::size_t, PathVector> out;
    for (auto const& [p, c] : terms_) {
      if (!p.h_path.is_trivial()) {
        throw Error("expected a vector with trivial H-parts");
      }
      out[p.gamma].add(p.g_path, c);
    }
    return out;
  }

  std::string MixedPathVector::to_string(QuiverConnection const& c) const {
    if (terms_.empty()) {
      return "0";
    }
    std::string s;
    for (auto const& [p, x] : terms_) {
      if (!s.empty()) {
        s += " + ";
      }
      if (!x.is_one()) {
        s += "(" + x.to_string() + ")";
      }
      std::string part;
      if (!p.g_path.is_trivial()) {
        part += c.source().name(p.g_path) + "*";
      }
      part += c.gamma(p.gamma).label;
      if (!p.h_path.is_trivial()) {
        part += "*" + c.target().name(p.h_path);
      }
      s += part;
    }
    return s;
  }

  MixedPath mixed_path(QuiverConnection const& c, Path const& p, std::size_t gamma,
                       Path const& q) {
    auto const& x = c.gamma(gamma);
    if (p.target() != x.g || q.source() != x.h) {
      throw Error("endpoint incompatibility around gamma " + x.label);
    }
    return {p, gamma, q};
  }

  MixedPathVector left_tensor(QuiverConnection const& c, PathVector const& v,
                              std::size_t gamma) {
    MixedPathVector out;
    auto            h = Path::trivial(c.gamma(gamma).h);
    for (auto const& [p, x] : v.terms()) {
      out.add(mixed_path(c, p, gamma, h), x);
    }
    return out;
  }

  MixedPathVector right_tensor(QuiverConnection const& c, std::size_t gamma,
                               PathVector const& w) {
    MixedPathVector out;
    auto            g = Path::trivial(c.gamma(gamma).g);
    for (auto const& [q, x] : w.terms()) {
      out.add(mixed_path(c, g, gamma, q), x);
    }
    return out;
  }

  MixedPathVector transport(QuiverConnection const& c, MixedPathVector const& v) {
    auto const&     G = c.source();
    auto const&     H = c.target();
    MixedPathVector out;
    MixedPathVector cur = v;
    while (!cur.is_zero()) {
      MixedPathVector next;
      for (auto const& [p, x] : cur.terms()) {
        if (p.g_path.is_trivial()) {
          out.add(p, x);
          continue;
        }
        if (c.gamma(p.gamma).g != p.g_path.target() || c.gamma(p.gamma).h != p.h_path.source()) {
          throw Error("endpoint incompatibility in transport");
        }
        std::size_t len    = p.g_path.length();
        std::size_t e      = p.g_path.edges().back();
        Path        prefix = p.g_path.slice(G, 0, len - 1);
        for (auto const& t : c.forward(e, p.gamma)) {
          next.add({prefix, t.gamma, *compose(H.arrow(t.edge), p.h_path)}, x * t.coeff);
        }
      }
      cur = std::move(next);
    }
    return out;
  }

  MixedPathVector inverse_transport(QuiverConnection const& c, MixedPathVector const& v) {
    auto const&     G = c.source();
    auto const&     H = c.target();
    MixedPathVector out;
    MixedPathVector cur = v;
    while (!cur.is_zero()) {
      MixedPathVector next;
      for (auto const& [p, x] : cur.terms()) {
        if (p.h_path.is_trivial()) {
          out.add(p, x);
          continue;
        }
        if (c.gamma(p.gamma).g != p.g_path.target() || c.gamma(p.gamma).h != p.h_path.source()) {
          throw Error("endpoint incompatibility in inverse transport");
        }
        std::size_t f    = p.h_path.edges().front();
        Path        rest = p.h_path.slice(H, 1, p.h_path.length());
        for (auto const& t : c.backward(p.gamma, f)) {
          next.add({*compose(p.g_path, G.arrow(t.edge)), t.gamma, rest}, x * t.coeff);
        }
      }
      cur = std::move(next);
    }
    return out;
  }

  QuiverConnection identity_connection(Quiver const& q) {
    std::map<VertexPair, std::vector<std::string>> gamma;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      gamma[{v, v}] = {"id_" + q.vertex_name(v)};
    }
    std::map<VertexPair, Matrix> u;
    for (std::size_t g = 0; g < q.vertex_count(); ++g) {
      for (std::size_t h = 0; h < q.vertex_count(); ++h) {
        u[{g, h}] = Matrix::identity(q.edge_count_between(g, h));
      }
    }
    return QuiverConnection(q, q, gamma, u);
  }

  std::vector<std::pair<std::size_t, std::size_t>> composite_basis(
      QuiverConnection const& first, QuiverConnection const& second) {
    if (!(first.target() == second.source())) {
      throw Error("cannot compose connections: quiver mismatch");
    }
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < first.source().vertex_count(); ++i) {
      for (std::size_t j = 0; j < second.target().vertex_count(); ++j) {
        for (std::size_t k = 0; k < first.target().vertex_count(); ++k) {
          for (auto x : first.gamma_block(i, k)) {
            for (auto y : second.gamma_block(k, j)) {
              out.emplace_back(x, y);
            }
          }
        }
      }
    }
    return out;
  }

  QuiverConnection compose_connections(QuiverConnection const& first,
                                       QuiverConnection const& second) {
    auto                                   pairs = composite_basis(first, second);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
    std::map<VertexPair, std::vector<std::string>> gamma;
    for (std::size_t n = 0; n < pairs.size(); ++n) {
      auto [x, y] = pairs[n];
      index.emplace(pairs[n], n);
      gamma[{first.gamma(x).g, second.gamma(y).h}].push_back(
          "(" + first.gamma(x).label + "," + second.gamma(y).label + ")");
    }
    auto const&      G = first.source();
    auto const&      K = second.target();
    QuiverConnection shape(G, K, gamma, {});
    std::map<VertexPair, Matrix> u;
    for (std::size_t i = 0; i < G.vertex_count(); ++i) {
      for (std::size_t j = 0; j < K.vertex_count(); ++j) {
        auto const& dom = shape.domain_basis(i, j);
        auto const& cod = shape.codomain_basis(i, j);
        Matrix      m(cod.size(), dom.size());
        for (std::size_t col = 0; col < dom.size(); ++col) {
          auto [e, xy] = dom[col];
          auto [x, y]  = pairs[xy];
          for (auto const& s : first.forward(e, x)) {
            for (auto const& t : second.forward(s.edge, y)) {
              auto row = shape.codomain_index(i, j, {index.at({s.gamma, t.gamma}), t.edge});
              m(row, col) += s.coeff * t.coeff;
            }
          }
        }
        u[{i, j}] = std::move(m);
      }
    }
    return QuiverConnection(G, K, gamma, u);
  }

  ConnectionMorphism::ConnectionMorphism(std::shared_ptr<QuiverConnection const> source,
                                         std::shared_ptr<QuiverConnection const> target,
                                         Matrix global)
      : source_(std::move(source)), target_(std::move(target)), global_(std::move(global)) {
    if (!(source_->source() == target_->source()) || !(source_->target() == target_->target())) {
      throw Error("2-morphism between connections on different quivers");
    }
    if (global_.rows() != target_->gamma_count() || global_.cols() != source_->gamma_count()) {
      throw Error("2-morphism matrix has the wrong shape");
    }
    for (std::size_t r = 0; r < global_.rows(); ++r) {
      for (std::size_t c = 0; c < global_.cols(); ++c) {
        auto const& a = source_->gamma(c);
        auto const& b = target_->gamma(r);
        if (!global_(r, c).is_zero() && (a.g != b.g || a.h != b.h)) {
          throw Error("2-morphism mixes different (g,h) blocks");
        }
      }
    }
  }

  ConnectionMorphism ConnectionMorphism::identity(std::shared_ptr<QuiverConnection const> c) {
    auto n = c->gamma_count();
    return ConnectionMorphism(c, c, Matrix::identity(n));
  }

  Matrix ConnectionMorphism::block(std::size_t g, std::size_t h) const {
    auto const& rows = target_->gamma_block(g, h);
    auto const& cols = source_->gamma_block(g, h);
    Matrix      m(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        m(r, c) = global_(rows[r], cols[c]);
      }
    }
    return m;
  }

  bool ConnectionMorphism::is_invertible() const {
    return inverse(global_).has_value();
  }

  QuiverConnection conjugate_connection(QuiverConnection const& c, Matrix const& T,
                                        std::string const& suffix) {
    auto Tinv = inverse(T);
    if (!Tinv) {
      throw Error("conjugating matrix is singular");
    }
    std::map<VertexPair, std::vector<std::string>> gamma;
    for (auto const& [gh, labels] : c.gamma_labels()) {
      for (auto const& l : labels) {
        gamma[gh].push_back(l + suffix);
      }
    }
    std::map<VertexPair, Matrix> u;
    for (std::size_t g = 0; g < c.source().vertex_count(); ++g) {
      for (std::size_t h = 0; h < c.target().vertex_count(); ++h) {
        auto const& dom = c.domain_basis(g, h);
        auto const& cod = c.codomain_basis(g, h);
        Matrix      D(dom.size(), dom.size()), C(cod.size(), cod.size());
        for (std::size_t i = 0; i < dom.size(); ++i) {
          for (std::size_t j = 0; j < dom.size(); ++j) {
            if (dom[i].first == dom[j].first) {
              D(i, j) = (*Tinv)(dom[i].second, dom[j].second);
            }
          }
        }
        for (std::size_t i = 0; i < cod.size(); ++i) {
          for (std::size_t j = 0; j < cod.size(); ++j) {
            if (cod[i].second == cod[j].second) {
              C(i, j) = T(cod[i].first, cod[j].first);
            }
          }
        }
        u[{g, h}] = C * c.U(g, h) * D;
      }
    }
    return QuiverConnection(c.source(), c.target(), gamma, u);
  }

  Verdict check_morphism(ConnectionMorphism const& f) {
    auto const& a = f.source();
    auto const& b = f.target();
    auto const& G = a.source();
    auto const& H = a.target();
    auto const& F = f.matrix();
    for (std::size_t g = 0; g < G.vertex_count(); ++g) {
      for (std::size_t h = 0; h < H.vertex_count(); ++h) {
        auto const& udom = a.domain_basis(g, h);
        auto const& vcod = b.codomain_basis(g, h);
        auto const& U    = a.U(g, h);
        auto const& V    = b.U(g, h);
        for (std::size_t col = 0; col < udom.size(); ++col) {
          auto [e, x] = udom[col];
          for (std::size_t row = 0; row < vcod.size(); ++row) {
            auto [y, fe] = vcod[row];
            // V (id (x) f) at (row, col).
            Scalar lhs;
            for (auto z : b.gamma_block(G.edge(e).target, h)) {
              if (!F(z, x).is_zero()) {
                lhs.add_product(V(row, b.domain_index(g, h, {e, z})), F(z, x));
              }
            }
            // (f (x) id) U at (row, col).
            Scalar rhs;
            for (auto w : a.gamma_block(g, H.edge(fe).source)) {
              if (!F(y, w).is_zero()) {
                rhs.add_product(F(y, w), U(a.codomain_index(g, h, {w, fe}), col));
              }
            }
            if (!(lhs == rhs)) {
              return Verdict::fail("intertwining law fails on block (" + G.vertex_name(g) + ","
                                   + G.vertex_name(G.edge(e).target) + ","
                                   + H.vertex_name(h) + "," + H.vertex_name(H.edge(fe).source)
                                   + ")");
            }
          }
        }
      }
    }
    return Verdict::pass();
  }

  ConnectionMorphism compose_vertical(ConnectionMorphism const& f, ConnectionMorphism const& g) {
    if (f.target_ptr() != g.source_ptr() && !(f.target() == g.source())) {
      throw Error("vertical composition of incompatible 2-morphisms");
    }
    return ConnectionMorphism(f.source_ptr(), g.target_ptr(), g.matrix() * f.matrix());
  }

  ConnectionMorphism compose_horizontal(ConnectionMorphism const& f, ConnectionMorphism const& g) {
    auto src_pairs = composite_basis(f.source(), g.source());
    auto tgt_pairs = composite_basis(f.target(), g.target());
    auto src = std::make_shared<QuiverConnection const>(compose_connections(f.source(), g.source()));
    auto tgt = std::make_shared<QuiverConnection const>(compose_connections(f.target(), g.target()));
    Matrix m(tgt_pairs.size(), src_pairs.size());
    for (std::size_t c = 0; c < src_pairs.size(); ++c) {
      auto [x, y] = src_pairs[c];
      for (std::size_t r = 0; r < tgt_pairs.size(); ++r) {
        auto [xp, yp] = tgt_pairs[r];
        auto const& a = f.matrix()(xp, x);
        auto const& b = g.matrix()(yp, y);
        if (!a.is_zero() && !b.is_zero()) {
          m(r, c) = a * b;
        }
      }
    }
    return ConnectionMorphism(src, tgt, std::move(m));
  }

  ConnectionMorphism associator(QuiverConnection const& a, QuiverConnection const& b,
                                QuiverConnection const& c) {
    auto ab     = compose_connections(a, b);
    auto bc     = compose_connections(b, c);
    auto ab_p   = composite_basis(a, b);
    auto bc_p   = composite_basis(b, c);
    auto left_p = composite_basis(ab, c);
    auto right_p = composite_basis(a, bc);
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> right_index;
    for (std::size_t n = 0; n < right_p.size(); ++n) {
      auto [x, yz] = right_p[n];
      right_index.emplace(std::tuple{x, bc_p[yz].first, bc_p[yz].second}, n);
    }
    Matrix m(right_p.size(), left_p.size());
    for (std::size_t n = 0; n < left_p.size(); ++n) {
      auto [xy, z] = left_p[n];
      m(right_index.at({ab_p[xy].first, ab_p[xy].second, z}), n) = 1;
    }
    return ConnectionMorphism(std::make_shared<QuiverConnection const>(compose_connections(ab, c)),
                              std::make_shared<QuiverConnection const>(compose_connections(a, bc)),
                              std::move(m));
  }

  ConnectionMorphism left_unitor(QuiverConnection const& c) {
    auto id    = identity_connection(c.source());
    auto pairs = composite_basis(id, c);
    Matrix m(c.gamma_count(), pairs.size());
    for (std::size_t n = 0; n < pairs.size(); ++n) {
      m(pairs[n].second, n) = 1;
    }
    return ConnectionMorphism(std::make_shared<QuiverConnection const>(compose_connections(id, c)),
                              std::make_shared<QuiverConnection const>(c), std::move(m));
  }

  ConnectionMorphism right_unitor(QuiverConnection const& c) {
    auto id    = identity_connection(c.target());
    auto pairs = composite_basis(c, id);
    Matrix m(c.gamma_count(), pairs.size());
    for (std::size_t n = 0; n < pairs.size(); ++n) {
      m(pairs[n].first, n) = 1;
    }
    return ConnectionMorphism(std::make_shared<QuiverConnection const>(compose_connections(c, id)),
                              std::make_shared<QuiverConnection const>(c), std::move(m));
  }

  std::vector<ConnectionMorphism> morphism_space(std::shared_ptr<QuiverConnection const> a,
                                                 std::shared_ptr<QuiverConnection const> b) {
    if (!(a->source() == b->source()) || !(a->target() == b->target())) {
      throw Error("morphism space between connections on different quivers");
    }
    auto const& G = a->source();
    auto const& H = a->target();
    // Unknown x[z][w] for z in b, w in a of the same block.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> var;
    std::vector<std::pair<std::size_t, std::size_t>>           vars;
    for (std::size_t z = 0; z < b->gamma_count(); ++z) {
      for (std::size_t w = 0; w < a->gamma_count(); ++w) {
        if (a->gamma(w).g == b->gamma(z).g && a->gamma(w).h == b->gamma(z).h) {
          var.emplace(std::pair{z, w}, vars.size());
          vars.emplace_back(z, w);
        }
      }
    }
    std::vector<Vector> rows;
    for (std::size_t g = 0; g < G.vertex_count(); ++g) {
      for (std::size_t h = 0; h < H.vertex_count(); ++h) {
        auto const& udom = a->domain_basis(g, h);
        auto const& vcod = b->codomain_basis(g, h);
        auto const& U    = a->U(g, h);
        auto const& V    = b->U(g, h);
        for (std::size_t col = 0; col < udom.size(); ++col) {
          auto [e, x] = udom[col];
          for (std::size_t row = 0; row < vcod.size(); ++row) {
            auto [y, fe] = vcod[row];
            Vector eq(vars.size());
            for (auto z : b->gamma_block(G.edge(e).target, h)) {
              eq[var.at({z, x})] += V(row, b->domain_index(g, h, {e, z}));
            }
            for (auto w : a->gamma_block(g, H.edge(fe).source)) {
              eq[var.at({y, w})] -= U(a->codomain_index(g, h, {w, fe}), col);
            }
            if (!is_zero(eq)) {
              rows.push_back(std::move(eq));
            }
          }
        }
      }
    }
    Subspace sol = rows.empty() ? Subspace::full(vars.size())
                                : kernel(Matrix::from_rows(rows, vars.size()));
    std::vector<ConnectionMorphism> out;
    for (auto const& v : sol.basis()) {
      Matrix m(b->gamma_count(), a->gamma_count());
      for (std::size_t i = 0; i < vars.size(); ++i) {
        m(vars[i].first, vars[i].second) = v[i];
      }
      out.emplace_back(a, b, std::move(m));
    }
    return out;
  }

  namespace {
    // Generators plus the length-n paths, grouped by endpoints.
    std::vector<PathVector> ideal_test_set(BoundQuiver const& bq) {
      std::vector<PathVector> out;
      for (auto const& g : bq.ideal().generators()) {
        if (!g.is_zero()) {
          out.push_back(g);
        }
      }
      for (auto const& p : enumerate_paths(bq.quiver(), bq.bound())) {
        if (p.length() == bq.bound()) {
          out.push_back(PathVector::of(p));
        }
      }
      return out;
    }
  }  // namespace

  Verdict check_ideally_connected(QuiverConnection const& c, BoundQuiver const& bg,
                                  BoundQuiver const& bh) {
    if (!(bg.quiver() == c.source()) || !(bh.quiver() == c.target())) {
      throw Error("bound quivers do not match the connection");
    }
    auto const& G = c.source();
    auto const& H = c.target();
    for (auto const& rho : ideal_test_set(bg)) {
      auto [a, b] = *rho.endpoints();
      for (std::size_t h = 0; h < H.vertex_count(); ++h) {
        for (auto x : c.gamma_block(b, h)) {
          auto moved = transport(c, left_tensor(c, rho, x));
          for (auto const& [y, w] : moved.h_components()) {
            if (!bh.ideal().contains(w)) {
              return Verdict::fail("transport of (" + rho.to_string(G) + ")*" + c.gamma(x).label
                                   + " has component " + c.gamma(y).label + "*("
                                   + w.to_string(H) + "), residue "
                                   + bh.ideal().normal_form(w).to_string(H)
                                   + " not in the target ideal");
            }
          }
        }
      }
      (void)a;
    }
    for (auto const& sigma : ideal_test_set(bh)) {
      auto [a, b] = *sigma.endpoints();
      for (std::size_t g = 0; g < G.vertex_count(); ++g) {
        for (auto x : c.gamma_block(g, a)) {
          auto moved = inverse_transport(c, right_tensor(c, x, sigma));
          for (auto const& [y, w] : moved.g_components()) {
            if (!bg.ideal().contains(w)) {
              return Verdict::fail("inverse transport of " + c.gamma(x).label + "*("
                                   + sigma.to_string(H) + ") has component ("
                                   + w.to_string(G) + ")*" + c.gamma(y).label + ", residue "
                                   + bg.ideal().normal_form(w).to_string(G)
                                   + " not in the source ideal");
            }
          }
        }
      }
      (void)b;
    }
    return Verdict::pass();
  }

}  // namespace quivcon
