#include "quivcon/equivalence.hpp"

#include <algorithm>

#include "quivcon/linalg.hpp"

namespace quivcon {

  namespace {
    std::string pair_name(std::size_t a, std::size_t b) {
      return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    }

    Subspace span_in(std::vector<Path> const& coords, std::vector<PathVector> const& vs) {
      std::map<Path, std::size_t> index;
      for (std::size_t i = 0; i < coords.size(); ++i) {
        index[coords[i]] = i;
      }
      SubspaceBuilder b(coords.size());
      for (auto const& v : vs) {
        Vector x(coords.size());
        for (auto const& [p, c] : v.terms()) {
          auto it = index.find(p);
          if (it == index.end()) {
            throw Error("path outside the comparison range");
          }
          x[it->second] = c;
        }
        b.add(x);
      }
      return b.finish();
    }
  }  // namespace

  ObjectImage p_object(BoundQuiver const& bq, Field field) {
    ObjectImage out;
    out.bound_quiver = bq;
    out.quotient     = std::make_shared<QuotientAlgebra const>(bq);
    auto const& qa   = *out.quotient;
    auto const& q    = qa.quiver();
    auto        alg  = FiniteDimAlgebra::from_quotient(qa, field);
    std::size_t n    = qa.dim();
    auto        rad  = radical_power_basis(qa, 1);

    // Shapes first, then the sections in the stored quotient coordinates.
    AlgebraWithQuiverData shape(alg, rad, Matrix(n, q.vertex_count()), Matrix(n, q.edge_count()));
    std::vector<Vector>   vs, as;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      vs.push_back(unit_vector(n, *qa.index_of(Path::trivial(v))));
    }
    for (std::size_t e = 0; e < q.edge_count(); ++e) {
      as.push_back(unit_vector(n, *qa.index_of(q.arrow(e))));
    }
    out.algebra = std::make_shared<AlgebraWithQuiverData const>(
        alg, rad, section_from_lifts(shape.top(), vs), section_from_lifts(shape.layer(), as));
    if (auto v = validate_quiver_data(*out.algebra); !v.ok) {
      throw Error("P(Q,I): " + v.message);
    }
    return out;
  }

  Vector ConnectionImage::element(std::size_t gamma, PathVector const& w) const {
    auto   h = connection->gamma(gamma).h;
    Vector out(bimodule->dim());
    for (auto const& [p, c] : w.terms()) {
      if (p.source() != h) {
        throw Error("path does not start where the gamma ends");
      }
    }
    auto coords = target->coordinates(w);
    for (std::size_t r = 0; r < coords.size(); ++r) {
      if (!coords[r].is_zero()) {
        out[index.at({gamma, r})] += coords[r];
      }
    }
    return out;
  }

  std::size_t ConnectionImage::gamma_index(std::size_t gamma) const {
    auto h = connection->gamma(gamma).h;
    return index.at({gamma, *target->index_of(Path::trivial(h))});
  }

  ConnectionImage p_connection(std::shared_ptr<QuiverConnection const> c, ObjectImage const& source,
                               ObjectImage const& target) {
    auto const& G = source.bound_quiver.quiver();
    auto const& H = target.bound_quiver.quiver();
    if (!(c->source() == G) || !(c->target() == H)) {
      throw Error("P(Gamma): connection is not between the given quivers");
    }
    if (auto v = check_ideally_connected(*c, source.bound_quiver, target.bound_quiver); !v.ok) {
      throw Error("P(Gamma): not ideally connected: " + v.message);
    }
    ConnectionImage img;
    img.connection = c;
    img.source     = source.quotient;
    img.target     = target.quotient;
    auto const& qa = *source.quotient;
    auto const& qb = *target.quotient;

    std::vector<std::string> labels;
    for (std::size_t r = 0; r < qb.dim(); ++r) {
      auto const& p = qb.basis()[r];
      for (std::size_t g = 0; g < c->gamma_count(); ++g) {
        if (c->gamma(g).h != p.source()) {
          continue;
        }
        img.index[{g, r}] = img.basis.size();
        img.basis.emplace_back(g, r);
        labels.push_back(p.is_trivial() ? c->gamma(g).label
                                        : c->gamma(g).label + "*" + H.name(p));
      }
    }
    std::size_t d = img.basis.size();

    std::vector<Matrix> right(qb.dim(), Matrix(d, d)), left(qa.dim(), Matrix(d, d));
    auto elem = [&](std::size_t g, PathVector const& w) {
      Vector out(d);
      auto   coords = qb.coordinates(w);
      for (std::size_t r = 0; r < coords.size(); ++r) {
        if (!coords[r].is_zero()) {
          out[img.index.at({g, r})] += coords[r];
        }
      }
      return out;
    };
    for (std::size_t col = 0; col < d; ++col) {
      auto [g, r]  = img.basis[col];
      auto const p = PathVector::of(qb.basis()[r]);
      for (std::size_t s = 0; s < qb.dim(); ++s) {
        right[s].set_column(col, elem(g, p * PathVector::of(qb.basis()[s])));
      }
      for (std::size_t s = 0; s < qa.dim(); ++s) {
        auto const& q = qa.basis()[s];
        if (q.target() != c->gamma(g).g) {
          continue;
        }
        auto   moved = transport(*c, left_tensor(*c, PathVector::of(q), g));
        Vector acc(d);
        for (auto const& [g2, w] : moved.h_components()) {
          acc = acc + elem(g2, w * p);
        }
        left[s].set_column(col, acc);
      }
    }

    BimoduleWithQuiverData m(source.algebra, target.algebra, labels, std::move(left),
                             std::move(right));
    std::vector<Vector> tops, arrows;
    for (std::size_t g = 0; g < c->gamma_count(); ++g) {
      auto h = c->gamma(g).h;
      tops.push_back(unit_vector(d, img.index.at({g, *qb.index_of(Path::trivial(h))})));
      for (auto e : H.out_edges(h)) {
        arrows.push_back(elem(g, PathVector::of(H.arrow(e))));
      }
    }
    std::sort(arrows.begin(), arrows.end(), canonical_less);
    auto full = m.with_quiver_data(section_from_lifts(m.top(), tops),
                                   section_from_lifts(m.layer(), arrows));
    if (auto v = validate_bimodule(full); !v.ok) {
      throw Error("P(Gamma): " + v.message);
    }
    if (!radical_symmetry_check(full)) {
      throw Error("P(Gamma): not radically symmetric");
    }
    if (auto v = validate_bimodule_quiver_data(full); !v.ok) {
      throw Error("P(Gamma): " + v.message);
    }
    img.bimodule = std::make_shared<BimoduleWithQuiverData const>(std::move(full));
    return img;
  }

  BimoduleMorphism p_morphism(ConnectionMorphism const& f, ConnectionImage const& source,
                              ConnectionImage const& target) {
    if (!(f.source() == *source.connection) || !(f.target() == *target.connection)) {
      throw Error("P(f): images do not belong to the source and target of f");
    }
    if (auto v = check_morphism(f); !v.ok) {
      throw Error("P(f): " + v.message);
    }
    auto const& F = f.matrix();
    Matrix      out(target.bimodule->dim(), source.bimodule->dim());
    for (std::size_t col = 0; col < source.basis.size(); ++col) {
      auto [g, r] = source.basis[col];
      for (std::size_t g2 = 0; g2 < F.rows(); ++g2) {
        if (!F(g2, g).is_zero()) {
          out(target.index.at({g2, r}), col) = F(g2, g);
        }
      }
    }
    BimoduleMorphism m(source.bimodule, target.bimodule, std::move(out));
    if (auto v = check_bimodule_morphism(m); !v.ok) {
      throw Error("P(f): " + v.message);
    }
    return m;
  }

  MuIso mu(ConnectionImage const& gamma, ConnectionImage const& delta, ObjectImage const& first,
           ObjectImage const& middle, ObjectImage const& last) {
    auto const& Gc = *gamma.connection;
    auto const& Dc = *delta.connection;
    auto        cc = std::make_shared<QuiverConnection const>(compose_connections(Gc, Dc));
    auto        pairs = composite_basis(Gc, Dc);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_index;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      pair_index[pairs[k]] = k;
    }

    MuIso out{gamma, delta, p_connection(cc, first, last),
              tensor_compose(gamma.bimodule, delta.bimodule), {}, {}};
    auto const& comp = out.composite;
    auto const& t    = out.tensor;
    auto const& qc   = *last.quotient;
    std::size_t dc = comp.bimodule->dim(), dt = t.product->dim();
    std::size_t dm = gamma.bimodule->dim(), dn = delta.bimodule->dim();

    // (gamma, delta) p -> gamma (x) delta p.
    Matrix fwd(dt, dc);
    for (std::size_t col = 0; col < dc; ++col) {
      auto [k, r] = comp.basis[col];
      auto [g, d] = pairs[k];
      auto x      = unit_vector(dm, gamma.gamma_index(g));
      auto y      = delta.element(d, PathVector::of(qc.basis()[r]));
      fwd.set_column(col, t.element(x, y));
    }

    // gamma q (x) n -> gamma (x) q n, read back in the composite basis.
    std::size_t mid_dim = middle.quotient->dim();
    auto        lift    = t.space.lift_matrix();
    Matrix      bwd(dc, dt);
    for (std::size_t col = 0; col < dt; ++col) {
      Vector acc(dc);
      for (std::size_t i = 0; i < dm; ++i) {
        auto [g, rq] = gamma.basis[i];
        for (std::size_t j = 0; j < dn; ++j) {
          auto const& w = lift(i * dn + j, col);
          if (w.is_zero()) {
            continue;
          }
          auto y = delta.bimodule->act_left(unit_vector(mid_dim, rq), unit_vector(dn, j));
          for (std::size_t j2 = 0; j2 < dn; ++j2) {
            if (y[j2].is_zero()) {
              continue;
            }
            auto [d2, r2] = delta.basis[j2];
            auto it       = pair_index.find({g, d2});
            if (it == pair_index.end()) {
              throw Error("mu: " + Gc.gamma(g).label + " and " + Dc.gamma(d2).label
                          + " do not compose");
            }
            acc[comp.index.at({it->second, r2})].add_product(w, y[j2]);
          }
        }
      }
      bwd.set_column(col, acc);
    }
    out.mu         = BimoduleMorphism(comp.bimodule, t.product, std::move(fwd));
    out.mu_inverse = BimoduleMorphism(t.product, comp.bimodule, std::move(bwd));
    return out;
  }

  Verdict check_mu(MuIso const& m) {
    if (!(m.mu.matrix() * m.mu_inverse.matrix()).is_identity()
        || !(m.mu_inverse.matrix() * m.mu.matrix()).is_identity()) {
      return Verdict::fail("mu and its inverse do not compose to the identity");
    }
    if (auto v = check_bimodule_morphism(m.mu); !v.ok) {
      return Verdict::fail("mu: " + v.message);
    }
    if (auto v = check_bimodule_morphism(m.mu_inverse); !v.ok) {
      return Verdict::fail("mu inverse: " + v.message);
    }
    return Verdict::pass();
  }

  Verdict check_mu_naturality(ConnectionMorphism const& f, ConnectionMorphism const& g,
                              MuIso const& source, MuIso const& target) {
    auto pf  = p_morphism(f, source.first, target.first);
    auto pg  = p_morphism(g, source.second, target.second);
    auto lhs = compose_horizontal(pf, pg, source.tensor, target.tensor).matrix()
               * source.mu.matrix();
    auto pfg = p_morphism(compose_horizontal(f, g), source.composite, target.composite);
    auto rhs = target.mu.matrix() * pfg.matrix();
    for (std::size_t r = 0; r < lhs.rows(); ++r) {
      for (std::size_t c = 0; c < lhs.cols(); ++c) {
        if (lhs(r, c) != rhs(r, c)) {
          return Verdict::fail("naturality square differs at entry " + pair_name(r, c) + " of "
                               + source.composite.bimodule->labels()[c]);
        }
      }
    }
    return Verdict::pass();
  }

  RecoveredConnection connection_from_bimodule(BimoduleWithQuiverData const& m,
                                               std::optional<Quiver> const& source,
                                               std::optional<Quiver> const& target) {
    auto ga = gabriel_presentation(m.left());
    auto gb = gabriel_presentation(m.right());
    auto pick = [](Quiver const& gab, std::optional<Quiver> const& given, char const* side) {
      if (!given) {
        return gab;
      }
      bool same = given->vertex_count() == gab.vertex_count()
                  && given->edge_count() == gab.edge_count();
      for (std::size_t e = 0; same && e < gab.edge_count(); ++e) {
        same = given->edge(e).source == gab.edge(e).source
               && given->edge(e).target == gab.edge(e).target;
      }
      if (!same) {
        throw Error(std::string("supplied ") + side + " quiver does not match the Gabriel quiver");
      }
      return *given;
    };
    auto G = pick(ga.bound_quiver.quiver(), source, "source");
    auto H = pick(gb.bound_quiver.quiver(), target, "target");

    auto pb = projective_basis(m);
    if (!pb.dualizable) {
      throw Error("not in the essential image: " + pb.reason);
    }
    RecoveredConnection out;
    out.gammas = pb.basis;
    std::map<VertexPair, std::vector<std::string>> labels;
    for (std::size_t j = 0; j < pb.basis.size(); ++j) {
      labels[{pb.left_vertex[j], pb.right_vertex[j]}].push_back("m" + std::to_string(j + 1));
    }
    // Same construction order as the projective basis, so gamma j is basis j.
    QuiverConnection shape(G, H, labels, {});

    auto const&                  L = m.layer();
    std::map<VertexPair, Matrix> us;
    for (std::size_t g = 0; g < G.vertex_count(); ++g) {
      for (std::size_t h = 0; h < H.vertex_count(); ++h) {
        auto const& dom = shape.domain_basis(g, h);
        auto const& cod = shape.codomain_basis(g, h);
        if (dom.empty() && cod.empty()) {
          continue;
        }
        std::vector<Vector> cols, rhs;
        for (auto [gm, e] : cod) {
          cols.push_back(L.project(m.act_right(out.gammas[gm], gb.arrow_images[e])));
        }
        for (auto [e, gm] : dom) {
          rhs.push_back(L.project(m.act_left(ga.arrow_images[e], out.gammas[gm])));
        }
        auto C = Matrix::from_columns(cols, L.dim());
        if (rank(C) != cols.size()) {
          throw Error("not in the essential image: products gamma b at block " + pair_name(g, h)
                      + " are dependent in rad M/rad^2 M");
        }
        auto X = solve(C, Matrix::from_columns(rhs, L.dim()));
        if (!X) {
          throw Error("not in the essential image: a gamma at block " + pair_name(g, h)
                      + " has no expansion as sum gamma' b in rad M/rad^2 M");
        }
        us[{g, h}] = std::move(*X);
      }
    }
    out.connection = QuiverConnection(G, H, labels, us);
    for (std::size_t j = 0; j < out.connection.gamma_count(); ++j) {
      auto const& gm = out.connection.gamma(j);
      if (gm.g != pb.left_vertex[j] || gm.h != pb.right_vertex[j]) {
        throw Error("gamma order does not follow the projective basis");
      }
    }
    if (auto v = out.connection.validate(); !v.ok) {
      throw Error("not in the essential image: " + v.message);
    }
    return out;
  }

  ConnectionMorphism roundtrip_connection(std::shared_ptr<QuiverConnection const> c,
                                          ObjectImage const& source, ObjectImage const& target) {
    auto img = p_connection(c, source, target);
    auto rc  = connection_from_bimodule(*img.bimodule, source.bound_quiver.quiver(),
                                        target.bound_quiver.quiver());
    std::size_t n  = img.bimodule->dim();
    auto        cp = std::make_shared<QuiverConnection const>(std::move(rc.connection));
    Matrix      rhs(n, c->gamma_count());
    for (std::size_t g = 0; g < c->gamma_count(); ++g) {
      rhs.set_column(g, unit_vector(n, img.gamma_index(g)));
    }
    Matrix basis(n, 0);
    if (!rc.gammas.empty()) {
      basis = Matrix::from_columns(rc.gammas, n);
    }
    auto t = solve(basis, rhs);
    if (!t) {
      throw Error("round trip: a gamma is not in the span of the recovered basis");
    }
    return ConnectionMorphism(c, cp, std::move(*t));
  }

  AlgebraIso roundtrip_algebra(AlgebraWithQuiverData const& awd) {
    auto const& A = awd.algebra();
    AlgebraIso  out;
    out.presentation = gabriel_presentation(awd);
    out.image        = p_object(out.presentation.bound_quiver, A.field());
    auto const& qa   = *out.image.quotient;
    auto const& P    = *out.image.algebra;
    std::size_t n    = A.dim();

    out.phi = Matrix(n, qa.dim());
    for (std::size_t i = 0; i < qa.dim(); ++i) {
      out.phi.set_column(i, out.presentation.apply(PathVector::of(qa.basis()[i])));
    }
    auto inv = inverse(out.phi);
    if (!inv) {
      out.homomorphism = Verdict::fail("rho is not bijective on standard paths");
      return out;
    }
    out.phi_inverse = std::move(*inv);
    if (out.phi.apply(P.algebra().unit()) != A.unit()) {
      out.homomorphism = Verdict::fail("phi does not preserve the unit");
    }
    for (std::size_t i = 0; out.homomorphism.ok && i < qa.dim(); ++i) {
      for (std::size_t j = 0; j < qa.dim(); ++j) {
        auto lhs = out.phi.apply(to_dense(qa.product(i, j), qa.dim()));
        if (lhs != A.multiply(out.phi.column(i), out.phi.column(j))) {
          out.homomorphism = Verdict::fail("phi is not multiplicative on " + pair_name(i, j));
          break;
        }
      }
    }
    auto top_phi = awd.top().projection_matrix() * out.phi * P.top().lift_matrix();
    if (out.phi * P.delta1() != awd.delta1() * top_phi) {
      out.delta1_square = Verdict::fail("phi delta1_P != delta1_A phi~");
    }
    auto layer_phi = awd.layer().projection_matrix() * out.phi * P.layer().lift_matrix();
    if (out.phi * P.delta2() != awd.delta2() * layer_phi) {
      out.delta2_square = Verdict::fail("phi delta2_P != delta2_A phi~ on rad/rad^2");
    }
    return out;
  }

  Verdict compare_presentation(BoundQuiver const& original, GabrielPresentation const& gp,
                               QuotientAlgebra const& qa) {
    auto const& Q  = original.quiver();
    auto const& Q2 = gp.bound_quiver.quiver();
    if (Q2.vertex_count() != Q.vertex_count()) {
      return Verdict::fail("vertex count " + std::to_string(Q2.vertex_count()) + " vs "
                           + std::to_string(Q.vertex_count()));
    }
    std::vector<std::size_t> sigma;
    for (auto const& f : gp.vertex_images) {
      auto v = qa.element(f);
      if (v.size() != 1 || !v.terms().begin()->first.is_trivial()
          || v.terms().begin()->second != Scalar(1)) {
        return Verdict::fail("an idempotent is not a trivial path: " + v.to_string(Q));
      }
      sigma.push_back(v.terms().begin()->first.source());
    }
    auto sorted = sigma;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      return Verdict::fail("two idempotents map to the same vertex");
    }
    for (std::size_t s = 0; s < Q2.vertex_count(); ++s) {
      for (std::size_t t = 0; t < Q2.vertex_count(); ++t) {
        if (Q2.edge_count_between(s, t) != Q.edge_count_between(sigma[s], sigma[t])) {
          return Verdict::fail("arrow count differs at " + pair_name(s, t));
        }
      }
    }
    if (gp.bound_quiver.ideal().standard_paths().size() != qa.dim()) {
      return Verdict::fail("dim kQ/I changed");
    }

    // The algebra map kQ' -> kQ sending each arrow to its image.
    std::vector<PathVector> psi;
    for (auto const& a : gp.arrow_images) {
      psi.push_back(qa.element(a));
    }
    std::size_t L     = std::max(original.bound(), gp.bound_quiver.bound());
    auto        apply = [&](PathVector const& v) {
      PathVector out;
      for (auto const& [p, c] : v.terms()) {
        auto img = PathVector::of(Path::trivial(sigma[p.source()]));
        for (auto e : p.edges()) {
          img = (img * psi[e]).truncated(L + 1);
        }
        out += c * img;
      }
      return out;
    };
    for (std::size_t s = 0; s < Q2.vertex_count(); ++s) {
      for (std::size_t t = 0; t < Q2.vertex_count(); ++t) {
        std::vector<PathVector> mapped;
        for (auto const& v : gp.bound_quiver.ideal().spanning_set(s, t, L)) {
          mapped.push_back(apply(v));
        }
        auto coords = enumerate_paths(Q, L, sigma[s], sigma[t]);
        auto theirs = span_in(coords, original.ideal().spanning_set(sigma[s], sigma[t], L));
        if (span_in(coords, mapped) != theirs) {
          return Verdict::fail("ideals differ at " + pair_name(s, t));
        }
      }
    }
    return Verdict::pass();
  }

}  // namespace quivcon
