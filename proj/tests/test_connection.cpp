#include "doctest.h"

#include "quivcon/connection.hpp"
#include "quivcon/generators.hpp"
#include "quivcon/linalg.hpp"

using namespace quivcon;

namespace {
  Quiver loop() {
    return Quiver({"v"}, {{"x", "v", "v"}});
  }
  Quiver a2() {
    return Quiver({"1", "2"}, {{"a", "1", "2"}});
  }

  QuiverConnection loop_scalar(long c, std::string const& label = "g") {
    auto q = loop();
    Matrix u(1, 1);
    u(0, 0) = c;
    return QuiverConnection(q, q, {{{0, 0}, {label}}}, {{{0, 0}, u}});
  }

  Path xs(std::size_t n) {
    auto q = loop();
    if (n == 0) {
      return q.trivial_path(0);
    }
    return q.path(std::vector<std::size_t>(n, 0));
  }

  Scalar pow(Scalar c, std::size_t n) {
    Scalar r(1);
    for (std::size_t i = 0; i < n; ++i) {
      r *= c;
    }
    return r;
  }

  // Random vector of type (m, 0) through c.
  MixedPathVector random_left(Rng& rng, QuiverConnection const& c, std::size_t max_len) {
    MixedPathVector v;
    if (c.gamma_count() == 0) {
      return v;
    }
    auto paths = enumerate_paths(c.source(), max_len);
    for (int t = 0; t < 4; ++t) {
      auto x = uniform(rng, 0, c.gamma_count() - 1);
      std::vector<Path> fits;
      for (auto const& p : paths) {
        if (p.target() == c.gamma(x).g) {
          fits.push_back(p);
        }
      }
      auto const& p = fits[uniform(rng, 0, fits.size() - 1)];
      v.add(mixed_path(c, p, x, Path::trivial(c.gamma(x).h)), small_scalar(rng));
    }
    return v;
  }
}  // namespace

TEST_CASE("validate_connection") {
  CHECK(identity_connection(a2()).validate().ok);
  CHECK(loop_scalar(5).validate().ok);
  auto bad = loop_scalar(0).validate();
  CHECK_FALSE(bad.ok);
  CHECK(bad.message.find("singular") != std::string::npos);

  // Gamma_{1,1} only on A2 -> A2: domain of U_{1,2} is empty but the
  // codomain Gamma_{1,1} (x) a is not.
  auto q = a2();
  QuiverConnection unbalanced(q, q, {{{0, 0}, {"g"}}}, {});
  auto v = unbalanced.validate();
  CHECK_FALSE(v.ok);
  CHECK(v.message.find("dimension mismatch") != std::string::npos);
  CHECK_THROWS_AS(QuiverConnection(q, q, {{{0, 0}, {"g"}}, {{1, 1}, {"g"}}}, {}), Error);
}

TEST_CASE("transport examples") {
  auto c = loop_scalar(5);
  auto q = loop();
  auto g = MixedPath{xs(0), 0, xs(0)};
  CHECK(transport(c, MixedPathVector::of(g)) == MixedPathVector::of(g));
  CHECK(transport(c, MixedPathVector::of({xs(1), 0, xs(0)}))
        == MixedPathVector::of({xs(0), 0, xs(1)}, Scalar(5)));
  CHECK(transport(c, MixedPathVector::of({xs(2), 0, xs(0)}))
        == MixedPathVector::of({xs(0), 0, xs(2)}, pow(Scalar(5), 2)));
  CHECK(inverse_transport(c, MixedPathVector::of({xs(0), 0, xs(1)}))
        == MixedPathVector::of({xs(1), 0, xs(0)}, Scalar(mpq_class(1, 5))));
  CHECK(inverse_transport(c, MixedPathVector::of(g)) == MixedPathVector::of(g));

  // Through the identity connection every path comes out unchanged.
  auto id = identity_connection(a2());
  auto a  = a2().arrow(0);
  CHECK(transport(id, MixedPathVector::of({a, 1, Path::trivial(1)}))
        == MixedPathVector::of({Path::trivial(0), 0, a}));
}

TEST_CASE("transport properties on random connections") {
  Rng             rng(101);
  GeneratorBounds b;
  for (int trial = 0; trial < 60; ++trial) {
    auto inst = random_truncated_instance(rng, b);
    auto const& c = inst.connection;
    REQUIRE(c.validate().ok);
    auto v = random_left(rng, c, 3);
    auto w = random_left(rng, c, 3);
    auto tv = transport(c, v);
    // Inverse round trip.
    CHECK(inverse_transport(c, tv) == v);
    // Linearity.
    CHECK(transport(c, v + Scalar(3) * w) == tv + Scalar(3) * transport(c, w));
    // Factorization: split every G-path as prefix, suffix.
    MixedPathVector staged;
    for (auto const& [p, x] : v.terms()) {
      auto len = p.g_path.length();
      auto k   = len / 2;
      auto first = transport(c, MixedPathVector::of({p.g_path.slice(c.source(), k, len), p.gamma,
                                                     p.h_path}, x));
      MixedPathVector lifted;
      for (auto const& [r, y] : first.terms()) {
        lifted.add({p.g_path.slice(c.source(), 0, k), r.gamma, r.h_path}, y);
      }
      staged += transport(c, lifted);
    }
    CHECK(staged == tv);
    // Path lengths are exchanged exactly.
    for (auto const& [p, x] : tv.terms()) {
      CHECK(p.g_path.is_trivial());
    }
  }
}

TEST_CASE("composition examples") {
  auto cd = compose_connections(loop_scalar(3, "c"), loop_scalar(4, "d"));
  CHECK(cd.gamma_count() == 1);
  CHECK(cd.gamma(0).label == "(c,d)");
  CHECK(cd.U(0, 0)(0, 0) == Scalar(12));

  auto id = identity_connection(a2());
  CHECK(id.gamma_dim(0, 0) == 1);
  CHECK(id.gamma_dim(0, 1) == 0);
  CHECK(id.U(0, 1).is_identity());
  auto idid = compose_connections(id, id);
  auto lu   = left_unitor(id);
  CHECK(check_morphism(lu).ok);
  CHECK(lu.is_invertible());
  CHECK(lu.source() == idid);

  Rng rng(7);
  GeneratorBounds b;
  for (int trial = 0; trial < 30; ++trial) {
    auto t  = random_composable(rng, b, 2);
    auto const& G = t.arrows[0];
    auto const& D = t.arrows[1];
    auto GD = compose_connections(G, D);
    CHECK(GD.validate().ok);
    for (std::size_t i = 0; i < G.source().vertex_count(); ++i) {
      for (std::size_t j = 0; j < D.target().vertex_count(); ++j) {
        std::size_t expect = 0;
        for (std::size_t k = 0; k < G.target().vertex_count(); ++k) {
          expect += G.gamma_dim(i, k) * D.gamma_dim(k, j);
        }
        CHECK(GD.gamma_dim(i, j) == expect);
      }
    }
    // Composite transport of one edge equals transporting through each factor.
    auto pairs = composite_basis(G, D);
    for (std::size_t n = 0; n < pairs.size(); ++n) {
      auto [x, y] = pairs[n];
      for (auto e : GD.source().in_edges(GD.gamma(n).g)) {
        auto direct = transport(GD, MixedPathVector::of({GD.source().arrow(e), n,
                                                        Path::trivial(GD.gamma(n).h)}));
        auto first  = transport(G, MixedPathVector::of({G.source().arrow(e), x,
                                                        Path::trivial(G.gamma(x).h)}));
        MixedPathVector expect;
        for (auto const& [p, c1] : first.terms()) {
          auto second = transport(D, MixedPathVector::of({p.h_path, y,
                                                          Path::trivial(D.gamma(y).h)}));
          for (auto const& [r, c2] : second.terms()) {
            std::size_t idx = 0;
            for (; idx < pairs.size(); ++idx) {
              if (pairs[idx] == std::pair{p.gamma, r.gamma}) {
                break;
              }
            }
            expect.add({p.g_path, idx, r.h_path}, c1 * c2);
          }
        }
        CHECK(direct == expect);
      }
    }
  }
}

TEST_CASE("check_morphism examples") {
  auto c = std::make_shared<QuiverConnection const>(loop_scalar(3, "c"));
  auto d = std::make_shared<QuiverConnection const>(loop_scalar(4, "d"));
  CHECK(check_morphism(ConnectionMorphism::identity(c)).ok);
  auto one = ConnectionMorphism(c, d, Matrix::identity(1));
  auto v   = check_morphism(one);
  CHECK_FALSE(v.ok);
  CHECK(v.message.find("(v,v,v,v)") != std::string::npos);
  Matrix seven(1, 1);
  seven(0, 0) = 7;
  CHECK(check_morphism(ConnectionMorphism(c, c, seven)).ok);
  CHECK(morphism_space(c, d).empty());
  CHECK(morphism_space(c, c).size() == 1);

  auto id = std::make_shared<QuiverConnection const>(identity_connection(a2()));
  CHECK(morphism_space(id, id).size() == 1);
}

TEST_CASE("2-morphism composition and interchange") {
  Rng             rng(55);
  GeneratorBounds b;
  b.max_gamma_dim = 2;
  for (int trial = 0; trial < 25; ++trial) {
    auto t = random_composable(rng, b, 2);
    auto G  = std::make_shared<QuiverConnection const>(t.arrows[0]);
    auto D  = std::make_shared<QuiverConnection const>(t.arrows[1]);
    auto G2 = std::make_shared<QuiverConnection const>(
        conjugate_connection(*G, random_block_invertible(rng, *G), "'"));
    auto D2 = std::make_shared<QuiverConnection const>(
        conjugate_connection(*D, random_block_invertible(rng, *D), "'"));
    auto f1 = random_morphism(rng, G, G2);
    auto f2 = random_morphism(rng, G2, G);
    auto g1 = random_morphism(rng, D, D2);
    auto g2 = random_morphism(rng, D2, D);
    CHECK(check_morphism(f1).ok);
    CHECK(check_morphism(g1).ok);

    CHECK(compose_vertical(f1, ConnectionMorphism::identity(G2)).matrix() == f1.matrix());
    auto hid = compose_horizontal(ConnectionMorphism::identity(G), ConnectionMorphism::identity(D));
    CHECK(hid.matrix().is_identity());

    auto vert = compose_vertical(f1, f2);
    CHECK(check_morphism(vert).ok);
    auto h1 = compose_horizontal(f1, g1);
    auto h2 = compose_horizontal(f2, g2);
    CHECK(check_morphism(h1).ok);
    // (f2 . f1) * (g2 . g1) = (f2 * g2) . (f1 * g1)
    auto lhs = compose_horizontal(compose_vertical(f1, f2), compose_vertical(g1, g2));
    auto rhs = compose_vertical(h1, h2);
    CHECK(lhs.matrix() == rhs.matrix());
  }
}

TEST_CASE("associator and unitors") {
  Rng             rng(77);
  GeneratorBounds b;
  b.max_gamma_dim = 2;
  for (int trial = 0; trial < 20; ++trial) {
    auto t = random_composable(rng, b, 3);
    auto a = associator(t.arrows[0], t.arrows[1], t.arrows[2]);
    CHECK(check_morphism(a).ok);
    CHECK(a.is_invertible());
    auto lu = left_unitor(t.arrows[0]);
    auto ru = right_unitor(t.arrows[0]);
    CHECK(check_morphism(lu).ok);
    CHECK(check_morphism(ru).ok);
    CHECK(lu.is_invertible());
    CHECK(ru.is_invertible());
  }
}

TEST_CASE("ideally connected examples") {
  auto q = loop();
  auto x = PathVector::of(q.arrow(0));
  auto c = loop_scalar(5);
  BoundQuiver x2(q, {x * x}, 3);
  BoundQuiver x3(q, {x * x * x}, 4);
  CHECK(check_ideally_connected(c, x2, x2).ok);
  CHECK(check_ideally_connected(c, BoundQuiver::truncated(q, 3), BoundQuiver::truncated(q, 3)).ok);
  auto v = check_ideally_connected(c, x2, x3);
  CHECK_FALSE(v.ok);
  CHECK(v.message.find("x*x") != std::string::npos);
  CHECK(v.message.find("(25)x*x") != std::string::npos);

  // Truncations with different bounds are not compatible in general.
  CHECK_FALSE(check_ideally_connected(c, BoundQuiver::truncated(q, 2),
                                      BoundQuiver::truncated(q, 3)).ok);
}

TEST_CASE("ideal-connectedness properties") {
  Rng             rng(2024);
  GeneratorBounds b;
  for (int trial = 0; trial < 40; ++trial) {
    auto inst = random_truncated_instance(rng, b);
    CHECK(check_ideally_connected(inst.connection, inst.source, inst.target).ok);
  }
  int nontrivial = 0;
  for (int trial = 0; trial < 30; ++trial) {
    auto inst = random_ideal_instance(rng, b);
    auto const& c = inst.connection;
    REQUIRE(check_ideally_connected(c, inst.source, inst.target).ok);
    nontrivial += inst.source.is_truncated() ? 0 : 1;
    auto c2 = conjugate_connection(c, random_block_invertible(rng, c), "'");
    CHECK(check_ideally_connected(c2, inst.source, inst.target).ok);
    auto cc = compose_connections(c, c2);
    CHECK(check_ideally_connected(cc, inst.source, inst.target).ok);

    // A random connection on the same bound quiver: the verdict must not
    // depend on the gamma basis.
    auto r  = random_connection(rng, c.source(), c.target(), 2, "r");
    auto r2 = conjugate_connection(r, random_block_invertible(rng, r), "'");
    CHECK(check_ideally_connected(r, inst.source, inst.target).ok
          == check_ideally_connected(r2, inst.source, inst.target).ok);
  }
  CHECK(nontrivial == 30);
}
