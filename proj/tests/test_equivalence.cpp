#include "doctest.h"

#include "quivcon/equivalence.hpp"
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

  std::shared_ptr<QuiverConnection const> share(QuiverConnection c) {
    return std::make_shared<QuiverConnection const>(std::move(c));
  }

  std::shared_ptr<QuiverConnection const> loop_scalar(long c, std::string const& label = "g") {
    Matrix u(1, 1);
    u(0, 0) = c;
    return share(QuiverConnection(loop(), loop(), {{{0, 0}, {label}}}, {{{0, 0}, u}}));
  }

  FiniteDimAlgebra upper_triangular() {
    return FiniteDimAlgebra(Field::rationals(), {"e11", "e22", "e12"},
                            {{0, 0, 0, Scalar(1)},
                             {1, 1, 1, Scalar(1)},
                             {0, 2, 2, Scalar(1)},
                             {2, 1, 2, Scalar(1)}},
                            {Scalar(1), Scalar(1), Scalar(0)});
  }

  std::size_t index_of(BimoduleWithQuiverData const& m, std::string const& label) {
    auto it = std::find(m.labels().begin(), m.labels().end(), label);
    REQUIRE(it != m.labels().end());
    return static_cast<std::size_t>(it - m.labels().begin());
  }
}  // namespace

TEST_CASE("P on objects") {
  auto a = p_object(BoundQuiver::truncated(a2(), 2));
  CHECK(a.algebra->algebra().dim() == 3);
  CHECK(a.algebra->idempotents().size() == 2);
  CHECK(a.algebra->layer().dim() == 1);
  CHECK(validate_quiver_data(*a.algebra).ok);
  CHECK(a.algebra->delta2().column(0) == unit_vector(3, 2));

  auto l = p_object(BoundQuiver::truncated(loop(), 3));
  CHECK(l.algebra->algebra().dim() == 3);
  CHECK(l.algebra->idempotents().size() == 1);

  auto k3 = p_object(BoundQuiver::truncated(Quiver({"1", "2", "3"}, {}), 2));
  CHECK(k3.algebra->algebra().dim() == 3);
  CHECK(k3.algebra->delta1().is_identity());
}

TEST_CASE("P on connections") {
  SUBCASE("identity connection gives the unit bimodule") {
    for (auto const& bq : {BoundQuiver::truncated(a2(), 2), BoundQuiver::truncated(loop(), 3)}) {
      auto o   = p_object(bq);
      auto img = p_connection(share(identity_connection(bq.quiver())), o, o);
      auto u   = unit_bimodule(o.algebra);
      CHECK(img.bimodule->left_action() == u.left_action());
      CHECK(img.bimodule->right_action() == u.right_action());
      CHECK(img.bimodule->delta1() == u.delta1());
      CHECK(img.bimodule->delta2() == u.delta2());
    }
  }
  SUBCASE("loop-c over loop/(x^2)") {
    auto o   = p_object(BoundQuiver::truncated(loop(), 2));
    auto img = p_connection(loop_scalar(3), o, o);
    auto const& m = *img.bimodule;
    CHECK(m.dim() == 2);
    auto g  = index_of(m, "g");
    auto gx = index_of(m, "g*x");
    // x g = 3 g x.
    auto xg = m.act_left(unit_vector(2, 1), unit_vector(2, g));
    CHECK(xg == Scalar(3) * unit_vector(2, gx));
    CHECK(projective_basis(m).dualizable);
  }
  SUBCASE("two labels between A2 copies") {
    auto o = p_object(BoundQuiver::truncated(a2(), 2));
    // Gamma_{1,1} = {p}, Gamma_{2,2} = {q}: reduced paths from 1 are e1, a; from 2 just e2.
    Matrix u(1, 1);
    u(0, 0) = 2;
    auto c   = share(QuiverConnection(a2(), a2(), {{{0, 0}, {"p"}}, {{1, 1}, {"q"}}},
                                      {{{0, 1}, u}}));
    REQUIRE(c->validate().ok);
    auto img = p_connection(c, o, o);
    CHECK(img.bimodule->dim() == 3);
  }
  SUBCASE("mismatched ideals") {
    auto small = p_object(BoundQuiver::truncated(loop(), 2));
    auto big   = p_object(BoundQuiver::truncated(loop(), 3));
    CHECK_THROWS_AS(p_connection(loop_scalar(2), small, big), Error);
  }
  SUBCASE("random truncated instances") {
    Rng rng(7101);
    for (int it = 0; it < 15; ++it) {
      auto inst = random_small_instance(rng, {}, false, 20);
      auto s    = p_object(inst.source);
      auto t    = p_object(inst.target);
      auto img  = p_connection(share(inst.connection), s, t);
      auto pb   = projective_basis(*img.bimodule);
      REQUIRE(pb.dualizable);
      CHECK(check_projective_basis(*img.bimodule, pb).ok);
      CHECK(rad_filtration(*img.bimodule).rad.dim() + inst.connection.gamma_count()
            == img.bimodule->dim());
    }
  }
}

TEST_CASE("P on 2-morphisms") {
  auto o  = p_object(BoundQuiver::truncated(loop(), 3));
  auto c  = loop_scalar(2);
  auto pc = p_connection(c, o, o);
  auto id = p_morphism(ConnectionMorphism::identity(c), pc, pc);
  CHECK(id.matrix().is_identity());
  auto five = p_morphism(ConnectionMorphism(c, c, Scalar(5) * Matrix::identity(1)), pc, pc);
  CHECK(five.matrix() == Scalar(5) * Matrix::identity(3));

  Rng rng(7102);
  for (int it = 0; it < 10; ++it) {
    auto inst = random_small_instance(rng, {}, false, 20);
    auto s    = p_object(inst.source);
    auto t    = p_object(inst.target);
    auto c1   = share(inst.connection);
    auto c2   = share(conjugate_connection(inst.connection, random_block_invertible(rng, *c1), "'"));
    auto c3   = share(conjugate_connection(*c2, random_block_invertible(rng, *c2), "'"));
    auto f    = random_morphism(rng, c1, c2);
    auto g    = random_morphism(rng, c2, c3);
    auto p1 = p_connection(c1, s, t), p2 = p_connection(c2, s, t), p3 = p_connection(c3, s, t);
    auto pf = p_morphism(f, p1, p2);
    auto pg = p_morphism(g, p2, p3);
    CHECK(p_morphism(compose_vertical(f, g), p1, p3).matrix()
          == compose_vertical(pf, pg).matrix());
  }
}

TEST_CASE("mu") {
  SUBCASE("loop connections") {
    auto o  = p_object(BoundQuiver::truncated(loop(), 3));
    auto pg = p_connection(loop_scalar(2, "g"), o, o);
    auto pd = p_connection(loop_scalar(-1, "d"), o, o);
    auto m  = mu(pg, pd, o, o, o);
    CHECK(m.composite.bimodule->dim() == 3);
    CHECK(m.tensor.product->dim() == 3);
    CHECK(check_mu(m).ok);
    CHECK(check_splittings(m.tensor).ok);
  }
  SUBCASE("identity second factor") {
    auto bq = BoundQuiver::truncated(a2(), 2);
    auto o  = p_object(bq);
    Matrix u(1, 1);
    u(0, 0) = 4;
    auto c  = share(QuiverConnection(a2(), a2(), {{{0, 0}, {"p"}}, {{1, 1}, {"q"}}},
                                     {{{0, 1}, u}}));
    auto m  = mu(p_connection(c, o, o), p_connection(share(identity_connection(a2())), o, o), o,
                 o, o);
    CHECK(check_mu(m).ok);
  }
  SUBCASE("random composable pairs and naturality") {
    Rng rng(7103);
    for (int it = 0; it < 10; ++it) {
      auto tr = random_small_composable(rng, {}, 2, 20);
      std::vector<ObjectImage> objs;
      for (auto const& bq : tr.objects) {
        objs.push_back(p_object(bq));
      }
      auto g1 = share(tr.arrows[0]);
      auto d1 = share(tr.arrows[1]);
      auto g2 = share(conjugate_connection(*g1, random_block_invertible(rng, *g1), "'"));
      auto d2 = share(conjugate_connection(*d1, random_block_invertible(rng, *d1), "'"));
      auto m1 = mu(p_connection(g1, objs[0], objs[1]), p_connection(d1, objs[1], objs[2]), objs[0],
                   objs[1], objs[2]);
      auto m2 = mu(p_connection(g2, objs[0], objs[1]), p_connection(d2, objs[1], objs[2]), objs[0],
                   objs[1], objs[2]);
      REQUIRE(check_mu(m1).ok);
      REQUIRE(check_mu(m2).ok);
      CHECK(m1.composite.bimodule->dim() == m1.tensor.product->dim());
      auto f = random_morphism(rng, g1, g2);
      auto g = random_morphism(rng, d1, d2);
      CHECK(check_mu_naturality(f, g, m1, m2).ok);
      CHECK(check_mu_naturality(ConnectionMorphism::identity(g1), ConnectionMorphism::identity(d1),
                                m1, m1)
                .ok);
    }
  }
  SUBCASE("corrupted mu") {
    auto o   = p_object(BoundQuiver::truncated(loop(), 3));
    auto c   = loop_scalar(2);
    auto m   = mu(p_connection(c, o, o), p_connection(c, o, o), o, o, o);
    auto bad = m.mu.matrix();
    bad(0, 0) += Scalar(1);
    m.mu = BimoduleMorphism(m.mu.source_ptr(), m.mu.target_ptr(), bad);
    CHECK_FALSE(check_mu(m).ok);
    auto id = ConnectionMorphism::identity(c);
    CHECK_FALSE(check_mu_naturality(id, id, m, mu(p_connection(c, o, o), p_connection(c, o, o), o,
                                                  o, o))
                    .ok);
  }
}

TEST_CASE("connection from bimodule") {
  SUBCASE("unit bimodule") {
    auto o  = p_object(BoundQuiver::truncated(a2(), 2));
    auto rc = connection_from_bimodule(unit_bimodule(o.algebra));
    auto id = identity_connection(rc.connection.source());
    CHECK(rc.connection.gamma_count() == 2);
    for (std::size_t g = 0; g < 2; ++g) {
      for (std::size_t h = 0; h < 2; ++h) {
        CHECK(rc.connection.gamma_dim(g, h) == id.gamma_dim(g, h));
        CHECK(rc.connection.U(g, h) == id.U(g, h));
      }
    }
  }
  SUBCASE("loop-c recovers c") {
    auto o  = p_object(BoundQuiver::truncated(loop(), 3));
    auto rc = connection_from_bimodule(*p_connection(loop_scalar(-3), o, o).bimodule);
    CHECK(rc.connection.U(0, 0) == Scalar(-3) * Matrix::identity(1));
  }
  SUBCASE("not dualizable") {
    auto                   o = p_object(BoundQuiver::truncated(loop(), 2));
    BimoduleWithQuiverData s(o.algebra, o.algebra, {"s"}, {Matrix::identity(1), Matrix(1, 1)},
                             {Matrix::identity(1), Matrix(1, 1)});
    s = s.with_quiver_data(Matrix::identity(1), Matrix(1, 0));
    CHECK_THROWS_AS(connection_from_bimodule(s), Error);
  }
}

TEST_CASE("round trips") {
  SUBCASE("identity and loop connections") {
    auto o = p_object(BoundQuiver::truncated(loop(), 3));
    auto c = share(identity_connection(loop()));
    auto f = roundtrip_connection(c, o, o);
    CHECK(f.matrix().is_identity());
    auto f2 = roundtrip_connection(loop_scalar(5), o, o);
    CHECK(check_morphism(f2).ok);
    CHECK(f2.is_invertible());
  }
  SUBCASE("random connections") {
    Rng rng(7104);
    for (int it = 0; it < 10; ++it) {
      auto inst = random_small_instance(rng, {}, it % 2 == 0, 20);
      auto f    = roundtrip_connection(share(inst.connection), p_object(inst.source),
                                       p_object(inst.target));
      CHECK(check_morphism(f).ok);
      CHECK(f.is_invertible());
    }
  }
  SUBCASE("algebras") {
    auto awd = canonical_quiver_data(upper_triangular());
    auto iso = roundtrip_algebra(awd);
    CHECK(iso.presentation.bound_quiver.quiver().vertex_count() == 2);
    CHECK(iso.presentation.bound_quiver.is_truncated());
    CHECK(iso.homomorphism.ok);
    CHECK(iso.delta1_square.ok);
    CHECK(iso.delta2_square.ok);
    CHECK((iso.phi * iso.phi_inverse).is_identity());

    FiniteDimAlgebra kk(Field::rationals(), {"e1", "e2"},
                        {{0, 0, 0, Scalar(1)}, {1, 1, 1, Scalar(1)}}, {Scalar(1), Scalar(1)});
    auto iso2 = roundtrip_algebra(canonical_quiver_data(kk));
    CHECK(iso2.homomorphism.ok);
    CHECK(iso2.presentation.bound_quiver.quiver().edge_count() == 0);
  }
  SUBCASE("bound quivers") {
    Rng rng(7105);
    for (int it = 0; it < 10; ++it) {
      auto q  = random_quiver(rng, GeneratorBounds{});
      auto bq = random_bound_quiver(rng, q, uniform(rng, 2, 4), 2);
      auto o  = p_object(bq);
      auto gp = gabriel_presentation(*o.algebra);
      CHECK(compare_presentation(bq, gp, *o.quotient).ok);
      auto iso = roundtrip_algebra(*o.algebra);
      CHECK(iso.homomorphism.ok);
      CHECK(iso.delta1_square.ok);
    }
  }
}
