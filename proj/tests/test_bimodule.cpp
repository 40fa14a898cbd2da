#include "doctest.h"

#include "quivcon/bimodule.hpp"
#include "quivcon/linalg.hpp"

using namespace quivcon;

namespace {
  AlgebraPtr from_bound(BoundQuiver bq) {
    return std::make_shared<AlgebraWithQuiverData const>(
        canonical_quiver_data(FiniteDimAlgebra::from_quotient(QuotientAlgebra(std::move(bq)))));
  }

  AlgebraPtr loop_mod(std::size_t n) {
    return from_bound(BoundQuiver::truncated(Quiver({"v"}, {{"x", "v", "v"}}), n));
  }

  AlgebraPtr a2() {
    return from_bound(BoundQuiver::truncated(Quiver({"1", "2"}, {{"a", "1", "2"}}), 2));
  }

  AlgebraPtr field() {
    FiniteDimAlgebra k(Field::rationals(), {"1"}, {{0, 0, 0, Scalar(1)}}, {Scalar(1)});
    return std::make_shared<AlgebraWithQuiverData const>(canonical_quiver_data(k));
  }

  BimodulePtr share(BimoduleWithQuiverData m) {
    return std::make_shared<BimoduleWithQuiverData const>(std::move(m));
  }

  // A as an A-k bimodule.
  BimoduleWithQuiverData left_regular(AlgebraPtr a) {
    auto const&         A = a->algebra();
    std::vector<Matrix> l;
    for (std::size_t i = 0; i < A.dim(); ++i) {
      l.push_back(A.left_multiplication(unit_vector(A.dim(), i)));
    }
    return BimoduleWithQuiverData(a, field(), A.labels(), std::move(l),
                                  {Matrix::identity(A.dim())});
  }
}  // namespace

TEST_CASE("unit bimodule") {
  for (auto const& a : {loop_mod(3), a2(), field()}) {
    auto m = unit_bimodule(a);
    CHECK(validate_bimodule(m).ok);
    CHECK(radical_symmetry_check(m));
    CHECK(validate_bimodule_quiver_data(m).ok);
    CHECK(m.top().dim() == a->top().dim());
    CHECK(m.layer().dim() == a->layer().dim());
  }
}

TEST_CASE("validate_bimodule reports broken actions") {
  // x acting as zero is fine modulo x^2 but not modulo x^3.
  auto a = loop_mod(3);
  auto m = unit_bimodule(a);
  auto l = m.left_action();
  l[1]   = Matrix(3, 3);
  BimoduleWithQuiverData bad(a, a, m.labels(), l, m.right_action());
  auto                   v = validate_bimodule(bad);
  CHECK_FALSE(v.ok);

  // Unit acting as zero.
  l[0] = Matrix(3, 3);
  BimoduleWithQuiverData worse(a, a, m.labels(), l, m.right_action());
  CHECK(validate_bimodule(worse).message.find("unit") != std::string::npos);
}

TEST_CASE("radical symmetry") {
  auto m = left_regular(loop_mod(2));
  CHECK(validate_bimodule(m).ok);
  CHECK_FALSE(radical_symmetry_check(m));
  CHECK_THROWS_AS(rad_filtration(m), Error);

  auto f = rad_filtration(unit_bimodule(loop_mod(3)));
  CHECK(f.rad.dim() == 2);
  CHECK(f.rad2.dim() == 1);
}

TEST_CASE("quiver data conditions") {
  auto a = loop_mod(3);
  auto m = unit_bimodule(a);
  SUBCASE("condition 1") {
    auto d1 = m.delta1();
    d1(0, 0) += Scalar(1);
    CHECK(validate_bimodule_quiver_data(m.with_quiver_data(d1, m.delta2())).message.find(
              "condition 1")
          == 0);
  }
  SUBCASE("condition 3") {
    // delta2(x) = x + x^2 is still a section, but delta2_A(x) delta1_M(1) = x.
    auto d2 = m.delta2();
    d2(2, 0) += Scalar(1);
    auto v = validate_bimodule_quiver_data(m.with_quiver_data(m.delta1(), d2));
    CHECK(v.message.find("condition 3") == 0);
  }
  SUBCASE("condition 2 on two vertices") {
    auto b  = a2();
    auto u  = unit_bimodule(b);
    auto d1 = u.delta1();
    // Move e1 to e1 + a: still a section, but no longer equivariant.
    std::size_t arrow = 2;
    REQUIRE(u.labels()[arrow] == "a");
    for (std::size_t c = 0; c < d1.cols(); ++c) {
      if (!d1(0, c).is_zero()) {
        d1(arrow, c) += Scalar(1);
      }
    }
    auto v = validate_bimodule_quiver_data(u.with_quiver_data(d1, u.delta2()));
    CHECK(v.message.find("condition 2") == 0);
  }
}

TEST_CASE("section_from_lifts") {
  QuotientSpace q(Subspace::full(2), Subspace::span(2, {{Scalar(0), Scalar(1)}}));
  auto          s = section_from_lifts(q, {{Scalar(1), Scalar(5)}});
  CHECK(s.column(0) == Vector{Scalar(1), Scalar(5)});
  CHECK_THROWS_AS(section_from_lifts(q, {{Scalar(0), Scalar(1)}}), Error);
}

TEST_CASE("projective basis") {
  for (auto const& a : {loop_mod(3), a2()}) {
    auto m  = unit_bimodule(a);
    auto pb = projective_basis(m);
    REQUIRE(pb.dualizable);
    CHECK(pb.basis.size() == a->top().dim());
    CHECK(check_projective_basis(m, pb).ok);
    auto dec = decompose(m, pb);
    CHECK((dec.g * dec.g_inverse).is_identity());
    CHECK((dec.g_inverse * dec.g).is_identity());
  }

  // The simple module k over k[x]/(x^2) on both sides is not projective.
  auto                   a = loop_mod(2);
  BimoduleWithQuiverData s(a, a, {"s"}, {Matrix::identity(1), Matrix(1, 1)},
                           {Matrix::identity(1), Matrix(1, 1)});
  s = s.with_quiver_data(Matrix::identity(1), Matrix(1, 0));
  REQUIRE(validate_bimodule(s).ok);
  REQUIRE(validate_bimodule_quiver_data(s).ok);
  auto pb = projective_basis(s);
  CHECK_FALSE(pb.dualizable);
  CHECK_FALSE(pb.reason.empty());
  CHECK_FALSE(check_projective_basis(s, pb).ok);
}

TEST_CASE("morphisms") {
  auto a = loop_mod(2);
  auto m = share(unit_bimodule(a));
  CHECK(check_bimodule_morphism(BimoduleMorphism::identity(m)).ok);
  CHECK(check_bimodule_morphism(BimoduleMorphism(m, m, Scalar(3) * Matrix::identity(2))).ok);

  // m -> m + m x is a bimodule map but moves delta1(1) = 1 to 1 + x.
  auto shear = Matrix::identity(2) + a->algebra().right_multiplication(unit_vector(2, 1));
  auto v     = check_bimodule_morphism(BimoduleMorphism(m, m, shear));
  CHECK_FALSE(v.ok);
  CHECK(v.message.find("delta1") != std::string::npos);

  // Not a module map: swap 1 and x.
  Matrix swap(2, 2);
  swap(0, 1) = Scalar(1);
  swap(1, 0) = Scalar(1);
  CHECK_FALSE(check_bimodule_morphism(BimoduleMorphism(m, m, swap)).ok);

  auto f = BimoduleMorphism(m, m, Scalar(2) * Matrix::identity(2));
  CHECK(compose_vertical(f, f).matrix() == Scalar(4) * Matrix::identity(2));
  CHECK_THROWS_AS(BimoduleMorphism(m, m, Matrix(1, 2)), Error);
}

TEST_CASE("tensor products") {
  for (auto const& a : {loop_mod(3), a2()}) {
    auto u  = share(unit_bimodule(a));
    auto uu = tensor_compose(u, u);
    CHECK(uu.product->dim() == a->algebra().dim());
    CHECK(check_splittings(uu).ok);
    CHECK(validate_bimodule_quiver_data(*uu.product).ok);

    auto lu = tensor_left_unitor(uu);
    auto ru = tensor_right_unitor(uu);
    CHECK(check_bimodule_morphism(lu).ok);
    CHECK(check_bimodule_morphism(ru).ok);
    CHECK(inverse(lu.matrix()).has_value());
    // On A (x)_A A both unitors are multiplication.
    CHECK(lu.matrix() == ru.matrix());

    auto uu_u = tensor_compose(uu.product, u);
    auto u_uu = tensor_compose(u, uu.product);
    auto assoc = tensor_associator(uu, uu_u, uu, u_uu);
    CHECK(check_bimodule_morphism(assoc).ok);
    CHECK(inverse(assoc.matrix()).has_value());

    auto id  = BimoduleMorphism::identity(u);
    auto idh = compose_horizontal(id, id, uu, uu);
    CHECK(idh.matrix().is_identity());
  }
}

TEST_CASE("tensor of a one-sided module") {
  // M (x)_k k = M for M = A as an A-k bimodule with symmetric radical over
  // A = k x k.
  FiniteDimAlgebra kk(Field::rationals(), {"e1", "e2"},
                      {{0, 0, 0, Scalar(1)}, {1, 1, 1, Scalar(1)}}, {Scalar(1), Scalar(1)});
  auto a  = std::make_shared<AlgebraWithQuiverData const>(canonical_quiver_data(kk));
  auto m0 = left_regular(a);
  REQUIRE(radical_symmetry_check(m0));
  auto m  = share(m0.with_quiver_data(Matrix::identity(2), Matrix(2, 0)));
  REQUIRE(validate_bimodule_quiver_data(*m).ok);
  auto k  = share(unit_bimodule(m->right_ptr()));
  auto mk = tensor_compose(m, k);
  CHECK(mk.product->dim() == 2);
  CHECK(check_splittings(mk).ok);
  auto r = tensor_right_unitor(mk);
  CHECK(check_bimodule_morphism(r).ok);
  CHECK(inverse(r.matrix()).has_value());

  CHECK_THROWS_AS(tensor_compose(k, m), Error);
}
