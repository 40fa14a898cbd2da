#include <algorithm>
#include <random>

#include "doctest.h"

#include "quivcon/gabriel.hpp"
#include "quivcon/generators.hpp"
#include "quivcon/linalg.hpp"

using namespace quivcon;

namespace {
  // Basis e11, e22, e12.
  FiniteDimAlgebra upper_triangular() {
    return FiniteDimAlgebra(Field::rationals(), {"e11", "e22", "e12"},
                            {{0, 0, 0, Scalar(1)},
                             {1, 1, 1, Scalar(1)},
                             {0, 2, 2, Scalar(1)},
                             {2, 1, 2, Scalar(1)}},
                            {Scalar(1), Scalar(1), Scalar(0)});
  }

  FiniteDimAlgebra diagonal(std::size_t n, Field f = Field::rationals()) {
    std::vector<std::string>       labels;
    std::vector<StructureConstant> sc;
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back("e" + std::to_string(i + 1));
      sc.push_back({i, i, i, Scalar(1)});
    }
    return FiniteDimAlgebra(f, labels, sc, Vector(n, f.from_integer(1)));
  }

  // Basis e11, e12, e21, e22.
  FiniteDimAlgebra full_matrices() {
    std::vector<StructureConstant> sc;
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t l = 0; l < 2; ++l) {
          sc.push_back({2 * i + j, 2 * j + l, 2 * i + l, Scalar(1)});
        }
      }
    }
    return FiniteDimAlgebra(Field::rationals(), {"e11", "e12", "e21", "e22"}, sc,
                            {Scalar(1), Scalar(0), Scalar(0), Scalar(1)});
  }

  QuotientAlgebra loop_mod(std::size_t n) {
    return QuotientAlgebra(BoundQuiver::truncated(Quiver({"v"}, {{"x", "v", "v"}}), n));
  }

  QuotientAlgebra a2() {
    return QuotientAlgebra(BoundQuiver::truncated(Quiver({"1", "2"}, {{"a", "1", "2"}}), 2));
  }

  // Trace form computed from explicit multiplication matrices.
  Subspace trace_form_oracle(FiniteDimAlgebra const& a) {
    std::size_t         n = a.dim();
    std::vector<Matrix> L;
    for (std::size_t i = 0; i < n; ++i) {
      L.push_back(a.left_multiplication(unit_vector(n, i)));
    }
    Matrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto   m = L[i] * L[j];
        Scalar tr(0);
        for (std::size_t k = 0; k < n; ++k) {
          tr += m(k, k);
        }
        g(i, j) = tr;
      }
    }
    return kernel(g);
  }

  std::vector<std::size_t> dims(std::vector<Subspace> const& chain) {
    std::vector<std::size_t> out;
    for (auto const& s : chain) {
      out.push_back(s.dim());
    }
    return out;
  }

  // Same algebra in the basis given by the columns of p.
  FiniteDimAlgebra change_basis(FiniteDimAlgebra const& a, Matrix const& p) {
    auto                           pinv = *inverse(p);
    std::size_t                    n    = a.dim();
    std::vector<StructureConstant> sc;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto c = pinv.apply(a.multiply(p.column(i), p.column(j)));
        for (std::size_t k = 0; k < n; ++k) {
          if (!c[k].is_zero()) {
            sc.push_back({i, j, k, c[k]});
          }
        }
      }
    }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back("b" + std::to_string(i));
    }
    return FiniteDimAlgebra(a.field(), labels, sc, pinv.apply(a.unit()));
  }

  std::size_t block_dim(FiniteDimAlgebra const& a, Vector const& f, Subspace const& s,
                        Vector const& g) {
    SubspaceBuilder b(a.dim());
    for (auto const& v : s.basis()) {
      b.add(a.multiply(a.multiply(f, v), g));
    }
    return b.dim();
  }
}  // namespace

TEST_CASE("check_algebra") {
  CHECK(check_algebra(upper_triangular()).ok);
  CHECK(check_algebra(diagonal(2)).ok);
  CHECK(check_algebra(full_matrices()).ok);

  // e12 e22 = e11 breaks associativity: (e11 e12) e22 = e11 but e11 (e12 e22) = e11 e11.
  auto bad = FiniteDimAlgebra(Field::rationals(), {"e11", "e22", "e12"},
                              {{0, 0, 0, Scalar(1)},
                               {1, 1, 1, Scalar(1)},
                               {0, 2, 2, Scalar(1)},
                               {2, 1, 2, Scalar(1)},
                               {2, 2, 2, Scalar(1)}},
                              {Scalar(1), Scalar(1), Scalar(0)});
  auto v = check_algebra(bad);
  CHECK_FALSE(v.ok);
  CHECK(v.message.find("e12") != std::string::npos);

  auto no_unit = FiniteDimAlgebra(Field::rationals(), {"e11", "e22", "e12"},
                                  {{0, 0, 0, Scalar(1)}, {1, 1, 1, Scalar(1)}},
                                  {Scalar(1), Scalar(1), Scalar(0)});
  v = check_algebra(no_unit);
  CHECK_FALSE(v.ok);
  CHECK(v.message.find("unit law") != std::string::npos);
}

TEST_CASE("radical examples") {
  auto ut  = upper_triangular();
  auto rad = radical(ut);
  CHECK(rad == Subspace::span(3, {unit_vector(3, 2)}));
  CHECK(rad == trace_form_oracle(ut));
  CHECK(product_space(ut, rad, rad).is_zero());

  CHECK(radical(diagonal(4)).is_zero());
  CHECK(radical(full_matrices()).is_zero());

  auto qa = loop_mod(2);
  auto a  = FiniteDimAlgebra::from_quotient(qa);
  CHECK(radical(a) == Subspace::span(2, {unit_vector(2, 1)}));
  CHECK(radical(a) == radical_power_basis(qa, 1));

  CHECK_THROWS_AS(radical(diagonal(2, Field::prime(5))), UnsupportedField);
}

TEST_CASE("radical_powers") {
  auto qa = loop_mod(3);
  auto a  = FiniteDimAlgebra::from_quotient(qa);
  CHECK(dims(radical_powers(a, radical(a))) == std::vector<std::size_t>{2, 1, 0});
  CHECK(radical_powers(a, radical(a))[1] == radical_power_basis(qa, 2));

  auto k3 = diagonal(3);
  CHECK(dims(radical_powers(k3, radical(k3))) == std::vector<std::size_t>{0});

  auto p = FiniteDimAlgebra::from_quotient(a2());
  CHECK(dims(radical_powers(p, radical(p))) == std::vector<std::size_t>{1, 0});

  // Not nilpotent: the whole algebra is not a radical.
  CHECK_THROWS_AS(radical_powers(k3, Subspace::full(3)), Error);
}

TEST_CASE("find_primitive_idempotents") {
  auto k2 = diagonal(2);
  auto e  = find_primitive_idempotents(k2, radical(k2));
  REQUIRE(e.size() == 2);
  CHECK(e[0] == Vector{Scalar(1), Scalar(0)});
  CHECK(e[1] == Vector{Scalar(0), Scalar(1)});

  auto ut = upper_triangular();
  auto f  = find_primitive_idempotents(ut, radical(ut));
  REQUIRE(f.size() == 2);
  CHECK(ut.multiply(f[0], f[0]) == f[0]);
  CHECK(ut.multiply(f[1], f[1]) == f[1]);
  CHECK(is_zero(ut.multiply(f[0], f[1])));
  CHECK(is_zero(ut.multiply(f[1], f[0])));
  CHECK(f[0] + f[1] == ut.unit());

  auto m2 = full_matrices();
  CHECK_THROWS_AS(find_primitive_idempotents(m2, radical(m2)), NotBasic);

  // Q(i) = Q[t]/(t^2 + 1) is commutative but does not split over Q.
  auto qi = FiniteDimAlgebra(Field::rationals(), {"1", "t"},
                             {{0, 0, 0, Scalar(1)},
                              {0, 1, 1, Scalar(1)},
                              {1, 0, 1, Scalar(1)},
                              {1, 1, 0, Scalar(-1)}},
                             {Scalar(1), Scalar(0)});
  CHECK_THROWS_AS(find_primitive_idempotents(qi, radical(qi)), NotBasic);
  // Over GF(5), t^2 + 1 = (t - 2)(t + 2) splits.
  auto qi5 = FiniteDimAlgebra(Field::prime(5), {"1", "t"},
                              {{0, 0, 0, Scalar(1)},
                               {0, 1, 1, Scalar(1)},
                               {1, 0, 1, Scalar(1)},
                               {1, 1, 0, Scalar(-1)}},
                              {Scalar(1), Scalar(0)});
  CHECK(find_primitive_idempotents(qi5, Subspace::zero(2)).size() == 2);
}

TEST_CASE("validate_quiver_data") {
  auto qa  = QuotientAlgebra(BoundQuiver::truncated(
      Quiver({"1", "2"}, {{"x", "1", "1"}, {"a", "1", "2"}}), 3));
  auto a   = FiniteDimAlgebra::from_quotient(qa);
  auto awd = canonical_quiver_data(a);
  CHECK(validate_quiver_data(awd).ok);
  REQUIRE(awd.idempotents().size() == 2);
  CHECK(awd.idempotents()[0] + awd.idempotents()[1] == a.unit());

  SUBCASE("dropping an arrow breaks condition 1") {
    auto d2 = awd.delta2();
    d2.set_column(0, zero_vector(a.dim()));
    auto v = validate_quiver_data(AlgebraWithQuiverData(a, awd.rad(), awd.delta1(), d2));
    CHECK_FALSE(v.ok);
    CHECK(v.message.rfind("condition 1", 0) == 0);
  }
  SUBCASE("adding rad^2 terms in the wrong block breaks condition 3") {
    auto xa = qa.coordinates(PathVector::of(qa.quiver().path(std::vector<std::string>{"x", "a"})));
    auto d2 = awd.delta2();
    for (std::size_t j = 0; j < d2.cols(); ++j) {
      d2.set_column(j, d2.column(j) + xa);
    }
    auto v = validate_quiver_data(AlgebraWithQuiverData(a, awd.rad(), awd.delta1(), d2));
    CHECK_FALSE(v.ok);
    CHECK(v.message.rfind("condition 3", 0) == 0);
  }

  auto lq   = loop_mod(2);
  auto la   = FiniteDimAlgebra::from_quotient(lq);
  auto lawd = canonical_quiver_data(la);
  CHECK(validate_quiver_data(lawd).ok);
  SUBCASE("a non-idempotent lift breaks condition 2") {
    auto d1 = lawd.delta1();
    d1.set_column(0, d1.column(0) + unit_vector(2, 1));  // 1 + x
    CHECK_FALSE(la.multiply(d1.column(0), d1.column(0)) == d1.column(0));
    auto v = validate_quiver_data(AlgebraWithQuiverData(la, lawd.rad(), d1, lawd.delta2()));
    CHECK_FALSE(v.ok);
    CHECK(v.message.rfind("condition 2", 0) == 0);
  }

  CHECK_THROWS_AS(AlgebraWithQuiverData(la, lawd.rad(), Matrix(2, 2), lawd.delta2()), Error);
}

TEST_CASE("gabriel_presentation examples") {
  SUBCASE("upper triangular gives A2 with no relations") {
    auto ut  = upper_triangular();
    auto awd = canonical_quiver_data(ut);
    auto gp  = gabriel_presentation(awd);
    auto& q  = gp.bound_quiver.quiver();
    CHECK(q.vertex_count() == 2);
    REQUIRE(q.edge_count() == 1);
    CHECK(q.edge(0).source == 0);
    CHECK(q.edge(0).target == 1);
    CHECK(gp.bound_quiver.is_truncated());
    CHECK(gp.bound_quiver.bound() == 2);
    CHECK(gp.arrow_images[0] == unit_vector(3, 2));
    CHECK(check_presentation(gp, awd).ok);
  }
  SUBCASE("loop mod x^3 comes back") {
    auto qa  = loop_mod(3);
    auto a   = FiniteDimAlgebra::from_quotient(qa);
    auto awd = canonical_quiver_data(a);
    auto gp  = gabriel_presentation(awd);
    CHECK(gp.bound_quiver.quiver().vertex_count() == 1);
    CHECK(gp.bound_quiver.quiver().edge_count() == 1);
    CHECK(gp.bound_quiver.bound() == 3);
    CHECK(gp.bound_quiver.is_truncated());
    CHECK(QuotientAlgebra(gp.bound_quiver).dim() == 3);
    CHECK(check_presentation(gp, awd).ok);
  }
  SUBCASE("k^2 gives two vertices and no arrows") {
    auto k2  = diagonal(2);
    auto awd = canonical_quiver_data(k2);
    auto gp  = gabriel_presentation(awd);
    CHECK(gp.bound_quiver.quiver().vertex_count() == 2);
    CHECK(gp.bound_quiver.quiver().edge_count() == 0);
    CHECK(gp.bound_quiver.is_truncated());
    CHECK(check_presentation(gp, awd).ok);
  }
  SUBCASE("commutative square keeps its relation") {
    Quiver q({"1", "2", "3", "4"},
             {{"a", "1", "2"}, {"b", "2", "4"}, {"c", "1", "3"}, {"d", "3", "4"}});
    auto rel = PathVector::of(q.path(std::vector<std::string>{"a", "b"}))
               - PathVector::of(q.path(std::vector<std::string>{"c", "d"}));
    auto qa  = QuotientAlgebra(BoundQuiver(q, {rel}, 3));
    CHECK(qa.dim() == 9);
    auto a   = FiniteDimAlgebra::from_quotient(qa);
    auto awd = canonical_quiver_data(a);
    auto gp  = gabriel_presentation(awd);
    CHECK(gp.bound_quiver.quiver().vertex_count() == 4);
    CHECK(gp.bound_quiver.quiver().edge_count() == 4);
    CHECK_FALSE(gp.bound_quiver.is_truncated());
    CHECK(gp.bound_quiver.ideal().ideal_dimension() == 1);
    CHECK(check_presentation(gp, awd).ok);
  }
  SUBCASE("not basic") {
    auto m2 = full_matrices();
    CHECK_THROWS_AS(canonical_quiver_data(m2), NotBasic);
  }
}

TEST_CASE("quiver data over GF(p) from a presentation") {
  auto qa  = loop_mod(3);
  auto a   = FiniteDimAlgebra::from_quotient(qa, Field::prime(7));
  auto awd = canonical_quiver_data(a, radical_power_basis(qa, 1));
  CHECK(validate_quiver_data(awd).ok);
  auto gp = gabriel_presentation(awd);
  CHECK(gp.bound_quiver.bound() == 3);
  CHECK(check_presentation(gp, awd).ok);
}

TEST_CASE("radical and Gabriel properties on random quotients") {
  Rng rng(20261016);
  for (int iter = 0; iter < 30; ++iter) {
    CAPTURE(iter);
    auto q  = random_quiver(rng, uniform(rng, 1, 3), uniform(rng, 0, 4), "");
    auto n  = uniform(rng, 2, 4);
    auto bq = random_bound_quiver(rng, q, n, uniform(rng, 0, 2), uniform(rng, 0, 1) == 1);
    QuotientAlgebra qa(bq);
    auto            a = FiniteDimAlgebra::from_quotient(qa);
    REQUIRE(check_algebra(a).ok);

    auto rad = radical(a);
    CHECK(rad == radical_power_basis(qa, 1));
    CHECK(rad == trace_form_oracle(a));
    CHECK(is_two_sided_ideal(a, rad));
    auto chain = radical_powers(a, rad);
    CHECK(chain.back().is_zero());
    CHECK(chain.size() <= a.dim() + 1);
    if (a.dim() > 12) {
      continue;  // dense structure constants get slow beyond this
    }

    // Disguise the path basis, then recover the quiver.
    auto b    = change_basis(a, random_invertible(rng, a.dim()));
    REQUIRE(check_algebra(b).ok);
    auto brad = radical(b);
    CHECK(brad.dim() == rad.dim());
    CHECK(trace_form_oracle(b) == brad);

    auto awd = canonical_quiver_data(b);
    REQUIRE(validate_quiver_data(awd).ok);
    auto gp = gabriel_presentation(awd);
    CHECK(check_presentation(gp, awd).ok);
    auto const& gq = gp.bound_quiver.quiver();
    CHECK(gq.vertex_count() == q.vertex_count());
    CHECK(dims(awd.radical_powers()) == dims(chain));

    // Arrow counts are block dimensions of rad/rad^2.
    auto const& fs = awd.idempotents();
    for (std::size_t s = 0; s < fs.size(); ++s) {
      for (std::size_t t = 0; t < fs.size(); ++t) {
        auto expect = block_dim(b, fs[s], awd.rad(), fs[t])
                      - block_dim(b, fs[s], awd.rad2(), fs[t]);
        CHECK(gq.edge_count_between(s, t) == expect);
      }
    }
  }
}
