#include <limits>
#include <random>

#include "doctest.h"

#include "quivcon/error.hpp"
#include "quivcon/linalg.hpp"
#include "quivcon/subspace.hpp"

using namespace quivcon;

namespace {
  Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    std::uniform_int_distribution<int> den(1, 3);
    Matrix                             m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        m(i, j) = Scalar(mpq_class(d(rng), den(rng)));
      }
    }
    return m;
  }

  Matrix mat(std::vector<std::vector<long>> const& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < rows[i].size(); ++j) {
        m(i, j) = rows[i][j];
      }
    }
    return m;
  }
}  // namespace

TEST_CASE("scalars are exact and canonical") {
  Field q;
  auto  a = q.parse("2/4");
  CHECK(a.rational().get_num() == 1);
  CHECK(a.rational().get_den() == 2);
  CHECK(q.parse("-6/-4") == Scalar(mpq_class(3, 2)));
  CHECK((a + a).is_one());
  CHECK((Scalar(1) / Scalar(3)) * Scalar(3) == Scalar(1));
  CHECK_THROWS_AS(q.parse("1/0"), Error);
  CHECK_THROWS_AS(q.parse("x"), Error);
  CHECK_THROWS_AS(q.parse("1.5"), Error);
}

TEST_CASE("small and big rationals agree with gmp") {
  // Operands straddle the int64 boundary so results move between the
  // inline and heap forms in both directions.
  std::mt19937_64 rng(31);
  auto pick = [&]() -> mpq_class {
    static long long const edges[] = {0, 1, -1, 2, 3, 7, (1LL << 31) + 11, (1LL << 62) - 1,
                                      std::numeric_limits<long long>::max(),
                                      std::numeric_limits<long long>::min() + 1,
                                      std::numeric_limits<long long>::min()};
    auto n = edges[rng() % std::size(edges)] - static_cast<long long>(rng() % 3);
    auto d = edges[1 + rng() % (std::size(edges) - 2)];
    mpq_class q(mpz_class(std::to_string(n)), mpz_class(std::to_string(d < 0 ? -d : d)));
    if (rng() % 4 == 0) {
      q *= mpq_class(mpz_class("340282366920938463463374607431768211457"));
    }
    q.canonicalize();
    return q;
  };
  for (int trial = 0; trial < 3000; ++trial) {
    auto qa = pick(), qb = pick();
    Scalar a(qa), b(qb);
    CAPTURE(qa.get_str());
    CAPTURE(qb.get_str());
    CHECK((a + b).rational() == qa + qb);
    CHECK((a - b).rational() == qa - qb);
    CHECK((a * b).rational() == qa * qb);
    CHECK((-a).rational() == -qa);
    if (qb != 0) {
      CHECK((a / b).rational() == qa / qb);
    }
    CHECK((a == b) == (qa == qb));
    CHECK(a.to_string() == qa.get_str());
    auto c = a;
    c.add_product(a, b);
    c.subtract_product(b, b);
    CHECK(c.rational() == qa + qa * qb - qb * qb);
    // Equal values compare equal whichever way they were built.
    CHECK((a + b) - b == a);
  }
}

TEST_CASE("prime field arithmetic") {
  auto f = Field::prime(7);
  auto x = f.parse("3");
  CHECK(x.modulus() == 7);
  CHECK((x * x).residue() == 2);
  CHECK(x.inverse().residue() == 5);
  CHECK(f.parse("1/2").residue() == 4);
  CHECK(x + Scalar(4) == Scalar(0));
  CHECK(-x == f.parse("4"));
  CHECK_THROWS_AS(f.parse("1/7"), Error);
  CHECK_THROWS_AS(Field::prime(8), Error);
  CHECK_THROWS_AS(x + Field::prime(5).parse("1"), Error);
}

TEST_CASE("rref fixed examples") {
  auto id = rref(Matrix::identity(2));
  CHECK(id.reduced == Matrix::identity(2));
  CHECK(id.pivots == std::vector<std::size_t>{0, 1});

  auto r = rref(mat({{2, 4}, {1, 2}}));
  CHECK(r.reduced == mat({{1, 2}, {0, 0}}));
  CHECK(r.pivots == std::vector<std::size_t>{0});
}

TEST_CASE("rref is idempotent and rank preserving") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    auto m  = random_matrix(rng, 4, 4, -3, 3);
    auto r1 = rref(m);
    auto r2 = rref(r1.reduced);
    CHECK(r1.reduced == r2.reduced);
    CHECK(r1.pivots == r2.pivots);
    // The row space is preserved: each original row lies in the span.
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < 4; ++i) {
      rows.push_back(r1.reduced.row(i));
    }
    auto s = Subspace::span(4, rows);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(s.contains(m.row(i)));
    }
    CHECK(s.dim() == r1.pivots.size());
  }
}

TEST_CASE("kernel") {
  CHECK(kernel(Matrix::identity(3)).is_zero());
  CHECK(kernel(Matrix(3, 3)).dim() == 3);
  auto k = kernel(mat({{1, 1}}));
  REQUIRE(k.dim() == 1);
  CHECK(k.contains(Vector{1, -1}));

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = random_matrix(rng, 3, 5, -2, 2);
    auto ker = kernel(m);
    CHECK(ker.dim() == 5 - rank(m));
    for (auto const& v : ker.basis()) {
      CHECK(is_zero(m.apply(v)));
    }
  }
}

TEST_CASE("solve") {
  Vector b{3, -1};
  CHECK(solve(Matrix::identity(2), b) == b);
  // Free variables are set to zero.
  CHECK(solve(mat({{1, 1}}), Vector{2}) == Vector{2, 0});
  CHECK_FALSE(solve(mat({{1}, {1}}), Vector{1, 2}).has_value());

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = random_matrix(rng, 4, 4, -3, 3);
    auto inv = inverse(m);
    if (inv) {
      CHECK(m * *inv == Matrix::identity(4));
      CHECK(*inv * m == Matrix::identity(4));
    } else {
      CHECK(rank(m) < 4);
    }
  }
}

TEST_CASE("subspace predicates") {
  auto x = Subspace::span(2, {Vector{1, 0}});
  auto y = Subspace::span(2, {Vector{0, 1}});
  CHECK(x == x);
  CHECK_FALSE(x.contains(Vector{0, 1}));
  CHECK(x.sum(y) == Subspace::full(2));
  CHECK(x.intersect(y).is_zero());
  CHECK_THROWS_AS(x.sum(Subspace::full(3)), Error);

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = Subspace::span(4, {random_matrix(rng, 1, 4, -1, 1).row(0),
                                random_matrix(rng, 1, 4, -1, 1).row(0)});
    auto b = Subspace::span(4, {random_matrix(rng, 1, 4, -1, 1).row(0),
                                random_matrix(rng, 1, 4, -1, 1).row(0)});
    bool both_ways = a.contains(b) && b.contains(a);
    CHECK((a == b) == both_ways);
    auto meet = a.intersect(b);
    CHECK(a.contains(meet));
    CHECK(b.contains(meet));
    CHECK(meet.dim() + a.sum(b).dim() == a.dim() + b.dim());
  }
}

TEST_CASE("quotient coordinates") {
  auto big   = Subspace::full(3);
  auto small = Subspace::span(3, {Vector{1, 1, 0}});
  QuotientSpace q(big, small);
  CHECK(q.dim() == 2);
  Vector v{2, 5, -1};
  auto   c = q.project(v);
  CHECK(small.contains(q.lift(c) - v));
  CHECK(q.projection_matrix().apply(v) == c);
  CHECK(q.project(Vector{1, 1, 0}) == Vector{0, 0});
}
