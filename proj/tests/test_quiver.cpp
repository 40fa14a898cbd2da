#include <functional>
#include <random>

#include "doctest.h"

#include "quivcon/error.hpp"
#include "quivcon/quotient_algebra.hpp"

using namespace quivcon;

namespace {
  Quiver a2() {
    return Quiver({"1", "2"}, {{"a", "1", "2"}});
  }
  Quiver loop() {
    return Quiver({"v"}, {{"x", "v", "v"}});
  }
  Quiver kronecker() {
    return Quiver({"1", "2"}, {{"a", "1", "2"}, {"b", "1", "2"}});
  }

  // Depth-first count of edge sequences that compose, independent of
  // enumerate_paths.
  std::size_t dfs_count(Quiver const& q, std::size_t max_len) {
    std::size_t                                count = q.vertex_count();
    std::function<void(std::size_t, std::size_t)> go = [&](std::size_t v, std::size_t len) {
      if (len == max_len) {
        return;
      }
      for (std::size_t e = 0; e < q.edge_count(); ++e) {
        if (q.edge(e).source == v) {
          ++count;
          go(q.edge(e).target, len + 1);
        }
      }
    };
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      go(v, 0);
    }
    return count;
  }

  // Ideal dimension below the bound by spanning every p * g * r directly.
  std::size_t brute_ideal_dim(Quiver const& q, std::vector<PathVector> const& gens,
                              std::size_t n) {
    auto                         paths = enumerate_paths(q, n - 1);
    std::map<Path, std::size_t>  idx;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      idx.emplace(paths[i], i);
    }
    SubspaceBuilder b(paths.size());
    for (auto const& g : gens) {
      for (auto const& p : paths) {
        for (auto const& r : paths) {
          auto   w = (PathVector::of(p) * g * PathVector::of(r)).truncated(n);
          Vector v(paths.size());
          for (auto const& [path, c] : w.terms()) {
            v[idx.at(path)] = c;
          }
          b.add(v);
        }
      }
    }
    return b.dim();
  }

  Quiver random_quiver(std::mt19937_64& rng, std::size_t nv, std::size_t ne) {
    std::vector<std::string>      vs;
    std::vector<Quiver::EdgeSpec> es;
    for (std::size_t v = 0; v < nv; ++v) {
      vs.push_back("v" + std::to_string(v));
    }
    std::uniform_int_distribution<std::size_t> pick(0, nv - 1);
    for (std::size_t e = 0; e < ne; ++e) {
      es.push_back({"e" + std::to_string(e), vs[pick(rng)], vs[pick(rng)]});
    }
    return Quiver(vs, es);
  }

  // Random endpoint-homogeneous combination of paths of length 2..n.
  std::optional<PathVector> random_generator(std::mt19937_64& rng, Quiver const& q,
                                             std::size_t n) {
    auto all = enumerate_paths(q, n);
    std::vector<Path> longish;
    for (auto const& p : all) {
      if (p.length() >= 2) {
        longish.push_back(p);
      }
    }
    if (longish.empty()) {
      return std::nullopt;
    }
    auto       pivot = longish[std::uniform_int_distribution<std::size_t>(0, longish.size() - 1)(rng)];
    PathVector g     = PathVector::of(pivot);
    std::uniform_int_distribution<int> coin(-2, 2);
    for (auto const& p : longish) {
      if (p.source() == pivot.source() && p.target() == pivot.target() && !(p == pivot)) {
        g.add(p, Scalar(coin(rng)));
      }
    }
    return g;
  }
}  // namespace

TEST_CASE("compose_paths") {
  auto q = a2();
  auto a = q.arrow(0);
  CHECK(compose(q.trivial_path(0), a) == a);
  CHECK(compose(a, q.trivial_path(1)) == a);
  CHECK_FALSE(compose(a, a).has_value());
  CHECK_FALSE(compose(q.trivial_path(1), a).has_value());

  auto l = loop();
  auto x = l.arrow(0);
  CHECK(compose(x, x) == l.path(std::vector<std::size_t>{0, 0}));
  CHECK_THROWS_AS(q.path(std::vector<std::size_t>{0, 0}), Error);
  CHECK_THROWS_AS(q.path(std::vector<std::string>{"nope"}), Error);
}

TEST_CASE("quiver construction errors") {
  CHECK_THROWS_AS(Quiver({"1", "1"}, {}), Error);
  CHECK_THROWS_AS(Quiver({"1"}, {{"a", "1", "2"}}), Error);
  CHECK_THROWS_AS(Quiver({"1"}, {{"a", "1", "1"}, {"a", "1", "1"}}), Error);
}

TEST_CASE("enumerate_paths") {
  CHECK(enumerate_paths(a2(), 2).size() == 3);
  CHECK(enumerate_paths(loop(), 2).size() == 3);
  CHECK(enumerate_paths(kronecker(), 1).size() == 4);
  CHECK(enumerate_paths(kronecker(), 1, 0, 1).size() == 2);
  CHECK(enumerate_paths(loop(), 0).size() == 1);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    auto q     = random_quiver(rng, 1 + trial % 3, trial % 5);
    auto paths = enumerate_paths(q, 3);
    CHECK(paths.size() == dfs_count(q, 3));
    CHECK(std::is_sorted(paths.begin(), paths.end()));
  }
}

TEST_CASE("path composition is associative with local units") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    auto q     = random_quiver(rng, 2, 3);
    auto paths = enumerate_paths(q, 2);
    for (auto const& p : paths) {
      CHECK(compose(q.trivial_path(p.source()), p) == p);
      CHECK(compose(p, q.trivial_path(p.target())) == p);
      for (auto const& r : paths) {
        for (auto const& s : paths) {
          auto pr = compose(p, r);
          auto rs = compose(r, s);
          std::optional<Path> left  = pr ? compose(*pr, s) : std::nullopt;
          std::optional<Path> right = rs ? compose(p, *rs) : std::nullopt;
          CHECK(left == right);
        }
      }
    }
  }
}

TEST_CASE("ideal closure examples") {
  auto l  = loop();
  auto x2 = PathVector::of(l.path(std::vector<std::size_t>{0, 0}));
  BoundQuiver bq(l, {x2}, 3);
  CHECK(bq.ideal().block(0, 0).ideal.dim() == 1);
  CHECK(QuotientAlgebra(bq).dim() == 2);

  CHECK(QuotientAlgebra(BoundQuiver::truncated(a2(), 2)).dim() == 3);
  CHECK(QuotientAlgebra(BoundQuiver::truncated(loop(), 3)).dim() == 3);
  CHECK(BoundQuiver::truncated(loop(), 3).ideal().ideal_dimension() == 0);

  CHECK_THROWS_AS(BoundQuiver(l, {PathVector::of(l.arrow(0))}, 3), Error);
  CHECK_THROWS_AS(BoundQuiver(l, {}, 1), Error);
  auto q     = Quiver({"1", "2"}, {{"a", "1", "2"}, {"b", "2", "1"}});
  auto mixed = PathVector::of(q.path(std::vector<std::size_t>{0, 1}))
               + PathVector::of(q.path(std::vector<std::size_t>{1, 0}));
  CHECK_THROWS_AS(BoundQuiver(q, {mixed}, 3), Error);
}

TEST_CASE("normal_form") {
  auto        l  = loop();
  auto        x  = PathVector::of(l.arrow(0));
  auto        x2 = x * x;
  BoundQuiver bq(l, {x2}, 3);
  auto const& I = bq.ideal();
  CHECK(I.normal_form(x2).is_zero());
  CHECK(I.normal_form(x) == x);
  CHECK(I.normal_form(x2 + x) == x);

  // x^2 - x^3 with n = 4: x^3 is in the ideal, so x^2 is too.
  BoundQuiver b4(l, {x2 - x2 * x}, 4);
  CHECK(b4.ideal().normal_form(x2).is_zero());
}

TEST_CASE("closure matches brute force and normal form properties") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    auto        q = random_quiver(rng, 1 + trial % 3, 1 + trial % 4);
    std::size_t n = 2 + trial % 3;
    std::vector<PathVector> gens;
    for (int g = 0; g < 2; ++g) {
      if (auto gen = random_generator(rng, q, n)) {
        gens.push_back(*gen);
      }
    }
    BoundQuiver bq(q, gens, n);
    auto const& I = bq.ideal();
    CHECK(I.ideal_dimension() == brute_ideal_dim(q, gens, n));

    QuotientAlgebra qa(bq);
    CHECK(qa.dim() + I.ideal_dimension() == enumerate_paths(q, n - 1).size());
    CHECK(qa.check_associativity().ok);
    CHECK(radical_power_basis(qa, n).is_zero());
    CHECK(radical_power_basis(qa, 0) == Subspace::full(qa.dim()));

    auto paths = enumerate_paths(q, n);
    for (auto const& g : gens) {
      for (auto const& p : paths) {
        CHECK(I.contains(PathVector::of(p) * g));
        CHECK(I.contains(g * PathVector::of(p)));
      }
    }
    std::uniform_int_distribution<int>         c(-3, 3);
    std::uniform_int_distribution<std::size_t> pick(0, paths.size() - 1);
    for (int k = 0; k < 5; ++k) {
      PathVector u, v;
      for (int t = 0; t < 3; ++t) {
        u.add(paths[pick(rng)], Scalar(c(rng)));
        v.add(paths[pick(rng)], Scalar(c(rng)));
      }
      auto nu = I.normal_form(u);
      CHECK(I.normal_form(nu) == nu);
      CHECK(I.normal_form(u + Scalar(2) * v) == nu + Scalar(2) * I.normal_form(v));
      CHECK(I.contains(u - nu));
    }

    // rad^k rad^m is contained in rad^(k+m).
    for (std::size_t k = 0; k <= n; ++k) {
      for (std::size_t m = 0; m + k <= n; ++m) {
        auto rk = radical_power_basis(qa, k);
        auto rm = radical_power_basis(qa, m);
        auto rkm = radical_power_basis(qa, k + m);
        for (auto const& a : rk.basis()) {
          for (auto const& b : rm.basis()) {
            CHECK(rkm.contains(qa.multiply(a, b)));
          }
        }
      }
    }
  }
}

TEST_CASE("quotient algebra examples") {
  auto        l  = loop();
  auto        x  = PathVector::of(l.arrow(0));
  QuotientAlgebra cube(BoundQuiver(l, {x * x * x}, 4));
  CHECK(cube.dim() == 3);
  CHECK(cube.basis()[0] == Path::trivial(0));
  CHECK(cube.basis()[2] == l.path(std::vector<std::size_t>{0, 0}));
  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k <= 3; ++k) {
    dims.push_back(radical_power_basis(cube, k).dim());
  }
  CHECK(dims == std::vector<std::size_t>{3, 2, 1, 0});

  QuotientAlgebra a(BoundQuiver::truncated(a2(), 2));
  CHECK(radical_power_basis(a, 0).dim() == 3);
  CHECK(radical_power_basis(a, 1).dim() == 1);
  CHECK(radical_power_basis(a, 2).dim() == 0);
  CHECK(a.unit() == Vector{1, 1, 0});

  CHECK(QuotientAlgebra(BoundQuiver::truncated(kronecker(), 2)).dim() == 4);

  QuotientAlgebra gf(BoundQuiver(l, {x * x * x}, 4));
  auto            f7 = Field::prime(7);
  PathVector      v  = f7.parse("3") * x;
  CHECK(gf.coordinates(v * v)[2] == f7.parse("2"));
}
