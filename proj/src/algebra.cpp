#include "quivcon/algebra.hpp"

#include <algorithm>
#include <set>

#include "quivcon/linalg.hpp"

namespace quivcon {

  FiniteDimAlgebra::FiniteDimAlgebra(Field field, std::vector<std::string> labels,
                                     std::vector<StructureConstant> const& constants,
                                     Vector unit)
      : field_(field), labels_(std::move(labels)), unit_(std::move(unit)) {
    std::size_t n = labels_.size();
    if (unit_.size() != n) {
      throw Error("unit has " + std::to_string(unit_.size()) + " coordinates, expected "
                  + std::to_string(n));
    }
    for (auto& u : unit_) {
      u = field_.coerce(u);
    }
    std::vector<Vector> dense(n * n);
    for (auto const& sc : constants) {
      if (sc.i >= n || sc.j >= n || sc.k >= n) {
        throw Error("structure constant index out of range");
      }
      auto& v = dense[sc.i * n + sc.j];
      if (v.empty()) {
        v.assign(n, Scalar(0));
      }
      v[sc.k] += field_.coerce(sc.c);
    }
    table_.resize(n * n);
    for (std::size_t ij = 0; ij < n * n; ++ij) {
      if (!dense[ij].empty()) {
        table_[ij] = to_sparse(dense[ij]);
      }
    }
  }

  FiniteDimAlgebra FiniteDimAlgebra::from_quotient(QuotientAlgebra const& qa, Field field) {
    std::vector<std::string> labels;
    for (auto const& p : qa.basis()) {
      labels.push_back(qa.quiver().name(p));
    }
    std::vector<StructureConstant> sc;
    for (std::size_t i = 0; i < qa.dim(); ++i) {
      for (std::size_t j = 0; j < qa.dim(); ++j) {
        for (auto const& [k, c] : qa.product(i, j)) {
          sc.push_back({i, j, k, c});
        }
      }
    }
    return FiniteDimAlgebra(field, std::move(labels), sc, qa.unit());
  }

  std::vector<StructureConstant> FiniteDimAlgebra::structure_constants() const {
    std::vector<StructureConstant> out;
    std::size_t                    n = dim();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (auto const& [k, c] : product(i, j)) {
          out.push_back({i, j, k, c});
        }
      }
    }
    return out;
  }

  Vector FiniteDimAlgebra::multiply(Vector const& x, Vector const& y) const {
    std::size_t n = dim();
    if (x.size() != n || y.size() != n) {
      throw Error("algebra element has the wrong length");
    }
    Vector out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i].is_zero()) {
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j].is_zero()) {
          continue;
        }
        auto const& p = product(i, j);
        if (p.empty()) {
          continue;
        }
        Scalar c = x[i] * y[j];
        for (auto const& [k, s] : p) {
          out[k].add_product(c, s);
        }
      }
    }
    return out;
  }

  Matrix FiniteDimAlgebra::left_multiplication(Vector const& x) const {
    std::size_t n = dim();
    Matrix      m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      m.set_column(j, multiply(x, unit_vector(n, j)));
    }
    return m;
  }

  Matrix FiniteDimAlgebra::right_multiplication(Vector const& x) const {
    std::size_t n = dim();
    Matrix      m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      m.set_column(j, multiply(unit_vector(n, j), x));
    }
    return m;
  }

  Verdict check_algebra(FiniteDimAlgebra const& a) {
    std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i) {
      auto bi = unit_vector(n, i);
      if (a.multiply(a.unit(), bi) != bi || a.multiply(bi, a.unit()) != bi) {
        return Verdict::fail("unit law fails on basis element " + a.labels()[i]);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto ij = to_dense(a.product(i, j), n);
        for (std::size_t k = 0; k < n; ++k) {
          auto left  = a.multiply(ij, unit_vector(n, k));
          auto right = a.multiply(unit_vector(n, i), to_dense(a.product(j, k), n));
          if (left != right) {
            return Verdict::fail("associativity fails on triple (" + a.labels()[i] + ","
                                 + a.labels()[j] + "," + a.labels()[k] + ")");
          }
        }
      }
    }
    return Verdict::pass();
  }

  Subspace product_space(FiniteDimAlgebra const& a, Subspace const& s, Subspace const& t) {
    SubspaceBuilder b(a.dim());
    for (auto const& x : s.basis()) {
      for (auto const& y : t.basis()) {
        b.add(a.multiply(x, y));
      }
    }
    return b.finish();
  }

  bool is_two_sided_ideal(FiniteDimAlgebra const& a, Subspace const& s) {
    auto all = Subspace::full(a.dim());
    return s.contains(product_space(a, all, s)) && s.contains(product_space(a, s, all));
  }

  Subspace radical(FiniteDimAlgebra const& a) {
    if (!a.field().is_rational()) {
      throw UnsupportedField("radical discovery from structure constants needs characteristic 0; "
                             "over " + a.field().name() + " use a bound-quiver presentation");
    }
    std::size_t n = a.dim();
    // t_k = tr(L_{b_k}) and G_ij = sum_k c_ij^k t_k.
    Vector t(n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        for (auto const& [l, c] : a.product(k, j)) {
          if (l == j) {
            t[k] += c;
          }
        }
      }
    }
    Matrix G(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (auto const& [k, c] : a.product(i, j)) {
          G(i, j).add_product(c, t[k]);
        }
      }
    }
    return kernel(G);
  }

  std::vector<Subspace> radical_powers(FiniteDimAlgebra const& a, Subspace const& rad) {
    std::vector<Subspace> chain{rad};
    while (!chain.back().is_zero()) {
      auto next = product_space(a, chain.back(), rad);
      if (next.dim() >= chain.back().dim()) {
        throw Error("radical powers do not reach zero: the subspace is not nilpotent");
      }
      chain.push_back(std::move(next));
    }
    return chain;
  }

  Vector top_multiply(FiniteDimAlgebra const& a, QuotientSpace const& top, Vector const& x,
                      Vector const& y) {
    return top.project(a.multiply(top.lift(x), top.lift(y)));
  }

  namespace {
    Scalar evaluate(std::vector<Scalar> const& coeffs, Scalar const& x) {
      Scalar r(0);
      for (std::size_t i = coeffs.size(); i-- > 0;) {
        r = r * x + coeffs[i];
      }
      return r;
    }

    std::vector<mpz_class> divisors(mpz_class n) {
      n = abs(n);
      std::vector<std::pair<mpz_class, unsigned>> factors;
      for (mpz_class p = 2; p * p <= n; ++p) {
        if (p > 10000000) {
          throw Error("integer too large for rational root search");
        }
        unsigned e = 0;
        while (n % p == 0) {
          n /= p;
          ++e;
        }
        if (e > 0) {
          factors.emplace_back(p, e);
        }
      }
      if (n > 1) {
        factors.emplace_back(n, 1);
      }
      std::vector<mpz_class> out{1};
      for (auto const& [p, e] : factors) {
        std::size_t size = out.size();
        mpz_class   pk   = 1;
        for (unsigned k = 1; k <= e; ++k) {
          pk *= p;
          for (std::size_t i = 0; i < size; ++i) {
            out.push_back(out[i] * pk);
          }
        }
      }
      return out;
    }

    // Distinct roots in the field of the polynomial sum coeffs[i] x^i.
    std::vector<Scalar> field_roots(std::vector<Scalar> const& coeffs, Field const& field) {
      std::vector<Scalar> roots;
      if (!field.is_rational()) {
        std::uint64_t p = field.characteristic();
        if (p > 1000000) {
          throw UnsupportedField("root search over " + field.name() + " is limited to p <= 10^6");
        }
        for (std::uint64_t r = 0; r < p; ++r) {
          auto x = Scalar::modular(r, p);
          if (evaluate(coeffs, x).is_zero()) {
            roots.push_back(x);
          }
        }
        return roots;
      }
      mpz_class lcm = 1;
      for (auto const& c : coeffs) {
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.rational().get_den().get_mpz_t());
      }
      std::vector<mpz_class> ints;
      for (auto const& c : coeffs) {
        mpq_class scaled = c.rational() * lcm;
        ints.push_back(scaled.get_num());
      }
      std::size_t low = 0;
      while (low < ints.size() && ints[low] == 0) {
        ++low;
      }
      if (low > 0) {
        roots.push_back(Scalar(0));
      }
      if (ints.size() - low <= 1) {
        return roots;
      }
      std::set<mpq_class> seen;
      for (auto const& num : divisors(ints[low])) {
        for (auto const& den : divisors(ints.back())) {
          for (int sign : {1, -1}) {
            mpq_class q(num * sign, den);
            q.canonicalize();
            if (seen.insert(q).second && evaluate(coeffs, Scalar(q)).is_zero()) {
              roots.push_back(Scalar(q));
            }
          }
        }
      }
      return roots;
    }

  }  // namespace

  std::vector<Vector> top_primitive_idempotents(FiniteDimAlgebra const& a,
                                                QuotientSpace const& top) {
    std::size_t d = top.dim();
    if (d == 0) {
      return {};
    }
    auto mul = [&](Vector const& x, Vector const& y) { return top_multiply(a, top, x, y); };
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) {
        if (mul(unit_vector(d, i), unit_vector(d, j)) != mul(unit_vector(d, j), unit_vector(d, i))) {
          throw NotBasic("not basic: A/rad is not commutative");
        }
      }
    }
    std::vector<Vector> blocks{top.project(a.unit())};
    for (std::size_t j = 0; j < d && blocks.size() < d; ++j) {
      std::vector<Vector> next;
      for (auto const& e : blocks) {
        Vector x = mul(e, unit_vector(d, j));
        // Minimal polynomial of x in the corner eS, whose unit is e.
        std::vector<Vector> powers{e};
        std::vector<Scalar> poly;
        while (true) {
          Vector p   = mul(powers.back(), x);
          auto   sol = solve(Matrix::from_columns(powers, d), p);
          if (sol) {
            for (auto const& c : *sol) {
              poly.push_back(-c);
            }
            poly.push_back(Scalar(1));
            break;
          }
          powers.push_back(std::move(p));
        }
        auto roots = field_roots(poly, a.field());
        if (roots.size() + 1 != poly.size()) {
          throw NotBasic("not basic: A/rad does not split over " + a.field().name());
        }
        if (roots.size() == 1) {
          next.push_back(e);
          continue;
        }
        for (auto const& lambda : roots) {
          Vector E = e;
          for (auto const& mu : roots) {
            if (mu == lambda) {
              continue;
            }
            Vector factor = x - mu * e;
            E             = (Scalar(1) / (lambda - mu)) * mul(E, factor);
          }
          next.push_back(std::move(E));
        }
      }
      blocks = std::move(next);
    }
    if (blocks.size() != d) {
      throw NotBasic("not basic: A/rad is not a product of copies of " + a.field().name());
    }
    std::sort(blocks.begin(), blocks.end(), canonical_less);
    return blocks;
  }

  std::vector<Vector> lift_idempotents(FiniteDimAlgebra const& a, QuotientSpace const& top,
                                       std::vector<Vector> const& top_idempotents) {
    std::vector<Vector> out;
    if (top_idempotents.empty()) {
      return out;
    }
    Vector u = a.unit();
    for (std::size_t i = 0; i + 1 < top_idempotents.size(); ++i) {
      Vector x = a.multiply(a.multiply(u, top.lift(top_idempotents[i])), u);
      for (int iter = 0;; ++iter) {
        Vector x2 = a.multiply(x, x);
        if (x2 == x) {
          break;
        }
        if (iter > 64) {
          throw Error("idempotent lifting did not converge");
        }
        Vector x3 = a.multiply(x2, x);
        x         = Scalar(3) * x2 - Scalar(2) * x3;
      }
      u = u - x;
      out.push_back(std::move(x));
    }
    out.push_back(u);
    return out;
  }

  std::vector<Vector> find_primitive_idempotents(FiniteDimAlgebra const& a, Subspace const& rad) {
    QuotientSpace top(Subspace::full(a.dim()), rad);
    return lift_idempotents(a, top, top_primitive_idempotents(a, top));
  }

}  // namespace quivcon
