#include "quivcon/quotient_algebra.hpp"

namespace quivcon {

  QuotientAlgebra::QuotientAlgebra(BoundQuiver bq)
      : bq_(std::move(bq)), basis_(bq_.ideal().standard_paths()) {
    std::size_t n = basis_.size();
    for (std::size_t i = 0; i < n; ++i) {
      index_.emplace(basis_[i], i);
    }
    table_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto pq = compose(basis_[i], basis_[j]);
        if (!pq) {
          continue;
        }
        table_[i * n + j] = to_sparse(coordinates(PathVector::of(*pq)));
      }
    }
  }

  std::optional<std::size_t> QuotientAlgebra::index_of(Path const& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  Vector QuotientAlgebra::coordinates(PathVector const& v) const {
    Vector out(basis_.size());
    auto   nf = bq_.ideal().normal_form(v);
    for (auto const& [p, c] : nf.terms()) {
      out[index_.at(p)] = c;
    }
    return out;
  }

  PathVector QuotientAlgebra::element(Vector const& c) const {
    PathVector out;
    for (std::size_t i = 0; i < c.size(); ++i) {
      out.add(basis_.at(i), c[i]);
    }
    return out;
  }

  Vector QuotientAlgebra::unit() const {
    Vector u(basis_.size());
    for (std::size_t v = 0; v < quiver().vertex_count(); ++v) {
      u[index_.at(Path::trivial(v))] = 1;
    }
    return u;
  }

  Vector QuotientAlgebra::multiply(Vector const& x, Vector const& y) const {
    std::size_t n = basis_.size();
    Vector      out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i].is_zero()) {
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j].is_zero()) {
          continue;
        }
        Scalar c = x[i] * y[j];
        for (auto const& [k, s] : product(i, j)) {
          out[k].add_product(c, s);
        }
      }
    }
    return out;
  }

  Verdict QuotientAlgebra::check_associativity() const {
    std::size_t n = basis_.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto ij = to_dense(product(i, j), n);
        for (std::size_t k = 0; k < n; ++k) {
          auto left  = multiply(ij, unit_vector(n, k));
          auto right = multiply(unit_vector(n, i), to_dense(product(j, k), n));
          if (left != right) {
            return Verdict::fail("associativity fails on basis triple (" + std::to_string(i)
                                 + "," + std::to_string(j) + "," + std::to_string(k) + ")");
          }
        }
      }
    }
    return Verdict::pass();
  }

  Subspace radical_power_basis(QuotientAlgebra const& qa, std::size_t k) {
    SubspaceBuilder b(qa.dim());
    auto const&     ideal = qa.bound_quiver().ideal();
    if (k < ideal.bound()) {
      for (auto const& p : enumerate_paths(qa.quiver(), ideal.bound() - 1)) {
        if (p.length() >= k) {
          b.add(qa.coordinates(PathVector::of(p)));
        }
      }
    }
    return b.finish();
  }

}  // namespace quivcon
