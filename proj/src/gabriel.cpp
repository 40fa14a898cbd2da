#include "quivcon/gabriel.hpp"

#include <algorithm>
#include <map>

#include "quivcon/linalg.hpp"
#include "quivcon/quotient_algebra.hpp"

namespace quivcon {

  Vector GabrielPresentation::apply(PathVector const& v) const {
    Vector out = zero_vector(rho.rows());
    for (auto const& [p, c] : v.terms()) {
      auto it = std::lower_bound(domain.begin(), domain.end(), p);
      if (it != domain.end() && *it == p) {
        axpy(out, c, rho.column(static_cast<std::size_t>(it - domain.begin())));
      } else if (p.length() < bound_quiver.bound()) {
        throw Error("path outside the domain of rho");
      }
    }
    return out;
  }

  GabrielPresentation gabriel_presentation(AlgebraWithQuiverData const& awd) {
    if (auto v = validate_quiver_data(awd); !v.ok) {
      throw Error("invalid quiver data: " + v.message);
    }
    auto const& A  = awd.algebra();
    auto const& fs = awd.idempotents();
    std::size_t nv = fs.size();

    struct ArrowRep {
      Vector      image;
      std::size_t s, t;
    };
    std::vector<ArrowRep> reps;
    auto W = awd.arrow_space();
    for (std::size_t s = 0; s < nv; ++s) {
      for (std::size_t t = 0; t < nv; ++t) {
        SubspaceBuilder block(A.dim());
        for (auto const& w : W.basis()) {
          block.add(A.multiply(A.multiply(fs[s], w), fs[t]));
        }
        auto const span = block.finish();
        for (auto const& b : span.basis()) {
          reps.push_back({b, s, t});
        }
      }
    }
    std::sort(reps.begin(), reps.end(),
              [](ArrowRep const& x, ArrowRep const& y) { return canonical_less(x.image, y.image); });
    if (reps.size() != awd.layer().dim()) {
      throw Error("arrow blocks do not span delta2(rad/rad^2)");
    }

    std::vector<std::string> vertices;
    for (std::size_t i = 0; i < nv; ++i) {
      vertices.push_back("v" + std::to_string(i + 1));
    }
    std::vector<Quiver::EdgeSpec> edges;
    for (std::size_t j = 0; j < reps.size(); ++j) {
      edges.push_back({"a" + std::to_string(j + 1), vertices[reps[j].s], vertices[reps[j].t]});
    }
    Quiver      q(vertices, edges);
    std::size_t n = std::max<std::size_t>(awd.nilpotency_degree(), 2);

    GabrielPresentation gp;
    gp.vertex_images = fs;
    for (auto const& r : reps) {
      gp.arrow_images.push_back(r.image);
    }
    gp.domain = enumerate_paths(q, n - 1);
    gp.rho    = Matrix(A.dim(), gp.domain.size());
    for (std::size_t c = 0; c < gp.domain.size(); ++c) {
      auto const& p = gp.domain[c];
      Vector      img = fs[p.source()];
      for (auto e : p.edges()) {
        img = A.multiply(img, gp.arrow_images[e]);
      }
      gp.rho.set_column(c, img);
    }
    if (rank(gp.rho) != A.dim()) {
      throw Error("rho is not onto: rank " + std::to_string(rank(gp.rho)) + " < dim A "
                  + std::to_string(A.dim()));
    }

    // The kernel splits over endpoint pairs since rho(e_s p e_t) = f_s rho(p) f_t.
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> by_ends;
    for (std::size_t c = 0; c < gp.domain.size(); ++c) {
      by_ends[{gp.domain[c].source(), gp.domain[c].target()}].push_back(c);
    }
    std::vector<PathVector> gens;
    for (auto const& [ends, cols] : by_ends) {
      Matrix m(A.dim(), cols.size());
      for (std::size_t k = 0; k < cols.size(); ++k) {
        m.set_column(k, gp.rho.column(cols[k]));
      }
      auto const ker = kernel(m);
      for (auto const& kv : ker.basis()) {
        PathVector g;
        for (std::size_t k = 0; k < cols.size(); ++k) {
          g.add(gp.domain[cols[k]], kv[k]);
        }
        gens.push_back(std::move(g));
      }
    }
    gp.bound_quiver = BoundQuiver(std::move(q), std::move(gens), n);
    auto std_count  = gp.bound_quiver.ideal().standard_paths().size();
    if (std_count != A.dim()) {
      throw Error("dim kQ/I = " + std::to_string(std_count) + " differs from dim A = "
                  + std::to_string(A.dim()));
    }
    return gp;
  }

  Verdict check_presentation(GabrielPresentation const& gp, AlgebraWithQuiverData const& awd) {
    auto const&     A = awd.algebra();
    QuotientAlgebra qa(gp.bound_quiver);
    if (qa.dim() != A.dim()) {
      return Verdict::fail("dimension mismatch: " + std::to_string(qa.dim()) + " vs "
                           + std::to_string(A.dim()));
    }
    Matrix r(A.dim(), qa.dim());
    for (std::size_t i = 0; i < qa.dim(); ++i) {
      r.set_column(i, gp.apply(PathVector::of(qa.basis()[i])));
    }
    if (!inverse(r)) {
      return Verdict::fail("rho is not injective on standard paths");
    }
    if (r.apply(qa.unit()) != A.unit()) {
      return Verdict::fail("rho does not preserve the unit");
    }
    auto const& quiv = gp.bound_quiver.quiver();
    for (std::size_t i = 0; i < qa.dim(); ++i) {
      for (std::size_t j = 0; j < qa.dim(); ++j) {
        auto lhs = r.apply(to_dense(qa.product(i, j), qa.dim()));
        if (lhs != A.multiply(r.column(i), r.column(j))) {
          return Verdict::fail("rho is not multiplicative on (" + quiv.name(qa.basis()[i]) + ","
                               + quiv.name(qa.basis()[j]) + ")");
        }
      }
    }
    return Verdict::pass();
  }

}  // namespace quivcon
