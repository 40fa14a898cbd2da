#include "quivcon/quiver_data.hpp"

#include "quivcon/linalg.hpp"

namespace quivcon {

  AlgebraWithQuiverData::AlgebraWithQuiverData(FiniteDimAlgebra algebra, Subspace rad,
                                               Matrix delta1, Matrix delta2)
      : algebra_(std::move(algebra)), delta1_(std::move(delta1)), delta2_(std::move(delta2)) {
    std::size_t n = algebra_.dim();
    if (rad.ambient_dim() != n) {
      throw Error("radical lives in the wrong ambient space");
    }
    powers_ = quivcon::radical_powers(algebra_, rad);
    top_    = QuotientSpace(Subspace::full(n), rad);
    layer_  = QuotientSpace(rad, rad2());
    if (delta1_.rows() != n || delta1_.cols() != top_.dim()) {
      throw Error("delta1 has shape " + std::to_string(delta1_.rows()) + "x"
                  + std::to_string(delta1_.cols()) + ", expected " + std::to_string(n) + "x"
                  + std::to_string(top_.dim()));
    }
    if (delta2_.rows() != n || delta2_.cols() != layer_.dim()) {
      throw Error("delta2 has shape " + std::to_string(delta2_.rows()) + "x"
                  + std::to_string(delta2_.cols()) + ", expected " + std::to_string(n) + "x"
                  + std::to_string(layer_.dim()));
    }
    top_idempotents_ = top_primitive_idempotents(algebra_, top_);
    for (auto const& e : top_idempotents_) {
      idempotents_.push_back(delta1_.apply(e));
    }
  }

  Subspace AlgebraWithQuiverData::arrow_space() const {
    return Subspace::column_space(delta2_);
  }

  Verdict validate_quiver_data(AlgebraWithQuiverData const& awd) {
    auto const& A  = awd.algebra();
    auto const& d1 = awd.delta1();
    auto const& d2 = awd.delta2();
    std::size_t t  = awd.top().dim();
    std::size_t l  = awd.layer().dim();

    if (!(awd.top().projection_matrix() * d1).is_identity()) {
      return Verdict::fail("condition 1: pi1 o delta1 is not the identity");
    }
    for (std::size_t j = 0; j < l; ++j) {
      auto col = d2.column(j);
      if (!awd.rad().contains(col)) {
        return Verdict::fail("condition 1: delta2 of layer basis vector " + std::to_string(j)
                             + " is not in rad");
      }
      if (awd.layer().project(col) != unit_vector(l, j)) {
        return Verdict::fail("condition 1: pi2 o delta2 is not the identity at layer basis vector "
                             + std::to_string(j));
      }
    }

    if (d1.apply(awd.top().project(A.unit())) != A.unit()) {
      return Verdict::fail("condition 2: delta1 does not send 1 to 1");
    }
    std::vector<Vector> lifts;
    for (std::size_t i = 0; i < t; ++i) {
      lifts.push_back(d1.column(i));
    }
    for (std::size_t i = 0; i < t; ++i) {
      for (std::size_t j = 0; j < t; ++j) {
        auto xy = top_multiply(A, awd.top(), unit_vector(t, i), unit_vector(t, j));
        if (d1.apply(xy) != A.multiply(lifts[i], lifts[j])) {
          return Verdict::fail("condition 2: delta1 is not multiplicative on top basis pair ("
                               + std::to_string(i) + "," + std::to_string(j) + ")");
        }
      }
    }

    for (std::size_t k = 0; k < l; ++k) {
      auto z = d2.column(k);
      for (std::size_t i = 0; i < t; ++i) {
        auto xz = A.multiply(lifts[i], z);
        for (std::size_t j = 0; j < t; ++j) {
          auto w = A.multiply(xz, lifts[j]);
          if (d2.apply(awd.layer().project(w)) != w) {
            return Verdict::fail("condition 3: delta2 is not equivariant on (top " + std::to_string(i)
                                 + ", layer " + std::to_string(k) + ", top " + std::to_string(j)
                                 + ")");
          }
        }
      }
    }
    return Verdict::pass();
  }

  AlgebraWithQuiverData canonical_quiver_data(FiniteDimAlgebra const& a, Subspace const& rad) {
    std::size_t   n = a.dim();
    QuotientSpace top(Subspace::full(n), rad);
    auto          tops = top_primitive_idempotents(a, top);
    auto          fs   = lift_idempotents(a, top, tops);
    std::size_t   t    = top.dim();
    Matrix        d1(n, t);
    if (t > 0) {
      d1 = Matrix::from_columns(fs, n) * *inverse(Matrix::from_columns(tops, t));
    }

    auto          rad2 = product_space(a, rad, rad);
    QuotientSpace layer(rad, rad2);
    std::size_t   l = layer.dim();
    std::vector<Vector> zs, ds;
    for (auto const& fa : fs) {
      for (auto const& fb : fs) {
        SubspaceBuilder block(l);
        for (auto const& r : rad.basis()) {
          block.add(layer.project(a.multiply(a.multiply(fa, r), fb)));
        }
        auto const span = block.finish();
        for (auto const& z : span.basis()) {
          ds.push_back(a.multiply(a.multiply(fa, layer.lift(z)), fb));
          zs.push_back(z);
        }
      }
    }
    if (zs.size() != l) {
      throw Error("idempotent blocks of rad/rad^2 do not decompose the layer");
    }
    Matrix d2(n, l);
    if (l > 0) {
      d2 = Matrix::from_columns(ds, n) * *inverse(Matrix::from_columns(zs, l));
    }
    return AlgebraWithQuiverData(a, rad, std::move(d1), std::move(d2));
  }

  AlgebraWithQuiverData canonical_quiver_data(FiniteDimAlgebra const& a) {
    return canonical_quiver_data(a, radical(a));
  }

}  // namespace quivcon
