#include "quivcon/bimodule.hpp"

#include <optional>
#include <set>

#include "quivcon/linalg.hpp"

namespace quivcon {

  namespace {
    Subspace image_of_products(std::vector<Matrix> const& ops, std::size_t n) {
      SubspaceBuilder b(n);
      for (auto const& op : ops) {
        for (std::size_t c = 0; c < n; ++c) {
          b.add(op.column(c));
        }
      }
      return b.finish();
    }

    Matrix combine(std::vector<Matrix> const& mats, Vector const& coeffs, std::size_t n) {
      if (coeffs.size() != mats.size()) {
        throw Error("algebra element has the wrong length");
      }
      Matrix out(n, n);
      for (std::size_t i = 0; i < mats.size(); ++i) {
        auto const& c = coeffs[i];
        if (c.is_zero()) {
          continue;
        }
        auto const& m = mats[i];
        for (std::size_t r = 0; r < n; ++r) {
          for (std::size_t k = 0; k < n; ++k) {
            if (!m(r, k).is_zero()) {
              out(r, k).add_product(c, m(r, k));
            }
          }
        }
      }
      return out;
    }

    // Idempotent and arrow lifts when they generate the algebra, which valid
    // quiver data guarantees; otherwise the whole basis.
    std::vector<Vector> generators(AlgebraWithQuiverData const& a) {
      auto const&         alg = a.algebra();
      std::size_t         n   = alg.dim();
      std::vector<Vector> gens = a.idempotents();
      for (std::size_t c = 0; c < a.delta2().cols(); ++c) {
        gens.push_back(a.delta2().column(c));
      }
      SubspaceBuilder b(n);
      b.add(alg.unit());
      auto span = b.finish();
      for (;;) {
        SubspaceBuilder next(n);
        for (auto const& v : span.basis()) {
          next.add(v);
          for (auto const& g : gens) {
            next.add(alg.multiply(v, g));
          }
        }
        auto grown = next.finish();
        if (grown.dim() == span.dim()) {
          break;
        }
        span = std::move(grown);
      }
      if (span.dim() == n) {
        return gens;
      }
      std::vector<Vector> all;
      for (std::size_t i = 0; i < n; ++i) {
        all.push_back(unit_vector(n, i));
      }
      return all;
    }

    std::vector<Matrix> left_ops(BimoduleWithQuiverData const& m, Subspace const& s) {
      std::vector<Matrix> ops;
      for (auto const& v : s.basis()) {
        ops.push_back(m.left_matrix(v));
      }
      return ops;
    }

    std::vector<Matrix> right_ops(BimoduleWithQuiverData const& m, Subspace const& s) {
      std::vector<Matrix> ops;
      for (auto const& v : s.basis()) {
        ops.push_back(m.right_matrix(v));
      }
      return ops;
    }

    // Matrix of the map induced by op on the quotient q (op must preserve
    // both subspaces).
    Matrix induced(QuotientSpace const& q, Matrix const& op) {
      return q.projection_matrix() * op * q.lift_matrix();
    }

    std::vector<Vector> columns(Matrix const& m) {
      std::vector<Vector> out;
      for (std::size_t c = 0; c < m.cols(); ++c) {
        out.push_back(m.column(c));
      }
      return out;
    }

    bool same_algebra(AlgebraPtr const& a, AlgebraPtr const& b) {
      return a == b || *a == *b;
    }
  }  // namespace

  BimoduleWithQuiverData::BimoduleWithQuiverData(AlgebraPtr left, AlgebraPtr right,
                                                 std::vector<std::string> labels,
                                                 std::vector<Matrix>      left_action,
                                                 std::vector<Matrix>      right_action)
      : left_(std::move(left)),
        right_(std::move(right)),
        labels_(std::move(labels)),
        left_action_(std::move(left_action)),
        right_action_(std::move(right_action)) {
    std::size_t n = labels_.size();
    if (left_action_.size() != left_->dim() || right_action_.size() != right_->dim()) {
      throw Error("need one action matrix per algebra basis element");
    }
    for (auto const* acts : {&left_action_, &right_action_}) {
      for (auto const& m : *acts) {
        if (m.rows() != n || m.cols() != n) {
          throw Error("action matrix has shape " + std::to_string(m.rows()) + "x"
                      + std::to_string(m.cols()) + ", expected " + std::to_string(n) + "x"
                      + std::to_string(n));
        }
      }
    }
    init_spaces();
    delta1_ = Matrix(n, top_.dim());
    delta2_ = Matrix(n, layer_.dim());
  }

  BimoduleWithQuiverData::BimoduleWithQuiverData(AlgebraPtr left, AlgebraPtr right,
                                                 std::vector<std::string> labels,
                                                 std::vector<Matrix>      left_action,
                                                 std::vector<Matrix> right_action, Matrix delta1,
                                                 Matrix delta2)
      : BimoduleWithQuiverData(std::move(left), std::move(right), std::move(labels),
                               std::move(left_action), std::move(right_action)) {
    *this = with_quiver_data(std::move(delta1), std::move(delta2));
  }

  void BimoduleWithQuiverData::init_spaces() {
    std::size_t n = dim();
    rad_          = image_of_products(left_ops(*this, left_->rad()), n);
    rad2_         = image_of_products(left_ops(*this, left_->rad2()), n);
    top_          = QuotientSpace(Subspace::full(n), rad_);
    layer_        = QuotientSpace(rad_, rad2_);
  }

  BimoduleWithQuiverData BimoduleWithQuiverData::with_quiver_data(Matrix delta1,
                                                                  Matrix delta2) const {
    std::size_t n = dim();
    if (delta1.rows() != n || delta1.cols() != top_.dim()) {
      throw Error("bimodule delta1 has shape " + std::to_string(delta1.rows()) + "x"
                  + std::to_string(delta1.cols()) + ", expected " + std::to_string(n) + "x"
                  + std::to_string(top_.dim()));
    }
    if (delta2.rows() != n || delta2.cols() != layer_.dim()) {
      throw Error("bimodule delta2 has shape " + std::to_string(delta2.rows()) + "x"
                  + std::to_string(delta2.cols()) + ", expected " + std::to_string(n) + "x"
                  + std::to_string(layer_.dim()));
    }
    BimoduleWithQuiverData out = *this;
    out.delta1_                = std::move(delta1);
    out.delta2_                = std::move(delta2);
    return out;
  }

  Matrix BimoduleWithQuiverData::left_matrix(Vector const& a) const {
    return combine(left_action_, a, dim());
  }

  Matrix BimoduleWithQuiverData::right_matrix(Vector const& b) const {
    return combine(right_action_, b, dim());
  }

  Vector BimoduleWithQuiverData::act_left(Vector const& a, Vector const& m) const {
    Vector out = zero_vector(dim());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_zero()) {
        axpy(out, a[i], left_action_.at(i).apply(m));
      }
    }
    return out;
  }

  Vector BimoduleWithQuiverData::act_right(Vector const& m, Vector const& b) const {
    Vector out = zero_vector(dim());
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (!b[i].is_zero()) {
        axpy(out, b[i], right_action_.at(i).apply(m));
      }
    }
    return out;
  }

  bool operator==(BimoduleWithQuiverData const& a, BimoduleWithQuiverData const& b) {
    return same_algebra(a.left_, b.left_) && same_algebra(a.right_, b.right_)
           && a.labels_ == b.labels_ && a.left_action_ == b.left_action_
           && a.right_action_ == b.right_action_ && a.delta1_ == b.delta1_
           && a.delta2_ == b.delta2_;
  }

  Matrix section_from_lifts(QuotientSpace const& q, std::vector<Vector> const& lifts) {
    std::size_t n = q.ambient_dim();
    if (lifts.size() != q.dim()) {
      throw Error("section: " + std::to_string(lifts.size()) + " lifts for a quotient of dim "
                  + std::to_string(q.dim()));
    }
    if (lifts.empty()) {
      return Matrix(n, 0);
    }
    auto p   = Matrix::from_columns(lifts, n);
    auto inv = inverse(q.projection_matrix() * p);
    if (!inv) {
      throw Error("section: lifts do not project to a basis");
    }
    return p * *inv;
  }

  BimoduleWithQuiverData unit_bimodule(AlgebraPtr a) {
    auto const&         A = a->algebra();
    std::vector<Matrix> l, r;
    for (std::size_t i = 0; i < A.dim(); ++i) {
      l.push_back(A.left_multiplication(unit_vector(A.dim(), i)));
      r.push_back(A.right_multiplication(unit_vector(A.dim(), i)));
    }
    BimoduleWithQuiverData m(a, a, A.labels(), std::move(l), std::move(r));
    // The quotients coincide with the algebra's; translate coordinates anyway.
    auto d1 = a->delta1() * (a->top().projection_matrix() * m.top().lift_matrix());
    auto d2 = a->delta2() * (a->layer().projection_matrix() * m.layer().lift_matrix());
    return m.with_quiver_data(std::move(d1), std::move(d2));
  }

  Verdict validate_bimodule(BimoduleWithQuiverData const& m) {
    auto const& A = m.left().algebra();
    auto const& B = m.right().algebra();
    if (!m.left_matrix(A.unit()).is_identity()) {
      return Verdict::fail("the unit of the left algebra does not act as the identity");
    }
    if (!m.right_matrix(B.unit()).is_identity()) {
      return Verdict::fail("the unit of the right algebra does not act as the identity");
    }
    // With the unit acting trivially, multiplicativity and commutation on
    // algebra generators against a basis extend to all products.
    auto xs = generators(m.left());
    auto ys = generators(m.right());
    std::vector<Matrix> lx, ry;
    for (auto const& x : xs) {
      lx.push_back(m.left_matrix(x));
    }
    for (auto const& y : ys) {
      ry.push_back(m.right_matrix(y));
    }
    auto const& L = m.left_action();
    auto const& R = m.right_action();
    for (std::size_t g = 0; g < xs.size(); ++g) {
      for (std::size_t j = 0; j < A.dim(); ++j) {
        if (lx[g] * L[j] != m.left_matrix(A.multiply(xs[g], unit_vector(A.dim(), j)))) {
          return Verdict::fail("left action is not associative on (generator " + std::to_string(g)
                               + ", " + A.labels()[j] + ")");
        }
      }
    }
    for (std::size_t g = 0; g < ys.size(); ++g) {
      for (std::size_t i = 0; i < B.dim(); ++i) {
        if (ry[g] * R[i] != m.right_matrix(B.multiply(unit_vector(B.dim(), i), ys[g]))) {
          return Verdict::fail("right action is not associative on (" + B.labels()[i]
                               + ", generator " + std::to_string(g) + ")");
        }
      }
    }
    for (std::size_t i = 0; i < lx.size(); ++i) {
      for (std::size_t j = 0; j < ry.size(); ++j) {
        if (lx[i] * ry[j] != ry[j] * lx[i]) {
          return Verdict::fail("actions do not commute on (left generator " + std::to_string(i)
                               + ", m, right generator " + std::to_string(j) + ")");
        }
      }
    }
    return Verdict::pass();
  }

  bool radical_symmetry_check(BimoduleWithQuiverData const& m) {
    return m.rad() == image_of_products(right_ops(m, m.right().rad()), m.dim());
  }

  RadFiltration rad_filtration(BimoduleWithQuiverData const& m) {
    if (!radical_symmetry_check(m)) {
      throw Error("bimodule is not radically symmetric: (rad A) M != M (rad B)");
    }
    if (m.rad2() != image_of_products(right_ops(m, m.right().rad2()), m.dim())) {
      throw Error("bimodule is not radically symmetric: (rad^2 A) M != M (rad^2 B)");
    }
    return {m.rad(), m.rad2()};
  }

  Verdict validate_bimodule_quiver_data(BimoduleWithQuiverData const& m) {
    auto const& d1 = m.delta1();
    auto const& d2 = m.delta2();
    std::size_t t  = m.top().dim();
    std::size_t l  = m.layer().dim();

    if (!(m.top().projection_matrix() * d1).is_identity()) {
      return Verdict::fail("condition 1: pi1_M o delta1_M is not the identity");
    }
    for (std::size_t j = 0; j < l; ++j) {
      auto col = d2.column(j);
      if (!m.rad().contains(col)) {
        return Verdict::fail("condition 1: delta2_M of layer basis vector " + std::to_string(j)
                             + " is not in rad M");
      }
      if (m.layer().project(col) != unit_vector(l, j)) {
        return Verdict::fail("condition 1: pi2_M o delta2_M is not the identity at layer basis vector "
                             + std::to_string(j));
      }
    }

    auto xs = columns(m.left().delta1());
    auto ys = columns(m.right().delta1());
    for (std::size_t u = 0; u < t; ++u) {
      auto lu = d1.column(u);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        auto xu = m.act_left(xs[i], lu);
        for (std::size_t j = 0; j < ys.size(); ++j) {
          auto w = m.act_right(xu, ys[j]);
          if (d1.apply(m.top().project(w)) != w) {
            return Verdict::fail("condition 2: delta1_M is not equivariant on (top A "
                                 + std::to_string(i) + ", top M " + std::to_string(u)
                                 + ", top B " + std::to_string(j) + ")");
          }
        }
      }
    }
    for (std::size_t z = 0; z < l; ++z) {
      auto lz = d2.column(z);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        auto xz = m.act_left(xs[i], lz);
        for (std::size_t j = 0; j < ys.size(); ++j) {
          auto w = m.act_right(xz, ys[j]);
          if (d2.apply(m.layer().project(w)) != w) {
            return Verdict::fail("condition 2: delta2_M is not equivariant on (top A "
                                 + std::to_string(i) + ", layer M " + std::to_string(z)
                                 + ", top B " + std::to_string(j) + ")");
          }
        }
      }
    }

    auto as = columns(m.left().delta2());
    auto bs = columns(m.right().delta2());
    for (std::size_t u = 0; u < t; ++u) {
      auto lu = d1.column(u);
      for (std::size_t i = 0; i < as.size(); ++i) {
        auto w = m.act_left(as[i], lu);
        if (d2.apply(m.layer().project(w)) != w) {
          return Verdict::fail("condition 3: delta2_A(x) delta1_M(m) != delta2_M(xm) on (layer A "
                               + std::to_string(i) + ", top M " + std::to_string(u) + ")");
        }
      }
      for (std::size_t j = 0; j < bs.size(); ++j) {
        auto w = m.act_right(lu, bs[j]);
        if (d2.apply(m.layer().project(w)) != w) {
          return Verdict::fail("condition 3: delta1_M(m) delta2_B(y) != delta2_M(my) on (top M "
                               + std::to_string(u) + ", layer B " + std::to_string(j) + ")");
        }
      }
    }
    return Verdict::pass();
  }

  namespace {
    // Solves for linear maps X_j: M -> R (R an algebra of dim r) with
    //   sum_j sum_s X_j[s, c] recon[j][s] = e_c  for every basis vector c,
    //   X_j T_t = S_t X_j                          for every t.
    std::optional<std::vector<Matrix>> solve_functionals(
        std::size_t n, std::size_t r, std::vector<std::vector<Vector>> const& recon,
        std::vector<Matrix> const& T, std::vector<Matrix> const& S) {
      std::size_t nb   = recon.size();
      std::size_t vars = nb * r * n;
      auto        var  = [&](std::size_t j, std::size_t s, std::size_t c) {
        return (j * r + s) * n + c;
      };
      std::vector<Vector> rows;
      Vector              rhs;
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t q = 0; q < n; ++q) {
          Vector row(vars);
          for (std::size_t j = 0; j < nb; ++j) {
            for (std::size_t s = 0; s < r; ++s) {
              row[var(j, s, c)] = recon[j][s][q];
            }
          }
          rows.push_back(std::move(row));
          rhs.push_back(Scalar(c == q ? 1 : 0));
        }
      }
      for (std::size_t j = 0; j < nb; ++j) {
        for (std::size_t t = 0; t < T.size(); ++t) {
          for (std::size_t s = 0; s < r; ++s) {
            for (std::size_t c = 0; c < n; ++c) {
              Vector row(vars);
              for (std::size_t c2 = 0; c2 < n; ++c2) {
                row[var(j, s, c2)] += T[t](c2, c);
              }
              for (std::size_t s2 = 0; s2 < r; ++s2) {
                row[var(j, s2, c)] -= S[t](s, s2);
              }
              rows.push_back(std::move(row));
              rhs.push_back(Scalar(0));
            }
          }
        }
      }
      auto x = solve(Matrix::from_rows(rows, vars), rhs);
      if (!x) {
        return std::nullopt;
      }
      std::vector<Matrix> out(nb, Matrix(r, n));
      for (std::size_t j = 0; j < nb; ++j) {
        for (std::size_t s = 0; s < r; ++s) {
          for (std::size_t c = 0; c < n; ++c) {
            out[j](s, c) = (*x)[var(j, s, c)];
          }
        }
      }
      return out;
    }

    // Fast path: the map (beta_j) -> sum_j act(b_j, beta_j) from the direct sum
    // of the corner modules is an isomorphism, and its inverse gives the
    // functionals.
    std::optional<std::vector<Matrix>> invert_corner_map(
        std::size_t n, std::size_t r, std::vector<std::vector<Vector>> const& corner_basis,
        std::vector<std::vector<Vector>> const& images) {
      std::vector<Vector> cols;
      for (auto const& im : images) {
        cols.insert(cols.end(), im.begin(), im.end());
      }
      if (cols.size() != n) {
        return std::nullopt;
      }
      auto inv = inverse(Matrix::from_columns(cols, n));
      if (!inv) {
        return std::nullopt;
      }
      std::vector<Matrix> out;
      std::size_t         row = 0;
      for (auto const& cb : corner_basis) {
        Matrix f(r, n);
        for (auto const& c : cb) {
          for (std::size_t col = 0; col < n; ++col) {
            auto const& w = (*inv)(row, col);
            if (w.is_zero()) {
              continue;
            }
            for (std::size_t s = 0; s < r; ++s) {
              if (!c[s].is_zero()) {
                f(s, col) += w * c[s];
              }
            }
          }
          ++row;
        }
        out.push_back(std::move(f));
      }
      return out;
    }
  }  // namespace

  ProjectiveBasis projective_basis(BimoduleWithQuiverData const& m) {
    ProjectiveBasis pb;
    auto const&     A  = m.left().algebra();
    auto const&     B  = m.right().algebra();
    auto const&     es = m.left().idempotents();
    auto const&     fs = m.right().idempotents();
    std::size_t     n  = m.dim();
    auto            d1 = columns(m.delta1());

    for (std::size_t i = 0; i < es.size(); ++i) {
      auto ei = m.left_matrix(es[i]);
      for (std::size_t k = 0; k < fs.size(); ++k) {
        auto            op = ei * m.right_matrix(fs[k]);
        SubspaceBuilder block(n);
        for (auto const& v : d1) {
          block.add(op.apply(v));
        }
        auto const span = block.finish();
        for (auto const& b : span.basis()) {
          pb.basis.push_back(b);
          pb.left_vertex.push_back(i);
          pb.right_vertex.push_back(k);
        }
      }
    }
    if (pb.basis.size() != m.top().dim()) {
      pb.reason = "delta1_M(M/rad M) does not split over the idempotent blocks";
      return pb;
    }
    std::size_t nb = pb.basis.size();

    // Right side: b_j f_k B.
    std::vector<std::vector<Vector>> corner(nb), images(nb), recon(nb);
    for (std::size_t j = 0; j < nb; ++j) {
      SubspaceBuilder fb(B.dim());
      for (std::size_t s = 0; s < B.dim(); ++s) {
        fb.add(B.multiply(fs[pb.right_vertex[j]], unit_vector(B.dim(), s)));
        recon[j].push_back(m.act_right(pb.basis[j], unit_vector(B.dim(), s)));
      }
      auto const span = fb.finish();
      corner[j]       = span.basis();
      for (auto const& c : corner[j]) {
        images[j].push_back(m.act_right(pb.basis[j], c));
      }
    }
    auto right = invert_corner_map(n, B.dim(), corner, images);
    if (!right) {
      std::vector<Matrix> T, S;
      for (std::size_t t = 0; t < B.dim(); ++t) {
        T.push_back(m.right_action()[t]);
        S.push_back(B.right_multiplication(unit_vector(B.dim(), t)));
      }
      right = solve_functionals(n, B.dim(), recon, T, S);
      if (!right) {
        pb.reason = "no B-linear functionals f_j with sum_j b_j f_j(m) = m";
        return pb;
      }
    }
    pb.right_functionals = std::move(*right);

    // Left side: A e_i b_j.
    for (std::size_t j = 0; j < nb; ++j) {
      corner[j].clear();
      images[j].clear();
      recon[j].clear();
      SubspaceBuilder ae(A.dim());
      for (std::size_t s = 0; s < A.dim(); ++s) {
        ae.add(A.multiply(unit_vector(A.dim(), s), es[pb.left_vertex[j]]));
        recon[j].push_back(m.act_left(unit_vector(A.dim(), s), pb.basis[j]));
      }
      auto const span = ae.finish();
      corner[j]       = span.basis();
      for (auto const& c : corner[j]) {
        images[j].push_back(m.act_left(c, pb.basis[j]));
      }
    }
    auto left = invert_corner_map(n, A.dim(), corner, images);
    if (!left) {
      std::vector<Matrix> T, S;
      for (std::size_t t = 0; t < A.dim(); ++t) {
        T.push_back(m.left_action()[t]);
        S.push_back(A.left_multiplication(unit_vector(A.dim(), t)));
      }
      left = solve_functionals(n, A.dim(), recon, T, S);
      if (!left) {
        pb.reason = "no A-linear functionals k_j with sum_j k_j(m) b_j = m";
        return pb;
      }
    }
    pb.left_functionals = std::move(*left);
    pb.dualizable       = true;
    return pb;
  }

  Verdict check_projective_basis(BimoduleWithQuiverData const& m, ProjectiveBasis const& pb) {
    if (!pb.dualizable) {
      return Verdict::fail("not dualizable: " + pb.reason);
    }
    auto const& A  = m.left().algebra();
    auto const& B  = m.right().algebra();
    std::size_t n  = m.dim();
    std::size_t nb = pb.basis.size();
    for (std::size_t c = 0; c < n; ++c) {
      auto   e = unit_vector(n, c);
      Vector r = zero_vector(n), l = zero_vector(n);
      for (std::size_t j = 0; j < nb; ++j) {
        r = r + m.act_right(pb.basis[j], pb.right_functionals[j].column(c));
        l = l + m.act_left(pb.left_functionals[j].column(c), pb.basis[j]);
      }
      if (r != e) {
        return Verdict::fail("sum_j b_j f_j(m) != m at basis vector " + m.labels()[c]);
      }
      if (l != e) {
        return Verdict::fail("sum_j k_j(m) b_j != m at basis vector " + m.labels()[c]);
      }
    }
    for (std::size_t j = 0; j < nb; ++j) {
      for (std::size_t t = 0; t < B.dim(); ++t) {
        if (pb.right_functionals[j] * m.right_action()[t]
            != B.right_multiplication(unit_vector(B.dim(), t)) * pb.right_functionals[j]) {
          return Verdict::fail("f_" + std::to_string(j) + " is not right B-linear");
        }
      }
      for (std::size_t t = 0; t < A.dim(); ++t) {
        if (pb.left_functionals[j] * m.left_action()[t]
            != A.left_multiplication(unit_vector(A.dim(), t)) * pb.left_functionals[j]) {
          return Verdict::fail("k_" + std::to_string(j) + " is not left A-linear");
        }
      }
    }
    return Verdict::pass();
  }

  BimoduleMorphism::BimoduleMorphism(BimodulePtr source, BimodulePtr target, Matrix map)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
    if (map_.rows() != target_->dim() || map_.cols() != source_->dim()) {
      throw Error("bimodule map has shape " + std::to_string(map_.rows()) + "x"
                  + std::to_string(map_.cols()) + ", expected " + std::to_string(target_->dim())
                  + "x" + std::to_string(source_->dim()));
    }
    if (!same_algebra(source_->left_ptr(), target_->left_ptr())
        || !same_algebra(source_->right_ptr(), target_->right_ptr())) {
      throw Error("bimodule map between modules over different algebras");
    }
  }

  BimoduleMorphism BimoduleMorphism::identity(BimodulePtr m) {
    auto n = m->dim();
    return BimoduleMorphism(m, m, Matrix::identity(n));
  }

  Verdict check_bimodule_morphism(BimoduleMorphism const& f) {
    auto const& M = f.source();
    auto const& N = f.target();
    auto const& F = f.matrix();
    for (std::size_t i = 0; i < M.left_action().size(); ++i) {
      if (F * M.left_action()[i] != N.left_action()[i] * F) {
        return Verdict::fail("does not intertwine the left action of "
                             + M.left().algebra().labels()[i]);
      }
    }
    for (std::size_t j = 0; j < M.right_action().size(); ++j) {
      if (F * M.right_action()[j] != N.right_action()[j] * F) {
        return Verdict::fail("does not intertwine the right action of "
                             + M.right().algebra().labels()[j]);
      }
    }
    auto ftilde = N.top().projection_matrix() * F * M.top().lift_matrix();
    auto lhs    = F * M.delta1();
    auto rhs    = N.delta1() * ftilde;
    for (std::size_t u = 0; u < lhs.cols(); ++u) {
      if (lhs.column(u) != rhs.column(u)) {
        return Verdict::fail("f delta1_M != delta1_N f~ at top basis vector " + std::to_string(u));
      }
    }
    return Verdict::pass();
  }

  BimoduleMorphism compose_vertical(BimoduleMorphism const& f, BimoduleMorphism const& g) {
    if (!(f.target_ptr() == g.source_ptr() || f.target() == g.source())) {
      throw Error("vertical composition: target of the first is not the source of the second");
    }
    return BimoduleMorphism(f.source_ptr(), g.target_ptr(), g.matrix() * f.matrix());
  }

  Vector TensorProduct::element(Vector const& x, Vector const& y) const {
    return space.project(kron(x, y));
  }

  namespace {
    // Balancing relations x b (x) y - x (x) b y for the given algebra elements,
    // with right_ops acting on the first factor and left_ops on the second.
    Subspace balancing(std::vector<Matrix> const& right, std::vector<Matrix> const& left,
                       std::size_t p, std::size_t q) {
      SubspaceBuilder bal(p * q);
      for (std::size_t g = 0; g < right.size(); ++g) {
        for (std::size_t i = 0; i < p; ++i) {
          auto xb = right[g].column(i);
          for (std::size_t j = 0; j < q; ++j) {
            bal.add(kron(xb, unit_vector(q, j)) - kron(unit_vector(p, i), left[g].column(j)));
          }
        }
      }
      return bal.finish();
    }

    // With a right projective basis (b_k, rf_k) of M the balanced tensor
    // product embeds in N^J through psi(x (x) y) = (rf_k(x) y)_k, whose
    // kernel is exactly the balancing relations. The image is the image of
    // the idempotent psi o phi, phi((y_k)) = sum b_k (x) y_k, which is small.
    std::optional<QuotientSpace> tensor_space_via_basis(BimoduleWithQuiverData const& M,
                                                        BimoduleWithQuiverData const& N) {
      ProjectiveBasis pb;
      try {
        pb = projective_basis(M);
      } catch (Error const&) {
        return std::nullopt;
      }
      if (!pb.dualizable) {
        return std::nullopt;
      }
      std::size_t m = M.dim(), n = N.dim(), J = pb.basis.size();
      Matrix      psi(J * n, m * n);
      for (std::size_t k = 0; k < J; ++k) {
        auto const& rf = pb.right_functionals[k];
        for (std::size_t i = 0; i < m; ++i) {
          auto b = rf.column(i);
          if (is_zero(b)) {
            continue;
          }
          auto Lb = N.left_matrix(b);
          for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t r = 0; r < n; ++r) {
              psi(k * n + r, i * n + j) = Lb(r, j);
            }
          }
        }
      }
      SubspaceBuilder img(J * n);
      for (std::size_t c = 0; c < m * n; ++c) {
        img.add(psi.column(c));
      }
      auto        image = img.finish();
      std::size_t d     = image.dim();
      Matrix      proj(d, m * n);
      for (std::size_t c = 0; c < m * n; ++c) {
        proj.set_column(c, image.coordinates(psi.column(c)));
      }
      Matrix lift(m * n, d);
      for (std::size_t s = 0; s < d; ++s) {
        auto const& u = image.basis()[s];
        Vector      w(m * n);
        for (std::size_t k = 0; k < J; ++k) {
          Vector y(u.begin() + k * n, u.begin() + (k + 1) * n);
          if (!is_zero(y)) {
            axpy(w, Scalar(1), kron(pb.basis[k], y));
          }
        }
        lift.set_column(s, w);
      }
      return QuotientSpace::from_maps(std::move(proj), std::move(lift));
    }

    std::string tensor_label(std::string const& a, std::string const& b) {
      return a + "|" + b;
    }
  }  // namespace

  TensorProduct tensor_compose(BimodulePtr mp, BimodulePtr np) {
    auto const& M = *mp;
    auto const& N = *np;
    if (!same_algebra(M.right_ptr(), N.left_ptr())) {
      throw Error("tensor: right algebra of the first factor differs from left algebra of the second");
    }
    auto const& Bd = M.right();
    std::size_t m = M.dim(), n = N.dim();

    TensorProduct t;
    t.m = mp;
    t.n = np;

    // B is generated by its idempotents and arrow lifts, so balancing over
    // those suffices.
    std::vector<Vector> gens = Bd.idempotents();
    for (auto const& a : columns(Bd.delta2())) {
      gens.push_back(a);
    }
    std::vector<Matrix> ro, lo;
    for (auto const& g : gens) {
      ro.push_back(M.right_matrix(g));
      lo.push_back(N.left_matrix(g));
    }
    if (auto fast = tensor_space_via_basis(M, N)) {
      t.space = std::move(*fast);
    } else {
      t.space = QuotientSpace(Subspace::full(m * n), balancing(ro, lo, m, n));
    }
    std::size_t d = t.space.dim();

    auto lift = t.space.lift_matrix();
    auto proj = t.space.projection_matrix();
    std::vector<std::string> labels;
    std::set<std::string> used;
    for (std::size_t r = 0; r < d; ++r) {
      auto lead  = leading_index(lift.column(r));
      auto label = tensor_label(M.labels()[lead / n], N.labels()[lead % n]);
      // Representatives need not have distinct leading terms.
      for (std::size_t k = 2; !used.insert(label).second; ++k) {
        label = tensor_label(M.labels()[lead / n], N.labels()[lead % n]) + "#" + std::to_string(k);
      }
      labels.push_back(std::move(label));
    }
    auto idm = Matrix::identity(m), idn = Matrix::identity(n);
    std::vector<Matrix> left_act, right_act;
    for (auto const& L : M.left_action()) {
      Matrix a(d, d);
      for (std::size_t r = 0; r < d; ++r) {
        a.set_column(r, proj.apply(kron_apply(L, idn, lift.column(r))));
      }
      left_act.push_back(std::move(a));
    }
    for (auto const& R : N.right_action()) {
      Matrix a(d, d);
      for (std::size_t r = 0; r < d; ++r) {
        a.set_column(r, proj.apply(kron_apply(idm, R, lift.column(r))));
      }
      right_act.push_back(std::move(a));
    }
    BimoduleWithQuiverData P(M.left_ptr(), N.right_ptr(), labels, std::move(left_act),
                             std::move(right_act));

    // Balancing over B/rad B, acting through the idempotent lifts.
    std::size_t tm = M.top().dim(), tn = N.top().dim(), ln = N.layer().dim();
    std::vector<Matrix> rho, lam, lam2;
    for (auto const& f : Bd.idempotents()) {
      rho.push_back(induced(M.top(), M.right_matrix(f)));
      lam.push_back(induced(N.top(), N.left_matrix(f)));
      lam2.push_back(induced(N.layer(), N.left_matrix(f)));
    }
    t.top_tensor   = QuotientSpace(Subspace::full(tm * tn), balancing(rho, lam, tm, tn));
    t.layer_tensor = QuotientSpace(Subspace::full(tm * ln), balancing(rho, lam2, tm, ln));

    auto pi_m  = M.top().projection_matrix();
    auto pi_n  = N.top().projection_matrix();
    auto pi2_n = N.layer().projection_matrix();
    auto up_m  = M.top().lift_matrix();
    auto up_n  = N.top().lift_matrix();
    auto up2_n = N.layer().lift_matrix();

    // f on classes of plain tensors: m (x) n -> (m + rad) (x) (n + rad).
    std::size_t tp = P.top().dim();
    t.f            = Matrix(t.top_tensor.dim(), tp);
    for (std::size_t r = 0; r < tp; ++r) {
      auto w = lift.apply(P.top().lift(unit_vector(tp, r)));
      t.f.set_column(r, t.top_tensor.project(kron_apply(pi_m, pi_n, w)));
    }
    t.f_inverse = Matrix(tp, t.top_tensor.dim());
    for (std::size_t s = 0; s < t.top_tensor.dim(); ++s) {
      auto w = kron_apply(up_m, up_n, t.top_tensor.lift(unit_vector(t.top_tensor.dim(), s)));
      t.f_inverse.set_column(s, P.top().project(proj.apply(w)));
    }

    // g needs representatives in M (x) rad N.
    auto const&         radn = N.rad().basis();
    std::size_t         rn   = radn.size();
    std::size_t         lp   = P.layer().dim();
    std::vector<Vector> ecols;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t q = 0; q < rn; ++q) {
        ecols.push_back(proj.apply(kron(unit_vector(m, i), radn[q])));
      }
    }
    auto   to_layer = pi2_n * Matrix::from_columns(radn, n);  // ln x rn
    Matrix rep_rhs(d, lp);
    for (std::size_t r = 0; r < lp; ++r) {
      rep_rhs.set_column(r, P.layer().lift(unit_vector(lp, r)));
    }
    t.g = Matrix(t.layer_tensor.dim(), lp);
    if (lp > 0) {
      auto reps = solve(Matrix::from_columns(ecols, d), rep_rhs);
      if (!reps) {
        throw Error("tensor: rad(M (x) N) is not spanned by M (x) rad N");
      }
      for (std::size_t r = 0; r < lp; ++r) {
        t.g.set_column(r, t.layer_tensor.project(kron_apply(pi_m, to_layer, reps->column(r))));
      }
    }
    t.g_inverse = Matrix(lp, t.layer_tensor.dim());
    for (std::size_t s = 0; s < t.layer_tensor.dim(); ++s) {
      auto w = kron_apply(up_m, up2_n, t.layer_tensor.lift(unit_vector(t.layer_tensor.dim(), s)));
      t.g_inverse.set_column(s, P.layer().project(proj.apply(w)));
    }

    // delta1 = phi (delta1_M (x) delta1_N) f, delta2 = phi (delta1_M (x) delta2_N) g.
    Matrix d1s(d, t.top_tensor.dim());
    for (std::size_t s = 0; s < t.top_tensor.dim(); ++s) {
      d1s.set_column(s, proj.apply(kron_apply(M.delta1(), N.delta1(),
                                              t.top_tensor.lift(unit_vector(t.top_tensor.dim(), s)))));
    }
    Matrix d2s(d, t.layer_tensor.dim());
    for (std::size_t s = 0; s < t.layer_tensor.dim(); ++s) {
      d2s.set_column(s, proj.apply(kron_apply(M.delta1(), N.delta2(),
                                              t.layer_tensor.lift(unit_vector(t.layer_tensor.dim(), s)))));
    }
    if (t.f.rows() != tp || t.g.rows() != lp) {
      throw Error("tensor: splitting maps are not square (" + std::to_string(t.f.rows()) + " vs "
                  + std::to_string(tp) + ", " + std::to_string(t.g.rows()) + " vs "
                  + std::to_string(lp) + ")");
    }
    auto product = std::make_shared<BimoduleWithQuiverData>(P.with_quiver_data(d1s * t.f, d2s * t.g));
    if (auto v = validate_bimodule(*product); !v.ok) {
      throw Error("tensor: " + v.message);
    }
    if (!radical_symmetry_check(*product)) {
      throw Error("tensor: product is not radically symmetric");
    }
    if (auto v = validate_bimodule_quiver_data(*product); !v.ok) {
      throw Error("tensor: " + v.message);
    }
    t.product = std::move(product);
    return t;
  }

  Verdict check_splittings(TensorProduct const& t) {
    auto const& P = *t.product;
    auto const& M = *t.m;
    auto const& N = *t.n;
    if (!(t.f * t.f_inverse).is_identity() || !(t.f_inverse * t.f).is_identity()) {
      return Verdict::fail("f_{M,N} and its inverse do not compose to the identity");
    }
    if (!(t.g * t.g_inverse).is_identity() || !(t.g_inverse * t.g).is_identity()) {
      return Verdict::fail("g_{M,N} and its inverse do not compose to the identity");
    }
    // Intertwining for the semisimple actions through the idempotent lifts.
    auto check = [&](QuotientSpace const& ps, QuotientSpace const& ts, Matrix const& map,
                     Matrix const& p_op, Matrix const& t_op) {
      return map * induced(ps, p_op) == induced(ts, t_op) * map;
    };
    auto idtm = Matrix::identity(M.top().dim());
    auto idtn = Matrix::identity(N.top().dim());
    auto idln = Matrix::identity(N.layer().dim());
    for (std::size_t i = 0; i < M.left().idempotents().size(); ++i) {
      auto const& e  = M.left().idempotents()[i];
      auto        lm = induced(M.top(), M.left_matrix(e));
      auto        a  = P.left_matrix(e);
      if (!check(P.top(), t.top_tensor, t.f, a, lm.kronecker(idtn))) {
        return Verdict::fail("f_{M,N} does not intertwine the left action of idempotent "
                             + std::to_string(i));
      }
      if (!check(P.layer(), t.layer_tensor, t.g, a, lm.kronecker(idln))) {
        return Verdict::fail("g_{M,N} does not intertwine the left action of idempotent "
                             + std::to_string(i));
      }
    }
    for (std::size_t k = 0; k < N.right().idempotents().size(); ++k) {
      auto const& f = N.right().idempotents()[k];
      auto        a = P.right_matrix(f);
      if (!check(P.top(), t.top_tensor, t.f, a, idtm.kronecker(induced(N.top(), N.right_matrix(f))))) {
        return Verdict::fail("f_{M,N} does not intertwine the right action of idempotent "
                             + std::to_string(k));
      }
      if (!check(P.layer(), t.layer_tensor, t.g, a,
                 idtm.kronecker(induced(N.layer(), N.right_matrix(f))))) {
        return Verdict::fail("g_{M,N} does not intertwine the right action of idempotent "
                             + std::to_string(k));
      }
    }
    return Verdict::pass();
  }

  BimoduleMorphism compose_horizontal(BimoduleMorphism const& f, BimoduleMorphism const& g,
                                      TensorProduct const& source, TensorProduct const& target) {
    if (!(f.source() == *source.m && g.source() == *source.n && f.target() == *target.m
          && g.target() == *target.n)) {
      throw Error("horizontal composition: tensor products do not match the maps");
    }
    std::size_t d  = source.product->dim();
    auto        lf = source.space.lift_matrix();
    Matrix      h(target.product->dim(), d);
    for (std::size_t r = 0; r < d; ++r) {
      h.set_column(r, target.space.project(kron_apply(f.matrix(), g.matrix(), lf.column(r))));
    }
    return BimoduleMorphism(source.product, target.product, std::move(h));
  }

  BimoduleMorphism tensor_associator(TensorProduct const& mn, TensorProduct const& mn_p,
                                     TensorProduct const& np, TensorProduct const& m_np) {
    if (mn_p.m != mn.product || m_np.n != np.product || mn.m != m_np.m || mn.n != np.m
        || np.n != mn_p.n) {
      throw Error("associator: tensor products are not nested as (M N) P and M (N P)");
    }
    std::size_t m = mn.m->dim(), n = mn.n->dim(), p = np.n->dim();
    std::size_t dnp = np.product->dim(), dmn = mn.product->dim();
    std::vector<Vector> np_el(n * p);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t c = 0; c < p; ++c) {
        np_el[j * p + c] = np.element(unit_vector(n, j), unit_vector(p, c));
      }
    }
    auto   lift_mn = mn.space.lift_matrix();
    auto   lift_o  = mn_p.space.lift_matrix();
    Matrix out(m_np.product->dim(), mn_p.product->dim());
    for (std::size_t r = 0; r < mn_p.product->dim(); ++r) {
      auto   w = lift_o.column(r);
      Vector acc(m * dnp);
      for (std::size_t a = 0; a < dmn; ++a) {
        for (std::size_t c = 0; c < p; ++c) {
          auto const& wa = w[a * p + c];
          if (wa.is_zero()) {
            continue;
          }
          for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
              auto const& u = lift_mn(i * n + j, a);
              if (u.is_zero()) {
                continue;
              }
              auto coef = wa * u;
              for (std::size_t q = 0; q < dnp; ++q) {
                if (!np_el[j * p + c][q].is_zero()) {
                  acc[i * dnp + q].add_product(coef, np_el[j * p + c][q]);
                }
              }
            }
          }
        }
      }
      out.set_column(r, m_np.space.project(acc));
    }
    return BimoduleMorphism(mn_p.product, m_np.product, std::move(out));
  }

  BimoduleMorphism tensor_left_unitor(TensorProduct const& am) {
    auto const& M = *am.n;
    std::size_t a = am.m->dim(), m = M.dim();
    if (!(*am.m == unit_bimodule(M.left_ptr()))) {
      throw Error("left unitor: first factor is not the unit bimodule");
    }
    auto   lift = am.space.lift_matrix();
    Matrix out(m, am.product->dim());
    for (std::size_t r = 0; r < am.product->dim(); ++r) {
      Vector v = zero_vector(m);
      for (std::size_t s = 0; s < a; ++s) {
        for (std::size_t i = 0; i < m; ++i) {
          auto const& w = lift(s * m + i, r);
          if (!w.is_zero()) {
            axpy(v, w, M.left_action()[s].column(i));
          }
        }
      }
      out.set_column(r, v);
    }
    return BimoduleMorphism(am.product, am.n, std::move(out));
  }

  BimoduleMorphism tensor_right_unitor(TensorProduct const& mb) {
    auto const& M = *mb.m;
    std::size_t b = mb.n->dim(), m = M.dim();
    if (!(*mb.n == unit_bimodule(M.right_ptr()))) {
      throw Error("right unitor: second factor is not the unit bimodule");
    }
    auto   lift = mb.space.lift_matrix();
    Matrix out(m, mb.product->dim());
    for (std::size_t r = 0; r < mb.product->dim(); ++r) {
      Vector v = zero_vector(m);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t s = 0; s < b; ++s) {
          auto const& w = lift(i * b + s, r);
          if (!w.is_zero()) {
            axpy(v, w, M.right_action()[s].column(i));
          }
        }
      }
      out.set_column(r, v);
    }
    return BimoduleMorphism(mb.product, mb.m, std::move(out));
  }

  Decomposition decompose(BimoduleWithQuiverData const& m, ProjectiveBasis const& pb) {
    if (!pb.dualizable) {
      throw Error("decompose: not dualizable: " + pb.reason);
    }
    auto const& B  = m.right().algebra();
    auto const& fs = m.right().idempotents();
    std::size_t nb = pb.basis.size(), b = B.dim(), n = m.dim();

    // b_j f_k in the span of the b's.
    auto                basis_mat = Matrix::from_columns(pb.basis, n);
    std::vector<Matrix> ro, lo;
    for (auto const& f : fs) {
      Matrix r(nb, nb);
      for (std::size_t j = 0; j < nb; ++j) {
        auto c = solve(basis_mat, m.act_right(pb.basis[j], f));
        if (!c) {
          throw Error("decompose: span of the projective basis is not stable under idempotents");
        }
        r.set_column(j, *c);
      }
      ro.push_back(std::move(r));
      lo.push_back(B.left_multiplication(f));
    }
    Decomposition dec;
    dec.space     = QuotientSpace(Subspace::full(nb * b), balancing(ro, lo, nb, b));
    std::size_t d = dec.space.dim();

    dec.g = Matrix(d, n);
    for (std::size_t c = 0; c < n; ++c) {
      Vector w(nb * b);
      for (std::size_t j = 0; j < nb; ++j) {
        auto fj = pb.right_functionals[j].column(c);
        for (std::size_t s = 0; s < b; ++s) {
          w[j * b + s] = fj[s];
        }
      }
      dec.g.set_column(c, dec.space.project(w));
    }
    dec.g_inverse = Matrix(n, d);
    auto lift     = dec.space.lift_matrix();
    for (std::size_t r = 0; r < d; ++r) {
      Vector v = zero_vector(n);
      for (std::size_t j = 0; j < nb; ++j) {
        Vector coeffs(b);
        for (std::size_t s = 0; s < b; ++s) {
          coeffs[s] = lift(j * b + s, r);
        }
        v = v + m.act_right(pb.basis[j], coeffs);
      }
      dec.g_inverse.set_column(r, v);
    }
    return dec;
  }

}  // namespace quivcon
