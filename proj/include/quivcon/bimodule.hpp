#ifndef QUIVCON_BIMODULE_HPP_
#define QUIVCON_BIMODULE_HPP_

#include <memory>
#include <string>
#include <vector>

#include "quivcon/quiver_data.hpp"

namespace quivcon {

  using AlgebraPtr = std::shared_ptr<AlgebraWithQuiverData const>;

  // Finite-dimensional A-B bimodule given by one action matrix per basis
  // element of A (acting on the left) and of B (acting on the right),
  // together with lifts delta1: M/rad M -> M and delta2: rad M/rad^2 M -> rad M.
  //
  // rad M and rad^2 M are taken from the left, as (rad A) M and (rad^2 A) M;
  // radical_symmetry_check compares them with the right-handed versions.
  class BimoduleWithQuiverData {
   public:
    BimoduleWithQuiverData() = default;
    // Without quiver data; delta1 and delta2 are zero until supplied.
    // Throws Error on misshapen action matrices.
    BimoduleWithQuiverData(AlgebraPtr left, AlgebraPtr right, std::vector<std::string> labels,
                           std::vector<Matrix> left_action, std::vector<Matrix> right_action);
    BimoduleWithQuiverData(AlgebraPtr left, AlgebraPtr right, std::vector<std::string> labels,
                           std::vector<Matrix> left_action, std::vector<Matrix> right_action,
                           Matrix delta1, Matrix delta2);

    // Same bimodule with new lifts. Throws Error on shape mismatch.
    BimoduleWithQuiverData with_quiver_data(Matrix delta1, Matrix delta2) const;

    AlgebraWithQuiverData const& left() const {
      return *left_;
    }
    AlgebraWithQuiverData const& right() const {
      return *right_;
    }
    AlgebraPtr const& left_ptr() const noexcept {
      return left_;
    }
    AlgebraPtr const& right_ptr() const noexcept {
      return right_;
    }
    std::size_t dim() const noexcept {
      return labels_.size();
    }
    std::vector<std::string> const& labels() const noexcept {
      return labels_;
    }
    std::vector<Matrix> const& left_action() const noexcept {
      return left_action_;
    }
    std::vector<Matrix> const& right_action() const noexcept {
      return right_action_;
    }
    // Matrix of m -> a m, resp. m -> m b, for arbitrary algebra elements.
    Matrix left_matrix(Vector const& a) const;
    Matrix right_matrix(Vector const& b) const;
    Vector act_left(Vector const& a, Vector const& m) const;
    Vector act_right(Vector const& m, Vector const& b) const;

    Subspace const& rad() const noexcept {
      return rad_;
    }
    Subspace const& rad2() const noexcept {
      return rad2_;
    }
    QuotientSpace const& top() const noexcept {
      return top_;
    }
    QuotientSpace const& layer() const noexcept {
      return layer_;
    }
    Matrix const& delta1() const noexcept {
      return delta1_;
    }
    Matrix const& delta2() const noexcept {
      return delta2_;
    }

    friend bool operator==(BimoduleWithQuiverData const& a, BimoduleWithQuiverData const& b);

   private:
    void init_spaces();

    AlgebraPtr               left_;
    AlgebraPtr               right_;
    std::vector<std::string> labels_;
    std::vector<Matrix>      left_action_;
    std::vector<Matrix>      right_action_;
    Subspace                 rad_;
    Subspace                 rad2_;
    QuotientSpace            top_;
    QuotientSpace            layer_;
    Matrix                   delta1_;
    Matrix                   delta2_;
  };

  // A acting on itself from both sides with the algebra's own lifts.
  BimoduleWithQuiverData unit_bimodule(AlgebraPtr a);

  // Unit actions, associativity of each action, and commuting actions.
  Verdict validate_bimodule(BimoduleWithQuiverData const& m);

  // (rad A) M == M (rad B), exactly.
  bool radical_symmetry_check(BimoduleWithQuiverData const& m);

  struct RadFiltration {
    Subspace rad;
    Subspace rad2;
  };
  // rad M and rad^2 M, asserting agreement of left and right computations.
  // Throws Error on an asymmetric module.
  RadFiltration rad_filtration(BimoduleWithQuiverData const& m);

  // The three defining conditions, each reported separately.
  Verdict validate_bimodule_quiver_data(BimoduleWithQuiverData const& m);

  // Matrix sending each class to the given lift. The lifts must project to
  // a basis of the quotient; throws Error otherwise.
  Matrix section_from_lifts(QuotientSpace const& q, std::vector<Vector> const& lifts);

  // Basis b_j of delta1(M/rad M) adapted to the blocks e_i (.) f_k, with
  // functionals realizing it as a projective basis on both sides.
  struct ProjectiveBasis {
    bool                     dualizable = false;
    std::string              reason;        // set when not dualizable
    std::vector<Vector>      basis;         // b_j in M
    std::vector<std::size_t> left_vertex;   // i with b_j = e_i b_j
    std::vector<std::size_t> right_vertex;  // k with b_j = b_j f_k
    // sum_j b_j rf_j(m) = m; rf_j is dim B x dim M and B-linear.
    std::vector<Matrix> right_functionals;
    // sum_j lf_j(m) b_j = m; lf_j is dim A x dim M and A-linear.
    std::vector<Matrix> left_functionals;
  };
  ProjectiveBasis projective_basis(BimoduleWithQuiverData const& m);
  // Both reconstruction identities on every basis vector of M.
  Verdict check_projective_basis(BimoduleWithQuiverData const& m, ProjectiveBasis const& pb);

  using BimodulePtr = std::shared_ptr<BimoduleWithQuiverData const>;

  class BimoduleMorphism {
   public:
    BimoduleMorphism() = default;
    // Throws Error unless map is dim N x dim M and the algebras agree.
    BimoduleMorphism(BimodulePtr source, BimodulePtr target, Matrix map);
    static BimoduleMorphism identity(BimodulePtr m);

    BimoduleWithQuiverData const& source() const {
      return *source_;
    }
    BimoduleWithQuiverData const& target() const {
      return *target_;
    }
    BimodulePtr const& source_ptr() const noexcept {
      return source_;
    }
    BimodulePtr const& target_ptr() const noexcept {
      return target_;
    }
    Matrix const& matrix() const noexcept {
      return map_;
    }

   private:
    BimodulePtr source_;
    BimodulePtr target_;
    Matrix      map_;
  };

  // Both intertwining laws and f delta1_M = delta1_N f~.
  Verdict check_bimodule_morphism(BimoduleMorphism const& f);
  BimoduleMorphism compose_vertical(BimoduleMorphism const& f, BimoduleMorphism const& g);

  // M (x)_B N as plain M (x) N modulo balancing, with the splitting maps
  //   f: (M(x)N)/rad -> (M/rad M) (x)_{B/rad} (N/rad N)
  //   g: rad(M(x)N)/rad^2 -> (M/rad M) (x)_{B/rad} (rad N/rad^2 N)
  // and their inverses, each built from its own formula.
  struct TensorProduct {
    BimodulePtr   m, n;
    BimodulePtr   product;
    QuotientSpace space;  // inside plain M (x) N, index i * dim N + j
    QuotientSpace top_tensor;    // inside top M (x) top N
    QuotientSpace layer_tensor;  // inside top M (x) layer N
    Matrix        f, f_inverse;
    Matrix        g, g_inverse;

    // Class of x (x) y in product coordinates.
    Vector element(Vector const& x, Vector const& y) const;
  };

  // Throws Error when the middle algebras differ or the result fails
  // validation.
  TensorProduct tensor_compose(BimodulePtr m, BimodulePtr n);
  // f, g mutually inverse with their inverses and compatible with the actions.
  Verdict check_splittings(TensorProduct const& t);

  // Induced map M (x) N -> M' (x) N'.
  BimoduleMorphism compose_horizontal(BimoduleMorphism const& f, BimoduleMorphism const& g,
                                      TensorProduct const& source, TensorProduct const& target);

  // (M (x) N) (x) P -> M (x) (N (x) P).
  BimoduleMorphism tensor_associator(TensorProduct const& mn, TensorProduct const& mn_p,
                                     TensorProduct const& np, TensorProduct const& m_np);
  // A (x) M -> M and M (x) B -> M by the action.
  BimoduleMorphism tensor_left_unitor(TensorProduct const& am);
  BimoduleMorphism tensor_right_unitor(TensorProduct const& mb);

  // g_M: M -> span(b_j) (x)_{k^n} B, m -> sum_j b_j (x) rf_j(m), with the
  // inverse b (x) c -> b c built separately.
  struct Decomposition {
    QuotientSpace space;  // inside span(b_j) (x) B, index j * dim B + s
    Matrix        g, g_inverse;
  };
  Decomposition decompose(BimoduleWithQuiverData const& m, ProjectiveBasis const& pb);

}  // namespace quivcon

#endif  // QUIVCON_BIMODULE_HPP_
