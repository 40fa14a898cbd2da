#ifndef QUIVCON_LINALG_HPP_
#define QUIVCON_LINALG_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "quivcon/matrix.hpp"

namespace quivcon {

  class Subspace;

  struct RowEchelon {
    Matrix                   reduced;
    std::vector<std::size_t> pivots;
  };

  // Reduced row-echelon form; the row space is preserved and zero rows are
  // kept at the bottom.
  RowEchelon  rref(Matrix m);
  std::size_t rank(Matrix const& m);

  // {v : m v = 0}.
  Subspace kernel(Matrix const& m);

  // A solution of m x = b with every free variable set to zero, or nullopt
  // when the system is inconsistent.
  std::optional<Vector> solve(Matrix const& m, Vector const& b);

  // Solves m X = b column by column.
  std::optional<Matrix> solve(Matrix const& m, Matrix const& b);

  std::optional<Matrix> inverse(Matrix const& m);

}  // namespace quivcon

#endif  // QUIVCON_LINALG_HPP_
