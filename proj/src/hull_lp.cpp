// Exact convex-combination feasibility: find w >= 0 with sum w = 1 and sum w_j v_j = p.
// Phase-one simplex over the rationals with Bland's rule, so it always terminates.

#include <algorithm>
#include <optional>
#include <vector>

#include "vcnorms/errors.hpp"
#include "vcnorms/geometry.hpp"

namespace vcnorms {

namespace {

class PhaseOneTableau {
 public:
  // Rows: one per coordinate plus the affine row. Columns: n structural variables, then m
  // artificial variables, then the right-hand side.
  PhaseOneTableau(std::span<const Point> vertices, const Point& p)
      : rows_(p.dim() + 1), structural_(vertices.size()), cols_(structural_ + rows_ + 1) {
    cells_.assign(rows_ * cols_, Scalar());
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      const bool affine_row = i == p.dim();
      const Scalar rhs = affine_row ? Scalar(1) : p[i];
      const bool flip = rhs.sign() < 0;
      for (std::size_t j = 0; j < structural_; ++j) {
        const Scalar a = affine_row ? Scalar(1) : vertices[j][i];
        at(i, j) = flip ? -a : a;
      }
      at(i, structural_ + i) = Scalar(1);
      at(i, cols_ - 1) = flip ? -rhs : rhs;
      basis_[i] = structural_ + i;
    }
  }

  // Returns true when the artificial objective reaches zero.
  bool solve() {
    // Reduced costs of the phase-one objective (sum of artificials).
    std::vector<Scalar> reduced(cols_);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j >= structural_ && j < structural_ + rows_) continue;
      Scalar s;
      for (std::size_t i = 0; i < rows_; ++i) s -= at(i, j);
      reduced[j] = s;
    }
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j + 1 < cols_; ++j) {
        if (reduced[j].sign() < 0) {
          entering = j;
          break;
        }
      }
      if (!entering) break;
      const std::size_t e = *entering;

      std::optional<std::size_t> leaving;
      Scalar best_ratio;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (at(i, e).sign() <= 0) continue;
        const Scalar ratio = at(i, cols_ - 1) / at(i, e);
        if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      // The phase-one objective is bounded below by zero, so an entering column always has a pivot.
      if (!leaving) throw InvariantError("convex_coefficients: unbounded phase-one simplex");
      pivot(*leaving, e, reduced);
    }
    return reduced[cols_ - 1].is_zero();
  }

  std::vector<Scalar> structural_values() const {
    std::vector<Scalar> w(structural_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < structural_) w[basis_[i]] = at(i, cols_ - 1);
    }
    return w;
  }

 private:
  Scalar& at(std::size_t i, std::size_t j) { return cells_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }

  void pivot(std::size_t r, std::size_t e, std::vector<Scalar>& reduced) {
    const Scalar inv = Scalar(1) / at(r, e);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!at(r, j).is_zero()) at(r, j) *= inv;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || at(i, e).is_zero()) continue;
      const Scalar f = at(i, e);
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!at(r, j).is_zero()) at(i, j) -= f * at(r, j);
      }
    }
    if (!reduced[e].is_zero()) {
      const Scalar f = reduced[e];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!at(r, j).is_zero()) reduced[j] -= f * at(r, j);
      }
    }
    basis_[r] = e;
  }

  std::size_t rows_;
  std::size_t structural_;
  std::size_t cols_;
  std::vector<Scalar> cells_;
  std::vector<std::size_t> basis_;
};

}  // namespace

std::optional<std::vector<Scalar>> convex_coefficients(std::span<const Point> vertices, const Point& p) {
  if (vertices.empty()) throw DomainError("point_in_hull: empty vertex list");
  for (const Point& v : vertices) {
    if (v.dim() != p.dim()) throw DomainError("point_in_hull: dimension mismatch");
  }
  if (const auto it = std::find(vertices.begin(), vertices.end(), p); it != vertices.end()) {
    std::vector<Scalar> w(vertices.size());
    w[static_cast<std::size_t>(it - vertices.begin())] = Scalar(1);
    return w;
  }
  PhaseOneTableau tableau(vertices, p);
  if (!tableau.solve()) return std::nullopt;
  return tableau.structural_values();
}

}  // namespace vcnorms
