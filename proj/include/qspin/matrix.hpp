#pragma once

#include <vector>

#include "qspin/ring.hpp"

namespace qspin {

// Dense matrix over a RingCtx. Entries all share the context; operations
// check shapes and contexts and throw on mismatch.
class RingMat {
 public:
  RingMat(const RingCtx& ctx, int rows, int cols);
  static RingMat identity(const RingCtx& ctx, int n);
  static RingMat scalar(const RingCtx& ctx, int n, const RingElem& c);
  static RingMat from_rows(const RingCtx& ctx,
                           std::vector<std::vector<RingElem>> rows);

  const RingCtx& ctx() const { return ctx_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const RingElem& at(int r, int c) const;
  RingElem& at(int r, int c);

  RingMat transpose() const;
  RingMat operator-() const;
  friend RingMat operator+(const RingMat& a, const RingMat& b);
  friend RingMat operator-(const RingMat& a, const RingMat& b);
  friend RingMat operator*(const RingMat& a, const RingMat& b);
  RingMat scaled(const RingElem& c) const;

  bool operator==(const RingMat& o) const;
  bool operator!=(const RingMat& o) const { return !(*this == o); }

  RingMat slice(int r0, int c0, int h, int w) const;

  // Entry-wise evaluation at a quadric point (symbolic -> Rational).
  RingMat eval(const EvalPoint& p) const;

  std::string to_string() const;  // aligned columns, for humans

 private:
  RingCtx ctx_;
  int rows_, cols_;
  std::vector<RingElem> e_;
};

// Assemble a grid of blocks; row heights and column widths must agree.
RingMat block(const std::vector<std::vector<RingMat>>& grid);

// diag(A, B): the orthogonal sum of forms.
RingMat block_sum(const RingMat& a, const RingMat& b);

// Division-free determinant (Berkowitz), valid over any commutative ring.
// Symbolic contexts are limited to size <= 16; larger symbolic requests are
// rejected so callers fall back to sampled evaluation.
RingElem det_berkowitz(const RingMat& a);

// Determinant dispatch: exact Gaussian elimination over Rational contexts,
// Berkowitz otherwise.
RingElem det(const RingMat& a);

// Reference Pfaffian by expansion along the first row, memoized over index
// subsets; any ring, size <= 16.
RingElem pfaffian_expansion(const RingMat& a);

// Pfaffian dispatch: skew-symmetric elimination over Rational contexts
// (cubic, exact), first-row expansion otherwise. Requires an alternating
// input.
RingElem pfaffian(const RingMat& a);

bool is_symmetric(const RingMat& a);
bool is_alternating(const RingMat& a);
bool is_orthogonal_wrt(const RingMat& a, const RingMat& form);
bool is_symplectic_wrt(const RingMat& a, const RingMat& form);

enum class FormClass { Symmetric, Alternating, OrthogonalWrt, SymplecticWrt };
bool classify_form(const RingMat& a, FormClass cls,
                   const RingMat* form = nullptr);

// Exact inverse over the Rational context (Gauss-Jordan); throws Singular.
RingMat inverse_rational(const RingMat& a);

// Adjugate via signed cofactors (division-free); inverse of a when
// det(a) = 1, over any ring.
RingMat adjugate(const RingMat& a);

// Re-embed a matrix of constants into another context.
RingMat lift_to_ctx(const RingMat& a, const RingCtx& target);

// Nullspace basis of the homogeneous system rows * z = 0 over Q.
std::vector<std::vector<mpq_class>> rational_nullspace(
    std::vector<std::vector<mpq_class>> rows, int cols);

}  // namespace qspin
