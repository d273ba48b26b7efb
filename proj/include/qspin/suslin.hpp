#pragma once

#include <optional>
#include <vector>

#include "qspin/matrix.hpp"

namespace qspin {

// q(a,b) = sum_i a_i b_i
RingElem q_form(const std::vector<RingElem>& a, const std::vector<RingElem>& b);

std::vector<RingElem> basis_vector(const RingCtx& ctx, int len, int idx);

// A pair (a,b) with q(a,b) = 1, checked at construction.
struct UnitVector {
  int n;
  std::vector<RingElem> a, b;

  static UnitVector make(std::vector<RingElem> a, std::vector<RingElem> b);
  static UnitVector standard(const RingCtx& ctx, int n);  // (e_n, e_n)
  static UnitVector generic(int n);  // ((x1..xn),(y1..yn)) over Quadric(n)

  const RingCtx& ctx() const { return a[0].ctx(); }
  std::vector<RingElem> coords() const;  // a then b, length 2n
  bool operator==(const UnitVector& o) const { return a == o.a && b == o.b; }
  bool operator!=(const UnitVector& o) const { return !(*this == o); }
};

// A vector whose entries generate the unit ideal, certified by an explicit
// section when present.
struct UnimodularVec {
  int n;
  std::vector<RingElem> a;
  std::optional<std::vector<RingElem>> section;

  static UnimodularVec make(std::vector<RingElem> a,
                            std::optional<std::vector<RingElem>> section);
};

RingMat suslin_alpha_mat(const std::vector<RingElem>& a,
                         const std::vector<RingElem>& b);
RingMat suslin_alpha_bar_mat(const std::vector<RingElem>& a,
                             const std::vector<RingElem>& b);

// The recursive 2^{n-1}-square matrix together with its generating pair.
struct SuslinMatrix {
  int n;
  std::vector<RingElem> a, b;
  RingMat mat;
};

SuslinMatrix suslin_alpha(std::vector<RingElem> a, std::vector<RingElem> b);
SuslinMatrix suslin_alpha_bar(std::vector<RingElem> a, std::vector<RingElem> b);

// Structure matrices. J and E are indexed by n (size 2^{n-1}); sigma, psi
// and tau are indexed by their size (even).
RingMat j_matrix(int n, const RingCtx& ctx);
RingMat e_matrix(int n, const RingCtx& ctx);
RingMat e_matrix_inverse(int n, const RingCtx& ctx);
RingMat sigma_mat(int size, const RingCtx& ctx);
RingMat psi_mat(int size, const RingCtx& ctx);
RingMat tau_mat(int size, const RingCtx& ctx);

struct StructConsts {
  int n;
  RingMat J, E, sigma, psi, tau;  // J, E of size 2^{n-1}; forms of that size
};
StructConsts struct_consts(int n, const RingCtx& ctx);

// M* = J_{k+1} M^t J_{k+1}^t for M of size 2^k.
RingMat standard_involution(const RingMat& m);

// Degree map: E_n^{-1} alpha_n^t E_n for even n, E_n^t alpha_n J_n E_n for
// odd n. The raw variant accepts any (a,b); the UnitVector variant also
// asserts the symmetry-class membership for n mod 4.
RingMat degree_map_raw(const std::vector<RingElem>& a,
                       const std::vector<RingElem>& b);
RingMat psi_degree_map(const UnitVector& u);

// Expected symmetry class of the degree map image.
FormClass degree_map_class(int n);

}  // namespace qspin
