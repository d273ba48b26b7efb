#pragma once

#include <utility>
#include <vector>

#include "qspin/suslin.hpp"

namespace qspin {

enum class Parity { Even, Odd, Mixed };

// Element of the Clifford algebra of H(R^n) realized as a 2^n-square matrix:
// block-diagonal elements are even, block-antidiagonal ones odd.
struct CliffordElem {
  int n;
  RingMat mat;
  Parity parity;

  static CliffordElem from_matrix(RingMat m);
};

// phi(a,b) = [[0, alpha], [alpha_bar, 0]]; squares to q(a,b) * id.
CliffordElem phi_embed(const std::vector<RingElem>& a,
                       const std::vector<RingElem>& b);

// Inverse of the linear embedding of V: recovers (a,b) with phi(a,b) = m, or
// throws NotInV when m is outside the embedded subspace.
std::pair<std::vector<RingElem>, std::vector<RingElem>> phi_extract(
    const CliffordElem& m);

struct StabilityRecord {
  int basis_index;                // 0..2n-1, x-part first
  std::vector<RingElem> image;    // 2n coordinates of the conjugated vector
};

struct SpinCertificate {
  bool unitary = false;
  std::vector<StabilityRecord> stability;
};

// Certified Spin element: even, g g* = 1, conjugation stabilizes V, and the
// induced 2n x 2n matrix preserves the split form with determinant 1.
struct SpinElem {
  int n;
  CliffordElem g;
  RingMat g_star;    // equals g^{-1} once certified
  RingMat so_matrix;
  SpinCertificate cert;
};

SpinElem spin_certify(const CliffordElem& g);

UnitVector spin_act(const SpinElem& g, const UnitVector& u);

// G' = [[0, I], [I, 0]]: with 2 invertible, M^t G' M = G' is equivalent to
// preservation of q.
RingMat gram_form(const RingCtx& ctx, int n);

struct SOMatrix {
  int n;        // vector length; matrix is 2n x 2n
  RingMat mat;
};

// H(sigma) = diag(sigma, sigma^{-t}) for sigma of determinant 1.
SOMatrix hyperbolic_embed(const RingMat& sl);

// Solves for the even Clifford element covering H(sigma); rational entries
// only. The representative is normalized so its first nonzero entry
// (row-major) is positive.
SpinElem lift_hyperbolic_to_spin(const RingMat& sl);

// diag(h, (h*)^{-1}) for square h of size 2^k over the rationals: the
// candidate even element attached to h (for k = 2 this is the
// Spin_6 <-> SL_4 dictionary). Certification decides membership.
CliffordElem diag_even_candidate(const RingMat& h);

}  // namespace qspin
