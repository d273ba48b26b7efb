#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qspin/clifford.hpp"

namespace qspin {

// Product of elementary transvections I + lambda * E_{row,col}; indices are
// 0-based. The product always has determinant 1.
struct ElementaryFactor {
  int row, col;
  RingElem lambda;
};

struct ElementaryWitness {
  int size;
  std::vector<ElementaryFactor> factors;

  RingMat to_matrix(const RingCtx& ctx) const;
};

enum class CongruenceFlavor { WE, WSL, SSim };

// Checks M (+) form_{2n+2i} = E^t (N (+) form_{2m+2i}) E exactly, with psi
// padding for the alternating flavors and sigma padding for the symmetric
// one. W_E and S_sim demand elementary witnesses; W_SL accepts any matrix of
// determinant 1.
bool verify_congruence_witness(const RingMat& m, const RingMat& n, int i,
                               const ElementaryWitness& e,
                               CongruenceFlavor flavor);
bool verify_congruence_witness(const RingMat& m, const RingMat& n, int i,
                               const RingMat& e, CongruenceFlavor flavor);

struct CheckResult {
  bool ok = false;
  std::string reason;
  explicit operator bool() const { return ok; }
};

// A claimed factorization g = lift(lambda) * (product of epin factors) * s
// with s stabilizing the target vector. Verifies the claim; never searches.
struct SpinFactorization {
  RingMat lambda;              // determinant-1 matrix over Q, lifted via the
                               // hyperbolic cover
  std::vector<SpinElem> epin;  // elementary stand-ins, already certified
  SpinElem stabilizer;
};

CheckResult factorization_check(const SpinElem& phi,
                                const SpinFactorization& decomposition,
                                const UnitVector& target);

// (a, section) -> the unit vector (a, section).
UnitVector unit_vector_of(const UnimodularVec& v);

// (x1^m, x2, ..., xn) over S_{2n-1} together with the explicit section from
// expanding 1 = (x1 y1 + s)^m, s = sum_{i >= 2} x_i y_i.
UnimodularVec power_row_section(int n, int m);

// The rank-4 dictionary: alternating 4x4 matrices of Pfaffian 1 correspond
// exactly to degree-map images of length-3 unit vectors.
UnitVector alt4_to_unit_vector(const RingMat& a);
RingMat unit_vector_to_alt4(const UnitVector& u);

enum class OrbitKind { SL, Elementary, SO, Spin };

struct OrbitWitness {
  OrbitKind kind;
  std::optional<RingMat> matrix;               // SL / SO
  std::optional<ElementaryWitness> factors;    // Elementary
  std::optional<SpinElem> spin;                // Spin
  std::vector<RingElem> src_a, src_b;          // b empty for Um witnesses
  std::vector<RingElem> dst_a, dst_b;
};

CheckResult verify_orbit_witness(const OrbitWitness& w);

}  // namespace qspin
