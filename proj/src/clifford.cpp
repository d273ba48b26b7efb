#include "qspin/clifford.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace qspin {

namespace {

bool is_zero_block(const RingMat& m, int r0, int c0, int h, int w) {
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j)
      if (!m.at(r0 + i, c0 + j).is_zero()) return false;
  return true;
}

int log2_size(const RingMat& m) {
  if (!m.is_square()) fail(ErrKind::NotSquare, "Clifford element");
  int k = 0;
  while ((1 << k) < m.rows()) ++k;
  if ((1 << k) != m.rows())
    fail(ErrKind::NotPowerOfTwo, "Clifford element needs size 2^n");
  return k;
}

}  // namespace

CliffordElem CliffordElem::from_matrix(RingMat m) {
  const int n = log2_size(m);
  if (n == 0)
    fail(ErrKind::InvalidArgument, "Clifford element needs size >= 2");
  const int h = m.rows() / 2;
  const bool off_zero =
      is_zero_block(m, 0, h, h, h) && is_zero_block(m, h, 0, h, h);
  const bool diag_zero =
      is_zero_block(m, 0, 0, h, h) && is_zero_block(m, h, h, h, h);
  Parity p = Parity::Mixed;
  if (off_zero && !diag_zero) p = Parity::Even;
  if (diag_zero && !off_zero) p = Parity::Odd;
  if (off_zero && diag_zero) p = Parity::Even;  // zero counts as even
  return CliffordElem{n, std::move(m), p};
}

CliffordElem phi_embed(const std::vector<RingElem>& a,
                       const std::vector<RingElem>& b) {
  RingMat up = suslin_alpha_mat(a, b);
  RingMat low = suslin_alpha_bar_mat(a, b);
  const RingCtx& ctx = up.ctx();
  const int h = up.rows();
  RingMat zero(ctx, h, h);
  RingMat m = block({{zero, up}, {low, zero}});
  return CliffordElem{(int)a.size(), std::move(m), Parity::Odd};
}

namespace {

// Where each coordinate shows up inside alpha_n: every entry of the Suslin
// matrix is 0 or +-a_i or +-b_i, so one position per variable suffices to
// read a candidate pair off a matrix.
struct AlphaPattern {
  int n;
  std::vector<std::tuple<int, int, int>> pos;  // (row, col, sign) per var
};

const AlphaPattern& alpha_pattern(int n) {
  static std::mutex mu;
  static std::map<int, AlphaPattern> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  const RingCtx ctx = RingCtx::poly(n);
  std::vector<RingElem> a, b;
  for (int i = 1; i <= n; ++i) {
    a.push_back(RingElem::x(ctx, i));
    b.push_back(RingElem::y(ctx, i));
  }
  RingMat alpha = suslin_alpha_mat(a, b);
  AlphaPattern p;
  p.n = n;
  p.pos.assign(2 * n, {-1, -1, 0});
  for (int r = 0; r < alpha.rows(); ++r) {
    for (int c = 0; c < alpha.cols(); ++c) {
      const RingElem& e = alpha.at(r, c);
      if (e.is_zero()) continue;
      const auto& [mono, coeff] = *e.terms().begin();
      int var = -1;
      for (std::size_t v = 0; v < mono.size(); ++v)
        if (mono[v] == 1) var = (int)v;
      // a_i lives at interleaved slot 2(i-1), b_i at 2(i-1)+1
      if (std::get<0>(p.pos[var]) < 0)
        p.pos[var] = {r, c, coeff > 0 ? 1 : -1};
    }
  }
  for (int v = 0; v < 2 * n; ++v)
    if (std::get<0>(p.pos[v]) < 0)
      fail(ErrKind::Internal, "alpha pattern missed a coordinate");
  return cache.emplace(n, std::move(p)).first->second;
}

}  // namespace

std::pair<std::vector<RingElem>, std::vector<RingElem>> phi_extract(
    const CliffordElem& m) {
  if (m.parity != Parity::Odd)
    fail(ErrKind::NotInV, "element has even-degree components");
  const int h = m.mat.rows() / 2;
  RingMat up = m.mat.slice(0, h, h, h);
  RingMat low = m.mat.slice(h, 0, h, h);
  const AlphaPattern& pat = alpha_pattern(m.n);
  const RingCtx& ctx = m.mat.ctx();
  std::vector<RingElem> a(m.n, RingElem::zero(ctx)),
      b(m.n, RingElem::zero(ctx));
  for (int v = 0; v < 2 * m.n; ++v) {
    auto [r, c, s] = pat.pos[v];
    RingElem val = s > 0 ? up.at(r, c) : -up.at(r, c);
    if (v % 2 == 0)
      a[v / 2] = std::move(val);
    else
      b[v / 2] = std::move(val);
  }
  if (suslin_alpha_mat(a, b) != up || suslin_alpha_bar_mat(a, b) != low)
    fail(ErrKind::NotInV, "matrix does not match any phi(a,b)");
  return {std::move(a), std::move(b)};
}

RingMat gram_form(const RingCtx& ctx, int n) {
  RingMat id = RingMat::identity(ctx, n);
  RingMat zero(ctx, n, n);
  return block({{zero, id}, {id, zero}});
}

SpinElem spin_certify(const CliffordElem& g) {
  if (g.parity != Parity::Even)
    fail(ErrKind::InvalidArgument, "spin candidates must be even");
  const RingCtx& ctx = g.mat.ctx();
  const int n = g.n;
  RingMat g_star = standard_involution(g.mat);
  const RingMat id = RingMat::identity(ctx, g.mat.rows());
  if (g.mat * g_star != id || g_star * g.mat != id)
    fail(ErrKind::NotUnitary, "g g* != 1");

  SpinCertificate cert;
  cert.unitary = true;
  RingMat so(ctx, 2 * n, 2 * n);
  for (int k = 0; k < 2 * n; ++k) {
    std::vector<RingElem> va(n, RingElem::zero(ctx)),
        vb(n, RingElem::zero(ctx));
    if (k < n)
      va[k] = RingElem::one(ctx);
    else
      vb[k - n] = RingElem::one(ctx);
    RingMat conj = g.mat * phi_embed(va, vb).mat * g_star;
    std::vector<RingElem> ia, ib;
    try {
      std::tie(ia, ib) = phi_extract(CliffordElem{n, conj, Parity::Odd});
    } catch (const Error& e) {
      if (e.kind() == ErrKind::NotInV)
        fail(ErrKind::NotStable,
             "conjugate of basis vector " + std::to_string(k) + " left V");
      throw;
    }
    StabilityRecord rec;
    rec.basis_index = k;
    for (int r = 0; r < n; ++r) {
      so.at(r, k) = ia[r];
      so.at(n + r, k) = ib[r];
      rec.image.push_back(ia[r]);
    }
    for (int r = 0; r < n; ++r) rec.image.push_back(ib[r]);
    cert.stability.push_back(std::move(rec));
  }

  RingMat gp = gram_form(ctx, n);
  if (so.transpose() * gp * so != gp)
    fail(ErrKind::Internal, "induced matrix does not preserve the form");
  if (!det(so).is_one())
    fail(ErrKind::NotSpecial, "induced matrix has determinant != 1");
  return SpinElem{n, g, std::move(g_star), std::move(so), std::move(cert)};
}

UnitVector spin_act(const SpinElem& g, const UnitVector& u) {
  if (u.n != g.n) fail(ErrKind::DimensionMismatch, "spin action");
  if (u.ctx() != g.g.mat.ctx()) fail(ErrKind::CtxMismatch, "spin action");
  RingMat conj = g.g.mat * phi_embed(u.a, u.b).mat * g.g_star;
  std::vector<RingElem> va, vb;
  try {
    std::tie(va, vb) = phi_extract(CliffordElem{g.n, conj, Parity::Odd});
  } catch (const Error& e) {
    if (e.kind() == ErrKind::NotInV)
      fail(ErrKind::Internal, "certified element moved a vector out of V");
    throw;
  }
  // The linear description through the induced matrix must agree entrywise.
  std::vector<RingElem> in = u.coords();
  for (int r = 0; r < 2 * g.n; ++r) {
    RingElem s = RingElem::zero(u.ctx());
    for (int c = 0; c < 2 * g.n; ++c) s += g.so_matrix.at(r, c) * in[c];
    const RingElem& expect = r < g.n ? va[r] : vb[r - g.n];
    if (s != expect)
      fail(ErrKind::Internal, "conjugation and matrix action disagree");
  }
  return UnitVector::make(std::move(va), std::move(vb));
}

SOMatrix hyperbolic_embed(const RingMat& sl) {
  if (!sl.is_square()) fail(ErrKind::NotSquare, "hyperbolic embedding");
  const RingCtx& ctx = sl.ctx();
  if (!det(sl).is_one())
    fail(ErrKind::NotSpecial, "hyperbolic embedding needs determinant 1");
  RingMat inv = ctx.kind == RingKind::Rational ? inverse_rational(sl)
                                               : adjugate(sl);
  RingMat h = block_sum(sl, inv.transpose());
  RingMat gp = gram_form(ctx, sl.rows());
  if (h.transpose() * gp * h != gp)
    fail(ErrKind::Internal, "H(sigma) failed to preserve the form");
  return SOMatrix{sl.rows(), std::move(h)};
}

CliffordElem diag_even_candidate(const RingMat& h) {
  if (h.ctx().kind != RingKind::Rational)
    fail(ErrKind::CtxMismatch, "dictionary candidates need rational entries");
  RingMat h_star = standard_involution(h);
  RingMat lower = inverse_rational(h_star);
  return CliffordElem::from_matrix(block_sum(h, lower));
}

SpinElem lift_hyperbolic_to_spin(const RingMat& sl) {
  if (sl.ctx().kind != RingKind::Rational)
    fail(ErrKind::CtxMismatch, "lift solver works over the rationals");
  const int n = sl.rows();
  if (n < 2 || n > 4)
    fail(ErrKind::InvalidArgument, "lift solver supports 2 <= n <= 4");
  const RingCtx ctx = RingCtx::rational();
  SOMatrix h = hyperbolic_embed(sl);
  const int m = 1 << (n - 1);
  const int unknowns = 2 * m * m;  // g1 row-major, then g2

  // g diag(g1,g2) must satisfy g * phi(v) = phi(H v) * g on the 2n basis
  // vectors; each gives the block equations g1 A - A' g2 = 0 and
  // g2 B - B' g1 = 0.
  std::vector<std::vector<mpq_class>> rows;
  for (int k = 0; k < 2 * n; ++k) {
    std::vector<RingElem> va(n, RingElem::zero(ctx)),
        vb(n, RingElem::zero(ctx));
    if (k < n)
      va[k] = RingElem::one(ctx);
    else
      vb[k - n] = RingElem::one(ctx);
    std::vector<RingElem> wa(n, RingElem::zero(ctx)),
        wb(n, RingElem::zero(ctx));
    for (int r = 0; r < n; ++r) {
      wa[r] = h.mat.at(r, k);
      wb[r] = h.mat.at(n + r, k);
    }
    RingMat A = suslin_alpha_mat(va, vb), B = suslin_alpha_bar_mat(va, vb);
    RingMat Ap = suslin_alpha_mat(wa, wb), Bp = suslin_alpha_bar_mat(wa, wb);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) {
        std::vector<mpq_class> eq1(unknowns, 0), eq2(unknowns, 0);
        for (int s = 0; s < m; ++s) {
          eq1[r * m + s] += A.at(s, c).as_rational();
          eq1[m * m + s * m + c] -= Ap.at(r, s).as_rational();
          eq2[m * m + r * m + s] += B.at(s, c).as_rational();
          eq2[s * m + c] -= Bp.at(r, s).as_rational();
        }
        rows.push_back(std::move(eq1));
        rows.push_back(std::move(eq2));
      }
    }
  }
  auto basis = rational_nullspace(std::move(rows), unknowns);
  if (basis.empty())
    fail(ErrKind::NoLift, "no even element intertwines H(sigma)");
  if (basis.size() > 1)
    fail(ErrKind::Internal, "intertwiner space has dimension > 1");

  RingMat g0(ctx, 2 * m, 2 * m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      g0.at(r, c) = RingElem::constant(ctx, basis[0][r * m + c]);
      g0.at(m + r, m + c) =
          RingElem::constant(ctx, basis[0][m * m + r * m + c]);
    }
  // g0 g0* is a scalar lambda; rescale by 1/sqrt(lambda) to reach g g* = 1.
  RingMat u = g0 * standard_involution(g0);
  mpq_class lambda = u.at(0, 0).as_rational();
  for (int r = 0; r < 2 * m; ++r)
    for (int c = 0; c < 2 * m; ++c) {
      const mpq_class v = u.at(r, c).as_rational();
      if ((r == c && v != lambda) || (r != c && v != 0))
        fail(ErrKind::Internal, "g g* is not scalar on the solution line");
    }
  if (lambda <= 0)
    fail(ErrKind::NotNormalizable, "g g* scalar is not a positive square");
  if (!mpz_perfect_square_p(mpq_numref(lambda.get_mpq_t())) ||
      !mpz_perfect_square_p(mpq_denref(lambda.get_mpq_t())))
    fail(ErrKind::NotNormalizable, "g g* scalar is not a rational square");
  mpq_class root;
  mpz_sqrt(mpq_numref(root.get_mpq_t()), mpq_numref(lambda.get_mpq_t()));
  mpz_sqrt(mpq_denref(root.get_mpq_t()), mpq_denref(lambda.get_mpq_t()));
  mpq_class scale = 1 / root;

  RingMat g = g0.scaled(RingElem::constant(ctx, scale));
  for (int r = 0; r < 2 * m; ++r) {
    bool done = false;
    for (int c = 0; c < 2 * m; ++c) {
      const RingElem& e = g.at(r, c);
      if (e.is_zero()) continue;
      if (e.as_rational() < 0) g = -g;
      done = true;
      break;
    }
    if (done) break;
  }

  SpinElem lifted = spin_certify(CliffordElem::from_matrix(g));
  if (lifted.so_matrix != h.mat)
    fail(ErrKind::Internal, "lift does not cover H(sigma)");
  return lifted;
}

}  // namespace qspin
