#include "qspin/suslin.hpp"

#include <map>
#include <mutex>

namespace qspin {

RingElem q_form(const std::vector<RingElem>& a,
                const std::vector<RingElem>& b) {
  if (a.size() != b.size() || a.empty())
    fail(ErrKind::DimensionMismatch, "q needs matching nonempty vectors");
  RingElem s = RingElem::zero(a[0].ctx());
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<RingElem> basis_vector(const RingCtx& ctx, int len, int idx) {
  if (idx < 0 || idx >= len) fail(ErrKind::DimensionMismatch, "basis index");
  std::vector<RingElem> v(len, RingElem::zero(ctx));
  v[idx] = RingElem::one(ctx);
  return v;
}

UnitVector UnitVector::make(std::vector<RingElem> a, std::vector<RingElem> b) {
  if (a.size() != b.size() || a.empty())
    fail(ErrKind::DimensionMismatch, "unit vector needs matching lengths");
  if (!q_form(a, b).is_one())
    fail(ErrKind::NotUnitVector, "q(a,b) != 1");
  UnitVector u;
  u.n = (int)a.size();
  u.a = std::move(a);
  u.b = std::move(b);
  return u;
}

UnitVector UnitVector::standard(const RingCtx& ctx, int n) {
  return make(basis_vector(ctx, n, 0), basis_vector(ctx, n, 0));
}

UnitVector UnitVector::generic(int n) {
  const RingCtx ctx = RingCtx::quadric(n);
  std::vector<RingElem> a, b;
  for (int i = 1; i <= n; ++i) {
    a.push_back(RingElem::x(ctx, i));
    b.push_back(RingElem::y(ctx, i));
  }
  return make(std::move(a), std::move(b));
}

std::vector<RingElem> UnitVector::coords() const {
  std::vector<RingElem> c = a;
  c.insert(c.end(), b.begin(), b.end());
  return c;
}

UnimodularVec UnimodularVec::make(
    std::vector<RingElem> a, std::optional<std::vector<RingElem>> section) {
  if (a.empty()) fail(ErrKind::DimensionMismatch, "empty vector");
  if (section) {
    if (section->size() != a.size())
      fail(ErrKind::DimensionMismatch, "section length");
    if (!q_form(a, *section).is_one())
      fail(ErrKind::NotUnitVector, "claimed section has dot product != 1");
  }
  UnimodularVec v;
  v.n = (int)a.size();
  v.a = std::move(a);
  v.section = std::move(section);
  return v;
}

namespace {

RingMat alpha_rec(const RingCtx& ctx, const RingElem* a, const RingElem* b,
                  int n) {
  if (n == 1) {
    RingMat m(ctx, 1, 1);
    m.at(0, 0) = a[0];
    return m;
  }
  RingMat upper = alpha_rec(ctx, a + 1, b + 1, n - 1);
  RingMat lower = alpha_rec(ctx, b + 1, a + 1, n - 1);
  const int h = upper.rows();
  return block({{RingMat::scalar(ctx, h, a[0]), upper},
                {-lower.transpose(), RingMat::scalar(ctx, h, b[0])}});
}

void check_pair(const std::vector<RingElem>& a,
                const std::vector<RingElem>& b) {
  if (a.size() != b.size() || a.empty())
    fail(ErrKind::DimensionMismatch, "vector lengths differ");
  for (const RingElem& e : a)
    if (e.ctx() != a[0].ctx()) fail(ErrKind::CtxMismatch, "mixed contexts");
  for (const RingElem& e : b)
    if (e.ctx() != a[0].ctx()) fail(ErrKind::CtxMismatch, "mixed contexts");
}

}  // namespace

RingMat suslin_alpha_mat(const std::vector<RingElem>& a,
                         const std::vector<RingElem>& b) {
  check_pair(a, b);
  return alpha_rec(a[0].ctx(), a.data(), b.data(), (int)a.size());
}

RingMat suslin_alpha_bar_mat(const std::vector<RingElem>& a,
                             const std::vector<RingElem>& b) {
  check_pair(a, b);
  const RingCtx& ctx = a[0].ctx();
  const int n = (int)a.size();
  if (n == 1) {
    RingMat m(ctx, 1, 1);
    m.at(0, 0) = b[0];
    return m;
  }
  RingMat upper = alpha_rec(ctx, a.data() + 1, b.data() + 1, n - 1);
  RingMat lower = alpha_rec(ctx, b.data() + 1, a.data() + 1, n - 1);
  const int h = upper.rows();
  return block({{RingMat::scalar(ctx, h, b[0]), -upper},
                {lower.transpose(), RingMat::scalar(ctx, h, a[0])}});
}

SuslinMatrix suslin_alpha(std::vector<RingElem> a, std::vector<RingElem> b) {
  RingMat m = suslin_alpha_mat(a, b);
  return SuslinMatrix{(int)a.size(), std::move(a), std::move(b), std::move(m)};
}

SuslinMatrix suslin_alpha_bar(std::vector<RingElem> a,
                              std::vector<RingElem> b) {
  RingMat m = suslin_alpha_bar_mat(a, b);
  return SuslinMatrix{(int)a.size(), std::move(a), std::move(b), std::move(m)};
}

namespace {

// The structure matrices are integer-valued; build them once over the
// rational context and lift into the requested ring on demand.
std::mutex cache_mutex;

const RingMat& j_rational(int n) {
  static std::map<int, RingMat> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  const RingCtx q = RingCtx::rational();
  RingMat j = RingMat::identity(q, 1);
  for (int k = 2; k <= n; ++k) {
    RingMat z(q, j.rows(), j.cols());
    if (k % 2 == 0)
      j = block({{z, j}, {-j, z}});
    else
      j = block({{j, z}, {z, -j}});
  }
  return cache.emplace(n, std::move(j)).first->second;
}

RingMat form_2x2(const RingCtx& ctx, int a01, int a10) {
  RingMat m(ctx, 2, 2);
  m.at(0, 1) = RingElem::constant(ctx, a01);
  m.at(1, 0) = RingElem::constant(ctx, a10);
  return m;
}

RingMat repeated_form(const RingCtx& ctx, int size, int a01, int a10) {
  if (size < 2 || size % 2 != 0)
    fail(ErrKind::InvalidArgument, "form size must be even and >= 2");
  RingMat cell = form_2x2(ctx, a01, a10);
  RingMat m = cell;
  for (int k = 2; k * 2 <= size; ++k) m = block_sum(m, cell);
  return m;
}

// The four-case recursion; "1" entries in the displayed blocks are identity
// matrices of size 2^{n-2}.
const RingMat& e_rational(int n) {
  static std::map<int, RingMat> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  const RingCtx q = RingCtx::rational();
  RingMat e(q, 0, 0);
  if (n <= 2) {
    e = RingMat::identity(q, 1 << (n - 1));
  } else {
    const int h = 1 << (n - 2);
    const RingMat id = RingMat::identity(q, h);
    const RingMat zero(q, h, h);
    switch (n % 4) {
      case 0: {
        RingMat f1 = block({{id, zero}, {zero, j_rational(n - 1).transpose()}});
        RingMat f2 = block({{id, zero}, {tau_mat(h, q), id}});
        RingMat f3 = block({{id, -sigma_mat(h, q)}, {zero, id}});
        RingMat f4 = block({{id, zero}, {zero, psi_mat(h, q)}});
        e = f1 * f2 * f3 * f4;
        break;
      }
      case 1: {
        const RingMat prev = e_rational(n - 1);
        e = block_sum(prev, prev) * block({{id, zero}, {zero, psi_mat(h, q)}});
        break;
      }
      case 2: {
        RingMat f1 = block({{id, zero}, {zero, j_rational(n - 1).transpose()}});
        RingMat f2 = block({{id, zero}, {tau_mat(h, q), id}});
        RingMat f3 = block({{id, psi_mat(h, q)}, {zero, id}});
        RingMat f4 = block({{id, zero}, {zero, sigma_mat(h, q)}});
        e = f1 * f2 * f3 * f4;
        break;
      }
      default: {
        const RingMat prev = e_rational(n - 1);
        e = block_sum(prev, prev) * block({{id, zero}, {zero, sigma_mat(h, q)}});
        break;
      }
    }
  }
  return cache.emplace(n, std::move(e)).first->second;
}

const RingMat& e_inv_rational(int n) {
  static std::map<int, RingMat> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  return cache.emplace(n, inverse_rational(e_rational(n))).first->second;
}

}  // namespace

RingMat j_matrix(int n, const RingCtx& ctx) {
  if (n < 1) fail(ErrKind::InvalidArgument, "J_n needs n >= 1");
  std::lock_guard<std::mutex> lock(cache_mutex);
  const RingMat& j = j_rational(n);
  return ctx.kind == RingKind::Rational ? j : lift_to_ctx(j, ctx);
}

RingMat e_matrix(int n, const RingCtx& ctx) {
  if (n < 1) fail(ErrKind::InvalidArgument, "E_n needs n >= 1");
  std::lock_guard<std::mutex> lock(cache_mutex);
  const RingMat& e = e_rational(n);
  return ctx.kind == RingKind::Rational ? e : lift_to_ctx(e, ctx);
}

RingMat e_matrix_inverse(int n, const RingCtx& ctx) {
  if (n < 1) fail(ErrKind::InvalidArgument, "E_n needs n >= 1");
  std::lock_guard<std::mutex> lock(cache_mutex);
  const RingMat& e = e_inv_rational(n);
  return ctx.kind == RingKind::Rational ? e : lift_to_ctx(e, ctx);
}

RingMat sigma_mat(int size, const RingCtx& ctx) {
  return repeated_form(ctx, size, 1, 1);
}

RingMat psi_mat(int size, const RingCtx& ctx) {
  return repeated_form(ctx, size, 1, -1);
}

RingMat tau_mat(int size, const RingCtx& ctx) {
  return repeated_form(ctx, size, 1, 0);
}

StructConsts struct_consts(int n, const RingCtx& ctx) {
  if (n < 2) fail(ErrKind::InvalidArgument, "structure bundle needs n >= 2");
  const int size = 1 << (n - 1);
  return StructConsts{n,
                      j_matrix(n, ctx),
                      e_matrix(n, ctx),
                      sigma_mat(size, ctx),
                      psi_mat(size, ctx),
                      tau_mat(size, ctx)};
}

RingMat standard_involution(const RingMat& m) {
  if (!m.is_square()) fail(ErrKind::NotSquare, "involution");
  int k = 0;
  while ((1 << k) < m.rows()) ++k;
  if ((1 << k) != m.rows())
    fail(ErrKind::NotPowerOfTwo, "involution needs size 2^k");
  RingMat j = j_matrix(k + 1, m.ctx());
  return j * m.transpose() * j.transpose();
}

RingMat degree_map_raw(const std::vector<RingElem>& a,
                       const std::vector<RingElem>& b) {
  check_pair(a, b);
  const RingCtx& ctx = a[0].ctx();
  const int n = (int)a.size();
  RingMat alpha = suslin_alpha_mat(a, b);
  if (n % 2 == 0)
    return e_matrix_inverse(n, ctx) * alpha.transpose() * e_matrix(n, ctx);
  return e_matrix(n, ctx).transpose() * alpha * j_matrix(n, ctx) *
         e_matrix(n, ctx);
}

FormClass degree_map_class(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return FormClass::OrthogonalWrt;
    case 1: return FormClass::Symmetric;
    case 2: return FormClass::SymplecticWrt;
    default: return FormClass::Alternating;
  }
}

RingMat psi_degree_map(const UnitVector& u) {
  RingMat m = degree_map_raw(u.a, u.b);
  const int size = m.rows();
  const FormClass cls = degree_map_class(u.n);
  bool ok = false;
  if (cls == FormClass::Symmetric || cls == FormClass::Alternating) {
    ok = classify_form(m, cls);
  } else {
    RingMat ref = cls == FormClass::OrthogonalWrt ? sigma_mat(size, u.ctx())
                                                  : psi_mat(size, u.ctx());
    ok = classify_form(m, cls, &ref);
  }
  if (!ok)
    fail(ErrKind::Internal, "degree map left its symmetry class (n = " +
                                std::to_string(u.n) + ")");
  return m;
}

}  // namespace qspin
