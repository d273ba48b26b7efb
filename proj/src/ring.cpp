#include "qspin/ring.hpp"

#include <algorithm>
#include <sstream>

namespace qspin {

const char* to_string(ErrKind k) {
  switch (k) {
    case ErrKind::CtxMismatch: return "CtxMismatch";
    case ErrKind::ShapeMismatch: return "ShapeMismatch";
    case ErrKind::DimensionMismatch: return "DimensionMismatch";
    case ErrKind::NotSquare: return "NotSquare";
    case ErrKind::NotAlternating: return "NotAlternating";
    case ErrKind::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrKind::InvalidArgument: return "InvalidArgument";
    case ErrKind::Singular: return "Singular";
    case ErrKind::NotUnitVector: return "NotUnitVector";
    case ErrKind::MissingWitness: return "MissingWitness";
    case ErrKind::NotInV: return "NotInV";
    case ErrKind::NotUnitary: return "NotUnitary";
    case ErrKind::NotStable: return "NotStable";
    case ErrKind::NotSpecial: return "NotSpecial";
    case ErrKind::PfaffianNotOne: return "PfaffianNotOne";
    case ErrKind::NoLift: return "NoLift";
    case ErrKind::NotNormalizable: return "NotNormalizable";
    case ErrKind::Internal: return "Internal";
  }
  return "Unknown";
}

bool is_usage_error(ErrKind k) {
  switch (k) {
    case ErrKind::CtxMismatch:
    case ErrKind::ShapeMismatch:
    case ErrKind::DimensionMismatch:
    case ErrKind::NotSquare:
    case ErrKind::NotPowerOfTwo:
    case ErrKind::InvalidArgument:
      return true;
    default:
      return false;
  }
}

RingCtx RingCtx::poly(int n) {
  if (n < 1) fail(ErrKind::InvalidArgument, "poly ring needs n >= 1");
  return {RingKind::Poly, n};
}

RingCtx RingCtx::quadric(int n) {
  if (n < 1) fail(ErrKind::InvalidArgument, "quadric ring needs n >= 1");
  return {RingKind::Quadric, n};
}

std::string RingCtx::describe() const {
  switch (kind) {
    case RingKind::Rational: return "rational";
    case RingKind::Poly: return "poly(" + std::to_string(pairs) + ")";
    case RingKind::Quadric: return "quadric(" + std::to_string(pairs) + ")";
  }
  return "?";
}

mpq_class make_rat(long num, long den) {
  if (den == 0) fail(ErrKind::InvalidArgument, "zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

mpq_class rat_from_string(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    fail(ErrKind::InvalidArgument, "bad rational literal '" + s + "'");
  if (q.get_den() == 0)
    fail(ErrKind::InvalidArgument, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

mpq_class rat_pow(const mpq_class& q, unsigned long e) {
  mpq_class r;
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(q.get_mpq_t()), e);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(q.get_mpq_t()), e);
  return r;  // canonical since q is
}

RingElem RingElem::one(const RingCtx& ctx) {
  return constant(ctx, mpq_class(1));
}

RingElem RingElem::constant(const RingCtx& ctx, const mpq_class& c) {
  RingElem e(ctx);
  if (c != 0) e.terms_.emplace(Exps(ctx.var_count(), 0), c);
  return e;
}

RingElem RingElem::from_terms(const RingCtx& ctx, TermMap terms) {
  RingElem e(ctx);
  for (auto& [m, c] : terms) {
    if ((int)m.size() != ctx.var_count())
      fail(ErrKind::DimensionMismatch, "exponent vector length vs context");
    if (c != 0) e.terms_.emplace(m, c);
  }
  if (ctx.kind == RingKind::Quadric) e.reduce_quadric();
  return e;
}

RingElem RingElem::variable(const RingCtx& ctx, int var_index) {
  if (ctx.kind == RingKind::Rational)
    fail(ErrKind::InvalidArgument, "rational context has no variables");
  if (var_index < 0 || var_index >= ctx.var_count())
    fail(ErrKind::DimensionMismatch, "variable index out of range");
  RingElem e(ctx);
  Exps m(ctx.var_count(), 0);
  m[var_index] = 1;
  e.terms_.emplace(std::move(m), mpq_class(1));
  return e;
}

RingElem RingElem::x(const RingCtx& ctx, int i) {
  return variable(ctx, 2 * (i - 1));
}

RingElem RingElem::y(const RingCtx& ctx, int i) {
  return variable(ctx, 2 * (i - 1) + 1);
}

bool RingElem::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const Exps& m = terms_.begin()->first;
  return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
}

bool RingElem::is_one() const {
  return is_constant() && !terms_.empty() && terms_.begin()->second == 1;
}

mpq_class RingElem::as_rational() const {
  if (!is_constant())
    fail(ErrKind::InvalidArgument, "element is not a constant");
  return terms_.empty() ? mpq_class(0) : terms_.begin()->second;
}

int RingElem::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int t = 0;
    for (int e : m) t += e;
    d = std::max(d, t);
  }
  return d;
}

void RingElem::add_term(const Exps& e, const mpq_class& c) {
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (c != 0) terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

// Multivariate division by r = x1*y1 + ... + xn*yn - 1 under the fixed lex
// order: every term divisible by x1*y1 is replaced via
// x1*y1 -> 1 - sum_{i>=2} xi*yi. Each step rewrites a term into lex-smaller
// ones, so this terminates with the unique normal form.
void RingElem::reduce_quadric() {
  const int n = ctx_.pairs;
  for (;;) {
    auto it = std::find_if(terms_.begin(), terms_.end(), [](const auto& t) {
      return t.first[0] >= 1 && t.first[1] >= 1;
    });
    if (it == terms_.end()) break;
    Exps m = it->first;
    mpq_class c = it->second;
    terms_.erase(it);
    m[0] -= 1;
    m[1] -= 1;
    add_term(m, c);
    for (int i = 2; i <= n; ++i) {
      Exps e = m;
      e[2 * (i - 1)] += 1;
      e[2 * (i - 1) + 1] += 1;
      add_term(e, -c);
    }
  }
}

RingElem RingElem::operator-() const {
  RingElem r(ctx_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

RingElem& RingElem::operator+=(const RingElem& o) {
  if (ctx_ != o.ctx_) fail(ErrKind::CtxMismatch, "add over different rings");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;  // sums of normal forms are normal
}

RingElem& RingElem::operator-=(const RingElem& o) {
  if (ctx_ != o.ctx_) fail(ErrKind::CtxMismatch, "sub over different rings");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

RingElem operator*(const RingElem& a, const RingElem& b) {
  if (a.ctx_ != b.ctx_) fail(ErrKind::CtxMismatch, "mul over different rings");
  RingElem r(a.ctx_);
  if (a.is_zero() || b.is_zero()) return r;
  const std::size_t nv = a.ctx_.var_count();
  Exps m(nv);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < nv; ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  }
  if (r.ctx_.kind == RingKind::Quadric) r.reduce_quadric();
  return r;
}

RingElem& RingElem::operator*=(const RingElem& o) {
  *this = *this * o;
  return *this;
}

RingElem RingElem::scaled(const mpq_class& c) const {
  RingElem r(ctx_);
  if (c == 0) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
  return r;
}

RingElem RingElem::pow(unsigned long e) const {
  RingElem acc = one(ctx_);
  RingElem base = *this;
  while (e > 0) {
    if (e & 1) acc *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return acc;
}

mpq_class RingElem::eval(const EvalPoint& p) const {
  if (ctx_.kind != RingKind::Rational && p.pairs != ctx_.pairs)
    fail(ErrKind::DimensionMismatch, "evaluation point has wrong dimension");
  mpq_class total(0);
  for (const auto& [m, c] : terms_) {
    mpq_class t = c;
    for (std::size_t v = 0; v < m.size(); ++v)
      if (m[v] > 0) t *= rat_pow(p.coord((int)v), (unsigned long)m[v]);
    total += t;
  }
  return total;
}

std::string RingElem::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    mpq_class a = abs(c);
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    bool any_var = std::any_of(m.begin(), m.end(), [](int e) { return e > 0; });
    if (a != 1 || !any_var) out << a.get_str();
    bool star = (a != 1) && any_var;
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] == 0) continue;
      if (star) out << "*";
      star = true;
      out << (v % 2 == 0 ? "x" : "y") << (v / 2 + 1);
      if (m[v] > 1) out << "^" << m[v];
    }
  }
  return out.str();
}

RingElem normal_form(const RingElem& p, const RingCtx& target) {
  if (p.ctx() == target) return p;
  if (p.ctx().kind == RingKind::Rational)
    return RingElem::constant(target, p.as_rational());
  if (p.ctx().kind == RingKind::Poly && target.kind == RingKind::Quadric &&
      p.ctx().pairs == target.pairs)
    return RingElem::from_terms(target, p.terms());
  fail(ErrKind::CtxMismatch,
       "no canonical map " + p.ctx().describe() + " -> " + target.describe());
}

EvalPoint EvalPoint::make(std::vector<mpq_class> xs, std::vector<mpq_class> ys) {
  if (xs.size() != ys.size() || xs.empty())
    fail(ErrKind::DimensionMismatch, "point needs matching x/y lengths");
  mpq_class s(0);
  for (std::size_t i = 0; i < xs.size(); ++i) s += xs[i] * ys[i];
  if (s != 1) fail(ErrKind::InvalidArgument, "point is off the quadric");
  EvalPoint p;
  p.pairs = (int)xs.size();
  p.xs = std::move(xs);
  p.ys = std::move(ys);
  return p;
}

mpq_class EvalPoint::coord(int var_index) const {
  if (var_index < 0 || var_index >= 2 * pairs)
    fail(ErrKind::DimensionMismatch, "coordinate index out of range");
  return var_index % 2 == 0 ? xs[var_index / 2] : ys[var_index / 2];
}

long RatSampler::next_int(long lo, long hi) {
  return lo + (long)(rng_() % (std::uint64_t)(hi - lo + 1));
}

mpq_class RatSampler::next(bool nonzero) {
  long num = next_int(-10, 10);
  while (nonzero && num == 0) num = next_int(-10, 10);
  long den = next_int(1, 10);
  return make_rat(num, den);
}

EvalPoint sample_quadric_point(int n, std::uint64_t seed) {
  if (n < 1) fail(ErrKind::InvalidArgument, "quadric point needs n >= 1");
  RatSampler r(seed);
  std::vector<mpq_class> xs(n), ys(n);
  for (int i = 0; i < n; ++i) xs[i] = r.next(/*nonzero=*/true);
  mpq_class rest(0);
  for (int i = 1; i < n; ++i) {
    ys[i] = r.next();
    rest += xs[i] * ys[i];
  }
  ys[0] = (mpq_class(1) - rest) / xs[0];
  return EvalPoint::make(std::move(xs), std::move(ys));
}

}  // namespace qspin
