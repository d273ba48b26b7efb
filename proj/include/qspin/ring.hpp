#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qspin/error.hpp"

namespace qspin {

enum class RingKind { Rational, Poly, Quadric };

// Coefficient ring context. Poly(n) is the free ring Q[x1,y1,...,xn,yn];
// Quadric(n) is the same ring modulo <x1*y1 + ... + xn*yn - 1>. The variable
// order is fixed once and for all: x1 > y1 > x2 > y2 > ..., and exponent
// vectors are stored in that interleaved order. Under pure lex the leading
// monomial of the defining relation is x1*y1, so reduction is the single
// substitution x1*y1 -> 1 - sum_{i>=2} xi*yi.
struct RingCtx {
  RingKind kind = RingKind::Rational;
  int pairs = 0;  // n; 0 for Rational

  static RingCtx rational() { return {RingKind::Rational, 0}; }
  static RingCtx poly(int n);
  static RingCtx quadric(int n);

  int var_count() const { return 2 * pairs; }
  bool is_symbolic() const { return kind != RingKind::Rational; }
  bool operator==(const RingCtx&) const = default;
  std::string describe() const;
};

using Exps = std::vector<std::int32_t>;

// Pure lex with x1 > y1 > x2 > y2 > ...: map iteration visits the leading
// term first.
struct LexGreater {
  bool operator()(const Exps& a, const Exps& b) const {
    const std::size_t m = a.size() < b.size() ? a.size() : b.size();
    for (std::size_t i = 0; i < m; ++i)
      if (a[i] != b[i]) return a[i] > b[i];
    return a.size() > b.size();
  }
};

using TermMap = std::map<Exps, mpq_class, LexGreater>;

// mpq_class(n, d) does not canonicalize; these helpers always do.
mpq_class make_rat(long num, long den = 1);
mpq_class rat_from_string(const std::string& s);
mpq_class rat_pow(const mpq_class& q, unsigned long e);

struct EvalPoint;

// An element of the context ring, always in canonical normal form: no zero
// coefficients and, in Quadric contexts, no monomial divisible by x1*y1.
// Representation equality is therefore ring equality.
class RingElem {
 public:
  static RingElem zero(const RingCtx& ctx) { return RingElem(ctx); }
  static RingElem one(const RingCtx& ctx);
  static RingElem constant(const RingCtx& ctx, const mpq_class& c);
  static RingElem from_terms(const RingCtx& ctx, TermMap terms);
  static RingElem x(const RingCtx& ctx, int i);  // 1-based pair index
  static RingElem y(const RingCtx& ctx, int i);
  static RingElem variable(const RingCtx& ctx, int var_index);  // 0-based, interleaved

  const RingCtx& ctx() const { return ctx_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  mpq_class as_rational() const;  // requires is_constant()
  int degree() const;             // total degree; -1 for zero

  RingElem operator-() const;
  RingElem& operator+=(const RingElem& o);
  RingElem& operator-=(const RingElem& o);
  friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
  friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
  friend RingElem operator*(const RingElem& a, const RingElem& b);
  RingElem& operator*=(const RingElem& o);
  RingElem scaled(const mpq_class& c) const;
  RingElem pow(unsigned long e) const;

  bool operator==(const RingElem& o) const {
    return ctx_ == o.ctx_ && terms_ == o.terms_;
  }
  bool operator!=(const RingElem& o) const { return !(*this == o); }

  mpq_class eval(const EvalPoint& p) const;
  std::string to_string() const;

 private:
  explicit RingElem(const RingCtx& ctx) : ctx_(ctx) {}
  void add_term(const Exps& e, const mpq_class& c);
  void reduce_quadric();

  RingCtx ctx_;
  TermMap terms_;
};

// Canonical representative of p in the target context. Accepts p over
// Poly(n) (or Rational constants) into Quadric(n)/Poly(n); idempotent on
// elements already in the target ring.
RingElem normal_form(const RingElem& p, const RingCtx& target);

// A rational point of the quadric: assignments for x1..xn, y1..yn with
// sum x_i y_i = 1 exactly.
struct EvalPoint {
  int pairs = 0;
  std::vector<mpq_class> xs, ys;

  static EvalPoint make(std::vector<mpq_class> xs, std::vector<mpq_class> ys);
  mpq_class coord(int var_index) const;  // interleaved 0-based index
};

// Deterministic per seed: draws x1..xn nonzero and y2..yn with numerators in
// [-10,10] and denominators in [1,10], then solves for y1.
EvalPoint sample_quadric_point(int n, std::uint64_t seed);

// Bounded rational sampler over mt19937_64 (sequence fixed by the standard,
// so identical seeds reproduce identical draws everywhere).
class RatSampler {
 public:
  explicit RatSampler(std::uint64_t seed) : rng_(seed) {}
  mpq_class next(bool nonzero = false);
  long next_int(long lo, long hi);
  std::uint64_t next_u64() { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace qspin
