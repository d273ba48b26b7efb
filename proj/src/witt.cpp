#include "qspin/witt.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace qspin {

RingMat ElementaryWitness::to_matrix(const RingCtx& ctx) const {
  RingMat prod = RingMat::identity(ctx, size);
  for (const ElementaryFactor& f : factors) {
    if (f.row < 0 || f.row >= size || f.col < 0 || f.col >= size ||
        f.row == f.col)
      fail(ErrKind::InvalidArgument, "bad elementary factor indices");
    RingMat t = RingMat::identity(ctx, size);
    t.at(f.row, f.col) = normal_form(f.lambda, ctx);
    prod = prod * t;
  }
  return prod;
}

namespace {

bool congruence_core(const RingMat& m, const RingMat& n, int i,
                     const RingMat& e, CongruenceFlavor flavor) {
  if (!m.is_square() || !n.is_square() || m.rows() % 2 || n.rows() % 2 ||
      m.rows() == 0 || n.rows() == 0)
    fail(ErrKind::ShapeMismatch, "forms must be square of even size");
  if (i < 1) fail(ErrKind::InvalidArgument, "stabilization index must be >= 1");
  if (m.ctx() != n.ctx() || m.ctx() != e.ctx())
    fail(ErrKind::CtxMismatch, "witness context");
  const bool sym = flavor == CongruenceFlavor::SSim;
  if (sym) {
    if (!is_symmetric(m) || !is_symmetric(n))
      fail(ErrKind::ShapeMismatch, "S flavor needs symmetric forms");
  } else {
    if (!is_alternating(m) || !is_alternating(n))
      fail(ErrKind::ShapeMismatch, "W flavors need alternating forms");
  }
  const int total = m.rows() + n.rows() + 2 * i;
  if (e.rows() != total || e.cols() != total)
    fail(ErrKind::ShapeMismatch, "witness size vs stabilized forms");
  const RingCtx& ctx = m.ctx();
  auto pad = [&](int size) {
    return sym ? sigma_mat(size, ctx) : psi_mat(size, ctx);
  };
  RingMat lhs = block_sum(m, pad(n.rows() + 2 * i));
  RingMat rhs = block_sum(n, pad(m.rows() + 2 * i));
  return lhs == e.transpose() * rhs * e;
}

}  // namespace

bool verify_congruence_witness(const RingMat& m, const RingMat& n, int i,
                               const ElementaryWitness& e,
                               CongruenceFlavor flavor) {
  return congruence_core(m, n, i, e.to_matrix(m.ctx()), flavor);
}

bool verify_congruence_witness(const RingMat& m, const RingMat& n, int i,
                               const RingMat& e, CongruenceFlavor flavor) {
  if (flavor != CongruenceFlavor::WSL)
    fail(ErrKind::InvalidArgument,
         "this flavor requires an elementary factor list");
  if (!det(e).is_one()) return false;  // not a valid SL witness
  return congruence_core(m, n, i, e, flavor);
}

CheckResult factorization_check(const SpinElem& phi,
                                const SpinFactorization& decomposition,
                                const UnitVector& target) {
  // Re-certify everything first: tampered factors are rejected before any
  // product is formed.
  try {
    spin_certify(phi.g);
  } catch (const Error& e) {
    return {false, std::string("CandidateInvalid: ") + e.what()};
  }
  for (std::size_t k = 0; k < decomposition.epin.size(); ++k) {
    try {
      spin_certify(decomposition.epin[k].g);
    } catch (const Error& e) {
      return {false, "EpinFactorInvalid at index " + std::to_string(k) + ": " +
                         e.what()};
    }
  }
  std::optional<SpinElem> stab;
  try {
    stab = spin_certify(decomposition.stabilizer.g);
  } catch (const Error& e) {
    return {false, std::string("StabilizerInvalid: ") + e.what()};
  }
  if (spin_act(*stab, target) != target)
    return {false, "StabilizerFails: claimed stabilizer moves the target"};

  std::optional<SpinElem> lifted;
  try {
    lifted = lift_hyperbolic_to_spin(decomposition.lambda);
  } catch (const Error& e) {
    return {false, std::string("LambdaInvalid: ") + e.what()};
  }
  RingMat prod = lifted->g.mat;
  for (const SpinElem& f : decomposition.epin) prod = prod * f.g.mat;
  prod = prod * stab->g.mat;
  if (prod != phi.g.mat)
    return {false, "ProductMismatch: composition differs from the candidate"};
  return {true, ""};
}

UnitVector unit_vector_of(const UnimodularVec& v) {
  if (!v.section)
    fail(ErrKind::MissingWitness, "unimodular vector carries no section");
  return UnitVector::make(v.a, *v.section);
}

UnimodularVec power_row_section(int n, int m) {
  if (n < 2 || m < 1)
    fail(ErrKind::InvalidArgument, "power row needs n >= 2, m >= 1");
  const RingCtx ctx = RingCtx::quadric(n);
  std::vector<RingElem> a;
  a.push_back(RingElem::x(ctx, 1).pow(m));
  for (int i = 2; i <= n; ++i) a.push_back(RingElem::x(ctx, i));

  // 1 = (x1 y1 + s)^m: the k = m binomial term contributes y1^m against
  // x1^m; every other term carries a factor of s and is reassigned to the
  // x_i it starts with.
  RingElem s = RingElem::zero(ctx);
  for (int i = 2; i <= n; ++i)
    s += RingElem::x(ctx, i) * RingElem::y(ctx, i);
  RingElem carry = RingElem::zero(ctx);  // sum_{k<m} C(m,k) (x1 y1)^k s^{m-1-k}
  const RingElem x1y1 = RingElem::x(ctx, 1) * RingElem::y(ctx, 1);
  for (int k = 0; k < m; ++k) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), (unsigned long)m, (unsigned long)k);
    carry += x1y1.pow(k)
                 .scaled(mpq_class(binom))
                 * s.pow((unsigned long)(m - 1 - k));
  }
  std::vector<RingElem> w;
  w.push_back(RingElem::y(ctx, 1).pow(m));
  for (int i = 2; i <= n; ++i) w.push_back(RingElem::y(ctx, i) * carry);
  return UnimodularVec::make(std::move(a), std::move(w));
}

namespace {

// Positions of the six coordinates inside the 4x4 degree-map image; the
// strict upper triangle carries each of v1..v3, w1..w3 exactly once.
struct Alt4Pattern {
  std::vector<std::tuple<int, int, int>> pos;  // (row, col, sign) per var
};

const Alt4Pattern& alt4_pattern() {
  static std::mutex mu;
  static std::optional<Alt4Pattern> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (cache) return *cache;
  const RingCtx ctx = RingCtx::poly(3);
  std::vector<RingElem> v, w;
  for (int i = 1; i <= 3; ++i) {
    v.push_back(RingElem::x(ctx, i));
    w.push_back(RingElem::y(ctx, i));
  }
  RingMat psi3 = degree_map_raw(v, w);
  Alt4Pattern p;
  p.pos.assign(6, {-1, -1, 0});
  int found = 0;
  for (int r = 0; r < 4; ++r)
    for (int c = r + 1; c < 4; ++c) {
      const RingElem& e = psi3.at(r, c);
      if (e.is_zero() || e.terms().size() != 1)
        fail(ErrKind::Internal, "degree map pattern is not a coordinate shuffle");
      const auto& [mono, coeff] = *e.terms().begin();
      int var = -1;
      for (std::size_t k = 0; k < mono.size(); ++k)
        if (mono[k] == 1) var = (int)k;
      if (var < 0 || std::get<0>(p.pos[var]) >= 0)
        fail(ErrKind::Internal, "degree map pattern is not a bijection");
      p.pos[var] = {r, c, coeff > 0 ? 1 : -1};
      ++found;
    }
  if (found != 6) fail(ErrKind::Internal, "degree map pattern incomplete");
  cache = std::move(p);
  return *cache;
}

}  // namespace

RingMat unit_vector_to_alt4(const UnitVector& u) {
  if (u.n != 3) fail(ErrKind::DimensionMismatch, "dictionary needs n = 3");
  return psi_degree_map(u);
}

UnitVector alt4_to_unit_vector(const RingMat& a) {
  if (!a.is_square() || a.rows() != 4)
    fail(ErrKind::ShapeMismatch, "dictionary works on 4x4 matrices");
  if (!is_alternating(a)) fail(ErrKind::NotAlternating, "dictionary input");
  if (!pfaffian(a).is_one())
    fail(ErrKind::PfaffianNotOne, "dictionary input");
  const Alt4Pattern& pat = alt4_pattern();
  const RingCtx& ctx = a.ctx();
  std::vector<RingElem> v(3, RingElem::zero(ctx)),
      w(3, RingElem::zero(ctx));
  for (int var = 0; var < 6; ++var) {
    auto [r, c, s] = pat.pos[var];
    RingElem val = s > 0 ? a.at(r, c) : -a.at(r, c);
    if (var % 2 == 0)
      v[var / 2] = std::move(val);
    else
      w[var / 2] = std::move(val);
  }
  UnitVector u = UnitVector::make(std::move(v), std::move(w));
  if (unit_vector_to_alt4(u) != a)
    fail(ErrKind::Internal, "dictionary reconstruction mismatch");
  return u;
}

CheckResult verify_orbit_witness(const OrbitWitness& w) {
  switch (w.kind) {
    case OrbitKind::SL:
    case OrbitKind::Elementary: {
      std::optional<RingMat> elm;
      if (w.kind == OrbitKind::SL) {
        if (!w.matrix) fail(ErrKind::MissingWitness, "SL witness needs a matrix");
        elm = *w.matrix;
      } else {
        if (!w.factors)
          fail(ErrKind::MissingWitness, "elementary witness needs factors");
        if (w.src_a.empty())
          fail(ErrKind::DimensionMismatch, "empty source vector");
        elm = w.factors->to_matrix(w.src_a[0].ctx());
      }
      const RingMat& el = *elm;
      if ((int)w.src_a.size() != el.rows() || w.src_a.size() != w.dst_a.size())
        fail(ErrKind::DimensionMismatch, "orbit witness shapes");
      if (w.kind == OrbitKind::SL && !det(el).is_one())
        return {false, "NotSpecial: witness matrix determinant != 1"};
      for (int r = 0; r < el.rows(); ++r) {
        RingElem s = RingElem::zero(el.ctx());
        for (int c = 0; c < el.cols(); ++c) s += el.at(r, c) * w.src_a[c];
        if (s != w.dst_a[r]) return {false, "OrbitMismatch: row " + std::to_string(r)};
      }
      return {true, ""};
    }
    case OrbitKind::SO: {
      if (!w.matrix) fail(ErrKind::MissingWitness, "SO witness needs a matrix");
      const RingMat& el = *w.matrix;
      const int n2 = el.rows();
      if ((int)(w.src_a.size() + w.src_b.size()) != n2 ||
          w.src_a.size() != w.dst_a.size() || w.src_b.size() != w.dst_b.size())
        fail(ErrKind::DimensionMismatch, "orbit witness shapes");
      RingMat gp = gram_form(el.ctx(), n2 / 2);
      if (el.transpose() * gp * el != gp)
        return {false, "NotOrthogonal: witness does not preserve the form"};
      if (!det(el).is_one())
        return {false, "NotSpecial: witness matrix determinant != 1"};
      std::vector<RingElem> in = w.src_a;
      in.insert(in.end(), w.src_b.begin(), w.src_b.end());
      std::vector<RingElem> out = w.dst_a;
      out.insert(out.end(), w.dst_b.begin(), w.dst_b.end());
      for (int r = 0; r < n2; ++r) {
        RingElem s = RingElem::zero(el.ctx());
        for (int c = 0; c < n2; ++c) s += el.at(r, c) * in[c];
        if (s != out[r]) return {false, "OrbitMismatch: row " + std::to_string(r)};
      }
      return {true, ""};
    }
    case OrbitKind::Spin: {
      if (!w.spin) fail(ErrKind::MissingWitness, "Spin witness needs an element");
      try {
        UnitVector src = UnitVector::make(w.src_a, w.src_b);
        UnitVector dst = UnitVector::make(w.dst_a, w.dst_b);
        if (spin_act(*w.spin, src) != dst)
          return {false, "OrbitMismatch: action image differs"};
        return {true, ""};
      } catch (const Error& e) {
        return {false, std::string("WitnessInvalid: ") + e.what()};
      }
    }
  }
  return {false, "unreachable"};
}

}  // namespace qspin
