#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qspin/clifford.hpp"

using namespace qspin;

namespace {

const RingCtx Q = RingCtx::rational();

std::vector<RingElem> free_xs(const RingCtx& ctx, int n) {
  std::vector<RingElem> v;
  for (int i = 1; i <= n; ++i) v.push_back(RingElem::x(ctx, i));
  return v;
}

std::vector<RingElem> free_ys(const RingCtx& ctx, int n) {
  std::vector<RingElem> v;
  for (int i = 1; i <= n; ++i) v.push_back(RingElem::y(ctx, i));
  return v;
}

RingMat elementary(const RingCtx& ctx, int size, int r, int c,
                   const mpq_class& lambda) {
  RingMat m = RingMat::identity(ctx, size);
  m.at(r, c) = RingElem::constant(ctx, lambda);
  return m;
}

// Random product of elementary transvections: always determinant 1.
RingMat random_sl(int size, std::uint64_t seed, int factors = 6) {
  RatSampler rng(seed);
  RingMat m = RingMat::identity(Q, size);
  for (int k = 0; k < factors; ++k) {
    int r = (int)rng.next_int(0, size - 1);
    int c = (int)rng.next_int(0, size - 1);
    while (c == r) c = (int)rng.next_int(0, size - 1);
    m = m * elementary(Q, size, r, c, rng.next());
  }
  return m;
}

UnitVector random_unit_vector(int n, std::uint64_t seed) {
  RatSampler rng(seed);
  std::vector<RingElem> a, b;
  mpq_class rest(0);
  std::vector<mpq_class> av(n), bv(n);
  for (int i = 0; i < n; ++i) av[i] = rng.next(/*nonzero=*/i == 0);
  for (int i = 1; i < n; ++i) {
    bv[i] = rng.next();
    rest += av[i] * bv[i];
  }
  bv[0] = (mpq_class(1) - rest) / av[0];
  for (int i = 0; i < n; ++i) {
    a.push_back(RingElem::constant(Q, av[i]));
    b.push_back(RingElem::constant(Q, bv[i]));
  }
  return UnitVector::make(a, b);
}

}  // namespace

TEST_CASE("phi squares to q: unit, isotropic and free cases") {
  UnitVector u = UnitVector::standard(Q, 3);
  RingMat phi = phi_embed(u.a, u.b).mat;
  CHECK(phi * phi == RingMat::identity(Q, 8));

  const RingCtx f2 = RingCtx::poly(2);
  std::vector<RingElem> a = free_xs(f2, 2);
  std::vector<RingElem> zero(2, RingElem::zero(f2));
  RingMat iso = phi_embed(a, zero).mat;
  CHECK(iso * iso == RingMat(f2, 4, 4));

  for (int n = 2; n <= 5; ++n) {
    const RingCtx ctx = RingCtx::poly(n);
    std::vector<RingElem> xs = free_xs(ctx, n), ys = free_ys(ctx, n);
    RingMat p = phi_embed(xs, ys).mat;
    CHECK(p * p ==
          RingMat::scalar(ctx, p.rows(), q_form(xs, ys)));
  }
}

TEST_CASE("the involution fixes the embedded subspace") {
  for (int n = 2; n <= 4; ++n) {
    const RingCtx ctx = RingCtx::poly(n);
    RingMat phi = phi_embed(free_xs(ctx, n), free_ys(ctx, n)).mat;
    CHECK(standard_involution(phi) == phi);
  }
}

TEST_CASE("phi is linear and extraction inverts it") {
  for (int n = 2; n <= 5; ++n) {
    const RingCtx ctx = RingCtx::poly(n);
    std::vector<RingElem> xs = free_xs(ctx, n), ys = free_ys(ctx, n);
    CliffordElem phi = phi_embed(xs, ys);
    auto [a, b] = phi_extract(phi);
    CHECK(a == xs);
    CHECK(b == ys);
  }

  // Linearity: extract(phi(a,b) + phi(c,d)) = (a+c, b+d).
  RatSampler rng(31);
  std::vector<RingElem> a, b, c, d;
  for (int i = 0; i < 3; ++i) {
    a.push_back(RingElem::constant(Q, rng.next()));
    b.push_back(RingElem::constant(Q, rng.next()));
    c.push_back(RingElem::constant(Q, rng.next()));
    d.push_back(RingElem::constant(Q, rng.next()));
  }
  RingMat sum = phi_embed(a, b).mat + phi_embed(c, d).mat;
  auto [sa, sb] = phi_extract(CliffordElem::from_matrix(sum));
  for (int i = 0; i < 3; ++i) {
    CHECK(sa[i] == a[i] + c[i]);
    CHECK(sb[i] == b[i] + d[i]);
  }
}

TEST_CASE("extraction rejects matrices outside V") {
  UnitVector u = UnitVector::standard(Q, 2);
  RingMat m = phi_embed(u.a, u.b).mat;
  m.at(0, 3) = m.at(0, 3) + RingElem::one(Q);  // off-pattern upper entry
  CHECK_THROWS_AS(phi_extract(CliffordElem::from_matrix(m)), Error);

  RingMat even = RingMat::identity(Q, 4);
  CHECK_THROWS_AS(phi_extract(CliffordElem::from_matrix(even)), Error);
}

TEST_CASE("parity detection") {
  CHECK(CliffordElem::from_matrix(RingMat::identity(Q, 4)).parity ==
        Parity::Even);
  UnitVector u = UnitVector::standard(Q, 2);
  CHECK(phi_embed(u.a, u.b).parity == Parity::Odd);
  RingMat mixed = RingMat::identity(Q, 4);
  mixed.at(0, 2) = RingElem::one(Q);
  CHECK(CliffordElem::from_matrix(mixed).parity == Parity::Mixed);
}

TEST_CASE("identity certifies with identity action") {
  SpinElem s = spin_certify(CliffordElem::from_matrix(RingMat::identity(Q, 8)));
  CHECK(s.so_matrix == RingMat::identity(Q, 6));
  CHECK(s.cert.unitary);
  UnitVector u = UnitVector::standard(Q, 3);
  CHECK(spin_act(s, u) == u);
}

TEST_CASE("dictionary: SL_4 elements certify as Spin_6") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RingMat h = random_sl(4, seed);
    SpinElem s = spin_certify(diag_even_candidate(h));
    CHECK(s.n == 3);
    CHECK(det(s.so_matrix).is_one());

    UnitVector u = random_unit_vector(3, seed + 1000);
    UnitVector v = spin_act(s, u);
    CHECK(q_form(v.a, v.b).is_one());
  }
}

TEST_CASE("dictionary: determinant -1 twists are rejected") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RingMat h = random_sl(4, seed);
    RingMat twist = RingMat::identity(Q, 4);
    twist.at(0, 0) = RingElem::constant(Q, -1);
    RingMat bad = h * twist;
    CHECK(!det(bad).is_one());
    CHECK_THROWS_AS(spin_certify(diag_even_candidate(bad)), Error);
  }
}

TEST_CASE("translation law through the degree map, n = 3") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    RingMat h = random_sl(4, seed * 7);
    SpinElem s = spin_certify(diag_even_candidate(h));
    UnitVector u = random_unit_vector(3, seed);
    UnitVector v = spin_act(s, u);
    RingMat e3t = e_matrix(3, Q).transpose();
    RingMat gp = e3t * h * inverse_rational(e3t);
    CHECK(psi_degree_map(v) == gp * psi_degree_map(u) * gp.transpose());
  }
}

TEST_CASE("hyperbolic embedding examples") {
  CHECK(hyperbolic_embed(RingMat::identity(Q, 3)).mat ==
        RingMat::identity(Q, 6));

  // symbolic in the transvection parameter
  const RingCtx f1 = RingCtx::poly(1);
  RingMat e12 = RingMat::identity(f1, 3);
  e12.at(0, 1) = RingElem::x(f1, 1);
  SOMatrix h = hyperbolic_embed(e12);
  RingMat gp = gram_form(f1, 3);
  CHECK(h.mat.transpose() * gp * h.mat == gp);
  CHECK(det_berkowitz(h.mat).is_one());

  RingMat notsl = RingMat::identity(Q, 3);
  notsl.at(0, 0) = RingElem::constant(Q, 2);
  CHECK_THROWS_AS(hyperbolic_embed(notsl), Error);
}

TEST_CASE("hyperbolic action preserves q") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RingMat sl = random_sl(3, seed * 13);
    SOMatrix h = hyperbolic_embed(sl);
    UnitVector u = random_unit_vector(3, seed);
    std::vector<RingElem> in = u.coords();
    std::vector<RingElem> out(6, RingElem::zero(Q));
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c) out[r] += h.mat.at(r, c) * in[c];
    std::vector<RingElem> oa(out.begin(), out.begin() + 3),
        ob(out.begin() + 3, out.end());
    CHECK(q_form(oa, ob).is_one());
  }
}

TEST_CASE("lift of the identity is the identity") {
  SpinElem s = lift_hyperbolic_to_spin(RingMat::identity(Q, 3));
  CHECK(s.g.mat == RingMat::identity(Q, 8));
}

TEST_CASE("lift covers H(sigma) and matches the closed form on transvections") {
  RingMat e13 = elementary(Q, 3, 0, 2, 2);
  SpinElem s = lift_hyperbolic_to_spin(e13);
  CHECK(s.so_matrix == hyperbolic_embed(e13).mat);

  // Independent route: 1 + (lambda/2) phi(e_i, 0) phi(0, e_j) lifts the
  // elementary matrix with parameter lambda.
  std::vector<RingElem> ei(3, RingElem::zero(Q)), fj(3, RingElem::zero(Q));
  std::vector<RingElem> zero(3, RingElem::zero(Q));
  ei[0] = RingElem::one(Q);
  fj[2] = RingElem::one(Q);
  RingMat closed = RingMat::identity(Q, 8) +
                   (phi_embed(ei, zero).mat * phi_embed(zero, fj).mat)
                       .scaled(RingElem::constant(Q, 1));  // lambda/2 = 1
  bool plus = s.g.mat == closed;
  bool minus = s.g.mat == -closed;
  CHECK((plus || minus));
}

TEST_CASE("lift is a homomorphism up to sign") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RingMat s1 = random_sl(3, seed * 3, 3);
    RingMat s2 = random_sl(3, seed * 3 + 1, 3);
    SpinElem l1 = lift_hyperbolic_to_spin(s1);
    SpinElem l2 = lift_hyperbolic_to_spin(s2);
    SpinElem l12 = lift_hyperbolic_to_spin(s1 * s2);
    RingMat prod = l1.g.mat * l2.g.mat;
    CHECK((l12.g.mat == prod || l12.g.mat == -prod));
  }
}

TEST_CASE("pi is a homomorphism on certified elements") {
  for (int n : {2, 3, 4}) {
    RingMat s1 = random_sl(n, 100 + (std::uint64_t)n, 3);
    RingMat s2 = random_sl(n, 200 + (std::uint64_t)n, 3);
    SpinElem l1 = lift_hyperbolic_to_spin(s1);
    SpinElem l2 = lift_hyperbolic_to_spin(s2);
    SpinElem prod = spin_certify(CliffordElem::from_matrix(l1.g.mat * l2.g.mat));
    CHECK(prod.so_matrix == l1.so_matrix * l2.so_matrix);
  }
}

TEST_CASE("even-n blocks conjugate into the orthogonal group, n = 4") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    RingMat sl = random_sl(4, 300 + seed, 3);
    SpinElem s = lift_hyperbolic_to_spin(sl);
    const int m = 8;
    RingMat g1 = s.g.mat.slice(0, 0, m, m);
    RingMat g2 = s.g.mat.slice(m, m, m, m);
    RingMat e4 = e_matrix(4, Q), e4i = e_matrix_inverse(4, Q);
    RingMat sigma8 = sigma_mat(8, Q);
    for (const RingMat& gi : {g1, g2}) {
      RingMat conj = e4i * gi * e4;
      CHECK(conj.transpose() * sigma8 * conj == sigma8);
    }
  }
}

TEST_CASE("spin action agrees with the induced matrix action") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    RingMat h = random_sl(4, 400 + seed);
    SpinElem s = spin_certify(diag_even_candidate(h));
    UnitVector u = random_unit_vector(3, 500 + seed);
    UnitVector v = spin_act(s, u);
    std::vector<RingElem> in = u.coords(), expect = v.coords();
    for (int r = 0; r < 6; ++r) {
      RingElem acc = RingElem::zero(Q);
      for (int c = 0; c < 6; ++c) acc += s.so_matrix.at(r, c) * in[c];
      CHECK(acc == expect[r]);
    }
  }
}

TEST_CASE("certification rejects non-unitary and odd candidates") {
  RingMat two = RingMat::identity(Q, 8).scaled(RingElem::constant(Q, 2));
  CHECK_THROWS_AS(spin_certify(CliffordElem::from_matrix(two)), Error);
  UnitVector u = UnitVector::standard(Q, 3);
  CHECK_THROWS_AS(spin_certify(phi_embed(u.a, u.b)), Error);
}
