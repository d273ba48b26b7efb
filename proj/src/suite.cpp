#include "qspin/suite.hpp"

#include <atomic>
#include <functional>
#include <optional>
#include <thread>

namespace qspin {

namespace {

std::uint64_t item_seed(int identity_id, int n, int k) {
  std::uint64_t s = 0x9e3779b97f4a7c15ull;
  s = s * 1000003ull + (std::uint64_t)identity_id;
  s = s * 1000003ull + (std::uint64_t)n;
  s = s * 1000003ull + (std::uint64_t)k;
  return s;
}

std::vector<RingElem> consts(const std::vector<mpq_class>& v,
                             const RingCtx& ctx) {
  std::vector<RingElem> out;
  out.reserve(v.size());
  for (const mpq_class& q : v) out.push_back(RingElem::constant(ctx, q));
  return out;
}

struct GenericPair {
  std::vector<RingElem> a, b;
};

GenericPair free_pair(int n) {
  const RingCtx ctx = RingCtx::poly(n);
  GenericPair p;
  for (int i = 1; i <= n; ++i) {
    p.a.push_back(RingElem::x(ctx, i));
    p.b.push_back(RingElem::y(ctx, i));
  }
  return p;
}

GenericPair point_pair(int n, std::uint64_t seed) {
  const RingCtx ctx = RingCtx::rational();
  EvalPoint p = sample_quadric_point(n, seed);
  return GenericPair{consts(p.xs, ctx), consts(p.ys, ctx)};
}

SuiteItem skipped(const std::string& id, const std::string& stmt, int n,
                  const std::string& mode, const std::string& why) {
  return SuiteItem{id, stmt, n, mode, "skipped", why};
}

SuiteItem outcome(const std::string& id, const std::string& stmt, int n,
                  const std::string& mode, bool ok,
                  const std::string& fail_detail) {
  return SuiteItem{id, stmt, n, mode, ok ? "pass" : "fail",
                   ok ? "" : fail_detail};
}

// ---- individual identities -------------------------------------------------

SuiteItem run_det_power(int n, SuiteMode mode, const SuiteConfig& cfg) {
  const std::string stmt = "det(alpha_n(a,b)) = q(a,b)^(2^(n-2))";
  const unsigned long expo = 1ul << (n - 2);
  if (mode == SuiteMode::Symbolic) {
    if (n > cfg.thresholds.det)
      return skipped("det-power", stmt, n, "symbolic",
                     "n exceeds the symbolic determinant threshold");
    GenericPair p = free_pair(n);
    RingElem lhs = det_berkowitz(suslin_alpha_mat(p.a, p.b));
    RingElem rhs = q_form(p.a, p.b).pow(expo);
    return outcome("det-power", stmt, n, "symbolic", lhs == rhs,
                   "free polynomial determinant differs from q^(2^(n-2))");
  }
  for (int k = 0; k < cfg.seeds; ++k) {
    GenericPair p = point_pair(n, item_seed(1, n, k));
    RingElem lhs = det(suslin_alpha_mat(p.a, p.b));
    RingElem rhs = q_form(p.a, p.b).pow(expo);
    if (lhs != rhs)
      return outcome("det-power", stmt, n, "sampled", false,
                     "counterexample at sample " + std::to_string(k));
  }
  return outcome("det-power", stmt, n, "sampled", true, "");
}

SuiteItem run_product_scalar(int n, SuiteMode mode, const SuiteConfig& cfg) {
  const std::string stmt =
      "alpha(a,b) alphabar(a,b) = alphabar(a,b) alpha(a,b) = q(a,b) id";
  auto check = [&](const GenericPair& p) {
    RingMat al = suslin_alpha_mat(p.a, p.b);
    RingMat bar = suslin_alpha_bar_mat(p.a, p.b);
    RingMat expect =
        RingMat::scalar(al.ctx(), al.rows(), q_form(p.a, p.b));
    return al * bar == expect && bar * al == expect;
  };
  if (mode == SuiteMode::Symbolic) {
    if (n > cfg.thresholds.product)
      return skipped("product-scalar", stmt, n, "symbolic",
                     "n exceeds the symbolic product threshold");
    return outcome("product-scalar", stmt, n, "symbolic", check(free_pair(n)),
                   "free polynomial products differ from q id");
  }
  for (int k = 0; k < cfg.seeds; ++k)
    if (!check(point_pair(n, item_seed(2, n, k))))
      return outcome("product-scalar", stmt, n, "sampled", false,
                     "counterexample at sample " + std::to_string(k));
  return outcome("product-scalar", stmt, n, "sampled", true, "");
}

SuiteItem run_transpose_dual(int n, SuiteMode mode, const SuiteConfig& cfg) {
  const std::string stmt = "alpha_n(b,a)^t = alphabar_n(a,b)";
  auto check = [&](const GenericPair& p) {
    return suslin_alpha_mat(p.b, p.a).transpose() ==
           suslin_alpha_bar_mat(p.a, p.b);
  };
  if (mode == SuiteMode::Symbolic) {
    if (n > cfg.thresholds.product)
      return skipped("transpose-dual", stmt, n, "symbolic",
                     "n exceeds the symbolic product threshold");
    return outcome("transpose-dual", stmt, n, "symbolic", check(free_pair(n)),
                   "transpose of alpha(b,a) differs from alphabar(a,b)");
  }
  for (int k = 0; k < cfg.seeds; ++k)
    if (!check(point_pair(n, item_seed(3, n, k))))
      return outcome("transpose-dual", stmt, n, "sampled", false,
                     "counterexample at sample " + std::to_string(k));
  return outcome("transpose-dual", stmt, n, "sampled", true, "");
}

SuiteItem run_j_laws(int n, SuiteMode, const SuiteConfig&) {
  const std::string stmt =
      "J_n J_n^t = J_n^t J_n = id and J_n^{-1} = (-1)^(n(n-1)/2) J_n";
  const RingCtx ctx = RingCtx::rational();
  RingMat j = j_matrix(n, ctx);
  RingMat id = RingMat::identity(ctx, j.rows());
  bool ok = j * j.transpose() == id && j.transpose() * j == id;
  const bool negate = ((std::uint64_t)n * (n - 1) / 2) % 2 == 1;
  RingMat jinv = negate ? -j : j;
  ok = ok && j * jinv == id;
  return outcome("j-laws", stmt, n, "exact", ok, "J recursion laws violated");
}

SuiteItem run_e_invertible(int n, SuiteMode, const SuiteConfig&) {
  const std::string stmt = "E_n is invertible";
  const RingCtx ctx = RingCtx::rational();
  bool ok = e_matrix(n, ctx) * e_matrix_inverse(n, ctx) ==
            RingMat::identity(ctx, 1 << (n - 1));
  return outcome("e-invertible", stmt, n, "exact", ok, "E_n inverse mismatch");
}

std::optional<SuiteItem> run_e_j_form(int n, SuiteMode, const SuiteConfig&) {
  if (n % 2 != 0) return std::nullopt;
  const std::string stmt =
      "E_n^t J_n^t E_n = sigma (n = 0 mod 4) or -psi (n = 2 mod 4)";
  const RingCtx ctx = RingCtx::rational();
  const int size = 1 << (n - 1);
  RingMat lhs = e_matrix(n, ctx).transpose() * j_matrix(n, ctx).transpose() *
                e_matrix(n, ctx);
  RingMat rhs =
      n % 4 == 0 ? sigma_mat(size, ctx) : -psi_mat(size, ctx);
  return outcome("e-j-form", stmt, n, "exact", lhs == rhs,
                 "E^t J^t E differs from its normal form");
}

std::optional<SuiteItem> run_degree_class(int n, SuiteMode mode,
                                          const SuiteConfig& cfg) {
  if (n < 2) return std::nullopt;
  const std::string stmt =
      "Psi_n(v,w) is orthogonal/symmetric/symplectic/alternating per n mod 4";
  auto check = [&](const std::vector<RingElem>& a,
                   const std::vector<RingElem>& b) {
    RingMat m = degree_map_raw(a, b);
    const FormClass cls = degree_map_class(n);
    if (cls == FormClass::Symmetric || cls == FormClass::Alternating)
      return classify_form(m, cls);
    RingMat ref = cls == FormClass::OrthogonalWrt
                      ? sigma_mat(m.rows(), m.ctx())
                      : psi_mat(m.rows(), m.ctx());
    return classify_form(m, cls, &ref);
  };
  if (mode == SuiteMode::Symbolic) {
    if (n > cfg.thresholds.product)
      return skipped("degree-class", stmt, n, "symbolic",
                     "n exceeds the symbolic product threshold");
    UnitVector u = UnitVector::generic(n);
    return outcome("degree-class", stmt, n, "symbolic", check(u.a, u.b),
                   "generic degree map left its class over the quadric ring");
  }
  for (int k = 0; k < cfg.seeds; ++k) {
    GenericPair p = point_pair(n, item_seed(4, n, k));
    if (!check(p.a, p.b))
      return outcome("degree-class", stmt, n, "sampled", false,
                     "counterexample at sample " + std::to_string(k));
  }
  return outcome("degree-class", stmt, n, "sampled", true, "");
}

std::optional<SuiteItem> run_det_one(int n, SuiteMode mode,
                                     const SuiteConfig& cfg) {
  if (n % 4 != 1 || n < 5) return std::nullopt;
  const std::string stmt = "det(Psi_n(v,w)) = 1 for n = 1 mod 4";
  if (mode == SuiteMode::Symbolic)
    return skipped("det-one", stmt, n, "symbolic",
                   "n exceeds the symbolic determinant threshold");
  for (int k = 0; k < cfg.seeds; ++k) {
    GenericPair p = point_pair(n, item_seed(5, n, k));
    if (!det(degree_map_raw(p.a, p.b)).is_one())
      return outcome("det-one", stmt, n, "sampled", false,
                     "counterexample at sample " + std::to_string(k));
  }
  return outcome("det-one", stmt, n, "sampled", true, "");
}

std::optional<SuiteItem> run_pfaffian_one(int n, SuiteMode mode,
                                          const SuiteConfig& cfg) {
  if (n % 4 != 3) return std::nullopt;
  const std::string stmt = "Pf(Psi_n(v,w)) = 1 for n = 3 mod 4";
  if (mode == SuiteMode::Symbolic) {
    if (n > cfg.thresholds.pfaffian)
      return skipped("pfaffian-one", stmt, n, "symbolic",
                     "n exceeds the symbolic pfaffian threshold");
    UnitVector u = UnitVector::generic(n);
    RingElem pf = pfaffian(psi_degree_map(u));
    return outcome("pfaffian-one", stmt, n, "symbolic", pf.is_one(),
                   "generic Pfaffian over the quadric ring is " +
                       pf.to_string());
  }
  for (int k = 0; k < cfg.seeds; ++k) {
    GenericPair p = point_pair(n, item_seed(6, n, k));
    UnitVector u = UnitVector::make(p.a, p.b);
    if (!pfaffian(psi_degree_map(u)).is_one())
      return outcome("pfaffian-one", stmt, n, "sampled", false,
                     "counterexample at sample " + std::to_string(k));
  }
  return outcome("pfaffian-one", stmt, n, "sampled", true, "");
}

SuiteItem run_clifford_square(int n, SuiteMode mode, const SuiteConfig& cfg) {
  const std::string stmt = "phi(a,b)^2 = q(a,b) id";
  auto check = [&](const GenericPair& p) {
    RingMat phi = phi_embed(p.a, p.b).mat;
    return phi * phi ==
           RingMat::scalar(phi.ctx(), phi.rows(), q_form(p.a, p.b));
  };
  if (mode == SuiteMode::Symbolic) {
    if (n > cfg.thresholds.product)
      return skipped("clifford-square", stmt, n, "symbolic",
                     "n exceeds the symbolic product threshold");
    return outcome("clifford-square", stmt, n, "symbolic",
                   check(free_pair(n)),
                   "phi^2 differs from q id over the free ring");
  }
  for (int k = 0; k < cfg.seeds; ++k)
    if (!check(point_pair(n, item_seed(7, n, k))))
      return outcome("clifford-square", stmt, n, "sampled", false,
                     "counterexample at sample " + std::to_string(k));
  return outcome("clifford-square", stmt, n, "sampled", true, "");
}

std::optional<SuiteItem> run_involution(int n, SuiteMode, const SuiteConfig&) {
  if (n < 2 || n > 4) return std::nullopt;
  const std::string stmt =
      "(M N)* = N* M*, (M*)* = M, and phi(a,b)* = phi(a,b)";
  GenericPair p = free_pair(n);
  RingMat phi = phi_embed(p.a, p.b).mat;
  if (standard_involution(phi) != phi)
    return outcome("involution", stmt, n, "symbolic", false,
                   "involution moved an embedded vector");
  const RingCtx ctx = RingCtx::rational();
  const int size = 1 << n;
  RatSampler rng(item_seed(8, n, 0));
  for (int k = 0; k < 10; ++k) {
    RingMat m(ctx, size, size), nn(ctx, size, size);
    for (int r = 0; r < size; ++r)
      for (int c = 0; c < size; ++c) {
        m.at(r, c) = RingElem::constant(ctx, rng.next());
        nn.at(r, c) = RingElem::constant(ctx, rng.next());
      }
    if (standard_involution(m * nn) !=
        standard_involution(nn) * standard_involution(m))
      return outcome("involution", stmt, n, "symbolic", false,
                     "anti-automorphism law failed on random instance " +
                         std::to_string(k));
    if (standard_involution(standard_involution(m)) != m)
      return outcome("involution", stmt, n, "symbolic", false,
                     "involution is not self-inverse on random instance " +
                         std::to_string(k));
  }
  return outcome("involution", stmt, n, "symbolic", true, "");
}

void run_parallel(std::vector<std::function<SuiteItem()>>& jobs,
                  std::vector<SuiteItem>& results, int threads) {
  results.resize(jobs.size(),
                 SuiteItem{"", "", 0, "", "skipped", "not executed"});
  const int workers =
      std::max(1, std::min<int>(threads, (int)jobs.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i]();
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= jobs.size()) return;
        results[i] = jobs[i]();
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

bool wanted(const SuiteConfig& cfg, const std::string& name) {
  if (cfg.identities.empty()) return true;
  for (const std::string& s : cfg.identities)
    if (s == name) return true;
  return false;
}

}  // namespace

std::vector<std::string> suite_identity_names() {
  return {"det-power",   "product-scalar", "transpose-dual", "j-laws",
          "e-invertible", "e-j-form",       "degree-class",   "det-one",
          "pfaffian-one", "clifford-square", "involution"};
}

std::vector<SuiteItem> verify_suslin_suite(int n, SuiteMode mode,
                                           const SuiteConfig& cfg) {
  if (n < 2) fail(ErrKind::InvalidArgument, "suite needs n >= 2");
  std::vector<SuiteItem> items;
  items.push_back(run_det_power(n, mode, cfg));
  items.push_back(run_product_scalar(n, mode, cfg));
  items.push_back(run_transpose_dual(n, mode, cfg));
  items.push_back(run_j_laws(n, mode, cfg));
  items.push_back(run_e_invertible(n, mode, cfg));
  if (auto it = run_e_j_form(n, mode, cfg)) items.push_back(*it);
  return items;
}

std::vector<SuiteItem> run_identity_suite(int n_lo, int n_hi,
                                          const SuiteConfig& cfg) {
  if (n_lo < 1 || n_hi < n_lo)
    fail(ErrKind::InvalidArgument, "bad n range");
  if (cfg.mode == SuiteMode::Sampled && cfg.seeds < 1)
    fail(ErrKind::InvalidArgument, "sampled mode needs seeds >= 1");
  for (const std::string& id : cfg.identities) {
    bool known = false;
    for (const std::string& name : suite_identity_names())
      if (name == id) known = true;
    if (!known) fail(ErrKind::InvalidArgument, "unknown identity '" + id + "'");
  }

  std::vector<std::function<SuiteItem()>> jobs;
  auto add = [&](std::function<std::optional<SuiteItem>()> f) {
    jobs.push_back([f] {
      auto item = f();
      return item ? *item : SuiteItem{"", "", 0, "", "skipped", "n/a"};
    });
  };
  for (int n = n_lo; n <= n_hi; ++n) {
    const SuiteMode mode = cfg.mode;
    if (wanted(cfg, "det-power") && n >= 2)
      add([n, mode, &cfg] { return run_det_power(n, mode, cfg); });
    if (wanted(cfg, "product-scalar"))
      add([n, mode, &cfg] { return run_product_scalar(n, mode, cfg); });
    if (wanted(cfg, "transpose-dual"))
      add([n, mode, &cfg] { return run_transpose_dual(n, mode, cfg); });
    if (wanted(cfg, "j-laws"))
      add([n, mode, &cfg] { return run_j_laws(n, mode, cfg); });
    if (wanted(cfg, "e-invertible"))
      add([n, mode, &cfg] { return run_e_invertible(n, mode, cfg); });
    if (wanted(cfg, "e-j-form"))
      add([n, mode, &cfg] { return run_e_j_form(n, mode, cfg); });
    if (wanted(cfg, "degree-class"))
      add([n, mode, &cfg] { return run_degree_class(n, mode, cfg); });
    if (wanted(cfg, "det-one"))
      add([n, mode, &cfg] { return run_det_one(n, mode, cfg); });
    if (wanted(cfg, "pfaffian-one"))
      add([n, mode, &cfg] { return run_pfaffian_one(n, mode, cfg); });
    if (wanted(cfg, "clifford-square"))
      add([n, mode, &cfg] { return run_clifford_square(n, mode, cfg); });
    if (wanted(cfg, "involution"))
      add([n, mode, &cfg] { return run_involution(n, mode, cfg); });
  }
  std::vector<SuiteItem> results;
  run_parallel(jobs, results, cfg.threads);
  std::vector<SuiteItem> kept;
  for (SuiteItem& it : results)
    if (!it.identity.empty()) kept.push_back(std::move(it));
  return kept;
}

bool all_passed(const std::vector<SuiteItem>& items) {
  for (const SuiteItem& it : items)
    if (it.status == "fail") return false;
  return true;
}

}  // namespace qspin
