#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "qspin/json_io.hpp"

namespace {

using qspin::json;

constexpr int kExitPass = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitUsage = 2;

int thread_cap() {
  if (const char* env = std::getenv("SUSLIN_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : (int)std::min(hw, 8u);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) qspin::fail(qspin::ErrKind::InvalidArgument,
                      "cannot open output file '" + out_path + "'");
  f << text;
}

json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) qspin::fail(qspin::ErrKind::InvalidArgument,
                      "cannot open input file '" + path + "'");
  json j;
  try {
    f >> j;
  } catch (const std::exception& e) {
    qspin::fail(qspin::ErrKind::InvalidArgument,
                std::string("malformed JSON: ") + e.what());
  }
  return j;
}

struct SuslinOpts {
  int n = 0;
  std::string show = "alpha";
  std::string vec = "unit";
  std::string ring;
  std::string format = "json";
  std::string out;
};

int cmd_suslin(const SuslinOpts& opt) {
  using namespace qspin;
  if (opt.n < 1) fail(ErrKind::InvalidArgument, "--n must be >= 1");

  const bool needs_vec = opt.show == "alpha" || opt.show == "alphabar" ||
                         opt.show == "psi";
  std::optional<RingMat> result;
  json vec_used;
  if (needs_vec) {
    std::vector<RingElem> a, b;
    RingCtx ctx = RingCtx::rational();
    if (opt.vec == "unit") {
      if (!opt.ring.empty() && opt.ring == "quadric")
        ctx = RingCtx::quadric(opt.n);
      UnitVector u = UnitVector::standard(ctx, opt.n);
      a = u.a;
      b = u.b;
    } else if (opt.vec == "generic") {
      // Degree maps need q = 1, so generic means the quadric ring there;
      // alpha itself is shown with free symbols unless a ring is forced.
      if (opt.show == "psi" || opt.ring == "quadric") {
        UnitVector u = UnitVector::generic(opt.n);
        ctx = u.ctx();
        a = u.a;
        b = u.b;
      } else {
        ctx = RingCtx::poly(opt.n);
        for (int i = 1; i <= opt.n; ++i) {
          a.push_back(RingElem::x(ctx, i));
          b.push_back(RingElem::y(ctx, i));
        }
      }
    } else {
      json jv = load_json(opt.vec);
      ctx = ctx_from_json(jv.at("ctx"));
      for (const json& t : jv.at("a")) a.push_back(elem_from_json(t, ctx));
      for (const json& t : jv.at("b")) b.push_back(elem_from_json(t, ctx));
      if ((int)a.size() != opt.n || a.size() != b.size())
        fail(ErrKind::DimensionMismatch, "vector file length vs --n");
    }
    if (opt.show == "alpha")
      result = suslin_alpha_mat(a, b);
    else if (opt.show == "alphabar")
      result = suslin_alpha_bar_mat(a, b);
    else
      result = psi_degree_map(UnitVector::make(a, b));
    vec_used = vector_pair_to_json(ctx, a, b);
  } else {
    RingCtx ctx = opt.ring == "quadric" ? RingCtx::quadric(opt.n)
                                        : RingCtx::rational();
    if (opt.show == "j")
      result = j_matrix(opt.n, ctx);
    else if (opt.show == "e")
      result = e_matrix(opt.n, ctx);
    else
      fail(ErrKind::InvalidArgument, "unknown --show '" + opt.show + "'");
  }

  if (opt.format == "text") {
    emit(result->to_string(), opt.out);
    return kExitPass;
  }
  json out{{"command", "suslin"}, {"n", opt.n}, {"show", opt.show}};
  if (needs_vec) out["vector"] = vec_used;
  out["matrix"] = mat_to_json(*result);
  emit(out.dump(2) + "\n", opt.out);
  return kExitPass;
}

struct VerifyOpts {
  std::string range = "2..4";
  std::string mode = "symbolic";
  int seeds = 20;
  std::string identity;
  std::string ring;  // informational; identities pick their own substrate
  std::string format = "json";
  std::string out;
  int threads = 0;
};

int cmd_verify(const VerifyOpts& opt) {
  using namespace qspin;
  int lo = 0, hi = 0;
  const auto dots = opt.range.find("..");
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stoi(opt.range);
    } else {
      lo = std::stoi(opt.range.substr(0, dots));
      hi = std::stoi(opt.range.substr(dots + 2));
    }
  } catch (const std::exception&) {
    fail(ErrKind::InvalidArgument, "bad --n range '" + opt.range + "'");
  }

  SuiteConfig cfg;
  if (opt.mode == "symbolic")
    cfg.mode = SuiteMode::Symbolic;
  else if (opt.mode == "sampled")
    cfg.mode = SuiteMode::Sampled;
  else
    fail(ErrKind::InvalidArgument, "unknown --mode '" + opt.mode + "'");
  cfg.seeds = opt.seeds;
  cfg.threads = opt.threads >= 1 ? opt.threads : thread_cap();
  if (!opt.identity.empty()) cfg.identities.push_back(opt.identity);

  std::vector<SuiteItem> items = run_identity_suite(lo, hi, cfg);
  json config_echo{{"n", opt.range},
                   {"mode", opt.mode},
                   {"seeds", opt.seeds},
                   {"identity", opt.identity.empty() ? "all" : opt.identity}};
  const bool ok = all_passed(items);
  if (opt.format == "text") {
    std::string text;
    for (const SuiteItem& it : items) {
      text += it.status + "  " + it.identity + " (n=" + std::to_string(it.n) +
              ", " + it.mode + ")";
      if (!it.detail.empty()) text += "  [" + it.detail + "]";
      text += "\n";
    }
    text += ok ? "all identities hold\n" : "FAILURES present\n";
    emit(text, opt.out);
  } else {
    emit(suite_report_to_json(items, config_echo).dump(2) + "\n", opt.out);
  }
  return ok ? kExitPass : kExitMathFailure;
}

int cmd_spin_check(const std::string& in, const std::string& format,
                   const std::string& out) {
  using namespace qspin;
  json input = load_json(in);
  json report;
  bool ok = true;
  try {
    SpinElem s = spin_certify(clifford_candidate_from_json(input));
    report = json{{"command", "spin-check"},
                  {"status", "certified"},
                  {"element", spin_to_json(s)}};
  } catch (const Error& e) {
    if (is_usage_error(e.kind())) throw;
    ok = false;
    report = json{{"command", "spin-check"},
                  {"status", "rejected"},
                  {"kind", to_string(e.kind())},
                  {"reason", e.what()}};
  }
  if (format == "text")
    emit(report.at("status").get<std::string>() + "\n", out);
  else
    emit(report.dump(2) + "\n", out);
  return ok ? kExitPass : kExitMathFailure;
}

int cmd_orbit_witness(const std::string& in, const std::string& format,
                      const std::string& out) {
  using namespace qspin;
  WitnessOutcome res = run_witness_file(load_json(in));
  if (format == "text")
    emit(std::string(res.ok ? "verified" : "rejected") +
             (res.reason.empty() ? "" : ": " + res.reason) + "\n",
         out);
  else
    emit(res.report.dump(2) + "\n", out);
  return res.ok ? kExitPass : kExitMathFailure;
}

int cmd_sample(int n, int seeds, const std::string& out) {
  using namespace qspin;
  if (n < 1 || seeds < 1)
    fail(ErrKind::InvalidArgument, "sample needs --n >= 1 and --seeds >= 1");
  json points = json::array();
  for (int k = 0; k < seeds; ++k) {
    EvalPoint p = sample_quadric_point(n, (std::uint64_t)k);
    json xs = json::array(), ys = json::array();
    for (const mpq_class& q : p.xs) xs.push_back(q.get_str());
    for (const mpq_class& q : p.ys) ys.push_back(q.get_str());
    points.push_back(json{{"seed", k}, {"x", std::move(xs)}, {"y", std::move(ys)}});
  }
  emit(json{{"command", "sample"}, {"n", n}, {"points", points}}.dump(2) + "\n",
       out);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Suslin matrix / Clifford / Spin toolkit"};
  app.require_subcommand(1);

  SuslinOpts sopt;
  CLI::App* suslin = app.add_subcommand(
      "suslin", "construct alpha, alphabar, J, E or the degree map");
  suslin->add_option("--n", sopt.n, "vector length")->required();
  suslin->add_option("--show", sopt.show,
                     "alpha | alphabar | j | e | psi (degree map)");
  suslin->add_option("--vec", sopt.vec, "unit | generic | <file.json>");
  suslin->add_flag_callback("--generic", [&sopt] { sopt.vec = "generic"; },
                            "shorthand for --vec generic");
  suslin->add_option("--ring", sopt.ring, "rational | poly | quadric");
  suslin->add_option("--format", sopt.format, "json | text");
  suslin->add_option("--out", sopt.out, "write output to a file");

  VerifyOpts vopt;
  CLI::App* verify =
      app.add_subcommand("verify", "run the identity suites");
  verify->add_option("--n", vopt.range, "single n or range a..b");
  verify->add_option("--mode", vopt.mode, "symbolic | sampled");
  verify->add_option("--seeds", vopt.seeds, "sample count per identity");
  verify->add_option("--identity", vopt.identity, "restrict to one identity");
  verify->add_option("--threads", vopt.threads,
                     "worker threads (default: SUSLIN_THREADS or hardware)");
  verify->add_option("--format", vopt.format, "json | text");
  verify->add_option("--out", vopt.out, "write report to a file");
  verify->add_option("--ring", vopt.ring,
                     "rational | quadric; identities pick their substrate");

  std::string sc_in, sc_format = "json", sc_out;
  CLI::App* spin = app.add_subcommand("spin-check", "certify an even element");
  spin->add_option("--in", sc_in, "candidate JSON file")->required();
  spin->add_option("--format", sc_format, "json | text");
  spin->add_option("--out", sc_out, "write report to a file");

  std::string ow_in, ow_action, ow_format = "json", ow_out;
  CLI::App* orbit =
      app.add_subcommand("orbit-witness", "verify a witness file");
  orbit->add_option("action", ow_action, "only 'verify' is supported");
  orbit->add_option("file", ow_in, "witness JSON file");
  orbit->add_option("--in", ow_in, "witness JSON file");
  orbit->add_option("--format", ow_format, "json | text");
  orbit->add_option("--out", ow_out, "write report to a file");

  int sm_n = 0, sm_seeds = 20;
  std::string sm_out;
  CLI::App* sample =
      app.add_subcommand("sample", "emit exact quadric points");
  sample->add_option("--n", sm_n, "pair count")->required();
  sample->add_option("--seeds", sm_seeds, "number of points");
  sample->add_option("--out", sm_out, "write points to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (suslin->parsed()) return cmd_suslin(sopt);
    if (verify->parsed()) return cmd_verify(vopt);
    if (spin->parsed()) return cmd_spin_check(sc_in, sc_format, sc_out);
    if (orbit->parsed()) {
      if (!ow_action.empty() && ow_action != "verify" && ow_in.empty()) {
        // `orbit-witness file.json` without an action word
        ow_in = ow_action;
      } else if (!ow_action.empty() && ow_action != "verify") {
        std::cerr << "unknown action '" << ow_action << "'\n";
        return kExitUsage;
      }
      if (ow_in.empty()) {
        std::cerr << "orbit-witness needs a witness file\n";
        return kExitUsage;
      }
      return cmd_orbit_witness(ow_in, ow_format, ow_out);
    }
    if (sample->parsed()) return cmd_sample(sm_n, sm_seeds, sm_out);
  } catch (const qspin::Error& e) {
    std::cerr << e.what() << "\n";
    return qspin::is_usage_error(e.kind()) ? kExitUsage : kExitMathFailure;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
