#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qspin/json_io.hpp"

using namespace qspin;

namespace {
const RingCtx Q = RingCtx::rational();
}

TEST_CASE("suite: full symbolic run over n = 2..4 passes") {
  SuiteConfig cfg;
  cfg.mode = SuiteMode::Symbolic;
  cfg.threads = 4;
  auto items = run_identity_suite(2, 4, cfg);
  CHECK(!items.empty());
  for (const SuiteItem& it : items) {
    INFO(it.identity << " n=" << it.n << " :: " << it.detail);
    CHECK(it.status != "fail");
  }
}

TEST_CASE("suite: sampled run includes the large-n identities") {
  SuiteConfig cfg;
  cfg.mode = SuiteMode::Sampled;
  cfg.seeds = 2;
  cfg.threads = 4;
  auto items = run_identity_suite(5, 5, cfg);
  bool saw_det_one = false;
  for (const SuiteItem& it : items) {
    INFO(it.identity << " :: " << it.detail);
    CHECK(it.status != "fail");
    if (it.identity == "det-one") saw_det_one = true;
  }
  CHECK(saw_det_one);
}

TEST_CASE("suite: identity filter and unknown identities") {
  SuiteConfig cfg;
  cfg.mode = SuiteMode::Symbolic;
  cfg.identities = {"pfaffian-one"};
  auto items = run_identity_suite(3, 3, cfg);
  REQUIRE(items.size() == 1);
  CHECK(items[0].identity == "pfaffian-one");
  CHECK(items[0].status == "pass");
  CHECK(items[0].mode == "symbolic");

  cfg.identities = {"nonsense"};
  CHECK_THROWS_AS(run_identity_suite(3, 3, cfg), Error);
}

TEST_CASE("suite: symbolic thresholds mark oversized runs as skipped") {
  SuiteConfig cfg;
  cfg.mode = SuiteMode::Symbolic;
  cfg.identities = {"det-power"};
  auto items = run_identity_suite(7, 7, cfg);
  REQUIRE(items.size() == 1);
  CHECK(items[0].status == "skipped");
}

TEST_CASE("suite: sampled mode validates the seed count") {
  SuiteConfig cfg;
  cfg.mode = SuiteMode::Sampled;
  cfg.seeds = 0;
  CHECK_THROWS_AS(run_identity_suite(2, 2, cfg), Error);
}

TEST_CASE("suite: repeated runs are byte-identical") {
  SuiteConfig cfg;
  cfg.mode = SuiteMode::Sampled;
  cfg.seeds = 2;
  cfg.threads = 4;
  json echo{{"n", "2..3"}};
  std::string r1 =
      suite_report_to_json(run_identity_suite(2, 3, cfg), echo).dump(2);
  cfg.threads = 1;  // scheduling must not affect the report
  std::string r2 =
      suite_report_to_json(run_identity_suite(2, 3, cfg), echo).dump(2);
  CHECK(r1 == r2);
}

TEST_CASE("json: ring element round trip") {
  const RingCtx q2 = RingCtx::quadric(2);
  RingElem p = RingElem::x(q2, 1).pow(2).scaled(make_rat(3, 7)) -
               RingElem::y(q2, 2) + RingElem::one(q2);
  json j = elem_to_json(p);
  CHECK(elem_from_json(j, q2) == p);

  // leading term first
  CHECK(j.is_array());
  CHECK(j[0].at("exps")[0].get<int>() == 2);
}

TEST_CASE("json: matrix round trip across contexts") {
  for (const RingCtx& ctx :
       {RingCtx::rational(), RingCtx::poly(2), RingCtx::quadric(2)}) {
    RingMat m(ctx, 2, 3);
    RatSampler rng(3);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 3; ++c) {
        m.at(r, c) = RingElem::constant(ctx, rng.next());
        if (ctx.is_symbolic() && rng.next_int(0, 1))
          m.at(r, c) += RingElem::x(ctx, 1).scaled(rng.next());
      }
    json j = mat_to_json(m);
    CHECK(mat_from_json(j) == m);
    CHECK(ctx_from_json(j.at("ctx")) == ctx);
  }
}

TEST_CASE("json: malformed inputs raise usage errors") {
  CHECK_THROWS_AS(ctx_from_json(json{{"kind", "galois"}}), Error);
  CHECK_THROWS_AS(elem_from_json(json::object(), Q), Error);
  json bad_mat{{"rows", 2}, {"cols", 2}, {"ctx", {{"kind", "rational"}}},
               {"entries", json::array()}};
  CHECK_THROWS_AS(mat_from_json(bad_mat), Error);
}

TEST_CASE("json: spin bundle serialization") {
  RingMat h = RingMat::identity(Q, 4);
  h.at(0, 1) = RingElem::constant(Q, 3);
  SpinElem s = spin_certify(diag_even_candidate(h));
  json j = spin_to_json(s);
  CHECK(j.at("n").get<int>() == 3);
  CHECK(mat_from_json(j.at("g")) == s.g.mat);
  CHECK(mat_from_json(j.at("so_matrix")) == s.so_matrix);
  CHECK(j.at("certificate").at("stability").size() == 6);

  CliffordElem back = clifford_candidate_from_json(json{{"g", j.at("g")}});
  CHECK(back.mat == s.g.mat);
  CliffordElem via_h =
      clifford_candidate_from_json(json{{"h", mat_to_json(h)}});
  CHECK(via_h.mat == s.g.mat);
}

TEST_CASE("witness files: congruence accept and reject") {
  RingMat psi4 = psi_mat(4, Q);
  json file{{"type", "congruence"},
            {"flavor", "W_E"},
            {"M", mat_to_json(psi4)},
            {"N", mat_to_json(psi4)},
            {"i", 1},
            {"factors", json::array()},
            {"expected", true}};
  WitnessOutcome out = run_witness_file(file);
  CHECK(out.ok);
  CHECK(out.report.at("matches_expected").get<bool>());

  json tampered = file;
  json m = mat_to_json(psi4);
  m["entries"][0][0] = elem_to_json(RingElem::one(Q));
  tampered["M"] = m;
  // diagonal became nonzero: shape error for the alternating flavor
  CHECK_THROWS_AS(run_witness_file(tampered), Error);

  json wrong{{"type", "congruence"},
             {"flavor", "W_SL"},
             {"M", mat_to_json(psi4)},
             {"N", mat_to_json(psi4)},
             {"i", 1},
             {"matrix", mat_to_json(RingMat::identity(Q, 8).scaled(
                            RingElem::constant(Q, 1)))},
             {"expected", true}};
  wrong["matrix"]["entries"][0][1] = elem_to_json(RingElem::constant(Q, 4));
  WitnessOutcome out2 = run_witness_file(wrong);
  CHECK_FALSE(out2.ok);
}

TEST_CASE("witness files: orbit kind") {
  json file{{"type", "orbit"},
            {"kind", "SL"},
            {"matrix", mat_to_json(RingMat::identity(Q, 3))},
            {"source",
             {{"ctx", {{"kind", "rational"}}},
              {"a", {elem_to_json(RingElem::one(Q)),
                     elem_to_json(RingElem::zero(Q)),
                     elem_to_json(RingElem::zero(Q))}}}},
            {"target",
             {{"ctx", {{"kind", "rational"}}},
              {"a", {elem_to_json(RingElem::one(Q)),
                     elem_to_json(RingElem::zero(Q)),
                     elem_to_json(RingElem::zero(Q))}}}}};
  CHECK(run_witness_file(file).ok);
}

TEST_CASE("witness files: unknown type is a usage error") {
  CHECK_THROWS_AS(run_witness_file(json{{"type", "weird"}}), Error);
  CHECK_THROWS_AS(run_witness_file(json::array()), Error);
}
