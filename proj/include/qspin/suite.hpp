#pragma once

#include <string>
#include <vector>

#include "qspin/witt.hpp"

namespace qspin {

enum class SuiteMode { Symbolic, Sampled };

// Symbolic work is capped per identity family; larger n falls back to
// sampled evaluation at exact quadric points.
struct SuiteThresholds {
  int det = 4;
  int product = 6;
  int pfaffian = 3;
};

struct SuiteConfig {
  SuiteMode mode = SuiteMode::Symbolic;
  int seeds = 20;
  int threads = 1;
  SuiteThresholds thresholds;
  std::vector<std::string> identities;  // empty = every applicable identity
};

struct SuiteItem {
  std::string identity;
  std::string statement;
  int n = 0;
  std::string mode;    // "symbolic" | "sampled" | "exact"
  std::string status;  // "pass" | "fail" | "skipped"
  std::string detail;  // counterexample or skip reason
};

std::vector<std::string> suite_identity_names();

// The alpha/alphabar/J/E identity family for a single n: determinant power,
// scalar product, transpose duality, J laws, E invertibility and the
// E^t J^t E normal forms.
std::vector<SuiteItem> verify_suslin_suite(int n, SuiteMode mode,
                                           const SuiteConfig& cfg);

// Every identity family over an inclusive range of n.
std::vector<SuiteItem> run_identity_suite(int n_lo, int n_hi,
                                          const SuiteConfig& cfg);

bool all_passed(const std::vector<SuiteItem>& items);

}  // namespace qspin
