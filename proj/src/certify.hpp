#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pipeline.hpp"

namespace pcs {

enum class Profile {
  Small,       // unit-capacity random corpus
  Capacities,  // capacities drawn from 1..3
  Bipartite,   // two-layer port instances, both LP modes
  Examples,    // worked instances with known exact values
  Reductions,  // edge<->node capacity reductions
  Kernels,     // kernel extraction on random acyclic orientations
  All,
};

Profile profile_from_name(const std::string& name);
std::string profile_name(Profile p);

struct CertifyOptions {
  Profile profile = Profile::Small;
  std::uint64_t seed_lo = 1;
  std::uint64_t seed_hi = 50;
  // 0 standard, 1 improved, 2 both
  int deadline_modes = 2;
  std::int64_t oracle_unit_cap = 12;
};

struct CertifyItem {
  std::string name;
  bool pass = true;
  std::vector<std::string> failures;
};

struct CertifyReport {
  std::vector<CertifyItem> items;
  std::size_t checks_run = 0;
  std::size_t oracle_runs = 0;  // items certified against the exact optimum
  bool all_pass = true;
};

// Generates, solves, cross-checks and aggregates one item per seed (and per
// deadline mode where it matters). Every failed inequality or mismatch is
// recorded verbatim in the item.
CertifyReport certify(const CertifyOptions& opts);

std::string certify_report_text(const CertifyReport& report);
std::string certify_report_json(const CertifyReport& report);

// The instance the "small" and "capacities" profiles use for a given seed;
// exposed so tests and the acceptance suite share the corpus.
RandomSpec corpus_spec(std::uint64_t seed, bool with_capacities);

}  // namespace pcs
