#pragma once

// Seeded property suites shared by `barrec check`, the unit tests and the
// acceptance run. Each suite is deterministic in (seed, cases).

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace barrec {

struct Tally {
  std::string label;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
};

struct SuiteResult {
  std::string name;
  std::vector<Tally> tallies;
  std::vector<std::string> failures;  // first few, for diagnostics
  double wall_ms = 0;

  Tally& tally(const std::string& label);
  void record(const std::string& label, bool ok, const std::string& what);
  std::uint64_t passed() const;
  std::uint64_t failed() const;
  bool ok() const { return failed() == 0; }
};

/// thread laws on generated (φ, α, u)
SuiteResult run_threads_suite(std::uint64_t seed, std::uint64_t cases = 500);
/// φf = n, fn = ε_n p, qf = p(ε_n p) for both solvers, generated and builtin
SuiteResult run_equations_suite(std::uint64_t seed, std::uint64_t cases = 100);
/// the equations at every index of the Φ and Ψ carriers
SuiteResult run_indexwise_suite(std::uint64_t seed, std::uint64_t cases = 50);
/// Θ against sBR, Ψ against its sBR definition, memoized against plain
SuiteResult run_oracles_suite(std::uint64_t seed, std::uint64_t cases = 100);
/// both translations against their oracles, plus the s_{u,i} identities
SuiteResult run_interdef_suite(std::uint64_t seed, std::uint64_t cases = 200);
/// builtin families over the table ranges and generated DSL functionals
SuiteResult run_counterexample_suite(std::uint64_t seed, std::uint64_t cases = 100);
/// DSL renderings of the families and parser round-trips
SuiteResult run_dsl_suite(std::uint64_t seed, std::uint64_t cases = 100);

/// One translation-against-oracle comparison.
struct InterdefRecord {
  std::uint64_t case_index = 0;
  std::string direction;  // "br_from_sbr" or "sbr_from_br"
  std::string control;
  std::uint64_t oracle = 0;
  std::uint64_t translation = 0;
  std::uint64_t oracle_calls = 0;
  std::uint64_t translation_calls = 0;
  bool agree = false;
  std::string error;
};

/// The 2·cases comparisons of the interdef suite, in case order.
std::vector<InterdefRecord> interdef_records(std::uint64_t seed, std::uint64_t cases);

const std::vector<std::string>& suite_names();

/// cases == 0 picks the suite's default size.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::uint64_t cases = 0);

nlohmann::ordered_json json_of(const SuiteResult& r);

/// Table-range inputs used by the counterexample suite and the bench defaults.
struct FamilyRange {
  const char* family;
  unsigned lo, hi;
};
const std::vector<FamilyRange>& table_ranges();

}  // namespace barrec
