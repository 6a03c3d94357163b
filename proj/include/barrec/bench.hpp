#pragma once

// Counterexample benchmarks over the builtin families: carrier size, call
// counts in both evaluation modes, and wall time per cell.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "barrec/noinjection.hpp"

namespace barrec {

struct BenchCell {
  HFamily family = HFamily::prod;
  Nat n = 0;
  Recursor recursor = Recursor::spector;
  EvalMode mode = EvalMode::plain;
  bool fuel_exhausted = false;
  std::size_t domain_size = 0;
  std::uint64_t calls = 0;
  Nat i = 0;
  bool valid = false;
  double wall_ms = 0;
};

/// Published carrier size and call count for a cell, where known.
struct PublishedFigure {
  std::optional<Nat> domain_size;
  std::optional<std::uint64_t> calls;
};
std::optional<PublishedFigure> published_figure(HFamily family, Nat n, Recursor recursor);

struct BenchRequest {
  std::vector<HFamily> families;
  // Empty means the table range of each family.
  std::optional<std::pair<Nat, Nat>> range;
  std::vector<Recursor> recursors{Recursor::spector, Recursor::symmetric};
  std::vector<EvalMode> modes{EvalMode::plain, EvalMode::memoized};
  std::uint64_t fuel = kDefaultFuel;
  unsigned threads = 0;  // 0: hardware concurrency
};

BenchCell run_cell(HFamily family, Nat n, Recursor recursor, EvalMode mode, std::uint64_t fuel);

/// Cells come back in (family, n, recursor, mode) order whatever order they finish in.
std::vector<BenchCell> run_bench(const BenchRequest& req);

std::string bench_csv(const std::vector<BenchCell>& cells, bool with_header = true);
nlohmann::ordered_json bench_json(const std::vector<BenchCell>& cells);
std::string bench_text(const std::vector<BenchCell>& cells);

std::pair<Nat, Nat> table_range(HFamily family);

}  // namespace barrec
