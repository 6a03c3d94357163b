#include "barrec/bench.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>
#include <thread>

#include "barrec/suites.hpp"

namespace barrec {

std::optional<PublishedFigure> published_figure(HFamily family, Nat n, Recursor recursor) {
  using Row = std::map<Nat, PublishedFigure>;
  static const std::map<HFamily, std::pair<Row, Row>> kTables{
      {HFamily::prod,
       {{{4, {17, 1140}}, {5, {33, 4650}}, {6, {65, 19154}}}, {{4, {1, 12}}, {5, {1, 12}}, {6, {1, 12}}}}},
      {HFamily::prodpow, {{{3, {577, 2350}}, {4, {577, 365700}}}, {{3, {1, 12}}, {4, {1, 12}}}}},
      {HFamily::leastinc,
       {{{3, {4, 316}}, {4, {5, 688}}, {5, {6, 1444}}}, {{3, {4, 52}}, {4, {5, 64}}, {5, {6, 76}}}}},
  };
  if (family == HFamily::contrived) {
    // only sizes were given: 2 for Spector, n for the symmetric recursor
    return PublishedFigure{recursor == Recursor::spector ? 2 : n, std::nullopt};
  }
  auto it = kTables.find(family);
  if (it == kTables.end()) return std::nullopt;
  const Row& row = recursor == Recursor::spector ? it->second.first : it->second.second;
  auto cell = row.find(n);
  if (cell == row.end()) return std::nullopt;
  return cell->second;
}

std::pair<Nat, Nat> table_range(HFamily family) {
  for (const auto& r : table_ranges()) {
    if (parse_family(r.family) == family) return {r.lo, r.hi};
  }
  return {1, 1};
}

BenchCell run_cell(HFamily family, Nat n, Recursor recursor, EvalMode mode, std::uint64_t fuel) {
  BenchCell cell{family, n, recursor, mode};
  auto t0 = std::chrono::steady_clock::now();
  Functional H = builtin_h(family, n);
  try {
    Counterexample c = counterexample(H, recursor, fuel, mode);
    cell.domain_size = c.carrier_size;
    cell.calls = c.metrics.calls;
    cell.i = c.i;
    cell.valid = verify_counterexample(H, c);
  } catch (const FuelExhausted& e) {
    cell.fuel_exhausted = true;
    cell.calls = e.metrics().calls;
  }
  cell.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return cell;
}

std::vector<BenchCell> run_bench(const BenchRequest& req) {
  std::vector<BenchCell> cells;
  for (HFamily f : req.families) {
    auto [lo, hi] = req.range ? *req.range : table_range(f);
    for (Nat n = lo; n <= hi; ++n) {
      for (Recursor r : req.recursors) {
        for (EvalMode m : req.modes) cells.push_back(BenchCell{f, n, r, m});
      }
    }
  }
  unsigned workers = req.threads ? req.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(cells.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next++) < cells.size();) {
      BenchCell& c = cells[k];
      c = run_cell(c.family, c.n, c.recursor, c.mode, req.fuel);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return cells;
}

namespace {

std::string fmt_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

}  // namespace

std::string bench_csv(const std::vector<BenchCell>& cells, bool with_header) {
  std::ostringstream os;
  if (with_header) os << "family,n,recursor,mode,domain_size,calls,i,valid,wall_ms\n";
  for (const auto& c : cells) {
    os << to_string(c.family) << ',' << c.n << ',' << to_string(c.recursor) << ',' << to_string(c.mode) << ',';
    if (c.fuel_exhausted)
      os << ",," << ",fuel_exhausted,";
    else
      os << c.domain_size << ',' << c.calls << ',' << c.i << ',' << (c.valid ? "true" : "false") << ',';
    os << fmt_ms(c.wall_ms) << '\n';
  }
  return os.str();
}

nlohmann::ordered_json bench_json(const std::vector<BenchCell>& cells) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& c : cells) {
    nlohmann::ordered_json j;
    j["family"] = to_string(c.family);
    j["n"] = c.n;
    j["recursor"] = to_string(c.recursor);
    j["mode"] = to_string(c.mode);
    if (c.fuel_exhausted) {
      j["domain_size"] = nullptr;
      j["calls"] = nullptr;
      j["i"] = nullptr;
      j["valid"] = "fuel_exhausted";
    } else {
      j["domain_size"] = c.domain_size;
      j["calls"] = c.calls;
      j["i"] = c.i;
      j["valid"] = c.valid;
    }
    if (auto p = published_figure(c.family, c.n, c.recursor)) {
      j["published_domain_size"] = p->domain_size ? nlohmann::ordered_json(*p->domain_size) : nullptr;
      j["published_calls"] = p->calls ? nlohmann::ordered_json(*p->calls) : nullptr;
    }
    j["wall_ms"] = c.wall_ms;
    out.push_back(std::move(j));
  }
  return out;
}

std::string bench_text(const std::vector<BenchCell>& cells) {
  // One line per (family, n, recursor) with the modes side by side.
  struct Line {
    const BenchCell* plain = nullptr;
    const BenchCell* memo = nullptr;
  };
  std::ostringstream os;
  std::vector<std::pair<const BenchCell*, Line>> lines;
  for (const auto& c : cells) {
    Line* line = nullptr;
    for (auto& [key, l] : lines) {
      if (key->family == c.family && key->n == c.n && key->recursor == c.recursor) line = &l;
    }
    if (!line) {
      lines.push_back({&c, Line{}});
      line = &lines.back().second;
    }
    (c.mode == EvalMode::plain ? line->plain : line->memo) = &c;
  }
  auto calls = [](const BenchCell* c) -> std::string {
    if (!c) return "-";
    if (c->fuel_exhausted) return "fuel";
    return std::to_string(c->calls);
  };
  char buf[256];
  std::optional<HFamily> current;
  for (const auto& [key, l] : lines) {
    if (current != key->family) {
      current = key->family;
      os << (os.tellp() > 0 ? "\n" : "") << to_string(key->family) << '\n';
      std::snprintf(buf, sizeof buf, "%4s  %-9s  %6s  %8s  %8s  %6s  %-5s  %s\n", "n", "recursor", "size", "plain",
                    "memo", "i", "valid", "published size / calls");
      os << buf;
    }
    const BenchCell* any = l.plain ? l.plain : l.memo;
    std::string size = any->fuel_exhausted ? "-" : std::to_string(any->domain_size);
    std::string i = any->fuel_exhausted ? "-" : std::to_string(any->i);
    bool valid = (!l.plain || l.plain->valid) && (!l.memo || l.memo->valid);
    std::string pub = "-";
    if (auto p = published_figure(key->family, key->n, key->recursor)) {
      pub = (p->domain_size ? std::to_string(*p->domain_size) : "?") + " / " +
            (p->calls ? std::to_string(*p->calls) : "?");
    }
    std::snprintf(buf, sizeof buf, "%4llu  %-9s  %6s  %8s  %8s  %6s  %-5s  %s\n",
                  static_cast<unsigned long long>(key->n), to_string(key->recursor), size.c_str(),
                  calls(l.plain).c_str(), calls(l.memo).c_str(), i.c_str(), valid ? "yes" : "no", pub.c_str());
    os << buf;
  }
  return os.str();
}

}  // namespace barrec
