#include <doctest.h>

#include <sstream>

#include "barrec/bench.hpp"

using namespace barrec;

namespace {

// CSV without the wall_ms column
std::string strip_time(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

}  // namespace

TEST_CASE("published figures") {
  auto p = published_figure(HFamily::prod, 6, Recursor::spector);
  REQUIRE(p);
  CHECK(*p->domain_size == 65);
  CHECK(*p->calls == 19154);
  CHECK(*published_figure(HFamily::leastinc, 4, Recursor::symmetric)->calls == 64);
  CHECK_FALSE(published_figure(HFamily::contrived, 5, Recursor::symmetric)->calls);
  CHECK_FALSE(published_figure(HFamily::prod, 9, Recursor::spector));
}

TEST_CASE("cells") {
  auto c = run_cell(HFamily::prod, 4, Recursor::spector, EvalMode::plain, kDefaultFuel);
  CHECK(c.domain_size == 17);
  CHECK(c.i == 16);
  CHECK(c.valid);
  auto f = run_cell(HFamily::prod, 6, Recursor::spector, EvalMode::plain, 10);
  CHECK(f.fuel_exhausted);
  CHECK_FALSE(f.valid);
}

TEST_CASE("bench output is ordered and deterministic") {
  BenchRequest req;
  req.families = {HFamily::leastinc, HFamily::prod};
  req.threads = 4;
  auto a = run_bench(req);
  REQUIRE(a.size() == (3 + 3) * 2 * 2);
  CHECK(a[0].family == HFamily::leastinc);
  CHECK(a[0].n == 3);
  CHECK(a[0].recursor == Recursor::spector);
  CHECK(a[0].mode == EvalMode::plain);
  CHECK(a[1].mode == EvalMode::memoized);
  CHECK(a.back().family == HFamily::prod);
  CHECK(a.back().n == 6);

  req.threads = 1;
  auto b = run_bench(req);
  CHECK(strip_time(bench_csv(a)) == strip_time(bench_csv(b)));
  auto csv = bench_csv(a);
  CHECK(csv.rfind("family,n,recursor,mode,domain_size,calls,i,valid,wall_ms\n", 0) == 0);
  CHECK(csv.find("leastinc,3,spector,plain,4,") != std::string::npos);

  auto j = bench_json(a);
  CHECK(j[0]["published_calls"] == 316);
  auto text = bench_text(a);
  CHECK(text.find("4 / 316") != std::string::npos);
}

TEST_CASE("fuel exhaustion is reported per cell") {
  BenchRequest req;
  req.families = {HFamily::prod};
  req.range = std::make_pair(Nat{6}, Nat{6});
  req.recursors = {Recursor::spector};
  req.modes = {EvalMode::plain};
  req.fuel = 10;
  auto cells = run_bench(req);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].fuel_exhausted);
  CHECK(bench_csv(cells).find("fuel_exhausted") != std::string::npos);
}
