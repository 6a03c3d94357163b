// barrec: counterexamples, benchmarks, property suites and thread traces.
//
// Exit codes: 0 ok, 1 usage, 2 DSL parse error, 3 fuel exhausted,
// 4 verification failure.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "barrec/bench.hpp"
#include "barrec/hdsl.hpp"
#include "barrec/noinjection.hpp"
#include "barrec/suites.hpp"
#include "barrec/threads.hpp"

using namespace barrec;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitFuel = 3;
constexpr int kExitVerify = 4;

struct Options {
  std::string builtin;
  std::string h;
  std::string recursor = "both";
  std::string mode = "plain";
  std::optional<std::uint64_t> fuel;
  std::string format = "text";
  std::string output;
  std::string n_range;
  std::vector<std::string> families;
  std::string suite = "all";
  std::uint64_t cases = 0;
  std::uint64_t seed = 1;
  bool total = false;
  std::string u = "{}";
  std::optional<Nat> length;
  std::string control;
  unsigned threads = 0;
};

std::uint64_t resolve_fuel(const Options& o) {
  if (o.fuel) return *o.fuel;
  if (const char* env = std::getenv("BARREC_FUEL")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring unparsable BARREC_FUEL=" << env << '\n';
    }
  }
  return kDefaultFuel;
}

std::vector<Recursor> resolve_recursors(const std::string& r) {
  if (r == "both") return {Recursor::spector, Recursor::symmetric};
  return {parse_recursor(r)};
}

EvalMode parse_mode(const std::string& m) { return m == "memoized" ? EvalMode::memoized : EvalMode::plain; }

std::pair<Nat, Nat> parse_range(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) {
    Nat n = std::stoull(s);
    return {n, n};
  }
  Nat lo = std::stoull(s.substr(0, dots));
  Nat hi = std::stoull(s.substr(dots + 2));
  if (hi < lo) throw std::invalid_argument("empty range " + s);
  return {lo, hi};
}

// Everything goes through one sink so --output works for every command.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void print_parse_error(const std::string& source, const hdsl::ParseError& e) {
  std::cerr << "error: " << e.what() << '\n' << "  " << source << '\n' << "  " << std::string(e.offset(), ' ') << "^\n";
}

struct HSource {
  std::string family;  // "dsl" for parsed sources
  Nat n = 0;
  Functional H;
};

HSource resolve_h(const Options& o) {
  if (!o.builtin.empty() == !o.h.empty()) throw CLI::ValidationError("solve needs exactly one of --builtin, --h");
  if (!o.builtin.empty()) {
    auto colon = o.builtin.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--builtin expects family:n");
    HFamily f = parse_family(o.builtin.substr(0, colon));
    Nat n = std::stoull(o.builtin.substr(colon + 1));
    return {to_string(f), n, builtin_h(f, n)};
  }
  return {"dsl", 0, hdsl::as_functional(hdsl::parse(o.h))};
}

std::string join(const std::vector<Nat>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + std::to_string(v[k]);
  return s;
}

int cmd_solve(const Options& o) {
  HSource src;
  try {
    src = resolve_h(o);
  } catch (const hdsl::ParseError& e) {
    print_parse_error(o.h, e);
    return kExitParse;
  } catch (const hdsl::UnboundVariable& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }
  const std::uint64_t fuel = resolve_fuel(o);
  const EvalMode mode = parse_mode(o.mode);
  Sink sink(o.output);
  std::ostream& out = sink.out();

  json rows = json::array();
  std::string csv = "family,n,recursor,mode,domain_size,calls,i,valid,wall_ms\n";
  std::ostringstream text;
  bool all_valid = true;
  for (Recursor r : resolve_recursors(o.recursor)) {
    auto t0 = std::chrono::steady_clock::now();
    Counterexample c;
    try {
      c = counterexample(src.H, r, fuel, mode);
    } catch (const FuelExhausted& e) {
      std::cerr << "error: " << to_string(r) << ": " << e.what() << " (fuel " << fuel << ")\n";
      return kExitFuel;
    }
    bool valid = verify_counterexample(src.H, c);
    all_valid = all_valid && valid;
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    json j = report_json(src.family, src.n, r, c, valid);
    j["mode"] = to_string(mode);
    j["wall_ms"] = ms;
    rows.push_back(std::move(j));

    char ms_buf[32];
    std::snprintf(ms_buf, sizeof ms_buf, "%.3f", ms);
    csv += src.family + "," + std::to_string(src.n) + "," + to_string(r) + "," + to_string(mode) + "," +
           std::to_string(c.carrier_size) + "," + std::to_string(c.metrics.calls) + "," + std::to_string(c.i) +
           "," + (valid ? "true" : "false") + "," + ms_buf + "\n";

    text << to_string(r) << ": domain size " << c.carrier_size << ", calls " << c.metrics.calls << " (" << to_string(mode)
         << "), i = " << c.i << ", " << (valid ? "valid" : "INVALID") << '\n'
         << "  alpha: " << join(c.alpha_prefix) << " ...\n"
         << "  beta:  " << join(c.beta_prefix) << " ...\n";
  }
  if (o.format == "json")
    out << rows.dump(2) << '\n';
  else if (o.format == "csv")
    out << csv;
  else
    out << text.str();
  return all_valid ? 0 : kExitVerify;
}

int cmd_bench(const Options& o) {
  BenchRequest req;
  if (o.families.empty() || (o.families.size() == 1 && o.families[0] == "all"))
    req.families = all_families();
  else
    for (const auto& f : o.families) req.families.push_back(parse_family(f));
  if (!o.n_range.empty()) req.range = parse_range(o.n_range);
  req.recursors = resolve_recursors(o.recursor);
  if (o.mode == "both" || o.mode.empty())
    req.modes = {EvalMode::plain, EvalMode::memoized};
  else
    req.modes = {parse_mode(o.mode)};
  req.fuel = resolve_fuel(o);
  req.threads = o.threads;
  auto cells = run_bench(req);

  Sink sink(o.output);
  std::ostream& out = sink.out();
  if (o.format == "csv")
    out << bench_csv(cells);
  else if (o.format == "json")
    out << bench_json(cells).dump(2) << '\n';
  else
    out << bench_text(cells);
  for (const auto& c : cells) {
    if (!c.fuel_exhausted && !c.valid) return kExitVerify;
  }
  return 0;
}

int cmd_check(const Options& o) {
  std::vector<std::string> names;
  if (o.suite == "all")
    names = suite_names();
  else
    names = {o.suite};
  Sink sink(o.output);
  std::ostream& out = sink.out();
  json all = json::array();
  bool ok = true;
  for (const auto& name : names) {
    SuiteResult r = run_suite(name, o.seed, o.cases);
    ok = ok && r.ok();
    if (o.format == "json") {
      all.push_back(json_of(r));
      continue;
    }
    out << r.name << ": " << r.passed() << " passed, " << r.failed() << " failed\n";
    for (const auto& t : r.tallies) out << "  " << t.label << ": " << t.passed << "/" << (t.passed + t.failed) << '\n';
    for (const auto& f : r.failures) out << "  FAIL " << f << '\n';
  }
  if (o.format == "json") out << all.dump(2) << '\n';
  return ok ? 0 : kExitVerify;
}

int cmd_thread(const Options& o) {
  hdsl::ExprPtr expr;
  try {
    expr = hdsl::parse(o.control);
  } catch (const hdsl::ParseError& e) {
    print_parse_error(o.control, e);
    return kExitParse;
  } catch (const hdsl::UnboundVariable& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }
  Control<Nat> phi = [expr](const InfSeq<Nat>& a) { return hdsl::eval(expr, a); };
  PartialFn<Nat> u = partial_from_json<Nat>(json::parse(o.u));
  EvalContext ctx(resolve_fuel(o));

  ThreadTrace<Nat> trace;
  if (o.total) {
    // [α]_i with α = û: always extends, re-hitting a defined index is a no-op
    InfSeq<Nat> alpha = extend_hat(u, Nat{0});
    Nat len = o.length.value_or(u.size() + 1);
    for (Nat k = 0; k < len; ++k) {
      ctx.spend();
      Nat n = phi(extend_hat(trace.final, Nat{0}));
      trace.steps.push_back({n, true, alpha(n)});
      trace.final = update(trace.final, n, alpha(n));
    }
  } else {
    trace = trace_thread_of_partial(phi, u, o.length.value_or(u.size() + 1), Nat{0}, &ctx);
  }
  bool thread = is_thread(phi, u, Nat{0}, &ctx);

  Sink sink(o.output);
  std::ostream& out = sink.out();
  if (o.format == "json") {
    json j = json_of(trace);
    j["is_thread"] = thread;
    j["stabilized"] = trace.stabilized;
    out << j.dump(2) << '\n';
    return 0;
  }
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const auto& s = trace.steps[k];
    out << "step " << k << ": n = " << s.index;
    if (s.defined)
      out << ", value " << *s.value << '\n';
    else
      out << ", undefined in u\n";
  }
  if (trace.stabilized) out << "stabilized after " << trace.steps.size() << " steps\n";
  out << "final: " << json_of(trace.final).dump() << '\n';
  out << "u is " << (thread ? "" : "not ") << "a thread\n";
  return 0;
}

int cmd_interdef(const Options& o) {
  std::uint64_t cases = o.cases ? o.cases : 200;
  auto records = interdef_records(o.seed, cases);
  json instances = json::array();
  std::uint64_t agree_br = 0, agree_sbr = 0, total_br = 0, total_sbr = 0;
  for (const auto& r : records) {
    json j;
    j["case"] = r.case_index;
    j["direction"] = r.direction;
    j["control"] = r.control;
    j["oracle"] = r.oracle;
    j["translation"] = r.translation;
    j["oracle_calls"] = r.oracle_calls;
    j["translation_calls"] = r.translation_calls;
    j["agree"] = r.agree;
    if (!r.error.empty()) j["error"] = r.error;
    instances.push_back(std::move(j));
    bool br_dir = r.direction == "br_from_sbr";
    (br_dir ? total_br : total_sbr)++;
    if (r.agree) (br_dir ? agree_br : agree_sbr)++;
  }
  json out;
  out["seed"] = o.seed;
  out["cases"] = cases;
  out["summary"] = {{"br_from_sbr", {{"agree", agree_br}, {"total", total_br}}},
                    {"sbr_from_br", {{"agree", agree_sbr}, {"total", total_sbr}}},
                    {"comparisons", records.size()},
                    {"agree", agree_br + agree_sbr}};
  out["instances"] = std::move(instances);
  Sink sink(o.output);
  sink.out() << out.dump(2) << '\n';
  return agree_br + agree_sbr == records.size() ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spector and symmetric bar recursion: counterexamples, benchmarks and checks"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help and exit");  // -h would clash with --h
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--fuel", o.fuel, "call budget (default $BARREC_FUEL or 10000000)");
    sub->add_option("--format", o.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
    sub->add_option("--output,-o", o.output, "write to a file instead of stdout");
  };

  auto* solve = app.add_subcommand("solve", "extract a counterexample to injectivity of H");
  solve->add_option("--builtin", o.builtin, "family:n, family one of prod, prodpow, leastinc, contrived");
  solve->add_option("--h", o.h, "H in the expression language, e.g. \"prod i < 4 : 1 + g(i)\"");
  solve->add_option("--recursor", o.recursor)->check(CLI::IsMember({"spector", "symmetric", "both"}));
  solve->add_option("--mode", o.mode)->check(CLI::IsMember({"plain", "memoized"}));
  add_common(solve);

  auto* bench = app.add_subcommand("bench", "carrier sizes and call counts over the builtin families");
  bench->add_option("--family", o.families, "families to run (default all)");
  bench->add_option("--n", o.n_range, "a..b (default: each family's table range)");
  bench->add_option("--recursor", o.recursor)->check(CLI::IsMember({"spector", "symmetric", "both"}));
  bench->add_option("--mode", o.mode, "plain, memoized or both")->check(CLI::IsMember({"plain", "memoized", "both"}));
  bench->add_option("--threads", o.threads, "worker threads (default: hardware concurrency)");
  add_common(bench);

  auto* check = app.add_subcommand("check", "run the seeded property suites");
  std::vector<std::string> suite_choices = suite_names();
  suite_choices.push_back("all");
  check->add_option("--suite", o.suite)->check(CLI::IsMember(suite_choices));
  check->add_option("--cases", o.cases, "cases per suite (default: suite size)");
  check->add_option("--seed", o.seed);
  add_common(check);

  auto* thread = app.add_subcommand("thread", "trace the thread of a partial function");
  thread->add_option("--control", o.control, "control functional in the expression language")->required();
  thread->add_option("--u", o.u, "partial function as JSON, e.g. {\"1\":1,\"2\":2}");
  thread->add_option("--length", o.length, "number of steps (default |dom u| + 1)");
  thread->add_flag("--total", o.total, "trace the total sequence u extended by 0 instead");
  add_common(thread);

  auto* interdef = app.add_subcommand("interdef-test", "compare both translations against their oracles");
  interdef->add_option("--cases", o.cases, "instances per direction (default 200)");
  interdef->add_option("--seed", o.seed);
  add_common(interdef);

  bench->callback([&] { o.mode = bench->count("--mode") ? o.mode : "both"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*solve) return cmd_solve(o);
    if (*bench) return cmd_bench(o);
    if (*check) return cmd_check(o);
    if (*thread) return cmd_thread(o);
    if (*interdef) return cmd_interdef(o);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const FuelExhausted& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFuel;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
