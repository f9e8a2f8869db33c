#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <sys/resource.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "schubert/bpd.hpp"
#include "schubert/cftp.hpp"
#include "schubert/max_search.hpp"
#include "schubert/mcmc.hpp"
#include "schubert/moves.hpp"
#include "schubert/upsilon.hpp"

#ifndef SCHUBERT_VERSION
#define SCHUBERT_VERSION "0.0.0"
#endif

namespace schubert::cli {
namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

long peak_rss_kb() {
  rusage ru{};
  getrusage(RUSAGE_SELF, &ru);
  return ru.ru_maxrss;
}

std::size_t env_size(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  unsigned long long x = std::strtoull(v, &end, 10);
  if (*end != '\0' || x == 0) throw std::invalid_argument(std::string(name) + " must be a positive integer");
  return static_cast<std::size_t>(x);
}

EvalOptions eval_options_from_env() {
  EvalOptions o;
  o.memo_cap = env_size("SCHUBERT_MEMO_CAP", o.memo_cap);
  o.frontier_cap = env_size("SCHUBERT_FRONTIER_CAP", o.frontier_cap);
  return o;
}

Perm parse_cli_perm(const std::string& text) {
  Perm w = parse_perm(text);
  if (w.size() > kMaxN) throw std::invalid_argument("permutation size exceeds " + std::to_string(kMaxN));
  return w;
}

std::string dec(const mpz_class& v) { return v.get_str(); }

json perm_list(const std::vector<Perm>& ws) {
  json a = json::array();
  for (auto& w : ws) a.push_back(to_string(w));
  return a;
}

json blocks_json(const LayeredSpec& s) { return s.blocks; }

// Parses "a..b" or a single integer.
std::pair<int, int> parse_range(const std::string& s) {
  auto p = s.find("..");
  try {
    if (p == std::string::npos) {
      int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, p)), std::stoi(s.substr(p + 2))};
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad range '" + s + "'");
  }
}

// Collected by each handler for the manifest.
struct RunInfo {
  json seeds = json::array();
  json outputs = json::array();
  std::string manifest_dir;  // write manifest.json here when set
};

struct Opts {
  std::string manifest;
  int threads = 1;
  // eval / oracle
  std::string perm, formula = "cotransition", arith = "exact", mode = "bfs", kind = "reduced-words";
  bool no_strip = false, inverse = false;
  // search / enumeration
  int n = 4;
  std::string search_mode = "full", center;
  int radius = 2;
  std::size_t budget = 0;
  bool reduced = false, stuck = false;
  std::string format = "text", moves = "flips";
  // mcmc
  std::uint64_t seed = 1, burn_in = 10'000'000, thin = 100'000, samples = 1000;
  int chains = 1;
  double flip_prob = 0.75;
  std::string rect_dist = "geometric", start = "w0", out_dir = "mcmc_out";
  bool archive = false;
  // cftp
  std::string cftp_mode = "violations", scheme = "internal";
  std::uint64_t trials = 1000;
  int max_t_log2 = 24;
  // bench
  std::string suite = "layered", range = "8..12";
  bool skip_descent_rational = false;
};

int cmd_eval(const Opts& o, std::ostream& out, RunInfo&) {
  Perm w = parse_cli_perm(o.perm);
  EvalOptions eo = eval_options_from_env();
  eo.strip = !o.no_strip;
  eo.descent_use_inverse = o.inverse;
  auto t0 = Clock::now();
  EvalValue v = upsilon(w, parse_formula(o.formula), parse_arith(o.arith), parse_mode(o.mode), eo);
  json j;
  j["perm"] = to_string(w);
  j["formula"] = o.formula;
  j["arith"] = o.arith;
  j["mode"] = o.mode;
  j["value"] = v.to_decimal();
  j["exact"] = v.is_exact();
  j["elapsed_ms"] = ms_since(t0);
  out << j.dump() << '\n';
  return kExitOk;
}

int cmd_oracle(const Opts& o, std::ostream& out, RunInfo&) {
  Perm w = parse_cli_perm(o.perm);
  auto t0 = Clock::now();
  EvalValue v = o.kind == "pipe-dreams" ? upsilon_pipedream_oracle(w) : upsilon_reduced_words_oracle(w);
  json j;
  j["perm"] = to_string(w);
  j["oracle"] = o.kind;
  j["value"] = v.to_decimal();
  j["elapsed_ms"] = ms_since(t0);
  out << j.dump() << '\n';
  return kExitOk;
}

json search_json(const SearchResult& r) {
  json j;
  j["n"] = r.n;
  j["method"] = r.method;
  j["best_perm"] = to_string(r.best_perm);
  j["best_value"] = dec(r.best_value);
  if (auto s = layered_blocks(r.best_perm)) j["best_blocks"] = blocks_json(*s);
  j["argmax"] = perm_list(r.argmax);
  json levels = json::array();
  for (auto& l : r.per_level)
    levels.push_back({{"length", l.length}, {"value", dec(l.value)}, {"argmax", perm_list(l.argmax)}});
  j["per_level"] = levels;
  j["evaluated"] = r.evaluated;
  j["aborted"] = r.aborted;
  if (r.aborted) j["abort_reason"] = r.abort_reason;
  return j;
}

int cmd_max_search(const Opts& o, std::ostream& out, RunInfo&) {
  auto t0 = Clock::now();
  json j;
  bool aborted = false;
  if (o.search_mode == "full") {
    FullSearchOptions fo;
    fo.frontier_cap = env_size("SCHUBERT_FRONTIER_CAP", fo.frontier_cap);
    SearchResult r = full_search(o.n, fo);
    aborted = r.aborted;
    j = search_json(r);
  } else if (o.search_mode == "neighborhood") {
    if (o.center.empty()) throw std::invalid_argument("--center is required for neighborhood search");
    std::optional<std::size_t> budget;
    if (o.budget) budget = o.budget;
    SearchResult r = neighborhood_search(parse_cli_perm(o.center), o.radius, budget, o.threads);
    aborted = r.aborted;
    j = search_json(r);
    j["center"] = o.center;
    j["radius"] = o.radius;
  } else {
    LayeredOptimum lo = optimal_layered(o.n, o.threads);
    j["n"] = o.n;
    j["method"] = "layered";
    j["best_perm"] = to_string(layered(lo.spec));
    j["best_value"] = dec(lo.value);
    j["best_blocks"] = blocks_json(lo.spec);
    j["evaluated"] = lo.all.size();
    j["aborted"] = false;
  }
  j["elapsed_ms"] = ms_since(t0);
  out << j.dump() << '\n';
  return aborted ? kExitResourceCap : kExitOk;
}

int cmd_layered_opt(const Opts& o, std::ostream& out, RunInfo&) {
  auto t0 = Clock::now();
  LayeredOptimum lo = optimal_layered(o.n, o.threads);
  json j;
  j["n"] = o.n;
  j["blocks"] = blocks_json(lo.spec);
  j["perm"] = to_string(layered(lo.spec));
  j["length"] = layered_length(lo.spec);
  j["value"] = dec(lo.value);
  json all = json::array();
  for (auto& [s, v] : lo.all) all.push_back({{"blocks", blocks_json(s)}, {"value", dec(v)}});
  j["all"] = all;
  j["elapsed_ms"] = ms_since(t0);
  out << j.dump() << '\n';
  return kExitOk;
}

// Reflection in the main diagonal: swaps horizontal and vertical runs.
std::vector<Tile> transpose_tiles(int n, const std::vector<Tile>& t) {
  std::vector<Tile> r(t.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Tile x = t[a * n + b];
      if (x == Tile::Horizontal) x = Tile::Vertical;
      else if (x == Tile::Vertical) x = Tile::Horizontal;
      r[b * n + a] = x;
    }
  return r;
}

int cmd_enumerate(const Opts& o, std::ostream& out, RunInfo&) {
  if (o.n < 1 || o.n > 8) throw std::invalid_argument("enumerate supports 1 <= n <= 8");
  const bool reduced = o.reduced || o.stuck;
  const int n = o.n;
  std::uint64_t count = 0, self_transpose = 0;
  std::map<Perm, std::uint64_t> by_perm;
  bool first = true;
  for_each_bpd_grid(n, [&](const std::vector<Tile>& t) {
    Bpd b(n, t);
    if (reduced && !b.is_reduced()) return;
    if (o.stuck && !is_stuck(b)) return;
    ++count;
    if (transpose_tiles(n, t) == t) ++self_transpose;
    if (o.format == "perm-counts") {
      ++by_perm[b.boundary_perm()];
    } else if (o.format != "count") {
      if (!first) out << '\n';
      first = false;
      if (o.format == "text") out << b.to_text();
      else if (o.format == "asm") out << asm_csv(asm_of(b));
      else out << height_csv(height(b));
    }
  });
  if (o.format == "count" || o.format == "perm-counts") {
    json j;
    j["n"] = n;
    j["reduced"] = reduced;
    j["stuck"] = o.stuck;
    j["count"] = count;
    j["transpose_classes"] = (count + self_transpose) / 2;
    if (o.format == "perm-counts") {
      json m = json::object();
      for (auto& [w, c] : by_perm) m[to_string(w)] = c;
      j["by_perm"] = m;
    }
    out << j.dump() << '\n';
  }
  return kExitOk;
}

int cmd_connectivity(const Opts& o, std::ostream& out, RunInfo&) {
  if (o.n < 1 || o.n > 7) throw std::invalid_argument("connectivity supports 1 <= n <= 7");
  auto t0 = Clock::now();
  ConnectivityReport r = o.moves == "flips" ? flip_connectivity(o.n) : flip_droop_connectivity(o.n);
  json j;
  j["n"] = o.n;
  j["moves"] = o.moves;
  j["states"] = r.states;
  j["edges"] = r.edges;
  j["components"] = r.components;
  j["connected"] = r.connected();
  j["elapsed_ms"] = ms_since(t0);
  out << j.dump() << '\n';
  return kExitOk;
}

void write_file(const std::filesystem::path& p, const std::string& body, RunInfo& info) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << body;
  info.outputs.push_back(p.string());
}

int cmd_mcmc(const Opts& o, std::ostream& out, RunInfo& info) {
  if (o.chains < 1) throw std::invalid_argument("--chains must be >= 1");
  ChainConfig base;
  base.n = o.n;
  base.seed = o.seed;
  base.start = o.start == "id" ? StartState::RotheId : StartState::RotheW0;
  base.burn_in_steps = o.burn_in;
  base.thinning = o.thin;
  base.sample_count = o.samples;
  base.proposal.flip_probability = o.flip_prob;
  base.proposal.rect_dist = parse_rect_dist(o.rect_dist);
  base.keep_archive = o.archive;
  if (o.flip_prob < 0 || o.flip_prob > 1) throw std::invalid_argument("--flip-prob must lie in [0,1]");

  auto t0 = Clock::now();
  std::vector<std::optional<SampleStats>> per_chain(o.chains);
  std::vector<std::exception_ptr> errors(o.chains);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int c; (c = next++) < o.chains;) {
      try {
        ChainConfig cfg = base;
        cfg.chain_index = static_cast<std::uint64_t>(c);
        per_chain[c] = run_chain(cfg);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::min(o.threads, o.chains); ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  SampleStats all(o.n);
  for (auto& s : per_chain) all.merge(*s);
  info.seeds.push_back(o.seed);

  namespace fs = std::filesystem;
  fs::path dir(o.out_dir);
  fs::create_directories(dir);
  info.manifest_dir = dir.string();
  RealGrid hbar = mean_height(all);
  write_file(dir / "perm_matrix.csv", grid_csv(mean_perm_matrix(all)), info);
  write_file(dir / "height_avg.csv", grid_csv(hbar), info);
  write_file(dir / "mixed_diff.csv", grid_csv(mixed_difference(hbar)), info);
  {
    std::ostringstream os;
    os << "sample,chain,length\n";
    std::size_t k = 0;
    for (int c = 0; c < o.chains; ++c)
      for (int len : per_chain[c]->length_trace) os << k++ << ',' << c << ',' << len << '\n';
    write_file(dir / "length_trace.csv", os.str(), info);
  }
  if (o.archive) {
    std::ostringstream os;
    for (auto& w : all.archive) os << to_string(w) << '\n';
    write_file(dir / "samples.txt", os.str(), info);
  }

  json j;
  j["n"] = o.n;
  j["chains"] = o.chains;
  j["samples"] = all.B;
  j["steps"] = all.steps;
  j["accepted"] = all.accepted;
  j["acceptance_rate"] = all.steps ? static_cast<double>(all.accepted) / all.steps : 0.0;
  const double pairs = o.n * (o.n - 1) / 2.0;
  double mean_len = 0;
  for (int len : all.length_trace) mean_len += len;
  if (!all.length_trace.empty()) mean_len /= all.length_trace.size();
  j["mean_length"] = mean_len;
  j["mean_normalized_length"] = mean_len / pairs;
  try {
    j["lag1_autocorrelation"] = lag1_autocorrelation(all.length_trace);
    j["geweke_z"] = geweke_z(all.length_trace);
  } catch (const std::exception&) {
    j["lag1_autocorrelation"] = nullptr;
    j["geweke_z"] = nullptr;
  }
  j["outputs"] = info.outputs;
  j["elapsed_ms"] = ms_since(t0);
  out << j.dump() << '\n';
  return kExitOk;
}

int cmd_cftp(const Opts& o, std::ostream& out, RunInfo& info) {
  if (o.n < 2 || o.n > 6) throw std::invalid_argument("cftp-diag supports 2 <= n <= 6");
  auto t0 = Clock::now();
  RbpdSpace sp(o.n);
  const CftpScheme scheme = o.scheme == "coupled" ? CftpScheme::Coupled : CftpScheme::Internal;
  const std::uint64_t max_T = std::uint64_t{1} << o.max_t_log2;
  json j;
  j["n"] = o.n;
  j["mode"] = o.cftp_mode;
  j["states"] = sp.size();
  if (o.cftp_mode == "violations") {
    MonotonicityCounts c = count_monotonicity_violations(sp);
    j["ordered_pairs"] = c.ordered_pairs;
    j["flip_checks"] = c.flip_checks;
    j["violations"] = c.violations;
    j["violation_rate"] = c.flip_checks ? static_cast<double>(c.violations) / c.flip_checks : 0.0;
  } else if (o.cftp_mode == "sublattice") {
    std::uint64_t asms = 0, nonreduced = 0;
    for_each_bpd_grid(o.n, [&](const std::vector<Tile>& t) {
      ++asms;
      if (!Bpd(o.n, t).is_reduced()) ++nonreduced;
    });
    auto pairs = sublattice_failure_pairs(sp);
    j["asm_count"] = asms;
    j["nonreduced_asms"] = nonreduced;
    j["failure_pairs"] = pairs.size();
    json list = json::array();
    for (auto [a, b] : pairs)
      list.push_back({sp.state(a).to_text(), sp.state(b).to_text(), meet(sp.state(a), sp.state(b)).to_text()});
    j["pairs"] = list;
  } else if (o.cftp_mode == "false-coalescence") {
    Rng rng(o.seed, 0);
    info.seeds.push_back(o.seed);
    std::uint64_t fc = 0, broken = 0, sumT = 0, maxT = 0;
    for (std::uint64_t t = 0; t < o.trials; ++t) {
      FalseCoalescence r = false_coalescence_trial(sp, rng, max_T);
      fc += r.false_coalescence;
      broken += r.sandwich_broken;
      sumT += r.run.T;
      maxT = std::max(maxT, r.run.T);
    }
    Interval ci = wilson_interval(fc, o.trials, 0.99);
    j["trials"] = o.trials;
    j["false_coalescence"] = fc;
    j["rate"] = o.trials ? static_cast<double>(fc) / o.trials : 0.0;
    j["wilson99"] = {ci.lo, ci.hi};
    j["sandwich_broken"] = broken;
    j["mean_T"] = o.trials ? static_cast<double>(sumT) / o.trials : 0.0;
    j["max_T"] = maxT;
  } else {
    Rng rng(o.seed, 0);
    info.seeds.push_back(o.seed);
    BiasReport r = bias_chi_square(sp, o.trials, rng, scheme);
    j["trials"] = o.trials;
    j["scheme"] = o.scheme;
    if (scheme == CftpScheme::Coupled)
      j["warning"] = "coupled scheme skips updates rejected by either extremal chain; not a valid sampler";
    j["chi2"] = r.test.statistic;
    j["df"] = r.test.df;
    j["p_value"] = r.test.p_value;
    json cells = json::array();
    for (std::size_t k = 0; k < r.perms.size(); ++k)
      cells.push_back({{"perm", to_string(r.perms[k])}, {"observed", r.observed[k]}, {"expected", r.expected[k]}});
    j["cells"] = cells;
  }
  j["elapsed_ms"] = ms_since(t0);
  out << j.dump() << '\n';
  return kExitOk;
}

// Seconds for one evaluation, or a marker when the backend gives up.
std::string time_one(const Perm& w, Formula f, Arith a, EvalMode m, const EvalOptions& eo, std::string* value) {
  auto t0 = Clock::now();
  try {
    EvalValue v = upsilon(w, f, a, m, eo);
    double s = ms_since(t0) / 1000.0;
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << s;
    if (!v.is_exact() || (value && !value->empty() && v.to_decimal() != *value)) os << '*';
    if (value && value->empty() && a == Arith::Exact) *value = v.to_decimal();
    return os.str();
  } catch (const RationalOverflow&) {
    return "overflow";
  } catch (const ResourceCapExceeded&) {
    return "cap";
  }
}

int cmd_bench(const Opts& o, std::ostream& out, RunInfo&) {
  if (o.suite != "layered") throw std::invalid_argument("unknown bench suite '" + o.suite + "'");
  auto [lo, hi] = parse_range(o.range);
  if (lo < 1 || hi > kMaxN || lo > hi) throw std::invalid_argument("bad --n range");
  EvalOptions eo = eval_options_from_env();
  out << std::left << std::setw(4) << "n" << std::setw(16) << "layers" << std::setw(6) << "len" << std::setw(10)
      << "log2U/n^2" << std::setw(11) << "desc_dbl" << std::setw(11) << "desc_rat" << std::setw(11) << "cot_dbl"
      << std::setw(11) << "cot_exact" << std::setw(11) << "tr_dbl" << std::setw(11) << "tr_exact" << '\n';
  for (int n = lo; n <= hi; ++n) {
    LayeredOptimum opt = optimal_layered(n, o.threads);
    Perm w = layered(opt.spec);
    std::string value = dec(opt.value);
    std::string cot_exact = time_one(w, Formula::Cotransition, Arith::Exact, EvalMode::Bfs, eo, &value);
    std::string cot_dbl = time_one(w, Formula::Cotransition, Arith::Float, EvalMode::Bfs, eo, &value);
    std::string desc_dbl = time_one(w, Formula::Descent, Arith::Float, EvalMode::Bfs, eo, &value);
    std::string desc_rat = o.skip_descent_rational
                               ? "skipped"
                               : time_one(w, Formula::Descent, Arith::Rational, EvalMode::Bfs, eo, &value);
    std::string tr_dbl = time_one(w, Formula::Transition, Arith::Float, EvalMode::Dfs, eo, &value);
    std::string tr_exact = time_one(w, Formula::Transition, Arith::Exact, EvalMode::Dfs, eo, &value);
    std::ostringstream l2;
    l2 << std::fixed << std::setprecision(3)
       << (std::log2(opt.value.get_d()) / (static_cast<double>(n) * n));
    out << std::left << std::setw(4) << n << std::setw(16) << opt.spec.to_string() << std::setw(6)
        << layered_length(opt.spec) << std::setw(10) << l2.str() << std::setw(11) << desc_dbl << std::setw(11)
        << desc_rat << std::setw(11) << cot_dbl << std::setw(11) << cot_exact << std::setw(11) << tr_dbl
        << std::setw(11) << tr_exact << '\n';
  }
  out << "times in seconds; * marks a value that is not the exact integer\n";
  return kExitOk;
}

json config_echo(CLI::App* sub) {
  json c = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help") continue;
    if (opt->get_expected_max() == 0) c[name] = opt->count() > 0;
    else c[name] = opt->count() ? opt->as<std::string>() : opt->get_default_str();
  }
  return c;
}

void emit_manifest(const std::string& command, CLI::App* sub, const Opts& o, const RunInfo& info,
                   const std::string& started, int code, std::ostream& err) {
  json m;
  m["command"] = command;
  m["config"] = config_echo(sub);
  m["seeds"] = info.seeds;
  m["version"] = SCHUBERT_VERSION;
  m["started_at"] = started;
  m["finished_at"] = utc_now();
  m["peak_rss_kb"] = peak_rss_kb();
  m["outputs"] = info.outputs;
  m["exit_code"] = code;
  std::string path = o.manifest;
  if (path.empty() && !info.manifest_dir.empty()) path = (std::filesystem::path(info.manifest_dir) / "manifest.json").string();
  if (path.empty()) {
    err << m.dump() << '\n';
    return;
  }
  std::ofstream f(path, std::ios::binary);
  f << m.dump(2) << '\n';
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Principal specializations of Schubert polynomials and bumpless pipe dream sampling", "schubert"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", SCHUBERT_VERSION);
  Opts o;

  auto add_manifest = [&](CLI::App* s) {
    s->add_option("--manifest", o.manifest, "Write the run manifest to this file instead of stderr");
  };
  auto add_threads = [&](CLI::App* s) {
    s->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1, 256));
  };

  auto* eval = app.add_subcommand("eval", "Evaluate one permutation");
  eval->add_option("--perm", o.perm, "One-line notation, comma separated")->required();
  eval->add_option("--formula", o.formula)->check(CLI::IsMember({"descent", "transition", "cotransition"}));
  eval->add_option("--arith", o.arith)->check(CLI::IsMember({"exact", "rational", "float"}));
  eval->add_option("--mode", o.mode)->check(CLI::IsMember({"bfs", "dfs"}));
  eval->add_flag("--no-strip", o.no_strip, "Keep trailing fixed points");
  eval->add_flag("--inverse-descents", o.inverse, "Descent recursion over descents of the inverse");
  add_manifest(eval);

  auto* oracle = app.add_subcommand("oracle", "Brute-force reference value");
  oracle->add_option("--perm", o.perm)->required();
  oracle->add_option("--kind", o.kind)->check(CLI::IsMember({"reduced-words", "pipe-dreams"}));
  add_manifest(oracle);

  auto* search = app.add_subcommand("max-search", "Search for a maximizer of the specialization");
  search->add_option("--n", o.n)->check(CLI::Range(1, kMaxN));
  search->add_option("--mode", o.search_mode)->check(CLI::IsMember({"full", "layered", "neighborhood"}));
  search->add_option("--center", o.center);
  search->add_option("--radius", o.radius)->check(CLI::Range(1, 8));
  search->add_option("--budget", o.budget, "Evaluation budget for neighborhood search (0 = none)");
  add_threads(search);
  add_manifest(search);

  auto* lay = app.add_subcommand("layered-opt", "Best layered permutation of size n");
  lay->add_option("--n", o.n)->required()->check(CLI::Range(1, kMaxN));
  add_threads(lay);
  add_manifest(lay);

  auto* en = app.add_subcommand("enumerate", "Enumerate bumpless pipe dreams of size n");
  en->add_option("--n", o.n)->required()->check(CLI::Range(1, 8));
  en->add_flag("--reduced", o.reduced, "Only reduced ones");
  en->add_flag("--stuck", o.stuck, "Only stuck reduced ones");
  en->add_option("--format", o.format)->check(CLI::IsMember({"text", "asm", "height", "count", "perm-counts"}));
  add_manifest(en);

  auto* conn = app.add_subcommand("connectivity", "Connectivity of the move graph on reduced BPDs");
  conn->add_option("--n", o.n)->required()->check(CLI::Range(1, 7));
  conn->add_option("--moves", o.moves)->check(CLI::IsMember({"flips", "flips+droops"}));
  add_manifest(conn);

  auto* mc = app.add_subcommand("mcmc-sample", "Sample reduced BPDs by Markov chain");
  mc->add_option("--n", o.n)->required()->check(CLI::Range(2, kMaxPermN));
  mc->add_option("--seed", o.seed);
  mc->add_option("--chains", o.chains)->check(CLI::Range(1, 1 << 16));
  mc->add_option("--burn-in", o.burn_in);
  mc->add_option("--thin", o.thin)->check(CLI::PositiveNumber);
  mc->add_option("--samples", o.samples, "Thinned samples per chain");
  mc->add_option("--rect-dist", o.rect_dist)
      ->check(CLI::IsMember({"geometric", "uniform", "log-uniform", "reverse-log-uniform"}));
  mc->add_option("--start", o.start)->check(CLI::IsMember({"w0", "id"}));
  mc->add_option("--flip-prob", o.flip_prob);
  mc->add_option("--out-dir", o.out_dir);
  mc->add_flag("--archive", o.archive, "Write sampled boundary permutations to samples.txt");
  add_threads(mc);
  add_manifest(mc);

  auto* cf = app.add_subcommand("cftp-diag", "Diagnostics of naive monotone coupling from the past");
  cf->add_option("--n", o.n)->required()->check(CLI::Range(2, 6));
  cf->add_option("--mode", o.cftp_mode)
      ->check(CLI::IsMember({"violations", "sublattice", "false-coalescence", "bias"}));
  cf->add_option("--trials", o.trials);
  cf->add_option("--seed", o.seed);
  cf->add_option("--scheme", o.scheme)->check(CLI::IsMember({"internal", "coupled"}));
  cf->add_option("--max-t-log2", o.max_t_log2, "Give up when T would exceed 2^k")->check(CLI::Range(1, 40));
  add_manifest(cf);

  auto* bench = app.add_subcommand("bench", "Timing table over optimal layered permutations");
  bench->add_option("--suite", o.suite)->check(CLI::IsMember({"layered"}));
  bench->add_option("--n", o.range, "Range a..b");
  bench->add_flag("--skip-descent-rational", o.skip_descent_rational);
  add_threads(bench);
  add_manifest(bench);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  const std::string started = utc_now();
  RunInfo info;
  int code = kExitOk;
  try {
    if (name == "eval") code = cmd_eval(o, out, info);
    else if (name == "oracle") code = cmd_oracle(o, out, info);
    else if (name == "max-search") code = cmd_max_search(o, out, info);
    else if (name == "layered-opt") code = cmd_layered_opt(o, out, info);
    else if (name == "enumerate") code = cmd_enumerate(o, out, info);
    else if (name == "connectivity") code = cmd_connectivity(o, out, info);
    else if (name == "mcmc-sample") code = cmd_mcmc(o, out, info);
    else if (name == "cftp-diag") code = cmd_cftp(o, out, info);
    else code = cmd_bench(o, out, info);
  } catch (const ResourceCapExceeded& e) {
    err << "error: " << e.what() << '\n';
    code = kExitResourceCap;
  } catch (const RationalOverflow& e) {
    err << "error: " << e.what() << '\n';
    code = kExitResourceCap;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    code = kExitResourceCap;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n' << sub->help();
    code = kExitUsage;
  }
  emit_manifest(name, sub, o, info, started, code, err);
  return code;
}

}  // namespace schubert::cli
