// qwalk: compare graphs with non-interacting multi-particle quantum walks.
//
// Exit status: 0 not distinguished (or success for report commands),
// 1 distinguished, 2 invalid flags, 3 unreadable input, 4 mismatched
// vertex counts, 5 resource budget exceeded, 6 internal error.

#include "qwalk/bounds.hpp"
#include "qwalk/fingerprint.hpp"
#include "qwalk/fingerprint_store.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/widgets.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace qwalk;

namespace {

constexpr int kSchemaVersion = 1;

// Distinguished pairs normally sit far above the threshold; a delta just
// above it deserves a second look at a different bin width.
constexpr double kMarginalDelta = 1e-4;

bool marginal(double delta, double threshold) { return delta > threshold && delta < kMarginalDelta; }

enum Exit : int {
  kNotDistinguished = 0,
  kDistinguished = 1,
  kBadFlags = 2,
  kUnreadableInput = 3,
  kMismatchedN = 4,
  kOverBudget = 5,
  kInternal = 6,
};

struct CliError : std::runtime_error {
  int code;
  CliError(int c, const std::string &what) : std::runtime_error(what), code(c) {}
};

struct WalkFlags {
  int particles = 3;
  std::string stats = "boson";
  double time = 1.0;
  double bin_width = kDefaultBinWidth;
  double threshold = kDefaultThreshold;
  double budget = 1e10;
};

void add_walk_flags(CLI::App &cmd, WalkFlags &f, const std::string &default_stats) {
  f.stats = default_stats;
  cmd.add_option("-p,--particles", f.particles, "Number of walkers")->check(CLI::PositiveNumber)->capture_default_str();
  cmd.add_option("--stats", f.stats, "boson, fermion" + std::string(default_stats == "both" ? " or both" : ""))
      ->capture_default_str();
  cmd.add_option("--time", f.time, "Evolution time")->capture_default_str();
  cmd.add_option("--bin-width", f.bin_width, "Magnitude bin width")->capture_default_str();
  cmd.add_option("--threshold", f.threshold, "Delta above which graphs count as distinguished")->capture_default_str();
  cmd.add_option("--budget", f.budget, "Maximum streamed Green's functions")->capture_default_str();
}

std::vector<Statistics> statistics_of(const std::string &s, bool allow_both) {
  if (allow_both && s == "both")
    return {Statistics::boson, Statistics::fermion};
  try {
    return {parse_statistics(s)};
  } catch (const std::invalid_argument &e) {
    throw CliError(kBadFlags, e.what());
  }
}

void check_walk_flags(const WalkFlags &f) {
  if (!std::isfinite(f.time))
    throw CliError(kBadFlags, "--time must be finite");
  if (!(f.bin_width >= kMinBinWidth && f.bin_width <= kMaxBinWidth))
    throw CliError(kBadFlags, "--bin-width must lie in [1e-12, 1e-2]");
  if (!(f.threshold >= 0))
    throw CliError(kBadFlags, "--threshold must be non-negative");
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// A path to a graph6 file, or an inline graph6 record.
std::vector<Graph> read_input(const std::string &arg) {
  std::error_code ec;
  if (fs::is_regular_file(arg, ec)) {
    try {
      return read_graph6_file(arg);
    } catch (const std::exception &e) {
      throw CliError(kUnreadableInput, arg + ": " + e.what());
    }
  }
  try {
    return {decode_graph6(arg)};
  } catch (const Graph6Error &e) {
    throw CliError(kUnreadableInput, "'" + arg + "' is neither a readable file nor a graph6 record (" + e.what() + ")");
  }
}

void check_budget(const std::vector<Graph> &graphs, int particles, std::size_t walks, double budget) {
  if (graphs.empty())
    return;
  const int n = graphs.front().n();
  double dim = 0;
  try {
    dim = static_cast<double>(basis_dimension(n, {particles, Statistics::boson}));
  } catch (const std::overflow_error &) {
    dim = INFINITY;
  }
  const double elements = dim * dim * static_cast<double>(graphs.size() * walks);
  if (elements > budget) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "refusing to stream %.3g Green's functions (%d particles on %d vertices); budget is %.3g, raise "
                  "it with --budget",
                  elements, particles, n, budget);
    throw CliError(kOverBudget, buf);
  }
}

void emit(const json &doc, const std::string &out) {
  if (out.empty() || out == "-") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f)
    throw CliError(kUnreadableInput, "cannot write " + out);
  f << doc.dump(2) << "\n";
}

std::ofstream open_csv(const std::string &path) {
  std::ofstream f(path);
  if (!f)
    throw CliError(kUnreadableInput, "cannot write " + path);
  return f;
}

json walk_json(const WalkSpec &s) {
  return {{"particles", s.particles}, {"statistics", std::string(to_string(s.statistics))}, {"time", s.time}};
}

json graph_json(const Graph &g) {
  json j = {{"graph6", encode_graph6(g)}, {"vertices", g.n()}, {"hash", hex(content_hash(g))}};
  if (auto p = detect_srg(g))
    j["srg"] = {p->n, p->k, p->lambda, p->mu};
  return j;
}

std::string cache_dir(const std::string &flag) {
  if (!flag.empty())
    return flag;
  if (const char *env = std::getenv("QWALK_CACHE_DIR"); env && *env)
    return env;
  return ".qwalk-cache";
}

// ---------------------------------------------------------------- compare

struct CompareArgs {
  std::vector<std::string> inputs;
  WalkFlags walk;
  int jobs = 1;
  std::string out;
};

int run_compare(const CompareArgs &a) {
  check_walk_flags(a.walk);
  const Statistics st = statistics_of(a.walk.stats, false).front();
  std::vector<Graph> graphs;
  for (const auto &in : a.inputs)
    for (auto &g : read_input(in))
      graphs.push_back(std::move(g));
  if (graphs.size() != 2)
    throw CliError(kUnreadableInput, "compare needs exactly two graphs, got " + std::to_string(graphs.size()));
  if (graphs[0].n() != graphs[1].n())
    throw CliError(kMismatchedN, "graphs have different vertex counts (" + std::to_string(graphs[0].n()) + " vs " +
                                     std::to_string(graphs[1].n()) + ")");
  const WalkSpec spec{a.walk.particles, st, a.walk.time};
  try {
    spec.validate(graphs[0].n());
  } catch (const std::invalid_argument &e) {
    throw CliError(kBadFlags, e.what());
  }
  check_budget(graphs, spec.particles, 1, a.walk.budget);

  const auto r = compare(graphs[0], graphs[1], spec, a.walk.bin_width, a.walk.threshold, a.jobs);
  json doc = {{"schema_version", kSchemaVersion},
              {"command", "compare"},
              {"graph_a", graph_json(graphs[0])},
              {"graph_b", graph_json(graphs[1])},
              {"walk", walk_json(spec)},
              {"bin_width", r.bin_width},
              {"threshold", r.threshold},
              {"comparable", r.comparable},
              {"delta", r.delta},
              {"distinguished", r.distinguished},
              {"marginal", marginal(r.delta, r.threshold)},
              {"elapsed_seconds", r.seconds}};
  if (marginal(r.delta, r.threshold))
    std::cerr << "qwalk: warning: delta " << r.delta << " is within two decades of the threshold\n";
  emit(doc, a.out);
  return r.distinguished ? kDistinguished : kNotDistinguished;
}

// ----------------------------------------------------------------- family

struct FamilyArgs {
  std::string input;
  WalkFlags walk;
  int jobs = 1;
  bool resume = false;
  std::string cache;
  std::string out;
  std::string csv;
};

int run_family(const FamilyArgs &a) {
  check_walk_flags(a.walk);
  const auto stats = statistics_of(a.walk.stats, true);
  const auto graphs = read_input(a.input);
  if (graphs.empty())
    throw CliError(kUnreadableInput, a.input + ": no graphs");
  for (const auto &g : graphs)
    if (g.n() != graphs.front().n())
      throw CliError(kMismatchedN, a.input + ": family file mixes vertex counts");
  const int n = graphs.front().n();
  try {
    WalkSpec{a.walk.particles, stats.back(), a.walk.time}.validate(n);
  } catch (const std::invalid_argument &e) {
    throw CliError(kBadFlags, e.what());
  }
  check_budget(graphs, a.walk.particles, stats.size(), a.walk.budget);

  std::optional<FingerprintStore> store;
  if (a.resume || !a.cache.empty() || std::getenv("QWALK_CACHE_DIR"))
    store.emplace(cache_dir(a.cache));

  const auto t0 = std::chrono::steady_clock::now();
  struct Task {
    std::size_t graph;
    Statistics st;
  };
  std::vector<Task> tasks;
  for (auto st : stats)
    for (std::size_t i = 0; i < graphs.size(); ++i)
      tasks.push_back({i, st});
  std::vector<std::optional<Fingerprint>> prints(tasks.size());
  std::atomic<std::size_t> next{0}, built{0}, hits{0};
  std::mutex error_lock;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t t; (t = next++) < tasks.size();) {
      try {
        const Graph &g = graphs[tasks[t].graph];
        const WalkSpec spec{a.walk.particles, tasks[t].st, a.walk.time};
        const FingerprintKey key{provenance_of(g, spec), a.walk.bin_width};
        if (store && a.resume) {
          if (auto fp = store->load(key)) {
            prints[t] = std::move(fp);
            ++hits;
            continue;
          }
        }
        prints[t] = build_fingerprint(g, spec, a.walk.bin_width);
        ++built;
        if (store)
          store->store(*prints[t]);
      } catch (...) {
        std::lock_guard lock(error_lock);
        if (!error)
          error = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(a.jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j)
    pool.emplace_back(worker);
  worker();
  for (auto &t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);

  const std::size_t g = graphs.size();
  const std::size_t comparisons = g * (g - 1) / 2;
  json pairs = json::array();
  json failures = json::object();
  std::size_t marginal_pairs = 0;
  for (std::size_t s = 0; s < stats.size(); ++s) {
    std::size_t fails = 0;
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = i + 1; j < g; ++j) {
        const double d = delta(*prints[s * g + i], *prints[s * g + j]);
        const bool distinguished = d > a.walk.threshold;
        fails += !distinguished;
        marginal_pairs += marginal(d, a.walk.threshold);
        pairs.push_back({{"a", i}, {"b", j}, {"statistics", std::string(to_string(stats[s]))}, {"delta", d},
                         {"distinguished", distinguished}});
      }
    failures[std::string(to_string(stats[s]))] = fails;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const auto params = detect_srg(graphs.front());
  const std::string family = params ? to_string(*params) : "n=" + std::to_string(n);
  json doc = {{"schema_version", kSchemaVersion},
              {"command", "family"},
              {"family", family},
              {"input", a.input},
              {"particles", a.walk.particles},
              {"time", a.walk.time},
              {"bin_width", a.walk.bin_width},
              {"threshold", a.walk.threshold},
              {"graphs", g},
              {"comparisons", comparisons},
              {"failures", failures},
              {"fingerprints_built", built.load()},
              {"cache_hits", hits.load()},
              {"marginal_pairs", marginal_pairs},
              {"elapsed_seconds", seconds},
              {"pairs", pairs}};
  if (marginal_pairs > 0)
    std::cerr << "qwalk: warning: " << marginal_pairs << " pair(s) have delta within two decades of the threshold\n";
  emit(doc, a.out);

  if (!a.csv.empty()) {
    auto f = open_csv(a.csv);
    f << "schema_version,family,particles,graphs,comparisons,boson_failures,fermion_failures\n";
    auto fail_cell = [&](const char *key) { return failures.contains(key) ? failures[key].dump() : std::string(); };
    f << kSchemaVersion << ",\"" << family << "\"," << a.walk.particles << "," << g << "," << comparisons << ","
      << fail_cell("boson") << "," << fail_cell("fermion") << "\n";
  }
  return kNotDistinguished;
}

// ---------------------------------------------------------------- widgets

struct WidgetArgs {
  std::string input;
  std::string widget;
  int census = 0;
  bool triples = false;
  double time = 1.0;
  int jobs = 1;
  std::string out;
  std::string csv;
};

int run_widgets(const WidgetArgs &a) {
  if (a.widget.empty() && a.census == 0 && !a.triples)
    throw CliError(kBadFlags, "choose at least one of --widget, --census, --triples");
  std::optional<Widget> widget;
  if (!a.widget.empty()) {
    try {
      widget = Widget::parse(a.widget);
    } catch (const std::invalid_argument &e) {
      throw CliError(kBadFlags, e.what());
    }
    if (widget->particles() > kMaxCountedWidgetParticles)
      throw CliError(kBadFlags, "widget counting supports at most 4 particles");
  }
  if (a.census < 0 || a.census > 3)
    throw CliError(kBadFlags, "--census takes a particle count between 1 and 3");

  const auto graphs = read_input(a.input);
  std::optional<std::ofstream> csv;
  if (!a.csv.empty()) {
    csv = open_csv(a.csv);
    *csv << "schema_version,graph,kind,key,multiplicity\n";
  }
  json rows = json::array();
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const Graph &g = graphs[i];
    json entry = graph_json(g);
    entry["index"] = i;
    const auto params = detect_srg(g);
    std::optional<PropagatorCoefficients> coeffs;
    if (params) {
      try {
        coeffs = propagator_coefficients(*params, a.time);
      } catch (const DegenerateSpectrumError &) {
      }
    }
    if (widget) {
      const auto c = count_widget(g, *widget, a.jobs);
      json w = {{"widget", widget->to_string()}, {"multiplicity", c.multiplicity}};
      if (coeffs)
        for (auto st : {Statistics::boson, Statistics::fermion})
          w[std::string("abs_value_") + std::string(to_string(st))] = std::abs(widget_value(*widget, *coeffs, st));
      if (params && widget->particles() == 2 && *widget == Widget::parse("empty2"))
        w["closed_form"] = two_particle_empty_count(*params);
      entry["count"] = w;
      if (csv)
        *csv << kSchemaVersion << "," << i << ",widget," << widget->to_string() << "," << c.multiplicity << "\n";
    }
    if (a.census > 0) {
      json census = json::array();
      for (const auto &[w, m] : widget_census(g, a.census)) {
        census.push_back({{"widget", w.to_string()}, {"multiplicity", m}});
        if (csv)
          *csv << kSchemaVersion << "," << i << ",census," << w.to_string() << "," << m << "\n";
      }
      entry["census"] = census;
    }
    if (a.triples) {
      json t = json::object();
      for (const auto &[k, m] : triple_neighbor_census(g)) {
        t[std::to_string(k)] = m;
        if (csv)
          *csv << kSchemaVersion << "," << i << ",triples," << k << "," << m << "\n";
      }
      entry["triple_common_neighbors"] = t;
    }
    rows.push_back(entry);
  }
  emit({{"schema_version", kSchemaVersion}, {"command", "widgets"}, {"input", a.input}, {"graphs", rows}}, a.out);
  return kNotDistinguished;
}

// ----------------------------------------------------------------- bounds

struct BoundArgs {
  int particles = 3;
  std::int64_t vertices = 64;
  std::optional<double> x_p;
  std::int64_t scan_to = 0;
  std::string out;
  std::string csv;
};

int run_bounds(const BoundArgs &a) {
  BoundReport r;
  try {
    r = ratio_lower_bound_log(a.particles, a.vertices, a.x_p);
  } catch (const std::invalid_argument &e) {
    throw CliError(kBadFlags, e.what());
  }
  const auto classes = widget_class_count_bounds(a.particles);
  json doc = {{"schema_version", kSchemaVersion},
              {"command", "bounds"},
              {"particles", a.particles},
              {"vertices", a.vertices},
              {"evolution_operator_elements", evolution_operator_element_count(a.particles, a.vertices).str()},
              {"widget_classes_lower", classes.lower.str()},
              {"widget_classes_upper_log2", classes.upper_log2},
              {"x_p", r.x_p_used},
              {"x_p_is_lower_bound", r.x_p_is_lower_bound},
              {"log_S_lower", r.log_S_lower},
              {"log_Z_upper", r.log_Z_upper},
              {"log_R_lower", r.log_R_lower}};
  if (a.particles <= 6)
    doc["edge_pattern_classes"] = edge_pattern_orbits_by_burnside(a.particles).str();

  if (a.scan_to > 0) {
    std::optional<std::ofstream> csv;
    if (!a.csv.empty()) {
      csv = open_csv(a.csv);
      *csv << "schema_version,particles,vertices,log_S_lower,log_Z_upper,log_R_lower\n";
    }
    std::optional<std::int64_t> crossover;
    for (std::int64_t s = 2; s * s <= a.scan_to; ++s) {
      const auto b = ratio_lower_bound_log(a.particles, s * s, a.x_p);
      if (!crossover && b.log_R_lower > 0)
        crossover = s * s;
      else if (crossover && b.log_R_lower <= 0)
        crossover.reset();
      if (csv)
        *csv << kSchemaVersion << "," << a.particles << "," << s * s << "," << b.log_S_lower << "," << b.log_Z_upper
             << "," << b.log_R_lower << "\n";
    }
    doc["scan_to"] = a.scan_to;
    doc["crossover_vertices"] = crossover ? json(*crossover) : json(nullptr);
  }
  emit(doc, a.out);
  return kNotDistinguished;
}

// --------------------------------------------------------------- binsweep

struct SweepArgs {
  std::string input;
  std::size_t index = 0;
  WalkFlags walk;
  int lo = -8;
  int hi = -2;
  int per_decade = 4;
  std::string out;
  std::string csv;
};

int run_binsweep(const SweepArgs &a) {
  const Statistics st = statistics_of(a.walk.stats, false).front();
  if (a.per_decade < 1 || a.lo >= a.hi)
    throw CliError(kBadFlags, "need --from < --to and --per-decade >= 1");
  const auto graphs = read_input(a.input);
  if (a.index >= graphs.size())
    throw CliError(kBadFlags, "--index " + std::to_string(a.index) + " out of range");
  const Graph &g = graphs[a.index];
  const WalkSpec spec{a.walk.particles, st, a.walk.time};
  try {
    spec.validate(g.n());
  } catch (const std::invalid_argument &e) {
    throw CliError(kBadFlags, e.what());
  }
  check_budget({g}, spec.particles, 1, a.walk.budget);

  const auto sweep = bin_sweep(g, spec, log_spaced_widths(a.lo, a.hi, a.per_decade));
  json rows = json::array();
  for (const auto &[w, count] : sweep)
    rows.push_back({{"bin_width", w}, {"distinct_bins", count}});
  emit({{"schema_version", kSchemaVersion},
        {"command", "binsweep"},
        {"graph", graph_json(g)},
        {"walk", walk_json(spec)},
        {"sweep", rows}},
       a.out);
  if (!a.csv.empty()) {
    auto f = open_csv(a.csv);
    f << "schema_version,bin_width,distinct_bins\n";
    char buf[64];
    for (const auto &[w, count] : sweep) {
      std::snprintf(buf, sizeof buf, "%.6e", w);
      f << kSchemaVersion << "," << buf << "," << count << "\n";
    }
  }
  return kNotDistinguished;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Distinguish graphs with multi-particle continuous-time quantum walks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qwalk 0.1.0");

  CompareArgs cmp;
  auto *c = app.add_subcommand("compare", "Compare two graphs; exit 1 if distinguished, 0 if not");
  c->add_option("inputs", cmp.inputs, "graph6 files or inline records (two graphs in total)")->required()->expected(1, 2);
  add_walk_flags(*c, cmp.walk, "boson");
  c->add_option("-j,--jobs", cmp.jobs, "Worker threads")->check(CLI::PositiveNumber);
  c->add_option("-o,--out", cmp.out, "Write the JSON report here instead of stdout");

  FamilyArgs fam;
  auto *f = app.add_subcommand("family", "All-pairs comparison of a family file");
  f->add_option("input", fam.input, "graph6 file")->required();
  add_walk_flags(*f, fam.walk, "both");
  f->add_option("-j,--jobs", fam.jobs, "Worker threads")->check(CLI::PositiveNumber);
  f->add_flag("--resume", fam.resume, "Reuse fingerprints from the cache");
  f->add_option("--cache-dir", fam.cache, "Fingerprint cache (default $QWALK_CACHE_DIR or ./.qwalk-cache)");
  f->add_option("-o,--out", fam.out, "JSON summary path");
  f->add_option("--csv", fam.csv, "CSV summary path");

  WidgetArgs wid;
  auto *w = app.add_subcommand("widgets", "Widget counts and censuses");
  w->add_option("input", wid.input, "graph6 file or inline record")->required();
  w->add_option("--widget", wid.widget, "Relation grid such as NNN/NNN/NNN, or empty2|empty3|complete3");
  w->add_option("--census", wid.census, "Full census for this many particles (1-3)");
  w->add_flag("--triples", wid.triples, "Common-neighbour census of independent triples");
  w->add_option("--time", wid.time, "Time for widget values")->capture_default_str();
  w->add_option("-j,--jobs", wid.jobs, "Worker threads")->check(CLI::PositiveNumber);
  w->add_option("-o,--out", wid.out, "JSON report path");
  w->add_option("--csv", wid.csv, "CSV report path");

  BoundArgs bnd;
  auto *b = app.add_subcommand("bounds", "Counting bounds on walk universality");
  b->add_option("-p,--particles", bnd.particles)->check(CLI::PositiveNumber)->capture_default_str();
  b->add_option("-N,--vertices", bnd.vertices)->check(CLI::Range(std::int64_t{4}, std::int64_t{1} << 40))
      ->capture_default_str();
  b->add_option("--x-p", bnd.x_p, "Distinct widget values to assume instead of the lower bound");
  b->add_option("--scan-to", bnd.scan_to, "Scan perfect squares up to this N");
  b->add_option("-o,--out", bnd.out, "JSON report path");
  b->add_option("--csv", bnd.csv, "CSV of the scan");

  SweepArgs swp;
  auto *s = app.add_subcommand("binsweep", "Distinct-bin counts against bin width");
  s->add_option("input", swp.input, "graph6 file or inline record")->required();
  s->add_option("--index", swp.index, "Record within the file")->capture_default_str();
  add_walk_flags(*s, swp.walk, "fermion");
  s->add_option("--from", swp.lo, "log10 of the smallest width")->capture_default_str();
  s->add_option("--to", swp.hi, "log10 of the largest width")->capture_default_str();
  s->add_option("--per-decade", swp.per_decade)->capture_default_str();
  s->add_option("-o,--out", swp.out, "JSON report path");
  s->add_option("--csv", swp.csv, "CSV report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kBadFlags;
  }

  try {
    if (*c)
      return run_compare(cmp);
    if (*f)
      return run_family(fam);
    if (*w)
      return run_widgets(wid);
    if (*b)
      return run_bounds(bnd);
    return run_binsweep(swp);
  } catch (const CliError &e) {
    std::cerr << "qwalk: " << e.what() << "\n";
    return e.code;
  } catch (const std::exception &e) {
    std::cerr << "qwalk: internal error: " << e.what() << "\n";
    return kInternal;
  }
}
