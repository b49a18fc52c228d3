#include "disco/cli.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>
#include <Eigen/Core>
#include <boost/version.hpp>
#include <json.hpp>

#include "disco/bounds.hpp"
#include "disco/disco.hpp"
#include "disco/ensembles.hpp"
#include "disco/errors.hpp"
#include "disco/limit_moments.hpp"
#include "disco/rational.hpp"
#include "disco/rng.hpp"
#include "disco/spectra.hpp"

namespace disco::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = kDefaultSeed;
  int threads = 0;
  std::string output;
  std::string format = "csv";
  std::string manifest;
  bool timing = false;
};

struct SourceOptions {
  std::string ensemble;
  std::string disco;
  std::size_t depth = 1;
  std::size_t dim = 512;
  std::string dist = "normal";
};

/// What a command produced: the serialized data and whether its checks held.
struct Outcome {
  std::string payload;
  bool checks_passed = true;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string num(const BigInt& x) { return x.str(); }

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) { row(header); }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) text_ += ',';
      text_ += cells[i];
    }
    text_ += '\n';
  }
  std::string str() const { return text_; }

 private:
  std::string text_;
};

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

MomentSource make_source(const SourceOptions& o, std::uint64_t seed) {
  const EntryDistribution dist = parse_dist(o.dist);
  if (!o.disco.empty()) {
    const auto names = split_names(o.disco);
    if (names.size() != 2) throw ConfigError("--disco expects two ensemble names, e.g. pst,rs");
    return make_disco_plan(parse_kind(names[0]), parse_kind(names[1]), o.depth, o.dim, dist, seed);
  }
  EnsembleSpec spec{parse_kind(o.ensemble.empty() ? "pst" : o.ensemble), o.dim, dist, seed};
  spec.validate();
  return spec;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Master seed")->envname("DISCO_RMT_SEED");
  sub->add_option("--threads", c.threads, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  sub->add_option("-o,--output", c.output, "Output file (default: standard output)");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--manifest", c.manifest, "JSON manifest path (default: <output>.manifest.json)");
  sub->add_flag("--timing", c.timing, "Record elapsed_ms in the manifest");
}

void add_source(CLI::App* sub, SourceOptions& s, std::size_t default_dim) {
  s.dim = default_dim;
  auto* ens = sub->add_option("--ensemble", s.ensemble, "pst, rs, bc<m>, identity, counterexample-a/b");
  auto* disco = sub->add_option("--disco", s.disco, "A,B ensembles of a disco matrix");
  ens->excludes(disco);
  sub->add_option("--depth", s.depth, "Disco depth d")->check(CLI::NonNegativeNumber);
  sub->add_option("--dim", s.dim, "Matrix dimension (base dimension N for a disco)")->check(CLI::PositiveNumber);
  sub->add_option("--dist", s.dist, "Entry distribution")->check(CLI::IsMember({"normal", "gaussian", "rademacher"}));
}

// --- simulate -------------------------------------------------------------

struct SimulateOptions {
  SourceOptions source;
  std::size_t trials = 1;
  std::size_t bins = 0;
  double width = 0.0;
};

Outcome cmd_simulate(const SimulateOptions& o, const Common& c, std::ostream& log) {
  const MomentSource source = make_source(o.source, c.seed);
  const std::vector<double> values = pooled_spectrum(source, o.trials, c.seed);
  BinPolicy policy;
  if (o.width > 0.0) {
    policy.kind = BinPolicy::Kind::FixedWidth;
    policy.width = o.width;
  } else if (o.bins > 0) {
    policy.kind = BinPolicy::Kind::FixedCount;
    policy.count = o.bins;
  }
  const Histogram h = histogram(values, policy);
  log << "simulate: " << values.size() << " normalized eigenvalues from " << o.trials << " draw(s) of dimension "
      << source_dim(source) << ", " << h.counts.size() << " bins\n";
  if (c.format == "json") {
    Json rows = Json::array();
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
      rows.push_back({{"bin_lo", h.bin_edges[i]},
                      {"bin_hi", h.bin_edges[i + 1]},
                      {"count", h.counts[i]},
                      {"density", h.density(i)},
                      {"gauss_pdf", h.gauss_pdf[i]},
                      {"semicircle_pdf", h.semicircle_pdf[i]}});
    }
    return {Json{{"total", h.total}, {"bins", rows}}.dump(2) + "\n"};
  }
  Csv csv({"bin_lo", "bin_hi", "count", "density", "gauss_pdf", "semicircle_pdf"});
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    csv.row({num(h.bin_edges[i]), num(h.bin_edges[i + 1]), std::to_string(h.counts[i]), num(h.density(i)),
             num(h.gauss_pdf[i]), num(h.semicircle_pdf[i])});
  }
  return {csv.str()};
}

// --- moments --------------------------------------------------------------

struct MomentsOptions {
  SourceOptions source;
  std::vector<int> orders{2, 4};
  std::size_t trials = 100;
};

Outcome cmd_moments(const MomentsOptions& o, const Common& c, std::ostream& log) {
  const MomentSource source = make_source(o.source, c.seed);
  const MomentReport r = monte_carlo_moments(source, o.orders, o.trials, c.seed);
  for (std::size_t i = 0; i < r.orders.size(); ++i) {
    log << "M_" << r.orders[i] << " = " << num(r.values[i]) << " +/- " << num(r.stderrs[i]) << "\n";
  }
  if (c.format == "json") {
    Json rows = Json::array();
    for (std::size_t i = 0; i < r.orders.size(); ++i) {
      rows.push_back({{"order", r.orders[i]},
                      {"value", r.values[i]},
                      {"stderr", r.stderrs[i]},
                      {"trials", r.trials},
                      {"dim", r.dim}});
    }
    return {Json{{"moments", rows}}.dump(2) + "\n"};
  }
  Csv csv({"order", "value", "stderr", "trials", "dim"});
  for (std::size_t i = 0; i < r.orders.size(); ++i) {
    csv.row({std::to_string(r.orders[i]), num(r.values[i]), num(r.stderrs[i]), std::to_string(r.trials),
             std::to_string(r.dim)});
  }
  return {csv.str()};
}

// --- exact ----------------------------------------------------------------

struct ExactCommandOptions {
  std::vector<int> orders{2, 4, 6, 8};
  bool class_table = false;
  int max_order = 8;
  int cap = 16;
};

Outcome cmd_exact(const ExactCommandOptions& o, const Common& c, std::ostream& log) {
  if (o.class_table) {
    const auto rows = class_table(o.max_order);
    if (c.format == "json") {
      Json out = Json::array();
      for (const auto& r : rows) {
        out.push_back({{"order", r.order},
                       {"a_count", r.a_count},
                       {"b_count", r.b_count},
                       {"weighted_count", to_rational_string(r.weighted_count)},
                       {"contribution", to_rational_string(r.contribution)},
                       {"contribution_decimal", to_decimal_string(r.contribution)}});
      }
      return {Json{{"class_table", out}}.dump(2) + "\n"};
    }
    Csv csv({"order", "a_count", "b_count", "weighted_count", "contribution", "contribution_decimal"});
    for (const auto& r : rows) {
      csv.row({std::to_string(r.order), std::to_string(r.a_count), std::to_string(r.b_count),
               to_rational_string(r.weighted_count), to_rational_string(r.contribution),
               to_decimal_string(r.contribution)});
    }
    log << "class table: " << rows.size() << " rows up to order " << o.max_order << "\n";
    return {csv.str()};
  }
  ExactOptions opts;
  opts.cap = o.cap;
  std::vector<ExactMoment> ms;
  for (int order : o.orders) {
    ms.push_back(exact_moment(order, opts));
    log << "M_" << order << " = " << to_rational_string(ms.back().value) << " = "
        << to_decimal_string(ms.back().value) << "\n";
  }
  if (c.format == "json") {
    Json out = Json::array();
    for (const auto& m : ms) {
      out.push_back({{"order", m.order}, {"rational", to_rational_string(m.value)},
                     {"decimal", to_decimal_string(m.value)}});
    }
    return {Json{{"moments", out}}.dump(2) + "\n"};
  }
  Csv csv({"order", "rational", "decimal"});
  for (const auto& m : ms) csv.row({std::to_string(m.order), to_rational_string(m.value), to_decimal_string(m.value)});
  return {csv.str()};
}

// --- bounds ---------------------------------------------------------------

struct BoundsOptions {
  bool counterexample = false;
  bool suite = false;
  bool holder = false;
  bool sandwich = false;
  bool conjecture = false;
  int max_order = 12;
  int cap = 16;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> dim;
  std::size_t holder_dim = 6;
  int order = 4;
  std::vector<int> orders{4, 6, 8};
  std::optional<std::string> a;
  std::optional<std::string> b;
  std::string dist = "normal";
  std::string table;
};

// Long-format rows: section, item, value.
struct LongTable {
  std::vector<std::array<std::string, 3>> rows;
  void add(std::string section, std::string item, std::string value) {
    rows.push_back({std::move(section), std::move(item), std::move(value)});
  }
};

Outcome cmd_bounds(BoundsOptions o, const Common& c, std::ostream& log) {
  if (!(o.counterexample || o.suite || o.holder || o.sandwich || o.conjecture)) {
    o.counterexample = o.suite = o.holder = o.sandwich = true;
  }
  const EntryDistribution dist = parse_dist(o.dist);
  LongTable t;
  bool ok = true;
  auto yes_no = [](bool b) { return std::string(b ? "true" : "false"); };

  if (o.counterexample) {
    const CounterexampleRecord r = conjecture_counterexample();
    t.add("counterexample", "trace_a4", num(r.trace_a4));
    t.add("counterexample", "trace_b4", num(r.trace_b4));
    t.add("counterexample", "mixed", num(r.mixed));
    t.add("counterexample", "refutes", yes_no(r.refutes()));
    log << "Tr(A^4) = " << r.trace_a4 << "\nTr(B^4) = " << r.trace_b4
        << "\n(Tr((A+B)^4) + Tr((A-B)^4)) / 8 = " << r.mixed << "\n";
    log << (r.refutes() ? "conjectured trace inequality REFUTED at matrix level\n"
                        : "counterexample FAILED to refute the trace inequality\n");
    ok = ok && r.refutes();
  }
  if (o.suite) {
    ExactOptions opts;
    opts.cap = o.cap;
    const BoundSuiteReport rep = bound_suite_range(o.max_order, opts);
    for (const auto& r : rep.rows) {
      const std::string s = "suite_" + std::to_string(r.order);
      t.add(s, "moment", to_rational_string(r.moment));
      t.add(s, "semicircle", num(r.semicircle));
      t.add(s, "gaussian", num(r.gaussian));
      t.add(s, "refined_upper", to_rational_string(r.refined_upper));
      t.add(s, "ratio", to_rational_string(r.ratio));
      t.add(s, "root", num(r.root));
      t.add(s, "root_bound", num(r.root_bound));
      t.add(s, "holds", yes_no(r.all_hold()));
    }
    t.add("suite", "ratio_strictly_decreasing", yes_no(rep.ratio_strictly_decreasing));
    t.add("suite", "holds", yes_no(rep.all_hold()));
    log << "bound suite through order " << o.max_order << ": " << (rep.all_hold() ? "all hold" : "VIOLATED") << "\n";
    ok = ok && rep.all_hold();
  }
  if (o.holder) {
    const HolderSweepReport r = holder_sweep(o.trials.value_or(1000), o.holder_dim, c.seed);
    t.add("holder", "tuples", std::to_string(r.tuples));
    t.add("holder", "violations", std::to_string(r.violations));
    t.add("holder", "max_ratio", num(r.max_ratio));
    log << "Hoelder sweep: " << (r.tuples - r.violations) << "/" << r.tuples << " hold\n";
    ok = ok && r.violations == 0;
  }
  if (o.sandwich) {
    const std::size_t n = o.dim.value_or(256);
    const EnsembleSpec a{parse_kind(o.a.value_or("pst")), n, dist, 0};
    const EnsembleSpec b{parse_kind(o.b.value_or("rs")), n, dist, 0};
    const SandwichReport r = sandwich_bound_check(a, b, o.order, o.trials.value_or(100), c.seed);
    const std::string s = "sandwich";
    t.add(s, "order", std::to_string(r.order));
    t.add(s, "m_a", num(r.m_a));
    t.add(s, "m_b", num(r.m_b));
    t.add(s, "m_d1", num(r.m_d));
    t.add(s, "se_d1", num(r.se_d));
    t.add(s, "lower", num(r.lower));
    t.add(s, "upper", num(r.upper));
    t.add(s, "holds", yes_no(r.holds));
    log << "sandwich k=" << r.order << ": " << num(r.lower) << " <= " << num(r.m_d) << " <= " << num(r.upper) << " "
        << (r.holds ? "holds" : "VIOLATED") << "\n";
    ok = ok && r.holds;
  }
  std::string table_text;
  if (o.conjecture) {
    const std::size_t n = o.dim.value_or(1200);
    const EnsembleSpec a{parse_kind(o.a.value_or("rs")), n, dist, 0};
    const EnsembleSpec b{parse_kind(o.b.value_or("bc3")), n, dist, 0};
    const auto rows = conjecture_moment_scan(a, b, o.orders, o.trials.value_or(4), c.seed);
    Csv csv({"moment", "m_a", "se_a", "d1", "se_d1", "m_b", "se_b"});
    for (const auto& r : rows) {
      const std::string s = "conjecture_" + std::to_string(r.order);
      t.add(s, "m_a", num(r.m_a));
      t.add(s, "d1", num(r.m_d));
      t.add(s, "m_b", num(r.m_b));
      csv.row({std::to_string(r.order), num(r.m_a), num(r.se_a), num(r.m_d), num(r.se_d), num(r.m_b), num(r.se_b)});
      log << "M_" << r.order << ": A " << num(r.m_a) << "  D1 " << num(r.m_d) << "  B " << num(r.m_b) << "\n";
    }
    table_text = csv.str();
  }
  if (!o.table.empty()) {
    if (!o.conjecture) throw ConfigError("--table needs --conjecture");
    std::ofstream f(o.table, std::ios::binary);
    if (!(f << table_text)) throw IoFailure("cannot write " + o.table);
  }

  if (c.format == "json") {
    Json out = Json::object();
    for (const auto& [section, item, value] : t.rows) out[section][item] = value;
    out["all_checks_hold"] = ok;
    return {out.dump(2) + "\n", ok};
  }
  Csv csv({"section", "item", "value"});
  for (const auto& [section, item, value] : t.rows) csv.row({section, item, value});
  return {csv.str(), ok};
}

// --- gaps -----------------------------------------------------------------

struct GapsOptions {
  SourceOptions source;
  double divisor = 0.0;
};

Outcome cmd_gaps(const GapsOptions& o, const Common& c, std::ostream& log) {
  const MomentSource source = make_source(o.source, c.seed);
  const SpectralSample s = eigenvalues(draw_source(source, derive_seed(c.seed, 0)));
  const std::vector<double> gaps = o.divisor > 0.0 ? gap_spacings(s, o.divisor) : gap_spacings(s);
  log << "gaps: " << gaps.size() << " spacings from dimension " << s.dim() << "\n";
  if (c.format == "json") return {Json{{"gaps", gaps}}.dump(2) + "\n"};
  Csv csv({"gap"});
  for (double g : gaps) csv.row({num(g)});
  return {csv.str()};
}

// --- kron -----------------------------------------------------------------

struct KronOptions {
  std::vector<std::size_t> dims{6, 6};
  std::vector<int> orders{2, 4};
  std::string a = "rs";
  std::string b = "rs";
  std::string dist = "normal";
};

Outcome cmd_kron(const KronOptions& o, const Common& c, std::ostream& log) {
  if (o.dims.size() != 2) throw ConfigError("--dims expects two dimensions, e.g. 6,6");
  const EntryDistribution dist = parse_dist(o.dist);
  const SymmetricMatrix a = draw(EnsembleSpec{parse_kind(o.a), o.dims[0], dist, derive_seed(c.seed, 0)});
  const SymmetricMatrix b = draw(EnsembleSpec{parse_kind(o.b), o.dims[1], dist, derive_seed(c.seed, 1)});
  const SymmetricMatrix k = kronecker(a, b);
  const SpectralSample sa = eigenvalues(a), sb = eigenvalues(b), sk = eigenvalues(k);
  const auto ma = empirical_moments(sa, o.orders);
  const auto mb = empirical_moments(sb, o.orders);
  const auto mk = empirical_moments(sk, o.orders);

  constexpr double kMomentTol = 1e-10;
  constexpr double kSpectrumTol = 1e-8;
  bool ok = true;
  std::vector<double> rel(o.orders.size());
  for (std::size_t i = 0; i < o.orders.size(); ++i) {
    const double prod = ma[i] * mb[i];
    const double scale = std::max({std::abs(prod), std::abs(mk[i]), 1.0});
    rel[i] = std::abs(mk[i] - prod) / scale;
    ok = ok && rel[i] <= kMomentTol;
  }
  std::vector<double> products;
  for (double x : sa.raw) {
    for (double y : sb.raw) products.push_back(x * y);
  }
  std::sort(products.begin(), products.end());
  double spectrum_error = 0.0;
  const double spectral_scale = std::max(1.0, std::abs(products.front()) + std::abs(products.back()));
  for (std::size_t i = 0; i < products.size(); ++i) {
    spectrum_error = std::max(spectrum_error, std::abs(products[i] - sk.raw[i]) / spectral_scale);
  }
  ok = ok && spectrum_error <= kSpectrumTol;
  log << "kron " << o.dims[0] << "x" << o.dims[1] << ": spectrum max error " << num(spectrum_error) << ", "
      << (ok ? "multiplicativity holds" : "multiplicativity VIOLATED") << "\n";

  if (c.format == "json") {
    Json rows = Json::array();
    for (std::size_t i = 0; i < o.orders.size(); ++i) {
      rows.push_back({{"order", o.orders[i]},
                      {"m_a", ma[i]},
                      {"m_b", mb[i]},
                      {"m_kron", mk[i]},
                      {"product", ma[i] * mb[i]},
                      {"rel_error", rel[i]}});
    }
    return {Json{{"moments", rows}, {"spectrum_max_error", spectrum_error}, {"holds", ok}}.dump(2) + "\n", ok};
  }
  Csv csv({"order", "m_a", "m_b", "m_kron", "product", "rel_error"});
  for (std::size_t i = 0; i < o.orders.size(); ++i) {
    csv.row({std::to_string(o.orders[i]), num(ma[i]), num(mb[i]), num(mk[i]), num(ma[i] * mb[i]), num(rel[i])});
  }
  return {csv.str(), ok};
}

// --- plumbing -------------------------------------------------------------

Json versions() {
  return {{"disco_rmt", kVersion},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"boost", BOOST_LIB_VERSION},
          {"cli11", CLI11_VERSION},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
          {"compiler", __VERSION__}};
}

// Every option of the subcommand with its effective value, in declaration order.
Json flag_record(const CLI::App* sub) {
  Json flags = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string key = opt->get_lnames().front();
    if (key == "help") continue;
    const bool is_flag = opt->get_expected_min() == 0;
    if (is_flag) {
      flags[key] = opt->count() > 0;
    } else if (opt->count() > 0) {
      const auto& res = opt->results();
      if (res.size() == 1) {
        flags[key] = res.front();
      } else {
        flags[key] = res;
      }
    } else {
      flags[key] = opt->get_default_str();
    }
  }
  return flags;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoFailure("cannot open " + path + " for writing");
  f << text;
  if (!f) throw IoFailure("cannot write " + path);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& log) {
  CLI::App app{"Disco random block matrices: spectra, exact limiting moments and trace bounds", "disco_rmt"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  Common common;
  SimulateOptions sim;
  MomentsOptions mom;
  ExactCommandOptions ex;
  BoundsOptions bo;
  GapsOptions gp;
  KronOptions kr;

  auto* simulate = app.add_subcommand("simulate", "Histogram of normalized eigenvalues with density overlays");
  add_common(simulate, common);
  add_source(simulate, sim.source, 512);
  simulate->add_option("--trials", sim.trials, "Pooled draws")->check(CLI::PositiveNumber);
  simulate->add_option("--bins", sim.bins, "Fixed bin count (0 = Freedman-Diaconis)");
  simulate->add_option("--width", sim.width, "Fixed bin width (overrides --bins)");

  auto* moments = app.add_subcommand("moments", "Monte Carlo moment estimates");
  add_common(moments, common);
  add_source(moments, mom.source, 512);
  moments->add_option("--orders", mom.orders, "Moment orders")->delimiter(',');
  moments->add_option("--trials", mom.trials, "Independent draws")->check(CLI::PositiveNumber);

  auto* exact = app.add_subcommand("exact", "Exact limiting moments of the PST/RS 1-disco");
  add_common(exact, common);
  exact->add_option("--orders", ex.orders, "Moment orders")->delimiter(',');
  exact->add_flag("--class-table", ex.class_table, "Emit the class-contribution table instead");
  exact->add_option("--max-order", ex.max_order, "Largest order of the class table");
  exact->add_option("--cap", ex.cap, "Largest order the word enumeration accepts");

  auto* bounds = app.add_subcommand("bounds", "Trace inequalities, moment bounds and the counterexample");
  add_common(bounds, common);
  bounds->add_flag("--counterexample", bo.counterexample, "Integer counterexample to the trace inequality");
  bounds->add_flag("--suite", bo.suite, "Exact moment bound suite");
  bounds->add_flag("--holder", bo.holder, "Random Hoelder trace sweep");
  bounds->add_flag("--sandwich", bo.sandwich, "Monte Carlo moment sandwich");
  bounds->add_flag("--conjecture", bo.conjecture, "Conjecture moment scan (never fails the run)");
  bounds->add_option("--max-order", bo.max_order, "Largest order of the bound suite");
  bounds->add_option("--cap", bo.cap, "Largest order the word enumeration accepts");
  bounds->add_option("--trials", bo.trials, "Hoelder tuples / Monte Carlo trials");
  bounds->add_option("--dim", bo.dim, "Matrix dimension for the sandwich and conjecture scan");
  bounds->add_option("--holder-dim", bo.holder_dim, "Matrix dimension for the Hoelder sweep");
  bounds->add_option("--order", bo.order, "Moment order of the sandwich check");
  bounds->add_option("--orders", bo.orders, "Moment orders of the conjecture scan")->delimiter(',');
  bounds->add_option("--a", bo.a, "A ensemble (sandwich default pst, conjecture default rs)");
  bounds->add_option("--b", bo.b, "B ensemble (sandwich default rs, conjecture default bc3)");
  bounds->add_option("--dist", bo.dist, "Entry distribution")->check(CLI::IsMember({"normal", "gaussian", "rademacher"}));
  bounds->add_option("--table", bo.table, "Write the conjecture table (Moment, M_k(A), D1, M_k(B)) here");

  auto* gaps = app.add_subcommand("gaps", "Nearest-neighbour eigenvalue spacings of one draw");
  add_common(gaps, common);
  add_source(gaps, gp.source, 2048);
  gaps->add_option("--divisor", gp.divisor, "Spacing divisor (0 = sqrt(dimension))");

  auto* kron = app.add_subcommand("kron", "Kronecker moment multiplicativity");
  add_common(kron, common);
  kron->add_option("--dims", kr.dims, "Dimensions of A and B")->delimiter(',');
  kron->add_option("--orders", kr.orders, "Moment orders")->delimiter(',');
  kron->add_option("--a", kr.a, "A ensemble");
  kron->add_option("--b", kr.b, "B ensemble");
  kron->add_option("--dist", kr.dist, "Entry distribution")->check(CLI::IsMember({"normal", "gaussian", "rademacher"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, log);
    return code == 0 ? kOk : kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  CLI::App* sub = app.get_subcommands().front();
  if (common.threads > 0) omp_set_num_threads(common.threads);

  Outcome result;
  try {
    if (sub == simulate) {
      result = cmd_simulate(sim, common, log);
    } else if (sub == moments) {
      result = cmd_moments(mom, common, log);
    } else if (sub == exact) {
      result = cmd_exact(ex, common, log);
    } else if (sub == bounds) {
      result = cmd_bounds(bo, common, log);
    } else if (sub == gaps) {
      result = cmd_gaps(gp, common, log);
    } else {
      result = cmd_kron(kr, common, log);
    }

    Json outputs = Json::array();
    if (common.output.empty()) {
      out << result.payload;
    } else {
      write_file(common.output, result.payload);
      outputs.push_back(common.output);
    }
    if (!bo.table.empty() && sub == bounds) outputs.push_back(bo.table);

    std::string manifest_path = common.manifest;
    if (manifest_path.empty() && !common.output.empty()) manifest_path = common.output + ".manifest.json";
    if (!manifest_path.empty()) {
      Json manifest{{"command", sub->get_name()},
                    {"flags", flag_record(sub)},
                    {"seed", common.seed},
                    {"versions", versions()},
                    {"outputs", outputs},
                    {"elapsed_ms", nullptr}};
      if (common.timing) {
        manifest["elapsed_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      }
      write_file(manifest_path, manifest.dump(2) + "\n");
    }
  } catch (const IoFailure& e) {
    log << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kUsage;
  }
  return result.checks_passed ? kOk : kCheckFailed;
}

}  // namespace disco::cli
