// Copyright 2026 The aotoc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include "aotoc/closedforms.hpp"
#include "aotoc/io.hpp"
#include "aotoc/validation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#ifndef AOTOC_VERSION_STRING
#define AOTOC_VERSION_STRING "unknown"
#endif

namespace aotoc::cli {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::uint64_t kDefaultSeed = 20240611;

const std::set<std::string> kCommonKeys = {"command", "seed", "out", "profile", "workers", "tolerance"};

const std::map<std::string, std::set<std::string>> kCommandKeys = {
    {"compute", {"algebra", "channel", "route", "samples"}},
    {"pxp", {"sites", "coupling", "alpha", "gamma", "state", "tmax", "dt"}},
    {"xxx-dfs", {"sites", "coupling", "alpha", "gamma", "lambdas", "tmax", "dt"}},
    {"stabilizer", {"n", "k", "chi", "generators", "rotation_seed"}},
    {"examples", {"which", "n", "lambda", "tmax", "dt"}},
    {"haar-typical", {"blocks", "samples"}},
    {"validate", {"only"}},
};

const std::map<std::string, std::set<std::string>> kAlgebraKeys = {
    {"maximal_abelian", {"dim", "basis_file"}},
    {"bipartite", {"dA", "dB"}},
    {"projector", {"dim", "index", "state_file"}},
    {"blocks", {"blocks", "embedding_file"}},
    {"stabilizer", {"n", "k", "generators"}},
};

const std::map<std::string, std::set<std::string>> kChannelKeys = {
    {"identity", {}},
    {"depolarizing", {}},
    {"hadamard", {}},
    {"haar", {}},
    {"unitary", {"matrix_file"}},
    {"kraus", {"files"}},
    {"lindblad", {"hamiltonian_file", "jump_files", "t"}},
    {"dephasing_chi", {"chi", "rotation_seed"}},
    {"example1", {"n", "t"}},
    {"example2", {"n", "lambda", "t"}},
};

const std::set<std::string> kToleranceKeys = {"channel", "exp", "dense_threshold"};

// Typed view of one JSON object; `where` prefixes field names in diagnostics.
class Section {
 public:
  Section(const json& j, std::string where) : j_(j), where_(std::move(where)) {}

  bool has(const std::string& key) const { return j_.contains(key); }
  std::string field(const std::string& key) const { return where_ + key; }
  const json& raw(const std::string& key) const { return j_.at(key); }

  template <class T>
  T get(const std::string& key, T fallback) const {
    return has(key) ? convert<T>(j_.at(key), field(key)) : fallback;
  }
  template <class T>
  T require(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing required field '" + field(key) + "'");
    return convert<T>(j_.at(key), field(key));
  }
  Section sub(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing required field '" + field(key) + "'");
    const json& v = j_.at(key);
    if (!v.is_object()) throw ConfigError("field '" + field(key) + "': expected an object");
    return Section(v, field(key) + ".");
  }
  void check_keys(const std::set<std::string>& allowed, const std::string& context) const {
    for (const auto& [key, value] : j_.items())
      if (!allowed.contains(key)) throw ConfigError("unknown key '" + field(key) + "' for " + context);
  }

  template <class T>
  static T convert(const json& v, const std::string& name) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError("field '" + name + "': expected a boolean");
      return v.get<bool>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConfigError("field '" + name + "': expected an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_unsigned()) return v.get<T>();
        if (v.get<std::int64_t>() < 0) throw ConfigError("field '" + name + "': expected a non-negative integer");
      }
      return v.get<T>();
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConfigError("field '" + name + "': expected a number");
      return v.get<T>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError("field '" + name + "': expected a string");
      return v.get<std::string>();
    } else {
      if (!v.is_array()) throw ConfigError("field '" + name + "': expected an array");
      T out;
      for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(convert<typename T::value_type>(v[i], name + "[" + std::to_string(i) + "]"));
      return out;
    }
  }

 private:
  const json& j_;
  std::string where_;
};

std::vector<Block> parse_blocks(const json& v, const std::string& name) {
  if (!v.is_array() || v.empty()) throw ConfigError("field '" + name + "': expected a non-empty array of [n, d] pairs");
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto pair = Section::convert<std::vector<int>>(v[i], name + "[" + std::to_string(i) + "]");
    if (pair.size() != 2 || pair[0] < 1 || pair[1] < 1)
      throw ConfigError("field '" + name + "[" + std::to_string(i) + "]': expected [n, d] with positive entries");
    blocks.push_back({pair[0], pair[1]});
  }
  return blocks;
}

// "2x4,1x3" -> [[2,4],[1,3]]
json parse_blocks_flag(const std::string& text) {
  json out = json::array();
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto x = item.find('x');
    try {
      if (x == std::string::npos) throw std::invalid_argument(item);
      std::size_t used_n = 0, used_d = 0;
      const int n = std::stoi(item.substr(0, x), &used_n);
      const int d = std::stoi(item.substr(x + 1), &used_d);
      if (used_n != x || used_d != item.size() - x - 1) throw std::invalid_argument(item);
      out.push_back({n, d});
    } catch (const std::exception&) {
      throw ConfigError("flag --blocks: cannot parse '" + item + "', expected NxD");
    }
  }
  return out;
}

struct Context {
  json config;
  std::string command;
  std::optional<fs::path> out_path;
  std::uint64_t seed = kDefaultSeed;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  Section root() const { return Section(config, ""); }
};

SeriesOptions series_options(const Context& ctx) {
  SeriesOptions so;
  const Section root = ctx.root();
  so.aotoc.workers = root.get<int>("workers", 0);
  if (root.has("tolerance")) {
    const Section tol = root.sub("tolerance");
    tol.check_keys(kToleranceKeys, "'tolerance'");
    so.aotoc.channel_tol = tol.get<double>("channel", so.aotoc.channel_tol);
    so.exp.tol = tol.get<double>("exp", so.exp.tol);
    so.exp.dense_threshold = tol.get<Index>("dense_threshold", so.exp.dense_threshold);
  }
  return so;
}

std::ofstream open_file(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + p.string() + "' for writing");
  return os;
}

fs::path sibling(const fs::path& p, const std::string& suffix) {
  fs::path s = p;
  s.replace_extension(suffix);
  return s;
}

void emit_table(const Context& ctx, const std::function<void(std::ostream&)>& write) {
  if (ctx.out_path) {
    auto os = open_file(*ctx.out_path);
    write(os);
  } else {
    write(*ctx.out);
  }
}

void emit_meta(const Context& ctx, json extra) {
  if (!ctx.out_path) return;
  json meta = {
      {"command", ctx.command},
      {"config", ctx.config},
      {"seed", ctx.seed},
      {"version", AOTOC_VERSION_STRING},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                    std::to_string(EIGEN_MINOR_VERSION)},
      {"compiler", __VERSION__},
      {"workers", worker_count()},
      {"wall_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.start).count()},
  };
  for (auto& [k, v] : extra.items()) meta[k] = v;
  auto os = open_file(sibling(*ctx.out_path, ".meta.json"));
  os << meta.dump(2) << '\n';
}

void emit_plot(const Context& ctx, const std::vector<ExperimentSeries>& series, const std::vector<std::string>& labels) {
  if (ctx.out_path) write_plot_data(sibling(*ctx.out_path, ".plot.dat"), series, labels);
}

std::vector<double> time_grid(const Section& root, double tmax_default, double dt_default) {
  const double tmax = root.get<double>("tmax", tmax_default);
  const double dt = root.get<double>("dt", dt_default);
  if (!(tmax >= 0.0)) throw ConfigError("field 'tmax': must be non-negative");
  if (!(dt > 0.0)) throw ConfigError("field 'dt': must be positive");
  return uniform_grid(0.0, tmax, dt);
}

SpinChainSpec chain_spec(const Section& root, ChainModel model, int default_sites) {
  SpinChainSpec spec;
  spec.model = model;
  spec.sites = root.get<int>("sites", default_sites);
  spec.coupling = root.get<double>("coupling", 1.0);
  spec.alpha = root.get<double>("alpha", 0.0);
  spec.gamma = root.get<double>("gamma", 0.0);
  spec.validate();
  return spec;
}

int cmd_pxp(Context& ctx) {
  const Section root = ctx.root();
  const SpinChainSpec spec = chain_spec(root, ChainModel::pxp, 8);
  const std::string state = root.get<std::string>("state", "neel");
  if (state != "neel" && state != "ferro") throw ConfigError("field 'state': expected \"neel\" or \"ferro\"");
  const auto grid = time_grid(root, 30.0, 0.075);
  const AlgebraHandle a =
      projector_algebra(product_state(spec.sites, state == "neel" ? ProductPattern::neel : ProductPattern::ferro));
  ExperimentSeries s = run_series(pxp_model(spec), a, grid, series_options(ctx));
  emit_table(ctx, [&](std::ostream& os) { write_series_csv(os, s); });
  emit_plot(ctx, {s}, {state});
  emit_meta(ctx, {{"blockade_dim", a.dim()}, {"series_seconds", s.meta.wall_seconds}});
  return kExitOk;
}

int cmd_xxx_dfs(Context& ctx) {
  const Section root = ctx.root();
  SpinChainSpec spec = chain_spec(root, ChainModel::xxx, 4);
  const auto lambdas = root.get<std::vector<double>>("lambdas", {0.0, 0.05, 0.1, 0.15, 0.2});
  if (lambdas.empty()) throw ConfigError("field 'lambdas': must not be empty");
  const auto grid = time_grid(root, 30.0, 0.075);
  std::vector<AlgebraHandle> algebras;
  for (double l : lambdas) algebras.push_back(perturbed_dfs_algebra(spec.sites, l, ctx.seed));
  const auto series = run_series(xxx_model(spec), algebras, grid, series_options(ctx));

  emit_table(ctx, [&](std::ostream& os) {
    os << "lambda,t,g,g1,g2,bound,typical\n";
    for (std::size_t k = 0; k < series.size(); ++k)
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& r = series[k].rows[i];
        os << format_double(lambdas[k]) << ',' << format_double(grid[i]) << ',' << format_double(r.g) << ','
           << format_double(r.g1) << ',' << format_double(r.g2) << ',' << format_double(r.bound) << ','
           << format_double(r.typical) << '\n';
      }
  });
  std::vector<std::string> labels;
  for (double l : lambdas) labels.push_back("lambda=" + format_double(l));
  emit_plot(ctx, series, labels);

  json extra = json::object();
  std::set<double> distinct(lambdas.begin(), lambdas.end());
  if (distinct.size() >= 3 && distinct.contains(0.0)) {
    const QuadraticFit fit = time_average_quadratic_fit(lambdas, series, 0.0, grid.back());
    extra["fit"] = {{"lambdas", fit.lambdas}, {"mean_g2", fit.mean_g2}, {"coefficient", fit.coefficient},
                    {"r_squared", fit.r_squared}};
    if (ctx.out_path)
      *ctx.out << "quadratic fit: c = " << format_double(fit.coefficient)
               << ", R^2 = " << format_double(fit.r_squared) << '\n';
  }
  emit_meta(ctx, extra);
  return kExitOk;
}

int cmd_stabilizer(Context& ctx) {
  const Section root = ctx.root();
  const int n = root.require<int>("n");
  const int k = root.require<int>("k");
  const int chi = root.require<int>("chi");
  const auto gens = root.has("generators") ? root.get<std::vector<std::string>>("generators", {})
                                           : default_stabilizer_generators(n, k);
  std::optional<std::uint64_t> rotation;
  if (root.has("rotation_seed")) rotation = root.get<std::uint64_t>("rotation_seed", 0);
  const StabilizerGroup g = build_stabilizer(n, k, gens);
  const AotocReport r = aotoc(stabilizer_algebra(g), dephasing_chi(g, chi, rotation), series_options(ctx).aotoc);
  const double formula = stabilizer_formula(n, k, chi);
  emit_table(ctx, [&](std::ostream& os) {
    os << "n,k,chi,g,g1,g2,bound,typical,formula\n"
       << n << ',' << k << ',' << chi << ',' << format_double(r.g) << ',' << format_double(r.g1) << ','
       << format_double(r.g2) << ',' << format_double(r.bound) << ',' << format_double(r.typical) << ','
       << format_double(formula) << '\n';
  });
  emit_meta(ctx, {{"generators", gens}});
  return kExitOk;
}

int cmd_examples(Context& ctx) {
  const Section root = ctx.root();
  const int which = root.require<int>("which");
  if (which != 1 && which != 2) throw ConfigError("field 'which': expected 1 or 2");
  const int n = root.get<int>("n", 1);
  if (which == 1 && root.has("lambda")) throw ConfigError("field 'lambda': only used by example 2");
  const double lambda = root.get<double>("lambda", 0.0);
  const auto grid = time_grid(root, 3.0, 0.05);
  const AotocOptions opts = series_options(ctx).aotoc;
  const AlgebraHandle a = maximal_abelian_algebra(1 << std::clamp(n, 1, 12));
  ExperimentSeries s;
  double worst = 0.0;
  for (double t : grid) {
    const ExampleCase ex = which == 1 ? example1(n, t) : example2(n, lambda, t);
    s.times.push_back(t);
    s.rows.push_back(aotoc(a, propagate(ex.spec, t), opts));
    worst = std::max(worst, std::abs(s.rows.back().g - ex.g_exact));
  }
  emit_table(ctx, [&](std::ostream& os) { write_series_csv(os, s); });
  emit_plot(ctx, {s}, {"example" + std::to_string(which)});
  emit_meta(ctx, {{"max_closed_form_deviation", worst}});
  return kExitOk;
}

int cmd_haar_typical(Context& ctx) {
  const Section root = ctx.root();
  if (!root.has("blocks")) throw ConfigError("missing required field 'blocks'");
  const AlgebraHandle a = build_block_algebra(BlockSpec{parse_blocks(ctx.config.at("blocks"), "blocks"), {}});
  const int samples = root.get<int>("samples", 2000);
  if (samples < 2) throw ConfigError("field 'samples': need at least 2");
  const McEstimate est = haar_typical_mc(a, samples, ctx.seed);
  const DimsAndBounds db = dims_and_bounds(a);
  emit_table(ctx, [&](std::ostream& os) {
    os << "mean,stderr,samples,typical,bound\n"
       << format_double(est.mean) << ',' << format_double(est.stderr_) << ',' << est.samples << ','
       << format_double(db.typical) << ',' << format_double(db.bound) << '\n';
  });
  emit_meta(ctx, {{"z_score", est.stderr_ > 0.0 ? (est.mean - db.typical) / est.stderr_ : 0.0}});
  return kExitOk;
}

int cmd_validate(Context& ctx) {
  const Section root = ctx.root();
  AcceptanceOptions opts;
  opts.seed = ctx.seed;
  const std::string profile = root.get<std::string>("profile", "fast");
  if (profile != "fast" && profile != "full") throw ConfigError("field 'profile': expected \"fast\" or \"full\"");
  opts.profile = profile == "full" ? Profile::full : Profile::fast;
  opts.only = root.get<std::vector<int>>("only", {});
  for (int id : opts.only)
    if (id < 1 || id > kAcceptanceChecks) throw ConfigError("field 'only': check ids run from 1 to 11");
  std::vector<CheckResult> results;
  int failed = 0;
  for (int id = 1; id <= kAcceptanceChecks; ++id) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end()) continue;
    results.push_back(run_check(id, opts));
    *ctx.out << format_check(results.back()) << std::endl;
    if (!results.back().passed) ++failed;
  }
  if (ctx.out_path) {
    auto os = open_file(*ctx.out_path);
    os << "id,passed,worst_deviation,tolerance,seconds\n";
    for (const auto& r : results)
      os << r.id << ',' << (r.passed ? 1 : 0) << ',' << format_double(r.worst_deviation) << ','
         << format_double(r.tolerance) << ',' << format_double(r.seconds) << '\n';
  }
  emit_meta(ctx, {{"failed", failed}});
  return failed == 0 ? kExitOk : kExitCheckFailed;
}

// compute: one algebra, one channel, one route.

struct ComputeInputs {
  AlgebraHandle algebra;
  std::optional<StabilizerGroup> group;
};

ComputeInputs build_algebra(const Section& s) {
  const std::string kind = s.require<std::string>("kind");
  const auto it = kAlgebraKeys.find(kind);
  if (it == kAlgebraKeys.end()) throw ConfigError("field '" + s.field("kind") + "': unknown algebra kind '" + kind + "'");
  std::set<std::string> allowed = it->second;
  allowed.insert("kind");
  s.check_keys(allowed, "algebra kind '" + kind + "'");
  ComputeInputs in;
  if (kind == "maximal_abelian") {
    if (s.has("basis_file"))
      in.algebra = maximal_abelian_algebra(read_complex_matrix(s.get<std::string>("basis_file", "")));
    else
      in.algebra = maximal_abelian_algebra(s.require<int>("dim"));
  } else if (kind == "bipartite") {
    in.algebra = bipartite_algebra(s.require<int>("dA"), s.require<int>("dB"));
  } else if (kind == "projector") {
    if (s.has("state_file")) {
      in.algebra = projector_algebra(read_complex_vector(s.get<std::string>("state_file", "")));
    } else {
      const int d = s.require<int>("dim");
      const int index = s.get<int>("index", 0);
      if (d < 2 || index < 0 || index >= d) throw ConfigError("field '" + s.field("index") + "': out of range");
      Vector psi = Vector::Zero(d);
      psi(index) = 1.0;
      in.algebra = projector_algebra(psi);
    }
  } else if (kind == "blocks") {
    BlockSpec spec;
    if (!s.has("blocks")) throw ConfigError("missing required field '" + s.field("blocks") + "'");
    spec.blocks = parse_blocks(s.raw("blocks"), s.field("blocks"));
    if (s.has("embedding_file")) spec.embedding = read_complex_matrix(s.get<std::string>("embedding_file", ""));
    in.algebra = build_block_algebra(spec);
  } else {
    const int n = s.require<int>("n");
    const int k = s.require<int>("k");
    in.group = build_stabilizer(
        n, k, s.has("generators") ? s.get<std::vector<std::string>>("generators", {}) : default_stabilizer_generators(n, k));
    in.algebra = stabilizer_algebra(*in.group);
  }
  return in;
}

ChannelHandle build_channel(const Section& s, const ComputeInputs& in, std::uint64_t seed) {
  const std::string kind = s.require<std::string>("kind");
  const auto it = kChannelKeys.find(kind);
  if (it == kChannelKeys.end()) throw ConfigError("field '" + s.field("kind") + "': unknown channel kind '" + kind + "'");
  std::set<std::string> allowed = it->second;
  allowed.insert("kind");
  s.check_keys(allowed, "channel kind '" + kind + "'");
  const int d = in.algebra.dim();
  if (kind == "identity") return identity_channel(d);
  if (kind == "depolarizing") return depolarizing_channel(d);
  if (kind == "haar") {
    Rng rng(seed);
    return from_unitary(haar_unitary(d, rng));
  }
  if (kind == "hadamard") {
    if (d < 2 || (d & (d - 1)) != 0) throw ConfigError("channel kind 'hadamard' needs a power-of-two dimension");
    Matrix h = hadamard();
    while (h.rows() < d) h = kron(h, hadamard());
    return from_unitary(h);
  }
  if (kind == "unitary") return from_unitary(read_complex_matrix(s.require<std::string>("matrix_file")));
  if (kind == "kraus") {
    std::vector<Matrix> kraus;
    for (const auto& f : s.require<std::vector<std::string>>("files")) kraus.push_back(read_complex_matrix(f));
    return from_kraus(kraus);
  }
  if (kind == "lindblad") {
    LindbladSpec spec;
    spec.hamiltonian = read_complex_matrix(s.require<std::string>("hamiltonian_file"));
    for (const auto& f : s.get<std::vector<std::string>>("jump_files", {})) spec.jumps.push_back(read_complex_matrix(f));
    return propagate(spec, s.require<double>("t"));
  }
  if (kind == "dephasing_chi") {
    if (!in.group) throw ConfigError("channel kind 'dephasing_chi' needs algebra kind 'stabilizer'");
    std::optional<std::uint64_t> rotation;
    if (s.has("rotation_seed")) rotation = s.get<std::uint64_t>("rotation_seed", 0);
    return dephasing_chi(*in.group, s.require<int>("chi"), rotation);
  }
  const int n = s.require<int>("n");
  const double t = s.require<double>("t");
  const ExampleCase ex = kind == "example1" ? example1(n, t) : example2(n, s.require<double>("lambda"), t);
  return propagate(ex.spec, t);
}

int cmd_compute(Context& ctx) {
  const Section root = ctx.root();
  const ComputeInputs in = build_algebra(root.sub("algebra"));
  const ChannelHandle e = build_channel(root.sub("channel"), in, ctx.seed);
  if (e.dim() != in.algebra.dim())
    throw ConfigError("channel dimension " + std::to_string(e.dim()) + " does not match algebra dimension " +
                      std::to_string(in.algebra.dim()));
  const std::string route = root.get<std::string>("route", "correlator");
  const AotocOptions opts = series_options(ctx).aotoc;
  AotocReport r;
  if (route == "correlator") {
    r = aotoc(in.algebra, e, opts);
  } else if (route == "replica") {
    r = aotoc_replica(in.algebra, e);
  } else if (route == "montecarlo") {
    const int samples = root.get<int>("samples", 10000);
    if (samples < 2) throw ConfigError("field 'samples': need at least 2");
    r = aotoc_montecarlo(in.algebra, e, samples, ctx.seed);
  } else if (route == "otoc4pt") {
    const DimsAndBounds db = dims_and_bounds(in.algebra);
    r.method = Route::otoc4pt;
    r.g = r.g1 = std::numeric_limits<double>::quiet_NaN();
    r.g2 = scrambling_otoc4pt(in.algebra, e);
    r.bound = db.bound;
    r.typical = db.typical;
  } else {
    throw ConfigError("field 'route': expected correlator, replica, montecarlo or otoc4pt");
  }
  emit_table(ctx, [&](std::ostream& os) { write_report_csv(os, {r}); });
  emit_meta(ctx, {{"channel_provenance", std::string(to_string(e.provenance()))}});
  return kExitOk;
}

json load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file '" + path + "': top level must be an object");
  return j;
}

int dispatch(Context& ctx) {
  if (ctx.command == "compute") return cmd_compute(ctx);
  if (ctx.command == "pxp") return cmd_pxp(ctx);
  if (ctx.command == "xxx-dfs") return cmd_xxx_dfs(ctx);
  if (ctx.command == "stabilizer") return cmd_stabilizer(ctx);
  if (ctx.command == "examples") return cmd_examples(ctx);
  if (ctx.command == "haar-typical") return cmd_haar_typical(ctx);
  return cmd_validate(ctx);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Algebraic OTOC toolkit for unital quantum channels", "aotoc"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  json overlay = json::object();
  std::string config_path;
  app.add_option("--config", config_path, "JSON run configuration; flags override its values");
  app.add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& v) { overlay["seed"] = v; }, "RNG seed");
  app.add_option_function<std::string>("--out", [&](const std::string& v) { overlay["out"] = v; },
                                       "output CSV path (metadata and plot data are written beside it)");
  app.add_option_function<std::string>("--profile", [&](const std::string& v) { overlay["profile"] = v; },
                                       "validation profile")
      ->check(CLI::IsMember({"fast", "full"}));
  app.add_option_function<int>("--workers", [&](const int& v) { overlay["workers"] = v; }, "worker threads");

  auto int_flag = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
    sub->add_option_function<long long>(flag, [&overlay, key](const long long& v) { overlay[key] = v; }, help);
  };
  auto real_flag = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
    sub->add_option_function<double>(flag, [&overlay, key](const double& v) { overlay[key] = v; }, help);
  };
  auto text_flag = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
    sub->add_option_function<std::string>(flag, [&overlay, key](const std::string& v) { overlay[key] = v; }, help);
  };
  auto chain_flags = [&](CLI::App* sub) {
    int_flag(sub, "--sites", "sites", "chain length");
    real_flag(sub, "--coupling", "coupling", "energy scale J");
    real_flag(sub, "--alpha", "alpha", "dephasing rate");
    real_flag(sub, "--gamma", "gamma", "driving rate");
    real_flag(sub, "--tmax", "tmax", "final time");
    real_flag(sub, "--dt", "dt", "time step");
  };

  auto* compute = app.add_subcommand("compute", "A-OTOC of one channel for one algebra (config file driven)");
  text_flag(compute, "--route", "route", "correlator, replica, montecarlo or otoc4pt");
  int_flag(compute, "--samples", "samples", "Monte Carlo samples");

  auto* pxp = app.add_subcommand("pxp", "PXP chain time series for a product-state projector algebra");
  chain_flags(pxp);
  text_flag(pxp, "--state", "state", "neel or ferro");

  auto* dfs = app.add_subcommand("xxx-dfs", "XXX chain with collective noise and perturbed DFS algebras");
  chain_flags(dfs);
  dfs->add_option_function<std::vector<double>>(
         "--lambdas", [&](const std::vector<double>& v) { overlay["lambdas"] = v; }, "rotation strengths")
      ->delimiter(',');

  auto* stab = app.add_subcommand("stabilizer", "stabilizer algebra under chi-dephasing");
  int_flag(stab, "--n", "n", "qubits");
  int_flag(stab, "--k", "k", "logical qubits");
  int_flag(stab, "--chi", "chi", "preserved vectors per irrep");
  stab->add_option_function<std::vector<std::string>>(
      "--generators", [&](const std::vector<std::string>& v) { overlay["generators"] = v; }, "Pauli words");

  auto* ex = app.add_subcommand("examples", "closed-form Lindblad examples on the computational basis");
  int_flag(ex, "--which", "which", "1 or 2");
  int_flag(ex, "--n", "n", "qubits");
  real_flag(ex, "--lambda", "lambda", "dephasing strength (example 2)");
  real_flag(ex, "--tmax", "tmax", "final time");
  real_flag(ex, "--dt", "dt", "time step");

  auto* haar = app.add_subcommand("haar-typical", "Monte Carlo Haar average against the closed form");
  std::string blocks_text;
  haar->add_option("--blocks", blocks_text, "blocks as NxD,NxD,... (n_J x d_J)");
  int_flag(haar, "--samples", "samples", "number of Haar unitaries");

  auto* val = app.add_subcommand("validate", "run the acceptance checks");
  val->add_option_function<std::vector<int>>(
         "--only", [&](const std::vector<int>& v) { overlay["only"] = v; }, "check ids")
      ->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  Context ctx;
  ctx.out = &out;
  ctx.err = &err;
  try {
    if (!blocks_text.empty()) overlay["blocks"] = parse_blocks_flag(blocks_text);
    ctx.config = config_path.empty() ? json::object() : load_config(config_path);
    const auto subs = app.get_subcommands();
    const std::string from_file = ctx.config.contains("command") ? Section::convert<std::string>(ctx.config["command"], "command") : "";
    if (!subs.empty()) {
      ctx.command = subs.front()->get_name();
      if (!from_file.empty() && from_file != ctx.command)
        throw ConfigError("field 'command': config says '" + from_file + "' but the command line says '" +
                          ctx.command + "'");
    } else if (!from_file.empty()) {
      ctx.command = from_file;
    } else {
      err << "no command given; run with --help for usage\n";
      return kExitConfig;
    }
    const auto allowed = kCommandKeys.find(ctx.command);
    if (allowed == kCommandKeys.end()) throw ConfigError("field 'command': unknown command '" + ctx.command + "'");
    for (auto& [k, v] : overlay.items()) ctx.config[k] = v;
    ctx.config["command"] = ctx.command;

    std::set<std::string> keys = kCommonKeys;
    keys.insert(allowed->second.begin(), allowed->second.end());
    const Section root = ctx.root();
    root.check_keys(keys, "command '" + ctx.command + "'");
    ctx.seed = root.get<std::uint64_t>("seed", kDefaultSeed);
    if (root.has("out")) ctx.out_path = root.get<std::string>("out", "");
    if (root.has("profile") && ctx.command != "validate")
      throw ConfigError("field 'profile': only used by command 'validate'");
    return dispatch(ctx);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const FormatError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace aotoc::cli
