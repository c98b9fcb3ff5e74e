#include "conclab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <thread>
#include <variant>

#include "conclab/amenability.hpp"
#include "conclab/free_group_l2.hpp"
#include "conclab/incomplete_beta.hpp"
#include "conclab/monte_carlo.hpp"
#include "conclab/permutation.hpp"
#include "conclab/sphere_measure.hpp"

namespace conclab::experiments {
namespace {

using nlohmann::json;
using table::Cell;
using table::Table;
using Row = std::vector<Cell>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ---------------------------------------------------------------------------
// Configuration access

template <class T>
T get(const json& cfg, const std::string& key) {
  try {
    return cfg.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config key '" + key + "': " + e.what());
  }
}

unsigned thread_count(const json& cfg) {
  const auto t = get<std::int64_t>(cfg, "threads");
  if (t < 0) throw ConfigError("threads must be >= 0");
  if (t == 0) return std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(t);
}

std::uint64_t seed_of(const json& cfg) { return get<std::uint64_t>(cfg, "seed"); }

std::string hex(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<std::string> metadata(Kind k, const json& cfg) {
  return {std::string(kToolVersion), "experiment: " + to_string(k),
          "config_hash: fnv1a:" + hex(config_hash(cfg)),
          "seed: " + std::to_string(seed_of(cfg))};
}

std::string fmt(double v) { return table::format_cell(Cell{v}); }

// Computes rows[i] = fn(i) on `threads` workers. The first failing row (by
// index) rethrows, so errors are as deterministic as results.
std::vector<Row> parallel_rows(std::size_t count, unsigned threads,
                               const std::function<Row(std::size_t)>& fn) {
  std::vector<Row> rows(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        rows[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::min<std::size_t>(threads, std::max<std::size_t>(count, 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

// Re-throws library argument errors as configuration errors.
template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConvergenceError&) {
    throw;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  } catch (const std::length_error& e) {
    throw ConfigError(e.what());
  }
}

double cell_double(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  return kNaN;
}

std::vector<double> column_values(const Table& t, const std::string& name) {
  const std::size_t c = t.column(name);
  std::vector<double> out;
  for (const auto& row : t.rows) out.push_back(cell_double(row[c]));
  return out;
}

// ---------------------------------------------------------------------------
// Schemas

std::vector<KeySpec> with_common(std::vector<KeySpec> specific) {
  specific.push_back({"experiment", nullptr, "experiment kind (optional, must match)"});
  specific.push_back({"seed", 0, "master seed"});
  specific.push_back({"threads", 0, "worker threads, 0 = hardware concurrency"});
  specific.push_back({"out", ".", "output directory"});
  specific.push_back({"svg", false, "also write SVG line charts"});
  return specific;
}

const std::map<Kind, std::vector<KeySpec>>& schemas() {
  static const std::map<Kind, std::vector<KeySpec>> s = {
      {Kind::tube,
       with_common({
           {"n", {100, 200, 400, 800, 1600}, "subsphere dimensions"},
           {"k", {"sqrt"}, "codimensions: integers, \"sqrt\" (ceil sqrt n), \"quarter\" (ceil n/4)"},
           {"epsilon", {0.2}, "geodesic radii in (0, pi/2)"},
           {"C", {0.1}, "decay constants for exp(-C n)"},
           {"samples", 10000, "Monte Carlo samples per row (0 disables)"},
           {"levy_c1", std::sqrt(std::numbers::pi / 2.0), "Levy constant C1"},
           {"levy_c2", 0.5, "Levy constant C2"},
       })},
      {Kind::free_group,
       with_common({
           {"ball_radius", 6, "support radius of sampled vectors"},
           {"samples", 20000, "sampled vectors per class"},
           {"convention", "pullback", "pullback, inverse or both"},
           {"indices", {1, 2, 3, 4}, "i with W_{-i} and a^i"},
           {"inclusion_radius", 8, "radius of the exhaustive inclusion check"},
           {"epsilon", 1.0 / 12.0, "neighbourhood radius"},
           {"search_seeds", 16, "random seeds for the intersection search"},
           {"search_iterations", 200, "averaged-projection steps per seed"},
           {"search_radius", 3, "support radius of search seeds"},
       })},
      {Kind::folner,
       with_common({
           {"group", {{"kind", "lattice"}, {"dim", 1}}, "lattice{dim}, heisenberg, free{rank}, cyclic{modulus}"},
           {"generators", nullptr, "generator list (null = standard generators)"},
           {"length", 50, "chain length"},
           {"convention", "pullback", "pullback or inverse"},
       })},
      {Kind::hamming,
       with_common({
           {"n", {4, 6, 8, 10, 20, 50, 100, 200}, "even sizes >= 4"},
       })},
      {Kind::fibre,
       with_common({
           {"points",
            {{1, 2, 1.0, 0.5}, {2, 3, 0.5, 0.2}, {3, 5, 1.0, 0.3}, {5, 6, 0.8, 0.1},
             {5, 10, 2.0, 0.4}, {10, 12, 1.2, 0.2}, {20, 21, 1.4, 0.3},
             {30, 40, 1.3, 0.2}, {50, 52, 1.5, 0.1}, {100, 101, 1.5, 0.05}},
            "rows [n, N, cap_radius, epsilon]"},
           {"samples", 100000, "Monte Carlo samples per row"},
       })},
      {Kind::report,
       with_common({
           {"tube", json::object(), "tube config"},
           {"free-group", json::object(), "free-group config"},
           {"folner", json::object(), "folner config"},
           {"hamming", json::object(), "hamming config"},
           {"fibre", json::object(), "fibre config"},
       })},
  };
  return s;
}

// ---------------------------------------------------------------------------
// tube

int resolve_k(const json& spec, int n) {
  if (spec.is_string()) {
    const auto s = spec.get<std::string>();
    if (s == "sqrt") {
      int k = 0;
      while (static_cast<long long>(k) * k < n) ++k;
      return std::max(k, 1);
    }
    if (s == "quarter") return std::max((n + 3) / 4, 1);
    throw ConfigError("unknown k rule '" + s + "'");
  }
  if (!spec.is_number_integer() || spec.get<long long>() < 0) {
    throw ConfigError("k must be a nonnegative integer, \"sqrt\" or \"quarter\"");
  }
  return spec.get<int>();
}

std::string k_label(const json& spec) {
  return spec.is_string() ? spec.get<std::string>() : std::to_string(spec.get<long long>());
}

Output run_tube(const json& cfg) {
  const auto ns = get<std::vector<int>>(cfg, "n");
  const json ks = cfg.at("k");
  const auto eps = get<std::vector<double>>(cfg, "epsilon");
  const auto cs = get<std::vector<double>>(cfg, "C");
  const auto samples = get<std::uint64_t>(cfg, "samples");
  const sphere::LevyConstants levy{get<double>(cfg, "levy_c1"), get<double>(cfg, "levy_c2")};
  guarded([&] { levy.validate(); });
  if (!ks.is_array() || ns.empty() || ks.empty() || eps.empty() || cs.empty()) {
    throw ConfigError("tube grid lists must be nonempty arrays");
  }

  struct Point {
    int n, k;
    double eps, c;
    std::string series;
  };
  std::vector<Point> grid;
  for (int n : ns) {
    if (n < 1) throw ConfigError("n must be >= 1");
    for (const auto& kspec : ks) {
      for (double e : eps) {
        if (!(e > 0.0 && e < std::numbers::pi / 2)) {
          throw ConfigError("epsilon must lie in (0, pi/2)");
        }
        for (double c : cs) {
          if (!std::isfinite(c)) throw ConfigError("C must be finite");
          grid.push_back({n, resolve_k(kspec, n), e, c,
                          "k=" + k_label(kspec) + " eps=" + fmt(e) + " C=" + fmt(c)});
        }
      }
    }
  }

  Table t;
  t.metadata = metadata(Kind::tube, cfg);
  t.metadata.push_back("levy_constants: c1=" + fmt(levy.c1) + " c2=" + fmt(levy.c2));
  t.columns = {"n", "k", "epsilon", "C", "tube_exact", "tube_mc", "tube_mc_stderr",
               "levy_bound", "recursive_bound", "simplified_bound", "exp_minus_Cn_ratio",
               "log_ratio"};
  const SampleStream base{seed_of(cfg), 0};
  auto rows = parallel_rows(grid.size(), thread_count(cfg), [&](std::size_t i) -> Row {
    const Point& p = grid[i];
    const sphere::SphereQuery q{p.n, p.n + p.k, p.eps};
    const auto exact = sphere::tube_measure(q);
    double mc = kNaN, se = kNaN;
    if (samples > 0) {
      const auto e = mc::estimate_tube_measure(q, base.substream(i), samples);
      mc = e.mean;
      se = e.std_error;
    }
    const double levy_value = sphere::levy_lower_bound(p.n, p.eps, levy);
    if (p.k == 0) {
      // n = N: the neighbourhood is the whole sphere and both products are empty.
      const double log_ratio = -p.c * p.n;
      return {std::int64_t{p.n}, std::int64_t{0}, p.eps, p.c, exact.value, mc, se,
              levy_value, 1.0, 1.0, std::exp(log_ratio), log_ratio};
    }
    const auto bound = sphere::recursive_tube_lower_bound(q, levy);
    const auto ratio = sphere::tube_decay_ratio(p.n, p.k, p.eps, p.c);
    const double r =
        ratio.ratio.value_or(ratio.log_ratio < 0 ? 0.0 : std::numeric_limits<double>::infinity());
    return {std::int64_t{p.n}, std::int64_t{p.k}, p.eps, p.c, exact.value, mc, se,
            levy_value, bound.product.value, bound.simplified.value, r, ratio.log_ratio};
  });
  for (auto& r : rows) t.add_row(std::move(r));

  Output out;
  if (get<bool>(cfg, "svg")) {
    std::map<std::string, std::pair<std::vector<double>, std::vector<std::size_t>>> groups;
    std::vector<std::string> order;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      auto [it, fresh] = groups.try_emplace(grid[i].series);
      if (fresh) order.push_back(grid[i].series);
      it->second.first.push_back(grid[i].n);
      it->second.second.push_back(i);
    }
    for (const auto& [metric, log_y] :
         std::vector<std::pair<std::string, bool>>{{"tube_exact", false},
                                                   {"recursive_bound", false},
                                                   {"exp_minus_Cn_ratio", true}}) {
      const auto values = column_values(t, metric);
      // One chart per metric; series share x only when their n lists match,
      // so plot each against its own n by padding onto the union of n.
      std::vector<double> xs;
      for (const auto& g : order) {
        for (double x : groups[g].first) xs.push_back(x);
      }
      std::sort(xs.begin(), xs.end());
      xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
      std::vector<table::Series> series;
      for (const auto& g : order) {
        table::Series s{g, std::vector<double>(xs.size(), kNaN)};
        const auto& [gx, idx] = groups[g];
        for (std::size_t j = 0; j < gx.size(); ++j) {
          const auto pos = std::lower_bound(xs.begin(), xs.end(), gx[j]) - xs.begin();
          s.y[static_cast<std::size_t>(pos)] = values[idx[j]];
        }
        series.push_back(std::move(s));
      }
      out.files.emplace_back("tube_" + metric + ".svg",
                             table::line_chart_svg(metric, "n", xs, series, log_y));
    }
  }
  out.tables.emplace_back("tube.csv", std::move(t));
  return out;
}

// ---------------------------------------------------------------------------
// free-group

std::vector<ActionConvention> conventions(const json& cfg, bool allow_both) {
  const auto c = get<std::string>(cfg, "convention");
  if (allow_both && c == "both") return {ActionConvention::pullback, ActionConvention::inverse};
  return {guarded([&] { return parse_convention(c); })};
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + fmt(v[i]);
  return s;
}

Output run_free_group(const json& cfg) {
  const int radius = get<int>(cfg, "ball_radius");
  const auto samples = get<std::size_t>(cfg, "samples");
  const auto indices = get<std::vector<long>>(cfg, "indices");
  const int inclusion_radius = get<int>(cfg, "inclusion_radius");
  const double epsilon = get<double>(cfg, "epsilon");
  const auto seeds = get<std::size_t>(cfg, "search_seeds");
  const auto iterations = get<std::size_t>(cfg, "search_iterations");
  const int search_radius = get<int>(cfg, "search_radius");
  if (indices.empty()) throw ConfigError("empty index range");
  for (int r : {radius, inclusion_radius, search_radius}) {
    if (r < 0 || r > free_group::kMaxBallRadius) {
      throw ConfigError("ball radius must be in [0, 12]");
    }
  }
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  const auto convs = conventions(cfg, true);
  const std::uint64_t seed = seed_of(cfg);

  Table t;
  t.metadata = metadata(Kind::free_group, cfg);
  t.metadata.push_back("cover: A1 = {f : ||chi_W0 f|| <= 1/3}, A2 = {f : ||chi_W0 f|| >= 1/3}");
  std::string fset = "translates: e";
  for (long i : indices) fset += ", a^" + std::to_string(i);
  t.metadata.push_back(fset + ", b");
  t.columns = {"class", "convention", "samples", "violations_of_A1_chain",
               "inclusion_exceptions", "certified_margin",
               "min_over_i_distribution_quantiles", "fraction_below_one_sixth",
               "claim_violations", "pigeonhole_failures", "candidate_vector_min",
               "candidate_translated_norms", "search_status", "search_max_distance"};

  // Two rows (A1, A2) per convention.
  auto rows = parallel_rows(2 * convs.size(), thread_count(cfg), [&](std::size_t i) -> Row {
    const ActionConvention conv = convs[i / 2];
    const std::uint64_t c = i / 2;
    const FreeGroup f2{2};
    return guarded([&]() -> Row {
      std::vector<ReducedWord> f_set;
      long top = 0;
      for (long k : indices) {
        f_set.push_back(ReducedWord::generator(0, k));
        top = std::max(top, std::labs(k));
      }
      f_set.push_back(ReducedWord::generator(1));
      amenability::SearchSetup<ReducedWord> setup;
      setup.support = enumerate_ball(search_radius);
      // Pairs whose translates outgrow the ball are left to the search.
      setup.domain = free_group::prefix_pair_domain(
          std::min<int>(free_group::kMaxBallRadius,
                        std::max<int>(inclusion_radius, static_cast<int>(top) + 1)),
          0);
      setup.witnesses = {{WitnessKind::restricted_norm, free_group::prefix_class_set({0})}};
      setup.random_seeds = seeds;
      setup.iterations = iterations;
      setup.stream = {seed, 100 + c};
      const auto cover = i % 2 == 0 ? free_group::cover_a1() : free_group::cover_a2();
      const auto search =
          amenability::essential_set_search(f2, {cover}, f_set, epsilon, setup, conv);
      const auto& er = search.elements.front();
      const double best = er.best ? er.best->max_distance : kNaN;
      const Cell status = amenability::to_string(er.status);
      const Cell blank = std::string();
      if (i % 2 == 0) {
        const auto r = free_group::verify_a1_separation(samples, radius, {seed, 2 * c},
                                                        conv, inclusion_radius, epsilon);
        return {std::string("A1"), to_string(conv), static_cast<std::int64_t>(samples),
                static_cast<std::int64_t>(r.chain_violations),
                static_cast<std::int64_t>(r.inclusion_exceptions),
                r.certificate ? r.certificate->margin : kNaN, blank, blank, blank, blank,
                blank, blank, status, best};
      }
      const auto r = free_group::evaluate_a2_claim(samples, radius, {seed, 2 * c + 1},
                                                   indices, conv);
      return {std::string("A2"), to_string(conv), static_cast<std::int64_t>(samples), blank,
              blank, blank,
              join({r.quantiles.begin(), r.quantiles.end()}),
              r.fraction_below_one_sixth, static_cast<std::int64_t>(r.claim_violations),
              static_cast<std::int64_t>(r.pigeonhole_failures), r.candidate_min,
              join(r.candidate_translated_norms), status, best};
    });
  });
  for (auto& r : rows) t.add_row(std::move(r));
  Output out;
  out.tables.emplace_back("free_group.csv", std::move(t));
  return out;
}

// ---------------------------------------------------------------------------
// folner

using AnyGroup = std::variant<IntegerLattice, HeisenbergGroup, FreeGroup, CyclicGroup>;

AnyGroup parse_group(const json& g) {
  if (!g.is_object() || !g.contains("kind")) throw ConfigError("group needs a kind");
  const auto kind = get<std::string>(g, "kind");
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : g.items()) {
      if (k != "kind" && std::find_if(keys.begin(), keys.end(), [&](const char* s) {
                           return k == s;
                         }) == keys.end()) {
        throw ConfigError("unknown group key '" + k + "'");
      }
    }
  };
  return guarded([&]() -> AnyGroup {
    if (kind == "lattice") {
      allow({"dim"});
      return IntegerLattice(g.contains("dim") ? get<int>(g, "dim") : 1);
    }
    if (kind == "heisenberg") {
      allow({});
      return HeisenbergGroup{};
    }
    if (kind == "free") {
      allow({"rank"});
      return FreeGroup(g.contains("rank") ? get<int>(g, "rank") : 2);
    }
    if (kind == "cyclic") {
      allow({"modulus"});
      return CyclicGroup(get<std::int64_t>(g, "modulus"));
    }
    throw ConfigError("unknown group kind '" + kind + "'");
  });
}

template <DiscreteGroup G>
Output folner_for(const G& group, const json& cfg) {
  using Key = typename G::element_type;
  const int length = get<int>(cfg, "length");
  if (length < 1) throw ConfigError("length must be >= 1");
  const ActionConvention conv = conventions(cfg, false).front();
  std::vector<Key> d;
  if (cfg.at("generators").is_null()) {
    d = group.standard_generators();
  } else {
    for (const auto& s : get<std::vector<std::string>>(cfg, "generators")) {
      d.push_back(guarded([&] { return group.parse(s); }));
    }
  }
  if (d.empty()) throw ConfigError("generator list is empty");

  Table t;
  t.metadata = metadata(Kind::folner, cfg);
  t.metadata.push_back("group: " + group.name());
  std::string gens = "generators:";
  for (const Key& g : d) gens += " " + group.format(g);
  t.metadata.push_back(gens);
  t.metadata.push_back("convention: " + to_string(conv));

  std::vector<amenability::FolnerCandidate<Key>> chain;
  try {
    chain = guarded([&] { return amenability::folner_chain(group, d, length); });
  } catch (const amenability::NoFolnerChain& e) {
    t.metadata.push_back(std::string("note: ") + e.what() + "; rows are word balls");
    guarded([&] {
      for (int r = 1; r <= length; ++r) {
        chain.push_back({amenability::word_ball(group, d, r), d});
      }
      return 0;
    });
  }
  for (const Key& g : d) {
    if (g == group.identity()) throw ConfigError("generator is the identity");
  }
  const auto orbits = amenability::orbit_chain(group, chain, conv);
  const auto failures = amenability::nesting_failures(group, chain);

  t.columns = {"step", "size", "boundary", "ratio", "dim", "dim_ratio", "nested_next",
               "displacement_sq", "displacement_identity_error"};
  auto rows = parallel_rows(chain.size(), thread_count(cfg), [&](std::size_t i) -> Row {
    const auto& k = chain[i];
    const auto dk = amenability::product_set(group, k.generators, k.elements);
    const auto boundary = amenability::symmetric_difference_size(k.elements, dk);
    double err = 0.0;
    double first = kNaN;
    for (const Key& g : d) {
      const double direct = amenability::displacement_squared(group, g, k.elements, conv);
      const double counted = amenability::translate_difference_ratio(group, g, k.elements);
      if (std::isnan(first)) first = direct;
      err = std::max(err, std::fabs(direct - counted));
    }
    const Cell nested = i + 1 < chain.size()
                            ? Cell{std::find(failures.begin(), failures.end(), i) ==
                                   failures.end()}
                            : Cell{std::string()};
    return {static_cast<std::int64_t>(i + 1), static_cast<std::int64_t>(k.elements.size()),
            static_cast<std::int64_t>(boundary),
            static_cast<double>(boundary) / static_cast<double>(k.elements.size()),
            static_cast<std::int64_t>(orbits.dims[i]),
            i == 0 ? kNaN : orbits.ratios[i - 1], nested, first, err};
  });
  for (auto& r : rows) t.add_row(std::move(r));

  Output out;
  if (get<bool>(cfg, "svg")) {
    const auto x = column_values(t, "step");
    out.files.emplace_back(
        "folner_ratio.svg",
        table::line_chart_svg("boundary ratio, " + group.name(), "step", x,
                              {{"ratio", column_values(t, "ratio")}}));
    out.files.emplace_back(
        "folner_dim_ratio.svg",
        table::line_chart_svg("orbit span growth, " + group.name(), "step", x,
                              {{"dim_ratio", column_values(t, "dim_ratio")}}));
  }
  out.tables.emplace_back("folner.csv", std::move(t));
  return out;
}

Output run_folner(const json& cfg) {
  return std::visit([&](const auto& g) { return folner_for(g, cfg); },
                    parse_group(cfg.at("group")));
}

// ---------------------------------------------------------------------------
// hamming

Output run_hamming(const json& cfg) {
  const auto ns = get<std::vector<int>>(cfg, "n");
  if (ns.empty()) throw ConfigError("n list is empty");
  Table t;
  t.metadata = metadata(Kind::hamming, cfg);
  t.metadata.push_back("composition: (st)(i) = s(t(i))");
  t.columns = {"n", "phi_before", "phi_after", "amplification"};
  for (int n : ns) {
    const auto c = guarded([&] { return sym::equicontinuity_counterexample(n); });
    t.add_row({std::int64_t{n}, c.phi_before, c.phi_after, c.amplification});
  }
  Output out;
  if (get<bool>(cfg, "svg")) {
    out.files.emplace_back(
        "hamming_amplification.svg",
        table::line_chart_svg("phi(s eta, eta^2) / phi(s, eta)", "n", column_values(t, "n"),
                              {{"amplification", column_values(t, "amplification")}}));
  }
  out.tables.emplace_back("hamming.csv", std::move(t));
  return out;
}

// ---------------------------------------------------------------------------
// fibre

Output run_fibre(const json& cfg) {
  const auto points = get<std::vector<std::vector<double>>>(cfg, "points");
  const auto samples = get<std::uint64_t>(cfg, "samples");
  if (points.empty()) throw ConfigError("points list is empty");
  if (samples == 0) throw ConfigError("samples must be positive");
  struct P {
    int n, N;
    double r, eps;
  };
  std::vector<P> grid;
  for (const auto& p : points) {
    if (p.size() != 4 || p[0] != std::floor(p[0]) || p[1] != std::floor(p[1])) {
      throw ConfigError("fibre points are [n, N, cap_radius, epsilon] with integer n, N");
    }
    const P q{static_cast<int>(p[0]), static_cast<int>(p[1]), p[2], p[3]};
    if (q.n < 1 || q.N <= q.n || !(q.r >= 0.0 && q.r <= std::numbers::pi) ||
        !(q.eps > 0.0 && q.eps < std::numbers::pi / 2)) {
      throw ConfigError("fibre point needs 1 <= n < N, 0 <= r <= pi, 0 < eps < pi/2");
    }
    grid.push_back(q);
  }
  Table t;
  t.metadata = metadata(Kind::fibre, cfg);
  t.metadata.push_back("cap of radius cap_radius in S^n; violation: lhs_mc + 4 se < rhs");
  t.columns = {"n", "N", "cap_radius", "epsilon", "lhs_mc", "lhs_stderr", "cap_measure",
               "tube_measure", "rhs", "margin", "violation", "cylinder_mc",
               "cylinder_stderr", "cylinder_exact", "cylinder_agrees"};
  const SampleStream base{seed_of(cfg), 0};
  auto rows = parallel_rows(grid.size(), thread_count(cfg), [&](std::size_t i) -> Row {
    const P& p = grid[i];
    const auto f = mc::check_fibre_inequality(p.n, p.N, p.r, p.eps, base.substream(2 * i),
                                              samples);
    const double cap = sphere::cap_measure(p.n, p.r).value;
    const double tube = sphere::tube_measure({p.n, p.N, p.eps}).value;
    const auto cyl =
        mc::estimate_cylinder_measure(p.n, p.r, p.eps, base.substream(2 * i + 1), samples);
    const double cyl_exact = cap * sphere::tube_measure({p.n, p.n + 1, p.eps}).value;
    return {std::int64_t{p.n}, std::int64_t{p.N}, p.r, p.eps, f.lhs.mean, f.lhs.std_error,
            cap, tube, f.rhs, f.margin, f.violation, cyl.mean, cyl.std_error, cyl_exact,
            mc::agrees_with(cyl, cyl_exact)};
  });
  for (auto& r : rows) t.add_row(std::move(r));
  Output out;
  if (get<bool>(cfg, "svg")) {
    std::vector<double> x;
    for (std::size_t i = 0; i < grid.size(); ++i) x.push_back(static_cast<double>(i));
    out.files.emplace_back("fibre_margin.svg",
                           table::line_chart_svg("lhs - rhs", "row", x,
                                                 {{"margin", column_values(t, "margin")}}));
  }
  out.tables.emplace_back("fibre.csv", std::move(t));
  return out;
}

// ---------------------------------------------------------------------------
// report

Output run_report(const json& cfg) {
  Output out;
  Table summary;
  summary.metadata = metadata(Kind::report, cfg);
  summary.columns = {"experiment", "file", "rows", "config_hash"};
  for (Kind k : {Kind::tube, Kind::free_group, Kind::folner, Kind::hamming, Kind::fibre}) {
    json sub = cfg.at(to_string(k));
    if (!sub.is_object()) throw ConfigError(to_string(k) + " section must be an object");
    for (const char* common : {"seed", "threads", "svg"}) {
      if (!sub.contains(common)) sub[common] = cfg.at(common);
    }
    const json resolved = resolve_config(k, sub);
    Output part = run(k, resolved);
    for (auto& [name, table] : part.tables) {
      summary.add_row({to_string(k), name, static_cast<std::int64_t>(table.rows.size()),
                       "fnv1a:" + hex(config_hash(resolved))});
      out.tables.emplace_back(std::move(name), std::move(table));
    }
    for (auto& f : part.files) out.files.push_back(std::move(f));
  }
  out.tables.emplace_back("report.csv", std::move(summary));
  return out;
}

}  // namespace

std::string to_string(Kind k) {
  switch (k) {
    case Kind::tube: return "tube";
    case Kind::free_group: return "free-group";
    case Kind::folner: return "folner";
    case Kind::hamming: return "hamming";
    case Kind::fibre: return "fibre";
    case Kind::report: return "report";
  }
  return "?";
}

Kind parse_kind(std::string_view name) {
  for (Kind k : {Kind::tube, Kind::free_group, Kind::folner, Kind::hamming, Kind::fibre,
                 Kind::report}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

const std::vector<KeySpec>& schema(Kind k) { return schemas().at(k); }

json resolve_config(Kind k, const json& user) {
  if (!user.is_object()) throw ConfigError("config must be a JSON object");
  json out = json::object();
  for (const auto& spec : schema(k)) out[spec.name] = spec.default_value;
  for (const auto& [key, value] : user.items()) {
    if (!out.contains(key)) {
      throw ConfigError("unknown config key '" + key + "' for " + to_string(k));
    }
    out[key] = value;
  }
  if (!out["experiment"].is_null() && out["experiment"] != to_string(k)) {
    throw ConfigError("config is for experiment '" + out["experiment"].dump() +
                      "', not " + to_string(k));
  }
  out["experiment"] = to_string(k);
  return out;
}

std::uint64_t config_hash(const json& resolved) {
  json semantic = resolved;
  for (const char* key : {"threads", "out", "svg"}) semantic.erase(key);
  return table::fnv1a(semantic.dump());
}

Output run(Kind k, const json& resolved) {
  switch (k) {
    case Kind::tube: return run_tube(resolved);
    case Kind::free_group: return run_free_group(resolved);
    case Kind::folner: return run_folner(resolved);
    case Kind::hamming: return run_hamming(resolved);
    case Kind::fibre: return run_fibre(resolved);
    case Kind::report: return run_report(resolved);
  }
  throw ConfigError("unknown experiment");
}

void write_output(const Output& out, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    f << text;
  };
  for (const auto& [name, t] : out.tables) write(name, table::to_csv(t));
  for (const auto& [name, text] : out.files) write(name, text);
}

}  // namespace conclab::experiments
