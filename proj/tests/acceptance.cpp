// Acceptance gate: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "conclab/amenability.hpp"
#include "conclab/experiments.hpp"
#include "conclab/free_group_l2.hpp"
#include "conclab/monte_carlo.hpp"
#include "conclab/permutation.hpp"
#include "conclab/sphere_measure.hpp"

using namespace conclab;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct GridPoint {
  int n, k;
  double eps;
};

std::vector<GridPoint> tube_grid() {
  std::vector<GridPoint> g;
  for (int n : {5, 10, 50, 200, 1000}) {
    for (int k : {1, 3, 10, (n + 3) / 4}) {
      for (double e : {0.1, 0.3, 0.5}) g.push_back({n, k, e});
    }
  }
  return g;
}

Outcome tube_oracle() {
  const auto grid = tube_grid();
  const SampleStream base{20261016, 1};
  int agree = 0;
  double worst = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const sphere::SphereQuery q{grid[i].n, grid[i].n + grid[i].k, grid[i].eps};
    const double exact = sphere::tube_measure(q).value;
    const auto est = mc::estimate_tube_measure(q, base.substream(i), 1'000'000);
    if (mc::agrees_with(est, exact)) ++agree;
    worst = std::max(worst, std::fabs(est.mean - exact) / mc::comparison_std_error(est, exact));
  }
  return {agree >= 58, fmt("%d/%zu points within 4 SE (worst %.2f SE)", agree, grid.size(), worst)};
}

Outcome decay_ratio() {
  std::vector<double> logs;
  bool strict = true;
  for (int n : {100, 200, 400, 800, 1600}) {
    int k = 0;
    while (k * k < n) ++k;
    logs.push_back(sphere::tube_decay_ratio(n, k, 0.2, 0.1).log_ratio);
    if (logs.size() > 1 && !(logs.back() < logs[logs.size() - 2])) strict = false;
  }
  const double drop = std::exp(logs.front() - logs.back());
  return {strict && drop >= 10.0, fmt("strictly decreasing: %s, overall drop %.3g", strict ? "yes" : "no", drop)};
}

Outcome dominance() {
  int bad = 0;
  for (const auto& p : tube_grid()) {
    const sphere::SphereQuery q{p.n, p.n + p.k, p.eps};
    const auto b = sphere::recursive_tube_lower_bound(q);
    const double exact = sphere::tube_measure(q).value;
    if (!(b.simplified.value <= b.product.value && b.product.value <= exact)) ++bad;
  }
  return {bad == 0, fmt("%d violations on %zu points", bad, tube_grid().size())};
}

Outcome cylinder_product() {
  struct P {
    int n;
    double r, eps;
  };
  const std::vector<P> pts = {{1, 1.0, 0.5}, {2, 0.5, 0.2},  {3, 1.0, 0.3}, {5, 0.8, 0.1},
                              {5, 2.0, 0.4}, {10, 1.2, 0.2}, {20, 1.4, 0.3}, {30, 1.3, 0.2},
                              {50, 1.5, 0.1}, {100, 1.5, 0.05}};
  const SampleStream base{20261016, 4};
  int agree = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    const double exact = sphere::cap_measure(p.n, p.r).value *
                         sphere::tube_measure({p.n, p.n + 1, p.eps}).value;
    if (mc::agrees_with(mc::estimate_cylinder_measure(p.n, p.r, p.eps, base.substream(i), 1'000'000),
                        exact)) {
      ++agree;
    }
  }
  return {agree == static_cast<int>(pts.size()), fmt("%d/%zu points within 4 SE", agree, pts.size())};
}

Outcome a1_branch() {
  const auto r = free_group::verify_a1_separation(100'000, 6, {20261016, 5},
                                                  ActionConvention::pullback, 8, 1.0 / 12);
  const double margin = r.certificate ? r.certificate->margin : -1.0;
  const bool ok = r.inclusion_exceptions == 0 && r.chain_violations == 0 &&
                  std::fabs(margin - 1.0 / 6.0) <= 1e-12;
  return {ok, fmt("inclusion exceptions %zu/%zu, chain violations %zu/%zu, min ||chi_W0 bf|| %.6f, margin %.12g",
                  r.inclusion_exceptions, r.inclusion_words, r.chain_violations, r.samples,
                  r.min_translated_norm, margin)};
}

Outcome a2_branch() {
  const auto r = free_group::evaluate_a2_claim(100'000, 6, {20261016, 6}, {1, 2, 3, 4},
                                               ActionConvention::pullback);
  const double err = std::fabs(r.candidate_min - std::sqrt(2.0) / 3.0);
  const bool ok = err <= 1e-12 && r.pigeonhole_failures == 0;
  return {ok, fmt("candidate min %.15f (err %.1e), pigeonhole failures %zu; min_i >= 1/6 on %zu of %zu samples (recorded, not asserted)",
                  r.candidate_min, err, r.pigeonhole_failures, r.claim_violations, r.samples)};
}

template <class G>
void displacement_pairs(const G& group, const std::vector<std::vector<typename G::element_type>>& sets,
                        const std::vector<typename G::element_type>& shifts, std::size_t& pairs,
                        double& worst) {
  for (const auto& k : sets) {
    for (const auto& g : shifts) {
      for (auto conv : {ActionConvention::pullback, ActionConvention::inverse}) {
        const double d = amenability::displacement_squared(group, g, k, conv);
        worst = std::max(worst, std::fabs(d - amenability::translate_difference_ratio(group, g, k)));
        ++pairs;
      }
    }
  }
}

template <class G>
std::vector<std::vector<typename G::element_type>> chain_sets(const G& group, int length) {
  std::vector<std::vector<typename G::element_type>> out;
  for (const auto& k : amenability::folner_chain(group, group.standard_generators(), length)) {
    out.push_back(k.elements);
  }
  return out;
}

Outcome displacement() {
  std::size_t pairs = 0;
  double worst = 0;
  const IntegerLattice z(1), z2(2);
  const HeisenbergGroup h;
  const CyclicGroup c(12);
  const FreeGroup f;
  displacement_pairs(z, chain_sets(z, 20), {{1}, {-1}, {2}, {5}, {-17}}, pairs, worst);
  displacement_pairs(z2, chain_sets(z2, 8), {{1, 0}, {0, 1}, {2, -1}, {-3, 2}}, pairs, worst);
  displacement_pairs(h, chain_sets(h, 4), {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {1, 1, 1}}, pairs, worst);
  displacement_pairs(c, chain_sets(c, 14), {1, 5, 11}, pairs, worst);
  std::vector<std::vector<ReducedWord>> balls;
  for (int r = 1; r <= 4; ++r) balls.push_back(amenability::word_ball(f, f.standard_generators(), r));
  displacement_pairs(f, balls, enumerate_ball(2), pairs, worst);

  bool exact_ratio = true;
  const auto zc = amenability::folner_chain(z, z.standard_generators(), 200);
  for (std::size_t i = 0; i < zc.size(); ++i) {
    if (amenability::boundary_ratio(z, zc[i]) != 2.0 / static_cast<double>(i + 1)) exact_ratio = false;
  }
  return {pairs >= 200 && worst <= 1e-12 && exact_ratio,
          fmt("%zu (g,K) pairs, max |difference| %.2e; Z box ratio == 2/n for n <= 200: %s", pairs,
              worst, exact_ratio ? "yes" : "no")};
}

Outcome hamming() {
  int bad = 0, count = 0;
  for (int n = 4; n <= 200; n += 2, ++count) {
    const auto c = sym::equicontinuity_counterexample(n);
    if (c.before.numerator != 2 || c.before.denominator != static_cast<std::size_t>(n) ||
        c.after.numerator != c.after.denominator || c.phi_after != 1.0 ||
        c.amplification != n / 2.0) {
      ++bad;
    }
  }
  return {bad == 0, fmt("%d of %d even n in [4, 200] off the exact values", bad, count)};
}

Outcome determinism() {
  namespace ex = experiments;
  const std::vector<std::pair<ex::Kind, json>> configs = {
      {ex::Kind::tube, {{"n", {100, 200, 400}}, {"samples", 20000}}},
      {ex::Kind::free_group,
       {{"ball_radius", 4}, {"samples", 2000}, {"convention", "both"}, {"search_seeds", 2},
        {"search_iterations", 40}, {"search_radius", 2}}},
      {ex::Kind::folner, {{"group", {{"kind", "heisenberg"}}}, {"length", 6}}},
      {ex::Kind::hamming, json::object()},
      {ex::Kind::fibre, {{"samples", 20000}}},
      {ex::Kind::report,
       {{"hamming", {{"n", {4, 8}}}}, {"tube", {{"n", {50}}, {"samples", 1000}}}}},
  };
  std::size_t files = 0, mismatched = 0;
  for (const auto& [kind, user] : configs) {
    std::vector<std::vector<std::string>> runs;
    for (int threads : {1, 4, 1}) {
      json u = user;
      u["seed"] = 77;
      u["threads"] = threads;
      std::vector<std::string> csvs;
      for (const auto& [name, t] : ex::run(kind, ex::resolve_config(kind, u)).tables) {
        csvs.push_back(table::to_csv(t));
      }
      runs.push_back(std::move(csvs));
    }
    files += runs[0].size();
    for (std::size_t i = 0; i < runs[0].size(); ++i) {
      if (runs[1].at(i) != runs[0][i] || runs[2].at(i) != runs[0][i]) ++mismatched;
    }
  }
  return {mismatched == 0, fmt("%zu CSV files compared across threads 1/4/1, %zu differ", files, mismatched)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"tube measure vs Monte Carlo, 60 points at 1e6 samples", tube_oracle},
      {"exp(-Cn)/tube ratio along k_n = ceil(sqrt n)", decay_ratio},
      {"simplified <= recursive <= exact", dominance},
      {"cylinder measure = cap x tube", cylinder_product},
      {"A1 separation chain", a1_branch},
      {"A2 candidate and pigeonhole bound", a2_branch},
      {"displacement identity and Z box ratios", displacement},
      {"Hamming counterexample", hamming},
      {"byte-identical reruns", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %zu: %s: %s: %s (%.1fs)\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
