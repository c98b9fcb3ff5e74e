#include "conclab/permutation.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <set>
#include <stdexcept>
#include <vector>

namespace conclab::sym {

Permutation Permutation::from_images(const std::map<long, long>& images) {
  std::set<long> targets;
  for (const auto& [i, j] : images) {
    if (i < 1 || j < 1) throw std::invalid_argument("permutation points must be positive");
    if (!targets.insert(j).second) throw std::invalid_argument("permutation is not injective");
  }
  for (const auto& [i, j] : images) {
    if (!images.contains(j)) {
      throw std::invalid_argument("image " + std::to_string(j) + " leaves the support");
    }
  }
  Permutation p;
  for (const auto& [i, j] : images) {
    if (i != j) p.moved_.emplace(i, j);
  }
  return p;
}

Permutation Permutation::transposition(long i, long j) {
  return from_images({{i, j}, {j, i}});
}

Permutation Permutation::parse(std::string_view text) {
  auto skip = [&] {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  };
  skip();
  if (text == "e") return {};
  Permutation out;
  std::vector<Permutation> cycles;
  while (skip(), !text.empty()) {
    if (text.front() != '(') throw std::invalid_argument("expected '(' in cycle notation");
    text.remove_prefix(1);
    std::vector<long> cycle;
    for (;;) {
      skip();
      if (text.empty()) throw std::invalid_argument("unterminated cycle");
      if (text.front() == ')') {
        text.remove_prefix(1);
        break;
      }
      if (text.front() == ',') {
        text.remove_prefix(1);
        continue;
      }
      long v = 0;
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc() || v < 1) throw std::invalid_argument("bad point in cycle");
      cycle.push_back(v);
      text.remove_prefix(static_cast<std::size_t>(ptr - text.data()));
    }
    std::map<long, long> images;
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (!images.emplace(cycle[k], cycle[(k + 1) % cycle.size()]).second) {
        throw std::invalid_argument("point repeated within a cycle");
      }
    }
    cycles.push_back(from_images(images));
  }
  for (const Permutation& c : cycles) out = out * c;
  return out;
}

long Permutation::operator()(long i) const {
  const auto it = moved_.find(i);
  return it == moved_.end() ? i : it->second;
}

Permutation Permutation::inverse() const {
  Permutation p;
  for (const auto& [i, j] : moved_) p.moved_.emplace(j, i);
  return p;
}

std::string Permutation::str() const {
  if (moved_.empty()) return "()";
  std::string out;
  std::set<long> done;
  for (const auto& [start, image] : moved_) {
    if (done.contains(start)) continue;
    out += '(';
    long i = start;
    do {
      if (i != start) out += ' ';
      out += std::to_string(i);
      done.insert(i);
      i = (*this)(i);
    } while (i != start);
    out += ')';
  }
  return out;
}

Permutation operator*(const Permutation& s, const Permutation& t) {
  std::set<long> points;
  for (const auto& kv : s.moved_) points.insert(kv.first);
  for (const auto& kv : t.moved_) points.insert(kv.first);
  Permutation p;
  for (long i : points) {
    const long j = s(t(i));
    if (j != i) p.moved_.emplace(i, j);
  }
  return p;
}

std::size_t hamming(const Permutation& s, const Permutation& t) {
  std::set<long> points;
  for (const auto& kv : s.moved()) points.insert(kv.first);
  for (const auto& kv : t.moved()) points.insert(kv.first);
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [&](long i) { return s(i) != t(i); }));
}

PhiRatio phi_ratio(const Permutation& s, const Permutation& t) {
  if (s == t) return {0, 1};
  const std::size_t top = std::max(s.support_size(), t.support_size());
  assert(top > 0);  // s != t rules out s = t = e
  return {hamming(s, t), top};
}

double phi(const Permutation& s, const Permutation& t) { return phi_ratio(s, t).value(); }

Counterexample equicontinuity_counterexample(int n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("n must be even and >= 4");
  std::map<long, long> sigma, eta;
  for (long k = 1; 2 * k <= n; ++k) {
    sigma[2 * k - 1] = 2 * k;
    sigma[2 * k] = 2 * k - 1;
    if (k > 1) {
      eta[2 * k - 1] = 2 * k;
      eta[2 * k] = 2 * k - 1;
    }
  }
  Counterexample c;
  c.n = n;
  c.sigma = Permutation::from_images(sigma);
  c.eta = Permutation::from_images(eta);
  c.before = phi_ratio(c.sigma, c.eta);
  c.after = phi_ratio(c.sigma * c.eta, c.eta * c.eta);
  c.phi_before = c.before.value();
  c.phi_after = c.after.value();
  c.amplification = static_cast<double>(c.after.numerator * c.before.denominator) /
                    static_cast<double>(c.after.denominator * c.before.numerator);
  return c;
}

}  // namespace conclab::sym
