#include "conclab/groups.hpp"

#include <charconv>
#include <stdexcept>

namespace conclab {
namespace {

// Parses "(x1,x2,...)" or "x1,x2,..." into integers.
std::vector<std::int64_t> parse_tuple(std::string_view text) {
  if (!text.empty() && text.front() == '(') text.remove_prefix(1);
  if (!text.empty() && text.back() == ')') text.remove_suffix(1);
  std::vector<std::int64_t> out;
  if (text.empty()) return out;
  for (;;) {
    const std::size_t comma = text.find(',');
    std::string_view field = text.substr(0, comma);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    std::int64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size() ||
        field.empty()) {
      throw std::invalid_argument("bad integer tuple field '" +
                                  std::string(field) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string format_tuple(const std::int64_t* values, std::size_t count) {
  std::string out = "(";
  for (std::size_t i = 0; i < count; ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out + ")";
}

}  // namespace

std::string to_string(ActionConvention c) {
  return c == ActionConvention::pullback ? "pullback" : "inverse";
}

ActionConvention parse_convention(std::string_view text) {
  if (text == "pullback") return ActionConvention::pullback;
  if (text == "inverse") return ActionConvention::inverse;
  throw std::invalid_argument("unknown action convention '" +
                              std::string(text) + "'");
}

IntegerLattice::IntegerLattice(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("lattice dimension must be >= 1");
}

IntegerLattice::element_type IntegerLattice::multiply(const element_type& x,
                                                      const element_type& y) const {
  element_type out(x);
  for (int i = 0; i < dim_; ++i) out[i] += y[i];
  return out;
}

IntegerLattice::element_type IntegerLattice::inverse(const element_type& x) const {
  element_type out(x);
  for (auto& v : out) v = -v;
  return out;
}

std::string IntegerLattice::format(const element_type& x) const {
  return format_tuple(x.data(), x.size());
}

IntegerLattice::element_type IntegerLattice::parse(std::string_view text) const {
  auto values = parse_tuple(text);
  if (values.size() != static_cast<std::size_t>(dim_)) {
    throw std::invalid_argument("lattice element has wrong dimension");
  }
  return values;
}

std::vector<IntegerLattice::element_type> IntegerLattice::standard_generators() const {
  std::vector<element_type> out;
  for (int i = 0; i < dim_; ++i) {
    element_type e(dim_, 0);
    e[i] = 1;
    out.push_back(std::move(e));
  }
  return out;
}

std::string IntegerLattice::name() const {
  return dim_ == 1 ? "Z" : "Z^" + std::to_string(dim_);
}

HeisenbergGroup::element_type HeisenbergGroup::multiply(const element_type& x,
                                                        const element_type& y) const {
  return {x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1]};
}

HeisenbergGroup::element_type HeisenbergGroup::inverse(const element_type& x) const {
  return {-x[0], -x[1], -x[2] + x[0] * x[1]};
}

std::string HeisenbergGroup::format(const element_type& x) const {
  return format_tuple(x.data(), x.size());
}

HeisenbergGroup::element_type HeisenbergGroup::parse(std::string_view text) const {
  const auto values = parse_tuple(text);
  if (values.size() != 3) {
    throw std::invalid_argument("Heisenberg element needs three integers");
  }
  return {values[0], values[1], values[2]};
}

std::vector<HeisenbergGroup::element_type> HeisenbergGroup::standard_generators() const {
  return {{1, 0, 0}, {0, 1, 0}};
}

FreeGroup::FreeGroup(int rank) : rank_(rank) {
  if (rank < 1 || rank > ReducedWord::kMaxRank) {
    throw std::invalid_argument("free group rank must be in [1, 26]");
  }
}

FreeGroup::element_type FreeGroup::parse(std::string_view text) const {
  ReducedWord w = ReducedWord::parse(text);
  if (w.max_generator() >= rank_) {
    throw std::invalid_argument("word uses a generator beyond the rank");
  }
  return w;
}

std::vector<FreeGroup::element_type> FreeGroup::standard_generators() const {
  std::vector<element_type> out;
  for (int g = 0; g < rank_; ++g) out.push_back(ReducedWord::generator(g));
  return out;
}

std::string FreeGroup::name() const { return "F_" + std::to_string(rank_); }

CyclicGroup::CyclicGroup(std::int64_t modulus) : modulus_(modulus) {
  if (modulus < 1) throw std::invalid_argument("cyclic modulus must be >= 1");
}

CyclicGroup::element_type CyclicGroup::multiply(element_type x, element_type y) const {
  return (x + y) % modulus_;
}

CyclicGroup::element_type CyclicGroup::inverse(element_type x) const {
  return (modulus_ - x % modulus_) % modulus_;
}

CyclicGroup::element_type CyclicGroup::parse(std::string_view text) const {
  const auto values = parse_tuple(text);
  if (values.size() != 1) throw std::invalid_argument("bad residue");
  const std::int64_t r = ((values[0] % modulus_) + modulus_) % modulus_;
  return r;
}

std::string CyclicGroup::name() const { return "Z/" + std::to_string(modulus_); }

}  // namespace conclab
