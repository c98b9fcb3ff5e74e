#include "conclab/reduced_word.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace conclab {
namespace {

constexpr int kMaxBallRadius = 12;

bool is_inverse_pair(char x, char y) {
  return x != y && std::tolower(static_cast<unsigned char>(x)) ==
                       std::tolower(static_cast<unsigned char>(y));
}

int letter_generator(char c) {
  return std::tolower(static_cast<unsigned char>(c)) - 'a';
}

char letter_for(int generator, bool inverse) {
  return static_cast<char>((inverse ? 'A' : 'a') + generator);
}

// Appends `c` to a reduced word held in `out`, cancelling if needed.
void push_reduced(std::string& out, char c) {
  if (!out.empty() && is_inverse_pair(out.back(), c)) {
    out.pop_back();
  } else {
    out.push_back(c);
  }
}

}  // namespace

ReducedWord ReducedWord::parse(std::string_view letters) {
  std::string out;
  out.reserve(letters.size());
  for (char c : letters) {
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("reduced word: bad letter '" +
                                  std::string(1, c) + "'");
    }
    push_reduced(out, c);
  }
  return ReducedWord(std::move(out));
}

ReducedWord ReducedWord::from_syllables(const std::vector<Syllable>& syllables) {
  std::string out;
  for (const Syllable& s : syllables) {
    if (s.generator < 0 || s.generator >= kMaxRank) {
      throw std::invalid_argument("reduced word: generator index out of range");
    }
    const char c = letter_for(s.generator, s.exponent < 0);
    const long count = s.exponent < 0 ? -s.exponent : s.exponent;
    for (long i = 0; i < count; ++i) push_reduced(out, c);
  }
  return ReducedWord(std::move(out));
}

ReducedWord ReducedWord::generator(int index, long exponent) {
  return from_syllables({{index, exponent}});
}

std::vector<Syllable> ReducedWord::syllables() const {
  std::vector<Syllable> out;
  for (char c : letters_) {
    const int g = letter_generator(c);
    const long step = std::isupper(static_cast<unsigned char>(c)) ? -1 : 1;
    if (!out.empty() && out.back().generator == g) {
      out.back().exponent += step;
    } else {
      out.push_back({g, step});
    }
  }
  return out;
}

int ReducedWord::first_generator() const {
  return letters_.empty() ? -1 : letter_generator(letters_.front());
}

long ReducedWord::leading_exponent() const {
  if (letters_.empty()) return 0;
  const char first = letters_.front();
  long run = 0;
  while (static_cast<std::size_t>(run) < letters_.size() &&
         letters_[run] == first) {
    ++run;
  }
  return std::isupper(static_cast<unsigned char>(first)) ? -run : run;
}

int ReducedWord::max_generator() const {
  int g = -1;
  for (char c : letters_) g = std::max(g, letter_generator(c));
  return g;
}

ReducedWord ReducedWord::inverse() const {
  std::string out(letters_.rbegin(), letters_.rend());
  for (char& c : out) {
    c = std::isupper(static_cast<unsigned char>(c))
            ? static_cast<char>(std::tolower(static_cast<unsigned char>(c)))
            : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return ReducedWord(std::move(out));
}

ReducedWord operator*(const ReducedWord& u, const ReducedWord& v) {
  const std::string& a = u.letters_;
  const std::string& b = v.letters_;
  std::size_t cancel = 0;
  while (cancel < a.size() && cancel < b.size() &&
         is_inverse_pair(a[a.size() - 1 - cancel], b[cancel])) {
    ++cancel;
  }
  std::string out;
  out.reserve(a.size() + b.size() - 2 * cancel);
  out.append(a, 0, a.size() - cancel);
  out.append(b, cancel, std::string::npos);
  return ReducedWord(std::move(out));
}

std::strong_ordering operator<=>(const ReducedWord& u, const ReducedWord& v) {
  if (auto c = u.letters_.size() <=> v.letters_.size(); c != 0) return c;
  return u.letters_.compare(v.letters_) <=> 0;
}

std::size_t ball_size(int radius, int rank) {
  if (radius < 0 || rank < 1) throw std::domain_error("ball_size: bad argument");
  std::size_t total = 1;
  std::size_t sphere = 2 * static_cast<std::size_t>(rank);
  for (int r = 1; r <= radius; ++r) {
    total += sphere;
    sphere *= 2 * static_cast<std::size_t>(rank) - 1;
  }
  return total;
}

std::vector<ReducedWord> enumerate_ball(int radius, int rank) {
  if (radius < 0) throw std::domain_error("enumerate_ball: negative radius");
  if (rank < 1 || rank > ReducedWord::kMaxRank) {
    throw std::domain_error("enumerate_ball: rank out of range");
  }
  if (radius > kMaxBallRadius) {
    throw std::length_error("enumerate_ball: radius above size guard (12)");
  }
  std::vector<char> alphabet;
  for (int g = 0; g < rank; ++g) alphabet.push_back(letter_for(g, true));
  for (int g = 0; g < rank; ++g) alphabet.push_back(letter_for(g, false));

  std::vector<ReducedWord> ball;
  ball.reserve(ball_size(radius, rank));
  ball.emplace_back();
  std::size_t level_begin = 0;
  for (int r = 1; r <= radius; ++r) {
    const std::size_t level_end = ball.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      const std::string& w = ball[i].str();
      for (char c : alphabet) {
        if (!w.empty() && is_inverse_pair(w.back(), c)) continue;
        ball.push_back(ReducedWord(w + c));
      }
    }
    level_begin = level_end;
  }
  return ball;
}

}  // namespace conclab
