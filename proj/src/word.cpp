#include "hkp/word.hpp"

#include <algorithm>
#include <string>

#include "hkp/errors.hpp"

namespace hkp {

namespace {

int order_key(Letter l) { return 2 * generator_of(l) + (l < 0 ? 1 : 0); }

void push_reduced(std::vector<Letter>& out, Letter l) {
  if (!out.empty() && out.back() == -l) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
}

}  // namespace

Word::Word(std::span<const Letter> letters) {
  letters_.reserve(letters.size());
  for (Letter l : letters) push_reduced(letters_, l);
}

Word Word::inverse() const {
  std::vector<Letter> inv(letters_.rbegin(), letters_.rend());
  for (auto& l : inv) l = -l;
  return Word(Reduced{}, std::move(inv));
}

Word operator*(const Word& u, const Word& v) {
  const auto& a = u.letters_;
  const auto& b = v.letters_;
  std::size_t cancel = 0;
  while (cancel < a.size() && cancel < b.size() &&
         a[a.size() - 1 - cancel] == -b[cancel]) {
    ++cancel;
  }
  std::vector<Letter> out;
  out.reserve(a.size() + b.size() - 2 * cancel);
  out.insert(out.end(), a.begin(), a.end() - static_cast<std::ptrdiff_t>(cancel));
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(cancel), b.end());
  return Word(Word::Reduced{}, std::move(out));
}

std::strong_ordering operator<=>(const Word& u, const Word& v) {
  if (auto c = u.length() <=> v.length(); c != 0) return c;
  for (std::size_t i = 0; i < u.length(); ++i) {
    if (auto c = order_key(u[i]) <=> order_key(v[i]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Word word_reduce(std::span<const Letter> letters, int generator_count) {
  for (Letter l : letters) {
    if (l == 0 || generator_of(l) >= generator_count) {
      throw InputError("unknown generator index " + std::to_string(l) +
                       " (alphabet has " + std::to_string(generator_count) +
                       " generators)");
    }
  }
  return Word(letters);
}

Word generator_power(int generator, int exponent) {
  std::vector<Letter> letters(static_cast<std::size_t>(std::abs(exponent)),
                              letter_of(generator, exponent < 0));
  return Word(letters);
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  // FNV-1a over the letters.
  std::size_t h = 1469598103934665603ULL;
  for (Letter l : w.letters()) {
    h ^= static_cast<std::size_t>(static_cast<unsigned>(l));
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace hkp
