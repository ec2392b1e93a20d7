#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hkp {

/// A letter is a signed, 1-based generator index: +k is generator k-1 and
/// -k its inverse. Zero is never a valid letter.
using Letter = int;

constexpr Letter letter_of(int generator, bool inverse = false) {
  return inverse ? -(generator + 1) : generator + 1;
}
constexpr int generator_of(Letter l) { return (l < 0 ? -l : l) - 1; }

/// Freely reduced word in a free group; the empty word is the identity.
class Word {
 public:
  Word() = default;

  /// Freely reduces `letters`. Letters are not range-checked here; use
  /// word_reduce when the alphabet is known.
  explicit Word(std::span<const Letter> letters);
  Word(std::initializer_list<Letter> letters)
      : Word(std::span<const Letter>(letters.begin(), letters.size())) {}

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool is_identity() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;

  /// Reduced product u·v.
  friend Word operator*(const Word& u, const Word& v);

  friend bool operator==(const Word&, const Word&) = default;
  /// Length-then-lexicographic order with a < a⁻¹ < b < b⁻¹ < …
  friend std::strong_ordering operator<=>(const Word& u, const Word& v);

 private:
  struct Reduced {};
  Word(Reduced, std::vector<Letter> letters) : letters_(std::move(letters)) {}

  std::vector<Letter> letters_;
};

/// Free reduction with validation against an alphabet of `generator_count`
/// generators. Throws InputError on a letter outside the alphabet.
Word word_reduce(std::span<const Letter> letters, int generator_count);

/// Single generator (or inverse) raised to `exponent`.
Word generator_power(int generator, int exponent);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace hkp
