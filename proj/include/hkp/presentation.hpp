#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hkp/group_ring.hpp"
#include "hkp/word.hpp"

namespace hkp {

/// Finite presentation ⟨generators | relators⟩. The symmetric generating
/// set S = generators ∪ inverses is implicit in the letter encoding.
class Presentation {
 public:
  /// Validates names (distinct identifiers) and relators (nonempty, freely
  /// reduced, using declared generators). Throws InputError.
  Presentation(std::vector<std::string> generator_names, std::vector<Word> relators);

  int generator_count() const noexcept { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& generator_names() const noexcept { return names_; }
  const std::vector<Word>& relators() const noexcept { return relators_; }

  /// Index of the named generator, or -1.
  int find_generator(std::string_view name) const;

  Word parse_word(std::string_view text) const;
  GroupRingElement parse_element(std::string_view text) const;
  std::string format(const Word& w) const;
  std::string format(const GroupRingElement& x) const;

 private:
  std::vector<std::string> names_;
  std::vector<Word> relators_;
};

/// Parses a ring expression such as "3/2*a*b^-1 + 1" or "(1 - a)*(1 - b^-1)".
/// Accepts integer exponents and parentheses; throws InputError.
GroupRingElement parse_element(std::string_view text, const std::vector<std::string>& names);

/// Parses a product of generator powers, e.g. "a*b*a^-1*b^-1" or "a^3".
/// "1" or "e" is the identity.
Word parse_word(std::string_view text, const std::vector<std::string>& names);

/// Canonical textual form; parse_element(format_element(x)) == x.
std::string format_element(const GroupRingElement& x, const std::vector<std::string>& names);
std::string format_word(const Word& w, const std::vector<std::string>& names);

/// ⟨x₁,…,xₙ | ∅⟩.
Presentation free_group(int rank);
/// ⟨a | aᵐ⟩.
Presentation cyclic_group(int order);
/// ⟨a₁,b₁,…,a_g,b_g | [a₁,b₁]⋯[a_g,b_g]⟩ with generator names a,b,c,d,…
Presentation surface_group(int genus);

/// Commutator u v u⁻¹ v⁻¹.
Word commutator(const Word& u, const Word& v);

}  // namespace hkp
