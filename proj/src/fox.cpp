#include "hkp/fox.hpp"

#include <string>

#include "hkp/errors.hpp"

namespace hkp {

GroupRingElement fox_derivative(const Word& w, int generator, int generator_count) {
  if (generator < 0 || generator >= generator_count) {
    throw InputError("fox derivative: unknown generator " + std::to_string(generator));
  }
  std::vector<GroupRingElement::Term> terms;
  std::vector<Letter> prefix;
  prefix.reserve(w.length());
  for (Letter l : w.letters()) {
    if (generator_of(l) == generator) {
      if (l > 0) {
        terms.emplace_back(Word(prefix), Rational(1));
      } else {
        prefix.push_back(l);
        terms.emplace_back(Word(prefix), Rational(-1));
        continue;
      }
    }
    prefix.push_back(l);
  }
  return GroupRingElement::from_terms(std::move(terms));
}

GroupRingMatrix fox_jacobian(const Presentation& p) {
  const int k2 = static_cast<int>(p.relators().size());
  if (k2 == 0) throw InputError("fox jacobian of a presentation without relators");
  GroupRingMatrix d(k2, p.generator_count());
  for (int j = 0; j < k2; ++j) {
    for (int i = 0; i < p.generator_count(); ++i) {
      d(j, i) = fox_derivative(p.relators()[static_cast<std::size_t>(j)], i, p.generator_count());
    }
  }
  return d;
}

GroupRingElement fox_expansion(const Word& w, int generator_count) {
  GroupRingElement sum;
  for (int g = 0; g < generator_count; ++g) {
    const GroupRingElement gm1 =
        GroupRingElement(Word{letter_of(g)}) - GroupRingElement(Rational(1));
    sum += fox_derivative(w, g, generator_count) * gm1;
  }
  return sum;
}

}  // namespace hkp
