#pragma once

#include <random>
#include <string>
#include <vector>

#include "hkp/coset_enum.hpp"
#include "hkp/group_ring.hpp"
#include "hkp/presentation.hpp"

namespace hkp::test {

inline Word random_word(std::mt19937_64& rng, int generators, int max_length) {
  std::uniform_int_distribution<int> len(0, max_length);
  std::uniform_int_distribution<int> gen(0, generators - 1);
  std::bernoulli_distribution inv(0.5);
  std::vector<Letter> letters;
  for (int n = len(rng); n > 0; --n) letters.push_back(letter_of(gen(rng), inv(rng)));
  return Word(letters);
}

inline GroupRingElement random_element(std::mt19937_64& rng, int generators, int terms = 4,
                                       int max_length = 3) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  std::vector<GroupRingElement::Term> t;
  for (int i = 0; i < terms; ++i) {
    t.emplace_back(random_word(rng, generators, max_length), Rational(num(rng), den(rng)));
  }
  return GroupRingElement::from_terms(std::move(t));
}

inline GroupRingMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, int generators) {
  GroupRingMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = random_element(rng, generators, 3, 2);
  }
  return m;
}

/// Extra relators x^m for every generator plus all commutators: the
/// quotient (ℤ/m)^rank of the abelianization.
inline std::vector<Word> abelian_mod(const Presentation& p, int m) {
  std::vector<Word> out;
  const int n = p.generator_count();
  for (int g = 0; g < n; ++g) out.push_back(generator_power(g, m));
  for (int g = 0; g < n; ++g) {
    for (int h = g + 1; h < n; ++h) {
      out.push_back(commutator(Word{letter_of(g)}, Word{letter_of(h)}));
    }
  }
  return out;
}

inline std::vector<std::vector<Word>> abelian_chain(const Presentation& p,
                                                    std::initializer_list<int> moduli) {
  std::vector<std::vector<Word>> spec;
  for (int m : moduli) spec.push_back(abelian_mod(p, m));
  return spec;
}

}  // namespace hkp::test
