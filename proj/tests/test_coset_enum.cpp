#include <random>
#include <set>

#include "doctest.h"

#include "hkp/coset_enum.hpp"
#include "hkp/errors.hpp"
#include "support.hpp"

using namespace hkp;

namespace {

using Perm = std::vector<int>;

Perm compose(const Perm& p, const Perm& q) {  // first p, then q
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[static_cast<std::size_t>(p[i])];
  return r;
}

// Order of the permutation group generated by `gens`, by closure.
std::size_t closure_order(const std::vector<Perm>& gens) {
  Perm id(gens.front().size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  std::set<Perm> seen{id};
  std::vector<Perm> frontier{id};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& p : frontier) {
      for (const auto& g : gens) {
        Perm q = compose(p, g);
        if (seen.insert(q).second) next.push_back(std::move(q));
      }
    }
    frontier = std::move(next);
  }
  return seen.size();
}

std::vector<Perm> table_perms(const CosetTable& t) {
  std::vector<Perm> out;
  for (int g = 0; g < t.generator_count(); ++g) {
    const auto s = t.permutation(g);
    out.emplace_back(s.begin(), s.end());
  }
  return out;
}

bool respects(const std::vector<Perm>& images, const std::vector<Word>& relators) {
  for (const auto& r : relators) {
    Perm p(images.front().size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<int>(i);
    for (Letter l : r.letters()) {
      const Perm& g = images[static_cast<std::size_t>(generator_of(l))];
      if (l > 0) {
        p = compose(p, g);
      } else {
        Perm inv(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) inv[static_cast<std::size_t>(g[i])] = static_cast<int>(i);
        p = compose(p, inv);
      }
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] != static_cast<int>(i)) return false;
    }
  }
  return true;
}

std::vector<Word> words(const Presentation& p, std::initializer_list<const char*> texts) {
  std::vector<Word> out;
  for (const char* t : texts) out.push_back(p.parse_word(t));
  return out;
}

}  // namespace

TEST_CASE("triangle quotient of F2 is S3") {
  const Presentation f2 = free_group(2);
  const auto extra = words(f2, {"a^2", "b^2", "(a*b)^3"});
  const CosetTable t = todd_coxeter(f2, extra);
  CHECK(t.coset_count() == 6);
  // Concrete S3 satisfies the relators, so |G| ≥ 6; the enumerated table is a
  // regular action, so its permutation group has order coset_count.
  const std::vector<Perm> s3 = {{1, 0, 2}, {0, 2, 1}};
  CHECK(respects(s3, extra));
  CHECK(closure_order(s3) == 6);
  CHECK(closure_order(table_perms(t)) == 6);
  CHECK(t.satisfies(extra));
  CHECK(t.is_transitive());
}

TEST_CASE("small quotients by brute force") {
  const Presentation f2 = free_group(2);
  const auto klein = words(f2, {"a^2", "b^2", "a*b*a*b"});
  const CosetTable t = todd_coxeter(f2, klein);
  CHECK(t.coset_count() == 4);
  CHECK(closure_order(table_perms(t)) == 4);

  const CosetTable z5 = todd_coxeter(cyclic_group(5), {});
  CHECK(z5.coset_count() == 5);

  // Binary dihedral-like quotient ⟨a,b | a^4, b^2 a^-2, b^-1 a b a⟩ of order 8.
  const auto q8 = words(f2, {"a^4", "b^2*a^-2", "b^-1*a*b*a"});
  const CosetTable tq = todd_coxeter(f2, q8);
  CHECK(tq.coset_count() == 8);
  CHECK(closure_order(table_perms(tq)) == 8);
  CHECK(tq.satisfies(q8));
}

TEST_CASE("enumeration of a non-normal subgroup") {
  const Presentation f2 = free_group(2);
  const auto s3 = words(f2, {"a^2", "b^2", "(a*b)^3"});
  const std::vector<Word> h = {Word{letter_of(0)}};
  CHECK(todd_coxeter(f2, s3, kDefaultMaxCosets, h).coset_count() == 3);
}

TEST_CASE("overflow is distinct from malformed input") {
  CHECK_THROWS_AS(todd_coxeter(free_group(2), {}, 1000), EnumerationOverflow);
  const Presentation f2 = free_group(2);
  CHECK_THROWS_AS(todd_coxeter(f2, words(f2, {"a^20", "b^20"}), 50), EnumerationOverflow);
}

TEST_CASE("permutation representations") {
  const Presentation z3 = cyclic_group(3);
  const Representation r = permutation_rep(todd_coxeter(z3, {}), "z3");
  CHECK(r.dimension() == 3);
  const Matrix<Rational> c(r.matrix<Rational>(Word{letter_of(0)}));
  Matrix<Rational> expected = Matrix<Rational>::Zero(3, 3);
  expected(0, 1) = expected(1, 2) = expected(2, 0) = 1;
  CHECK(c == expected);
  CHECK(r.respects(z3.relators()));

  const Representation triv = permutation_rep(todd_coxeter(z3, words(z3, {"a"})));
  CHECK(triv.dimension() == 1);
  CHECK(Matrix<Rational>(triv.matrix<Rational>(Word{letter_of(0)}))(0, 0) == 1);

  const Presentation f2 = free_group(2);
  const Representation s3 =
      permutation_rep(todd_coxeter(f2, words(f2, {"a^2", "b^2", "(a*b)^3"})));
  const Matrix<Rational> pa(s3.matrix<Rational>(Word{letter_of(0)}));
  CHECK(pa.rows() == 6);
  CHECK(pa * pa == Matrix<Rational>::Identity(6, 6));
}

TEST_CASE("representations are homomorphisms with stochastic matrices") {
  const Presentation f2 = free_group(2);
  const Representation r =
      permutation_rep(todd_coxeter(f2, words(f2, {"a^2", "b^3", "(a*b)^5"})));
  CHECK(r.dimension() == 60);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const Word u = test::random_word(rng, 2, 7);
    const Word v = test::random_word(rng, 2, 7);
    const SparseMatrix<double> uv = r.matrix<double>(u * v);
    const SparseMatrix<double> prod = r.matrix<double>(u) * r.matrix<double>(v);
    CHECK(Matrix<double>(uv) == Matrix<double>(prod));
    const Matrix<double> m(uv);
    CHECK(m.rowwise().sum().isOnes());
    CHECK(m.colwise().sum().isOnes());
    CHECK(m * m.transpose() == Matrix<double>::Identity(60, 60));
  }
}

TEST_CASE("quotient chains") {
  const Presentation f2 = free_group(2);
  const QuotientChain c = quotient_chain(f2, test::abelian_chain(f2, {2, 3, 4}));
  REQUIRE(c.members.size() == 3);
  CHECK(c.members[0].index == 4);
  CHECK(c.members[1].index == 9);
  CHECK(c.members[2].index == 16);
  for (const auto& m : c.members) CHECK(m.rep.respects(m.extra_relators));
  // [a,b] lies in every abelian quotient's kernel.
  CHECK_FALSE(c.separation.separated);
  CHECK(*c.separation.witness == commutator(Word{letter_of(0)}, Word{letter_of(1)}));

  const QuotientChain trivial = quotient_chain(f2, {words(f2, {"a", "b"})});
  CHECK(trivial.members.front().index == 1);
  REQUIRE(trivial.warnings.size() == 1);
  CHECK(trivial.warnings.front().find("radius 1") != std::string::npos);

  const Presentation s2 = surface_group(2);
  const QuotientChain g2 = quotient_chain(s2, test::abelian_chain(s2, {2}));
  CHECK(g2.members.front().index == 16);
  CHECK(closure_order(table_perms(g2.members.front().table)) == 16);
}

TEST_CASE("separation of S3 and the abelian quotient of F2") {
  const Presentation f2 = free_group(2);
  std::vector<std::vector<Word>> spec = {words(f2, {"a^2", "b^2", "(a*b)^3"}),
                                         words(f2, {"a^2", "b^2", "(a*b)^3", "a*b"})};
  CHECK_THROWS_AS(quotient_chain(f2, spec), InputError);  // indices 6 then 2
  std::swap(spec[0], spec[1]);
  const QuotientChain c = quotient_chain(f2, spec, 2);
  CHECK(c.members[0].index == 2);
  CHECK(c.members[1].index == 6);
  // a^2 is the first length-2 word trivial in both.
  CHECK(*c.separation.witness == generator_power(0, 2));
}

TEST_CASE("enumeration is deterministic and parallel chains match serial ones") {
  const Presentation s2 = surface_group(2);
  const auto spec = test::abelian_chain(s2, {2, 3});
  const QuotientChain serial = quotient_chain(s2, spec, 3, kDefaultMaxCosets, 1);
  const QuotientChain parallel = quotient_chain(s2, spec, 3, kDefaultMaxCosets, 2);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    CHECK(serial.members[i].table == parallel.members[i].table);
    CHECK(serial.members[i].table == todd_coxeter(s2, spec[i]));
  }
  CHECK(serial.warnings == parallel.warnings);
}

TEST_CASE("coset table validation") {
  CHECK_THROWS_AS(CosetTable(1, {{0, 0}}), InputError);
  CHECK_THROWS_AS(CosetTable(2, {{0}}), InputError);
  const CosetTable t(1, {{1, 0}});
  CHECK(t.act(0, Word{letter_of(0, true)}) == 1);
  CHECK_THROWS_AS(quotient_chain(free_group(1), {}), InputError);
}
