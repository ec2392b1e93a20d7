#include "hkp/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "hkp/errors.hpp"

namespace hkp {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

// Recursive-descent parser for ring expressions over named generators.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ['^' ['-'] digits]
//   atom   := number ['/' number] | identifier | '(' expr ')'
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const std::vector<std::string>& names)
      : text_(text), names_(names) {}

  GroupRingElement parse() {
    GroupRingElement x = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return x;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("cannot parse \"" + std::string(text_) + "\" at offset " +
                     std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  GroupRingElement expr() {
    GroupRingElement acc;
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    for (;;) {
      GroupRingElement t = term();
      if (negate) {
        acc -= t;
      } else {
        acc += t;
      }
      if (accept('+')) {
        negate = false;
      } else if (accept('-')) {
        negate = true;
      } else {
        return acc;
      }
    }
  }

  GroupRingElement term() {
    GroupRingElement x = factor();
    while (accept('*')) x = x * factor();
    return x;
  }

  GroupRingElement factor() {
    GroupRingElement base = atom();
    if (!accept('^')) return base;
    bool negative = accept('-');
    const std::string e = digits();
    if (e.size() > 6) fail("exponent too large");
    int n = std::stoi(e);
    GroupRingElement b = negative ? invert(base) : base;
    GroupRingElement out(Rational(1));
    for (int i = 0; i < n; ++i) out = out * b;
    return out;
  }

  // Only monomials c·w with c ≠ 0 are invertible in ℚF.
  GroupRingElement invert(const GroupRingElement& x) const {
    if (x.support_size() != 1) {
      throw InputError("cannot parse \"" + std::string(text_) +
                       "\": negative exponent of a non-monomial");
    }
    const auto& [w, c] = x.terms().front();
    return GroupRingElement(w.inverse(), Rational(1) / c);
  }

  GroupRingElement atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      GroupRingElement x = expr();
      if (!accept(')')) fail("expected ')'");
      return x;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      std::string den = "1";
      // A '/' directly after digits is a fraction.
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        den = digits();
      }
      if (Integer(den) == 0) fail("zero denominator");
      return GroupRingElement(Rational(Integer(num), Integer(den)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string_view name = text_.substr(start, pos_ - start);
      if (name == "e") return GroupRingElement(Rational(1));
      auto it = std::find(names_.begin(), names_.end(), name);
      if (it == names_.end()) {
        pos_ = start;
        fail("unknown generator '" + std::string(name) + "'");
      }
      int g = static_cast<int>(it - names_.begin());
      return GroupRingElement(Word{letter_of(g)});
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

}  // namespace

Presentation::Presentation(std::vector<std::string> generator_names, std::vector<Word> relators)
    : names_(std::move(generator_names)), relators_(std::move(relators)) {
  if (names_.empty()) throw InputError("presentation needs at least one generator");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!is_identifier(n)) throw InputError("invalid generator name '" + n + "'");
    if (n == "e") throw InputError("'e' is reserved for the identity");
    if (!seen.insert(n).second) throw InputError("duplicate generator name '" + n + "'");
  }
  for (const auto& r : relators_) {
    if (r.is_identity()) throw InputError("relator reduces to the empty word");
    // Re-validate against the alphabet.
    word_reduce(r.letters(), generator_count());
  }
}

int Presentation::find_generator(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

Word Presentation::parse_word(std::string_view text) const { return hkp::parse_word(text, names_); }

GroupRingElement Presentation::parse_element(std::string_view text) const {
  return hkp::parse_element(text, names_);
}

std::string Presentation::format(const Word& w) const { return format_word(w, names_); }

std::string Presentation::format(const GroupRingElement& x) const {
  return format_element(x, names_);
}

GroupRingElement parse_element(std::string_view text, const std::vector<std::string>& names) {
  return ExpressionParser(text, names).parse();
}

Word parse_word(std::string_view text, const std::vector<std::string>& names) {
  GroupRingElement x = parse_element(text, names);
  if (x.support_size() != 1 || x.terms().front().second != 1) {
    throw InputError("\"" + std::string(text) + "\" is not a group word");
  }
  return x.terms().front().first;
}

std::string format_word(const Word& w, const std::vector<std::string>& names) {
  if (w.is_identity()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.length(); ++i) {
    if (i > 0) out += '*';
    const Letter l = w[i];
    out += names.at(static_cast<std::size_t>(generator_of(l)));
    if (l < 0) out += "^-1";
  }
  return out;
}

std::string format_element(const GroupRingElement& x, const std::vector<std::string>& names) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : x.terms()) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (w.is_identity()) {
      out += to_string(mag);
    } else {
      if (mag != 1) out += to_string(mag) + "*";
      out += format_word(w, names);
    }
  }
  return out;
}

Presentation free_group(int rank) {
  std::vector<std::string> names;
  for (int i = 0; i < rank; ++i) {
    names.push_back(rank <= 26 ? std::string(1, static_cast<char>('a' + i))
                               : "x" + std::to_string(i + 1));
  }
  return Presentation(std::move(names), {});
}

Presentation cyclic_group(int order) {
  if (order < 1) throw InputError("cyclic group order must be positive");
  return Presentation({"a"}, {generator_power(0, order)});
}

Word commutator(const Word& u, const Word& v) { return u * v * u.inverse() * v.inverse(); }

Presentation surface_group(int genus) {
  if (genus < 1 || genus > 13) throw InputError("surface genus must be in 1..13");
  std::vector<std::string> names;
  Word relator;
  for (int i = 0; i < 2 * genus; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  for (int i = 0; i < genus; ++i) {
    relator = relator * commutator(Word{letter_of(2 * i)}, Word{letter_of(2 * i + 1)});
  }
  return Presentation(std::move(names), {relator});
}

}  // namespace hkp
