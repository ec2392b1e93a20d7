#include "hkp/group_ring.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "hkp/errors.hpp"

namespace hkp {

namespace {

bool term_less(const GroupRingElement::Term& a, const GroupRingElement::Term& b) {
  return a.first < b.first;
}

// Merge two sorted term lists, scaling the second by `sign`.
std::vector<GroupRingElement::Term> merge_terms(const std::vector<GroupRingElement::Term>& a,
                                                const std::vector<GroupRingElement::Term>& b,
                                                int sign) {
  std::vector<GroupRingElement::Term> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.emplace_back(j->first, sign > 0 ? j->second : -j->second);
      ++j;
    } else {
      Rational c = sign > 0 ? i->second + j->second : i->second - j->second;
      if (c != 0) out.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

GroupRingElement::GroupRingElement(const Rational& c) {
  if (c != 0) terms_.emplace_back(Word{}, c);
}

GroupRingElement::GroupRingElement(Word w, const Rational& c) {
  if (c != 0) terms_.emplace_back(std::move(w), c);
}

GroupRingElement GroupRingElement::from_terms(std::vector<Term> terms) {
  std::stable_sort(terms.begin(), terms.end(), term_less);
  GroupRingElement x;
  for (auto& t : terms) {
    if (!x.terms_.empty() && x.terms_.back().first == t.first) {
      x.terms_.back().second += t.second;
    } else {
      x.terms_.push_back(std::move(t));
    }
  }
  std::erase_if(x.terms_, [](const Term& t) { return t.second == 0; });
  return x;
}

Rational GroupRingElement::coefficient(const Word& w) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), w,
                             [](const Term& t, const Word& key) { return t.first < key; });
  if (it != terms_.end() && it->first == w) return it->second;
  return Rational(0);
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& y) {
  terms_ = merge_terms(terms_, y.terms_, 1);
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& y) {
  terms_ = merge_terms(terms_, y.terms_, -1);
  return *this;
}

GroupRingElement& GroupRingElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

GroupRingElement operator*(const GroupRingElement& x, const GroupRingElement& y) {
  if (x.is_zero() || y.is_zero()) return {};
  std::unordered_map<Word, Rational, WordHash> acc;
  acc.reserve(x.terms_.size() * y.terms_.size());
  for (const auto& [u, a] : x.terms_) {
    for (const auto& [v, b] : y.terms_) {
      acc[u * v] += a * b;
    }
  }
  std::vector<GroupRingElement::Term> terms;
  terms.reserve(acc.size());
  for (auto& [w, c] : acc) {
    if (c != 0) terms.emplace_back(w, std::move(c));
  }
  std::sort(terms.begin(), terms.end(), term_less);
  GroupRingElement out;
  out.terms_ = std::move(terms);
  return out;
}

GroupRingElement involution(const GroupRingElement& x) {
  std::vector<GroupRingElement::Term> terms;
  terms.reserve(x.support_size());
  for (const auto& [w, c] : x.terms()) terms.emplace_back(w.inverse(), c);
  return GroupRingElement::from_terms(std::move(terms));
}

Rational trace_e(const GroupRingElement& x) { return x.coefficient(Word{}); }

Rational augmentation(const GroupRingElement& x) {
  Rational s = 0;
  for (const auto& t : x.terms()) s += t.second;
  return s;
}

Rational l1_norm(const GroupRingElement& x) {
  Rational s = 0;
  for (const auto& t : x.terms()) s += abs(t.second);
  return s;
}

Rational trace_of_product(const GroupRingElement& x, const GroupRingElement& y) {
  Rational s = 0;
  for (const auto& [w, c] : x.terms()) {
    const Rational d = y.coefficient(w.inverse());
    if (d != 0) s += c * d;
  }
  return s;
}

GroupRingMatrix::GroupRingMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) {
    throw InputError("group-ring matrix dimensions must be positive, got " +
                     std::to_string(rows) + "x" + std::to_string(cols));
  }
  entries_.resize(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
}

GroupRingMatrix GroupRingMatrix::identity(int n) {
  GroupRingMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = GroupRingElement(Rational(1));
  return m;
}

bool GroupRingMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const GroupRingElement& x) { return x.is_zero(); });
}

std::size_t GroupRingMatrix::max_support() const {
  std::size_t m = 0;
  for (const auto& x : entries_) m = std::max(m, x.support_size());
  return m;
}

std::size_t GroupRingMatrix::total_support() const {
  std::size_t m = 0;
  for (const auto& x : entries_) m += x.support_size();
  return m;
}

GroupRingMatrix& GroupRingMatrix::operator+=(const GroupRingMatrix& b) {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw InputError("matrix sum: shape mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += b.entries_[k];
  return *this;
}

GroupRingMatrix& GroupRingMatrix::operator-=(const GroupRingMatrix& b) {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw InputError("matrix difference: shape mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= b.entries_[k];
  return *this;
}

GroupRingMatrix& GroupRingMatrix::operator*=(const Rational& c) {
  for (auto& x : entries_) x *= c;
  return *this;
}

GroupRingMatrix operator*(const GroupRingMatrix& a, const GroupRingMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw InputError("matrix product: inner dimensions differ (" + std::to_string(a.rows_) +
                     "x" + std::to_string(a.cols_) + " times " + std::to_string(b.rows_) +
                     "x" + std::to_string(b.cols_) + ")");
  }
  GroupRingMatrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int j = 0; j < b.cols_; ++j) {
      GroupRingElement s;
      for (int k = 0; k < a.cols_; ++k) {
        const auto& x = a(i, k);
        const auto& y = b(k, j);
        if (!x.is_zero() && !y.is_zero()) s += x * y;
      }
      c(i, j) = std::move(s);
    }
  }
  return c;
}

GroupRingMatrix operator*(const GroupRingElement& x, const GroupRingMatrix& a) {
  GroupRingMatrix c(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.entries_.size(); ++k) c.entries_[k] = x * a.entries_[k];
  return c;
}

GroupRingMatrix operator*(const GroupRingMatrix& a, const GroupRingElement& x) {
  GroupRingMatrix c(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.entries_.size(); ++k) c.entries_[k] = a.entries_[k] * x;
  return c;
}

GroupRingMatrix adjoint(const GroupRingMatrix& a) {
  GroupRingMatrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) t(j, i) = involution(a(i, j));
  }
  return t;
}

Rational trace_matrix(const GroupRingMatrix& a) {
  if (!a.is_square()) {
    throw InputError("trace of non-square " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " matrix");
  }
  Rational s = 0;
  for (int i = 0; i < a.rows(); ++i) s += trace_e(a(i, i));
  return s;
}

Rational l1_row_bound(const GroupRingMatrix& a) {
  Rational best = 0;
  for (int i = 0; i < a.rows(); ++i) {
    Rational s = 0;
    for (int j = 0; j < a.cols(); ++j) s += l1_norm(a(i, j));
    best = std::max(best, s);
  }
  for (int j = 0; j < a.cols(); ++j) {
    Rational s = 0;
    for (int i = 0; i < a.rows(); ++i) s += l1_norm(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace hkp
