#include "hkp/rational.hpp"

#include <algorithm>
#include <cctype>

#include "hkp/errors.hpp"

namespace hkp {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? "1" : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw InputError("malformed rational \"" + std::string(text) + "\"");
  }
  const Integer d{std::string(den)};
  if (d == 0) throw InputError("zero denominator in \"" + std::string(text) + "\"");
  const Rational q{Integer{std::string(num)}, d};
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.str(); }

long exact_rank(const SparseMatrix<Rational>& m) {
  const long rows = m.rows();
  const long cols = m.cols();
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(rows),
                                       std::vector<Rational>(static_cast<std::size_t>(cols)));
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix<Rational>::InnerIterator it(m, k); it; ++it) {
      a[static_cast<std::size_t>(it.row())][static_cast<std::size_t>(it.col())] = it.value();
    }
  }
  long rank = 0;
  std::vector<std::size_t> support;
  for (long c = 0; c < cols && rank < rows; ++c) {
    const auto col = static_cast<std::size_t>(c);
    std::size_t pivot = static_cast<std::size_t>(rank);
    while (pivot < a.size() && a[pivot][col] == 0) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[pivot], a[static_cast<std::size_t>(rank)]);
    auto& prow = a[static_cast<std::size_t>(rank)];
    support.clear();
    for (std::size_t j = col; j < prow.size(); ++j) {
      if (prow[j] != 0) support.push_back(j);
    }
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < a.size(); ++r) {
      if (a[r][col] == 0) continue;
      const Rational f = a[r][col] / prow[col];
      for (std::size_t j : support) a[r][j] -= f * prow[j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace hkp
