#include "hkp/coset_enum.hpp"

#include <algorithm>
#include <numeric>

#include "hkp/errors.hpp"
#include "hkp/parallel.hpp"

namespace hkp {

namespace {

constexpr int kUndefined = -1;

std::vector<std::vector<int>> invert_all(const std::vector<std::vector<int>>& forward, int n) {
  std::vector<std::vector<int>> backward(forward.size(),
                                         std::vector<int>(static_cast<std::size_t>(n), kUndefined));
  for (std::size_t g = 0; g < forward.size(); ++g) {
    if (forward[g].size() != static_cast<std::size_t>(n)) {
      throw InputError("permutation image has wrong length");
    }
    for (int c = 0; c < n; ++c) {
      const int d = forward[g][static_cast<std::size_t>(c)];
      if (d < 0 || d >= n || backward[g][static_cast<std::size_t>(d)] != kUndefined) {
        throw InputError("generator image is not a permutation");
      }
      backward[g][static_cast<std::size_t>(d)] = c;
    }
  }
  return backward;
}

// Column x encodes letter: 2g for generator g, 2g+1 for its inverse.
int column_of(Letter l) { return 2 * generator_of(l) + (l < 0 ? 1 : 0); }
int inverse_column(int x) { return x ^ 1; }

// Hasselgrove–Leech–Trotter enumeration with union-find coincidence
// processing. Cosets are defined in first-undefined-entry order.
class HltEnumerator {
 public:
  HltEnumerator(int generator_count, long max_cosets)
      : columns_(2 * generator_count), max_active_(max_cosets),
        max_total_(2 * max_cosets + 1000) {
    new_row();
    active_ = 1;
  }

  void run(const std::vector<std::vector<int>>& relators,
           const std::vector<std::vector<int>>& subgroup) {
    for (const auto& h : subgroup) scan_and_fill(0, h);
    for (std::size_t alpha = 0; alpha < parent_.size(); ++alpha) {
      const int a = static_cast<int>(alpha);
      for (const auto& r : relators) {
        if (!live(a)) break;
        scan_and_fill(a, r);
      }
      if (!live(a)) continue;
      for (int x = 0; x < columns_; ++x) {
        if (entry(a, x) == kUndefined) define(a, x);
      }
    }
  }

  // Relabels live cosets in breadth-first order from coset 0, scanning
  // columns in generator order.
  std::vector<std::vector<int>> standardized(int generator_count) const {
    std::vector<int> label(parent_.size(), kUndefined);
    std::vector<int> order{0};
    label[0] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (int x = 0; x < columns_; ++x) {
        const int d = entry(order[i], x);
        if (d == kUndefined) throw std::logic_error("coset table incomplete after enumeration");
        if (label[static_cast<std::size_t>(d)] == kUndefined) {
          label[static_cast<std::size_t>(d)] = static_cast<int>(order.size());
          order.push_back(d);
        }
      }
    }
    std::vector<std::vector<int>> images(static_cast<std::size_t>(generator_count),
                                         std::vector<int>(order.size()));
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (int g = 0; g < generator_count; ++g) {
        images[static_cast<std::size_t>(g)][i] =
            label[static_cast<std::size_t>(entry(order[i], 2 * g))];
      }
    }
    return images;
  }

 private:
  int& entry(int c, int x) {
    return table_[static_cast<std::size_t>(c) * static_cast<std::size_t>(columns_) +
                  static_cast<std::size_t>(x)];
  }
  int entry(int c, int x) const {
    return table_[static_cast<std::size_t>(c) * static_cast<std::size_t>(columns_) +
                  static_cast<std::size_t>(x)];
  }
  bool live(int c) const { return parent_[static_cast<std::size_t>(c)] == c; }

  int new_row() {
    const int c = static_cast<int>(parent_.size());
    parent_.push_back(c);
    table_.resize(table_.size() + static_cast<std::size_t>(columns_), kUndefined);
    return c;
  }

  void define(int c, int x) {
    if (active_ >= max_active_ || static_cast<long>(parent_.size()) >= max_total_) {
      throw EnumerationOverflow("coset enumeration exceeded " + std::to_string(max_active_) +
                                " cosets (quotient too large or infinite)");
    }
    const int d = new_row();
    ++active_;
    entry(c, x) = d;
    entry(d, inverse_column(x)) = c;
  }

  void scan_and_fill(int alpha, const std::vector<int>& w) {
    if (w.empty()) return;
    int f = alpha;
    int b = alpha;
    int i = 0;
    int j = static_cast<int>(w.size()) - 1;
    for (;;) {
      while (i <= j && entry(f, w[static_cast<std::size_t>(i)]) != kUndefined) {
        f = entry(f, w[static_cast<std::size_t>(i)]);
        ++i;
      }
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && entry(b, inverse_column(w[static_cast<std::size_t>(j)])) != kUndefined) {
        b = entry(b, inverse_column(w[static_cast<std::size_t>(j)]));
        --j;
      }
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        const int x = w[static_cast<std::size_t>(i)];
        entry(f, x) = b;
        entry(b, inverse_column(x)) = f;
        return;
      }
      define(f, w[static_cast<std::size_t>(i)]);
    }
  }

  int rep(int c) {
    int root = c;
    while (parent_[static_cast<std::size_t>(root)] != root) {
      root = parent_[static_cast<std::size_t>(root)];
    }
    while (parent_[static_cast<std::size_t>(c)] != root) {
      const int next = parent_[static_cast<std::size_t>(c)];
      parent_[static_cast<std::size_t>(c)] = root;
      c = next;
    }
    return root;
  }

  void merge(int k, int l, std::vector<int>& queue) {
    const int phi = rep(k);
    const int psi = rep(l);
    if (phi == psi) return;
    const int mu = std::min(phi, psi);
    const int nu = std::max(phi, psi);
    parent_[static_cast<std::size_t>(nu)] = mu;
    --active_;
    queue.push_back(nu);
  }

  void coincidence(int alpha, int beta) {
    std::vector<int> queue;
    merge(alpha, beta, queue);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const int gamma = queue[i];
      for (int x = 0; x < columns_; ++x) {
        const int delta = entry(gamma, x);
        if (delta == kUndefined) continue;
        entry(delta, inverse_column(x)) = kUndefined;
        const int mu = rep(gamma);
        const int nu = rep(delta);
        if (entry(mu, x) != kUndefined) {
          merge(nu, entry(mu, x), queue);
        } else if (entry(nu, inverse_column(x)) != kUndefined) {
          merge(mu, entry(nu, inverse_column(x)), queue);
        } else {
          entry(mu, x) = nu;
          entry(nu, inverse_column(x)) = mu;
        }
      }
    }
  }

  int columns_;
  long max_active_;
  long max_total_;
  long active_ = 0;
  std::vector<int> parent_;
  std::vector<int> table_;
};

std::vector<int> to_columns(const Word& w) {
  std::vector<int> cols;
  cols.reserve(w.length());
  for (Letter l : w.letters()) cols.push_back(column_of(l));
  return cols;
}

}  // namespace

CosetTable::CosetTable(int generator_count, std::vector<std::vector<int>> images)
    : count_(images.empty() ? 0 : static_cast<int>(images.front().size())),
      forward_(std::move(images)) {
  if (generator_count != static_cast<int>(forward_.size())) {
    throw InputError("coset table: one permutation per generator required");
  }
  if (count_ < 1) throw InputError("coset table must have at least one coset");
  backward_ = invert_all(forward_, count_);
}

bool CosetTable::satisfies(std::span<const Word> relators) const {
  for (const auto& r : relators) {
    for (int c = 0; c < count_; ++c) {
      if (act(c, r) != c) return false;
    }
  }
  return true;
}

bool CosetTable::is_transitive() const {
  std::vector<char> seen(static_cast<std::size_t>(count_), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int c = stack.back();
    stack.pop_back();
    for (const auto* perms : {&forward_, &backward_}) {
      for (const auto& perm : *perms) {
        const int d = perm[static_cast<std::size_t>(c)];
        if (!seen[static_cast<std::size_t>(d)]) {
          seen[static_cast<std::size_t>(d)] = 1;
          ++reached;
          stack.push_back(d);
        }
      }
    }
  }
  return reached == count_;
}

CosetTable todd_coxeter(const Presentation& p, std::span<const Word> extra_relators,
                        long max_cosets, std::span<const Word> subgroup_generators) {
  if (max_cosets < 1) throw InputError("max_cosets must be at least 1");
  std::vector<std::vector<int>> relators;
  for (const auto& r : p.relators()) relators.push_back(to_columns(r));
  for (const auto& r : extra_relators) {
    word_reduce(r.letters(), p.generator_count());
    if (!r.is_identity()) relators.push_back(to_columns(r));
  }
  std::vector<std::vector<int>> subgroup;
  for (const auto& h : subgroup_generators) {
    word_reduce(h.letters(), p.generator_count());
    subgroup.push_back(to_columns(h));
  }

  HltEnumerator hlt(p.generator_count(), max_cosets);
  hlt.run(relators, subgroup);
  CosetTable table(p.generator_count(), hlt.standardized(p.generator_count()));
  if (!table.satisfies(p.relators()) || !table.satisfies(extra_relators)) {
    throw std::logic_error("coset enumeration produced a table violating a relator");
  }
  return table;
}

Representation::Representation(std::string label, std::vector<std::vector<int>> images)
    : label_(std::move(label)),
      dim_(images.empty() ? 0 : static_cast<int>(images.front().size())),
      forward_(std::move(images)) {
  if (forward_.empty()) throw InputError("representation needs at least one generator");
  if (dim_ < 1) throw InputError("representation dimension must be positive");
  backward_ = invert_all(forward_, dim_);
}

Representation Representation::trivial(int generator_count) {
  return Representation("trivial",
                        std::vector<std::vector<int>>(static_cast<std::size_t>(generator_count),
                                                      std::vector<int>{0}));
}

std::vector<int> Representation::action(const Word& w) const {
  std::vector<int> img(static_cast<std::size_t>(dim_));
  std::iota(img.begin(), img.end(), 0);
  for (Letter l : w.letters()) {
    const auto g = static_cast<std::size_t>(generator_of(l));
    const auto& perm = l > 0 ? forward_[g] : backward_[g];
    for (auto& c : img) c = perm[static_cast<std::size_t>(c)];
  }
  return img;
}

bool Representation::respects(std::span<const Word> relators) const {
  for (const auto& r : relators) {
    const auto img = action(r);
    for (int c = 0; c < dim_; ++c) {
      if (img[static_cast<std::size_t>(c)] != c) return false;
    }
  }
  return true;
}

Representation permutation_rep(const CosetTable& t, std::string label) {
  std::vector<std::vector<int>> images;
  for (int g = 0; g < t.generator_count(); ++g) {
    auto perm = t.permutation(g);
    images.emplace_back(perm.begin(), perm.end());
  }
  if (label.empty()) label = "quotient of order " + std::to_string(t.coset_count());
  return Representation(std::move(label), std::move(images));
}

namespace {

struct SeparationSearch {
  int generator_count;
  std::span<const CosetTable> tables;
  int limit;
  std::vector<Letter> current;
  std::optional<std::vector<Letter>> best;

  void visit(std::vector<int>& points) {
    if (!current.empty()) {
      const bool trivial_everywhere =
          std::all_of(points.begin(), points.end(), [](int c) { return c == 0; });
      if (trivial_everywhere) {
        if (!best || current.size() < best->size()) best = current;
        limit = static_cast<int>(current.size());
        return;
      }
    }
    if (static_cast<int>(current.size()) >= limit) return;
    std::vector<int> next(points.size());
    for (int g = 0; g < generator_count; ++g) {
      for (bool inv : {false, true}) {
        const Letter l = letter_of(g, inv);
        if (!current.empty() && current.back() == -l) continue;
        for (std::size_t t = 0; t < tables.size(); ++t) next[t] = tables[t].act(points[t], l);
        current.push_back(l);
        std::vector<int> child = next;
        visit(child);
        current.pop_back();
        if (static_cast<int>(current.size()) >= limit) return;
      }
    }
  }
};

}  // namespace

SeparationCheck check_separation(const Presentation& p, std::span<const CosetTable> tables,
                                 int radius) {
  SeparationCheck check;
  check.radius = radius;
  if (radius <= 0 || tables.empty()) return check;
  SeparationSearch search{p.generator_count(), tables, radius, {}, std::nullopt};
  std::vector<int> start(tables.size(), 0);
  search.visit(start);
  if (search.best) {
    check.separated = false;
    check.witness = Word(*search.best);
  }
  return check;
}

QuotientChain quotient_chain(const Presentation& p,
                             const std::vector<std::vector<Word>>& chain_spec, int ball_radius,
                             long max_cosets, int threads) {
  if (chain_spec.empty()) throw InputError("quotient chain specification is empty");
  QuotientChain chain;
  chain.members = parallel_map(chain_spec.size(), threads, [&](std::size_t i) {
    CosetTable table = todd_coxeter(p, chain_spec[i], max_cosets);
    Representation rep = permutation_rep(table, "lambda_" + std::to_string(i + 1));
    const long index = table.coset_count();
    return QuotientMember{chain_spec[i], std::move(table), std::move(rep), index};
  });
  for (std::size_t i = 1; i < chain.members.size(); ++i) {
    if (chain.members[i].index <= chain.members[i - 1].index) {
      throw InputError("quotient indices must strictly increase along the chain (member " +
                       std::to_string(i + 1) + " has index " +
                       std::to_string(chain.members[i].index) + ", previous " +
                       std::to_string(chain.members[i - 1].index) + ")");
    }
  }
  std::vector<CosetTable> tables;
  for (const auto& m : chain.members) tables.push_back(m.table);
  chain.separation = check_separation(p, tables, ball_radius);
  if (!chain.separation.separated) {
    chain.warnings.push_back("separation fails at radius " +
                             std::to_string(chain.separation.witness->length()) + ": word " +
                             p.format(*chain.separation.witness) +
                             " acts trivially in every quotient" +
                             (p.relators().empty() ? "" : " (it may be trivial in the group itself)"));
  }
  return chain;
}

}  // namespace hkp
