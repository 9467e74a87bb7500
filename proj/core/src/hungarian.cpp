#include "osm/hungarian.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <sstream>

namespace osm {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Cells flattened into `dim` machine words each, compared lexicographically
// from the last word down. A scalar is dim 1; a rank-count vector keeps one
// word per rank that occurs anywhere in the grid.
template <class Word>
class Kernel {
 public:
  Kernel(std::size_t n, std::size_t dim, std::vector<Word> cost)
      : n_(n), dim_(dim), cost_(std::move(cost)), u_(n * dim, Word(0)), v_(n * dim, Word(0)),
        tmp_(dim, Word(0)) {}

  // Steps 1 and 2.
  void reduce() {
    for (std::size_t i = 0; i < n_; ++i) {
      const Word* best = cell(i, 0);
      for (std::size_t j = 1; j < n_; ++j) {
        if (compare(cell(i, j), best) < 0) best = cell(i, j);
      }
      std::copy_n(best, dim_, row_pot(i));
    }
    std::vector<Word> best(dim_);
    for (std::size_t j = 0; j < n_; ++j) {
      reduced_into(0, j, best.data());
      for (std::size_t i = 1; i < n_; ++i) {
        reduced_into(i, j, tmp_.data());
        if (compare(tmp_.data(), best.data()) < 0) std::copy_n(tmp_.data(), dim_, best.data());
      }
      std::copy_n(best.data(), dim_, col_pot(j));
    }
  }

  void solve() {
    reduce();
    row_match_.assign(n_, kNone);
    col_match_.assign(n_, kNone);
    std::size_t matched = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (col_match_[j] != kNone) continue;
        reduced_into(i, j, tmp_.data());
        if (is_zero(tmp_.data())) {
          row_match_[i] = j;
          col_match_[j] = i;
          ++matched;
          break;
        }
      }
    }
    const std::size_t cap = n_ * n_;
    while (matched < n_) {
      grow_forest_and_augment(cap);
      ++matched;
      ++augmentations_;
    }
  }

  std::size_t iterations() const { return iterations_; }
  std::size_t augmentations() const { return augmentations_; }
  const std::vector<std::size_t>& row_match() const { return row_match_; }

  void reduced_into(std::size_t i, std::size_t j, Word* out) const {
    const Word* c = cell(i, j);
    const Word* u = row_pot(i);
    const Word* v = col_pot(j);
    for (std::size_t k = 0; k < dim_; ++k) out[k] = c[k] - u[k] - v[k];
  }

  std::size_t dim() const { return dim_; }

 private:
  const Word* cell(std::size_t i, std::size_t j) const { return &cost_[(i * n_ + j) * dim_]; }
  Word* row_pot(std::size_t i) { return &u_[i * dim_]; }
  const Word* row_pot(std::size_t i) const { return &u_[i * dim_]; }
  Word* col_pot(std::size_t j) { return &v_[j * dim_]; }
  const Word* col_pot(std::size_t j) const { return &v_[j * dim_]; }

  int compare(const Word* a, const Word* b) const {
    for (std::size_t k = dim_; k-- > 0;) {
      if (a[k] < b[k]) return -1;
      if (b[k] < a[k]) return 1;
    }
    return 0;
  }
  bool is_zero(const Word* a) const {
    for (std::size_t k = 0; k < dim_; ++k) {
      if (a[k] != 0) return false;
    }
    return true;
  }

  // One augmentation. The alternating forest is rooted at every free row, so
  // when it stops growing the current matching is maximum on the zero cells
  // and (rows outside the forest) + (columns inside it) is a minimum cover.
  void grow_forest_and_augment(std::size_t cap) {
    std::vector<char> in_row(n_, 0);
    std::vector<char> in_col(n_, 0);
    std::vector<std::size_t> parent(n_, kNone);
    std::vector<Word> slack(n_ * dim_);
    std::vector<std::size_t> slack_row(n_, kNone);
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < n_; ++i) {
      if (row_match_[i] == kNone) {
        in_row[i] = 1;
        queue.push_back(i);
      }
    }

    // Returns true once an augmenting path has been applied.
    auto reach = [&](std::size_t j, std::size_t via) {
      in_col[j] = 1;
      parent[j] = via;
      if (col_match_[j] == kNone) {
        augment(j, parent);
        return true;
      }
      const std::size_t r = col_match_[j];
      in_row[r] = 1;
      queue.push_back(r);
      return false;
    };

    for (;;) {
      while (!queue.empty()) {
        const std::size_t i = queue.front();
        queue.pop_front();
        for (std::size_t j = 0; j < n_; ++j) {
          if (in_col[j]) continue;
          reduced_into(i, j, tmp_.data());
          if (is_zero(tmp_.data())) {
            if (reach(j, i)) return;
          } else if (slack_row[j] == kNone || compare(tmp_.data(), &slack[j * dim_]) < 0) {
            std::copy_n(tmp_.data(), dim_, &slack[j * dim_]);
            slack_row[j] = i;
          }
        }
      }

      // Step 5.
      if (++iterations_ > cap) {
        std::ostringstream os;
        os << "assignment kernel exceeded " << cap << " adjustment steps on a " << n_ << "x" << n_
           << " grid (" << augmentations_ << " augmentations so far)";
        throw KernelError(os.str());
      }
      std::size_t argmin = kNone;
      for (std::size_t j = 0; j < n_; ++j) {
        if (in_col[j]) continue;
        if (argmin == kNone || compare(&slack[j * dim_], &slack[argmin * dim_]) < 0) argmin = j;
      }
      const std::vector<Word> delta(slack.begin() + static_cast<std::ptrdiff_t>(argmin * dim_),
                                    slack.begin() + static_cast<std::ptrdiff_t>((argmin + 1) * dim_));
      for (std::size_t i = 0; i < n_; ++i) {
        if (!in_row[i]) continue;
        Word* u = row_pot(i);
        for (std::size_t k = 0; k < dim_; ++k) u[k] += delta[k];
      }
      for (std::size_t j = 0; j < n_; ++j) {
        if (in_col[j]) {
          Word* v = col_pot(j);
          for (std::size_t k = 0; k < dim_; ++k) v[k] -= delta[k];
        } else {
          Word* s = &slack[j * dim_];
          for (std::size_t k = 0; k < dim_; ++k) s[k] -= delta[k];
        }
      }
      for (std::size_t j = 0; j < n_; ++j) {
        if (!in_col[j] && is_zero(&slack[j * dim_])) {
          if (reach(j, slack_row[j])) return;
        }
      }
    }
  }

  void augment(std::size_t j, const std::vector<std::size_t>& parent) {
    while (j != kNone) {
      const std::size_t i = parent[j];
      const std::size_t next = row_match_[i];
      row_match_[i] = j;
      col_match_[j] = i;
      j = next;
    }
  }

  std::size_t n_;
  std::size_t dim_;
  std::vector<Word> cost_;
  std::vector<Word> u_;
  std::vector<Word> v_;
  std::vector<Word> tmp_;
  std::vector<std::size_t> row_match_;
  std::vector<std::size_t> col_match_;
  std::size_t iterations_ = 0;
  std::size_t augmentations_ = 0;
};

// Exact, order-preserving translation of a grid into kernel words.
struct Encoding {
  CostRealization realization = CostRealization::kScalar;
  std::size_t dim = 1;
  bool use_big = false;
  std::vector<std::int64_t> small;
  std::vector<BigInt> big;
  BigInt scale = 1;            // scalar cells are multiplied by this
  std::vector<int> dim_rank;   // rank-count coordinate -> rank
  std::uint64_t base = 0;
};

Encoding encode(const SeatGrid& grid) {
  Encoding enc;
  const auto& cells = grid.cells();
  const std::size_t n = grid.size();
  const bool any_counts = std::any_of(cells.begin(), cells.end(),
                                      [](const CostValue& c) { return !c.is_scalar(); });
  if (any_counts) {
    enc.realization = CostRealization::kRankCounts;
    std::map<int, std::size_t> ranks;
    for (const auto& c : cells) {
      if (c.is_scalar()) {
        if (!c.is_zero()) throw std::logic_error("seat grid mixes cost realizations");
        continue;
      }
      if (enc.base == 0) enc.base = c.counts().base();
      const auto& counts = c.counts().counts();
      for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] != 0) ranks.emplace(static_cast<int>(k + 1), 0);
      }
    }
    std::size_t d = 0;
    for (auto& [rank, idx] : ranks) {
      idx = d++;
      enc.dim_rank.push_back(rank);
    }
    enc.dim = std::max<std::size_t>(1, d);
    if (d == 0) enc.dim_rank.push_back(1);
    enc.small.assign(n * n * enc.dim, 0);
    for (std::size_t x = 0; x < cells.size(); ++x) {
      if (cells[x].is_scalar()) continue;
      const auto& counts = cells[x].counts().counts();
      for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] != 0) enc.small[x * enc.dim + ranks.at(static_cast<int>(k + 1))] = counts[k];
      }
    }
    return enc;
  }

  BigInt lcm = 1;
  for (const auto& c : cells) {
    const BigInt den = denominator(c.scalar());
    if (den != 1) lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
  }
  enc.scale = lcm;
  enc.big.reserve(cells.size());
  BigInt max_abs = 0;
  for (const auto& c : cells) {
    BigInt value = numerator(c.scalar()) * (lcm / denominator(c.scalar()));
    max_abs = std::max(max_abs, BigInt(abs(value)));
    enc.big.push_back(std::move(value));
  }
  // Potentials and reduced values stay within a small multiple of n * max.
  const BigInt limit = BigInt(std::numeric_limits<std::int64_t>::max()) / 8;
  if (max_abs * (static_cast<std::int64_t>(n) + 2) * 4 < limit) {
    enc.small.reserve(enc.big.size());
    for (const auto& b : enc.big) enc.small.push_back(static_cast<std::int64_t>(b));
    enc.big.clear();
  } else {
    enc.use_big = true;
  }
  return enc;
}

template <class Word>
CostValue decode(const Encoding& enc, const Word* words) {
  if (enc.realization == CostRealization::kRankCounts) {
    RankCounts out(enc.base);
    for (std::size_t k = 0; k < enc.dim; ++k) {
      if (words[k] != 0) out.add(enc.dim_rank[k], static_cast<std::int64_t>(words[k]));
    }
    return CostValue(std::move(out));
  }
  return CostValue(Rational(BigInt(words[0]), enc.scale));
}

template <class Word>
KernelSolution run(const SeatGrid& grid, const Encoding& enc, std::vector<Word> words) {
  const std::size_t n = grid.size();
  Kernel<Word> kernel(n, enc.dim, std::move(words));
  kernel.solve();

  KernelSolution out;
  out.assignment = kernel.row_match();
  out.total = grid.at(0, out.assignment[0]).zero_like();
  for (std::size_t i = 0; i < n; ++i) out.total += grid.at(i, out.assignment[i]);

  auto& trace = out.trace;
  trace.size = n;
  trace.iterations = kernel.iterations();
  trace.augmentations = kernel.augmentations();
  trace.final_reduced.reserve(n * n);
  std::vector<Word> tmp(enc.dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      kernel.reduced_into(i, j, tmp.data());
      trace.final_reduced.push_back(decode(enc, tmp.data()));
    }
  }
  // With a perfect matching no row is free, so the Koenig cover is every row.
  for (std::size_t i = 0; i < n; ++i) trace.cover_lines.push_back({CoverLine::Axis::kRow, i});
  return out;
}

template <class Word>
std::vector<CostValue> reduce_only(const SeatGrid& grid, const Encoding& enc, std::vector<Word> words) {
  const std::size_t n = grid.size();
  Kernel<Word> kernel(n, enc.dim, std::move(words));
  kernel.reduce();
  std::vector<CostValue> out;
  out.reserve(n * n);
  std::vector<Word> tmp(enc.dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      kernel.reduced_into(i, j, tmp.data());
      out.push_back(decode(enc, tmp.data()));
    }
  }
  return out;
}

}  // namespace

KernelSolution hungarian_solve(const SeatGrid& grid) {
  for (const auto& c : grid.cells()) {
    if (c < c.zero_like()) throw std::invalid_argument("seat grid has a negative entry");
  }
  Encoding enc = encode(grid);
  if (enc.use_big) return run<BigInt>(grid, enc, std::move(enc.big));
  return run<std::int64_t>(grid, enc, std::move(enc.small));
}

std::vector<CostValue> reduce_rows_and_columns(const SeatGrid& grid) {
  Encoding enc = encode(grid);
  if (enc.use_big) return reduce_only<BigInt>(grid, enc, std::move(enc.big));
  return reduce_only<std::int64_t>(grid, enc, std::move(enc.small));
}

}  // namespace osm
