#include "lens/core_lattice.hpp"

#include <bit>
#include <numeric>
#include <sstream>

namespace lens {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

// DP state over (residue mod p, accumulated 1-norm), flattened residue-major.
struct ResidueNormState {
  std::int64_t order;
  std::int64_t max_norm;
  std::vector<Count> cells;

  ResidueNormState(std::int64_t p, std::int64_t norm_bound)
      : order(p), max_norm(norm_bound),
        cells(static_cast<std::size_t>(p * (norm_bound + 1))) {
    cells[0] = 1;  // empty tuple: residue 0, norm 0
  }

  Count& cell(std::int64_t residue, std::int64_t norm) {
    return cells[static_cast<std::size_t>(residue * (max_norm + 1) + norm)];
  }
  const Count& cell(std::int64_t residue, std::int64_t norm) const {
    return cells[static_cast<std::size_t>(residue * (max_norm + 1) + norm)];
  }
};

// Appends one coordinate x in {-(p-1), ..., p-1} with weight q.
ResidueNormState extend(const ResidueNormState& from, std::int64_t q) {
  const std::int64_t p = from.order;
  ResidueNormState to(p, from.max_norm);
  to.cells[0] = 0;
  for (std::int64_t r = 0; r < p; ++r) {
    for (std::int64_t s = 0; s <= from.max_norm; ++s) {
      const Count& c = from.cell(r, s);
      if (c.is_zero()) continue;
      for (std::int64_t x = -(p - 1); x <= p - 1; ++x) {
        const std::int64_t norm = s + (x < 0 ? -x : x);
        if (norm > from.max_norm) continue;
        to.cell(floor_mod(r + q * x, p), norm) += c;
      }
    }
  }
  return to;
}

}  // namespace

std::string LensSpace::to_string() const {
  std::ostringstream os;
  os << "L(" << order_ << ';';
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (i) os << ',';
    os << weights_[i];
  }
  os << ')';
  return os.str();
}

LensSpace make_lens_space(std::int64_t p, std::span<const std::int64_t> q) {
  if (p <= 0) {
    throw InvalidLensSpace("order p must be positive, got " + std::to_string(p));
  }
  if (q.size() < 2) {
    throw InvalidLensSpace("need at least two weights q_i, got " + std::to_string(q.size()));
  }
  std::vector<std::int64_t> reduced;
  reduced.reserve(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const std::int64_t g = std::gcd(q[i], p);
    if (g != 1) {
      throw InvalidLensSpace("q" + std::to_string(i + 1) + "=" + std::to_string(q[i]) +
                             " is not coprime to p=" + std::to_string(p) + " (gcd(" +
                             std::to_string(q[i]) + "," + std::to_string(p) +
                             ")=" + std::to_string(g) + ")");
    }
    reduced.push_back(floor_mod(q[i], p));
  }
  return LensSpace(p, std::move(reduced));
}

int SubsetMask::size() const { return std::popcount(bits_); }

std::vector<int> SubsetMask::indices() const {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

std::string SubsetMask::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int i : indices()) {
    if (!first) out += ',';
    out += std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

Count binom(std::int64_t pool, std::int64_t choose) {
  if (pool < 0 || choose < 0 || choose > pool) return 0;
  choose = std::min(choose, pool - choose);
  Count result = 1;
  for (std::int64_t j = 1; j <= choose; ++j) {
    // Exact at every step: result holds binom(pool - choose + j - 1, j - 1).
    result *= pool - choose + j;
    result /= j;
  }
  return result;
}

Decomposition decompose(std::int64_t h, std::int64_t p) {
  if (h < 0 || p < 1) {
    throw std::invalid_argument("decompose needs h >= 0 and p >= 1");
  }
  return {h % p, h / p};
}

Count gamma(const LensSpace& space, SubsetMask subset, std::int64_t s) {
  const std::int64_t p = space.order();
  const std::int64_t bound = subset.size() * (p - 1);
  if (s < 0 || s > bound) return 0;
  ResidueNormState state(p, bound);
  for (int i : subset.indices()) {
    if (i >= space.num_weights()) {
      throw std::out_of_range("subset " + subset.to_string() + " exceeds m=" +
                              std::to_string(space.num_weights()));
    }
    state = extend(state, space.weight(i));
  }
  return state.cell(0, s);
}

GammaTable::GammaTable(const LensSpace& space)
    : space_(space), max_norm_(space.num_weights() * (space.order() - 1)) {
  const int m = space.num_weights();
  if (m > kMaxWeights) {
    throw std::length_error("gamma table supports m <= " + std::to_string(kMaxWeights));
  }
  const std::size_t rows = std::size_t{1} << m;
  const std::size_t width = static_cast<std::size_t>(max_norm_ + 1);
  if (rows * width > kMaxEntries) {
    throw std::length_error("gamma table for " + space.to_string() + " would need " +
                            std::to_string(rows * width) + " entries");
  }
  entries_.resize(rows * width);

  // Depth-first over coordinates; the stack holds one state per level.
  auto visit = [&](auto&& self, int i, SubsetMask mask, const ResidueNormState& state) -> void {
    if (i == m) {
      for (std::int64_t s = 0; s <= max_norm_; ++s) {
        entries_[mask.bits() * width + static_cast<std::size_t>(s)] = state.cell(0, s);
      }
      return;
    }
    self(self, i + 1, mask, state);
    self(self, i + 1, mask.with(i), extend(state, space_.weight(i)));
  };
  visit(visit, 0, SubsetMask{}, ResidueNormState(space.order(), max_norm_));

  size_totals_.resize(static_cast<std::size_t>(m + 1) * width);
  for (std::size_t bits = 0; bits < rows; ++bits) {
    const auto size = static_cast<std::size_t>(std::popcount(bits));
    for (std::size_t s = 0; s < width; ++s) {
      const Count& g = entries_[bits * width + s];
      if (!g.is_zero()) size_totals_[size * width + s] += g;
    }
  }
}

const Count& GammaTable::at(SubsetMask subset, std::int64_t s) const {
  static const Count zero = 0;
  if (s < 0 || s > max_norm_) return zero;
  const std::size_t width = static_cast<std::size_t>(max_norm_ + 1);
  return entries_.at(subset.bits() * width + static_cast<std::size_t>(s));
}

const Count& GammaTable::size_total(int size, std::int64_t s) const {
  static const Count zero = 0;
  if (s < 0 || s > max_norm_ || size < 0 || size > space_.num_weights()) return zero;
  const std::size_t width = static_cast<std::size_t>(max_norm_ + 1);
  return size_totals_[static_cast<std::size_t>(size) * width + static_cast<std::size_t>(s)];
}

}  // namespace lens
