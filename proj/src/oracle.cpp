#include "lens/oracle.hpp"

#include <cstdlib>
#include <string>

namespace lens::oracle {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

std::int64_t weighted_residue(const LensSpace& space, std::span<const int> indices,
                              const std::vector<std::int64_t>& coords) {
  const std::int64_t p = space.order();
  std::int64_t acc = 0;
  for (std::size_t j = 0; j < coords.size(); ++j) {
    acc = floor_mod(acc + floor_mod(space.weight(indices[j]), p) * floor_mod(coords[j], p), p);
  }
  return acc;
}

// Visits compositions of `remaining` into parts[pos..] in lexicographic order.
template <typename Visit>
void for_each_composition(std::vector<std::int64_t>& parts, std::size_t pos,
                          std::int64_t remaining, Visit& visit) {
  if (pos + 1 == parts.size()) {
    parts[pos] = remaining;
    visit(parts);
    return;
  }
  for (std::int64_t a = 0; a <= remaining; ++a) {
    parts[pos] = a;
    for_each_composition(parts, pos + 1, remaining - a, visit);
  }
}

std::string describe(const LensSpace& space, std::int64_t h) {
  return "Omega(" + space.to_string() + ", h=" + std::to_string(h) + ")";
}

}  // namespace

std::int64_t LatticeVector::norm() const {
  std::int64_t n = 0;
  for (auto c : coords) n += c < 0 ? -c : c;
  return n;
}

bool satisfies_congruence(const LensSpace& space, const LatticeVector& x) {
  std::vector<int> all(static_cast<std::size_t>(space.num_weights()));
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return weighted_residue(space, all, x.coords) == 0;
}

CandidateBudget CandidateBudget::from_env() {
  if (const char* raw = std::getenv(kEnvVar)) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (end != raw && *end == '\0' && v > 0) return CandidateBudget(v);
  }
  return CandidateBudget(kDefaultLimit);
}

void CandidateBudget::charge(const Count& candidates, const std::string& what) {
  if (candidates > remaining()) {
    throw BudgetExceeded(what + " needs " + candidates.str() + " candidates but only " +
                         std::to_string(remaining()) + " of the oracle budget (" +
                         std::to_string(limit_) + ") remain; shrink the grid or raise " +
                         kEnvVar);
  }
  used_ += candidates.convert_to<std::uint64_t>();
}

Count omega_candidates(int m, std::int64_t h) {
  if (h == 0) return 1;
  // Choose which j coordinates are nonzero, a composition of h into j
  // positive parts, and their signs.
  Count total = 0;
  for (int j = 1; j <= m && j <= h; ++j) {
    total += binom(m, j) * binom(h - 1, j - 1) * (Count(1) << j);
  }
  return total;
}

std::vector<LatticeVector> enumerate_omega(const LensSpace& space, std::int64_t h,
                                           CandidateBudget& budget) {
  if (h < 0) throw std::invalid_argument("norm h must be non-negative");
  const int m = space.num_weights();
  budget.charge(omega_candidates(m, h), describe(space, h));

  std::vector<int> all(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;

  std::vector<LatticeVector> out;
  std::vector<std::int64_t> parts(static_cast<std::size_t>(m));
  const std::int64_t p = space.order();
  std::vector<std::size_t> nonzero;
  std::vector<std::int64_t> plus;  // q_i a_i mod p for each nonzero part
  auto visit = [&](const std::vector<std::int64_t>& composition) {
    nonzero.clear();
    plus.clear();
    for (std::size_t i = 0; i < composition.size(); ++i) {
      if (composition[i] == 0) continue;
      nonzero.push_back(i);
      plus.push_back(floor_mod(space.weight(static_cast<int>(i)) * composition[i], p));
    }
    for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << nonzero.size()); ++signs) {
      std::int64_t residue = 0;
      for (std::size_t j = 0; j < nonzero.size(); ++j) {
        residue += ((signs >> j) & 1u) ? p - plus[j] : plus[j];
      }
      if (residue % p != 0) continue;
      std::vector<std::int64_t> x = composition;
      for (std::size_t j = 0; j < nonzero.size(); ++j) {
        if ((signs >> j) & 1u) x[nonzero[j]] = -x[nonzero[j]];
      }
      // Independent recheck of the fast residue path.
      if (weighted_residue(space, all, x) != 0) throw std::logic_error("residue mismatch");
      out.push_back({std::move(x)});
    }
  };
  for_each_composition(parts, 0, h, visit);
  return out;
}

std::vector<LatticeVector> enumerate_omega(const LensSpace& space, std::int64_t h) {
  auto budget = CandidateBudget::from_env();
  return enumerate_omega(space, h, budget);
}

Count n_lattice_bruteforce(const LensSpace& space, std::int64_t h, CandidateBudget& budget) {
  return Count(enumerate_omega(space, h, budget).size());
}

Count n_lattice_bruteforce(const LensSpace& space, std::int64_t h) {
  auto budget = CandidateBudget::from_env();
  return n_lattice_bruteforce(space, h, budget);
}

std::vector<LatticeVector> enumerate_box(const LensSpace& space, SubsetMask subset,
                                         std::int64_t s, CandidateBudget& budget) {
  if (s < 0) throw std::invalid_argument("norm s must be non-negative");
  const std::int64_t p = space.order();
  const std::vector<int> indices = subset.indices();
  for (int i : indices) {
    if (i >= space.num_weights()) throw std::out_of_range("subset index beyond m");
  }
  Count box = 1;
  for (std::size_t j = 0; j < indices.size(); ++j) box *= 2 * p - 1;
  budget.charge(box, "C(" + subset.to_string() + ", s=" + std::to_string(s) + ") in " +
                         space.to_string());

  std::vector<LatticeVector> out;
  std::vector<std::int64_t> x(indices.size());
  auto walk = [&](auto&& self, std::size_t pos) -> void {
    if (pos == x.size()) {
      LatticeVector v{x};
      if (v.norm() == s && weighted_residue(space, indices, x) == 0) out.push_back(std::move(v));
      return;
    }
    for (std::int64_t c = -(p - 1); c <= p - 1; ++c) {
      x[pos] = c;
      self(self, pos + 1);
    }
  };
  walk(walk, 0);
  return out;
}

Count gamma_bruteforce(const LensSpace& space, SubsetMask subset, std::int64_t s,
                       CandidateBudget& budget) {
  return Count(enumerate_box(space, subset, s, budget).size());
}

Count gamma_bruteforce(const LensSpace& space, SubsetMask subset, std::int64_t s) {
  auto budget = CandidateBudget::from_env();
  return gamma_bruteforce(space, subset, s, budget);
}

SubsetMask negative_multiples(const LensSpace& space, const LatticeVector& x) {
  SubsetMask mask;
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    if (x.coords[i] < 0 && x.coords[i] % space.order() == 0) mask = mask.with(static_cast<int>(i));
  }
  return mask;
}

std::vector<PartitionClass> classify_partition(const LensSpace& space, std::int64_t h,
                                               CandidateBudget& budget) {
  std::map<SubsetMask, std::vector<LatticeVector>> classes;
  for (auto& x : enumerate_omega(space, h, budget)) {
    const SubsetMask n = negative_multiples(space, x);
    classes[n].push_back(std::move(x));
  }
  std::vector<PartitionClass> out;
  for (auto& [mask, members] : classes) out.push_back({mask, std::move(members)});
  return out;
}

std::vector<PartitionClass> classify_partition(const LensSpace& space, std::int64_t h) {
  auto budget = CandidateBudget::from_env();
  return classify_partition(space, h, budget);
}

std::int64_t reduce_coordinate(std::int64_t x, std::int64_t p) {
  const std::int64_t r = floor_mod(x, p);
  return x >= 0 ? r : r - p;
}

FoldedPoint fold_point(const LensSpace& space, const LatticeVector& x) {
  if (static_cast<int>(x.coords.size()) != space.num_weights()) {
    throw std::invalid_argument("vector length does not match m");
  }
  if (!satisfies_congruence(space, x)) {
    throw std::invalid_argument("vector is not in the congruence lattice of " +
                                space.to_string());
  }
  FoldedPoint out{negative_multiples(space, x), {}};
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    if (out.negatives.contains(static_cast<int>(i))) continue;
    out.image.coords.push_back(reduce_coordinate(x.coords[i], space.order()));
  }
  return out;
}

std::map<FoldKey, std::size_t> fiber_census(const LensSpace& space, std::int64_t h,
                                            CandidateBudget& budget) {
  const std::int64_t p = space.order();
  const std::int64_t k = h % p;
  std::map<FoldKey, std::size_t> census;
  for (const auto& x : enumerate_omega(space, h, budget)) {
    auto folded = fold_point(space, x);
    const std::int64_t norm = folded.image.norm();
    if ((norm - k) % p != 0 || norm < k) {
      throw std::logic_error("folded norm " + std::to_string(norm) + " is not k + t p");
    }
    ++census[FoldKey{folded.negatives, (norm - k) / p, std::move(folded.image)}];
  }
  return census;
}

std::map<FoldKey, std::size_t> fiber_census(const LensSpace& space, std::int64_t h) {
  auto budget = CandidateBudget::from_env();
  return fiber_census(space, h, budget);
}

}  // namespace lens::oracle
