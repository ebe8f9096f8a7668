#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lens {

/// Exact non-negative counts. Lattice counts and eigenspace dimensions
/// overflow 64 bits quickly, so everything that counts points uses this.
using Count = boost::multiprecision::cpp_int;

class InvalidLensSpace : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameters (p; q_1, ..., q_m) of the lens space L(p; q_1, ..., q_m),
/// the quotient of S^{2m-1} by the cyclic group of order p.
///
/// Weights are stored reduced mod p (into [1, p-1] for p >= 2, and 0 for
/// p = 1 where the congruence is vacuous).
class LensSpace {
 public:
  std::int64_t order() const { return order_; }
  std::span<const std::int64_t> weights() const { return weights_; }
  std::int64_t weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }
  int num_weights() const { return static_cast<int>(weights_.size()); }
  /// Manifold dimension 2m - 1.
  int dimension() const { return 2 * num_weights() - 1; }

  /// "L(p;q1,...,qm)" with the reduced weights.
  std::string to_string() const;

  friend bool operator==(const LensSpace&, const LensSpace&) = default;

 private:
  friend LensSpace make_lens_space(std::int64_t p, std::span<const std::int64_t> q);
  LensSpace(std::int64_t p, std::vector<std::int64_t> q)
      : order_(p), weights_(std::move(q)) {}

  std::int64_t order_;
  std::vector<std::int64_t> weights_;
};

/// Validates and reduces the parameters. Throws InvalidLensSpace when
/// p <= 0, fewer than two weights are given, or some q_i shares a factor
/// with p.
LensSpace make_lens_space(std::int64_t p, std::span<const std::int64_t> q);

inline LensSpace make_lens_space(std::int64_t p, std::initializer_list<std::int64_t> q) {
  return make_lens_space(p, std::span<const std::int64_t>(q.begin(), q.size()));
}

/// A subset U of M = {1, ..., m}, bit i standing for index i + 1.
class SubsetMask {
 public:
  constexpr SubsetMask() = default;
  constexpr explicit SubsetMask(std::uint32_t bits) : bits_(bits) {}

  static constexpr SubsetMask full(int m) {
    return SubsetMask(m >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << m) - 1);
  }

  constexpr std::uint32_t bits() const { return bits_; }
  int size() const;
  constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
  constexpr SubsetMask with(int i) const { return SubsetMask(bits_ | (std::uint32_t{1} << i)); }
  constexpr SubsetMask complement(int m) const { return SubsetMask(full(m).bits_ & ~bits_); }
  /// Zero-based indices in increasing order.
  std::vector<int> indices() const;

  /// "{1,3}" style, one-based.
  std::string to_string() const;

  friend constexpr auto operator<=>(SubsetMask, SubsetMask) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Binomial coefficient pool! / (choose! (pool - choose)!), taken as 0
/// whenever pool < choose or either argument is negative.
Count binom(std::int64_t pool, std::int64_t choose);

/// h = residue + quotient * p with 0 <= residue < p.
struct Decomposition {
  std::int64_t residue;
  std::int64_t quotient;
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

Decomposition decompose(std::int64_t h, std::int64_t p);

/// gamma(U, s): number of x in Z^U with |x_i| <= p - 1, ||x||_1 = s and
/// sum q_i x_i = 0 mod p. Residue/norm dynamic programming over the
/// coordinates of U.
Count gamma(const LensSpace& space, SubsetMask subset, std::int64_t s);

/// gamma(U, s) for every U subset of M and 0 <= s <= m (p - 1).
///
/// Built by a depth-first walk over include/exclude decisions for each
/// coordinate, so each subset's DP state is one coordinate extension of its
/// parent's. Immutable once built; concurrent readers are fine.
class GammaTable {
 public:
  /// Largest supported m (tables are 2^m rows).
  static constexpr int kMaxWeights = 20;
  /// Refuses tables with more entries than this.
  static constexpr std::size_t kMaxEntries = std::size_t{1} << 26;

  explicit GammaTable(const LensSpace& space);

  const LensSpace& space() const { return space_; }
  /// Largest norm with possibly nonzero entries, m (p - 1).
  std::int64_t max_norm() const { return max_norm_; }
  /// Zero outside the stored range.
  const Count& at(SubsetMask subset, std::int64_t s) const;
  /// Sum of gamma(U, s) over all U with |U| = size.
  const Count& size_total(int size, std::int64_t s) const;

 private:
  LensSpace space_;
  std::int64_t max_norm_;
  std::vector<Count> entries_;
  std::vector<Count> size_totals_;  // (m + 1) rows
};

inline GammaTable gamma_table(const LensSpace& space) { return GammaTable(space); }

}  // namespace lens
