#pragma once

// Brute-force ground truth for the lattice counts. Everything here works
// by direct enumeration and shares nothing with the gamma DP or the
// counting formula beyond LensSpace itself.

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "lens/core_lattice.hpp"

namespace lens::oracle {

struct LatticeVector {
  std::vector<std::int64_t> coords;

  std::int64_t norm() const;
  friend auto operator<=>(const LatticeVector&, const LatticeVector&) = default;
  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
};

bool satisfies_congruence(const LensSpace& space, const LatticeVector& x);

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caps the number of candidate vectors an enumeration may visit. A single
/// budget can be threaded through several calls to cap a whole sweep.
class CandidateBudget {
 public:
  static constexpr std::uint64_t kDefaultLimit = 100'000'000;
  static constexpr const char* kEnvVar = "LENS_ORACLE_BUDGET";

  explicit CandidateBudget(std::uint64_t limit) : limit_(limit) {}
  /// kDefaultLimit, or LENS_ORACLE_BUDGET when set to a positive integer.
  static CandidateBudget from_env();

  std::uint64_t limit() const { return limit_; }
  std::uint64_t used() const { return used_; }
  std::uint64_t remaining() const { return limit_ - used_; }

  /// Reserves `candidates` or throws BudgetExceeded naming `what`.
  void charge(const Count& candidates, const std::string& what);

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

/// Number of x in Z^m with ||x||_1 = h, i.e. the candidates enumerate_omega visits.
Count omega_candidates(int m, std::int64_t h);

/// Every x in Z^m with ||x||_1 = h and sum q_i x_i = 0 mod p, once each.
/// Order: compositions of h in lexicographic order, then sign patterns over
/// the nonzero parts (bit j set = j-th nonzero part negative).
std::vector<LatticeVector> enumerate_omega(const LensSpace& space, std::int64_t h,
                                           CandidateBudget& budget);
std::vector<LatticeVector> enumerate_omega(const LensSpace& space, std::int64_t h);

Count n_lattice_bruteforce(const LensSpace& space, std::int64_t h, CandidateBudget& budget);
Count n_lattice_bruteforce(const LensSpace& space, std::int64_t h);

/// Points of the box {-(p-1), ..., p-1}^U with 1-norm s satisfying the
/// congruence restricted to U. Coordinates follow increasing index in U.
std::vector<LatticeVector> enumerate_box(const LensSpace& space, SubsetMask subset,
                                         std::int64_t s, CandidateBudget& budget);

Count gamma_bruteforce(const LensSpace& space, SubsetMask subset, std::int64_t s,
                       CandidateBudget& budget);
Count gamma_bruteforce(const LensSpace& space, SubsetMask subset, std::int64_t s);

/// Indices i with x_i < 0 and x_i = 0 mod p.
SubsetMask negative_multiples(const LensSpace& space, const LatticeVector& x);

struct PartitionClass {
  SubsetMask negatives;
  std::vector<LatticeVector> members;
};

/// Omega(M, h) split by negative_multiples, classes ordered by mask.
std::vector<PartitionClass> classify_partition(const LensSpace& space, std::int64_t h,
                                               CandidateBudget& budget);
std::vector<PartitionClass> classify_partition(const LensSpace& space, std::int64_t h);

/// x_bar: x mod p for x >= 0, (x mod p) - p for x < 0, with x mod p in [0, p).
std::int64_t reduce_coordinate(std::int64_t x, std::int64_t p);

struct FoldedPoint {
  SubsetMask negatives;
  /// Coordinates over the complement of `negatives`, in increasing index.
  LatticeVector image;
};

/// The folding map: drops coordinates that are negative multiples of p and
/// reduces the rest with reduce_coordinate. Throws std::invalid_argument when
/// x violates the congruence.
FoldedPoint fold_point(const LensSpace& space, const LatticeVector& x);

struct FoldKey {
  SubsetMask negatives;
  std::int64_t t;  // ||image||_1 = k + t p
  LatticeVector image;
  friend auto operator<=>(const FoldKey&, const FoldKey&) = default;
  friend bool operator==(const FoldKey&, const FoldKey&) = default;
};

/// Fiber sizes of the folding map on Omega(M, h).
std::map<FoldKey, std::size_t> fiber_census(const LensSpace& space, std::int64_t h,
                                            CandidateBudget& budget);
std::map<FoldKey, std::size_t> fiber_census(const LensSpace& space, std::int64_t h);

}  // namespace lens::oracle
