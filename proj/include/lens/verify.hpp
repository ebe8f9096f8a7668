#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lens/core_lattice.hpp"
#include "lens/oracle.hpp"
#include "lens/spectrum.hpp"

namespace lens {

/// Orbit representative of q under permutation, q_i -> -q_i and q -> c q
/// (gcd(c, p) = 1): the lexicographically smallest sorted tuple of
/// min(c q_i mod p, p - c q_i mod p) over all units c. Returns all zeros
/// for p = 1.
std::vector<std::int64_t> canonical_weights(std::int64_t p, std::span<const std::int64_t> q);

/// One representative per orbit of valid m-tuples mod p, in lexicographic order.
std::vector<std::vector<std::int64_t>> canonical_weight_tuples(std::int64_t p, int m);

/// The spaces L(p; q) for p in [p_min, p_max], m in ms, q canonical.
std::vector<LensSpace> canonical_grid(std::int64_t p_min, std::int64_t p_max,
                                      const std::vector<int>& ms);

/// Returns a failure description when the classes of classify_partition are
/// not a disjoint, exhaustive split of Omega(M, h).
std::optional<std::string> check_partition_law(const LensSpace& space, std::int64_t h,
                                               oracle::CandidateBudget& budget);

/// Returns a failure description when some fiber of the folding map on
/// Omega(M, h) has the wrong size, lands outside t <= n - |N|, or some
/// admissible target point is missed.
std::optional<std::string> check_fiber_law(const LensSpace& space, std::int64_t h,
                                           oracle::CandidateBudget& budget);

using FormulaFn = std::function<Count(const LensSpace&, const GammaTable&, std::int64_t)>;

struct CaseResult {
  LensSpace space;
  std::int64_t h;
  Count formula;
  Count oracle;

  bool agrees() const { return formula == oracle; }
};

struct LawFailure {
  LensSpace space;
  std::int64_t h;
  std::string law;
  std::string detail;
};

struct VerifyReport {
  std::string grid;
  std::size_t spaces = 0;
  std::size_t cases = 0;
  /// Ordered by space, then ascending h.
  std::vector<CaseResult> mismatches;
  /// Every case, when VerifyOptions::record_all is set.
  std::vector<CaseResult> results;
  std::size_t law_checks = 0;
  std::vector<LawFailure> law_failures;

  bool ok() const { return mismatches.empty() && law_failures.empty(); }
};

struct VerifyOptions {
  std::int64_t h_min = 0;
  std::int64_t h_max = 20;
  bool record_all = false;
  /// Also run the partition and fiber laws on every case.
  bool deep = false;
  FormulaFn formula = &n_lattice_formula;
};

/// Formula vs brute force for h = h_min..h_max on each space.
VerifyReport verify_spaces(const std::vector<LensSpace>& spaces, const VerifyOptions& options,
                           oracle::CandidateBudget& budget);

struct BenchRow {
  std::int64_t h;
  double formula_seconds;
  Count formula_value;
  /// Empty once the oracle budget refuses.
  std::optional<double> oracle_seconds;
  std::optional<Count> oracle_value;
};

struct BenchReport {
  LensSpace space;
  double table_seconds = 0;
  double formula_total_seconds = 0;
  std::vector<BenchRow> rows;
  /// First h the oracle refused under the shared budget.
  std::optional<std::int64_t> oracle_refused_at;
  bool values_agree = true;
};

/// Times the formula for h = 0, stride, ..., h_max against the oracle. The
/// oracle shares one budget across the sweep and is skipped from the first
/// refusal on.
BenchReport bench(const LensSpace& space, std::int64_t h_max, std::int64_t stride,
                  oracle::CandidateBudget& budget);

}  // namespace lens
