#include <chrono>
#include <set>

#include "lens/verify.hpp"

namespace lens {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string show(const oracle::LatticeVector& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(x.coords[i]);
  }
  return out + ")";
}

}  // namespace

std::optional<std::string> check_partition_law(const LensSpace& space, std::int64_t h,
                                               oracle::CandidateBudget& budget) {
  const auto omega = oracle::enumerate_omega(space, h, budget);
  const std::set<oracle::LatticeVector> expected(omega.begin(), omega.end());
  if (expected.size() != omega.size()) return "enumeration produced duplicates";

  std::set<oracle::LatticeVector> seen;
  std::size_t total = 0;
  for (const auto& cls : oracle::classify_partition(space, h, budget)) {
    for (const auto& x : cls.members) {
      if (oracle::negative_multiples(space, x) != cls.negatives) {
        return show(x) + " filed under N=" + cls.negatives.to_string();
      }
      if (x.norm() != h || !oracle::satisfies_congruence(space, x)) {
        return show(x) + " is not in Omega(M, " + std::to_string(h) + ")";
      }
      if (!seen.insert(x).second) return show(x) + " appears in two classes";
      ++total;
    }
  }
  if (total != omega.size() || seen != expected) {
    return "classes hold " + std::to_string(total) + " points, Omega has " +
           std::to_string(omega.size());
  }
  return std::nullopt;
}

std::optional<std::string> check_fiber_law(const LensSpace& space, std::int64_t h,
                                           oracle::CandidateBudget& budget) {
  const std::int64_t p = space.order();
  const int m = space.num_weights();
  const auto [k, n] = decompose(h, p);
  const auto census = oracle::fiber_census(space, h, budget);

  for (const auto& [key, size] : census) {
    const int dropped = key.negatives.size();
    if (key.t < 0 || key.t > n - dropped) {
      return "image " + show(key.image) + " has t=" + std::to_string(key.t) + " > n-|N|=" +
             std::to_string(n - dropped);
    }
    for (auto c : key.image.coords) {
      if (c <= -p || c >= p) return "image " + show(key.image) + " leaves the box";
    }
    const Count expected = binom(n - key.t + (m - dropped) - 1, m - 1);
    if (Count(size) != expected) {
      return "fiber over N=" + key.negatives.to_string() + " y=" + show(key.image) + " has " +
             std::to_string(size) + " points, expected " + expected.str();
    }
  }

  // Surjectivity onto C(complement N, k + t p) for every t <= n - |N|.
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << m); ++bits) {
    const SubsetMask dropped(bits);
    const SubsetMask kept = dropped.complement(m);
    for (std::int64_t t = 0; t <= n - dropped.size(); ++t) {
      for (auto& y : oracle::enumerate_box(space, kept, k + t * p, budget)) {
        if (!census.contains(oracle::FoldKey{dropped, t, y})) {
          return "no preimage for N=" + dropped.to_string() + " y=" + show(y);
        }
      }
    }
  }
  return std::nullopt;
}

VerifyReport verify_spaces(const std::vector<LensSpace>& spaces, const VerifyOptions& options,
                           oracle::CandidateBudget& budget) {
  VerifyReport report;
  report.spaces = spaces.size();
  for (const auto& space : spaces) {
    const GammaTable table(space);
    for (std::int64_t h = options.h_min; h <= options.h_max; ++h) {
      ++report.cases;
      CaseResult result{space, h, options.formula(space, table, h),
                        oracle::n_lattice_bruteforce(space, h, budget)};
      if (!result.agrees()) report.mismatches.push_back(result);
      if (options.record_all) report.results.push_back(std::move(result));
      if (!options.deep) continue;
      report.law_checks += 2;
      if (auto failure = check_partition_law(space, h, budget)) {
        report.law_failures.push_back({space, h, "partition", *failure});
      }
      if (auto failure = check_fiber_law(space, h, budget)) {
        report.law_failures.push_back({space, h, "fiber", *failure});
      }
    }
  }
  return report;
}

BenchReport bench(const LensSpace& space, std::int64_t h_max, std::int64_t stride,
                  oracle::CandidateBudget& budget) {
  if (h_max < 0 || stride < 1) throw std::invalid_argument("bench needs h_max >= 0, stride >= 1");
  BenchReport report{space, 0.0, 0.0, {}, std::nullopt, true};

  auto start = Clock::now();
  const GammaTable table(space);
  report.table_seconds = seconds_since(start);
  report.formula_total_seconds = report.table_seconds;

  for (std::int64_t h = 0; h <= h_max; h += stride) {
    start = Clock::now();
    BenchRow row{h, 0.0, n_lattice_formula(space, table, h), std::nullopt, std::nullopt};
    row.formula_seconds = seconds_since(start);
    report.formula_total_seconds += row.formula_seconds;

    if (!report.oracle_refused_at) {
      try {
        start = Clock::now();
        row.oracle_value = oracle::n_lattice_bruteforce(space, h, budget);
        row.oracle_seconds = seconds_since(start);
        if (*row.oracle_value != row.formula_value) report.values_agree = false;
      } catch (const oracle::BudgetExceeded&) {
        report.oracle_refused_at = h;
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace lens
