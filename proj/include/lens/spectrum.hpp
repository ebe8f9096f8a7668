#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lens/core_lattice.hpp"

namespace lens {

/// N_L(h): number of x in Z^m with ||x||_1 = h and sum q_i x_i = 0 mod p,
/// evaluated from the gamma table. With h = k + n p (0 <= k < p),
///
///   N_L(h) = sum_{t=0}^{m-1} sum_{U subset M} binom(n - t + |U| - 1, m - 1) gamma(U, k + t p).
Count n_lattice_formula(const LensSpace& space, const GammaTable& table, std::int64_t h);

/// N_L(0), ..., N_L(h_max).
std::vector<Count> n_lattice_sequence(const LensSpace& space, const GammaTable& table,
                                      std::int64_t h_max);

/// dim of the eigenspace for lambda_i = i (i + d - 1):
///   sum_{s=0}^{floor(i/2)} binom(s + m - 2, m - 2) N_L(i - 2s).
Count multiplicity(const LensSpace& space, const GammaTable& table, std::int64_t i);

struct SpectrumEntry {
  std::int64_t degree;
  std::uint64_t eigenvalue;
  Count mult;
  friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

struct SpectrumTable {
  LensSpace space;
  std::vector<SpectrumEntry> entries;
};

/// i (i + d - 1) with d = 2m - 1.
std::uint64_t eigenvalue(const LensSpace& space, std::int64_t degree);

SpectrumTable spectrum(const LensSpace& space, std::int64_t i_max);
SpectrumTable spectrum(const GammaTable& table, std::int64_t i_max);

/// Smallest degree i >= 1 with nonzero multiplicity, if one exists up to i_max.
std::optional<SpectrumEntry> first_positive_eigenvalue(const LensSpace& space,
                                                       std::int64_t i_max);

struct Divergence {
  std::int64_t degree;
  Count mult_a;
  Count mult_b;
};

struct IsospectralReport {
  LensSpace space_a;
  LensSpace space_b;
  std::int64_t i_max;
  bool equal;
  /// Set when the two spaces have different m; such spaces are never reported
  /// equal, even if their multiplicities happen to agree up to i_max.
  bool dimension_mismatch;
  std::optional<Divergence> first_divergence;
};

IsospectralReport compare_spectra(const LensSpace& a, const LensSpace& b, std::int64_t i_max);

enum class ParityStatus {
  kOk,            // odd degree, even multiplicity
  kViolation,     // odd degree, odd multiplicity with p even
  kNotApplicable  // even degree, or p odd
};

struct ParityEntry {
  std::int64_t degree;
  Count mult;
  ParityStatus status;
};

struct ParityReport {
  LensSpace space;
  /// True when p is even, i.e. odd degrees must have even multiplicity.
  bool corollary_applies;
  std::vector<ParityEntry> entries;

  bool has_violation() const;
};

ParityReport parity_report(const LensSpace& space, std::int64_t i_max);

const char* to_string(ParityStatus status);

}  // namespace lens
