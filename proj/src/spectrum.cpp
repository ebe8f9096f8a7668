#include "lens/spectrum.hpp"

#include <stdexcept>

namespace lens {

namespace {

void require_nonnegative(std::int64_t value, const char* what) {
  if (value < 0) throw std::invalid_argument(std::string(what) + " must be non-negative");
}

// Folds an N_L prefix into the multiplicity at degree i.
Count fold_multiplicity(const std::vector<Count>& n_lattice, int m, std::int64_t i) {
  Count total = 0;
  for (std::int64_t s = 0; 2 * s <= i; ++s) {
    const Count& n = n_lattice[static_cast<std::size_t>(i - 2 * s)];
    if (n.is_zero()) continue;
    total += binom(s + m - 2, m - 2) * n;
  }
  return total;
}

}  // namespace

Count n_lattice_formula(const LensSpace& space, const GammaTable& table, std::int64_t h) {
  require_nonnegative(h, "norm h");
  const std::int64_t p = space.order();
  const int m = space.num_weights();
  const auto [k, n] = decompose(h, p);

  // The summand depends on U only through |U| and gamma(U, .), so subsets of
  // equal size are summed once in the table.
  Count total = 0;
  for (std::int64_t t = 0; t <= m - 1; ++t) {
    const std::int64_t norm = k + t * p;
    if (norm > table.max_norm()) break;
    for (int size = 0; size <= m; ++size) {
      const Count& g = table.size_total(size, norm);
      if (g.is_zero()) continue;
      total += binom(n - t + size - 1, m - 1) * g;
    }
  }
  return total;
}

std::vector<Count> n_lattice_sequence(const LensSpace& space, const GammaTable& table,
                                      std::int64_t h_max) {
  require_nonnegative(h_max, "h_max");
  std::vector<Count> out;
  out.reserve(static_cast<std::size_t>(h_max + 1));
  for (std::int64_t h = 0; h <= h_max; ++h) out.push_back(n_lattice_formula(space, table, h));
  return out;
}

Count multiplicity(const LensSpace& space, const GammaTable& table, std::int64_t i) {
  require_nonnegative(i, "degree i");
  Count total = 0;
  for (std::int64_t s = 0; 2 * s <= i; ++s) {
    Count n = n_lattice_formula(space, table, i - 2 * s);
    if (n.is_zero()) continue;
    total += binom(s + space.num_weights() - 2, space.num_weights() - 2) * n;
  }
  return total;
}

std::uint64_t eigenvalue(const LensSpace& space, std::int64_t degree) {
  const auto i = static_cast<std::uint64_t>(degree);
  return i * (i + static_cast<std::uint64_t>(space.dimension()) - 1);
}

SpectrumTable spectrum(const GammaTable& table, std::int64_t i_max) {
  require_nonnegative(i_max, "i_max");
  const LensSpace& space = table.space();
  const auto n_lattice = n_lattice_sequence(space, table, i_max);
  SpectrumTable out{space, {}};
  out.entries.reserve(static_cast<std::size_t>(i_max + 1));
  for (std::int64_t i = 0; i <= i_max; ++i) {
    out.entries.push_back(
        {i, eigenvalue(space, i), fold_multiplicity(n_lattice, space.num_weights(), i)});
  }
  return out;
}

SpectrumTable spectrum(const LensSpace& space, std::int64_t i_max) {
  return spectrum(GammaTable(space), i_max);
}

std::optional<SpectrumEntry> first_positive_eigenvalue(const LensSpace& space,
                                                       std::int64_t i_max) {
  const auto table = spectrum(space, i_max);
  for (const auto& entry : table.entries) {
    if (entry.degree >= 1 && !entry.mult.is_zero()) return entry;
  }
  return std::nullopt;
}

IsospectralReport compare_spectra(const LensSpace& a, const LensSpace& b, std::int64_t i_max) {
  const auto spec_a = spectrum(a, i_max);
  const auto spec_b = spectrum(b, i_max);
  IsospectralReport report{a, b, i_max, false, a.num_weights() != b.num_weights(), std::nullopt};
  for (std::int64_t i = 0; i <= i_max; ++i) {
    const auto& ma = spec_a.entries[static_cast<std::size_t>(i)].mult;
    const auto& mb = spec_b.entries[static_cast<std::size_t>(i)].mult;
    if (ma != mb) {
      report.first_divergence = Divergence{i, ma, mb};
      break;
    }
  }
  report.equal = !report.dimension_mismatch && !report.first_divergence;
  return report;
}

bool ParityReport::has_violation() const {
  for (const auto& e : entries) {
    if (e.status == ParityStatus::kViolation) return true;
  }
  return false;
}

ParityReport parity_report(const LensSpace& space, std::int64_t i_max) {
  const auto table = spectrum(space, i_max);
  ParityReport report{space, space.order() % 2 == 0, {}};
  for (const auto& entry : table.entries) {
    ParityStatus status = ParityStatus::kNotApplicable;
    if (report.corollary_applies && entry.degree % 2 == 1) {
      status = bit_test(entry.mult, 0) ? ParityStatus::kViolation : ParityStatus::kOk;
    }
    report.entries.push_back({entry.degree, entry.mult, status});
  }
  return report;
}

const char* to_string(ParityStatus status) {
  switch (status) {
    case ParityStatus::kOk:
      return "ok";
    case ParityStatus::kViolation:
      return "violation";
    case ParityStatus::kNotApplicable:
      return "n/a";
  }
  return "?";
}

}  // namespace lens
