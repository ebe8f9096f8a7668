#include "lens/spectrum.hpp"

#include <random>

#include "gtest/gtest.h"
#include "lens/oracle.hpp"
#include "lens/verify.hpp"
#include "test_support.hpp"

namespace lens {
namespace {

Count nl(const LensSpace& space, std::int64_t h) {
  return n_lattice_formula(space, GammaTable(space), h);
}

// Dimension of degree-i harmonic polynomials in 2m real variables.
Count sphere_harmonics(int m, std::int64_t i) {
  return binom(i + 2 * m - 1, 2 * m - 1) - binom(i + 2 * m - 3, 2 * m - 1);
}

TEST(NLatticeFormulaTest, ProjectiveSpaceAtTwo) {
  const auto space = make_lens_space(2, {1, 1});
  ASSERT_EQ(oracle::n_lattice_bruteforce(space, 2), 8);
  EXPECT_EQ(nl(space, 2), 8);
}

TEST(NLatticeFormulaTest, AgreesWithSubsetBySubsetSum) {
  for (const auto& space : canonical_grid(2, 7, {2, 3, 4})) {
    const GammaTable table(space);
    const std::int64_t p = space.order();
    const int m = space.num_weights();
    for (std::int64_t h = 0; h <= 30; ++h) {
      const std::int64_t k = h % p, n = h / p;
      Count literal = 0;
      for (std::int64_t t = 0; t <= m - 1; ++t) {
        for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
          const SubsetMask u(bits);
          literal += binom(n - t + u.size() - 1, m - 1) * table.at(u, k + t * p);
        }
      }
      EXPECT_EQ(n_lattice_formula(space, table, h), literal) << space.to_string() << " h=" << h;
    }
  }
}

TEST(NLatticeFormulaTest, ZeroAndOne) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::int64_t p = 1 + static_cast<std::int64_t>(rng() % 12);
    const int m = 2 + static_cast<int>(rng() % 4);
    const auto space = make_lens_space(p, testing::random_weights(rng, p, m));
    EXPECT_EQ(nl(space, 0), 1) << space.to_string();
    if (p >= 2) {
      EXPECT_EQ(nl(space, 1), 0) << space.to_string();
    } else {
      EXPECT_EQ(nl(space, 1), 2 * m);
    }
  }
}

TEST(NLatticeFormulaTest, BelowPIsTheBoxCount) {
  for (const auto& space : canonical_grid(2, 11, {2, 3})) {
    const GammaTable table(space);
    const SubsetMask all = SubsetMask::full(space.num_weights());
    for (std::int64_t h = 0; h < space.order(); ++h) {
      EXPECT_EQ(n_lattice_formula(space, table, h), table.at(all, h)) << space.to_string();
    }
  }
}

TEST(NLatticeFormulaTest, MatchesOracleOnRandomRawWeights) {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 40; ++trial) {
    const std::int64_t p = 1 + static_cast<std::int64_t>(rng() % 10);
    const int m = 2 + static_cast<int>(rng() % 2);
    const auto space = make_lens_space(p, testing::random_weights(rng, p, m));
    const GammaTable table(space);
    for (std::int64_t h = 0; h <= 24; ++h) {
      ASSERT_EQ(n_lattice_formula(space, table, h), oracle::n_lattice_bruteforce(space, h))
          << space.to_string() << " h=" << h;
    }
  }
}

TEST(NLatticeFormulaTest, InvariantUnderWeightSymmetries) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const std::int64_t p = 2 + static_cast<std::int64_t>(rng() % 9);
    const int m = 2 + static_cast<int>(rng() % 3);
    auto q = testing::random_weights(rng, p, m);
    const auto base = n_lattice_sequence(make_lens_space(p, q), GammaTable(make_lens_space(p, q)), 24);

    auto variant = q;
    std::shuffle(variant.begin(), variant.end(), rng);
    variant[0] = -variant[0];
    variant[variant.size() - 1] -= p;
    const std::int64_t c = testing::random_unit(rng, p);
    for (auto& w : variant) w *= c;
    const auto space = make_lens_space(p, variant);
    EXPECT_EQ(n_lattice_sequence(space, GammaTable(space), 24), base) << space.to_string();
  }
}

TEST(MultiplicityTest, Examples) {
  const auto rp3 = make_lens_space(2, {1, 1});
  const GammaTable table(rp3);
  // N_L(2) + N_L(0) = 8 + 1, and every harmonic quadratic on S^3 descends:
  // binom(5,3) - binom(3,3).
  EXPECT_EQ(multiplicity(rp3, table, 2), 9);
  EXPECT_EQ(binom(5, 3) - binom(3, 3), 9);
  EXPECT_EQ(multiplicity(rp3, table, 0), 1);
  EXPECT_EQ(multiplicity(rp3, table, 1), 0);
  EXPECT_THROW(multiplicity(rp3, table, -1), std::invalid_argument);
}

TEST(MultiplicityTest, SphereMatchesHarmonicPolynomials) {
  for (int m = 2; m <= 4; ++m) {
    const auto sphere = make_lens_space(1, std::vector<std::int64_t>(static_cast<std::size_t>(m), 1));
    const auto table = spectrum(sphere, 20);
    for (const auto& e : table.entries) {
      EXPECT_EQ(e.mult, sphere_harmonics(m, e.degree)) << "m=" << m << " i=" << e.degree;
    }
  }
}

TEST(MultiplicityTest, MatchesOracleDerivedSum) {
  // Same degree sum, fed by brute-force N_L instead.
  for (const auto& space : canonical_grid(1, 6, {2, 3})) {
    const GammaTable table(space);
    const int m = space.num_weights();
    for (std::int64_t i = 0; i <= 12; ++i) {
      Count expected = 0;
      for (std::int64_t s = 0; 2 * s <= i; ++s) {
        expected += binom(s + m - 2, m - 2) * oracle::n_lattice_bruteforce(space, i - 2 * s);
      }
      EXPECT_EQ(multiplicity(space, table, i), expected) << space.to_string() << " i=" << i;
    }
  }
}

TEST(MultiplicityTest, StructuralAnchors) {
  for (const auto& space : canonical_grid(1, 10, {2, 3, 4})) {
    const auto table = spectrum(space, 3);
    EXPECT_EQ(table.entries[0].mult, 1);
    if (space.order() >= 2) EXPECT_EQ(table.entries[1].mult, 0) << space.to_string();
  }
}

TEST(SpectrumTest, Examples) {
  const auto rp3 = spectrum(make_lens_space(2, {1, 1}), 2);
  ASSERT_EQ(rp3.entries.size(), 3u);
  EXPECT_EQ(rp3.entries[0], (SpectrumEntry{0, 0, 1}));
  EXPECT_EQ(rp3.entries[1], (SpectrumEntry{1, 3, 0}));
  EXPECT_EQ(rp3.entries[2], (SpectrumEntry{2, 8, 9}));

  const auto s3 = spectrum(make_lens_space(1, {1, 1}), 1);
  ASSERT_EQ(s3.entries.size(), 2u);
  EXPECT_EQ(s3.entries[1], (SpectrumEntry{1, 3, 4}));

  const auto single = spectrum(make_lens_space(7, {1, 2, 3}), 0);
  ASSERT_EQ(single.entries.size(), 1u);
  EXPECT_EQ(single.entries[0], (SpectrumEntry{0, 0, 1}));
}

TEST(SpectrumTest, EigenvaluesStrictlyIncreaseWithoutGaps) {
  const auto table = spectrum(make_lens_space(5, {1, 2, 3}), 30);
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    const auto& e = table.entries[i];
    EXPECT_EQ(e.degree, static_cast<std::int64_t>(i));
    EXPECT_EQ(e.eigenvalue, static_cast<std::uint64_t>(e.degree * (e.degree + 4)));
    if (i) EXPECT_GT(e.eigenvalue, table.entries[i - 1].eigenvalue);
  }
}

TEST(SpectrumTest, LargeMultiplicitiesStayExact) {
  // S^39 at degree 200 has more than 2^64 harmonics.
  const auto sphere = make_lens_space(1, std::vector<std::int64_t>(20, 1));
  const auto table = spectrum(sphere, 200);
  EXPECT_EQ(table.entries.back().mult, sphere_harmonics(20, 200));
  EXPECT_GT(table.entries.back().mult, Count(std::numeric_limits<std::uint64_t>::max()));
}

TEST(FirstPositiveEigenvalueTest, Examples) {
  const auto rp3 = first_positive_eigenvalue(make_lens_space(2, {1, 1}), 4);
  ASSERT_TRUE(rp3.has_value());
  EXPECT_EQ(*rp3, (SpectrumEntry{2, 8, 9}));

  const auto s3 = first_positive_eigenvalue(make_lens_space(1, {1, 1}), 4);
  ASSERT_TRUE(s3.has_value());
  EXPECT_EQ(*s3, (SpectrumEntry{1, 3, 4}));

  EXPECT_FALSE(first_positive_eigenvalue(make_lens_space(7, {1, 2, 3}), 1).has_value());
}

TEST(CompareSpectraTest, IdenticalSpacesAreEqual) {
  const auto report = compare_spectra(make_lens_space(2, {1, 1}), make_lens_space(2, {1, 1}), 20);
  EXPECT_TRUE(report.equal);
  EXPECT_FALSE(report.first_divergence);
  EXPECT_FALSE(report.dimension_mismatch);
}

TEST(CompareSpectraTest, SphereAgainstProjectiveSpace) {
  const auto report = compare_spectra(make_lens_space(1, {1, 1}), make_lens_space(2, {1, 1}), 2);
  EXPECT_FALSE(report.equal);
  ASSERT_TRUE(report.first_divergence);
  EXPECT_EQ(report.first_divergence->degree, 1);
  EXPECT_EQ(report.first_divergence->mult_a, 4);
  EXPECT_EQ(report.first_divergence->mult_b, 0);
}

TEST(CompareSpectraTest, FiveOneOneAgainstFiveOneTwo) {
  // The oracle separates these already at h = 2: x1 + x2 = 0 mod 5 has
  // (1,-1), (-1,1); x1 + 2 x2 = 0 mod 5 has no point of norm 2.
  const auto a = make_lens_space(5, {1, 1});
  const auto b = make_lens_space(5, {1, 2});
  ASSERT_EQ(oracle::n_lattice_bruteforce(a, 2), 2);
  ASSERT_EQ(oracle::n_lattice_bruteforce(b, 2), 0);
  const auto report = compare_spectra(a, b, 10);
  EXPECT_FALSE(report.equal);
  ASSERT_TRUE(report.first_divergence);
  EXPECT_EQ(report.first_divergence->degree, 2);
  EXPECT_EQ(report.first_divergence->mult_a, 3);
  EXPECT_EQ(report.first_divergence->mult_b, 1);
}

TEST(CompareSpectraTest, OrbitEquivalentWeightsAreIsospectral) {
  // (1,2) and (2,4) = 2 (1,2) differ by a unit scaling mod 5.
  const auto report = compare_spectra(make_lens_space(5, {1, 2}), make_lens_space(5, {2, 4}), 30);
  EXPECT_TRUE(report.equal);
}

TEST(CompareSpectraTest, DimensionMismatchIsNeverEqual) {
  const auto report =
      compare_spectra(make_lens_space(3, {1, 1}), make_lens_space(3, {1, 1, 1}), 0);
  EXPECT_TRUE(report.dimension_mismatch);
  EXPECT_FALSE(report.equal);
  EXPECT_FALSE(report.first_divergence);  // both have mult(0) = 1
}

TEST(ParityReportTest, ProjectiveSpace) {
  const auto report = parity_report(make_lens_space(2, {1, 1}), 9);
  EXPECT_TRUE(report.corollary_applies);
  EXPECT_FALSE(report.has_violation());
  for (const auto& e : report.entries) {
    if (e.degree % 2 == 1) {
      EXPECT_EQ(e.status, ParityStatus::kOk);
      EXPECT_EQ(e.mult, 0);
    } else {
      EXPECT_EQ(e.status, ParityStatus::kNotApplicable);
    }
  }
}

TEST(ParityReportTest, FourOneThreeAgainstBruteForceMultiplicities) {
  const auto space = make_lens_space(4, {1, 3});
  const auto report = parity_report(space, 9);
  EXPECT_FALSE(report.has_violation());
  for (const auto& e : report.entries) {
    Count expected = 0;
    for (std::int64_t s = 0; 2 * s <= e.degree; ++s) {
      expected += oracle::n_lattice_bruteforce(space, e.degree - 2 * s);
    }
    EXPECT_EQ(e.mult, expected);
    if (e.degree % 2 == 1) EXPECT_FALSE(bit_test(e.mult, 0));
  }
}

TEST(ParityReportTest, OddOrderIsInformational) {
  const auto report = parity_report(make_lens_space(3, {1, 1}), 5);
  EXPECT_FALSE(report.corollary_applies);
  for (const auto& e : report.entries) EXPECT_EQ(e.status, ParityStatus::kNotApplicable);
}

TEST(ParityPropertyTest, EvenOrderOddDegreeEvenMultiplicity) {
  std::mt19937_64 rng(31337);
  for (std::int64_t p : {2, 4, 6}) {
    for (int trial = 0; trial < 20; ++trial) {
      const int m = 2 + static_cast<int>(rng() % 2);
      const auto space = make_lens_space(p, testing::random_weights(rng, p, m));
      for (const auto& e : parity_report(space, 15).entries) {
        if (e.degree % 2 == 1) {
          EXPECT_FALSE(bit_test(e.mult, 0)) << space.to_string() << " i=" << e.degree;
        }
      }
    }
  }
}

}  // namespace
}  // namespace lens
