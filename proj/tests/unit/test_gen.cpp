#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "normforge/catalog.hpp"
#include "normforge/errors.hpp"
#include "normforge/gen.hpp"
#include "normforge/rng.hpp"
#include "oracle.hpp"

using namespace normforge;

TEST(Rng, StreamsAreReproducibleAndKeyed) {
  Stream a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
  }
  EXPECT_NE(derive_key(1, 2, 3), derive_key(1, 3, 2));
  EXPECT_NE(derive_key(1, 0), derive_key(2, 0));
  EXPECT_NE(hash_name("conj_1"), hash_name("conj_2"));
}

TEST(Rng, UniformAndIndexRanges) {
  Stream s(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double l = s.log_uniform(1e-3, 1e3);
    ASSERT_GE(l, 1e-3);
    ASSERT_LE(l, 1e3);
    ASSERT_LT(s.index(5), 5u);
  }
}

TEST(Rng, GaussianMoments) {
  Stream s(123);
  double sum = 0.0, sq = 0.0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    const double g = s.gaussian();
    sum += g;
    sq += g * g;
  }
  EXPECT_LT(std::abs(sum / n), 0.03);
  EXPECT_NEAR(sq / n, 1.0, 0.03);
}

TEST(Ginibre, SameSeedSameMatrix) {
  EXPECT_EQ(gen::random_ginibre(3, 4, 5), gen::random_ginibre(3, 4, 5));
  EXPECT_NE(gen::random_ginibre(3, 4, 5), gen::random_ginibre(3, 4, 6));
  const ComplexMatrix one = gen::random_ginibre(1, 1, 9);
  EXPECT_EQ(one.size(), 1);
}

TEST(Ginibre, EntryMeanIsSmall) {
  Complex mean(0.0, 0.0);
  double power = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const Complex z = gen::random_ginibre(1, 1, derive_key(2024, i))(0, 0);
    mean += z;
    power += std::norm(z);
  }
  EXPECT_LT(std::abs(mean / double(n)), 0.05);
  EXPECT_NEAR(power / n, 1.0, 0.05);
}

TEST(Unitary, IsUnitary) {
  for (Eigen::Index n : {1, 2, 5, 9}) {
    const ComplexMatrix u = gen::random_unitary(n, 31 + n);
    const double err = (u.adjoint() * u - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    EXPECT_LE(err, 1e-12 * n);
    for (double s : oracle::singular_values(u)) EXPECT_NEAR(s, 1.0, 1e-12);
  }
  EXPECT_NEAR(std::abs(gen::random_unitary(1, 4)(0, 0)), 1.0, 1e-15);
}

TEST(RandomInClass, ConstructionGuarantees) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(seed % 6);
    const double scale = std::pow(10.0, static_cast<double>(seed % 7) - 3.0);

    const auto z = gen::random_in_class({n, 0, MatrixTag::Expansive, scale, seed, Variant::Standard});
    EXPECT_GE(oracle::singular_values(z).back(), 1.0 - 1e-12);

    const auto m = gen::random_in_class({n, 0, MatrixTag::Normal, scale, seed, Variant::Standard});
    const double nm = oracle::op_norm(m);
    EXPECT_LE((m.adjoint() * m - m * m.adjoint()).cwiseAbs().maxCoeff(), 1e-10 * nm * nm + 1e-300);

    const auto p =
        gen::random_in_class({n, 0, MatrixTag::PositiveSemidefinite, scale, seed, Variant::Standard});
    EXPECT_GE(oracle::hermitian_eigenvalues(p).back(), -1e-12 * (1.0 + oracle::op_norm(p)));
  }
}

TEST(RandomInClass, BitExactReplay) {
  for (auto cls : {MatrixTag::General, MatrixTag::Hermitian, MatrixTag::PositiveSemidefinite,
                   MatrixTag::Normal, MatrixTag::Expansive, MatrixTag::Contraction,
                   MatrixTag::Unitary}) {
    const GenSpec spec{4, 0, cls, 2.5, 77, Variant::Standard};
    EXPECT_EQ(gen::random_in_class(spec), gen::random_in_class(spec));
  }
}

TEST(RandomInClass, ClassSoundness) {
  // 10^4 samples per class across variants, sizes and scales.
  const std::vector<MatrixTag> classes{MatrixTag::General, MatrixTag::Hermitian,
                                       MatrixTag::PositiveSemidefinite, MatrixTag::Normal,
                                       MatrixTag::Expansive, MatrixTag::Contraction,
                                       MatrixTag::Unitary};
  const std::vector<Variant> variants{Variant::Standard, Variant::RankDeficient, Variant::Repeated,
                                      Variant::Identity, Variant::Zero};
  for (auto cls : classes) {
    int failures = 0;
    Stream s(derive_key(5, static_cast<std::uint64_t>(cls)));
    for (int i = 0; i < 10000; ++i) {
      GenSpec spec;
      spec.dim = 1 + static_cast<Eigen::Index>(s.index(6));
      spec.cls = cls;
      spec.scale = s.log_uniform(1e-3, 1e3);
      spec.seed = s.next_u64();
      spec.variant = variants[s.index(variants.size())];
      if ((cls == MatrixTag::Expansive || cls == MatrixTag::Unitary) && spec.variant == Variant::Zero) {
        spec.variant = Variant::Standard;
      }
      if (!linalg::classify(gen::random_in_class(spec), {cls, 1e-8})) ++failures;
    }
    EXPECT_EQ(failures, 0) << to_string(cls);
  }
}

TEST(RandomInClass, RectangularOnlyForGeneral) {
  const ComplexMatrix g = gen::random_in_class({2, 5, MatrixTag::General, 1.0, 1, Variant::Standard});
  EXPECT_EQ(g.rows(), 2);
  EXPECT_EQ(g.cols(), 5);
  EXPECT_THROW(gen::random_in_class({2, 5, MatrixTag::Hermitian, 1.0, 1, Variant::Standard}),
               DimensionError);
}

TEST(BlockPowerFixture, Values) {
  const auto fx = gen::block_power_fixture();
  const double r2 = std::sqrt(2.0);
  EXPECT_EQ(fx.a(0, 0), Complex(2.0, 0.0));
  EXPECT_EQ(fx.a(1, 1), Complex(1.0, 0.0));
  EXPECT_EQ(fx.c(0, 0), Complex(1.0, 0.0));
  EXPECT_EQ(fx.c(1, 1), Complex(2.0, 0.0));
  EXPECT_EQ(fx.b(0, 1), Complex(r2, 0.0));
  EXPECT_EQ(fx.b(1, 0), Complex(r2, 0.0));

  const ComplexMatrix sum = fx.a * fx.a + 2.0 * fx.b * fx.b + fx.c * fx.c;
  EXPECT_NEAR(oracle::op_norm(sum), 9.0, 1e-12);
  // (2 + sqrt 2)^2 from the 2x2 invariant blocks [[2, r2], [r2, 2]].
  EXPECT_NEAR(oracle::op_norm(fx.z * fx.z), 6.0 + 4.0 * r2, 1e-9);

  EXPECT_TRUE(linalg::classify(fx.z, {MatrixTag::Hermitian}));
  // eigenvalues 2 +- sqrt 2 and 1 +- sqrt 2: Hermitian but not positive
  const auto ev = oracle::hermitian_eigenvalues(fx.z);
  EXPECT_NEAR(ev.front(), 2.0 + r2, 1e-12);
  EXPECT_NEAR(ev.back(), 1.0 - r2, 1e-12);
  EXPECT_FALSE(linalg::classify(fx.z, {MatrixTag::PositiveSemidefinite}));
}

TEST(SampleInstance, Signatures) {
  const Instance a = catalog::sample_instance("thm_1_1b", 4, 1, 0);
  ASSERT_EQ(a.matrices.size(), 2u);
  for (const auto& m : a.matrices) {
    EXPECT_EQ(m.rows(), 4);
    EXPECT_TRUE(linalg::classify(m, {MatrixTag::PositiveSemidefinite}));
  }
  ASSERT_TRUE(a.function.has_value());
  EXPECT_TRUE(a.function->flags().concave && a.function->flags().nonneg);

  const Instance b = catalog::sample_instance("cor_2_4", 3, 1, 0);
  ASSERT_EQ(b.matrices.size(), 2u);
  EXPECT_EQ(b.matrices[0].rows(), 3);
  EXPECT_EQ(b.matrices[1].cols(), 3);

  for (std::uint64_t t = 0; t < 40; ++t) {
    const Instance c = catalog::sample_instance("thm_2_7", 3, 9, t);
    EXPECT_EQ(c.matrices.size(), c.partition.rows.size() * c.partition.cols.size());
    for (auto r : c.partition.rows) EXPECT_TRUE(r >= 1 && r <= 3);
  }

  EXPECT_THROW(catalog::sample_instance("thm_9_9", 3, 1, 0), LookupError);
}

TEST(SampleInstance, DeterministicAndRegenerable) {
  for (const auto& st : catalog::registry()) {
    const Instance a = catalog::sample_instance(st.id, 3, 11, 5);
    const Instance b = catalog::sample_instance(st.id, 3, 11, 5);
    ASSERT_EQ(a.matrices.size(), b.matrices.size());
    for (std::size_t i = 0; i < a.matrices.size(); ++i) EXPECT_EQ(a.matrices[i], b.matrices[i]);
    EXPECT_EQ(a.exponents, b.exponents);
    if (!a.specs.empty()) {
      const auto again = regenerate(a);
      for (std::size_t i = 0; i < again.size(); ++i) EXPECT_EQ(again[i], a.matrices[i]) << st.id;
    }
  }
}

TEST(SampleInstance, ExpansiveIdentityAppears) {
  int identities = 0;
  for (std::uint64_t t = 0; t < 3000; ++t) {
    const Instance inst = catalog::sample_instance("thm_1_1a", 2, 3, t);
    if (inst.specs.at(1).variant == Variant::Identity) ++identities;
  }
  EXPECT_GT(identities, 5);
  EXPECT_LT(identities, 120);
}

TEST(SampleInstance, ScalesAreLogUniform) {
  int small = 0, large = 0;
  for (std::uint64_t t = 0; t < 2000; ++t) {
    const Instance inst = catalog::sample_instance("lemma_2", 2, 3, t);
    for (const auto& s : inst.specs) {
      ASSERT_GE(s.scale, 1e-3);
      ASSERT_LE(s.scale, 1e3);
      if (s.scale < 1e-2) ++small;
      if (s.scale > 1e2) ++large;
    }
  }
  EXPECT_GT(small, 400);
  EXPECT_GT(large, 400);
}

TEST(Variant, NamesRoundTrip) {
  for (auto v : {Variant::Standard, Variant::RankDeficient, Variant::Repeated, Variant::Identity,
                 Variant::Zero}) {
    EXPECT_EQ(parse_variant(to_string(v)), v);
  }
}
