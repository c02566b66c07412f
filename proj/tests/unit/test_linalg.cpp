#include <cmath>

#include <gtest/gtest.h>

#include "normforge/errors.hpp"
#include "normforge/gen.hpp"
#include "normforge/linalg.hpp"
#include "oracle.hpp"

using namespace normforge;
using linalg::Path;

namespace {

const Complex I1(0.0, 1.0);

ComplexMatrix M2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

double max_entry(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

std::vector<double> vals(const Spectrum& s) { return {s.values().begin(), s.values().end()}; }

}  // namespace

TEST(SvdSpectrum, Examples) {
  for (Path p : {Path::Primary, Path::Alternate}) {
    EXPECT_EQ(linalg::svd_spectrum(linalg::identity(3), p).size(), 3u);
    EXPECT_NEAR(oracle::max_abs_diff(vals(linalg::svd_spectrum(linalg::identity(3), p)), {1, 1, 1}),
                0.0, 1e-14);
    EXPECT_NEAR(oracle::max_abs_diff(vals(linalg::svd_spectrum(M2(2, 0, 0, -3), p)), {3, 2}), 0.0,
                1e-14);
    const double r2 = std::sqrt(2.0);
    EXPECT_NEAR(oracle::max_abs_diff(vals(linalg::svd_spectrum(M2(0, r2, r2, 0), p)), {r2, r2}),
                0.0, 1e-14);
  }
}

TEST(SvdSpectrum, RectangularHasMinDimensionValues) {
  const ComplexMatrix g = gen::random_ginibre(5, 3, 11);
  for (Path p : {Path::Primary, Path::Alternate}) {
    const auto s = linalg::svd_spectrum(g, p);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_LT(oracle::max_abs_diff(vals(s), oracle::singular_values(g)), 1e-10);
  }
}

TEST(SvdSpectrum, RejectsNonFinite) {
  ComplexMatrix m = linalg::identity(2);
  m(0, 1) = std::nan("");
  EXPECT_THROW(linalg::svd_spectrum(m), DomainError);
}

TEST(SvdSpectrum, PathsAgreeWithOracle) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ComplexMatrix g = gen::random_ginibre(4, 4, seed);
    const auto o = oracle::singular_values(g);
    EXPECT_LT(oracle::max_abs_diff(vals(linalg::svd_spectrum(g, Path::Primary)), o), 1e-10);
    EXPECT_LT(oracle::max_abs_diff(vals(linalg::svd_spectrum(g, Path::Alternate)), o), 1e-10);
  }
}

TEST(AbsValue, Examples) {
  for (Path p : {Path::Primary, Path::Alternate}) {
    const ComplexMatrix n = M2(0, 1, 0, 0);
    EXPECT_LT(max_entry(linalg::abs_value(n, p) - M2(0, 0, 0, 1)), 1e-14);

    const ComplexMatrix u = gen::random_unitary(4, 5);
    EXPECT_LT(max_entry(linalg::abs_value(u, p) - linalg::identity(4)), 1e-12);

    const ComplexMatrix h = M2(1, 2.0 * I1, -2.0 * I1, -2);
    // |H| = U|L|U*: squared it is H^2.
    const ComplexMatrix a = linalg::abs_value(h, p);
    EXPECT_LT(max_entry(a * a - h * h), 1e-12);
    EXPECT_TRUE(linalg::classify(a, {MatrixTag::PositiveSemidefinite}));
  }
}

TEST(AbsValue, RectangularIsColsByCols) {
  const ComplexMatrix g = gen::random_ginibre(2, 4, 3);
  for (Path p : {Path::Primary, Path::Alternate}) {
    const ComplexMatrix a = linalg::abs_value(g, p);
    ASSERT_EQ(a.rows(), 4);
    ASSERT_EQ(a.cols(), 4);
    EXPECT_LT(max_entry(a * a - g.adjoint() * g), 1e-10);
  }
}

TEST(ApplyPsdFunction, Examples) {
  for (Path p : {Path::Primary, Path::Alternate}) {
    const ComplexMatrix d = M2(4, 0, 0, 9);
    EXPECT_LT(max_entry(linalg::apply_psd_function(d, [](double x) { return std::sqrt(x); }, p) -
                        M2(2, 0, 0, 3)),
              1e-14);
    const ComplexMatrix z = ComplexMatrix::Zero(1, 1);
    EXPECT_EQ(linalg::apply_psd_function(z, [](double x) { return std::log1p(x); }, p)(0, 0),
              Complex(0.0, 0.0));
    const GenSpec spec{4, 0, MatrixTag::PositiveSemidefinite, 3.0, 17, Variant::Standard};
    const ComplexMatrix a = gen::random_in_class(spec);
    const ComplexMatrix same = linalg::apply_psd_function(a, [](double x) { return x; }, p);
    EXPECT_LT(max_entry(same - a), 1e-11 * (1.0 + linalg::op_norm(a)));
  }
}

TEST(ApplyPsdFunction, MatchesOracle) {
  const GenSpec spec{3, 0, MatrixTag::PositiveSemidefinite, 1.0, 99, Variant::Standard};
  const ComplexMatrix a = gen::random_in_class(spec);
  auto f = [](double x) { return std::log1p(x); };
  const ComplexMatrix o = oracle::psd_function(a, f);
  for (Path p : {Path::Primary, Path::Alternate}) {
    EXPECT_LT(max_entry(linalg::apply_psd_function(a, f, p) - o), 1e-10);
  }
}

TEST(ApplyPsdFunction, RejectsNonPsd) {
  EXPECT_THROW(linalg::apply_psd_function(M2(1, 0, 0, -1), [](double x) { return x; }),
               ClassError);
  EXPECT_THROW(linalg::apply_psd_function(M2(1, 1, 0, 1), [](double x) { return x; }),
               ClassError);
}

TEST(ApplyPsdFunction, TinyEigenvaluesMapThroughFZero) {
  const ComplexMatrix d = M2(1.0, 0.0, 0.0, 1e-14);
  const ComplexMatrix r = linalg::apply_psd_function(d, [](double x) { return x == 0.0 ? 7.0 : x; });
  EXPECT_NEAR(r(1, 1).real(), 7.0, 1e-12);
}

TEST(Polar, Examples) {
  const ComplexMatrix psd = M2(2, 1, 1, 2);
  const normforge::linalg::Polar a = linalg::polar(psd);
  EXPECT_LT(max_entry(a.unitary - linalg::identity(2)), 1e-12);
  EXPECT_LT(max_entry(a.positive - psd), 1e-12);

  const ComplexMatrix u = gen::random_unitary(3, 8);
  const normforge::linalg::Polar b = linalg::polar(u);
  EXPECT_LT(max_entry(b.unitary - u), 1e-12);
  EXPECT_LT(max_entry(b.positive - linalg::identity(3)), 1e-12);

  const normforge::linalg::Polar c = linalg::polar(M2(-2, 0, 0, 3));
  EXPECT_LT(max_entry(c.unitary - M2(-1, 0, 0, 1)), 1e-14);
  EXPECT_LT(max_entry(c.positive - M2(2, 0, 0, 3)), 1e-14);
}

TEST(Polar, RankDeficientStillFactors) {
  const ComplexMatrix m = M2(0, 1, 0, 0);
  const normforge::linalg::Polar p = linalg::polar(m);
  EXPECT_LT(max_entry(p.unitary * p.positive - m), 1e-12);
  EXPECT_LT(max_entry(p.unitary.adjoint() * p.unitary - linalg::identity(2)), 1e-12);
}

TEST(HermitianDilation, Examples) {
  ComplexMatrix one(1, 1);
  one << 1.0;
  EXPECT_EQ(linalg::hermitian_dilation(one), M2(0, 1, 1, 0));
  EXPECT_EQ(linalg::hermitian_dilation(ComplexMatrix::Zero(2, 2)), ComplexMatrix::Zero(4, 4));
  const auto s = linalg::svd_spectrum(linalg::hermitian_dilation(M2(2, 0, 0, 1)));
  EXPECT_LT(oracle::max_abs_diff(vals(s), {2, 2, 1, 1}), 1e-14);
  EXPECT_THROW(linalg::hermitian_dilation(ComplexMatrix::Zero(2, 3)), DimensionError);
}

TEST(BlockCompose, Examples) {
  ComplexMatrix a(1, 1), b(1, 1), c(1, 1), d(1, 1);
  a << 1.0;
  b << 2.0;
  c << 3.0;
  d << 4.0;
  EXPECT_EQ(linalg::block_compose({{a, b}, {c, d}}), M2(1, 2, 3, 4));

  const auto fx = gen::block_power_fixture();
  const ComplexMatrix z = linalg::block_compose({{fx.a, fx.b}, {fx.b, fx.c}});
  EXPECT_EQ(z, fx.z);
  const auto part = BlockPartition::uniform(2, 2);
  EXPECT_EQ(linalg::extract_block(z, part, 0, 1), fx.b);
  EXPECT_EQ(linalg::extract_block(z, part, 1, 1), fx.c);

  const ComplexMatrix id = linalg::identity(2);
  const ComplexMatrix s = linalg::block_compose({{fx.a, id}, {id, fx.c}});
  EXPECT_EQ(s(0, 2), Complex(1.0, 0.0));
  EXPECT_EQ(s(2, 0), Complex(1.0, 0.0));
}

TEST(BlockCompose, RaggedGridThrows) {
  EXPECT_THROW(linalg::block_compose({{ComplexMatrix::Zero(1, 1), ComplexMatrix::Zero(2, 1)}}),
               DimensionError);
  EXPECT_THROW(linalg::block_compose({{ComplexMatrix::Zero(1, 1)},
                                      {ComplexMatrix::Zero(1, 1), ComplexMatrix::Zero(1, 1)}}),
               DimensionError);
}

TEST(BlockCompose, MixedSizesRoundTrip) {
  BlockPartition part;
  part.rows = {2, 3};
  part.cols = {1, 2, 2};
  std::vector<std::vector<ComplexMatrix>> grid(2);
  std::uint64_t seed = 1;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 3; ++j) grid[i].push_back(gen::random_ginibre(part.rows[i], part.cols[j], seed++));
  }
  const ComplexMatrix m = linalg::block_compose(grid);
  EXPECT_EQ(m.rows(), 5);
  EXPECT_EQ(m.cols(), 5);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(linalg::extract_block(m, part, i, j), grid[i][j]);
  }
}

TEST(Classify, Examples) {
  const ComplexMatrix id = linalg::identity(3);
  EXPECT_TRUE(linalg::classify(id, {MatrixTag::Expansive}));
  EXPECT_TRUE(linalg::classify(id, {MatrixTag::Contraction}));
  EXPECT_TRUE(linalg::classify(id, {MatrixTag::Unitary}));
  EXPECT_FALSE(linalg::classify(M2(0, 1, 0, 0), {MatrixTag::Normal}));
  EXPECT_TRUE(linalg::classify(M2(1.0 + I1, 0, 0, 2), {MatrixTag::Normal}));
  EXPECT_FALSE(linalg::classify(M2(1.0 + I1, 0, 0, 2), {MatrixTag::Hermitian}));
  EXPECT_FALSE(linalg::classify(M2(1, 0, 0, -1), {MatrixTag::PositiveSemidefinite}));
  EXPECT_TRUE(linalg::classify(M2(1, 0, 0, -1), {MatrixTag::Hermitian}));
  EXPECT_FALSE(linalg::classify(M2(2, 0, 0, 0.5), {MatrixTag::Expansive}));
  EXPECT_FALSE(linalg::classify(M2(2, 0, 0, 0.5), {MatrixTag::Contraction}));
  EXPECT_TRUE(linalg::classify(M2(0, 0, 0, 0), {MatrixTag::General}));
}

TEST(Classify, ExpansiveNeedsAtLeastAsManyRows) {
  ComplexMatrix wide = ComplexMatrix::Zero(1, 2);
  wide << 2.0, 2.0;
  EXPECT_FALSE(linalg::classify(wide, {MatrixTag::Expansive}));
  ComplexMatrix tall = ComplexMatrix::Zero(2, 1);
  tall << 1.0, 0.0;
  EXPECT_TRUE(linalg::classify(tall, {MatrixTag::Expansive}));
}

TEST(Congruence, Examples) {
  const ComplexMatrix a = M2(1, 2, 3, 4);
  EXPECT_EQ(linalg::congruence(linalg::identity(2), a), a);
  EXPECT_EQ(linalg::congruence(2.0 * linalg::identity(2), linalg::identity(2)),
            4.0 * linalg::identity(2));
  EXPECT_EQ(linalg::congruence(M2(1, 0, 0, 2), M2(1, 1, 1, 1)), M2(1, 2, 2, 4));
  EXPECT_THROW(linalg::congruence(ComplexMatrix::Zero(3, 2), a), DimensionError);
}

TEST(MatrixTag, NamesRoundTrip) {
  for (auto t : {MatrixTag::General, MatrixTag::Hermitian, MatrixTag::PositiveSemidefinite,
                 MatrixTag::Normal, MatrixTag::Expansive, MatrixTag::Contraction,
                 MatrixTag::Unitary}) {
    EXPECT_EQ(parse_matrix_tag(to_string(t)), t);
  }
  EXPECT_THROW(parse_matrix_tag("nope"), LookupError);
}
