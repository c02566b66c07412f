// Randomized invariants. Each test sweeps seeded instances; failures print
// the seed so a case can be replayed.

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "normforge/catalog.hpp"
#include "normforge/gen.hpp"
#include "oracle.hpp"

using namespace normforge;

namespace {

constexpr int kCases = 200;

Eigen::Index dim_for(std::uint64_t s) { return 1 + static_cast<Eigen::Index>(s % 6); }

double rel_err(const Spectrum& a, const Spectrum& b) {
  const double scale = 1.0 + std::max(a.largest(), b.largest());
  double e = 0.0;
  for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k) e = std::max(e, std::abs(a[k] - b[k]));
  return e / scale;
}

}  // namespace

TEST(Property, UnitaryInvariance) {
  for (std::uint64_t s = 0; s < kCases; ++s) {
    const Eigen::Index n = dim_for(s);
    const ComplexMatrix m = gen::random_ginibre(n, n, derive_key(s, 1));
    const ComplexMatrix u = gen::random_unitary(n, derive_key(s, 2));
    const ComplexMatrix v = gen::random_unitary(n, derive_key(s, 3));
    EXPECT_LE(rel_err(linalg::svd_spectrum(m), linalg::svd_spectrum(u * m * v)), 1e-12) << s;
  }
}

TEST(Property, AbsSquaredIsGram) {
  for (std::uint64_t s = 0; s < kCases; ++s) {
    const Eigen::Index n = dim_for(s);
    const ComplexMatrix m = gen::random_ginibre(n + 1, n, s) * std::pow(10.0, double(s % 5) - 2.0);
    for (auto p : {linalg::Path::Primary, linalg::Path::Alternate}) {
      const ComplexMatrix a = linalg::abs_value(m, p);
      const double scale = 1.0 + (m.adjoint() * m).cwiseAbs().maxCoeff();
      EXPECT_LE((a * a - m.adjoint() * m).cwiseAbs().maxCoeff() / scale, 1e-11) << s;
      EXPECT_TRUE(linalg::classify(a, {MatrixTag::PositiveSemidefinite})) << s;
    }
  }
}

TEST(Property, PolarReconstructs) {
  for (std::uint64_t s = 0; s < kCases; ++s) {
    const Eigen::Index n = dim_for(s);
    const ComplexMatrix m = gen::random_ginibre(n, n, s);
    const auto pol = linalg::polar(m);
    EXPECT_LE((pol.unitary * pol.positive - m).cwiseAbs().maxCoeff(), 1e-12 * (1.0 + oracle::op_norm(m))) << s;
    EXPECT_TRUE(linalg::classify(pol.unitary, {MatrixTag::Unitary})) << s;
    EXPECT_TRUE(linalg::classify(pol.positive, {MatrixTag::PositiveSemidefinite})) << s;
  }
}

TEST(Property, DilationDuplicatesSingularValues) {
  for (std::uint64_t s = 0; s < kCases; ++s) {
    const Eigen::Index n = dim_for(s);
    const ComplexMatrix m = gen::random_ginibre(n, n, s);
    const auto d = catalog::check_dilation_identity(m);
    EXPECT_TRUE(d.holds) << s << " err " << d.max_error;
    // oracle side: eigenvalues of the dilation are +-sigma_i
    const auto ev = oracle::hermitian_eigenvalues(linalg::hermitian_dilation(m));
    const auto sv = oracle::singular_values(m);
    for (std::size_t k = 0; k < sv.size(); ++k) {
      EXPECT_NEAR(ev[k], sv[k], 1e-10 * (1.0 + sv[0]));
      EXPECT_NEAR(ev[ev.size() - 1 - k], -sv[k], 1e-10 * (1.0 + sv[0]));
    }
  }
}

TEST(Property, FanDominanceImpliesSchattenOrder) {
  // whenever a <_w b, every Schatten p-norm of a is at most that of b
  int dominated = 0;
  for (std::uint64_t s = 0; s < 2000; ++s) {
    Stream st(s);
    std::vector<double> a(4), b(4);
    for (auto& x : a) x = st.uniform(0.0, 3.0);
    for (auto& x : b) x = st.uniform(0.0, 3.0);
    const Spectrum sa(a), sb(b);
    if (!weak_majorize(sa, sb)) continue;
    ++dominated;
    for (double p : {1.0, 1.5, 2.0, 3.0, 7.0, 50.0, std::numeric_limits<double>::infinity()}) {
      EXPECT_LE(schatten(sa, p), schatten(sb, p) * (1.0 + 1e-12)) << s << " p " << p;
    }
  }
  EXPECT_GT(dominated, 50);
}

TEST(Property, EConvexLogMajorizationGivesWeakMajorization) {
  // a <_wlog b and f concave e-convex imply f(a) <_w f(b)
  const std::vector<ScalarFunction> fs{ScalarFunction::power(0.5), ScalarFunction::log1p(),
                                       ScalarFunction::power(0.25), ScalarFunction::identity()};
  int cases = 0;
  for (std::uint64_t s = 0; s < 3000; ++s) {
    Stream st(derive_key(s, 9));
    std::vector<double> a(3), b(3);
    for (auto& x : a) x = st.log_uniform(1e-2, 1e2);
    for (auto& x : b) x = st.log_uniform(1e-2, 1e2);
    if (!weak_log_majorize(Spectrum(a), Spectrum(b))) continue;
    ++cases;
    for (const auto& f : fs) {
      std::vector<double> fa = a, fb = b;
      for (auto& x : fa) x = f(x);
      for (auto& x : fb) x = f(x);
      EXPECT_TRUE(weak_majorize(Spectrum(fa), Spectrum(fb))) << s << ' ' << f.id();
    }
  }
  EXPECT_GT(cases, 50);
}

TEST(Property, MarginSignMatchesWeakMajorization) {
  for (std::uint64_t s = 0; s < 2000; ++s) {
    Stream st(derive_key(s, 4));
    std::vector<double> a(1 + st.index(4)), b(1 + st.index(4));
    for (auto& x : a) x = st.uniform(0.0, 2.0);
    for (auto& x : b) x = st.uniform(0.0, 2.0);
    const Spectrum sa(a), sb(b);
    EXPECT_EQ(violation_margin(sa, sb) <= 0.0, weak_majorize(sa, sb, {0.0, 0.0})) << s;
  }
}

TEST(Property, ZeroPaddingIsInvisible) {
  for (std::uint64_t s = 0; s < 500; ++s) {
    Stream st(derive_key(s, 5));
    std::vector<double> a(3), b(2);
    for (auto& x : a) x = st.uniform(0.0, 2.0);
    for (auto& x : b) x = st.uniform(0.0, 2.0);
    std::vector<double> ap = a, bp = b;
    ap.resize(7, 0.0);
    bp.resize(5, 0.0);
    EXPECT_EQ(weak_majorize(Spectrum(a), Spectrum(b)), weak_majorize(Spectrum(ap), Spectrum(bp)));
    EXPECT_EQ(majorize(Spectrum(a), Spectrum(b)), majorize(Spectrum(ap), Spectrum(bp)));
    EXPECT_EQ(weak_log_majorize(Spectrum(a), Spectrum(b)),
              weak_log_majorize(Spectrum(ap), Spectrum(bp)));
    EXPECT_EQ(violation_margin(Spectrum(a), Spectrum(b)),
              violation_margin(Spectrum(ap), Spectrum(bp)));
  }
}

TEST(Property, PathsAgree) {
  for (std::uint64_t s = 0; s < kCases; ++s) {
    const Eigen::Index n = dim_for(s);
    const ComplexMatrix m = gen::random_ginibre(n, n + s % 3, s);
    EXPECT_LE(rel_err(linalg::svd_spectrum(m, linalg::Path::Primary),
                      linalg::svd_spectrum(m, linalg::Path::Alternate)),
              1e-12)
        << s;
  }
}

TEST(Property, SchattenTwoIsFrobenius) {
  for (std::uint64_t s = 0; s < kCases; ++s) {
    const ComplexMatrix m = gen::random_ginibre(dim_for(s), dim_for(s + 3), s);
    EXPECT_NEAR(schatten(linalg::svd_spectrum(m), 2.0), m.norm(), 1e-12 * (1.0 + m.norm())) << s;
  }
}

TEST(Property, ProvenStatementsHoldOnSamples) {
  for (const auto& st : catalog::registry()) {
    if (st.status != Status::Proven) continue;
    for (std::uint64_t t = 0; t < 30; ++t) {
      const Instance inst = catalog::sample_instance(st.id, 1 + static_cast<Eigen::Index>(t % 5), 99, t);
      const auto r = catalog::check(st, inst);
      EXPECT_NE(r.verdict, Verdict::Violated) << st.id << " trial " << t << " margin " << r.margin;
    }
  }
}
