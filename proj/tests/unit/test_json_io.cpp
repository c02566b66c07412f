#include <cmath>
#include <cstring>
#include <limits>

#include <gtest/gtest.h>

#include "normforge/errors.hpp"
#include "normforge/json_io.hpp"

using namespace normforge;
using json_io::Json;

TEST(JsonIo, RealsRoundTripExactly) {
  for (double x : {0.0, -0.0, 1.0 / 3.0, 1e-300, 6.02214076e23, std::nextafter(1.0, 2.0)}) {
    const Json j = json_io::real(x);
    const double back = json_io::real_from(Json::parse(j.dump()));
    EXPECT_EQ(std::memcmp(&back, &x, sizeof x), 0) << x;
  }
  EXPECT_EQ(json_io::real(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(json_io::real(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_TRUE(std::isnan(json_io::real_from(json_io::real(std::nan("")))));
}

TEST(JsonIo, MatrixBitExact) {
  const ComplexMatrix m = gen::random_ginibre(3, 5, 42) * 1e-7;
  const ComplexMatrix back = json_io::matrix_from_json(Json::parse(json_io::to_json(m).dump()));
  EXPECT_EQ(back, m);
}

TEST(JsonIo, MalformedMatrixIsRejected) {
  Json j = json_io::to_json(ComplexMatrix::Identity(2, 2));
  j["re"].erase(0);
  EXPECT_THROW(json_io::matrix_from_json(j), Error);
}

TEST(JsonIo, SpectrumAndSpec) {
  const Spectrum s({3.5, 1.0 / 7.0, 0.0});
  EXPECT_EQ(json_io::spectrum_from_json(json_io::to_json(s)), s);
  const GenSpec g{4, 2, MatrixTag::General, 0.125, 987654321987654321ULL, Variant::RankDeficient};
  EXPECT_EQ(json_io::genspec_from_json(Json::parse(json_io::to_json(g).dump())), g);
}

TEST(JsonIo, InstancesRoundTrip) {
  for (const auto& st : catalog::registry()) {
    const Instance a = catalog::sample_instance(st.id, 3, 21, 4);
    const Instance b = json_io::instance_from_json(Json::parse(json_io::to_json(a).dump()));
    ASSERT_EQ(a.matrices.size(), b.matrices.size()) << st.id;
    for (std::size_t i = 0; i < a.matrices.size(); ++i) EXPECT_EQ(a.matrices[i], b.matrices[i]) << st.id;
    EXPECT_EQ(a.function, b.function);
    EXPECT_EQ(a.exponents, b.exponents);
    EXPECT_EQ(a.partition, b.partition);
    EXPECT_EQ(a.signature, b.signature);
    EXPECT_EQ(a.classes, b.classes);
    EXPECT_EQ(json_io::to_json(a), json_io::to_json(b));
  }
}

TEST(JsonIo, LineageRegeneratesMatrices) {
  const Instance a = catalog::sample_instance("conj_4", 3, 8, 2);
  const Json lineage = json_io::to_json(a, false);
  EXPECT_FALSE(lineage.contains("matrices"));
  const Instance b = json_io::instance_from_json(lineage);
  for (std::size_t i = 0; i < a.matrices.size(); ++i) EXPECT_EQ(a.matrices[i], b.matrices[i]);
}

TEST(JsonIo, CheckResultEmbedsMatricesUnlessHolds) {
  const CheckResult v = catalog::demo_block_power_counterexample();
  const Json jv = json_io::to_json(v);
  EXPECT_EQ(jv["verdict"], "violated");
  EXPECT_TRUE(jv["instance"].contains("matrices"));
  const Instance back = json_io::instance_from_json(jv["instance"]);
  const CheckResult again = catalog::check("ex_2_8", back);
  EXPECT_EQ(again.lhs, v.lhs);
  EXPECT_EQ(again.rhs, v.rhs);

  const CheckResult h = catalog::check("thm_1_1b", catalog::sample_instance("thm_1_1b", 2, 0, 0));
  ASSERT_EQ(h.verdict, Verdict::Holds);
  EXPECT_FALSE(json_io::to_json(h)["instance"].contains("matrices"));
}

TEST(JsonIo, HuntReportWallClockOptional) {
  HuntConfig cfg;
  cfg.statement = "q3_a";
  cfg.restarts = 2;
  cfg.steps = 5;
  const HuntReport r = hunt(cfg);
  EXPECT_TRUE(json_io::to_json(r).contains("wall_clock_seconds"));
  EXPECT_FALSE(json_io::to_json(r, false).contains("wall_clock_seconds"));
  EXPECT_EQ(json_io::to_json(r, false).dump(), json_io::to_json(hunt(cfg), false).dump());
}
