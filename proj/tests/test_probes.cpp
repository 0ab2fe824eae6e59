#include <gtest/gtest.h>

#include <cmath>

#include "gaussprec/probes.hpp"

using namespace gaussprec;

TEST(Probes, SqueezedVacuumMatchesSqueezerOnVacuum) {
  for (double r : {0.0, 0.4, 1.1}) {
    for (double phi : {0.0, 0.9}) {
      const auto direct = build_probe(Tmsv{r, phi});
      const auto via = apply_symplectic(vacuum(2), two_mode_squeezer(r, phi));
      EXPECT_LT((direct.covariance() - via.covariance()).cwiseAbs().maxCoeff(), 1e-13);
    }
  }
}

TEST(Probes, SqueezedThermalScalesSqueezedVacuum) {
  const auto a = build_probe(Tmst{0.4, 0.3, 0.5});
  const auto b = build_probe(Tmsv{0.4, 0.3});
  EXPECT_TRUE(a.covariance().isApprox(2.0 * b.covariance(), 1e-15));
  EXPECT_EQ(build_probe(Tmst{0.4, 0.3, 0.0}).covariance(), b.covariance());
}

TEST(Probes, DisplacedMeans) {
  const auto st = build_probe(Tmdv{{0.5, -0.25}, {0.0, 1.0}});
  EXPECT_DOUBLE_EQ(st.mean()(0), 1.0);
  EXPECT_DOUBLE_EQ(st.mean()(1), -0.5);
  EXPECT_DOUBLE_EQ(st.mean()(3), 2.0);
  EXPECT_TRUE(st.covariance().isIdentity());
  const auto th = build_probe(Tmdt{{0.5, 0.0}, 0.0, 1.5});
  EXPECT_DOUBLE_EQ(th.covariance()(2, 2), 4.0);
  EXPECT_NEAR(mean_photon_number(th, 0), 1.5 + 0.25, 1e-15);
}

TEST(Probes, AllFamiliesPhysical) {
  const ProbeSpec specs[] = {Tmsv{0.9, 1.0}, Tmdv{{1.0, 2.0}, 0.0}, Tmst{0.9, 1.0, 0.3},
                             Tmdt{0.0, {3.0, 2.0}, 2.0}};
  for (const auto& s : specs) EXPECT_TRUE(check_uncertainty(build_probe(s)));
}

TEST(Probes, Validation) {
  EXPECT_THROW(build_probe(Tmsv{-0.1, 0.0}), std::invalid_argument);
  EXPECT_THROW(build_probe(Tmst{0.1, 0.0, -1.0}), std::invalid_argument);
  EXPECT_THROW(build_probe(Tmdv{{std::nan(""), 0.0}, 0.0}), std::invalid_argument);
}

TEST(Probes, FamilyNames) {
  EXPECT_EQ(family_of(Tmdt{}), ProbeFamily::tmdt);
  EXPECT_EQ(to_string(ProbeFamily::tmst), "tmst");
  EXPECT_EQ(parse_family("TMSV"), ProbeFamily::tmsv);
  EXPECT_THROW(parse_family("coherent"), std::invalid_argument);
}

TEST(Probes, JsonRoundTrip) {
  const ProbeSpec specs[] = {Tmsv{0.4, 0.1}, Tmdv{{0.5, -0.5}, {1.0, 0.0}}, Tmst{0.4, 0.0, 0.5},
                             Tmdt{{3.0, 2.0}, 0.0, 0.25}};
  for (const auto& s : specs) {
    EXPECT_EQ(probe_from_json(to_json(s)), s);
  }
  EXPECT_EQ(to_json(Tmsv{0.4, 0.0}).dump(), R"({"family":"tmsv","phi":0.0,"r":0.4})");
}

TEST(Probes, JsonDefaultsAndErrors) {
  using nlohmann::json;
  EXPECT_EQ(probe_from_json(json{{"family", "tmsv"}, {"r", 0.2}}), ProbeSpec(Tmsv{0.2, 0.0}));
  EXPECT_EQ(probe_from_json(json{{"family", "tmdv"}, {"alpha1", 0.5}}),
            ProbeSpec(Tmdv{{0.5, 0.0}, 0.0}));
  EXPECT_THROW(probe_from_json(json{{"family", "tmst"}, {"r", 0.2}}), std::invalid_argument);
  EXPECT_THROW(probe_from_json(json{{"family", "tmsv"}, {"r", "big"}}), std::invalid_argument);
  EXPECT_THROW(probe_from_json(json{{"family", "tmsv"}, {"r", -1.0}}), std::invalid_argument);
  EXPECT_THROW(probe_from_json(json{{"r", 0.2}}), std::invalid_argument);
  EXPECT_THROW(probe_from_json(json{{"family", "tmdv"}, {"alpha1", json::array({1, 2, 3})}}),
               std::invalid_argument);
}
