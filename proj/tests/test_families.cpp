#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qcorr/error.hpp"
#include "qcorr/families.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/random.hpp"
#include "qcorr/state_ops.hpp"

using namespace qcorr;

TEST(Families, BellCorners) {
  const auto rho = instantiate(family::Bell{family::BellKind::PhiPlus});
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 0.5;
  EXPECT_LT(oracle::max_abs_diff(rho.matrix(), expected), 1e-15);
  for (auto k : {family::BellKind::PhiMinus, family::BellKind::PsiPlus, family::BellKind::PsiMinus}) {
    EXPECT_NEAR(entropy(instantiate(family::Bell{k})), 0.0, 1e-12);
    EXPECT_NEAR(mutual_information(instantiate(family::Bell{k})), 2.0, 1e-12);
  }
}

TEST(Families, WernerEndpoints) {
  EXPECT_LT(oracle::max_abs_diff(instantiate(family::Werner{1.0}).matrix(), oracle::phi_plus()), 1e-15);
  EXPECT_LT(oracle::max_abs_diff(instantiate(family::Werner{0.0}).matrix(), Matrix::Identity(4, 4) / 4.0), 1e-15);
  EXPECT_LT(oracle::max_abs_diff(instantiate(family::Werner{0.4}).matrix(), oracle::werner(0.4)), 1e-15);
  EXPECT_THROW(instantiate(family::Werner{1.5}), Error);
  EXPECT_THROW(instantiate(family::Werner{-0.1}), Error);
}

TEST(Families, ClassicalClassicalTable) {
  const auto rho = instantiate(family::ClassicalClassical{{{0.5, 0.0}, {0.0, 0.5}}});
  EXPECT_LT(oracle::max_abs_diff(rho.matrix(), oracle::diag({0.5, 0, 0, 0.5})), 1e-15);
  EXPECT_EQ(instantiate(family::ClassicalClassical{{{0.2, 0.1, 0.1}, {0.2, 0.2, 0.2}}}).layout(),
            SubsystemLayout({2, 3}));
}

TEST(Families, GhzAndW) {
  const auto ghz = instantiate(family::Ghz{3});
  EXPECT_EQ(ghz.layout(), SubsystemLayout::qubits(3));
  EXPECT_NEAR(ghz.matrix()(0, 7).real(), 0.5, 1e-15);
  const auto w = instantiate(family::WState{3});
  EXPECT_NEAR(w.matrix()(1, 2).real(), 1.0 / 3, 1e-15);
  EXPECT_NEAR(entropy(w), 0.0, 1e-12);
}

TEST(Families, ParseSpecs) {
  EXPECT_TRUE(std::holds_alternative<family::Bell>(parse_family("bell:psi-")));
  EXPECT_DOUBLE_EQ(std::get<family::Werner>(parse_family("werner:0.25")).p, 0.25);
  EXPECT_EQ(std::get<family::Ghz>(parse_family("ghz:3")).qubits, 3);
  EXPECT_EQ(instantiate(parse_family("cc:2x2:0.4,0.1,0.1,0.4")).layout(), SubsystemLayout::qubits(2));
  EXPECT_EQ(instantiate(parse_family("product:0,0,1;1,0,0;0,0.5,0")).layout(), SubsystemLayout::qubits(3));
  EXPECT_EQ(instantiate(parse_family("cq:0.3,0.7:0,0,1;1,0,0")).layout(), SubsystemLayout::qubits(2));
  EXPECT_EQ(instantiate(parse_family("random:2x3:4:9")).layout(), SubsystemLayout({2, 3}));
  for (const char* bad : {"bell", "bell:phi", "werner:x", "nope:1", "cc:2x2:0.5", "random:2x2:9:1"}) {
    EXPECT_THROW(instantiate(parse_family(bad)), Error) << bad;
  }
}

TEST(Families, RandomMixedIsReproducible) {
  const family::RandomMixed spec{{2, 2}, 4, 1234};
  const auto a = instantiate(spec);
  const auto b = instantiate(spec);
  EXPECT_EQ((a.matrix() - b.matrix()).cwiseAbs().maxCoeff(), 0.0);
  const auto c = instantiate(family::RandomMixed{{2, 2}, 4, 1235});
  EXPECT_GT(oracle::max_abs_diff(a.matrix(), c.matrix()), 1e-3);
}

TEST(Families, ClassicalQuantumHasNoDiscordOnClassicalSide) {
  Rng rng(1);
  for (int t = 0; t < 10; ++t) {
    const auto rho = random_classical_quantum_state(SubsystemLayout::qubits(2), rng);
    EXPECT_NEAR(discord_delta(rho, {0}, {}).value, 0.0, 1e-6);
  }
}

TEST(Families, ProductStatesAreUncorrelated) {
  const auto rho = instantiate(parse_family("product:0.3,0.1,0.5;0,-0.6,0.2"));
  const OptimizerSettings s;
  EXPECT_NEAR(mutual_information(rho), 0.0, 1e-12);
  EXPECT_NEAR(discord_delta(rho, {0}, s).value, 0.0, 1e-8);
  EXPECT_NEAR(red(rho, {0, 1}, s).value, 0.0, 1e-8);
  EXPECT_NEAR(mid(rho).value, 0.0, 1e-8);
  EXPECT_NEAR(ree(rho, s).value, 0.0, 1e-8);
}

TEST(Families, BlochState) {
  EXPECT_LT(oracle::max_abs_diff(bloch_state(0, 0, 1).matrix(), oracle::diag({1, 0})), 1e-15);
  EXPECT_THROW(bloch_state(1, 1, 0), Error);
}
