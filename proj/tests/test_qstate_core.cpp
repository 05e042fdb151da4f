#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qcorr/density_matrix.hpp"
#include "qcorr/error.hpp"
#include "qcorr/families.hpp"
#include "qcorr/random.hpp"
#include "qcorr/state_ops.hpp"

using namespace qcorr;

namespace {

const SubsystemLayout kQubit({2});
const SubsystemLayout kTwoQubits = SubsystemLayout::qubits(2);

DensityMatrix dm(const Matrix& m, const SubsystemLayout& layout) { return DensityMatrix::validate(m, layout); }

DensityMatrix ket(const std::vector<cplx>& v, const SubsystemLayout& layout) {
  return dm(oracle::projector(v), layout);
}

void expect_error(ErrorCode code, const std::function<void()>& fn) {
  try {
    fn();
    FAIL() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(Layout, RejectsBadDims) {
  expect_error(ErrorCode::DimensionMismatch, [] { SubsystemLayout({}); });
  expect_error(ErrorCode::DimensionMismatch, [] { SubsystemLayout({2, 1}); });
  expect_error(ErrorCode::DimensionMismatch, [] { SubsystemLayout({8, 9}); });
  EXPECT_EQ(SubsystemLayout({2, 3, 2}).total_dim(), 12);
}

TEST(Layout, SubsetNormalization) {
  EXPECT_EQ(normalize_subset(kTwoQubits, {1, 0}), (IndexSet{0, 1}));
  expect_error(ErrorCode::InvalidSubset, [] { normalize_subset(kTwoQubits, {1, 1}); });
  expect_error(ErrorCode::IndexOutOfRange, [] { normalize_subset(kTwoQubits, {2}); });
  EXPECT_EQ(SubsystemLayout({2, 3, 4}).complement({1}), (IndexSet{0, 2}));
}

TEST(Validate, MaximallyMixedQubit) {
  const auto rho = dm(Matrix::Identity(2, 2) / 2.0, kQubit);
  EXPECT_NEAR(entropy(rho), 1.0, 1e-12);
}

TEST(Validate, ClampsTinyNegativeEigenvalue) {
  const auto rho = dm(oracle::diag({1.0 + 1e-14, -1e-14}), kQubit);
  EXPECT_GE(rho.matrix()(1, 1).real(), 0.0);
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-15);
}

TEST(Validate, Rejections) {
  Matrix m = Matrix::Identity(2, 2) / 2.0;
  m(0, 1) = 0.1;
  expect_error(ErrorCode::NonHermitian, [&] { dm(m, kQubit); });
  expect_error(ErrorCode::TraceError, [] { dm(oracle::diag({0.6, 0.6}), kQubit); });
  expect_error(ErrorCode::NonPositive, [] { dm(oracle::diag({1.1, -0.1}), kQubit); });
  expect_error(ErrorCode::DimensionMismatch, [] { dm(Matrix::Identity(3, 3) / 3.0, kQubit); });
  Matrix nan = Matrix::Identity(2, 2) / 2.0;
  nan(0, 0) = std::nan("");
  EXPECT_THROW(dm(nan, kQubit), Error);
}

TEST(Tensor, Examples) {
  const auto mixed = dm(Matrix::Identity(2, 2) / 2.0, kQubit);
  EXPECT_LT(oracle::max_abs_diff(tensor(mixed, mixed).matrix(), Matrix::Identity(4, 4) / 4.0), 1e-15);
  EXPECT_EQ(tensor(mixed, mixed).layout(), kTwoQubits);

  const auto t = tensor(ket({1, 0}, kQubit), ket({0, 1}, kQubit));
  EXPECT_LT(oracle::max_abs_diff(t.matrix(), oracle::diag({0, 1, 0, 0})), 1e-15);

  const auto d = tensor(dm(oracle::diag({0.75, 0.25}), kQubit), mixed);
  EXPECT_LT(oracle::max_abs_diff(d.matrix(), oracle::diag({3.0 / 8, 3.0 / 8, 1.0 / 8, 1.0 / 8})), 1e-15);
}

TEST(Tensor, MatchesIndexLoopKron) {
  Rng rng(3);
  const auto a = random_state(SubsystemLayout({2}), 2, rng);
  const auto b = random_state(SubsystemLayout({3}), 2, rng);
  EXPECT_LT(oracle::max_abs_diff(tensor(a, b).matrix(), oracle::kron(a.matrix(), b.matrix())), 1e-14);
}

TEST(PartialTrace, Examples) {
  const auto bell = dm(oracle::phi_plus(), kTwoQubits);
  EXPECT_LT(oracle::max_abs_diff(partial_trace(bell, {0}).matrix(), Matrix::Identity(2, 2) / 2.0), 1e-15);

  std::vector<cplx> v(8, 0.0);
  v[0b010] = 1.0;
  const auto k = ket(v, SubsystemLayout::qubits(3));
  EXPECT_LT(oracle::max_abs_diff(partial_trace(k, {1}).matrix(), oracle::diag({0, 1})), 1e-15);
  expect_error(ErrorCode::EmptyKeepSet, [&] { partial_trace(k, {}); });
  expect_error(ErrorCode::IndexOutOfRange, [&] { partial_trace(k, {3}); });
}

TEST(PartialTrace, MatchesIndexLoops) {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto rho = random_state(SubsystemLayout({2, 3}), 1 + t % 6, rng);
    EXPECT_LT(oracle::max_abs_diff(partial_trace(rho, {0}).matrix(), oracle::trace_second(rho.matrix(), 2, 3)), 1e-14);
    EXPECT_LT(oracle::max_abs_diff(partial_trace(rho, {1}).matrix(), oracle::trace_first(rho.matrix(), 2, 3)), 1e-14);
  }
}

TEST(PartialTrace, OfTensorRecoversFactor) {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_state(SubsystemLayout({2}), 1 + t % 2, rng);
    const auto b = random_state(SubsystemLayout({3}), 1 + t % 3, rng);
    EXPECT_LT(oracle::max_abs_diff(partial_trace(tensor(a, b), {0}).matrix(), a.matrix()), 1e-14);
    EXPECT_LT(oracle::max_abs_diff(partial_trace(tensor(a, b), {1}).matrix(), b.matrix()), 1e-14);
  }
}

TEST(MarginalProduct, Examples) {
  Rng rng(11);
  const auto prod = random_product_state(kTwoQubits, rng);
  EXPECT_LT(oracle::max_abs_diff(marginal_product(prod).matrix(), prod.matrix()), 1e-14);
  const auto quarter = Matrix::Identity(4, 4) / 4.0;
  EXPECT_LT(oracle::max_abs_diff(marginal_product(dm(oracle::phi_plus(), kTwoQubits)).matrix(), quarter), 1e-15);
  EXPECT_LT(oracle::max_abs_diff(marginal_product(dm(oracle::diag({0.5, 0, 0, 0.5}), kTwoQubits)).matrix(), quarter),
            1e-15);
}

TEST(Entropy, Examples) {
  Rng rng(13);
  for (int t = 0; t < 10; ++t) EXPECT_NEAR(entropy(random_state(kTwoQubits, 1, rng)), 0.0, 1e-10);
  EXPECT_NEAR(entropy(dm(Matrix::Identity(2, 2) / 2.0, kQubit)), 1.0, 1e-14);
  EXPECT_NEAR(entropy(dm(oracle::diag({0.75, 0.25}), kQubit)), 0.811278124459, 1e-9);
}

TEST(Entropy, WernerSpectrum) {
  for (double p : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    EXPECT_NEAR(entropy(dm(oracle::werner(p), kTwoQubits)), oracle::werner_entropy(p), 1e-12) << p;
  }
}

TEST(RelativeEntropy, Examples) {
  Rng rng(17);
  const auto x = random_state(kTwoQubits, 4, rng);
  EXPECT_NEAR(relative_entropy(x, x), 0.0, 1e-12);
  const auto zero = ket({1, 0}, kQubit);
  EXPECT_NEAR(relative_entropy(zero, dm(Matrix::Identity(2, 2) / 2.0, kQubit)), 1.0, 1e-14);
  EXPECT_TRUE(is_infinite(relative_entropy(zero, ket({0, 1}, kQubit))));
}

TEST(RelativeEntropy, CommutingCaseMatchesClassicalFormula) {
  const std::vector<double> p = {0.1, 0.2, 0.3, 0.4}, q = {0.25, 0.4, 0.05, 0.3};
  EXPECT_NEAR(relative_entropy(dm(oracle::diag(p), kTwoQubits), dm(oracle::diag(q), kTwoQubits)),
              oracle::classical_relative_entropy(p, q), 1e-13);
}

TEST(RelativeEntropy, NonnegativeAndZeroOnlyForEqualStates) {
  Rng rng(19);
  for (int t = 0; t < 100; ++t) {
    const auto x = random_state(kTwoQubits, 1 + t % 4, rng);
    const auto y = random_state(kTwoQubits, 4, rng);
    const double s = relative_entropy(x, y);
    EXPECT_GE(s, 0.0);
    if (s < 1e-9) {
      EXPECT_LT(trace_distance(x, y), 1e-4);
    }
    EXPECT_NEAR(relative_entropy(y, y), 0.0, 1e-10);
  }
}

TEST(Dephase, Examples) {
  Rng rng(23);
  const auto classical = random_classical_state(kTwoQubits, rng, false);
  const auto computational = LocalBasisSet::computational(kTwoQubits, {0, 1});
  EXPECT_LT(oracle::max_abs_diff(dephase(classical, computational).matrix(), classical.matrix()), 1e-15);

  const auto bell = dm(oracle::phi_plus(), kTwoQubits);
  const auto target = oracle::diag({0.5, 0, 0, 0.5});
  EXPECT_LT(oracle::max_abs_diff(dephase(bell, computational).matrix(), target), 1e-15);
  EXPECT_LT(oracle::max_abs_diff(dephase(bell, LocalBasisSet::computational(kTwoQubits, {0})).matrix(), target), 1e-15);
}

TEST(Dephase, BasisMustFitLayout) {
  const auto rho = dm(Matrix::Identity(6, 6) / 6.0, SubsystemLayout({2, 3}));
  LocalBasisSet b;
  b.set(1, LocalBasis::computational(2));
  EXPECT_THROW(dephase(rho, b), Error);
}

TEST(MutualInformation, Examples) {
  Rng rng(29);
  EXPECT_NEAR(mutual_information(random_product_state(kTwoQubits, rng)), 0.0, 1e-12);
  EXPECT_NEAR(mutual_information(dm(oracle::phi_plus(), kTwoQubits)), 2.0, 1e-12);
  EXPECT_NEAR(mutual_information(dm(oracle::diag({0.5, 0, 0, 0.5}), kTwoQubits)), 1.0, 1e-12);
}

TEST(Properties, DephasingNeverLowersEntropy) {
  Rng rng(31);
  const auto layout = SubsystemLayout({2, 3});
  for (int t = 0; t < 100; ++t) {
    const auto rho = random_state(layout, 1 + t % 6, rng);
    for (const IndexSet& set : {IndexSet{0}, IndexSet{1}, IndexSet{0, 1}}) {
      EXPECT_GE(entropy(dephase(rho, random_basis_set(layout, set, rng))), entropy(rho) - 1e-12);
    }
  }
}

TEST(Properties, TotalCorrelationIsMutualInformation) {
  Rng rng(37);
  for (int t = 0; t < 100; ++t) {
    const auto rho = random_state(SubsystemLayout::qubits(2 + t % 2), 1 + t % 4, rng);
    EXPECT_NEAR(relative_entropy(rho, marginal_product(rho)), mutual_information(rho), 1e-9);
  }
}

TEST(Properties, DephasingDistanceIsEntropyDifference) {
  Rng rng(41);
  const auto layout = SubsystemLayout({2, 3});
  for (int t = 0; t < 100; ++t) {
    const auto rho = random_state(layout, 1 + t % 6, rng);
    for (const IndexSet& set : {IndexSet{0}, IndexSet{1}, IndexSet{0, 1}}) {
      const auto chi = dephase(rho, random_basis_set(layout, set, rng));
      EXPECT_NEAR(relative_entropy(rho, chi), entropy(chi) - entropy(rho), 1e-10);
    }
  }
}

TEST(Properties, DephasedEntropyFastPathMatchesDephase) {
  Rng rng(43);
  const auto layout = SubsystemLayout({2, 2, 2});
  for (int t = 0; t < 30; ++t) {
    const auto rho = random_state(layout, 1 + t % 8, rng);
    for (const IndexSet& set : {IndexSet{1}, IndexSet{0, 2}, IndexSet{0, 1, 2}}) {
      const auto b = random_basis_set(layout, set, rng);
      EXPECT_NEAR(dephased_entropy(rho, b), entropy(dephase(rho, b)), 1e-10);
    }
  }
}

TEST(Embed, ActsOnChosenSubsystem) {
  const SubsystemLayout layout({2, 3});
  Matrix z = oracle::diag({1, -1});
  const Matrix e = embed(z, layout, {0});
  EXPECT_LT(oracle::max_abs_diff(e, oracle::kron(z, Matrix::Identity(3, 3))), 1e-15);
}
