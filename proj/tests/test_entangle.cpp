#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "infoflux/entangle.hpp"
#include "infoflux/reference.hpp"

using namespace infoflux;

namespace {

PureState random_state(int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  StateVector amps(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < amps.size(); ++i) amps(i) = Complex(rng.normal(), rng.normal());
  amps /= amps.norm();
  return {n, amps};
}

PureState ghz(int n) {
  StateVector amps = StateVector::Zero(Eigen::Index{1} << n);
  amps(0) = amps(amps.size() - 1) = 1.0 / std::numbers::sqrt2;
  return {n, amps};
}

}  // namespace

TEST_CASE("product states carry no entanglement") {
  for (int n : {2, 4, 8}) {
    const PureState psi = uniform_superposition(n);
    CHECK(bipartite_concurrence(psi) < 1e-9);
    CHECK(multipartite_concurrence(psi) < 1e-9);
  }
  CHECK(bipartite_concurrence(basis_state(3, 5)) < 1e-9);
  CHECK(multipartite_concurrence(basis_state(3, 5)) < 1e-9);
}

TEST_CASE("analytic values: two-qubit maximally entangled and eight-qubit cat states") {
  const PureState bell = ghz(2);
  CHECK(bipartite_concurrence(bell) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(multipartite_concurrence(bell) == doctest::Approx(1.0).epsilon(1e-12));

  const PureState cat = ghz(8);
  CHECK(bipartite_concurrence(cat) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(multipartite_concurrence(cat) ==
        doctest::Approx(std::sqrt(127.0) / 8.0).epsilon(1e-12));
}

TEST_CASE("marginal purity: complement symmetry on random states") {
  const PureState psi = random_state(6, 41);
  CHECK(std::abs(marginal_purity(psi, {0, 2}) - marginal_purity(psi, {1, 3, 4, 5})) < 1e-12);
  CHECK(std::abs(marginal_purity(psi, {5}) - marginal_purity(psi, {0, 1, 2, 3, 4})) < 1e-12);
}

TEST_CASE("paired-subset sum matches the exhaustive reference") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const PureState psi = random_state(6, seed);
    CHECK(std::abs(multipartite_concurrence(psi) -
                   reference::multipartite_concurrence_direct(psi)) < 1e-12);
  }
}

TEST_CASE("local unitary invariance") {
  const PureState psi = random_state(5, 9);
  SplitMix64 rng(77);
  Operator rotation = Operator::Identity(1, 1);
  for (int q = 0; q < 5; ++q) {
    Operator a(2, 2);
    for (Eigen::Index i = 0; i < 2; ++i)
      for (Eigen::Index j = 0; j < 2; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
    rotation = kron(rotation, matexp_unitary(Operator(0.5 * (a + a.adjoint())), 1.0));
  }
  const PureState rotated{5, StateVector(rotation * psi.amps)};
  CHECK(std::abs(bipartite_concurrence(rotated) - bipartite_concurrence(psi)) < 1e-9);
  CHECK(std::abs(multipartite_concurrence(rotated) - multipartite_concurrence(psi)) < 1e-9);
}

TEST_CASE("series over an engine run") {
  EngineParams p;
  p.kind = EngineKind::Circuit;
  p.n = 4;
  p.target = 0;
  CircuitEngine engine(p);
  const std::vector<double> grid{0.0, 1.0, 2.0, 3.0};
  const std::vector<EntanglementRecord> records = entanglement_series(engine, grid);
  CHECK(records.size() == 4);
  CHECK(records[0].c_bipartite < 1e-9);   // product start
  CHECK(records[0].e_multipartite < 1e-9);
  CHECK(records[1].c_bipartite > 0.01);   // interaction generates entanglement
  for (const EntanglementRecord& r : records) {
    CHECK(r.c_bipartite >= 0.0);
    CHECK(r.c_bipartite <= 1.0 + 1e-12);
  }
}

TEST_CASE("size and argument errors") {
  CHECK_THROWS_AS((void)multipartite_concurrence(basis_state(11, 0)), std::length_error);
  CHECK_THROWS_AS((void)bipartite_concurrence(basis_state(1, 0)), std::invalid_argument);
  PureState bad{2, StateVector::Zero(4)};
  bad.amps(0) = 0.3;
  CHECK_THROWS_AS((void)bipartite_concurrence(bad), std::invalid_argument);
  CHECK_THROWS_AS((void)marginal_purity(uniform_superposition(3), {3}), std::invalid_argument);
}
