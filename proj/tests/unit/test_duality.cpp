#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "nonrev/duality.hpp"

using namespace nonrev;
using namespace nonrev::testing;

TEST_CASE("adjoint of a detailed-balance chain is itself") {
  std::mt19937_64 rng(101);
  const ChainSpec spec = random_db_chain(rng, 5);
  const ChainSpec adj = adjoint_chain(spec);
  CHECK((adj.rates - spec.rates).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("adjoint of the ring swaps clockwise and counterclockwise rates") {
  const ChainSpec adj = adjoint_chain(make_r3());
  CHECK(adj.rate(0, 1) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(adj.rate(1, 0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(adj.rate(1, 2) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(adj.rate(2, 0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(adj.rate(0, 2) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("adjoint: involution and invariance of the stationary measure") {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    const ChainSpec spec = random_chain(rng, 3 + trial % 4);
    const ChainSpec adj = adjoint_chain(spec);
    const ChainSpec back = adjoint_chain(adj);
    CHECK((back.rates - spec.rates).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((stationary(adj).values - stationary(spec).values)
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("representation at mu = pi collapses the conjugation") {
  const ChainSpec spec = make_r3();
  const Density pi = stationary(spec);
  const AdjointRepresentation rep = representation(spec, pi);
  CHECK((rep.h.array() - 1.0).abs().maxCoeff() < 1e-12);
  CHECK((rep.wplus_mu - rep.wstar).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(rep.reconstruction_defect < 1e-12);
}

TEST_CASE("representation independence across reference measures") {
  std::mt19937_64 rng(107);
  const ChainSpec spec = random_chain(rng, 5);

  const Density uniform = uniform_density(5);
  const AdjointRepresentation rep_uniform = representation(spec, uniform);
  const AdjointRepresentation rep_pi = representation(spec, stationary(spec));
  CHECK((rep_uniform.wstar - rep_pi.wstar).cwiseAbs().maxCoeff() < 1e-12);
  // Same operator, different representations.
  CHECK((rep_uniform.wplus_mu - rep_pi.wplus_mu).cwiseAbs().maxCoeff() > 1e-3);

  for (int trial = 0; trial < 10; ++trial) {
    const Density mu = random_positive_density(rng, 5);
    const AdjointRepresentation rep = representation(spec, mu);
    CHECK(rep.reconstruction_defect < 1e-12);
    CHECK((rep.wstar - rep_pi.wstar).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("representation rejects vanishing reference measures") {
  const ChainSpec spec = make_r3();
  Vector mu(3);
  mu << 0.5, 0.5, 0.0;
  CHECK_THROWS_AS(representation(spec, Density(mu)), ZeroReference);
}

TEST_CASE("dual force: detailed balance is self-dual") {
  std::mt19937_64 rng(109);
  const ChainSpec spec = random_db_chain(rng, 4);
  const Density rho = random_positive_density(rng, 4);
  const auto [mob, force] = mobility_force(spec, rho);
  const EdgeField fstar = dual_force(spec, rho);
  CHECK((fstar.values - force.values).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dual force on the ring at stationarity is the sign flip") {
  const ChainSpec spec = make_r3();
  const Density pi = stationary(spec);
  const auto [mob, force] = mobility_force(spec, pi);
  const EdgeField fstar = dual_force(spec, pi);
  CHECK((fstar.values + force.values).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(psi_star(mob, fstar) - psi_star(mob, force)) < 1e-14);
}

TEST_CASE("dissipation equality holds for random chains and densities") {
  std::mt19937_64 rng(113);
  for (int trial = 0; trial < 50; ++trial) {
    const ChainSpec spec = random_chain(rng, 2 + trial % 5);
    const Density rho =
        random_positive_density(rng, spec.n_states());
    const auto [mob, force] = mobility_force(spec, rho);
    const EdgeField fstar = dual_force(spec, rho);
    CHECK(std::abs(psi_star(mob, force) - psi_star(mob, fstar)) <= 1e-10);
    // The mobility is adjoint-invariant: r_xy r_yx = r*_xy r*_yx.
    const auto [mob_star, force_star] =
        mobility_force(adjoint_chain(spec), rho);
    CHECK((mob_star.values - mob.values).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("canonical split: detailed balance has no antisymmetric part") {
  std::mt19937_64 rng(127);
  const ChainSpec spec = random_db_chain(rng, 5);
  const auto [fs, fa] = canonical_split(spec, stationary(spec));
  CHECK(fa.values.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("canonical split on the ring is purely antisymmetric") {
  const ChainSpec spec = make_r3();
  const Density pi = stationary(spec);
  const auto [mob, force] = mobility_force(spec, pi);
  const auto [fs, fa] = canonical_split(spec, pi);
  CHECK(fs.values.cwiseAbs().maxCoeff() < 1e-12);
  CHECK((fa.values - force.values).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((fs.values + fa.values - force.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("time reversal at stationarity flips fluxes, preserves entropy") {
  // At pi the adjoint's physical flux is the negated original and the two
  // stationary processes produce entropy at the same rate. Away from pi
  // only the time-integrated rate functionals correspond, not the pointwise
  // pairings, so this is checked where it is exact.
  std::mt19937_64 rng(131);
  for (int trial = 0; trial < 10; ++trial) {
    const ChainSpec spec = random_chain(rng, 3 + trial % 4);
    const ChainSpec adj = adjoint_chain(spec);
    const Density pi = stationary(spec);

    const auto [mob, force] = mobility_force(spec, pi);
    const auto [mob_a, force_a] = mobility_force(adj, pi);
    const EdgeField j = flux(mob, force);
    const EdgeField j_star = flux(mob_a, force_a);

    CHECK((j_star.values + j.values).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(entropy_production(j_star, force_a) ==
          doctest::Approx(entropy_production(j, force)).epsilon(1e-10));
  }
}
