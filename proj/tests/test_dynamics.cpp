#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "fockbridge/dynamics.hpp"
#include "fockbridge/hubbard.hpp"
#include "test_util.hpp"

using namespace fockbridge;
using fockbridge::testutil::max_abs_diff;

namespace {
const Statistics kBoson = Statistics::boson();
const Statistics kFermion = Statistics::fermion();
const Complex kI(0.0, 1.0);

std::vector<double> time_grid(int count, double stop) {
    std::vector<double> t(count);
    for (int k = 0; k < count; ++k) t[k] = stop * k / (count - 1);
    return t;
}

StateVector random_symmetric_state(int K, Statistics stat, std::mt19937_64& rng) {
    return symmetrize_state(StateVector(Space::hilbert(K), testutil::random_unit_vector(K * K, rng)), stat);
}
}  // namespace

TEST(Evolve, TimeZeroAndZeroHamiltonian) {
    std::mt19937_64 rng(1);
    const StateVector psi = random_symmetric_state(4, kBoson, rng);
    const auto h = kinetic_fock({4, 1.0, Boundary::Open, std::nullopt}, kBoson);
    const auto states = evolve({h, {0.0, 1.0}, psi});
    EXPECT_EQ(max_abs_diff(states[0].amplitudes(), psi.amplitudes()), 0.0);

    const auto still = evolve({OperatorMatrix::zero(psi.space()), time_grid(5, 3.0), psi});
    for (const auto& s : still) EXPECT_LE(max_abs_diff(s.amplitudes(), psi.amplitudes()), 1e-14);
}

TEST(Evolve, MatchesMatrixExponential) {
    std::mt19937_64 rng(2);
    const int dim = 10;
    const DenseMatrix h = testutil::random_hermitian(dim, rng);
    const StateVector psi(Space::fock(4, kBoson), testutil::random_unit_vector(dim, rng));
    const auto times = time_grid(6, 2.5);
    const auto states = evolve({OperatorMatrix(psi.space(), h), times, psi});
    for (std::size_t k = 0; k < times.size(); ++k) {
        const DenseMatrix u = (-kI * times[k] * h).exp();
        EXPECT_LE(max_abs_diff(states[k].amplitudes(), u * psi.amplitudes()), 1e-11);
    }
}

TEST(Evolve, PlanValidation) {
    const Space space = Space::fock(3, kBoson);
    const StateVector psi = StateVector::basis(space, {1, 1});
    DenseMatrix nonherm = DenseMatrix::Zero(6, 6);
    nonherm(0, 1) = 1.0;
    EXPECT_THROW(evolve({OperatorMatrix(space, nonherm), {0.0}, psi}), DomainError);
    EXPECT_THROW(evolve({OperatorMatrix::zero(space), {1.0, 1.0}, psi}), DomainError);
    EXPECT_THROW(evolve({OperatorMatrix::zero(space), {-1.0}, psi}), DomainError);
    EXPECT_THROW(evolve({OperatorMatrix::zero(space), {0.0}, StateVector(space, 2.0 * psi.amplitudes())}),
                 DomainError);
    EXPECT_THROW(evolve({OperatorMatrix::zero(Space::hilbert(3)), {0.0}, psi}), DomainError);
}

TEST(Evolve, HilbertAndFockRoutesAgree) {
    std::mt19937_64 rng(3);
    const int K = 4;
    const LatticeSpec spec{K, 1.0, Boundary::Periodic, std::nullopt};
    const auto times = time_grid(10, 10.0);
    const auto th = kinetic_hilbert(spec);
    for (const auto stat : {kBoson, kFermion}) {
        const StateVector psi_f = random_symmetric_state(K, stat, rng);
        const StateVector psi_h(Space::hilbert(K), rect_symmetrizer(K, stat).embed(psi_f.amplitudes()));
        const auto hilbert_states = evolve({th, times, psi_h});
        const auto fock_states = evolve({hilbert_to_fock_op(th, stat), times, psi_f});
        const DenseMatrix leak = projector(K, stat.is_boson() ? kFermion : kBoson).dense();
        const Complex e0 = expectation(th, psi_h);
        for (std::size_t k = 0; k < times.size(); ++k) {
            const StateVector reduced = symmetrize_state(hilbert_states[k], stat);
            EXPECT_LE(max_abs_diff(reduced.amplitudes(), fock_states[k].amplitudes()), 1e-9);
            EXPECT_NEAR(hilbert_states[k].norm(), 1.0, 1e-9);
            EXPECT_LE((leak * hilbert_states[k].amplitudes()).norm(), 1e-9);
            EXPECT_NEAR(std::abs(expectation(th, hilbert_states[k]) - e0), 0.0, 1e-9);
        }
    }
}

TEST(DensityFromState, RankOneUnitTrace) {
    std::mt19937_64 rng(4);
    const StateVector psi = random_symmetric_state(4, kFermion, rng);
    const DensityMatrix rho = density_from_state(psi);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-14);
    const Eigen::VectorXd spectrum = rho.spectrum();
    EXPECT_NEAR(spectrum(spectrum.size() - 1), 1.0, 1e-12);
    for (Eigen::Index k = 0; k + 1 < spectrum.size(); ++k) EXPECT_NEAR(spectrum(k), 0.0, 1e-12);
    EXPECT_THROW(density_from_state(StateVector(psi.space(), 1.1 * psi.amplitudes())), DomainError);
}

TEST(DensityFromState, ExchangeSymmetryOfHilbertElements) {
    std::mt19937_64 rng(5);
    const int K = 4;
    for (const auto stat : {kBoson, kFermion}) {
        const StateVector psi_f = random_symmetric_state(K, stat, rng);
        const StateVector psi_h(Space::hilbert(K), rect_symmetrizer(K, stat).embed(psi_f.amplitudes()));
        const DensityMatrix rho = density_from_state(psi_h);
        for (const auto& a : enumerate_basis(K))
            for (const auto& b : enumerate_basis(K))
                EXPECT_NEAR(std::abs(rho.element(a, b) - double(stat.g()) * rho.element(a.swapped(), b)), 0.0, 1e-14);
    }
}

TEST(Occupations, Examples) {
    const int K = 4;
    const auto bb = occupation_numbers(density_from_state(two_particle_fock_vector({1, 1}, kBoson, K)));
    EXPECT_EQ(bb, (std::vector<double>{2.0, 0.0, 0.0, 0.0}));
    const auto ff = occupation_numbers(density_from_state(two_particle_fock_vector({1, 2}, kFermion, K)));
    EXPECT_EQ(ff, (std::vector<double>{1.0, 1.0, 0.0, 0.0}));
}

TEST(Occupations, HilbertAndFockFormulasAgree) {
    std::mt19937_64 rng(6);
    const int K = 5;
    for (const auto stat : {kBoson, kFermion}) {
        for (int trial = 0; trial < 10; ++trial) {
            const StateVector psi_f = random_symmetric_state(K, stat, rng);
            const StateVector psi_h(Space::hilbert(K), rect_symmetrizer(K, stat).embed(psi_f.amplitudes()));
            const auto nf = occupation_numbers(density_from_state(psi_f));
            const auto nh = occupation_numbers(density_from_state(psi_h));
            for (int k = 0; k < K; ++k) EXPECT_NEAR(nf[k], nh[k], 1e-12);
            EXPECT_NEAR(std::accumulate(nf.begin(), nf.end(), 0.0), 2.0, 1e-10);
        }
    }
}

TEST(Occupations, MatchNumberOperatorOnBasis) {
    // <n_k> from the ladder algebra on each basis state
    const int K = 4;
    for (const auto stat : {kBoson, kFermion})
        for (const auto& p : enumerate_basis(K, stat)) {
            const auto n = occupation_numbers(density_from_state(two_particle_fock_vector(p, stat, K)));
            const auto s = two_particle_state(K, stat, p);
            for (int k = 1; k <= K; ++k) EXPECT_DOUBLE_EQ(n[k - 1], number_op(s, k).first);
        }
}

TEST(Entropy, PureAndMaximallyMixed) {
    std::mt19937_64 rng(7);
    const StateVector psi = random_symmetric_state(4, kBoson, rng);
    EXPECT_NEAR(von_neumann_entropy(density_from_state(psi)), 0.0, 1e-12);

    const DensityMatrix mixed(Space::fock(4, kFermion), DenseMatrix::Identity(6, 6) / 6.0);
    EXPECT_NEAR(von_neumann_entropy(mixed), 1.0, 1e-14);
    EXPECT_NEAR(von_neumann_entropy_nats(mixed), std::log(6.0), 1e-14);

    // single fermionic state: ln(1) normalization degenerates to 0
    const DensityMatrix single(Space::fock(2, kFermion), DenseMatrix::Identity(1, 1));
    EXPECT_EQ(von_neumann_entropy(single), 0.0);
}

TEST(Entropy, FockExceedsHilbertForSameState) {
    std::mt19937_64 rng(8);
    const int K = 4;
    for (const auto stat : {kBoson, kFermion}) {
        const int d = fock_dim(K, stat);
        const DensityMatrix rf(Space::fock(K, stat), testutil::random_fock_density(d, rng));
        const DensityMatrix rh = fock_to_hilbert_density(rf);
        const double sf = von_neumann_entropy(rf);
        const double sh = von_neumann_entropy(rh);
        EXPECT_GT(sf, sh);
        EXPECT_NEAR(von_neumann_entropy_nats(rf), von_neumann_entropy_nats(rh), 1e-10);
        EXPECT_NEAR(sf / sh, std::log(double(K * K)) / std::log(double(d)), 1e-9);
    }
}

TEST(Entropy, PureEvolutionStaysPure) {
    std::mt19937_64 rng(9);
    const int K = 4;
    const StateVector psi = random_symmetric_state(K, kFermion, rng);
    const auto h = kinetic_fock({K, 1.0, Boundary::Open, std::nullopt}, kFermion);
    for (const auto& s : evolve({h, time_grid(5, 4.0), psi}))
        EXPECT_NEAR(von_neumann_entropy(density_from_state(s)), 0.0, 1e-9);
}
