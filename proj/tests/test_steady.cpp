#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "tcsim/classical.hpp"
#include "tcsim/observables.hpp"
#include "tcsim/steady.hpp"

using namespace tcsim;

namespace {

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    const DenseMatrix diff = a.entries - b.entries;
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(diff, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double safe_dt(const Liouvillian& l) {
    const double norm = inf_norm(l.matrix);
    return norm > 0.0 ? std::min(1.0, 1.0 / norm) : 1.0;
}

DensityMatrix vacuum_state(const HilbertSpace& space) {
    DenseMatrix rho = DenseMatrix::Zero(space.dim(), space.dim());
    rho(0, 0) = 1.0;
    return DensityMatrix{rho};
}

}  // namespace

TEST_SUITE("steady") {

TEST_CASE("undriven dissipative system relaxes to the global ground state") {
    for (int n : {1, 2}) {
        SystemParams p = baseline_params(n, 0.0);
        const HilbertSpace space(n, 2);
        const DensityMatrix rho = steady_state(liouvillian(p, space));
        CHECK(rho.entries(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
        DenseMatrix rest = rho.entries;
        rest(0, 0) = 0.0;
        CHECK(rest.cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("uncoupled driven cavity reaches the coherent-state population") {
    SystemParams p = baseline_params(1, 0.015);  // Omega_d/gamma_c = 0.5
    p.g_col = 0.0;
    const HilbertSpace space(1, 10);
    const DensityMatrix rho = steady_state(liouvillian(p, space));
    const double expected = uncoupled_population(p);  // Omega_d^2 / gamma_c^2
    CHECK(expectation(number_op(space), rho).real() ==
          doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("steady state passes the density-matrix invariants") {
    SystemParams p = baseline_params(2, 0.0075);
    const HilbertSpace space(2, 4);
    const DensityMatrix rho = steady_state(liouvillian(p, space));
    CHECK_NOTHROW(rho.validate());
    CHECK(std::abs(rho.entries.trace() - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("completely stationary generator is reported as degenerate") {
    SystemParams p;
    p.gamma_c = 0.0;
    p.gamma_c_rad = 0.0;
    p.gamma_e = 0.0;
    p.g_col = 0.0;
    p.omega_drive_amp = 0.0;
    const HilbertSpace space(1, 1);
    CHECK_THROWS_AS(steady_state(liouvillian(p, space)), SolveError);
}

TEST_CASE("evolve_oracle: zero generator is the identity map") {
    SystemParams p;
    p.gamma_c = 0.0;
    p.gamma_c_rad = 0.0;
    p.gamma_e = 0.0;
    p.g_col = 0.0;
    p.omega_drive_amp = 0.0;
    const HilbertSpace space(1, 2);
    const Liouvillian l = liouvillian(p, space);

    DenseMatrix rho0 = DenseMatrix::Zero(space.dim(), space.dim());
    rho0(2, 2) = 0.5;
    rho0(0, 0) = 0.5;
    const DensityMatrix rho_t = evolve_oracle(l, DensityMatrix{rho0}, 5.0, 0.1);
    CHECK((rho_t.entries - rho0).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("evolve_oracle: pure cavity decay from |1>") {
    SystemParams p = baseline_params(1, 0.0);
    p.g_col = 0.0;
    const HilbertSpace space(1, 2);
    const Liouvillian l = liouvillian(p, space);

    DenseMatrix rho0 = DenseMatrix::Zero(space.dim(), space.dim());
    rho0(space.spin_dim(), space.spin_dim()) = 1.0;  // |1;g><1;g|
    const double t_end = 10.0;
    const DensityMatrix rho_t = evolve_oracle(l, DensityMatrix{rho0}, t_end, 0.01);
    const double expected = std::exp(-p.gamma_c * t_end);
    CHECK(std::abs(expectation(number_op(space), rho_t).real() - expected) < 1e-8);
}

TEST_CASE("evolve_oracle rejects an unstable step size") {
    SystemParams p = baseline_params(1, 0.0);
    const HilbertSpace space(1, 4);
    const Liouvillian l = liouvillian(p, space);
    const DensityMatrix rho0 = vacuum_state(space);
    CHECK_THROWS_AS(evolve_oracle(l, rho0, 1.0, 1e6), std::invalid_argument);
}

TEST_CASE("steady solve agrees with long-time RK4 evolution at reference parameters") {
    SystemParams p = baseline_params(1, 0.25 * 0.03);
    const HilbertSpace space(1, 4);
    const Liouvillian l = liouvillian(p, space);

    const DensityMatrix rho_ss = steady_state(l);
    const double t_end = 50.0 / p.gamma_c;
    const DensityMatrix rho_t = evolve_oracle(l, vacuum_state(space), t_end, safe_dt(l));
    CHECK(trace_distance(rho_ss, rho_t) < 1e-6);
}

TEST_CASE("cross-oracle agreement on random weak-drive parameters") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> dist(0.2, 1.0);
    for (int trial = 0; trial < 3; ++trial) {
        SystemParams p;
        p.gamma_c = 0.05 * dist(rng);
        p.gamma_c_rad = p.gamma_c;
        p.gamma_e = 0.01 * dist(rng);
        p.g_col = 0.04 * dist(rng);
        p.omega_drive_amp = 0.3 * p.gamma_c * dist(rng);
        const HilbertSpace space(1, 3);
        const Liouvillian l = liouvillian(p, space);

        const DensityMatrix rho_ss = steady_state(l);
        const double slow_rate = std::min({p.gamma_c, p.gamma_e});
        const double t_end = 50.0 / slow_rate;
        const DensityMatrix rho_t = evolve_oracle(l, vacuum_state(space), t_end, safe_dt(l));
        CHECK(trace_distance(rho_ss, rho_t) < 1e-6);

        const double n_ss = expectation(number_op(space), rho_ss).real();
        const double n_t = expectation(number_op(space), rho_t).real();
        CHECK(std::abs(n_ss - n_t) / n_ss < 1e-5);
    }
}

TEST_CASE("auto_truncate returns the starting basis for a vanishing drive") {
    SystemParams p = baseline_params(1, 0.0);
    CHECK(auto_truncate(p) == 4);
}

TEST_CASE("auto_truncate meets the Poisson tail bound for a coherent cavity") {
    SystemParams p = baseline_params(1, 0.03);  // Omega_d/gamma_c = 1, <n> = 1
    p.g_col = 0.0;
    const double tail_tol = 1e-8;
    const int n_max = auto_truncate(p, tail_tol);

    // independent Poisson oracle at <n> = 1
    const double mean = 1.0;
    std::vector<double> weight(n_max + 4);
    weight[0] = std::exp(-mean);
    for (int k = 1; k < static_cast<int>(weight.size()); ++k) {
        weight[k] = weight[k - 1] * mean / k;
    }
    // the truncation criterion itself: top-two Fock mass below tail_tol
    CHECK(weight[n_max - 1] + weight[n_max] < tail_tol);
    // the full tail P(n >= n_max - 1); exceeds the top-two proxy only by the
    // next-term ratio ~ mean/(n_max + 1)
    double head = 0.0;
    for (int k = 0; k <= n_max - 2; ++k) head += weight[k];
    CHECK(1.0 - head < tail_tol * (1.0 + mean / (n_max + 1) * 2.0));
}

TEST_CASE("auto_truncate honors the drive-based lower bound") {
    SystemParams p = baseline_params(1, 0.06);  // Omega_d/gamma_c = 2
    p.g_col = 0.0;
    const int bound = static_cast<int>(std::ceil(3.0 * 4.0));
    const int n_max = auto_truncate(p, 1e-8, TruncationOptions{4, 4, 60});
    CHECK(n_max >= bound);
}

TEST_CASE("auto_truncate names the hard cap on failure") {
    SystemParams p = baseline_params(1, 0.3);  // needs n_max ~ 300
    try {
        auto_truncate(p, 1e-8, TruncationOptions{4, 4, 40});
        FAIL("expected SolveError");
    } catch (const SolveError& e) {
        CHECK(std::string(e.what()).find("40") != std::string::npos);
    }
}

TEST_CASE("steady state is stable under basis growth") {
    SystemParams p = baseline_params(1, 0.0075);
    const double tail_tol = 1e-8;
    const int n_star = auto_truncate(p, tail_tol);

    auto cavity_pop_at = [&](int n_max) {
        const HilbertSpace space(1, n_max);
        const DensityMatrix rho = steady_state(liouvillian(p, space));
        return expectation(number_op(space), rho).real();
    };
    const double pop_star = cavity_pop_at(n_star);
    const double pop_grown = cavity_pop_at(n_star + 8);
    CHECK(std::abs(pop_grown - pop_star) / pop_star < 10.0 * tail_tol);
}

}  // TEST_SUITE
