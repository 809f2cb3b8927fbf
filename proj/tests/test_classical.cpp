#include <doctest.h>

#include <random>

#include "tcsim/classical.hpp"

using namespace tcsim;

namespace {

using Complex = std::complex<double>;

SystemParams paper_params(int n = 1, double drive = 0.0075) {
    return baseline_params(n, drive);
}

// Frequency-domain residual of the coupled equations of motion under the
// closed-form amplitudes, relative to the drive scale.
double substitution_residual(const SystemParams& p, double omega_d) {
    const ClassicalAmplitudes amps = co_amplitudes(p, omega_d);
    const double g = p.g_single();
    const double coupling = 2.0 * g * std::sqrt(p.omega_c * p.omega_e);
    const double drive = p.omega_drive_amp * std::sqrt(2.0 * p.omega_c);
    const Complex cav(p.omega_c * p.omega_c - omega_d * omega_d, omega_d * p.gamma_c);
    const Complex emi(p.omega_e * p.omega_e - omega_d * omega_d, omega_d * p.gamma_e);

    const Complex eq_cavity = cav * amps.c0 + coupling * double(p.n_emitters) * amps.ci - drive;
    const Complex eq_emitter = emi * amps.ci + coupling * amps.c0;
    return std::max(std::abs(eq_cavity), std::abs(eq_emitter)) / drive;
}

}  // namespace

TEST_SUITE("classical") {

TEST_CASE("decoupled resonant oscillator reproduces the driven-cavity population") {
    SystemParams p = paper_params();
    p.g_col = 0.0;
    p.omega_drive_amp = p.gamma_c;  // Omega_d = gamma_c gives <n_c> = 1
    const ClassicalPopulations pops = co_populations(p, 1.0);
    CHECK(pops.n_c == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("no drive, no response") {
    SystemParams p = paper_params(2, 0.0);
    const ClassicalAmplitudes amps = co_amplitudes(p, 1.0);
    CHECK(std::abs(amps.c0) == 0.0);
    CHECK(std::abs(amps.ci) == 0.0);
    const ClassicalPopulations pops = co_populations(p, 1.0);
    CHECK(pops.n_c == 0.0);
    CHECK(pops.n_ens == 0.0);
}

TEST_CASE("closed-form amplitudes satisfy the frequency-domain system") {
    CHECK(substitution_residual(paper_params(1), 1.0) < 1e-12);
    CHECK(substitution_residual(paper_params(3), 1.0) < 1e-12);
    CHECK(substitution_residual(paper_params(2), 0.97) < 1e-12);
}

TEST_CASE("lossless resonant pole is an explicit failure") {
    SystemParams p;
    p.gamma_c = 0.0;
    p.gamma_c_rad = 0.0;
    p.gamma_e = 0.0;
    p.g_col = 0.0;
    p.omega_drive_amp = 0.01;
    CHECK_THROWS_AS(co_amplitudes(p, 1.0), SolveError);
}

TEST_CASE("reference-point populations") {
    const ClassicalPopulations pops = co_populations(paper_params(), 1.0);
    CHECK(pops.n_c == doctest::Approx(3.886e-7).epsilon(2e-4));
    CHECK(pops.n_c == doctest::Approx(weak_resonant_population(paper_params())).epsilon(1e-12));
}

TEST_CASE("effective drive") {
    SUBCASE("decoupled limit passes the drive through") {
        SystemParams p = paper_params();
        p.g_col = 0.0;
        CHECK(effective_drive(p) == doctest::Approx(p.omega_drive_amp));
    }
    SUBCASE("unit cooperativity halves the drive") {
        SystemParams p;
        p.gamma_c = 0.03;
        p.gamma_c_rad = 0.03;
        p.gamma_e = 0.03;
        p.g_col = 0.015;  // C = 1
        p.omega_drive_amp = 0.01;
        CHECK(effective_drive(p) == doctest::Approx(p.omega_drive_amp / 2.0).epsilon(1e-14));
    }
    SUBCASE("reference parameters give Omega_d / 401") {
        CHECK(effective_drive(paper_params()) == doctest::Approx(1.8703e-5).epsilon(1e-4));
        CHECK(effective_drive(paper_params()) == doctest::Approx(0.0075 / 401.0).epsilon(1e-14));
    }
}

TEST_CASE("weak resonant population") {
    CHECK(weak_resonant_population(paper_params()) == doctest::Approx(3.886e-7).epsilon(2e-4));

    SystemParams doubled = paper_params();
    doubled.omega_drive_amp *= 2.0;
    CHECK(weak_resonant_population(doubled) ==
          doctest::Approx(4.0 * weak_resonant_population(paper_params())).epsilon(1e-14));

    SystemParams no_coupling = paper_params();
    no_coupling.g_col = 0.0;
    CHECK_THROWS_AS(weak_resonant_population(no_coupling), std::domain_error);
}

TEST_CASE("uncoupled population") {
    SystemParams p = paper_params();
    CHECK(uncoupled_population(p) == doctest::Approx(0.0625).epsilon(1e-14));
    p.omega_drive_amp = p.gamma_c;
    CHECK(uncoupled_population(p) == doctest::Approx(1.0));
    p.omega_drive_amp = 0.0;
    CHECK(uncoupled_population(p) == 0.0);
    p.gamma_c = 0.0;
    p.gamma_c_rad = 0.0;
    CHECK_THROWS_AS(uncoupled_population(p), std::domain_error);
}

TEST_CASE("suppression ratio") {
    SUBCASE("no coupling, no suppression") {
        SystemParams p = paper_params();
        p.g_col = 0.0;
        CHECK(suppression_ratio(p) == doctest::Approx(1.0));
    }
    SUBCASE("reference parameters give 1/401^2") {
        CHECK(suppression_ratio(paper_params()) ==
              doctest::Approx(1.0 / (401.0 * 401.0)).epsilon(1e-12));
        CHECK(suppression_ratio(paper_params()) == doctest::Approx(6.2189e-6).epsilon(1e-4));
        CHECK(drive_suppression_factor(paper_params()) == doctest::Approx(1.0 / 401.0));
    }
    SUBCASE("unit cooperativity suppresses to a quarter") {
        SystemParams p;
        p.gamma_c = 0.03;
        p.gamma_c_rad = 0.03;
        p.gamma_e = 0.03;
        p.g_col = 0.015;
        CHECK(suppression_ratio(p) == doctest::Approx(0.25).epsilon(1e-12));
    }
}

TEST_CASE("quantum-to-classical parameter map") {
    SUBCASE("no coupling") {
        SystemParams p = paper_params();
        p.g_col = 0.0;
        const ClassicalMap map = quantum_to_classical_map(p);
        CHECK(map.k == 0.0);
        CHECK(map.omega0_sq == doctest::Approx(1.0));
        CHECK(map.omegai_sq == doctest::Approx(1.0));
    }
    SUBCASE("reference coupling") {
        const ClassicalMap map = quantum_to_classical_map(paper_params());
        CHECK(map.k == doctest::Approx(-0.06).epsilon(1e-14));
        CHECK(map.omega0_sq == doctest::Approx(1.06).epsilon(1e-14));
        CHECK(map.omegai_sq == doctest::Approx(1.06).epsilon(1e-14));
        CHECK(map.drive_cl == doctest::Approx(0.0075 * std::sqrt(2.0)).epsilon(1e-14));
        CHECK(map.drive_cl == doctest::Approx(1.0607e-2).epsilon(1e-4));
    }
}

TEST_CASE("algebraic identities on random positive parameters") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> dist(0.1, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        SystemParams p;
        p.gamma_c = 0.2 * dist(rng);
        p.gamma_c_rad = p.gamma_c;
        p.gamma_e = 0.05 * dist(rng);
        p.g_col = 0.1 * dist(rng);
        p.n_emitters = 1 + trial % 3;
        p.omega_drive_amp = 0.02 * dist(rng);

        const double coop = 4.0 * p.g_col * p.g_col / (p.gamma_c * p.gamma_e);
        CHECK(effective_drive(p) ==
              doctest::Approx(p.omega_drive_amp / (coop + 1.0)).epsilon(1e-14));

        const double omega_eff = effective_drive(p);
        CHECK(weak_resonant_population(p) ==
              doctest::Approx(omega_eff * omega_eff / (p.gamma_c * p.gamma_c)).epsilon(1e-14));
    }
}

TEST_CASE("resonant coupled populations equal the weak-drive closed form") {
    for (int n : {1, 2, 3}) {
        const SystemParams p = paper_params(n);
        const ClassicalPopulations pops = co_populations(p, 1.0);
        CHECK(pops.n_c == doctest::Approx(weak_resonant_population(p)).epsilon(1e-12));
    }
}

TEST_CASE("ODE oracle: no drive, zero amplitudes") {
    const ClassicalAmplitudes amps = classical_ode_oracle(paper_params(1, 0.0), 1.0, 500.0);
    CHECK(std::abs(amps.c0) < 1e-14);
    CHECK(std::abs(amps.ci) < 1e-14);
}

TEST_CASE("ODE oracle: decoupled oscillator matches the textbook response") {
    SystemParams p = paper_params();
    p.g_col = 0.0;
    const double omega_d = 0.995;
    const ClassicalAmplitudes amps = classical_ode_oracle(p, omega_d, 2500.0);
    const Complex denom(p.omega_c * p.omega_c - omega_d * omega_d, omega_d * p.gamma_c);
    const Complex expected = p.omega_drive_amp * std::sqrt(2.0 * p.omega_c) / denom;
    CHECK(std::abs(std::abs(amps.c0) - std::abs(expected)) / std::abs(expected) < 1e-6);
}

TEST_CASE("ODE oracle agrees with the closed-form amplitudes at resonance") {
    for (int n : {1, 2}) {
        const SystemParams p = paper_params(n);
        const ClassicalAmplitudes ode = classical_ode_oracle(p, 1.0, 4000.0);
        const ClassicalAmplitudes alg = co_amplitudes(p, 1.0);
        CHECK(std::abs(std::abs(ode.c0) - std::abs(alg.c0)) / std::abs(alg.c0) < 1e-6);
        CHECK(std::abs(std::abs(ode.ci) - std::abs(alg.ci)) / std::abs(alg.ci) < 1e-6);
    }
}

TEST_CASE("ODE oracle agrees off resonance") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> detuning(-0.05, 0.05);
    const SystemParams p = paper_params();
    for (int trial = 0; trial < 5; ++trial) {
        const double omega_d = 1.0 + detuning(rng);
        const ClassicalAmplitudes ode = classical_ode_oracle(p, omega_d, 4000.0);
        const ClassicalAmplitudes alg = co_amplitudes(p, omega_d);
        CHECK(std::abs(ode.c0 - alg.c0) / std::abs(alg.c0) < 1e-6);
        CHECK(std::abs(ode.ci - alg.ci) / std::abs(alg.ci) < 1e-6);
    }
}

TEST_CASE("ODE oracle flags an unconverged transient") {
    const SystemParams p = paper_params();
    CHECK_THROWS_AS(classical_ode_oracle(p, 1.0, 40.0), SolveError);
}

}  // TEST_SUITE
