#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "octaplan/neutral.hpp"

#include <cmath>

using namespace octa;

static const double PI = std::acos(-1.0);

TEST_CASE("Mexican-hat kernel closed form") {
    MexicanHat f; // (1, 2, 1)
    CHECK(kernel_eval(f, 0.0) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * PI) - 1.0 / std::sqrt(8.0 * PI))
              .epsilon(1e-15));
    MexicanHat flat{1.5, 1.5, 1.0};
    for (double x : {0.0, 0.3, 1.0, 4.0}) CHECK(kernel_eval(flat, x) == 0.0);
    CHECK_THROWS(kernel_eval(f, -1.0));

    // exactly one sign change on (0, inf) for theta = 1, sigma1 < sigma2
    int changes = 0;
    double prev = kernel_eval(f, 1e-6);
    for (double x = 0.01; x < truncation_radius(f); x += 0.01) {
        double v = kernel_eval(f, x);
        if (v * prev < 0.0) ++changes;
        if (v != 0.0) prev = v;
    }
    CHECK(changes == 1);
    double R = truncation_radius(f);
    CHECK(std::abs(kernel_eval(f, R)) <= 1e-12);
    CHECK(std::abs(kernel_eval(f, 2.0 * R)) < std::abs(kernel_eval(f, R)) + 1e-18);
}

TEST_CASE("spherical wave average") {
    // r = 0: the wave equals 1 at the origin
    CHECK(std::abs(phi_rho(0.7, 0.0) - 1.0) < 1e-14);
    // b-independence and realness
    for (double rho : {0.0, 0.5, 1.7})
        for (double r : {0.3, 1.0, 1.9}) {
            cplx p1 = phi_rho(rho, r, cplx{1.0, 0.0});
            cplx p2 = phi_rho(rho, r, cplx{0.0, 1.0});
            CHECK(std::abs(p1 - p2) < 1e-6);
            CHECK(std::abs(p1.imag()) < 1e-8);
            // rho <-> -rho symmetry of the spherical function
            CHECK(std::abs(phi_rho(-rho, r) - p1) < 1e-6);
        }
    // the two independent representations agree where both are accurate
    for (double rho : {0.0, 0.5, 1.7, 2.9})
        for (double r : {0.05, 0.4, 1.1, 1.9})
            CHECK(std::abs(phi_conical(rho, r) -
                           phi_rho(rho, r, cplx{1.0, 0.0}, 4096).real()) < 1e-10);
    // conical form stays bounded and decaying at radii where the angular
    // form breaks down
    CHECK(std::abs(phi_conical(0.8, 10.0)) < std::abs(phi_conical(0.8, 3.0)));
    CHECK(std::abs(phi_conical(0.8, 14.0)) < 0.1);
}

TEST_CASE("w_hat: zero kernel, realness, symmetries, b-independence") {
    MexicanHat zero{1.5, 1.5, 1.0};
    CHECK(w_hat(zero, 0.7, 1.3).value == 0.0);

    MexicanHat f;
    for (double rho : {0.0, 0.8})
        for (double beta : {1.0, 1.7}) {
            WHat w = w_hat(f, rho, beta);
            CHECK(std::abs(w.imag_part) <= 1e-8);
            // beta <-> 1/beta: cosine symmetry in log beta
            CHECK(w_hat(f, rho, 1.0 / beta).value ==
                  doctest::Approx(w.value).epsilon(1e-10));
            // rho <-> -rho
            CHECK(w_hat(f, -rho, beta).value == doctest::Approx(w.value).epsilon(1e-6));
            // b-independence
            CHECK(std::abs(w_hat(f, rho, beta, cplx{0.0, 1.0}).value - w.value) < 1e-6);
        }

    // doubling the truncation radius changes w_hat by less than the tail bound
    double R = truncation_radius(f);
    WHat w1 = w_hat(f, 0.5, 1.5);
    WHat w2 = w_hat(f, 0.5, 1.5, cplx{1.0, 0.0}, 2.0 * R);
    CHECK(std::abs(w2.value - w1.value) < w1.tail);
}

TEST_CASE("cross-check w_hat against a brute-force radial-angular oracle") {
    // independent oracle: midpoint rule in geodesic radius, brute-force
    // 16384-point angular wave average (no conical representation, no Gauss
    // panels), midpoint rule for the cos(u log beta) factor. A narrow kernel
    // keeps the truncation radius small enough (about 4.4) for the angular
    // rule to resolve the wave's boundary concentration.
    MexicanHat f{0.35, 0.6, 1.0};
    double R = truncation_radius(f);
    for (auto [rho, beta] : {std::pair{0.0, 1.0}, std::pair{0.8, 1.4}}) {
        double L = std::log(beta);
        const int NR = 1500, NU = 800;
        double acc = 0.0;
        for (int i = 0; i < NR; ++i) {
            double r = R * (i + 0.5) / NR;
            double U = std::sqrt(std::max(R * R - r * r, 0.0));
            double F = 0.0;
            for (int k = 0; k < NU; ++k) {
                double u = U * (k + 0.5) / NU;
                F += kernel_eval(f, std::sqrt(r * r + u * u)) * std::cos(u * L) *
                     (U / NU);
            }
            F *= 2.0;
            acc += phi_rho(rho, r, cplx{1.0, 0.0}, 16384).real() * std::sinh(r) * F *
                   (R / NR);
        }
        WHat w = w_hat(f, rho, beta);
        INFO("rho = ", rho, ", beta = ", beta);
        CHECK(std::abs(w.value - acc) < 5e-4 * (std::abs(acc) + 1.0));
    }
}

TEST_CASE("neutral surface") {
    // f == 0: no instability
    NeutralSurface none = neutral_surface(MexicanHat{1.5, 1.5, 1.0}, 5, 3, 1.0, 2.0);
    CHECK_FALSE(none.instability);

    // pure excitation: minimizer at the grid corner rho = 0, beta = 1
    NeutralSurface ex = neutral_surface(MexicanHat{1.0, 2.0, 0.0}, 13, 5, 2.0, 2.0);
    REQUIRE(ex.instability);
    CHECK(ex.rho_c == 0.0);
    CHECK(ex.beta_c == 1.0);
    for (double m : ex.mu)
        if (!std::isnan(m)) CHECK(m > 0.0);

    // default Mexican hat: interior minimizer with rho_c > 0
    NeutralSurface mh = neutral_surface(MexicanHat{}, 25, 5, 3.0, 2.0);
    REQUIRE(mh.instability);
    CHECK(mh.rho_c > 0.0);
    CHECK(mh.rho_c < 3.0);
    CHECK(mh.mu_c > 0.0);
    // regression baseline (deterministic quadrature)
    CHECK(mh.rho_c == doctest::Approx(1.125).epsilon(1e-9));
    CHECK(mh.beta_c == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(mh.mu_c == doctest::Approx(1.77387).epsilon(1e-3));
}
