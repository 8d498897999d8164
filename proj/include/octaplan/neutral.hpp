// Linear stability of the trivial state: Mexican-hat kernel, hyperbolic
// Fourier transform w_hat(rho, beta), and the neutral stability surface
// mu(rho, beta) = 1 / w_hat where w_hat > 0.
#pragma once

#include "octaplan/hypgeo.hpp"

#include <vector>

namespace octa {

struct MexicanHat {
    double sigma1 = 1.0;
    double sigma2 = 2.0;
    double theta = 1.0; // inhibition weight, <= 1
};

// f(x) = (2 pi s1^2)^{-1/2} exp(-x^2 / 2 s1^2) - theta (2 pi s2^2)^{-1/2} exp(-x^2 / 2 s2^2)
double kernel_eval(const MexicanHat& f, double x);

// Radius beyond which |f| < 1e-12 (envelope bound).
double truncation_radius(const MexicanHat& f);

// Spherical average of the wave e_{-rho, b} over the geodesic circle of
// radius r centered at the origin (64-point angular quadrature). The result
// is b-independent; b is exposed for that very check. Accurate for r up to
// about 2: beyond that the wave concentrates near the boundary on an angular
// scale e^{-r} that fixed-count quadrature cannot resolve.
cplx phi_rho(double rho, double r, cplx b = cplx{1.0, 0.0}, int n_angle = 64);

// The same spherical average through the Mehler-Dirichlet representation of
// the conical function P_{-1/2 + i rho}(cosh r): accurate at every radius,
// manifestly real and b-free. Agrees with phi_rho where both are accurate.
double phi_conical(double rho, double r);

struct WHat {
    double value = 0.0;
    double imag_part = 0.0; // diagnostics; |imag| <= 1e-8
    double tail = 0.0;      // truncation tail estimate
};

// w_hat(rho, beta) = int_0^R phi_rho(r) sinh(r) F_beta(r) dr with
// F_beta(r) = 2 int_0^{U(r)} f(sqrt(r^2 + u^2)) cos(u log beta) du.
// Gauss-Legendre panels, 32 points per unit length. radius_override = 0
// uses truncation_radius(f); larger values let callers check the tail bound.
WHat w_hat(const MexicanHat& f, double rho, double beta, cplx b = cplx{1.0, 0.0},
           double radius_override = 0.0);

struct NeutralSurface {
    std::vector<double> rhos;  // ascending, starting at 0
    std::vector<double> betas; // ascending, starting at 1
    std::vector<double> what;  // row-major [i_rho * n_beta + i_beta]
    std::vector<double> mu;    // 1/what where what > 0, NaN elsewhere
    bool instability = false;  // some what > 0
    double rho_c = 0.0, beta_c = 1.0, mu_c = 0.0; // grid minimizer of mu
};

NeutralSurface neutral_surface(const MexicanHat& f, int n_rho = 31, int n_beta = 11,
                               double rho_max = 3.0, double beta_max = 4.0);

} // namespace octa
