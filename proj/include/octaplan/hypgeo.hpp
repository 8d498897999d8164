// Poincare-disc geometry: isometries, distances, the structure-tensor
// coordinate change, horocycle bracket, and hyperbolic plane waves.
#pragma once

#include <complex>
#include <stdexcept>

namespace octa {

using cplx = std::complex<double>;

// Disc isometry z -> (a z + b)/(conj(b) z + conj(a)) with |a|^2 - |b|^2 = 1
// (SU(1,1)), optionally precomposed with the reflection kappa: z -> conj(z).
struct Iso {
    cplx a{1.0, 0.0};
    cplx b{0.0, 0.0};
    bool rev = false;

    cplx apply(cplx z) const {
        if (rev) z = std::conj(z);
        return (a * z + b) / (std::conj(b) * z + std::conj(a));
    }
    // Composition acting left-to-right on points: (f.compose(g)).apply(z) ==
    // f.apply(g.apply(z)).
    Iso compose(const Iso& g) const;
    Iso inverse() const;
    // Rescale so |a|^2 - |b|^2 = 1 exactly; controls floating-point drift.
    void normalize();
};

Iso identity_iso();
Iso kappa_iso();                 // z -> conj(z)
Iso rotation(double phi);        // r_phi: z -> e^{i phi} z
Iso boost_x(double t);           // a_t along the real axis; a_t . 0 = tanh(t/2)
Iso boost_to(cplx z);            // the boost mapping 0 to z
Iso nilpotent(double s);         // n_s of the Iwasawa N subgroup (fixes b = 1)

// g = k_phi a_t n_s (Iwasawa KAN); returns (phi, t, s).
struct KAN { double phi, t, s; };
KAN iwasawa_kan(const Iso& g);

double dist_disc(cplx z, cplx w);

// Horocycle bracket <z, b> = log((1 - |z|^2)/|z - b|^2), |b| = 1.
double horocycle_bracket(cplx z, cplx b);

// Hyperbolic plane wave e_{rho,b}(z) = exp((i rho + 1/2) <z, b>);
// eigenfunction of -Delta_D with eigenvalue rho^2 + 1/4.
cplx wave_eval(double rho, cplx b, cplx z);

// Structure tensor [[x1, x3], [x3, x2]], symmetric positive definite.
struct TensorPoint {
    double x1, x2, x3;
    bool positive_definite() const { return x1 > 0.0 && x1 * x2 - x3 * x3 > 0.0; }
};

// Diffeomorphism SDP(2) ~ D x R+: T = z3 * Ttilde(z), det Ttilde = 1.
struct DiscSlice { cplx z; double z3; };
DiscSlice theta(const TensorPoint& T);
TensorPoint theta_inv(const DiscSlice& p);

// d0(T1, T2) = sqrt(log^2 l1 + log^2 l2), l_i eigenvalues of T1^{-1} T2.
double dist_tensor(const TensorPoint& T1, const TensorPoint& T2);

// dist_tensor expressed in (z, z3) coordinates:
// sqrt(dist_disc(z, z')^2 + log^2(z3/z3')).
double dist_slice(const DiscSlice& p, const DiscSlice& q);

} // namespace octa
