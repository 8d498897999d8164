#include "octaplan/hypgeo.hpp"

#include <cmath>

namespace octa {

Iso Iso::compose(const Iso& g) const {
    // Matrix form M = [[a, b], [conj(b), conj(a)]].  Applying g first:
    // if this->rev, the outer conjugation pulls through g's matrix entrywise,
    // so the product matrix is M_this * conj(M_g) and the flags xor.
    Iso out;
    cplx ga = g.a, gb = g.b;
    if (rev) { ga = std::conj(ga); gb = std::conj(gb); }
    out.a = a * ga + b * std::conj(gb);
    out.b = a * gb + b * std::conj(ga);
    out.rev = rev != g.rev;
    out.normalize();
    return out;
}

Iso Iso::inverse() const {
    // SU(1,1) inverse: [[conj(a), -b], [-conj(b), a]].
    Iso out;
    if (!rev) {
        out.a = std::conj(a);
        out.b = -b;
    } else {
        // (M, kappa)^{-1} = (kappa, M^{-1}) = (conj(M^{-1}), kappa).
        out.a = a;
        out.b = -std::conj(b);
    }
    out.rev = rev;
    out.normalize();
    return out;
}

void Iso::normalize() {
    double d = std::sqrt(std::norm(a) - std::norm(b));
    a /= d;
    b /= d;
    // Fix the projective sign ambiguity deterministically (same Moebius map).
    if (a.real() < 0.0 || (a.real() == 0.0 && a.imag() < 0.0)) { a = -a; b = -b; }
}

Iso identity_iso() { return Iso{}; }

Iso kappa_iso() {
    Iso k;
    k.rev = true;
    return k;
}

Iso rotation(double phi) {
    Iso r;
    r.a = std::polar(1.0, phi / 2.0);
    r.normalize();
    return r;
}

Iso boost_x(double t) {
    Iso g;
    g.a = std::cosh(t / 2.0);
    g.b = std::sinh(t / 2.0);
    return g;
}

Iso boost_to(cplx z) {
    Iso g;
    double s = std::sqrt(1.0 - std::norm(z));
    g.a = 1.0 / s;
    g.b = z / s;
    return g;
}

Iso nilpotent(double s) {
    Iso n;
    n.a = cplx(1.0, s);
    n.b = cplx(0.0, -s);
    return n;
}

KAN iwasawa_kan(const Iso& g) {
    if (g.rev) throw std::invalid_argument("iwasawa_kan: orientation-reversing input");
    // For g = k_phi a_t n_s one finds alpha + beta = e^{i phi/2} e^{t/2} and
    // Im(alpha e^{-i phi/2}) = s e^{t/2}.
    cplx ab = g.a + g.b;
    KAN out;
    out.phi = 2.0 * std::arg(ab);
    out.t = 2.0 * std::log(std::abs(ab));
    out.s = (g.a * std::polar(1.0, -out.phi / 2.0)).imag() / std::exp(out.t / 2.0);
    return out;
}

double dist_disc(cplx z, cplx w) {
    double num = std::abs(z - w);
    double den = std::abs(1.0 - std::conj(z) * w);
    return 2.0 * std::atanh(num / den);
}

double horocycle_bracket(cplx z, cplx b) {
    return std::log((1.0 - std::norm(z)) / std::norm(z - b));
}

cplx wave_eval(double rho, cplx b, cplx z) {
    return std::exp(cplx(0.5, rho) * horocycle_bracket(z, b));
}

DiscSlice theta(const TensorPoint& T) {
    if (!T.positive_definite())
        throw std::invalid_argument("theta: tensor not positive definite");
    double det = T.x1 * T.x2 - T.x3 * T.x3;
    double z3 = std::sqrt(det);
    double t1 = T.x1 / z3, t2 = T.x2 / z3, t3 = T.x3 / z3; // det-1 part
    double S = t1 + t2;
    return DiscSlice{cplx((t1 - t2) / (S + 2.0), 2.0 * t3 / (S + 2.0)), z3};
}

TensorPoint theta_inv(const DiscSlice& p) {
    double z1 = p.z.real(), z2 = p.z.imag();
    double d = 1.0 - z1 * z1 - z2 * z2;
    if (d <= 0.0 || p.z3 <= 0.0)
        throw std::invalid_argument("theta_inv: point outside the disc slice");
    double t1 = ((1.0 + z1) * (1.0 + z1) + z2 * z2) / d;
    double t2 = ((1.0 - z1) * (1.0 - z1) + z2 * z2) / d;
    double t3 = 2.0 * z2 / d;
    return TensorPoint{p.z3 * t1, p.z3 * t2, p.z3 * t3};
}

double dist_tensor(const TensorPoint& T1, const TensorPoint& T2) {
    if (!T1.positive_definite() || !T2.positive_definite())
        throw std::invalid_argument("dist_tensor: tensor not positive definite");
    // Eigenvalues of T1^{-1} T2 solve det(T2 - l T1) = 0:
    // l^2 det(T1) - l (x1 y2 + x2 y1 - 2 x3 y3) + det(T2) = 0.
    double d1 = T1.x1 * T1.x2 - T1.x3 * T1.x3;
    double d2 = T2.x1 * T2.x2 - T2.x3 * T2.x3;
    double m = T1.x1 * T2.x2 + T1.x2 * T2.x1 - 2.0 * T1.x3 * T2.x3;
    double disc = m * m - 4.0 * d1 * d2;
    if (disc < 0.0) disc = 0.0;
    double l1 = (m + std::sqrt(disc)) / (2.0 * d1);
    double l2 = (m - std::sqrt(disc)) / (2.0 * d1);
    double a = std::log(l1), b = std::log(l2);
    return std::sqrt(a * a + b * b);
}

double dist_slice(const DiscSlice& p, const DiscSlice& q) {
    // d0 in (z, z3) coordinates.  Writing T = z3 * Ttilde with det Ttilde = 1,
    // the eigenvalues of T^{-1} T' are (alpha lam, alpha/lam), so
    // d0^2 = 2 log^2 alpha + 2 log^2 lam, and |log lam| = d2(z, z')
    // (first-order check at the origin: the unit-determinant slice metric is
    // 8|dz|^2 = 2 * Poincare, so d0|slice = sqrt(2) d2, i.e. log^2 lam = d2^2).
    double dd = dist_disc(p.z, q.z);
    double dl = std::log(p.z3 / q.z3);
    return std::sqrt(2.0 * (dd * dd + dl * dl));
}

} // namespace octa
