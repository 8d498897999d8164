#include "octaplan/neutral.hpp"

#include "octaplan/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace octa {

namespace {

const double PI = std::acos(-1.0);

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
struct GaussRule {
    std::vector<double> x, w;
};

GaussRule gauss_legendre(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

// Composite rule on [0, L]: unit panels, 32 Gauss points each.
struct CompositeRule {
    std::vector<double> x, w;
};

CompositeRule composite_rule(double L) {
    static const GaussRule base = gauss_legendre(32);
    CompositeRule r;
    int panels = std::max(1, static_cast<int>(std::ceil(L)));
    double h = L / panels;
    for (int p = 0; p < panels; ++p) {
        double a = p * h;
        for (int k = 0; k < 32; ++k) {
            r.x.push_back(a + 0.5 * h * (base.x[k] + 1.0));
            r.w.push_back(0.5 * h * base.w[k]);
        }
    }
    return r;
}

} // namespace

double kernel_eval(const MexicanHat& f, double x) {
    if (x < 0.0) throw std::invalid_argument("kernel_eval: x < 0");
    double a = std::exp(-x * x / (2.0 * f.sigma1 * f.sigma1)) /
               std::sqrt(2.0 * PI * f.sigma1 * f.sigma1);
    double b = std::exp(-x * x / (2.0 * f.sigma2 * f.sigma2)) /
               std::sqrt(2.0 * PI * f.sigma2 * f.sigma2);
    return a - f.theta * b;
}

double truncation_radius(const MexicanHat& f) {
    auto envelope = [&](double x) {
        return std::exp(-x * x / (2.0 * f.sigma1 * f.sigma1)) /
                   std::sqrt(2.0 * PI * f.sigma1 * f.sigma1) +
               std::abs(f.theta) * std::exp(-x * x / (2.0 * f.sigma2 * f.sigma2)) /
                   std::sqrt(2.0 * PI * f.sigma2 * f.sigma2);
    };
    double lo = 0.0, hi = 1.0;
    while (envelope(hi) > 1e-12) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (envelope(mid) > 1e-12 ? lo : hi) = mid;
    }
    return hi;
}

cplx phi_rho(double rho, double r, cplx b, int n_angle) {
    double rad = std::tanh(r / 2.0);
    std::vector<double> xs(n_angle), ys(n_angle), re(n_angle), im(n_angle);
    for (int k = 0; k < n_angle; ++k) {
        double th = 2.0 * PI * k / n_angle;
        xs[k] = rad * std::cos(th);
        ys[k] = rad * std::sin(th);
    }
    kernels::wave(xs.data(), ys.data(), -rho, b.real(), b.imag(), re.data(), im.data(),
                  static_cast<std::size_t>(n_angle));
    cplx sum = 0.0;
    for (int k = 0; k < n_angle; ++k) sum += cplx(re[k], im[k]);
    return sum / static_cast<double>(n_angle);
}

double phi_conical(double rho, double r) {
    if (r < 1e-12) return 1.0;
    // P_{-1/2+i rho}(cosh r) = (sqrt2/pi) int_0^r cos(rho t)/sqrt(cosh r - cosh t) dt
    // with t = r - w^2 (removes the inverse-square-root endpoint singularity):
    // cosh r - cosh(r - w^2) = 2 sinh(r - w^2/2) sinh(w^2/2)
    static const GaussRule base = gauss_legendre(128);
    double W = std::sqrt(r);
    double acc = 0.0;
    for (int k = 0; k < 128; ++k) {
        double w = 0.5 * W * (base.x[k] + 1.0);
        double denom = 2.0 * std::sinh(r - 0.5 * w * w) * std::sinh(0.5 * w * w);
        double g = w < 1e-8 ? 2.0 / std::sqrt(std::sinh(r)) // limit of 2w/sqrt(denom)
                            : 2.0 * w / std::sqrt(denom);
        acc += 0.5 * W * base.w[k] * std::cos(rho * (r - w * w)) * g;
    }
    return acc * std::sqrt(2.0) / PI;
}

namespace {

// Hybrid wave average: the spec-form angular quadrature (keeps the base
// point b in play) where it is accurate, the conical form beyond.
cplx phi_eval(double rho, double r, cplx b) {
    if (r <= 2.0) return phi_rho(rho, r, b);
    return phi_conical(rho, r);
}

} // namespace

WHat w_hat(const MexicanHat& f, double rho, double beta, cplx b, double radius_override) {
    if (beta <= 0.0) throw std::invalid_argument("w_hat: beta <= 0");
    const double R = radius_override > 0.0 ? radius_override : truncation_radius(f);
    const double L = std::log(beta);
    CompositeRule rr = composite_rule(R);

    cplx acc = 0.0;
    for (std::size_t i = 0; i < rr.x.size(); ++i) {
        double r = rr.x[i];
        // F_beta(r) = 2 int_0^{U} f(sqrt(r^2+u^2)) cos(u L) du, U^2 = R^2 - r^2
        double U = std::sqrt(std::max(R * R - r * r, 0.0));
        double F = 0.0;
        if (U > 0.0) {
            CompositeRule ru = composite_rule(U);
            for (std::size_t j = 0; j < ru.x.size(); ++j) {
                double u = ru.x[j];
                F += ru.w[j] * kernel_eval(f, std::sqrt(r * r + u * u)) * std::cos(u * L);
            }
            F *= 2.0;
        }
        acc += rr.w[i] * phi_eval(rho, r, b) * std::sinh(r) * F;
    }
    WHat out;
    out.value = acc.real();
    out.imag_part = acc.imag();
    // tail bound: envelope value at R times the (small) annulus volume factor
    out.tail = 1e-12 * 2.0 * PI * R * std::sinh(R);
    return out;
}

NeutralSurface neutral_surface(const MexicanHat& f, int n_rho, int n_beta, double rho_max,
                               double beta_max) {
    if (n_rho < 2 || n_beta < 1) throw std::invalid_argument("neutral_surface: bad grid");
    NeutralSurface s;
    for (int i = 0; i < n_rho; ++i) s.rhos.push_back(rho_max * i / (n_rho - 1));
    for (int j = 0; j < n_beta; ++j)
        s.betas.push_back(n_beta == 1 ? 1.0
                                      : std::exp(std::log(beta_max) * j / (n_beta - 1)));

    const double R = truncation_radius(f);
    CompositeRule rr = composite_rule(R);
    const std::size_t nq = rr.x.size();

    // radial profiles per rho (beta-independent) and per beta (rho-independent)
    std::vector<std::vector<cplx>> phi(n_rho, std::vector<cplx>(nq));
    for (int i = 0; i < n_rho; ++i)
        for (std::size_t q = 0; q < nq; ++q)
            phi[i][q] = phi_eval(s.rhos[i], rr.x[q], cplx{1.0, 0.0});
    std::vector<std::vector<double>> F(n_beta, std::vector<double>(nq, 0.0));
    for (int j = 0; j < n_beta; ++j) {
        double L = std::log(s.betas[j]);
        for (std::size_t q = 0; q < nq; ++q) {
            double r = rr.x[q];
            double U = std::sqrt(std::max(R * R - r * r, 0.0));
            if (U <= 0.0) continue;
            CompositeRule ru = composite_rule(U);
            double acc = 0.0;
            for (std::size_t k = 0; k < ru.x.size(); ++k)
                acc += ru.w[k] * kernel_eval(f, std::sqrt(r * r + ru.x[k] * ru.x[k])) *
                       std::cos(ru.x[k] * L);
            F[j][q] = 2.0 * acc;
        }
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.what.assign(static_cast<std::size_t>(n_rho) * n_beta, 0.0);
    s.mu.assign(s.what.size(), nan);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_rho; ++i)
        for (int j = 0; j < n_beta; ++j) {
            cplx acc = 0.0;
            for (std::size_t q = 0; q < nq; ++q)
                acc += rr.w[q] * phi[i][q] * std::sinh(rr.x[q]) * F[j][q];
            double w = acc.real();
            std::size_t idx = static_cast<std::size_t>(i) * n_beta + j;
            s.what[idx] = w;
            if (w > 0.0) {
                s.instability = true;
                s.mu[idx] = 1.0 / w;
                if (s.mu[idx] < best) {
                    best = s.mu[idx];
                    s.rho_c = s.rhos[i];
                    s.beta_c = s.betas[j];
                    s.mu_c = s.mu[idx];
                }
            }
        }
    return s;
}

} // namespace octa
