// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Every numeric threshold is pinned here.
#include "octaplan/fem.hpp"
#include "octaplan/neutral.hpp"
#include "octaplan/planforms.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace octa;

namespace {

int g_failures = 0;

class Criterion {
public:
    Criterion(int index, const char* title) : index_(index), title_(title) {
        start_ = std::chrono::steady_clock::now();
    }
    void require(bool ok, const std::string& what) {
        if (!ok) issues_.push_back(what);
    }
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }
    void finish() {
        double t = elapsed();
        if (issues_.empty()) {
            std::printf("[PASS] criterion %d: %s (%.1f s)\n", index_, title_, t);
        } else {
            ++g_failures;
            std::printf("[FAIL] criterion %d: %s (%.1f s)\n", index_, title_, t);
            for (const auto& s : issues_) std::printf("       - %s\n", s.c_str());
        }
        std::fflush(stdout);
    }

private:
    int index_;
    const char* title_;
    std::vector<std::string> issues_;
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

// maximal isotropy types with dim(V^H) = 1, per irrep (0-based)
const std::vector<std::vector<std::string>> kMaximalIsotropy = {
    {"Gstar"},          {"G0k"},
    {"G0kp"},           {"G"},
    {"Dt8", "Q8kp"},    {"Dt8k"},
    {"Cp8k", "Cp12", "Cp4kp"},
    {"C8k", "Ct6kp", "Dt2k"},
    {"Dt6", "Dt4k"},    {"Dt6kp", "Dt4kp"},
    {"Ct2k", "Ctp2k"},  {"Dt3", "Ct3kp", "Ct2k", "Ctp2k"},
    {"Dt3", "Ct3kp", "Ct2k", "Ctp2k"},
};

// expected subgroup orders and class decompositions (class index -> count)
struct Expect {
    int order;
    std::map<int, int> decomp;
};
const std::map<std::string, Expect> kSubgroups = {
    {"G0", {24, {{0, 1}, {3, 1}, {2, 6}, {5, 8}, {6, 8}}}},
    {"Dt8", {16, {{0, 1}, {3, 1}, {1, 4}, {2, 6}, {4, 4}}}},
    {"Dt6", {12, {{0, 1}, {3, 1}, {4, 6}, {5, 2}, {6, 2}}}},
    {"C8", {8, {{0, 1}, {3, 1}, {1, 4}, {2, 2}}}},
    {"Q8", {8, {{0, 1}, {3, 1}, {2, 6}}}},
    {"Dt4", {8, {{0, 1}, {3, 1}, {2, 2}, {4, 4}}}},
    {"Ct6", {6, {{0, 1}, {3, 1}, {5, 2}, {6, 2}}}},
    {"Dt3", {6, {{0, 1}, {5, 2}, {4, 3}}}},
    {"C4", {4, {{0, 1}, {3, 1}, {2, 2}}}},
    {"Dt2", {4, {{0, 1}, {3, 1}, {4, 2}}}},
    {"Ct3", {3, {{0, 1}, {5, 2}}}},
    {"C2", {2, {{0, 1}, {3, 1}}}},
    {"Ct2", {2, {{0, 1}, {4, 1}}}},
    {"G0k", {48, {{0, 1}, {3, 1}, {2, 6}, {5, 8}, {6, 8}, {7, 6}, {10, 2}, {11, 8}, {12, 8}}}},
    {"G0kp", {48, {{0, 1}, {3, 1}, {2, 6}, {5, 8}, {6, 8}, {8, 12}, {9, 12}}}},
    {"Dt8k", {32, {{0, 1}, {3, 1}, {1, 4}, {2, 6}, {4, 4}, {7, 6}, {8, 4}, {9, 4}, {10, 2}}}},
    {"Dt6kp", {24, {{0, 1}, {3, 1}, {4, 6}, {5, 2}, {6, 2}, {8, 6}, {11, 2}, {12, 2}, {10, 2}}}},
    {"C8k", {16, {{0, 1}, {3, 1}, {1, 4}, {2, 2}, {7, 4}, {8, 4}}}},
    {"Cp8k", {16, {{0, 1}, {3, 1}, {1, 4}, {2, 2}, {7, 2}, {10, 2}, {9, 4}}}},
    {"Q8k", {16, {{0, 1}, {3, 1}, {2, 6}, {7, 6}, {10, 2}}}},
    {"Q8kp", {16, {{0, 1}, {3, 1}, {2, 6}, {8, 4}, {9, 4}}}},
    {"Dt4k", {16, {{0, 1}, {3, 1}, {2, 2}, {4, 4}, {7, 4}, {9, 4}}}},
    {"Dt4kp", {16, {{0, 1}, {3, 1}, {2, 2}, {4, 4}, {7, 2}, {8, 4}, {10, 2}}}},
    {"Cp12", {12, {{0, 1}, {3, 1}, {5, 2}, {6, 2}, {11, 2}, {12, 2}, {10, 2}}}},
    {"Ct6kp", {12, {{0, 1}, {3, 1}, {5, 2}, {6, 2}, {8, 6}}}},
    {"Cp8", {8, {{0, 1}, {3, 1}, {2, 2}, {9, 4}}}},
    {"C4k", {8, {{0, 1}, {3, 1}, {2, 2}, {7, 4}}}},
    {"C4kp", {8, {{0, 1}, {3, 1}, {2, 2}, {8, 4}}}},
    {"Dt2k", {8, {{0, 1}, {3, 1}, {4, 2}, {7, 2}, {8, 2}}}},
    {"Cp4k", {8, {{0, 1}, {3, 1}, {10, 2}, {2, 2}, {7, 2}}}},
    {"Cp4kp", {8, {{0, 1}, {3, 1}, {10, 2}, {4, 2}, {8, 2}}}},
    {"Ct3kp", {6, {{0, 1}, {5, 2}, {8, 3}}}},
    {"Cp4", {4, {{0, 1}, {3, 1}, {10, 2}}}},
    {"C2k", {4, {{0, 1}, {3, 1}, {7, 2}}}},
    {"C2kp", {4, {{0, 1}, {3, 1}, {8, 2}}}},
    {"Ct2k", {4, {{0, 1}, {4, 1}, {7, 1}, {8, 1}}}},
    {"Ctp2k", {4, {{0, 1}, {4, 1}, {7, 1}, {8, 1}}}},
    {"C1k", {2, {{0, 1}, {7, 1}}}},
    {"C1kp", {2, {{0, 1}, {8, 1}}}},
    {"G", {48, {{0, 1}, {1, 12}, {2, 6}, {3, 1}, {4, 12}, {5, 8}, {6, 8}}}},
};

// -------------------------------------------------------------------------

void criterion1(const SymGroup& G, const std::vector<SubgroupRecord>& cat) {
    Criterion c(1, "group-theory exactness");
    c.require(SymGroup::N == 96, "|G*| != 96");

    // conjugacy classes (sizes corrected for the orientation-reversing part;
    // they sum to 96 and are consistent with the character table)
    for (int k = 0; k < 13; ++k)
        c.require(G.class_size[k] == kClassSizes[k],
                  std::string("class ") + kClassLabels[k] + " size " +
                      std::to_string(G.class_size[k]) + " != " +
                      std::to_string(kClassSizes[k]));

    const auto& table = character_table();
    double worst = 0.0;
    for (int a = 0; a < 13; ++a)
        for (int b = 0; b < 13; ++b) {
            double s = 0.0;
            for (int k = 0; k < 13; ++k) s += kClassSizes[k] * table[a][k] * table[b][k];
            worst = std::max(worst, std::abs(s / 96.0 - (a == b ? 1.0 : 0.0)));
        }
    c.require(worst <= 1e-12, "character orthogonality off by " + fmt(worst));

    for (const auto& [name, exp] : kSubgroups) {
        const SubgroupRecord& H = find_subgroup(cat, name);
        c.require(static_cast<int>(H.elements.size()) == exp.order,
                  name + ": order " + std::to_string(H.elements.size()));
        for (int k = 0; k < 13; ++k) {
            auto it = exp.decomp.find(k);
            int want = it == exp.decomp.end() ? 0 : it->second;
            c.require(H.decomp[k] == want, name + ": class decomposition mismatch");
        }
    }

    for (int chi = 0; chi < 13; ++chi)
        for (const std::string& name : kMaximalIsotropy[chi])
            c.require(fixed_dim(G, chi, find_subgroup(cat, name)) == 1,
                      "dim(V^" + name + ") != 1 for chi" + std::to_string(chi + 1));
    c.require(fixed_dim(G, 4, find_subgroup(cat, "Q8")) == 2, "dim(V^Q8) != 2 for chi5");

    c.require(c.elapsed() < 10.0, "runtime over 10 s");
    c.finish();
}

// -------------------------------------------------------------------------

const double kTriangleTargets[4] = {23.0790, 91.4865, 32.6757, 222.5434};

double desym_eigenvalue(const SymGroup& G, const Mesh& tri, int chi) {
    BCRecipe bc = bc_recipe(G, chi);
    AssembledSystem sys = assemble(tri);
    std::vector<int> fixed;
    auto add = [&](char cond, const char* tag) {
        if (cond != 'D') return;
        for (int v : tri.tagged_nodes(tag)) fixed.push_back(v);
    };
    add(bc.pq, "PQ");
    add(bc.pr, "RP");
    add(bc.qr, "QR");
    sys = apply_dirichlet(sys, fixed);
    int k = chi == 0 ? 2 : 1; // chi1 has a constant zero mode
    EigenResult res = solve_smallest(sys, k);
    return res.eigenvalues[k - 1];
}

void criterion2(const SymGroup& G, double coarse[4]) {
    Criterion c(2, "desymmetrized eigenvalues vs reference values");
    Mesh tri = mesh_triangle(3000);    // subdivision 76, 3003 nodes
    Mesh fine = mesh_triangle(11781);  // one uniform refinement: subdivision 152
    c.require(fine.subdivision == 2 * tri.subdivision, "refinement is not uniform");
    for (int chi = 0; chi < 4; ++chi) {
        auto t0 = std::chrono::steady_clock::now();
        double lam = desym_eigenvalue(G, tri, chi);
        double lam_fine = desym_eigenvalue(G, fine, chi);
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                        .count();
        coarse[chi] = lam;
        double target = kTriangleTargets[chi];
        std::string tag = "chi" + std::to_string(chi + 1);
        c.require(lam >= target * (1.0 - 1e-6) && lam <= target * 1.03,
                  tag + ": " + fmt(lam) + " not within +3% of " + fmt(target));
        // the reference values carry their own discretization error, so the
        // refined value may land slightly below them; it must still be close
        c.require(lam_fine <= lam && std::abs(lam_fine - target) <= 0.03 * target,
                  tag + ": refinement " + fmt(lam_fine) + " not monotone toward " +
                      fmt(target));
        c.require(dt < 120.0, tag + ": runtime over 2 min");
    }
    c.finish();
}

// -------------------------------------------------------------------------

const double kPeriodicFirst = 3.8432;
const double kPeriodicPresent[4] = {8.2501, 15.0518, 28.0888, 73.7323};

void criterion3(const PlanformPipeline& pl, std::vector<Eigenspace>& spaces,
                std::vector<double>& lambdas) {
    Criterion c(3, "periodic spectrum of the octagon");
    spaces = solve_periodic(pl, 100);

    lambdas.clear();
    for (const Eigenspace& s : spaces)
        for (int k = 0; k < s.basis.cols(); ++k) lambdas.push_back(s.lambda);
    c.require(lambdas.size() >= 100, "fewer than 100 eigenvalues resolved");

    c.require(!spaces.empty() && std::abs(spaces[0].lambda) < 1e-8 &&
                  spaces[0].basis.cols() == 1,
              "lambda_1 != 0 with multiplicity 1");

    double first_nonzero = 0.0;
    for (double l : lambdas)
        if (l > 1e-8) {
            first_nonzero = l;
            break;
        }
    c.require(std::abs(first_nonzero - kPeriodicFirst) <= 0.03 * kPeriodicFirst,
              "first nonzero " + fmt(first_nonzero) + " not within 3% of " +
                  fmt(kPeriodicFirst));

    for (double target : kPeriodicPresent) {
        bool found = false;
        for (double l : lambdas)
            if (std::abs(l - target) <= 0.03 * target) found = true;
        c.require(found, fmt(target) + " missing from the spectrum (3%)");
    }

    for (double l : lambdas)
        c.require(!(l > 1e-8 && l <= 0.25), "exceptional eigenvalue " + fmt(l));

    for (const Eigenspace& s : spaces) {
        if (s.first_index >= 100) continue;
        int dim = static_cast<int>(s.basis.cols());
        c.require(dim >= 1 && dim <= 4,
                  "multiplicity " + std::to_string(dim) + " at lambda " + fmt(s.lambda));
        c.require(s.deviation <= 0.1,
                  "classification deviation " + fmt(s.deviation) + " at lambda " +
                      fmt(s.lambda));
    }
    c.require(c.elapsed() < 600.0, "runtime over 10 min");
    c.finish();
}

void criterion4(const std::vector<double>& lambdas) {
    Criterion c(4, "Weyl staircase slope");
    Eigen::VectorXd v(std::min<std::size_t>(lambdas.size(), 100));
    for (int i = 0; i < v.size(); ++i) v[i] = lambdas[i];
    Staircase st = weyl_staircase(v);
    c.require(std::abs(st.slope - 1.0) <= 0.1, "slope " + fmt(st.slope) + " not 1 +- 0.1");
    c.finish();
}

// -------------------------------------------------------------------------

void criterion5() {
    Criterion c(5, "geometry property suite");
    std::mt19937 rng(2026);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    auto rand_disc = [&](double rmax) {
        for (;;) {
            cplx z(U(rng), U(rng));
            if (std::abs(z) < rmax) return z;
        }
    };
    auto rand_iso = [&] {
        Iso g = boost_to(rand_disc(0.9)).compose(rotation(3.0 * U(rng)));
        if (U(rng) > 0.0) g = g.compose(kappa_iso());
        return g;
    };

    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        cplx z = rand_disc(0.95), w = rand_disc(0.95);
        Iso g = rand_iso();
        worst = std::max(worst,
                         std::abs(dist_disc(g.apply(z), g.apply(w)) - dist_disc(z, w)));
    }
    c.require(worst <= 1e-10, "distance invariance off by " + fmt(worst));

    worst = 0.0;
    std::uniform_real_distribution<double> P(0.2, 3.0), V(-0.9, 0.9);
    for (int i = 0; i < 500; ++i) {
        double x1 = P(rng), x2 = P(rng);
        TensorPoint T{x1, x2, V(rng) * std::sqrt(x1 * x2)};
        TensorPoint rt = theta_inv(theta(T));
        worst = std::max({worst, std::abs(rt.x1 - T.x1), std::abs(rt.x2 - T.x2),
                          std::abs(rt.x3 - T.x3)});
    }
    c.require(worst <= 1e-12, "theta round trip off by " + fmt(worst));

    worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        double x1 = P(rng), x2 = P(rng);
        TensorPoint T1{x1, x2, V(rng) * std::sqrt(x1 * x2)};
        double y1 = P(rng), y2 = P(rng);
        TensorPoint T2{y1, y2, V(rng) * std::sqrt(y1 * y2)};
        worst = std::max(worst,
                         std::abs(dist_tensor(T1, T2) - dist_slice(theta(T1), theta(T2))));
    }
    c.require(worst <= 1e-10, "tensor/slice distance consistency off by " + fmt(worst));

    // -Delta_D e = (rho^2 + 1/4) e, finite differences of order h^2
    cplx z(0.2, 0.1), b(1.0, 0.0);
    double rho = 1.0;
    auto resid = [&](double h) {
        cplx lap = (wave_eval(rho, b, z + h) + wave_eval(rho, b, z - h) +
                    wave_eval(rho, b, z + cplx(0, h)) + wave_eval(rho, b, z - cplx(0, h)) -
                    4.0 * wave_eval(rho, b, z)) /
                   (h * h);
        double w = (1.0 - std::norm(z)) * (1.0 - std::norm(z)) / 4.0;
        return std::abs(-w * lap - (rho * rho + 0.25) * wave_eval(rho, b, z));
    };
    double r1 = resid(1e-2), r2 = resid(5e-3);
    c.require(std::abs(r1 / r2 - 4.0) <= 0.6 && r2 < 1e-3,
              "eigenwave FD order: ratio " + fmt(r1 / r2) + ", resid " + fmt(r2));

    c.require(c.elapsed() < 30.0, "runtime over 30 s");
    c.finish();
}

// -------------------------------------------------------------------------

void criterion6(const SymGroup& G, const Tessellation& tess) {
    Criterion c(6, "oracle equivalence (eigensolver and horocycle bracket)");

    auto compare = [&](const AssembledSystem& sys, const std::string& tag) {
        int n = std::min<int>(10, sys.K.rows());
        EigenResult dense = solve_smallest(sys, n, SolveMethod::Dense);
        EigenResult sparse = solve_smallest(sys, n, SolveMethod::Lanczos);
        for (int i = 0; i < n; ++i) {
            double diff = std::abs(dense.eigenvalues[i] - sparse.eigenvalues[i]) /
                          std::max(1.0, std::abs(dense.eigenvalues[i]));
            c.require(diff <= 1e-8, tag + ": eigenvalue " + std::to_string(i) +
                                        " differs by " + fmt(diff));
        }
    };

    for (int target : {66, 153, 300}) {
        Mesh tri = mesh_triangle(target);
        compare(assemble(tri), "triangle Neumann " + std::to_string(target));
        AssembledSystem sys = assemble(tri);
        std::vector<int> fixed = tri.boundary_nodes();
        compare(apply_dirichlet(sys, fixed), "triangle Dirichlet " + std::to_string(target));
    }
    for (int refinement : {0, 1}) {
        Mesh oct = mesh_octagon(refinement, tess);
        compare(apply_periodic(assemble(oct), oct),
                "octagon periodic refinement " + std::to_string(refinement));
    }
    (void)G;

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> U(-1.0, 1.0), A(0.0, 2.0 * M_PI);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        cplx z(U(rng), U(rng));
        if (std::abs(z) >= 0.9) {
            --i;
            continue;
        }
        cplx b = std::polar(1.0, A(rng));
        // geometric oracle: signed hyperbolic distance from the origin to the
        // intersection of the horocycle through z (tangent at b) with [0, b)
        double re = std::norm(z - b) / (2.0 * (1.0 - (z * std::conj(b)).real()));
        double oracle = 2.0 * std::atanh(1.0 - 2.0 * re);
        worst = std::max(worst, std::abs(horocycle_bracket(z, b) - oracle));
    }
    c.require(worst <= 1e-9, "horocycle bracket vs length oracle off by " + fmt(worst));
    c.finish();
}

// -------------------------------------------------------------------------

void criterion7(const PlanformPipeline& pl, const std::vector<Eigenspace>& spaces) {
    Criterion c(7, "isotropy of computed planforms");
    const SymGroup& G = pl.group();
    const auto& cat = pl.catalog();

    auto invariance = [&](const Planform& p, const SubgroupRecord& H) {
        double nrm = std::sqrt(pl.m_inner(p.values, p.values));
        double worst = 0.0;
        for (int h : H.elements) {
            Eigen::VectorXd d = pl.act(h, p.values) - p.values;
            worst = std::max(worst, std::sqrt(pl.m_inner(d, d)) / nrm);
        }
        return worst;
    };

    // pairs realized by the desymmetrized solves (criterion 2 outputs)
    Mesh tri = mesh_triangle((pl.octagon().subdivision + 1) *
                             (pl.octagon().subdivision + 2) / 2);
    int checked = 0;
    for (int chi = 0; chi < 4; ++chi) {
        Planform p = solve_desymmetrized(pl, chi, tri);
        const SubgroupRecord& H = find_subgroup(cat, kMaximalIsotropy[chi][0]);
        double dev = invariance(p, H);
        c.require(dev <= 1e-3, "chi" + std::to_string(chi + 1) + "/" + H.name +
                                   " desymmetrized: " + fmt(dev));
        ++checked;
    }

    // pairs realized in the periodic spectrum (criterion 3 outputs)
    std::set<std::string> seen;
    for (const Eigenspace& s : spaces) {
        if (s.first_index >= 100 || s.label.empty()) continue;
        int chi = std::atoi(s.label.c_str() + 3) - 1;
        for (const std::string& name : kMaximalIsotropy[chi]) {
            std::string key = s.label + "/" + name;
            if (seen.count(key)) continue;
            Planform p = project_isotropy(pl, s, find_subgroup(cat, name));
            if (p.empty()) continue;
            seen.insert(key);
            double dev = invariance(p, find_subgroup(cat, name));
            c.require(dev <= 1e-3, key + " periodic: " + fmt(dev));
            ++checked;
        }
    }
    c.require(checked >= 15, "only " + std::to_string(checked) + " pairs realized");
    (void)G;
    c.finish();
}

// -------------------------------------------------------------------------

void criterion8() {
    Criterion c(8, "neutral stability surface properties");
    MexicanHat f;
    for (double rho : {0.0, 0.8})
        for (double beta : {1.0, 1.7}) {
            WHat w = w_hat(f, rho, beta);
            c.require(std::abs(w.imag_part) <= 1e-6,
                      "imag(w_hat) = " + fmt(w.imag_part));
            double wb = w_hat(f, rho, beta, cplx{0.0, 1.0}).value;
            c.require(std::abs(wb - w.value) <= 1e-6,
                      "b-dependence " + fmt(std::abs(wb - w.value)));
            double winv = w_hat(f, rho, 1.0 / beta).value;
            c.require(std::abs(winv - w.value) <= 1e-10,
                      "beta <-> 1/beta asymmetry " + fmt(std::abs(winv - w.value)));
        }

    NeutralSurface ex = neutral_surface(MexicanHat{1.0, 2.0, 0.0}, 13, 5, 2.0, 2.0);
    c.require(ex.instability && ex.rho_c == 0.0 && ex.beta_c == 1.0,
              "theta=0 minimizer not at (rho, beta) = (0, 1)");

    // regression baseline for the default Mexican hat (interior minimizer)
    NeutralSurface mh = neutral_surface(MexicanHat{}, 25, 5, 3.0, 2.0);
    c.require(mh.instability, "no instability for the default kernel");
    c.require(std::abs(mh.rho_c - 1.125) <= 1e-9 && std::abs(mh.beta_c - 1.0) <= 1e-9 &&
                  std::abs(mh.mu_c - 1.77387) <= 1e-3,
              "baseline drifted: rho_c " + fmt(mh.rho_c) + ", beta_c " + fmt(mh.beta_c) +
                  ", mu_c " + fmt(mh.mu_c));
    c.require(mh.rho_c > 0.0 && mh.rho_c < 3.0, "minimizer not interior in rho");
    c.finish();
}

} // namespace

int main() {
    LatticeGenerators gens = build_generators();
    Tessellation tess = build_tessellation(gens);
    SymGroup G = build_group(tess);
    std::vector<SubgroupRecord> cat = subgroup_catalog(G);

    criterion1(G, cat);

    double coarse[4] = {0, 0, 0, 0};
    criterion2(G, coarse);

    PlanformPipeline pl(tess, G, 8); // subdivision 9, 3886 periodic dofs
    std::vector<Eigenspace> spaces;
    std::vector<double> lambdas;
    criterion3(pl, spaces, lambdas);
    criterion4(lambdas);
    criterion5();
    criterion6(G, tess);
    criterion7(pl, spaces);
    criterion8();

    if (g_failures == 0) {
        std::printf("acceptance: all 8 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return 1;
}
