#include "octaplan/symgroup.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace octa {

const std::array<const char*, 13> kClassLabels = {
    "Id", "rho", "rho2", "-Id", "sigma", "eps", "-eps",
    "kappa", "kappa'", "sighat_kappa", "rho_sighat_kappa", "eps_kappa", "-eps_kappa"};

// Reversing-class sizes as forced by character-table column orthogonality
// (sum_j |chi_j(g)|^2 = 96/|class|) and confirmed by the computed group.
const std::array<int, 13> kClassSizes = {1, 12, 6, 1, 12, 8, 8, 6, 12, 12, 2, 8, 8};

const std::array<std::array<double, 13>, 13>& character_table() {
    static const double s3 = std::sqrt(3.0);
    static const std::array<std::array<double, 13>, 13> T = {{
        {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
        {1, -1, 1, 1, -1, 1, 1, 1, -1, -1, 1, 1, 1},
        {1, -1, 1, 1, -1, 1, 1, -1, 1, 1, -1, -1, -1},
        {1, 1, 1, 1, 1, 1, 1, -1, -1, -1, -1, -1, -1},
        {2, 0, 2, 2, 0, -1, -1, -2, 0, 0, -2, 1, 1},
        {2, 0, 2, 2, 0, -1, -1, 2, 0, 0, 2, -1, -1},
        {3, 1, -1, 3, -1, 0, 0, -1, -1, 1, 3, 0, 0},
        {3, 1, -1, 3, -1, 0, 0, 1, 1, -1, -3, 0, 0},
        {3, -1, -1, 3, 1, 0, 0, 1, -1, 1, -3, 0, 0},
        {3, -1, -1, 3, 1, 0, 0, -1, 1, -1, 3, 0, 0},
        {4, 0, 0, -4, 0, -2, 2, 0, 0, 0, 0, 0, 0},
        {4, 0, 0, -4, 0, 1, -1, 0, 0, 0, 0, s3, -s3},
        {4, 0, 0, -4, 0, 1, -1, 0, 0, 0, 0, -s3, s3},
    }};
    return T;
}

double SymGroup::character(int chi, int g) const {
    return character_table()[chi][class_of[g]];
}

SymGroup build_group(const Tessellation& tess) {
    SymGroup G;
    G.tess = &tess;
    const int n = SymGroup::N;
    if (static_cast<int>(tess.tiles.size()) != n)
        throw std::runtime_error("build_group: tessellation must have 96 tiles");

    G.mult.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            int k = tess.find_tile(tess.tiles[i].iso.compose(tess.tiles[j].iso));
            if (k < 0) throw std::runtime_error("build_group: closure failure");
            G.mult[i][j] = k;
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (G.mult[i][j] == 0) G.inv[i] = j;
    for (int i = 0; i < n; ++i) {
        int o = 1, x = i;
        while (x != 0) { x = G.mult[x][i]; ++o; }
        G.order[i] = (i == 0) ? 1 : o;
    }

    // named elements
    auto locate = [&](const Iso& iso) {
        int k = tess.find_tile(iso);
        if (k < 0) throw std::runtime_error("build_group: named element not found");
        return k;
    };
    G.rho = locate(rho_gen());
    G.sigma = locate(sigma_gen());
    G.eps = locate(eps_gen());
    G.kappa = locate(kappa_iso());
    G.rho2 = G.mul(G.rho, G.rho);
    G.mId = G.mul(G.rho2, G.rho2);
    G.meps = G.mul(G.mId, G.eps);
    G.kappap = G.mul(G.rho, G.kappa);   // kappa' = rho kappa
    G.kappapp = G.mul(G.sigma, G.kappa); // kappa'' = sigma kappa
    G.sighat = G.mul(G.mul(G.eps, G.sigma), G.inv[G.eps]);
    G.sigtil = G.mul(G.mul(G.rho2, G.sigma), G.inv[G.rho2]);
    G.shk = G.mul(G.sighat, G.kappa);
    G.rshk = G.mul(G.rho, G.shk);
    G.ek = G.mul(G.eps, G.kappa);
    G.mek = G.mul(G.mId, G.ek);
    G.rs = G.mul(G.rho2, G.sigma);
    G.srs = G.mul(G.mul(G.sigma, G.rho2), G.sigma);

    // conjugacy classes, then put them in the canonical order
    std::array<int, SymGroup::N> raw_class;
    raw_class.fill(-1);
    std::vector<std::vector<int>> raw;
    for (int i = 0; i < n; ++i) {
        if (raw_class[i] >= 0) continue;
        std::set<int> c;
        for (int g = 0; g < n; ++g) c.insert(G.mult[G.mult[g][i]][G.inv[g]]);
        int ci = static_cast<int>(raw.size());
        raw.emplace_back(c.begin(), c.end());
        for (int x : c) raw_class[x] = ci;
    }
    if (raw.size() != 13)
        throw std::runtime_error("build_group: expected 13 conjugacy classes");
    const int reps[13] = {G.id,    G.rho,    G.rho2, G.mId, G.sigma, G.eps, G.meps,
                          G.kappa, G.kappap, G.shk,  G.rshk, G.ek,    G.mek};
    std::array<int, 13> seen{};
    for (int c = 0; c < 13; ++c) {
        int rc = raw_class[reps[c]];
        if (seen[rc]++) throw std::runtime_error("build_group: class representatives collide");
        G.class_rep[c] = reps[c];
        G.class_size[c] = static_cast<int>(raw[rc].size());
        for (int x : raw[rc]) G.class_of[x] = c;
    }
    return G;
}

bool element_equal(const SymGroup& G, int g, int h) {
    return G.reversing(g) == G.reversing(h) && G.perm(g) == G.perm(h);
}

namespace {

std::vector<int> closure(const SymGroup& G, const std::vector<int>& gen) {
    std::set<int> s{0};
    std::vector<int> frontier;
    for (int g : gen)
        if (s.insert(g).second) frontier.push_back(g);
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int a : frontier)
            for (int b : std::vector<int>(s.begin(), s.end()))
                for (int c : {G.mul(a, b), G.mul(b, a)})
                    if (s.insert(c).second) next.push_back(c);
        frontier = std::move(next);
    }
    return {s.begin(), s.end()};
}

} // namespace

std::vector<SubgroupRecord> subgroup_catalog(const SymGroup& G) {
    struct Spec {
        const char* name;
        const char* word;
        std::vector<int> gens;
    };
    const std::vector<Spec> specs = {
        // subgroups of G
        {"G0", "<rho^2, eps>", {G.rho2, G.eps}},
        {"Dt8", "<rho, sighat>", {G.rho, G.sighat}},
        {"Dt6", "<-eps, sigtil>", {G.meps, G.sigtil}},
        {"C8", "<rho>", {G.rho}},
        {"Q8", "<rho^2, sigma rho^2 sigma>", {G.rho2, G.srs}},
        {"Dt4", "<rho^2, sighat>", {G.rho2, G.sighat}},
        {"Ct6", "<-eps>", {G.meps}},
        {"Dt3", "<eps, sigtil>", {G.eps, G.sigtil}},
        {"C4", "<rho^2>", {G.rho2}},
        {"Dt2", "<-Id, sigma>", {G.mId, G.sigma}},
        {"Ct3", "<eps>", {G.eps}},
        {"C2", "<-Id>", {G.mId}},
        {"Ct2", "<sigma>", {G.sigma}},
        // subgroups of G* not contained in G
        {"G0k", "<G0, kappa>", {G.rho2, G.eps, G.kappa}},
        {"G0kp", "<G0, kappa'>", {G.rho2, G.eps, G.kappap}},
        {"Dt8k", "<Dt8, kappa>", {G.rho, G.sighat, G.kappa}},
        {"Dt6kp", "<Dt6, kappa'>", {G.meps, G.sigtil, G.kappap}},
        {"C8k", "<C8, kappa>", {G.rho, G.kappa}},
        {"Cp8k", "<rho^2 sigma, kappa>", {G.rs, G.kappa}},
        {"Q8k", "<Q8, kappa>", {G.rho2, G.srs, G.kappa}},
        {"Q8kp", "<Q8, kappa'>", {G.rho2, G.srs, G.kappap}},
        {"Dt4k", "<Dt4, kappa>", {G.rho2, G.sighat, G.kappa}},
        {"Dt4kp", "<Dt4, kappa'>", {G.rho2, G.sighat, G.kappap}},
        {"Cp12", "<eps kappa>", {G.ek}},
        {"Ct6kp", "<Ct6, kappa'>", {G.meps, G.kappap}},
        {"Cp8", "<sighat kappa>", {G.shk}},
        {"C4k", "<C4, kappa>", {G.rho2, G.kappa}},
        {"C4kp", "<C4, kappa'>", {G.rho2, G.kappap}},
        {"Dt2k", "<Dt2, kappa>", {G.mId, G.sigma, G.kappa}},
        {"Cp4k", "<Cp4, kappa>", {G.rshk, G.kappa}},
        {"Cp4kp", "<Cp4, kappa'>", {G.rshk, G.kappap}},
        {"Ct3kp", "<Ct3, kappa'>", {G.eps, G.kappap}},
        {"Cp4", "<rho sighat kappa>", {G.rshk}},
        {"C2k", "<-Id, kappa>", {G.mId, G.kappa}},
        {"C2kp", "<-Id, kappa'>", {G.mId, G.kappap}},
        {"Ct2k", "<sigma, kappa>", {G.sigma, G.kappa}},
        {"Ctp2k", "<sigtil, kappa>", {G.sigtil, G.kappa}},
        {"C1k", "<kappa>", {G.kappa}},
        {"C1kp", "<kappa'>", {G.kappap}},
        // whole groups, alias, trivial
        {"G", "<rho, sigma, eps>", {G.rho, G.sigma, G.eps}},
        {"Gstar", "<rho, sigma, eps, kappa>", {G.rho, G.sigma, G.eps, G.kappa}},
        {"Ct4", "<(rho^2 sigma)^2>", {G.mul(G.rs, G.rs)}},
        {"triv", "<Id>", {0}},
    };
    std::vector<SubgroupRecord> out;
    out.reserve(specs.size());
    for (const Spec& s : specs) {
        SubgroupRecord rec;
        rec.name = s.name;
        rec.generators = s.word;
        rec.gen_ids = s.gens;
        rec.elements = closure(G, s.gens);
        if (96 % rec.elements.size() != 0)
            throw std::runtime_error("subgroup_catalog: order does not divide 96");
        for (int x : rec.elements) ++rec.decomp[G.class_of[x]];
        out.push_back(std::move(rec));
    }
    return out;
}

const SubgroupRecord& find_subgroup(const std::vector<SubgroupRecord>& cat,
                                    const std::string& name) {
    for (const auto& r : cat)
        if (r.name == name) return r;
    throw std::invalid_argument("find_subgroup: unknown name " + name);
}

int fixed_dim(const SymGroup& G, int chi, const SubgroupRecord& H) {
    double s = 0.0;
    for (int x : H.elements) s += G.character(chi, x);
    double v = s / static_cast<double>(H.elements.size());
    int r = static_cast<int>(std::lround(v));
    if (std::abs(v - r) > 1e-9 || r < 0)
        throw std::runtime_error("fixed_dim: non-integer trace-formula value");
    return r;
}

std::vector<std::string> isotropy_types(const SymGroup& G,
                                        const std::vector<SubgroupRecord>& cat, int chi) {
    std::vector<std::string> out;
    for (const auto& H : cat)
        if (fixed_dim(G, chi, H) == 1) out.push_back(H.name);
    return out;
}

IrrepMatrices build_irrep(const SymGroup& G, int chi, unsigned seed) {
    const int n = SymGroup::N;
    const int d = static_cast<int>(std::lround(character_table()[chi][0]));
    IrrepMatrices out;
    out.chi = chi;
    out.dim = d;
    out.mats.resize(n);
    if (d == 1) {
        for (int g = 0; g < n; ++g)
            out.mats[g] = Eigen::MatrixXd::Constant(1, 1, G.character(chi, g));
        return out;
    }
    // Regular representation R(g): permutation e_t -> e_{g t}.
    auto reg = [&](int g) {
        Eigen::MatrixXd R = Eigen::MatrixXd::Zero(n, n);
        for (int t = 0; t < n; ++t) R(G.mul(g, t), t) = 1.0;
        return R;
    };
    // Central projector onto the chi-isotypic component (dimension d^2).
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    for (int g = 0; g < n; ++g) P += (static_cast<double>(d) / n) * G.character(chi, g) * reg(g);

    for (int attempt = 0; attempt < 5; ++attempt, ++seed) {
        std::mt19937 rng(seed);
        std::normal_distribution<double> N01(0.0, 1.0);
        // Orthonormal basis Q of the isotypic component.
        Eigen::MatrixXd V(n, d * d);
        for (int c = 0; c < d * d; ++c) {
            Eigen::VectorXd v(n);
            for (int i = 0; i < n; ++i) v[i] = N01(rng);
            V.col(c) = P * v;
        }
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(V);
        Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, d * d);
        // Restricted representation in that basis (orthogonal d^2 x d^2).
        std::vector<Eigen::MatrixXd> Rt(n);
        for (int g = 0; g < n; ++g) Rt[g] = Q.transpose() * reg(g) * Q;
        // Random symmetric element of the commutant via Reynolds averaging.
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(d * d, d * d);
        for (int i = 0; i < d * d; ++i)
            for (int j = 0; j <= i; ++j) A(i, j) = A(j, i) = N01(rng);
        Eigen::MatrixXd S = Eigen::MatrixXd::Zero(d * d, d * d);
        for (int g = 0; g < n; ++g) S += Rt[g] * A * Rt[g].transpose();
        S /= n;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
        // Pick an eigenvalue with a d-dimensional, well-separated eigenspace:
        // its eigenspace is a single irrep copy.
        const Eigen::VectorXd& ev = es.eigenvalues();
        int lo = -1;
        for (int i = 0; i + d <= d * d; ++i) {
            bool tight = ev[i + d - 1] - ev[i] < 1e-8;
            bool sep_lo = (i == 0) || (ev[i] - ev[i - 1] > 1e-4);
            bool sep_hi = (i + d == d * d) || (ev[i + d] - ev[i + d - 1] > 1e-4);
            if (tight && sep_lo && sep_hi) { lo = i; break; }
        }
        if (lo < 0) continue;
        Eigen::MatrixXd B = es.eigenvectors().middleCols(lo, d);
        bool ok = true;
        for (int g = 0; g < n && ok; ++g) {
            out.mats[g] = B.transpose() * Rt[g] * B;
            if (std::abs(out.mats[g].trace() - G.character(chi, g)) > 1e-10) ok = false;
        }
        if (!ok) continue;
        // homomorphism check on generator products
        for (int g : {G.rho, G.sigma, G.eps, G.kappa}) {
            for (int h = 0; h < n && ok; ++h)
                if ((out.mats[G.mul(g, h)] - out.mats[g] * out.mats[h]).norm() > 1e-8) ok = false;
        }
        if (ok) return out;
    }
    throw std::runtime_error("build_irrep: projection failed for all seeds");
}

std::string principal_isotropy(const SymGroup& G,
                               const std::vector<SubgroupRecord>& cat, int chi) {
    IrrepMatrices M = build_irrep(G, chi);
    std::vector<int> kernel;
    Eigen::MatrixXd I = Eigen::MatrixXd::Identity(M.dim, M.dim);
    for (int g = 0; g < SymGroup::N; ++g)
        if ((M.mats[g] - I).norm() < 1e-6) kernel.push_back(g);
    for (const auto& H : cat)
        if (H.elements == kernel) return H.name;
    throw std::runtime_error("principal_isotropy: kernel not in catalog");
}

} // namespace octa
