#include "octaplan/fem.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace octa {

namespace {

double sym_check(const SpMat& A) {
    SpMat D = SpMat(A.transpose()) - A;
    double n = 0.0, a = 0.0;
    for (int k = 0; k < D.outerSize(); ++k)
        for (SpMat::InnerIterator it(D, k); it; ++it) n = std::max(n, std::abs(it.value()));
    for (int k = 0; k < A.outerSize(); ++k)
        for (SpMat::InnerIterator it(A, k); it; ++it) a = std::max(a, std::abs(it.value()));
    return a > 0.0 ? n / a : 0.0;
}

void require_symmetric(const SpMat& A, const char* what) {
    if (sym_check(A) > 1e-12)
        throw std::runtime_error(std::string(what) + ": symmetry violated");
}

} // namespace

AssembledSystem assemble(const Mesh& mesh) {
    const int N = static_cast<int>(mesh.nodes.size());
    std::vector<Eigen::Triplet<double>> tk, tm;
    tk.reserve(mesh.elements.size() * 9);
    tm.reserve(mesh.elements.size() * 9);
    for (const auto& el : mesh.elements) {
        cplx z[3] = {mesh.nodes[el[0]], mesh.nodes[el[1]], mesh.nodes[el[2]]};
        double x[3] = {z[0].real(), z[1].real(), z[2].real()};
        double y[3] = {z[0].imag(), z[1].imag(), z[2].imag()};
        double J = (x[1] - x[0]) * (y[2] - y[0]) - (x[2] - x[0]) * (y[1] - y[0]);
        if (J <= 0.0) throw std::runtime_error("assemble: non-positive element Jacobian");
        double A = J / 2.0;
        double b[3] = {y[1] - y[2], y[2] - y[0], y[0] - y[1]};
        double c[3] = {x[2] - x[1], x[0] - x[2], x[1] - x[0]};
        // 3-point edge-midpoint rule (degree 2) with the conformal weight
        cplx mid[3] = {0.5 * (z[0] + z[1]), 0.5 * (z[1] + z[2]), 0.5 * (z[2] + z[0])};
        double shp[3][3] = {{.5, .5, 0.}, {0., .5, .5}, {.5, 0., .5}};
        double Me[3][3] = {};
        for (int q = 0; q < 3; ++q) {
            double r2 = std::norm(mid[q]);
            double lam = 4.0 / ((1.0 - r2) * (1.0 - r2));
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    Me[i][j] += (A / 3.0) * lam * shp[q][i] * shp[q][j];
        }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                tk.emplace_back(el[i], el[j], (b[i] * b[j] + c[i] * c[j]) / (4.0 * A));
                tm.emplace_back(el[i], el[j], Me[i][j]);
            }
    }
    AssembledSystem sys;
    sys.node_count = N;
    sys.K.resize(N, N);
    sys.M.resize(N, N);
    sys.K.setFromTriplets(tk.begin(), tk.end());
    sys.M.setFromTriplets(tm.begin(), tm.end());
    sys.dof_of_node.resize(N);
    for (int i = 0; i < N; ++i) sys.dof_of_node[i] = i;
    require_symmetric(sys.K, "assemble K");
    require_symmetric(sys.M, "assemble M");
    return sys;
}

namespace {

// Apply a node->dof selection map T (n_nodes x n_dofs boolean): A <- T^t A T.
AssembledSystem reduce(const AssembledSystem& sys, const std::vector<int>& dof_of_node,
                       int n_dofs) {
    if (n_dofs <= 0) throw std::runtime_error("apply_bc: empty system");
    SpMat T(sys.K.rows(), n_dofs);
    std::vector<Eigen::Triplet<double>> tt;
    for (int i = 0; i < static_cast<int>(dof_of_node.size()); ++i)
        if (dof_of_node[i] >= 0) tt.emplace_back(i, dof_of_node[i], 1.0);
    T.setFromTriplets(tt.begin(), tt.end());
    AssembledSystem out;
    out.node_count = sys.node_count;
    out.K = SpMat(T.transpose()) * sys.K * T;
    out.M = SpMat(T.transpose()) * sys.M * T;
    // compose with any prior node->dof map
    out.dof_of_node.resize(sys.dof_of_node.size());
    for (std::size_t i = 0; i < sys.dof_of_node.size(); ++i) {
        int d = sys.dof_of_node[i];
        out.dof_of_node[i] = d >= 0 ? dof_of_node[d] : -1;
    }
    require_symmetric(out.K, "apply_bc K");
    require_symmetric(out.M, "apply_bc M");
    return out;
}

} // namespace

AssembledSystem apply_dirichlet(const AssembledSystem& sys, const std::vector<int>& nodes) {
    std::set<int> drop;
    for (int i : nodes) {
        int d = sys.dof_of_node[i];
        if (d >= 0) drop.insert(d);
    }
    std::vector<int> map(sys.K.rows(), -1);
    int next = 0;
    for (int d = 0; d < static_cast<int>(map.size()); ++d)
        if (!drop.count(d)) map[d] = next++;
    return reduce(sys, map, next);
}

AssembledSystem apply_periodic(const AssembledSystem& sys, const Mesh& mesh) {
    if (mesh.periodic_class.empty())
        throw std::runtime_error("apply_periodic: mesh has no periodic classes");
    if (sys.K.rows() != static_cast<int>(mesh.nodes.size()))
        throw std::runtime_error("apply_periodic: system/mesh mismatch");
    // master dof = class representative (smallest node index of the class)
    std::vector<int> map(mesh.nodes.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
        int r = mesh.periodic_class[i];
        if (r == static_cast<int>(i)) map[i] = next++;
    }
    for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
        int r = mesh.periodic_class[i];
        if (map[i] < 0) {
            if (map[r] < 0) throw std::runtime_error("apply_periodic: inconsistent pairing");
            map[i] = map[r];
        }
    }
    return reduce(sys, map, next);
}

namespace {

EigenResult finalize(const AssembledSystem& sys, const Eigen::VectorXd& vals,
                     const Eigen::MatrixXd& vecs) {
    EigenResult out;
    out.eigenvalues = vals;
    out.eigenvectors = vecs;
    const int n = static_cast<int>(vals.size());
    out.residuals.resize(n);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd v = vecs.col(i);
        double nm = std::sqrt(v.dot(sys.M * v));
        out.residuals[i] = (sys.K * v - vals[i] * (sys.M * v)).norm() / nm;
        out.eigenvectors.col(i) /= nm;
    }
    return out;
}

EigenResult solve_dense(const AssembledSystem& sys, int n) {
    Eigen::MatrixXd K = Eigen::MatrixXd(sys.K), M = Eigen::MatrixXd(sys.M);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K, M);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("solve_smallest: dense eigensolver failed");
    return finalize(sys, es.eigenvalues().head(n), es.eigenvectors().leftCols(n));
}

// Shift-invert Lanczos on Op = (K - sigma M)^{-1} M, self-adjoint in the
// M-inner product; full reorthogonalization; Ritz values theta -> sigma + 1/theta.
EigenResult solve_lanczos(const AssembledSystem& sys, int n, unsigned seed) {
    const int N = static_cast<int>(sys.K.rows());
    const double sigma = -0.1;
    SpMat A = sys.K - sigma * sys.M;
    Eigen::SimplicialLDLT<SpMat> ldlt(A);
    if (ldlt.info() != Eigen::Success)
        throw std::runtime_error("solve_smallest: factorization of K - sigma M failed");

    std::mt19937 rng(seed);
    std::normal_distribution<double> G(0.0, 1.0);
    int m = std::min(N, 3 * n + 50);
    const int cap = std::min(N, 50 * n);
    for (;;) {
        Eigen::MatrixXd V(N, m);
        Eigen::VectorXd alpha(m), beta(m);
        Eigen::VectorXd v(N);
        for (int i = 0; i < N; ++i) v[i] = G(rng);
        v /= std::sqrt(v.dot(sys.M * v));
        V.col(0) = v;
        int built = m;
        for (int j = 0; j < m; ++j) {
            Eigen::VectorXd w = ldlt.solve(sys.M * V.col(j));
            alpha[j] = w.dot(sys.M * V.col(j));
            // full reorthogonalization in the M-inner product, twice
            for (int pass = 0; pass < 2; ++pass) {
                Eigen::VectorXd h = V.leftCols(j + 1).transpose() * (sys.M * w);
                w -= V.leftCols(j + 1) * h;
            }
            beta[j] = std::sqrt(std::max(0.0, w.dot(sys.M * w)));
            if (j + 1 < m) {
                if (beta[j] < 1e-13) { built = j + 1; break; }
                V.col(j + 1) = w / beta[j];
            }
        }
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(built, built);
        for (int j = 0; j < built; ++j) {
            T(j, j) = alpha[j];
            if (j + 1 < built) T(j, j + 1) = T(j + 1, j) = beta[j];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        // largest theta = eigenvalues nearest the shift = smallest lambda
        const int k = std::min(n, built);
        Eigen::VectorXd vals(k);
        Eigen::MatrixXd vecs(N, k);
        for (int i = 0; i < k; ++i) {
            int col = built - 1 - i;
            double theta = es.eigenvalues()[col];
            vals[i] = sigma + 1.0 / theta;
            vecs.col(i) = V.leftCols(built) * es.eigenvectors().col(col);
        }
        EigenResult out = finalize(sys, vals, vecs);
        int worst = -1;
        for (int i = 0; i < k; ++i)
            if (out.residuals[i] > 1e-8 && (worst < 0 || out.residuals[i] > out.residuals[worst]))
                worst = i;
        if (worst < 0 && k == n) return out;
        if (m >= cap)
            throw std::runtime_error("solve_smallest: pair " + std::to_string(std::max(worst, 0)) +
                                     " failed to converge");
        m = std::min(cap, 2 * m);
    }
}

} // namespace

EigenResult solve_smallest(const AssembledSystem& sys, int n, SolveMethod method,
                           unsigned seed) {
    if (n < 1 || n > sys.K.rows())
        throw std::invalid_argument("solve_smallest: invalid pair count");
    if (method == SolveMethod::Auto)
        method = sys.K.rows() < 2000 ? SolveMethod::Dense : SolveMethod::Lanczos;
    EigenResult out = method == SolveMethod::Dense ? solve_dense(sys, n)
                                                   : solve_lanczos(sys, n, seed);
    for (int i = 0; i + 1 < n; ++i)
        if (out.eigenvalues[i] > out.eigenvalues[i + 1] + 1e-12)
            throw std::runtime_error("solve_smallest: eigenvalues not ascending");
    return out;
}

std::vector<int> multiplicity_groups(const Eigen::VectorXd& eigenvalues, double rtol) {
    std::vector<int> gid(eigenvalues.size());
    int g = 0;
    for (int i = 0; i < eigenvalues.size(); ++i) {
        if (i > 0) {
            double scale = std::max({std::abs(eigenvalues[i]), std::abs(eigenvalues[i - 1]), 1.0});
            if (eigenvalues[i] - eigenvalues[i - 1] > rtol * scale) ++g;
        }
        gid[i] = g;
    }
    return gid;
}

Staircase weyl_staircase(const Eigen::VectorXd& eigenvalues) {
    if (eigenvalues.size() < 50)
        throw std::invalid_argument("weyl_staircase: need at least 50 eigenvalues");
    Staircase st;
    for (int i = 0; i < eigenvalues.size(); ++i)
        st.steps.emplace_back(eigenvalues[i], i + 1); // multiplicity via repetition
    // least-squares N = slope * lambda + c over the upper half of the range
    double lmax = eigenvalues[eigenvalues.size() - 1];
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& [lam, N] : st.steps) {
        if (lam <= lmax / 2.0) continue;
        sx += lam; sy += N; sxx += lam * lam; sxy += lam * N;
        ++cnt;
    }
    st.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    return st;
}

} // namespace octa
