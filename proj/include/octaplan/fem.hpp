// P1 Laplace-Beltrami assembly on the Poincare disc, boundary conditions,
// and a sparse symmetric generalized eigensolver (shift-invert Lanczos with
// a dense fallback).
#pragma once

#include "octaplan/mesh.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

namespace octa {

using SpMat = Eigen::SparseMatrix<double>;

struct AssembledSystem {
    SpMat K; // Euclidean P1 stiffness (conformally invariant Dirichlet energy)
    SpMat M; // mass with conformal weight 4/(1-|z|^2)^2, 3-point midpoint rule
    std::vector<int> dof_of_node; // node -> dof, -1 if eliminated
    int node_count = 0;
};

AssembledSystem assemble(const Mesh& mesh);

// Dirichlet elimination of the given nodes (Neumann is natural: no change).
AssembledSystem apply_dirichlet(const AssembledSystem& sys, const std::vector<int>& nodes);

// Merge periodically identified nodes into single dofs via a boolean
// selection map T (master = smallest node of the class): K <- T^t K T.
AssembledSystem apply_periodic(const AssembledSystem& sys, const Mesh& mesh);

struct EigenResult {
    Eigen::VectorXd eigenvalues;  // ascending
    Eigen::MatrixXd eigenvectors; // columns, M-orthonormal
    Eigen::VectorXd residuals;    // ||K v - lambda M v|| / ||v||_M
};

enum class SolveMethod { Auto, Dense, Lanczos };

// n smallest eigenpairs of K v = lambda M v; residuals <= 1e-8, deterministic
// for a fixed seed. Auto uses the dense path below 2000 dofs.
EigenResult solve_smallest(const AssembledSystem& sys, int n,
                           SolveMethod method = SolveMethod::Auto,
                           unsigned seed = 20240816);

// Cluster ascending eigenvalues into multiplicity groups at relative tol.
std::vector<int> multiplicity_groups(const Eigen::VectorXd& eigenvalues,
                                     double rtol = 1e-6);

struct Staircase {
    std::vector<std::pair<double, int>> steps; // (lambda, N(lambda))
    double slope = 0.0; // least-squares over the upper half of the range
};

Staircase weyl_staircase(const Eigen::VectorXd& eigenvalues);

} // namespace octa
