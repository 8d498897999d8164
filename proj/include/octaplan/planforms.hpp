// End-to-end H-planform pipeline: desymmetrized solves for the 1-D irreps,
// periodic solves with eigenspace classification, isotropy projection,
// periodization over the disc, and rendering.
#pragma once

#include "octaplan/fem.hpp"
#include "octaplan/image.hpp"
#include "octaplan/symgroup.hpp"

#include <array>
#include <string>
#include <vector>

namespace octa {

struct BCRecipe {
    char pq = 'N', pr = 'N', qr = 'N'; // 'N' or 'D'
};

// Conditions from character signs: Neumann iff chi(reflection) = +1, with
// reflections kappa (PQ), kappa' (PR), kappa'' = sigma kappa (QR).
BCRecipe bc_recipe(const SymGroup& G, int chi);

struct Planform {
    Eigen::VectorXd values; // nodal values on the pipeline's octagon mesh
    double eigenvalue = 0.0;
    std::string irrep;    // "chi1".."chi13"
    std::string isotropy; // subgroup name
    bool empty() const { return values.size() == 0; }
};

struct Eigenspace {
    double lambda = 0.0;
    int first_index = 0;    // position in the ascending eigenvalue list
    Eigen::MatrixXd basis;  // full-node values, M-orthonormal columns
    std::string label;      // "chi1".. or "" if unclassified
    std::array<double, 13> traces{};
    double deviation = 0.0;
    bool refine_flagged = false; // merged across a gap above 1e-6
};

struct Classification {
    std::string label;
    std::array<double, 13> traces{};
    double deviation = 0.0;
};

// Shared state for one octagon resolution: transported mesh, full (unreduced)
// assembly, group action by exact node permutation.
class PlanformPipeline {
public:
    PlanformPipeline(const Tessellation& tess, const SymGroup& G, int refinement);

    const Mesh& octagon() const { return mesh_; }
    const AssembledSystem& system() const { return sys_; }
    const SymGroup& group() const { return *G_; }
    const Tessellation& tess() const { return *tess_; }
    const std::vector<SubgroupRecord>& catalog() const { return catalog_; }

    // (g o f)(node) = f(g^{-1} node); exact node permutation because the
    // transported mesh is group-invariant. Well-defined on Gamma-periodic
    // fields (welded boundary nodes are Gamma-translates of each other).
    Eigen::VectorXd act(int g, const Eigen::VectorXd& f) const;
    double m_inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;

    // P1 interpolation of a nodal field at an arbitrary point of the octagon
    // (used by rasterization and as the generic group-action path).
    double field_value(const Eigen::VectorXd& f, cplx z, bool* ok = nullptr) const;

private:
    const Tessellation* tess_;
    const SymGroup* G_;
    std::vector<SubgroupRecord> catalog_;
    Mesh mesh_;
    AssembledSystem sys_;
    // uniform-grid element locator
    double cell_ = 0.0;
    int grid_n_ = 0;
    std::vector<std::vector<int>> cells_;
    int locate_element(cplx z, double* l0, double* l1, double* l2) const;
};

// Lowest admissible eigenpair of the desymmetrized triangle problem (first
// nonzero for chi1, first otherwise), extended to the octagon by transport
// with sign chi(g) per tile. Requires tri.subdivision == octagon subdivision.
Planform solve_desymmetrized(const PlanformPipeline& pl, int chi, const Mesh& tri);

// Periodic spectrum grouped into classified eigenspaces. Eigenvalues are
// clustered at relative gap 1e-6; clusters are merged (within merge_window
// relative, flagged) when the merged space classifies as a full irrep. The
// default window matches the degeneracy splitting of production-scale meshes;
// coarser meshes need a wider one.
std::vector<Eigenspace> solve_periodic(const PlanformPipeline& pl, int n,
                                       double merge_window = 4e-3);

Classification classify_eigenspace(const PlanformPipeline& pl, const Eigen::MatrixXd& basis);

// Group averaging over H of a random element of the space; empty if the
// projection vanishes (norm < 1e-6 of the input).
Planform project_isotropy(const PlanformPipeline& pl, const Eigenspace& space,
                          const SubgroupRecord& H, unsigned seed = 7);

struct Raster {
    int width = 0, height = 0;
    std::vector<double> values;
    std::vector<std::uint8_t> mask; // 1 = defined
};

// Periodization over the disc: raster point z with |z| <= 0.995 gets
// p(wrap(z).point); other points are empty.
Raster extend_to_disc(const PlanformPipeline& pl, const Planform& p, int resolution);

Image render(const Raster& r);
void render_to_file(const Raster& r, const std::string& path);

} // namespace octa
