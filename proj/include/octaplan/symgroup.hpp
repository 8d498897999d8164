// The 96-element symmetry group G* = Lambda/Gamma: multiplication table,
// conjugacy classes, character table, subgroup catalog, trace-formula fixed
// dimensions, irrep matrices, and isotropy classification.
#pragma once

#include "octaplan/lattice.hpp"

#include <Eigen/Dense>
#include <array>
#include <map>
#include <string>
#include <vector>

namespace octa {

// Elements are identified with tiles (the action on tiles is simply
// transitive): element g is the one mapping the base tile to tile g.
struct SymGroup {
    const Tessellation* tess = nullptr;
    static constexpr int N = 96;

    std::vector<std::array<int, N>> mult; // mult[i][j] = i * j
    std::array<int, N> inv{};
    std::array<int, N> order{};
    std::array<int, N> class_of{};  // canonical class index 0..12
    std::array<int, 13> class_rep{};
    std::array<int, 13> class_size{};

    // named elements (indices)
    int id = 0, rho = -1, rho2 = -1, mId = -1, sigma = -1, eps = -1, meps = -1,
        kappa = -1, kappap = -1, kappapp = -1, sighat = -1, sigtil = -1,
        shk = -1, rshk = -1, ek = -1, mek = -1, rs = -1, srs = -1;

    int mul(int a, int b) const { return mult[a][b]; }
    int invert(int a) const { return inv[a]; }
    bool reversing(int g) const { return tess->tiles[g].reversing; }
    const Iso& iso(int g) const { return tess->tiles[g].iso; }
    // tile permutation of element g: t -> g*t
    const std::array<int, N>& perm(int g) const { return mult[g]; }
    double character(int chi, int g) const;
};

SymGroup build_group(const Tessellation& tess);

// Equality mod Gamma through the tessellation keying.
bool element_equal(const SymGroup& G, int g, int h);

// 13 x 13 character table: rows chi_1..chi_13, columns the canonical
// classes Id, rho, rho^2, -Id, sigma, eps, -eps, kappa, kappa',
// sighat kappa, rho sighat kappa, eps kappa, -eps kappa).
const std::array<std::array<double, 13>, 13>& character_table();
extern const std::array<const char*, 13> kClassLabels;
extern const std::array<int, 13> kClassSizes; // corrected reversing sizes

struct SubgroupRecord {
    std::string name;       // conventional label (ASCII: Dt8 = D~8, Cp8k = C'8kappa, ...)
    std::string generators; // human-readable generator word
    std::vector<int> gen_ids;
    std::vector<int> elements;      // sorted
    std::array<int, 13> decomp{};   // element count per class
};

// The catalog of named subgroups plus G, G*, the trivial group, and the Ct4
// alias; built by closure of the generator words.
std::vector<SubgroupRecord> subgroup_catalog(const SymGroup& G);
const SubgroupRecord& find_subgroup(const std::vector<SubgroupRecord>& cat,
                                    const std::string& name);

// dim(V^H) = (1/|H|) sum_{h in H} chi(h); throws if not integral within 1e-9.
int fixed_dim(const SymGroup& G, int chi, const SubgroupRecord& H);

// chi (0-based) -> names of cataloged subgroups with dim(V^H) = 1.
std::vector<std::string> isotropy_types(const SymGroup& G,
                                        const std::vector<SubgroupRecord>& cat, int chi);

// Orthogonal d x d matrices of the irrep, extracted from the regular
// representation by central projection; homomorphism residual <= 1e-8.
struct IrrepMatrices {
    int chi;
    int dim;
    std::vector<Eigen::MatrixXd> mats; // one per group element
};
IrrepMatrices build_irrep(const SymGroup& G, int chi, unsigned seed = 12345);

// Name of the subgroup {g : irrep matrix of g = Id}.
std::string principal_isotropy(const SymGroup& G,
                               const std::vector<SubgroupRecord>& cat, int chi);

} // namespace octa
