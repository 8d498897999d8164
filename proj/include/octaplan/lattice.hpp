// The octagonal lattice Gamma: generators, fundamental octagon, Dirichlet
// reduction (wrap), the T(2,3,8) triangle, and the 96-tile tessellation.
#pragma once

#include "octaplan/hypgeo.hpp"

#include <array>
#include <vector>

namespace octa {

// The four hyperbolic translations g_j = r_{j pi/4} g0 r_{-j pi/4} with
// g0 = [[1+sqrt2, sqrt(2+2 sqrt2)], [sqrt(2+2 sqrt2), 1+sqrt2]].
struct LatticeGenerators {
    std::array<Iso, 4> g;
    // moves[2j] = g_j, moves[2j+1] = g_j^{-1}; the 8 Dirichlet descent moves.
    std::array<Iso, 8> moves;
    static int inverse_move(int k) { return k ^ 1; }
};
LatticeGenerators build_generators();

// Regular fundamental octagon: vertices on rays arg = pi/8 + k pi/4, interior
// angle pi/4 at every vertex; side k (midpoint on ray arg = k pi/4) is mapped
// to side k+4 by g_k.
struct Octagon {
    std::array<cplx, 8> vertices;       // counterclockwise, starting at arg pi/8
    double circumradius;                // hyperbolic distance centre -> vertex
    double apothem;                     // hyperbolic distance centre -> side midpoint
    std::array<cplx, 8> side_midpoints; // midpoint of side k on ray arg = k pi/4
};
Octagon build_octagon();

// Fundamental-domain reduction.  The returned word (move indices into
// LatticeGenerators::moves) satisfies: applying the moves to `point` in order
// recovers the input z.
struct WrapResult {
    cplx point;
    std::vector<int> word;
};
WrapResult wrap(cplx z, const LatticeGenerators& gens, int max_word = 64);

cplx apply_word(const std::vector<int>& word, cplx z, const LatticeGenerators& gens);
Iso word_iso(const std::vector<int>& word, const LatticeGenerators& gens);

// Hyperbolic triangle with angles pi/8 at P = 0, pi/2 at Q (real axis),
// pi/3 at R (on the ray arg = pi/8); area pi/24.
struct Triangle238 {
    cplx P, Q, R;
    double d_PQ, d_PR;
};
Triangle238 build_triangle();

// Elliptic generators of the tiling symmetry: rho = r_{pi/4}, sigma = pi
// rotation about Q, eps = 2 pi/3 rotation about R; rho sigma eps = Id.
Iso rho_gen();
Iso sigma_gen();
Iso eps_gen();

// 96 copies of the triangle filling the octagon: orbit of tau under
// <rho, sigma, eps, kappa> reduced mod Gamma.
struct Tile {
    Iso iso;        // Gamma-reduced isometry mapping tau into the octagon
    bool reversing; // orientation
};
struct Tessellation {
    std::vector<Tile> tiles; // tiles[0] = identity tile
    cplx base_point;         // generic interior point of tau used for keying
    const LatticeGenerators* gens;
    // Index of the tile whose (Gamma-reduced) isometry matches `iso` on the
    // base point; -1 if none.
    int find_tile(const Iso& iso) const;
};
Tessellation build_tessellation(const LatticeGenerators& gens);

// |G| = (2g-2)/(1 - (1/l + 1/m + 1/n)); throws if not an integer.
long riemann_hurwitz(int l, int m, int n, int genus);

} // namespace octa
