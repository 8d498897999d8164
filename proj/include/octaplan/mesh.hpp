// P1 triangulations of the T(2,3,8) triangle and of the full octagon (built
// by 96-fold group transport of the triangle mesh, welded and D8-symmetric).
#pragma once

#include "octaplan/lattice.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace octa {

struct BoundaryEdge {
    int a = -1, b = -1;
    std::string tag; // "PQ", "QR", "RP" or "side0".."side7"
};

struct Mesh {
    std::vector<cplx> nodes;
    std::vector<std::array<int, 3>> elements; // counterclockwise
    std::vector<BoundaryEdge> boundary_edges;
    std::map<int, int> pairing;       // octagon only: involutive partner map
    std::vector<int> periodic_class;  // octagon only: canonical node per orbit
    std::vector<std::vector<int>> tile_nodes; // octagon only: 96 x tau-nodes
    int subdivision = 0;              // rows n of the tau mesh

    std::vector<int> boundary_nodes() const;
    // nodes on the tagged triangle side, in order P -> side
    std::vector<int> tagged_nodes(const std::string& tag) const;
};

// Point at hyperbolic arclength fraction t along the geodesic z1 -> z2.
cplx geo_point(cplx z1, cplx z2, double t);

// Structured cone mesh of the fundamental triangle tau = (P, Q, R) with
// boundary nodes on the true geodesic sides; picks the subdivision whose node
// count (n+1)(n+2)/2 is closest to target_nodes.
Mesh mesh_triangle(int target_nodes);

// 2 r_in / r_circ of the Euclidean triangle (1 for equilateral).
double element_quality(const Mesh& m, int e);
double min_quality(const Mesh& m);

// Octagon mesh by transporting the tau mesh (subdivision = refinement + 1)
// with all 96 group tiles, welding coincident nodes (tolerance 1e-9) and
// recording side pairing plus full periodic node classes.
Mesh mesh_octagon(int refinement, const Tessellation& tess);

// Index of the mesh node within tol of z, or -1.
int locate_node(const Mesh& m, cplx z, double tol = 1e-7);

// Euclidean area of all elements (polygonal approximation of the domain).
double euclidean_area(const Mesh& m);

std::string mesh_to_json(const Mesh& m);
Mesh mesh_from_json(const std::string& text);

} // namespace octa
