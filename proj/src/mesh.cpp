#include "octaplan/mesh.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace octa {

namespace {

const double PI = std::acos(-1.0);

// Spatial hash over disc points; cell size far above the weld tolerance and
// far below the minimum node spacing.
class NodeHash {
public:
    explicit NodeHash(double tol) : tol_(tol) {}

    int find(const std::vector<cplx>& nodes, cplx z) const {
        auto [cx, cy] = cell(z);
        int hit = -1;
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy) {
                auto it = map_.find(key(cx + dx, cy + dy));
                if (it == map_.end()) continue;
                for (int j : it->second)
                    if (std::abs(nodes[j] - z) < tol_) {
                        if (hit >= 0 && hit != j)
                            throw std::runtime_error("mesh weld: ambiguous node match");
                        hit = j;
                    }
            }
        return hit;
    }

    void insert(cplx z, int id) {
        auto [cx, cy] = cell(z);
        map_[key(cx, cy)].push_back(id);
    }

private:
    static std::pair<long, long> cell(cplx z) {
        return {std::lround(z.real() / 1e-6), std::lround(z.imag() / 1e-6)};
    }
    static long long key(long cx, long cy) {
        return (static_cast<long long>(cx) << 28) ^ (cy & ((1LL << 28) - 1));
    }
    double tol_;
    std::unordered_map<long long, std::vector<int>> map_;
};

// Structured cone mesh with n rows; row i has i+1 nodes.
Mesh build_tau(int n) {
    Triangle238 t = build_triangle();
    Mesh m;
    m.subdivision = n;
    auto idx = [n](int i, int j) { return i * (i + 1) / 2 + j; };
    for (int i = 0; i <= n; ++i) {
        double s = static_cast<double>(i) / n;
        for (int j = 0; j <= i; ++j) {
            double tt = i > 0 ? static_cast<double>(j) / i : 0.0;
            cplx c = geo_point(t.Q, t.R, tt);
            // radial point at hyperbolic fraction s toward c
            double d = 2.0 * std::atanh(std::abs(c));
            cplx z = std::tanh(s * d / 2.0) * c / std::abs(c);
            m.nodes.push_back(i == 0 ? cplx{0.0, 0.0} : z);
        }
    }
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j < i; ++j) {
            m.elements.push_back({idx(i, j), idx(i, j + 1), idx(i - 1, j)});
            if (j < i - 1)
                m.elements.push_back({idx(i, j + 1), idx(i - 1, j + 1), idx(i - 1, j)});
        }
    for (int i = 1; i <= n; ++i) {
        m.boundary_edges.push_back({idx(i - 1, 0), idx(i, 0), "PQ"});
        m.boundary_edges.push_back({idx(i - 1, i - 1), idx(i, i), "RP"});
    }
    for (int j = 0; j < n; ++j)
        m.boundary_edges.push_back({idx(n, j), idx(n, j + 1), "QR"});
    return m;
}

} // namespace

cplx geo_point(cplx z1, cplx z2, double t) {
    Iso T = boost_to(z1);
    cplx w = T.inverse().apply(z2);
    if (std::abs(w) == 0.0) return z1;
    double d = 2.0 * std::atanh(std::abs(w));
    return T.apply(std::tanh(t * d / 2.0) * w / std::abs(w));
}

std::vector<int> Mesh::boundary_nodes() const {
    std::set<int> s;
    for (const BoundaryEdge& e : boundary_edges) {
        s.insert(e.a);
        s.insert(e.b);
    }
    return {s.begin(), s.end()};
}

std::vector<int> Mesh::tagged_nodes(const std::string& tag) const {
    std::vector<int> out;
    for (const BoundaryEdge& e : boundary_edges) {
        if (e.tag != tag) continue;
        if (out.empty()) out.push_back(e.a);
        out.push_back(e.b);
    }
    return out;
}

double element_quality(const Mesh& m, int e) {
    cplx z0 = m.nodes[m.elements[e][0]], z1 = m.nodes[m.elements[e][1]],
         z2 = m.nodes[m.elements[e][2]];
    double a = std::abs(z1 - z2), b = std::abs(z2 - z0), c = std::abs(z0 - z1);
    double s = 0.5 * (a + b + c);
    double area = std::sqrt(std::max(0.0, s * (s - a) * (s - b) * (s - c)));
    if (area <= 0.0) return 0.0;
    double r_in = area / s;
    double r_circ = a * b * c / (4.0 * area);
    return 2.0 * r_in / r_circ;
}

double min_quality(const Mesh& m) {
    double q = 1.0;
    for (std::size_t e = 0; e < m.elements.size(); ++e)
        q = std::min(q, element_quality(m, static_cast<int>(e)));
    return q;
}

Mesh mesh_triangle(int target_nodes) {
    if (target_nodes < 10) throw std::invalid_argument("mesh_triangle: target too small");
    // (n+1)(n+2)/2 nodes: nearest n to the target
    int n = std::max(2, static_cast<int>(std::lround(
                (-3.0 + std::sqrt(1.0 + 8.0 * target_nodes)) / 2.0)));
    Mesh m = build_tau(n);
    if (min_quality(m) < 0.2) {
        m = build_tau(2 * n);
        if (min_quality(m) < 0.2)
            throw std::runtime_error("mesh_triangle: element quality below 0.2");
    }
    double count = static_cast<double>(m.nodes.size());
    if (std::abs(count - target_nodes) > 0.2 * target_nodes)
        throw std::runtime_error("mesh_triangle: node count misses target by >20%");
    return m;
}

Mesh mesh_octagon(int refinement, const Tessellation& tess) {
    if (refinement < 0) throw std::invalid_argument("mesh_octagon: refinement < 0");
    const int n = refinement + 1;
    Mesh tau = build_tau(n);
    Mesh m;
    m.subdivision = n;

    const double weld_tol = 1e-9;
    NodeHash hash(weld_tol);
    m.tile_nodes.assign(tess.tiles.size(), {});
    for (std::size_t t = 0; t < tess.tiles.size(); ++t) {
        std::vector<int>& map = m.tile_nodes[t];
        map.reserve(tau.nodes.size());
        for (cplx z : tau.nodes) {
            cplx w = tess.tiles[t].iso.apply(z);
            int j = hash.find(m.nodes, w);
            if (j < 0) {
                j = static_cast<int>(m.nodes.size());
                m.nodes.push_back(w);
                hash.insert(w, j);
            }
            map.push_back(j);
        }
        for (const auto& el : tau.elements) {
            std::array<int, 3> tri{map[el[0]], map[el[1]], map[el[2]]};
            // transported orientation flips under reversing tiles
            cplx a = m.nodes[tri[0]], b = m.nodes[tri[1]], c = m.nodes[tri[2]];
            double J = (b.real() - a.real()) * (c.imag() - a.imag()) -
                       (c.real() - a.real()) * (b.imag() - a.imag());
            if (J < 0.0) std::swap(tri[1], tri[2]);
            m.elements.push_back(tri);
        }
    }

    // boundary edges: shared by exactly one element; tag by angular sector
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& el : m.elements)
        for (int k = 0; k < 3; ++k) {
            int a = el[k], b = el[(k + 1) % 3];
            ++edge_count[{std::min(a, b), std::max(a, b)}];
        }
    for (const auto& [e, cnt] : edge_count) {
        if (cnt == 1) {
            cplx mid = 0.5 * (m.nodes[e.first] + m.nodes[e.second]);
            int side = static_cast<int>(std::lround(std::arg(mid) / (PI / 4.0)));
            side = ((side % 8) + 8) % 8;
            m.boundary_edges.push_back({e.first, e.second, "side" + std::to_string(side)});
        } else if (cnt != 2) {
            throw std::runtime_error("mesh_octagon: non-conforming edge");
        }
    }

    // periodic identification: union-find over all generator images of
    // boundary nodes that land on boundary nodes
    std::vector<int> parent(m.nodes.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    std::vector<int> bnd = m.boundary_nodes();
    std::vector<std::vector<int>> partners(m.nodes.size());
    for (int i : bnd) {
        for (int mv = 0; mv < 8; ++mv) {
            cplx w = tess.gens->moves[mv].apply(m.nodes[i]);
            int j = hash.find(m.nodes, w);
            if (j >= 0 && j != i) {
                partners[i].push_back(j);
                int ri = find(i), rj = find(j);
                if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
            }
        }
        if (partners[i].empty())
            throw std::runtime_error("mesh_octagon: boundary node without periodic partner");
    }
    m.periodic_class.resize(m.nodes.size());
    for (std::size_t i = 0; i < m.nodes.size(); ++i)
        m.periodic_class[i] = find(static_cast<int>(i));

    // involutive two-by-two pairing (greedy over the same partner links)
    for (int i : bnd) {
        if (m.pairing.count(i)) continue;
        for (int j : partners[i]) {
            if (!m.pairing.count(j)) {
                m.pairing[i] = j;
                m.pairing[j] = i;
                break;
            }
        }
        if (!m.pairing.count(i))
            throw std::runtime_error("mesh_octagon: pairing not involutive");
    }
    return m;
}

int locate_node(const Mesh& m, cplx z, double tol) {
    int best = -1;
    double bd = tol;
    for (std::size_t i = 0; i < m.nodes.size(); ++i) {
        double d = std::abs(m.nodes[i] - z);
        if (d < bd) {
            bd = d;
            best = static_cast<int>(i);
        }
    }
    return best;
}

double euclidean_area(const Mesh& m) {
    double area = 0.0;
    for (const auto& el : m.elements) {
        cplx a = m.nodes[el[0]], b = m.nodes[el[1]], c = m.nodes[el[2]];
        area += 0.5 * ((b.real() - a.real()) * (c.imag() - a.imag()) -
                       (c.real() - a.real()) * (b.imag() - a.imag()));
    }
    return area;
}

std::string mesh_to_json(const Mesh& m) {
    nlohmann::json j;
    for (cplx z : m.nodes) j["nodes"].push_back({z.real(), z.imag()});
    for (const auto& el : m.elements) j["elements"].push_back({el[0], el[1], el[2]});
    for (const auto& e : m.boundary_edges)
        j["boundary_edges"].push_back({{"a", e.a}, {"b", e.b}, {"tag", e.tag}});
    for (const auto& [a, b] : m.pairing) j["pairing"].push_back({a, b});
    j["periodic_class"] = m.periodic_class;
    j["tile_nodes"] = m.tile_nodes;
    j["subdivision"] = m.subdivision;
    return j.dump();
}

Mesh mesh_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Mesh m;
    for (const auto& p : j["nodes"]) m.nodes.emplace_back(p[0].get<double>(), p[1].get<double>());
    for (const auto& e : j["elements"])
        m.elements.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>()});
    if (j.contains("boundary_edges"))
        for (const auto& e : j["boundary_edges"])
            m.boundary_edges.push_back({e["a"].get<int>(), e["b"].get<int>(),
                                        e["tag"].get<std::string>()});
    if (j.contains("pairing"))
        for (const auto& p : j["pairing"]) m.pairing[p[0].get<int>()] = p[1].get<int>();
    if (j.contains("periodic_class"))
        m.periodic_class = j["periodic_class"].get<std::vector<int>>();
    if (j.contains("tile_nodes"))
        m.tile_nodes = j["tile_nodes"].get<std::vector<std::vector<int>>>();
    m.subdivision = j.value("subdivision", 0);
    return m;
}

} // namespace octa
