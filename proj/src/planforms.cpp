#include "octaplan/planforms.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace octa {

namespace {
std::string chi_name(int chi) { return "chi" + std::to_string(chi + 1); }
} // namespace

BCRecipe bc_recipe(const SymGroup& G, int chi) {
    if (chi < 0 || chi > 3) throw std::invalid_argument("bc_recipe: need a 1-D irrep");
    BCRecipe r;
    r.pq = G.character(chi, G.kappa) > 0.0 ? 'N' : 'D';
    r.pr = G.character(chi, G.kappap) > 0.0 ? 'N' : 'D';
    r.qr = G.character(chi, G.kappapp) > 0.0 ? 'N' : 'D';
    return r;
}

PlanformPipeline::PlanformPipeline(const Tessellation& tess, const SymGroup& G, int refinement)
    : tess_(&tess), G_(&G), catalog_(subgroup_catalog(G)),
      mesh_(mesh_octagon(refinement, tess)), sys_(assemble(mesh_)) {
    // uniform-grid element locator over the octagon bounding box
    double R = 0.0;
    for (cplx z : mesh_.nodes) R = std::max(R, std::abs(z));
    R += 1e-6;
    double hmax = 0.0;
    for (const auto& el : mesh_.elements)
        for (int k = 0; k < 3; ++k)
            hmax = std::max(hmax, std::abs(mesh_.nodes[el[k]] - mesh_.nodes[el[(k + 1) % 3]]));
    cell_ = std::max(hmax, 1e-3);
    grid_n_ = static_cast<int>(std::ceil(2.0 * R / cell_)) + 1;
    cells_.assign(static_cast<std::size_t>(grid_n_) * grid_n_, {});
    auto cell_of = [&](double x) {
        return std::clamp(static_cast<int>((x + R) / cell_), 0, grid_n_ - 1);
    };
    for (std::size_t e = 0; e < mesh_.elements.size(); ++e) {
        const auto& el = mesh_.elements[e];
        double x0 = 1e9, x1 = -1e9, y0 = 1e9, y1 = -1e9;
        for (int k = 0; k < 3; ++k) {
            x0 = std::min(x0, mesh_.nodes[el[k]].real());
            x1 = std::max(x1, mesh_.nodes[el[k]].real());
            y0 = std::min(y0, mesh_.nodes[el[k]].imag());
            y1 = std::max(y1, mesh_.nodes[el[k]].imag());
        }
        for (int cx = cell_of(x0); cx <= cell_of(x1); ++cx)
            for (int cy = cell_of(y0); cy <= cell_of(y1); ++cy)
                cells_[static_cast<std::size_t>(cy) * grid_n_ + cx].push_back(static_cast<int>(e));
    }
}

Eigen::VectorXd PlanformPipeline::act(int g, const Eigen::VectorXd& f) const {
    const int gi = G_->invert(g);
    Eigen::VectorXd out(f.size());
    for (std::size_t t = 0; t < mesh_.tile_nodes.size(); ++t) {
        const std::vector<int>& src = mesh_.tile_nodes[t];
        const std::vector<int>& dst = mesh_.tile_nodes[G_->mul(gi, static_cast<int>(t))];
        for (std::size_t k = 0; k < src.size(); ++k) out[src[k]] = f[dst[k]];
    }
    return out;
}

double PlanformPipeline::m_inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    return u.dot(sys_.M * v);
}

int PlanformPipeline::locate_element(cplx z, double* l0, double* l1, double* l2) const {
    double R = (grid_n_ - 1) * cell_ / 2.0;
    int cx = std::clamp(static_cast<int>((z.real() + R) / cell_), 0, grid_n_ - 1);
    int cy = std::clamp(static_cast<int>((z.imag() + R) / cell_), 0, grid_n_ - 1);
    for (int e : cells_[static_cast<std::size_t>(cy) * grid_n_ + cx]) {
        const auto& el = mesh_.elements[e];
        cplx a = mesh_.nodes[el[0]], b = mesh_.nodes[el[1]], c = mesh_.nodes[el[2]];
        double J = (b.real() - a.real()) * (c.imag() - a.imag()) -
                   (c.real() - a.real()) * (b.imag() - a.imag());
        double u = ((b.real() - z.real()) * (c.imag() - z.imag()) -
                    (c.real() - z.real()) * (b.imag() - z.imag())) / J;
        double v = ((c.real() - z.real()) * (a.imag() - z.imag()) -
                    (a.real() - z.real()) * (c.imag() - z.imag())) / J;
        double w = 1.0 - u - v;
        if (u >= -1e-9 && v >= -1e-9 && w >= -1e-9) {
            *l0 = u;
            *l1 = v;
            *l2 = w;
            return e;
        }
    }
    return -1;
}

double PlanformPipeline::field_value(const Eigen::VectorXd& f, cplx z, bool* ok) const {
    double u, v, w;
    int e = locate_element(z, &u, &v, &w);
    if (e >= 0) {
        if (ok) *ok = true;
        const auto& el = mesh_.elements[e];
        return u * f[el[0]] + v * f[el[1]] + w * f[el[2]];
    }
    // chord-approximation sliver near the curved boundary: nearest node
    int j = locate_node(mesh_, z, 0.05);
    if (j >= 0) {
        if (ok) *ok = true;
        return f[j];
    }
    if (ok) *ok = false;
    return 0.0;
}

Planform solve_desymmetrized(const PlanformPipeline& pl, int chi, const Mesh& tri) {
    if (tri.subdivision != pl.octagon().subdivision)
        throw std::invalid_argument("solve_desymmetrized: mesh resolutions differ");
    const SymGroup& G = pl.group();
    BCRecipe rec = bc_recipe(G, chi);

    std::vector<int> dirichlet;
    for (const auto& [tag, cond] : {std::pair<std::string, char>{"PQ", rec.pq},
                                    {"RP", rec.pr},
                                    {"QR", rec.qr}}) {
        if (cond != 'D') continue;
        std::vector<int> t = tri.tagged_nodes(tag);
        dirichlet.insert(dirichlet.end(), t.begin(), t.end());
    }
    AssembledSystem sys = assemble(tri);
    AssembledSystem bc = apply_dirichlet(sys, dirichlet);
    EigenResult r = solve_smallest(bc, std::min<int>(3, bc.K.rows()));
    int pick = 0;
    if (chi == 0)
        while (pick < r.eigenvalues.size() && std::abs(r.eigenvalues[pick]) < 1e-8) ++pick;
    if (pick >= r.eigenvalues.size())
        throw std::runtime_error("solve_desymmetrized: no admissible eigenpair");

    // expand to all triangle nodes (Dirichlet nodes are zero)
    Eigen::VectorXd tau = Eigen::VectorXd::Zero(static_cast<int>(tri.nodes.size()));
    for (std::size_t i = 0; i < tri.nodes.size(); ++i)
        if (bc.dof_of_node[i] >= 0) tau[i] = r.eigenvectors(bc.dof_of_node[i], pick);

    // transport with sign chi(g) on each tile; welded nodes must agree
    const Mesh& oct = pl.octagon();
    Eigen::VectorXd values = Eigen::VectorXd::Zero(static_cast<int>(oct.nodes.size()));
    std::vector<char> seen(oct.nodes.size(), 0);
    double scale = tau.cwiseAbs().maxCoeff();
    for (std::size_t t = 0; t < oct.tile_nodes.size(); ++t) {
        double s = G.character(chi, static_cast<int>(t));
        for (std::size_t k = 0; k < oct.tile_nodes[t].size(); ++k) {
            int i = oct.tile_nodes[t][k];
            double val = s * tau[static_cast<int>(k)];
            if (seen[i] && std::abs(values[i] - val) > 1e-6 * scale)
                throw std::runtime_error("solve_desymmetrized: discontinuous extension");
            values[i] = val;
            seen[i] = 1;
        }
    }
    Planform p;
    p.values = values;
    p.eigenvalue = r.eigenvalues[pick];
    p.irrep = chi_name(chi);
    p.isotropy = principal_isotropy(G, pl.catalog(), chi);
    return p;
}

Classification classify_eigenspace(const PlanformPipeline& pl, const Eigen::MatrixXd& basis) {
    const SymGroup& G = pl.group();
    Classification out;
    for (int c = 0; c < 13; ++c) {
        double t = 0.0;
        for (int i = 0; i < basis.cols(); ++i)
            t += pl.m_inner(basis.col(i), pl.act(G.class_rep[c], basis.col(i)));
        out.traces[c] = t;
    }
    const auto& T = character_table();
    out.deviation = 1e30;
    for (int row = 0; row < 13; ++row) {
        double dev = 0.0;
        for (int c = 0; c < 13; ++c) dev = std::max(dev, std::abs(out.traces[c] - T[row][c]));
        if (dev < out.deviation) {
            out.deviation = dev;
            out.label = chi_name(row);
        }
    }
    return out;
}

std::vector<Eigenspace> solve_periodic(const PlanformPipeline& pl, int n, double merge_window) {
    AssembledSystem p = apply_periodic(pl.system(), pl.octagon());
    const int nsolve = std::min(static_cast<int>(p.K.rows()), n + 6);
    EigenResult r = solve_smallest(p, nsolve);

    // expand reduced eigenvectors to full nodal fields (inner products match)
    Eigen::MatrixXd full(pl.octagon().nodes.size(), nsolve);
    for (std::size_t i = 0; i < pl.octagon().nodes.size(); ++i)
        full.row(static_cast<int>(i)) = r.eigenvectors.row(p.dof_of_node[i]);

    // atomic clusters at relative gap 1e-6
    std::vector<std::pair<int, int>> clusters; // [begin, end)
    int begin = 0;
    for (int i = 1; i <= nsolve; ++i) {
        if (i == nsolve ||
            r.eigenvalues[i] - r.eigenvalues[i - 1] >
                1e-6 * std::max({std::abs(r.eigenvalues[i]), std::abs(r.eigenvalues[i - 1]), 1.0})) {
            clusters.emplace_back(begin, i);
            begin = i;
        }
    }

    const auto& T = character_table();
    std::vector<Eigenspace> out;
    std::size_t pos = 0;
    while (pos < clusters.size()) {
        int accepted = 0;
        Classification best;
        // try the longest admissible run of clusters first (total dim <= 4,
        // eigenvalues within a 4e-3 relative window)
        for (int span = static_cast<int>(clusters.size() - pos); span >= 1 && !accepted; --span) {
            int b = clusters[pos].first, e = clusters[pos + span - 1].second;
            int dim = e - b;
            if (dim > 4) continue;
            double lo = r.eigenvalues[b], hi = r.eigenvalues[e - 1];
            if (hi - lo > merge_window * std::max(std::abs(hi), 1.0)) continue;
            Classification c = classify_eigenspace(pl, full.middleCols(b, dim));
            int chi_dim = static_cast<int>(T[std::stoi(c.label.substr(3)) - 1][0]);
            if (c.deviation <= 0.1 && chi_dim == dim) {
                accepted = span;
                best = c;
            }
        }
        int span = accepted ? accepted : 1;
        int b = clusters[pos].first, e = clusters[pos + span - 1].second;
        Eigenspace sp;
        sp.first_index = b;
        sp.lambda = r.eigenvalues.segment(b, e - b).mean();
        sp.basis = full.middleCols(b, e - b);
        if (accepted) {
            sp.label = best.label;
            sp.traces = best.traces;
            sp.deviation = best.deviation;
            sp.refine_flagged = span > 1;
        } else {
            Classification c = classify_eigenspace(pl, sp.basis);
            sp.label = ""; // unclassified; report the trace vector anyway
            sp.traces = c.traces;
            sp.deviation = c.deviation;
            sp.refine_flagged = true;
        }
        if (sp.first_index < n) out.push_back(std::move(sp));
        pos += span;
    }
    return out;
}

Planform project_isotropy(const PlanformPipeline& pl, const Eigenspace& space,
                          const SubgroupRecord& H, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> G01(0.0, 1.0);
    Eigen::VectorXd c(space.basis.cols());
    for (int i = 0; i < c.size(); ++i) c[i] = G01(rng);
    Eigen::VectorXd phi = space.basis * c;
    double nin = std::sqrt(pl.m_inner(phi, phi));

    Eigen::VectorXd proj = Eigen::VectorXd::Zero(phi.size());
    for (int h : H.elements) proj += pl.act(h, phi);
    proj /= static_cast<double>(H.elements.size());
    double nout = std::sqrt(pl.m_inner(proj, proj));
    Planform p;
    if (nout < 1e-6 * nin) return p; // zero projection
    proj /= nout;
    // sign convention: maximum-absolute-value node positive
    int imax = 0;
    proj.cwiseAbs().maxCoeff(&imax);
    if (proj[imax] < 0.0) proj = -proj;
    p.values = proj;
    p.eigenvalue = space.lambda;
    p.irrep = space.label;
    p.isotropy = H.name;
    return p;
}

Raster extend_to_disc(const PlanformPipeline& pl, const Planform& p, int resolution) {
    Raster r;
    r.width = r.height = resolution;
    r.values.assign(static_cast<std::size_t>(resolution) * resolution, 0.0);
    r.mask.assign(r.values.size(), 0);
    const LatticeGenerators& L = *pl.tess().gens;
    for (int iy = 0; iy < resolution; ++iy)
        for (int ix = 0; ix < resolution; ++ix) {
            double x = (2.0 * ix + 1.0) / resolution - 1.0;
            double y = 1.0 - (2.0 * iy + 1.0) / resolution; // +y up
            cplx z(x, y);
            if (std::abs(z) > 0.995) continue;
            cplx w;
            try {
                w = wrap(z, L).point;
            } catch (const std::exception&) {
                continue;
            }
            bool ok = false;
            double v = pl.field_value(p.values, w, &ok);
            if (!ok) continue;
            std::size_t i = static_cast<std::size_t>(iy) * resolution + ix;
            r.values[i] = v;
            r.mask[i] = 1;
        }
    return r;
}

Image render(const Raster& r) {
    Image img = make_image(r.width, r.height);
    double vmax = 0.0;
    for (std::size_t i = 0; i < r.values.size(); ++i)
        if (r.mask[i]) vmax = std::max(vmax, std::abs(r.values[i]));
    for (int y = 0; y < r.height; ++y)
        for (int x = 0; x < r.width; ++x) {
            std::size_t i = static_cast<std::size_t>(y) * r.width + x;
            if (!r.mask[i]) {
                img.set(x, y, 210, 210, 210); // background
                continue;
            }
            std::uint8_t cr, cg, cb;
            diverging_color(vmax > 0.0 ? r.values[i] / vmax : 0.0, cr, cg, cb);
            img.set(x, y, cr, cg, cb);
        }
    return img;
}

void render_to_file(const Raster& r, const std::string& path) {
    write_image(render(r), path);
}

} // namespace octa
