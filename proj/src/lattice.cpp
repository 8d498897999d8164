#include "octaplan/lattice.hpp"

#include <cmath>

namespace octa {

namespace {
const double PI = std::acos(-1.0);
// Generic interior point of the base tile tau; its Dirichlet margin to every
// octagon side and tile edge is > 0.09, far above all tolerances used here.
const cplx BASE_POINT{0.1234, 0.0567};
} // namespace

LatticeGenerators build_generators() {
    LatticeGenerators L;
    Iso g0;
    g0.a = 1.0 + std::sqrt(2.0);
    g0.b = std::sqrt(2.0 + 2.0 * std::sqrt(2.0));
    g0.normalize();
    for (int j = 0; j < 4; ++j) {
        L.g[j] = rotation(j * PI / 4.0).compose(g0).compose(rotation(-j * PI / 4.0));
        L.moves[2 * j] = L.g[j];
        L.moves[2 * j + 1] = L.g[j].inverse();
    }
    return L;
}

Octagon build_octagon() {
    Octagon oct;
    // Interior angle pi/4 forces circumradius acosh(cot^2(pi/8)) and apothem
    // acosh(cot(pi/8)) (right-triangle relations in the wedge of angle pi/8).
    double cot8 = 1.0 / std::tan(PI / 8.0);
    oct.circumradius = std::acosh(cot8 * cot8);
    oct.apothem = std::acosh(cot8);
    double rv = std::tanh(oct.circumradius / 2.0);
    double rm = std::tanh(oct.apothem / 2.0);
    for (int k = 0; k < 8; ++k) {
        oct.vertices[k] = std::polar(rv, PI / 8.0 + k * PI / 4.0);
        oct.side_midpoints[k] = std::polar(rm, k * PI / 4.0);
    }
    return oct;
}

WrapResult wrap(cplx z, const LatticeGenerators& gens, int max_word) {
    WrapResult out;
    std::vector<int> applied;
    double d = dist_disc(z, 0.0);
    for (int it = 0; it < max_word; ++it) {
        int best = -1;
        double bd = d - 1e-13;
        cplx bz = z;
        for (int k = 0; k < 8; ++k) {
            cplx w = gens.moves[k].apply(z);
            double dw = dist_disc(w, 0.0);
            if (dw < bd) {
                bd = dw;
                best = k;
                bz = w;
            }
        }
        if (best < 0) {
            out.point = z;
            // word maps the wrapped point back to the input: inverses of the
            // applied moves, in reverse order.
            for (auto it2 = applied.rbegin(); it2 != applied.rend(); ++it2)
                out.word.push_back(LatticeGenerators::inverse_move(*it2));
            return out;
        }
        z = bz;
        d = bd;
        applied.push_back(best);
    }
    throw std::runtime_error("wrap: descent did not terminate (malformed input)");
}

cplx apply_word(const std::vector<int>& word, cplx z, const LatticeGenerators& gens) {
    for (int k : word) z = gens.moves[k].apply(z);
    return z;
}

Iso word_iso(const std::vector<int>& word, const LatticeGenerators& gens) {
    Iso out;
    for (int k : word) out = gens.moves[k].compose(out);
    return out;
}

Triangle238 build_triangle() {
    Triangle238 t;
    t.P = 0.0;
    // Right hyperbolic triangle with angles pi/8 (P), pi/2 (Q), pi/3 (R):
    // cosh d_PQ = cos(pi/3)/sin(pi/8), cosh d_PR = cot(pi/8) cot(pi/3).
    t.d_PQ = std::acosh(std::cos(PI / 3.0) / std::sin(PI / 8.0));
    t.d_PR = std::acosh(1.0 / (std::tan(PI / 8.0) * std::tan(PI / 3.0)));
    t.Q = std::tanh(t.d_PQ / 2.0);
    t.R = std::polar(std::tanh(t.d_PR / 2.0), PI / 8.0);
    return t;
}

Iso rho_gen() { return rotation(PI / 4.0); }

Iso sigma_gen() {
    Triangle238 t = build_triangle();
    Iso b = boost_to(t.Q);
    return b.compose(rotation(PI)).compose(b.inverse());
}

Iso eps_gen() {
    Triangle238 t = build_triangle();
    Iso b = boost_to(t.R);
    return b.compose(rotation(2.0 * PI / 3.0)).compose(b.inverse());
}

int Tessellation::find_tile(const Iso& iso) const {
    cplx p = wrap(iso.apply(base_point), *gens).point;
    for (std::size_t i = 0; i < tiles.size(); ++i)
        if (tiles[i].reversing == iso.rev && std::abs(tiles[i].iso.apply(base_point) - p) < 1e-8)
            return static_cast<int>(i);
    return -1;
}

Tessellation build_tessellation(const LatticeGenerators& gens) {
    Tessellation tess;
    tess.base_point = BASE_POINT;
    tess.gens = &gens;
    const Iso gen4[4] = {rho_gen(), sigma_gen(), eps_gen(), kappa_iso()};

    tess.tiles.push_back(Tile{identity_iso(), false});
    std::vector<std::size_t> frontier{0};
    while (!frontier.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t i : frontier) {
            Iso base = tess.tiles[i].iso;
            for (const Iso& g : gen4) {
                Iso cand = g.compose(base);
                if (tess.find_tile(cand) >= 0) continue;
                // Gamma-reduce: replace cand by gamma*cand whose image of the
                // base point lies in the fundamental octagon.
                WrapResult w = wrap(cand.apply(tess.base_point), gens);
                Iso red = word_iso(w.word, gens).inverse().compose(cand);
                if (tess.find_tile(red) >= 0)
                    throw std::runtime_error("build_tessellation: duplicate tile");
                tess.tiles.push_back(Tile{red, red.rev});
                next.push_back(tess.tiles.size() - 1);
            }
        }
        frontier = std::move(next);
    }
    if (tess.tiles.size() != 96)
        throw std::runtime_error("build_tessellation: expected 96 tiles");
    return tess;
}

long riemann_hurwitz(int l, int m, int n, int genus) {
    double defect = 1.0 - (1.0 / l + 1.0 / m + 1.0 / n);
    if (defect <= 0.0) throw std::invalid_argument("riemann_hurwitz: not hyperbolic");
    double val = (2.0 * genus - 2.0) / defect;
    long r = std::lround(val);
    if (std::abs(val - r) > 1e-9)
        throw std::invalid_argument("riemann_hurwitz: non-integer order");
    return r;
}

} // namespace octa
