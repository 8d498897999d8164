// octaplan command-line tool: `group` dumps the symmetry-group tables,
// `solve` runs the desymmetrized or periodic eigenproblem and renders
// planforms, `neutral` computes the neutral stability surface.
//
// Exit codes: 0 success, 2 validation failure, 3 numerical failure.
#include "CLI11.hpp"
#include "json.hpp"

#include "octaplan/fem.hpp"
#include "octaplan/neutral.hpp"
#include "octaplan/planforms.hpp"

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace octa;

namespace {

constexpr const char* kVersion = "1.0.0";

// Maximal isotropy types with a one-dimensional fixed subspace, per irrep.
const std::vector<std::vector<std::string>> kMaximalIsotropy = {
    {"Gstar"},
    {"G0k"},
    {"G0kp"},
    {"G"},
    {"Dt8", "Q8kp"},
    {"Dt8k"},
    {"Cp8k", "Cp12", "Cp4kp"},
    {"C8k", "Ct6kp", "Dt2k"},
    {"Dt6", "Dt4k"},
    {"Dt6kp", "Dt4kp"},
    {"Ct2k", "Ctp2k"},
    {"Dt3", "Ct3kp", "Ct2k", "Ctp2k"},
    {"Dt3", "Ct3kp", "Ct2k", "Ctp2k"},
};

std::string output_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("OCTAPLAN_OUT")) return env;
    return "octaplan_out";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::string fnv1a_hex(const void* data, std::size_t bytes) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ull;
    for (std::size_t i = 0; i < bytes; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::string mesh_hash(const Mesh& m) {
    std::vector<double> buf;
    for (cplx z : m.nodes) {
        buf.push_back(z.real());
        buf.push_back(z.imag());
    }
    for (const auto& e : m.elements)
        for (int k : e) buf.push_back(static_cast<double>(k));
    return fnv1a_hex(buf.data(), buf.size() * sizeof(double));
}

void write_manifest(const std::filesystem::path& dir, const std::string& command,
                    const json& config, const std::string& meshhash = "") {
    json m;
    m["command"] = command;
    m["config"] = config;
    m["versions"] = {{"octaplan", kVersion},
                     {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                   std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                   std::to_string(EIGEN_MINOR_VERSION)},
                     {"compiler", __VERSION__}};
    if (!meshhash.empty()) m["mesh_hash"] = meshhash;
    write_file(dir / "manifest.json", m.dump(2) + "\n");
}

// ---------------------------------------------------------------- group ----

int cmd_group(const std::string& out_flag) {
    namespace fs = std::filesystem;
    fs::path dir = output_dir(out_flag);
    fs::create_directories(dir);

    LatticeGenerators gens = build_generators();
    Tessellation tess = build_tessellation(gens);
    SymGroup G = build_group(tess);
    std::vector<SubgroupRecord> cat = subgroup_catalog(G);
    const auto& table = character_table();

    // internal consistency: class sizes, orthogonality, highlighted pairs
    std::vector<std::string> diffs;
    for (int c = 0; c < 13; ++c)
        if (G.class_size[c] != kClassSizes[c])
            diffs.push_back("class " + std::string(kClassLabels[c]) + ": size " +
                            std::to_string(G.class_size[c]) + " != " +
                            std::to_string(kClassSizes[c]));
    for (int a = 0; a < 13; ++a)
        for (int b = 0; b < 13; ++b) {
            double s = 0.0;
            for (int c = 0; c < 13; ++c)
                s += kClassSizes[c] * table[a][c] * table[b][c];
            s = s / 96.0 - (a == b ? 1.0 : 0.0);
            if (std::abs(s) > 1e-12)
                diffs.push_back("orthogonality (" + std::to_string(a + 1) + "," +
                                std::to_string(b + 1) + ") off by " + std::to_string(s));
        }
    for (int chi = 0; chi < 13; ++chi)
        for (const std::string& name : kMaximalIsotropy[chi])
            if (fixed_dim(G, chi, find_subgroup(cat, name)) != 1)
                diffs.push_back("dim(V^" + name + ") != 1 for chi" +
                                std::to_string(chi + 1));
    if (!diffs.empty()) {
        std::cerr << "group table mismatch:\n";
        for (const auto& d : diffs) std::cerr << "  " << d << "\n";
        return 2;
    }

    json classes;
    classes["order"] = SymGroup::N;
    classes["num_classes"] = 13;
    classes["classes"] = json::array();
    for (int c = 0; c < 13; ++c)
        classes["classes"].push_back({{"index", c},
                                      {"label", kClassLabels[c]},
                                      {"size", G.class_size[c]},
                                      {"representative", G.class_rep[c]},
                                      {"representative_order", G.order[G.class_rep[c]]}});
    write_file(dir / "classes.json", classes.dump(2) + "\n");

    json chars;
    chars["class_labels"] = json::array();
    for (const char* l : kClassLabels) chars["class_labels"].push_back(l);
    chars["table"] = json::array();
    for (int chi = 0; chi < 13; ++chi) {
        json row = json::array();
        for (int c = 0; c < 13; ++c) row.push_back(table[chi][c]);
        chars["table"].push_back(row);
    }
    write_file(dir / "characters.json", chars.dump(2) + "\n");

    json subs = json::array();
    for (const auto& H : cat) {
        json rec;
        rec["name"] = H.name;
        rec["order"] = static_cast<int>(H.elements.size());
        rec["generators"] = H.generators;
        json dec = json::array();
        for (int d : H.decomp) dec.push_back(d);
        rec["class_decomposition"] = dec;
        subs.push_back(rec);
    }
    write_file(dir / "subgroups.json", subs.dump(2) + "\n");

    json iso;
    iso["irreps"] = json::array();
    for (int chi = 0; chi < 13; ++chi) iso["irreps"].push_back("chi" + std::to_string(chi + 1));
    iso["subgroups"] = json::array();
    for (const auto& H : cat) iso["subgroups"].push_back(H.name);
    iso["dims"] = json::array();
    for (int chi = 0; chi < 13; ++chi) {
        json row = json::array();
        for (const auto& H : cat) row.push_back(fixed_dim(G, chi, H));
        iso["dims"].push_back(row);
    }
    iso["maximal_pairs"] = json::array();
    for (int chi = 0; chi < 13; ++chi)
        for (const std::string& name : kMaximalIsotropy[chi])
            iso["maximal_pairs"].push_back(
                {{"irrep", "chi" + std::to_string(chi + 1)},
                 {"subgroup", name},
                 {"dim", fixed_dim(G, chi, find_subgroup(cat, name))}});
    iso["principal"] = json::object();
    for (int chi = 0; chi < 13; ++chi)
        iso["principal"]["chi" + std::to_string(chi + 1)] = principal_isotropy(G, cat, chi);
    write_file(dir / "isotropy_report.json", iso.dump(2) + "\n");

    write_manifest(dir, "group", json::object());
    std::cout << "group: 96 elements, 13 classes, " << cat.size()
              << " subgroups -> " << dir.string() << "\n";
    return 0;
}

// ---------------------------------------------------------------- solve ----

void write_eigencsv(const std::filesystem::path& path, const EigenResult& res) {
    std::ostringstream os;
    os.precision(12);
    std::vector<int> groups = multiplicity_groups(res.eigenvalues);
    os << "index,lambda,residual,group\n";
    for (int i = 0; i < res.eigenvalues.size(); ++i)
        os << i << "," << res.eigenvalues[i] << "," << res.residuals[i] << ","
           << groups[i] << "\n";
    write_file(path, os.str());
}

int cmd_solve(const std::string& out_flag, const std::string& rep, bool periodic,
              int nodes, int n, unsigned seed, double merge_window, int resolution,
              int max_images) {
    namespace fs = std::filesystem;
    if (rep.empty() == !periodic) {
        std::cerr << "solve: exactly one of --rep and --periodic is required\n";
        return 2;
    }
    if (nodes < 10 || n < 1) {
        std::cerr << "solve: --nodes must be >= 10 and --n >= 1\n";
        return 2;
    }
    fs::path dir = output_dir(out_flag);
    fs::create_directories(dir);

    LatticeGenerators gens = build_generators();
    Tessellation tess = build_tessellation(gens);
    SymGroup G = build_group(tess);
    const auto& cat = subgroup_catalog(G);

    json config = {{"rep", rep},        {"periodic", periodic},
                   {"nodes", nodes},    {"n", n},
                   {"seed", seed},      {"merge_window", merge_window},
                   {"resolution", resolution}};

    if (!rep.empty()) {
        int chi = -1;
        if (rep.size() > 3 && rep.substr(0, 3) == "chi") chi = std::atoi(rep.c_str() + 3) - 1;
        if (chi < 0 || chi > 3) {
            std::cerr << "solve: --rep must be chi1..chi4 (one-dimensional irreps)\n";
            return 2;
        }
        Mesh tri = mesh_triangle(nodes);
        config["subdivision"] = tri.subdivision;
        write_manifest(dir, "solve", config, mesh_hash(tri));

        BCRecipe bc = bc_recipe(G, chi);
        AssembledSystem sys = assemble(tri);
        std::vector<int> fixed;
        auto add = [&](char cond, const char* tag) {
            if (cond != 'D') return;
            for (int v : tri.tagged_nodes(tag)) fixed.push_back(v);
        };
        add(bc.pq, "PQ");
        add(bc.pr, "RP");
        add(bc.qr, "QR");
        sys = apply_dirichlet(sys, fixed);
        EigenResult res = solve_smallest(sys, std::min<int>(n, sys.K.rows()),
                                         SolveMethod::Auto, seed);
        write_eigencsv(dir / "eigenvalues.csv", res);

        PlanformPipeline pl(tess, G, tri.subdivision - 1);
        Planform pf = solve_desymmetrized(pl, chi, tri);
        json cls;
        cls["mode"] = "desymmetrized";
        cls["irrep"] = "chi" + std::to_string(chi + 1);
        cls["boundary_conditions"] = std::string{bc.pq} + bc.pr + bc.qr;
        cls["eigenvalue"] = pf.eigenvalue;
        cls["isotropy"] = pf.isotropy;
        write_file(dir / "classification.json", cls.dump(2) + "\n");

        std::string img = "planform_chi" + std::to_string(chi + 1) + "_" + pf.isotropy + ".png";
        render_to_file(extend_to_disc(pl, pf, resolution), (dir / img).string());
        std::cout << "solve --rep " << rep << ": lambda = " << pf.eigenvalue << " -> "
                  << dir.string() << "\n";
        return 0;
    }

    // periodic branch: pick the subdivision whose reduced dof count 48 m^2 - 2
    // is closest to the requested size
    int m = std::max(2, static_cast<int>(std::lround(std::sqrt((nodes + 2) / 48.0))));
    int refinement = m - 1;
    config["subdivision"] = m;
    PlanformPipeline pl(tess, G, refinement);
    write_manifest(dir, "solve", config, mesh_hash(pl.octagon()));

    AssembledSystem sysp = apply_periodic(pl.system(), pl.octagon());
    EigenResult res = solve_smallest(sysp, std::min<int>(n, sysp.K.rows()),
                                     SolveMethod::Auto, seed);
    write_eigencsv(dir / "eigenvalues.csv", res);

    {
        std::ostringstream os;
        os.precision(12);
        os << "lambda,count\n";
        Staircase st;
        if (res.eigenvalues.size() >= 50) st = weyl_staircase(res.eigenvalues);
        for (int i = 0; i < res.eigenvalues.size(); ++i)
            os << res.eigenvalues[i] << "," << (i + 1) << "\n";
        write_file(dir / "staircase.csv", os.str());
        config["weyl_slope"] = st.slope;
    }

    std::vector<Eigenspace> spaces = solve_periodic(pl, n, merge_window);
    json cls;
    cls["mode"] = "periodic";
    if (res.eigenvalues.size() >= 50) cls["weyl_slope"] = config["weyl_slope"];
    cls["eigenspaces"] = json::array();
    int images = 0;
    for (const Eigenspace& s : spaces) {
        if (s.first_index >= n) continue;
        json rec;
        rec["lambda"] = s.lambda;
        rec["first_index"] = s.first_index;
        rec["dim"] = static_cast<int>(s.basis.cols());
        rec["irrep"] = s.label;
        rec["deviation"] = s.deviation;
        rec["refine_flagged"] = s.refine_flagged;
        rec["planforms"] = json::array();
        if (!s.label.empty()) {
            int chi = std::atoi(s.label.c_str() + 3) - 1;
            for (const std::string& name : kMaximalIsotropy[chi]) {
                if (images >= max_images) break;
                Planform pf = project_isotropy(pl, s, find_subgroup(cat, name));
                if (pf.empty()) continue;
                std::string img = "planform_" + s.label + "_" + name + ".png";
                if (!std::filesystem::exists(dir / img)) {
                    render_to_file(extend_to_disc(pl, pf, resolution), (dir / img).string());
                    ++images;
                }
                rec["planforms"].push_back(img);
            }
        }
        cls["eigenspaces"].push_back(rec);
    }
    write_file(dir / "classification.json", cls.dump(2) + "\n");
    std::cout << "solve --periodic: " << res.eigenvalues.size() << " eigenvalues, "
              << cls["eigenspaces"].size() << " eigenspaces, " << images
              << " planform images -> " << dir.string() << "\n";
    return 0;
}

// -------------------------------------------------------------- neutral ----

int cmd_neutral(const std::string& out_flag, double sigma1, double sigma2, double theta,
                std::vector<int> grid, double rho_max, double beta_max) {
    namespace fs = std::filesystem;
    if (sigma1 <= 0.0 || sigma2 <= 0.0) {
        std::cerr << "neutral: sigma1 and sigma2 must be positive\n";
        return 2;
    }
    if (grid.size() != 2 || grid[0] < 2 || grid[1] < 1) {
        std::cerr << "neutral: --grid needs two entries, n_rho >= 2 and n_beta >= 1\n";
        return 2;
    }
    fs::path dir = output_dir(out_flag);
    fs::create_directories(dir);
    json config = {{"sigma1", sigma1},   {"sigma2", sigma2}, {"theta", theta},
                   {"grid", grid},       {"rho_max", rho_max}, {"beta_max", beta_max}};
    write_manifest(dir, "neutral", config);

    MexicanHat f{sigma1, sigma2, theta};
    NeutralSurface s = neutral_surface(f, grid[0], grid[1], rho_max, beta_max);

    std::ostringstream os;
    os.precision(12);
    os << "rho,beta,w_hat,mu\n";
    for (std::size_t i = 0; i < s.rhos.size(); ++i)
        for (std::size_t j = 0; j < s.betas.size(); ++j) {
            std::size_t idx = i * s.betas.size() + j;
            os << s.rhos[i] << "," << s.betas[j] << "," << s.what[idx] << ",";
            if (std::isnan(s.mu[idx]))
                os << "nan";
            else
                os << s.mu[idx];
            os << "\n";
        }
    write_file(dir / "neutral.csv", os.str());

    json summary;
    summary["status"] = s.instability ? "instability" : "no instability";
    if (s.instability) {
        summary["rho_c"] = s.rho_c;
        summary["beta_c"] = s.beta_c;
        summary["mu_c"] = s.mu_c;
    }
    write_file(dir / "summary.json", summary.dump(2) + "\n");
    std::cout << "neutral: " << summary["status"].get<std::string>() << " -> "
              << dir.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"octaplan: hyperbolic-planform toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // let --out appear after the subcommand name
    std::string out;
    app.add_option("--out", out, "output directory (default: $OCTAPLAN_OUT or ./octaplan_out)");

    CLI::App* group = app.add_subcommand("group", "symmetry-group tables and isotropy report");

    CLI::App* solve = app.add_subcommand("solve", "eigenproblem and planform rendering");
    std::string rep;
    bool periodic = false;
    int nodes = 3000, n = 10, resolution = 256, max_images = 12;
    unsigned seed = 20240816;
    double merge_window = 4e-3;
    solve->add_option("--rep", rep, "desymmetrized solve for chi1..chi4");
    solve->add_flag("--periodic", periodic, "periodic octagon spectrum");
    solve->add_option("--nodes", nodes, "mesh size target");
    solve->add_option("--n", n, "number of eigenpairs");
    solve->add_option("--seed", seed, "eigensolver seed");
    solve->add_option("--merge-window", merge_window, "eigenspace merge window (relative)");
    solve->add_option("--resolution", resolution, "planform raster resolution");
    solve->add_option("--max-images", max_images, "cap on rendered planforms");

    CLI::App* neutral = app.add_subcommand("neutral", "neutral stability surface");
    double sigma1 = 1.0, sigma2 = 2.0, theta = 1.0, rho_max = 3.0, beta_max = 4.0;
    std::vector<int> grid = {31, 11};
    neutral->add_option("--sigma1", sigma1, "excitatory width");
    neutral->add_option("--sigma2", sigma2, "inhibitory width");
    neutral->add_option("--theta", theta, "inhibition weight");
    neutral->add_option("--grid", grid, "n_rho n_beta")->expected(2);
    neutral->add_option("--rho-max", rho_max, "frequency range");
    neutral->add_option("--beta-max", beta_max, "scale range");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (group->parsed()) return cmd_group(out);
        if (solve->parsed())
            return cmd_solve(out, rep, periodic, nodes, n, seed, merge_window, resolution,
                             max_images);
        if (neutral->parsed())
            return cmd_neutral(out, sigma1, sigma2, theta, grid, rho_max, beta_max);
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
