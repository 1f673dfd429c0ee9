#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "amplitile/chords.hpp"
#include "amplitile/cluster.hpp"
#include "amplitile/facets.hpp"
#include "amplitile/geometry.hpp"
#include "amplitile/plabic.hpp"
#include "amplitile/promote.hpp"

using namespace amplitile;
using json = nlohmann::json;

namespace {

// input problems; everything else that throws is also an input problem unless reported as a failed check
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    uint64_t seed = 1;
    int trials = 0;
    int threads = 1;
    bool text = false;
    std::string chords, recipe, window, point, nodes, butterfly, poly, poly_file, side = "L", at, mode = "coord",
        kind = "domino", catalog, name = "six-chord";
    int n = 0, k = 0;
    bool list = false, verify = false, signs = false;
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t pos;
            out.push_back(std::stoi(tok, &pos));
            if (pos != tok.size()) throw InputError("bad integer '" + tok + "'");
        } catch (const std::logic_error&) {
            throw InputError("bad integer '" + tok + "'");
        }
    }
    return out;
}

Q parse_q(const std::string& s) {
    Q q;
    if (s.empty() || q.set_str(s, 10) != 0) throw InputError("bad rational '" + s + "'");
    q.canonicalize();
    if (q.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
    return q;
}

std::vector<Q> parse_nodes(const std::string& s) {
    std::vector<Q> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_q(tok));
    return out;
}

json matrix_json(const Matrix& M) {
    json j = json::array();
    for (int i = 0; i < M.rows; ++i) {
        json row = json::array();
        for (int c = 0; c < M.cols; ++c) row.push_back(M(i, c).get_str());
        j.push_back(row);
    }
    return j;
}

Matrix matrix_from(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw InputError("matrix must be a nonempty array of rows");
    Matrix M(int(j.size()), int(j[0].size()));
    for (int i = 0; i < M.rows; ++i) {
        if (j[i].size() != size_t(M.cols)) throw InputError("ragged matrix");
        for (int c = 0; c < M.cols; ++c) {
            auto& x = j[i][c];
            M(i, c) = x.is_string() ? parse_q(x.get<std::string>()) : parse_q(std::to_string(x.get<long long>()));
        }
    }
    return M;
}

ChordDiagram load_chords(const std::string& path) {
    try {
        return chord_diagram_from_json(read_json(path));
    } catch (const ChordError& e) {
        throw InputError(e.kind + ": " + e.what());
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

RecipePtr load_recipe(const std::string& path) {
    try {
        return recipe_from_json(read_json(path));
    } catch (const ChordError& e) {
        throw InputError(e.kind + ": " + e.what());
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

Matrix default_z(const Config& c, int n, int k) {
    if (c.nodes.empty()) return vandermonde_Z(n, k);
    auto nodes = parse_nodes(c.nodes);
    if (int(nodes.size()) != n) throw InputError("--nodes needs " + std::to_string(n) + " values");
    Matrix Z = vandermonde(nodes, k + 4);
    if (!all_maximal_minors_positive(Z)) throw InputError("nodes do not give a positive Z (use increasing nodes)");
    return Z;
}

// graph from exactly one of --chords, --recipe, --window
PlabicGraph load_graph(const Config& c) {
    int given = !c.chords.empty() + !c.recipe.empty() + !c.window.empty();
    if (given != 1) throw InputError("give exactly one of --chords, --recipe, --window");
    if (!c.chords.empty()) return cell_from_chord_diagram(load_chords(c.chords));
    if (!c.recipe.empty()) return cell_from_recipe(load_recipe(c.recipe));
    try {
        return cell_from_decorated_permutation(parse_ints(c.window));
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(std::string("window: ") + e.what());
    }
}

json permutation_json(const DecoratedPermutation& p) {
    json j;
    j["window"] = p.affine_window();
    json fixed = json::object();
    for (auto [m, col] : p.fixed_color) fixed[std::to_string(m)] = col == 1 ? "loop" : "coloop";
    j["fixed"] = fixed;
    return j;
}

json graph_summary(const PlabicGraph& G) {
    auto td = trips(G);
    json j;
    j["n"] = int(G.markers.size());
    j["faces"] = face_count(G);
    j["reduced"] = is_reduced(G);
    j["dimension"] = dimension(G);
    j["permutation"] = permutation_json(td.perm);
    return j;
}

// ---- subcommands; each returns the exit code and fills `out`

int run_chords(const std::string& sub, const Config& c, json& out) {
    if (sub == "enumerate") {
        if (c.n < 5 || c.k < 1 || c.k > c.n - 4) throw InputError("need n >= 5 and 1 <= k <= n - 4");
        auto ds = enumerate_chord_diagrams(c.n, c.k);
        out["n"] = c.n;
        out["k"] = c.k;
        out["count"] = ds.size();
        out["narayana"] = narayana_count(c.n, c.k);
        if (c.list) {
            out["diagrams"] = json::array();
            for (auto& D : ds) out["diagrams"].push_back(to_json(D));
        }
        return int(ds.size()) == narayana_count(c.n, c.k) ? 0 : 1;
    }
    if (sub == "example") {
        if (c.name == "six-chord") out = to_json(example_diagram_six_chord());
        else if (c.name == "mixed") out = to_json(example_recipe_mixed());
        else throw InputError("unknown example '" + c.name + "' (six-chord, mixed)");
        return 0;
    }
    if (sub == "recipe") {
        auto D = load_chords(c.chords);
        out = to_json(recipe_from_chord_diagram(D));
        return 0;
    }
    // classify
    auto D = load_chords(c.chords);
    json rel = json::array();
    for (int i = 1; i <= D.k(); ++i)
        for (int j = 1; j <= D.k(); ++j)
            if (i != j)
                for (auto& r : classify_pair(D, i, j)) rel.push_back({{"i", i}, {"j", j}, {"relation", r}});
    out["diagram"] = to_json(D);
    out["relations"] = rel;
    return 0;
}

int run_cell(const std::string& sub, const Config& c, json& out) {
    Config cc = c;
    if (sub == "from-chords") cc.recipe.clear(), cc.window.clear();
    if (sub == "from-recipe") cc.chords.clear(), cc.window.clear();
    if (sub == "from-perm") cc.chords.clear(), cc.recipe.clear();
    auto G = load_graph(cc);
    out = graph_summary(G);
    out["graph"] = to_json(G);
    return 0;
}

int run_graph(const std::string& sub, const Config& c, json& out) {
    auto G = load_graph(c);
    if (sub == "reduced") {
        auto td = trips(G);
        out = graph_summary(G);
        out["closed_trip"] = td.closed_trip;
        out["self_intersection"] = td.self_intersection;
        out["bad_double_crossing"] = td.bad_double_crossing;
        out["fixed_point_not_lollipop"] = td.fixed_point_not_lollipop;
        return 0;
    }
    auto T = matchings(G);
    if (sub == "positroid") {
        auto P = positroid(T);
        out["k"] = T.k;
        out["bases"] = json::array();
        for (auto m : P) out["bases"].push_back(mask_to_markers(m, T.markers));
        out["count"] = P.size();
        return 0;
    }
    Rng rng(c.seed);
    Matrix C = sample_point(G, T, random_weights(G, rng));
    auto want = trip_permutation(G);
    auto got = permutation_of_matrix(C, G.markers);
    out["C"] = matrix_json(C);
    out["permutation_matches"] = got == want;
    return got == want ? 0 : 1;
}

int run_z(const Config& c, json& out) {
    if (c.n < 1 || c.k < 0) throw InputError("need n >= 1, k >= 0");
    Matrix Z = default_z(c, c.n, c.k);
    out["Z"] = matrix_json(Z);
    out["positive"] = all_maximal_minors_positive(Z);
    return 0;
}

int run_promote(const Config& c, json& out) {
    auto b = parse_ints(c.butterfly);
    if (b.size() != 5) throw InputError("--butterfly needs five markers a,b,c,d,n");
    Butterfly B{b[0], b[1], b[2], b[3], b[4]};
    if (c.side != "L" && c.side != "R") throw InputError("--side must be L or R");
    Side side = c.side == "L" ? Side::L : Side::R;
    Poly p;
    try {
        if (!c.poly_file.empty()) p = poly_from_json(read_json(c.poly_file));
        else if (!c.poly.empty()) p = parse_chain(c.poly);
        else throw InputError("give --poly or --poly-json");
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(std::string("polynomial: ") + e.what());
    }
    auto pr = promote(p, B, side);
    out["input"] = to_json(p);
    out["numerator"] = to_json(pr.numerator);
    out["stripped"] = to_json(pr.stripped);
    json tp = json::object();
    for (auto& [s, e] : pr.tprime) tp[to_string(s)] = e;
    out["tprime"] = tp;
    out["rescaled"] = to_json(rescaled_promote(p, B, side));
    out["text"] = to_string(pr.stripped);
    return 0;
}

int run_dominoes(const Config& c, json& out) {
    auto D = load_chords(c.chords);
    auto dom = domino_variables(D);
    json rows = json::array();
    for (int i = 1; i <= D.k(); ++i)
        for (int z = 0; z < 5; ++z) {
            int v = dom.id[i][z];
            json r{{"chord", i}, {"letter", letter_name(z)}, {"text", to_string(dom.table[i][z])},
                   {"poly", to_json(dom.table[i][z])}};
            if (dom.key[v] != std::pair<int, int>{i, z}) r["alias_of"] = dom.name(v);
            rows.push_back(r);
        }
    out["entries"] = rows;
    out["unique"] = dom.count();
    return 0;
}

int run_functionaries(const Config& c, json& out) {
    RecipePtr r = !c.recipe.empty() ? load_recipe(c.recipe) : recipe_from_chord_diagram(load_chords(c.chords));
    auto dt = coordinate_cluster_variables(r);
    auto ft = coordinate_functionaries(r);
    json rows = json::array();
    for (int i = 1; i < int(ft.size()); ++i)
        for (int z = 0; z < 5; ++z)
            rows.push_back({{"step", i}, {"letter", letter_name(z)}, {"cluster_variable", to_string(dt[i][z])},
                            {"functionary", to_string(ft[i][z])}, {"value", to_json(ft[i][z])}});
    out["entries"] = rows;
    return 0;
}

int run_seed(const std::string& sub, const Config& c, json& out) {
    auto D = load_chords(c.chords);
    Rng rng(c.seed);
    StandardTile t(D, {}, c.seed);
    Seed S;
    if (c.kind == "domino") {
        S = build_tile_seed(t);
    } else if (c.kind == "tile") {
        auto cm = coordinate_monomials(t, rng);
        auto sm = scaling_map(D, t.dom, cm);
        S = tile_seed(t, sm, tile_coordinates(t, sm));
    } else {
        throw InputError("--kind must be domino or tile");
    }
    if (sub == "build") {
        out = to_json(S);
        return 0;
    }
    if (sub == "mutate") {
        int v = S.index(c.at);
        if (v < 0) throw InputError("no vertex '" + c.at + "'");
        if (S.frozen[v]) throw InputError("vertex '" + c.at + "' is frozen");
        auto P = t.sample(rng);
        Seed M = mutate(S, v, &P);
        out = to_json(M);
        out["mutated"] = c.at;
        out["new_variable"] = to_string(M.var[v]);
        return 0;
    }
    // test: positivity at sampled interior points, then after each single mutation
    int trials = c.trials > 0 ? c.trials : 3;
    int pos = 0, mut_pos = 0, mut_total = 0;
    for (int s = 0; s < trials; ++s) {
        auto P = t.sample(rng);
        pos += positivity_test(P, S);
        for (int v = 0; v < S.size(); ++v)
            if (!S.frozen[v]) {
                ++mut_total;
                mut_pos += positivity_test(P, mutate(S, v, &P));
            }
    }
    out["trials"] = trials;
    out["positive"] = pos;
    out["mutations_tested"] = mut_total;
    out["mutations_positive"] = mut_pos;
    bool ok = pos == trials && mut_pos == mut_total;
    out["ok"] = ok;
    return ok ? 0 : 1;
}

template <class F>
void parallel_for(int count, int threads, F f) {
    threads = std::max(1, std::min(threads, count));
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < count; i += threads) f(i);
        });
    for (auto& th : pool) th.join();
}

int run_facets(const Config& c, json& out) {
    if (c.chords.empty() == c.recipe.empty()) throw InputError("give exactly one of --chords, --recipe");
    RecipePtr r;
    std::vector<FacetDescriptor> fs;
    if (!c.chords.empty()) {
        auto D = load_chords(c.chords);
        r = recipe_from_chord_diagram(D);
        fs = standard_facets(D);
    } else {
        r = load_recipe(c.recipe);
        fs = recipe_facets(r);
    }
    json list = json::array();
    for (auto& f : fs) list.push_back(to_json(f));
    out["count"] = fs.size();
    out["facets"] = list;
    if (!c.verify) return 0;
    int trials = c.trials > 0 ? c.trials : 3;
    Matrix Z = default_z(c, r->markers.back(), num_steps(r));
    std::vector<FacetReport> reps(fs.size());
    Rng base(c.seed);
    parallel_for(int(fs.size()), c.threads, [&](int i) {
        Rng rng = base.split(uint64_t(i));
        reps[i] = verify_facet(r, fs[i], Z, trials, rng);
    });
    bool ok = true;
    for (size_t i = 0; i < fs.size(); ++i) {
        out["facets"][i]["verify"] = to_json(reps[i]);
        ok = ok && reps[i].ok();
    }
    out["ok"] = ok;
    return ok ? 0 : 1;
}

int run_form(const Config& c, json& out) {
    FormMode mode;
    if (c.mode == "coord") mode = FormMode::Coord;
    else if (c.mode == "tile") mode = FormMode::Tile;
    else throw InputError("--mode must be coord or tile");
    auto D = load_chords(c.chords);
    Rng rng(c.seed);
    StandardTile t(D, default_z(c, D.n(), D.k()), c.seed);
    auto cm = coordinate_monomials(t, rng);
    auto tc = tile_coordinates(t, scaling_map(D, t.dom, cm));
    Matrix Y;
    if (!c.point.empty()) {
        auto j = read_json(c.point);
        Y = matrix_from(j.is_object() ? j.at("Y") : j);
        if (Y.rows != D.k() || Y.cols != D.k() + 4)
            throw InputError("point must be a " + std::to_string(D.k()) + " x " + std::to_string(D.k() + 4) + " matrix");
    } else {
        Y = t.sample(rng).Y;
    }
    auto charts = nonsingular_charts(Y, 1);
    if (charts.empty()) throw InputError("point has rank below k");
    out["Y"] = matrix_json(Y);
    out["mode"] = c.mode;
    out["chart"] = charts[0];
    try {
        Q v = canonical_form_value(t, tc, Y, charts[0], mode);
        out["value"] = v.get_str();
        out["ok"] = true;
        return 0;
    } catch (const std::domain_error& e) {
        out["ok"] = false;
        out["reason"] = e.what();
        return 1;
    }
}

int run_spurion(const std::string& sub, const Config& c, json& out) {
    if (sub == "show") {
        auto sp = spurion();
        out["window"] = sp.window;
        out["dimension"] = dimension(sp.G);
        json a = json::array();
        for (size_t i = 0; i < sp.a.size(); ++i)
            a.push_back({{"name", sp.names[i]}, {"sign", sp.a_sign[i]}, {"text", to_string(sp.a[i])}});
        out["a"] = a;
        json s = json::array();
        for (size_t i = 0; i < sp.s.size(); ++i) s.push_back({{"name", sp.s_names[i]}, {"text", to_string(sp.s[i])}});
        out["s"] = s;
        return 0;
    }
    int trials = c.trials > 0 ? c.trials : 100;
    Matrix Z = default_z(c, 9, 2);
    // fixed chunks of 10 trials, each with its own stream; the thread count does not change the result
    const int chunk = 10;
    int nchunks = (trials + chunk - 1) / chunk;
    std::vector<SpurionReport> parts(nchunks);
    Rng base(c.seed);
    parallel_for(nchunks, c.threads, [&](int i) {
        Rng rng = base.split(uint64_t(i));
        parts[i] = verify_spurion(Z, std::min(chunk, trials - i * chunk), rng);
    });
    SpurionReport rep = parts[0];
    for (int i = 1; i < nchunks; ++i) {
        auto& p = parts[i];
        rep.trials += p.trials;
        rep.min_row_support = std::min(rep.min_row_support, p.min_row_support);
        rep.configuration_ok += p.configuration_ok;
        rep.sign_ok += p.sign_ok;
        for (int a = 0; a < 9; ++a) rep.positive[a] += p.positive[a], rep.negative[a] += p.negative[a];
        for (int a = 0; a < 3; ++a) rep.s_positive[a] += p.s_positive[a], rep.s_negative[a] += p.s_negative[a];
    }
    out = to_json(rep);
    out["ok"] = rep.ok();
    return rep.ok() ? 0 : 1;
}

int run_catalog(const Config& c, json& out) {
    TilingCatalog cat;
    try {
        cat = load_catalog(c.catalog.empty() ? default_catalog_path() : c.catalog);
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }
    Rng rng(c.seed);
    auto rep = check_catalog(cat, c.trials > 0 ? c.trials : 2, rng);
    out["catalog"] = to_json(rep);
    bool ok = rep.ok();
    if (c.signs) {
        auto ts = tiling_sign_checks(cat, default_z(c, cat.n, cat.k), c.trials > 0 ? c.trials : 4, rng);
        out["tiling"] = to_json(ts);
        ok = ok && ts.ok();
    }
    out["ok"] = ok;
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"amplitile: BCFW tiles of the m = 4 amplituhedron"};
    app.require_subcommand(1);
    Config c;
    app.add_option("--seed", c.seed, "RNG seed (AMPLITILE_SEED overrides)");
    app.add_option("--threads", c.threads, "worker threads for trial loops")->check(CLI::PositiveNumber);
    app.add_flag("--text", c.text, "human-readable output where available");

    auto input_opts = [&](CLI::App* s) {
        s->add_option("--chords", c.chords, "chord diagram JSON file");
        s->add_option("--recipe", c.recipe, "recipe JSON file");
        s->add_option("--window", c.window, "bounded affine window f(1),...,f(n)");
    };
    auto seed_opt = [&](CLI::App* s) { s->add_option("--seed", c.seed, "RNG seed"); };
    auto trial_opts = [&](CLI::App* s) {
        s->add_option("--trials", c.trials, "number of samples")->check(CLI::PositiveNumber);
        seed_opt(s);
        s->add_option("--nodes", c.nodes, "Vandermonde nodes for Z, comma separated");
        s->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
    };

    std::string sub;
    auto* chords = app.add_subcommand("chords", "chord diagrams");
    chords->require_subcommand(1);
    auto* ch_enum = chords->add_subcommand("enumerate", "enumerate standard diagrams");
    ch_enum->add_option("--n", c.n)->required();
    ch_enum->add_option("--k", c.k)->required();
    ch_enum->add_flag("--list", c.list, "print the diagrams");
    auto* ch_ex = chords->add_subcommand("example", "built-in examples (six-chord, mixed)");
    ch_ex->add_option("--name", c.name);
    auto* ch_rec = chords->add_subcommand("recipe", "recipe of a standard diagram");
    ch_rec->add_option("--chords", c.chords)->required();
    auto* ch_cls = chords->add_subcommand("classify", "pairwise chord relations");
    ch_cls->add_option("--chords", c.chords)->required();

    auto* cell = app.add_subcommand("cell", "build a plabic graph");
    cell->require_subcommand(1);
    cell->add_subcommand("from-chords")->add_option("--chords", c.chords)->required();
    cell->add_subcommand("from-recipe")->add_option("--recipe", c.recipe)->required();
    cell->add_subcommand("from-perm")->add_option("--window", c.window)->required();

    auto* graph = app.add_subcommand("graph", "plabic graph queries");
    graph->require_subcommand(1);
    for (auto nm : {"reduced", "positroid", "sample"}) {
        auto* s = graph->add_subcommand(nm);
        input_opts(s);
        seed_opt(s);
    }

    auto* z = app.add_subcommand("z", "positive Z matrices");
    z->require_subcommand(1);
    auto* zv = z->add_subcommand("vandermonde");
    zv->add_option("--n", c.n)->required();
    zv->add_option("--k", c.k)->required();
    zv->add_option("--nodes", c.nodes);

    auto* prom = app.add_subcommand("promote", "product promotion of a polynomial");
    prom->add_option("--butterfly", c.butterfly, "a,b,c,d,n")->required();
    prom->add_option("--side", c.side, "L or R");
    prom->add_option("--poly", c.poly, "chain polynomial, e.g. 1234 or F89|21|34|56|89F");
    prom->add_option("--poly-json", c.poly_file, "polynomial JSON file");

    auto* dom = app.add_subcommand("dominoes", "domino variables of a standard diagram");
    dom->add_option("--chords", c.chords)->required();

    auto* fun = app.add_subcommand("functionaries", "coordinate cluster variables and functionaries");
    fun->add_option("--recipe", c.recipe);
    fun->add_option("--chords", c.chords);

    auto* seed = app.add_subcommand("seed", "tile seeds");
    seed->require_subcommand(1);
    for (auto nm : {"build", "mutate", "test"}) {
        auto* s = seed->add_subcommand(nm);
        s->add_option("--chords", c.chords)->required();
        s->add_option("--kind", c.kind, "domino or tile");
        s->add_option("--at", c.at, "vertex name");
        trial_opts(s);
    }

    auto* fac = app.add_subcommand("facets", "facets and cutting variables");
    fac->add_option("--chords", c.chords);
    fac->add_option("--recipe", c.recipe);
    fac->add_flag("--verify", c.verify);
    trial_opts(fac);

    auto* form = app.add_subcommand("form", "canonical forms");
    form->require_subcommand(1);
    auto* fe = form->add_subcommand("eval");
    fe->add_option("--chords", c.chords)->required();
    fe->add_option("--mode", c.mode, "coord or tile");
    fe->add_option("--point", c.point, "JSON k x (k+4) matrix Y");
    trial_opts(fe);

    auto* sp = app.add_subcommand("spurion", "the spurion cell");
    sp->require_subcommand(1);
    sp->add_subcommand("show");
    trial_opts(sp->add_subcommand("verify"));

    auto* cat = app.add_subcommand("catalog", "the n = 9, k = 2 tiling catalog");
    cat->add_option("--path", c.catalog);
    cat->add_flag("--signs", c.signs, "also run the sign-description harness");
    trial_opts(cat);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (const char* env = std::getenv("AMPLITILE_SEED")) {
        try {
            size_t pos;
            c.seed = std::stoull(env, &pos);
            if (pos != std::string(env).size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            std::cerr << "error: AMPLITILE_SEED is not an unsigned integer\n";
            return 2;
        }
    }

    auto leaf = [](CLI::App* a) {
        while (!a->get_subcommands().empty()) a = a->get_subcommands()[0];
        return a->get_name();
    };
    auto* top = app.get_subcommands()[0];
    std::string cmd = top->get_name();
    sub = leaf(top);

    json out;
    int code = 0;
    try {
        if (cmd == "chords") code = run_chords(sub, c, out);
        else if (cmd == "cell") code = run_cell(sub, c, out);
        else if (cmd == "graph") code = run_graph(sub, c, out);
        else if (cmd == "z") code = run_z(c, out);
        else if (cmd == "promote") code = run_promote(c, out);
        else if (cmd == "dominoes") code = run_dominoes(c, out);
        else if (cmd == "functionaries") {
            if (c.recipe.empty() == c.chords.empty()) throw InputError("give exactly one of --recipe, --chords");
            code = run_functionaries(c, out);
        } else if (cmd == "seed") code = run_seed(sub, c, out);
        else if (cmd == "facets") code = run_facets(c, out);
        else if (cmd == "form") code = run_form(c, out);
        else if (cmd == "spurion") code = run_spurion(sub, c, out);
        else code = run_catalog(c, out);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ChordError& e) {
        std::cerr << "error: " << e.kind << ": " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    bool random = cmd == "seed" || cmd == "form" || cmd == "catalog" || (cmd == "graph" && sub == "sample") ||
                  (cmd == "spurion" && sub == "verify") || (cmd == "facets" && c.verify);
    if (random && out.is_object()) out["seed"] = c.seed;
    if (c.text && out.contains("text") && out["text"].is_string()) std::cout << out["text"].get<std::string>() << "\n";
    else std::cout << out.dump(2) << "\n";
    return code;
}
