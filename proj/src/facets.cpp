#include "amplitile/facets.hpp"

#include <algorithm>

#include "amplitile/cluster.hpp"

namespace amplitile {

namespace {

bool contains_step(const RecipePtr& r, int label) {
    if (!r || r->trivial()) return false;
    return r->label == label || contains_step(r->left, label) || contains_step(r->right, label);
}

void collect_steps(const RecipePtr& r, std::vector<int>& out) {
    if (!r || r->trivial()) return;
    collect_steps(r->left, out);
    collect_steps(r->right, out);
    out.push_back(r->label);
}

bool subset_of(int x, int y, const Quintuple& q) {
    return std::count(q.begin(), q.end(), x) && std::count(q.begin(), q.end(), y);
}

std::string edge_of(int step, int letter) { return butterfly_edge(step, kDesignatedEdge[letter]); }

}  // namespace

std::vector<FacetDescriptor> standard_facets(const ChordDiagram& D) {
    auto dom = domino_variables(D);
    auto cls = classify_variables(D, dom);
    auto G = cell_from_chord_diagram(D);
    std::vector<FacetDescriptor> out;
    for (int v : cls.afacet) {
        auto [i, z] = dom.key[v];
        FacetDescriptor fd;
        fd.step = i;
        fd.letter = z;
        fd.edge = edge_of(i, z);
        fd.graph = delete_edge(G, fd.edge);
        fd.cutting = dom.poly[v];
        fd.variable = dom.name(v);
        out.push_back(std::move(fd));
    }
    return out;
}

bool predicted_reduced(const ChordDiagram& D, int i, int letter) {
    switch (letter) {
        case kAlpha: return !has_sticky_child(D, i);
        case kBeta: return !starts_where_another_ends(D, i);
        case kGamma: return true;
        default: return !has_same_end_child(D, i);
    }
}

bool condensable(const RecipePtr& r, int i, int letter) {
    if (letter == kGamma) return true;
    auto steps = steps_by_label(r);
    if (i < 1 || i >= int(steps.size())) throw std::out_of_range("condensable: no such step");
    auto gc = generalized_chords(r);
    const Quintuple& f = gc[i - 1];
    auto [a, b, c, d, n] = f;
    const Recipe* node = steps[i];
    std::vector<int> side;
    collect_steps(letter == kBeta ? node->left : node->right, side);
    std::pair<int, int> pr = letter == kAlpha ? std::pair{b, n}
                             : letter == kBeta ? std::pair{b, a}
                             : letter == kDelta ? std::pair{c, d}
                                                : std::pair{d, n};
    for (int j : side)
        if (subset_of(pr.first, pr.second, gc[j - 1])) return false;
    return true;
}

Condensation condense(const RecipePtr& r, int i, int letter) {
    if (!condensable(r, i, letter))
        throw std::invalid_argument("condense: not condensable at step " + std::to_string(i) + " letter " +
                                    letter_name(letter));
    Condensation c;
    c.step = i;
    c.letter = letter;
    c.edge = edge_of(i, letter);
    c.graph = delete_edge(cell_from_recipe(r), c.edge);
    auto steps = steps_by_label(r);
    c.rigid = true;
    for (int l = i + 1; l < int(steps.size()); ++l) {
        const Recipe* node = steps[l];
        if (!contains_step(node->right, i)) continue;
        auto GR = delete_edge(cell_from_recipe(node->right), c.edge);
        auto T = matchings(GR);
        auto [a, b, cc, d, n] = node->step.B;
        (void)a;
        if (!coindependent(T, {b, cc, d, n})) {
            c.rigid = false;
            c.witness = l;
            break;
        }
    }
    return c;
}

std::vector<FacetDescriptor> recipe_facets(const RecipePtr& r) {
    auto coord = coordinate_functionaries(r);
    int k = num_steps(r);
    std::vector<FacetDescriptor> out;
    for (int i = 1; i <= k; ++i)
        for (int z = 0; z < 5; ++z) {
            if (!condensable(r, i, z)) continue;
            auto c = condense(r, i, z);
            if (!c.rigid) continue;
            FacetDescriptor fd;
            fd.step = i;
            fd.letter = z;
            fd.edge = c.edge;
            fd.graph = std::move(c.graph);
            fd.cutting = coord[i][z].numerator();
            fd.variable = letter_name(z) + std::to_string(i);
            out.push_back(std::move(fd));
        }
    return out;
}

FacetReport verify_facet(const RecipePtr& r, const FacetDescriptor& fd, const Matrix& Z, int trials, Rng& rng) {
    FacetReport rep;
    auto coord = coordinate_functionaries(r);
    const auto& row = coord[fd.step];
    // interior signs
    auto G = cell_from_recipe(r);
    auto TG = matchings(G);
    std::array<int, 5> interior{};
    for (int attempt = 0;; ++attempt) {
        TwistorPoint P{amplituhedron_map(sample_point(G, TG, random_weights(G, rng)), Z), Z, r->markers};
        Evaluator ev(P);
        bool ok = true;
        for (int z = 0; z < 5 && ok; ++z) {
            if (sgn(ev(row[z].denominator())) == 0) ok = false;
            else ok = (interior[z] = sgn(ev(row[z].numerator())) * sgn(ev(row[z].denominator()))) != 0;
        }
        if (ok) break;
        if (attempt > 20) {
            rep.notes.push_back("no interior point with nonvanishing coordinate functionaries");
            return rep;
        }
    }
    auto TF = matchings(fd.graph);
    for (int t = 0; t < trials; ++t) {
        ++rep.trials;
        TwistorPoint P{amplituhedron_map(sample_point(fd.graph, TF, random_weights(fd.graph, rng)), Z), Z, r->markers};
        Evaluator ev(P);
        bool zero = sgn(ev(fd.cutting)) == 0;
        if (zero && fd.letter >= 0) zero = sgn(ev(row[fd.letter].denominator())) != 0;
        rep.zero += zero;
        bool kept = true;
        for (int z = 0; z < 5; ++z) {
            if (z == fd.letter) continue;
            int sd = sgn(ev(row[z].denominator()));
            int s = sd * sgn(ev(row[z].numerator()));
            if (sd == 0 || s != interior[z]) {
                kept = false;
                if (rep.notes.size() < 5)
                    rep.notes.push_back("trial " + std::to_string(t) + ": " + letter_name(z) + std::to_string(fd.step) +
                                        (s == 0 ? " vanishes" : " changes sign"));
            }
        }
        rep.others_kept += kept;
    }
    return rep;
}

nlohmann::json to_json(const FacetDescriptor& fd) {
    return {{"step", fd.step},           {"letter", letter_name(fd.letter)}, {"edge", fd.edge},
            {"variable", fd.variable},   {"cutting", to_string(fd.cutting)}, {"rigid", fd.rigid},
            {"faces", face_count(fd.graph)}};
}

nlohmann::json to_json(const FacetReport& rep) {
    return {{"trials", rep.trials}, {"zero", rep.zero}, {"others_kept", rep.others_kept}, {"ok", rep.ok()},
            {"notes", rep.notes}};
}

}  // namespace amplitile
