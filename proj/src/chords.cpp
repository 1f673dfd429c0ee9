#include "amplitile/chords.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace amplitile {

namespace {

int next_marker(const std::vector<int>& N, int x) {
    auto it = std::find(N.begin(), N.end(), x);
    if (it == N.end() || it + 1 == N.end()) return -1;
    return *(it + 1);
}

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

ChordDiagram validate_chord_diagram(std::vector<int> markers, std::vector<Chord> chords) {
    for (size_t i = 1; i < markers.size(); ++i)
        if (markers[i - 1] >= markers[i]) throw ChordError("BadMarkers", "markers must be sorted and distinct");
    if (markers.empty()) throw ChordError("BadMarkers", "empty marker set");
    int n = markers.back();
    for (const auto& ch : chords) {
        for (int x : {ch.a, ch.b, ch.c, ch.d})
            if (!contains(markers, x)) throw ChordError("BadBounds", "chord index outside marker set");
        if (!(ch.a < ch.b && ch.b < ch.c && ch.c < ch.d && ch.d < n))
            throw ChordError("BadBounds", "need a<b<c<d<n");
        if (next_marker(markers, ch.a) != ch.b || next_marker(markers, ch.c) != ch.d)
            throw ChordError("NonConsecutive", "chord ends must be consecutive markers");
    }
    for (size_t i = 0; i < chords.size(); ++i)
        for (size_t j = 0; j < chords.size(); ++j) {
            if (i == j) continue;
            const auto &x = chords[i], &y = chords[j];
            if (x.a == y.a) throw ChordError("StartClash", "two chords share a start segment");
            if (x.a < y.a && y.a < x.c && x.c < y.c) throw ChordError("Crossing", "chords cross");
        }
    // rightmost-top order equals sorting by end, inner chords first on a shared end
    std::sort(chords.begin(), chords.end(), [](const Chord& x, const Chord& y) {
        if (x.c != y.c) return x.c < y.c;
        return x.a > y.a;
    });
    return ChordDiagram{std::move(markers), std::move(chords)};
}

ChordDiagram full_diagram(int n, std::vector<Chord> chords) {
    std::vector<int> N(n);
    for (int i = 0; i < n; ++i) N[i] = i + 1;
    return validate_chord_diagram(std::move(N), std::move(chords));
}

long long narayana_count(int n, int k) {
    if (k < 0 || k > n - 4) return 0;
    auto binom = [](long long a, long long b) -> long long {
        if (b < 0 || b > a) return 0;
        long long r = 1;
        for (long long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
        return r;
    };
    return binom(n - 4, k) * binom(n - 3, k) / (k + 1);
}

std::vector<ChordDiagram> enumerate_chord_diagrams(int n, int k) {
    std::vector<ChordDiagram> out;
    if (n < 4 || k < 0 || k > n - 4) return out;
    std::vector<Chord> cur;
    std::function<void(int)> rec = [&](int a) {
        if (int(cur.size()) == k) {
            out.push_back(full_diagram(n, cur));
            return;
        }
        if (a > n - 3) return;
        int remaining = k - int(cur.size());
        if (n - 3 - a + 1 < remaining) return;
        // no chord starting at a
        rec(a + 1);
        for (int c = a + 2; c + 1 <= n - 1; ++c) {
            bool ok = true;
            for (const auto& y : cur) {
                // y.a < a always; crossing iff y.a < a < y.c < c
                if (a < y.c && y.c < c) { ok = false; break; }
            }
            if (!ok) continue;
            cur.push_back({a, a + 1, c, c + 1});
            rec(a + 1);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

bool is_descendant(const Chord& below, const Chord& above) {
    return above.a < below.a && below.c <= above.c;
}

int parent_of(const ChordDiagram& D, int i) {
    const Chord& x = D.chords.at(i - 1);
    int best = 0;
    for (int j = 1; j <= D.k(); ++j) {
        if (j == i || !is_descendant(x, D.chords[j - 1])) continue;
        if (best == 0 || is_descendant(D.chords[j - 1], D.chords[best - 1])) best = j;
    }
    return best;
}

std::set<std::string> classify_pair(const ChordDiagram& D, int i, int j) {
    if (i < 1 || j < 1 || i > D.k() || j > D.k()) throw ChordError("UnknownIndex", "chord index out of range");
    std::set<std::string> r;
    if (i == j) return r;
    const Chord &x = D.chords[i - 1], &y = D.chords[j - 1];
    if (is_descendant(y, x)) r.insert("ancestor");
    if (is_descendant(x, y)) r.insert("descendant");
    if (parent_of(D, j) == i) r.insert("parent");
    if (parent_of(D, i) == j) r.insert("child");
    if (parent_of(D, i) == parent_of(D, j)) r.insert("sibling");
    if (x.c == y.c) r.insert("same_end");
    if (x.c == y.a || y.c == x.a) r.insert("head_to_tail");
    if (x.b == y.a || y.b == x.a) r.insert("sticky");
    return r;
}

bool has_sticky_child(const ChordDiagram& D, int i) {
    for (int j = 1; j <= D.k(); ++j)
        if (parent_of(D, j) == i && D.chords[j - 1].a == D.chords[i - 1].b) return true;
    return false;
}

bool has_same_end_child(const ChordDiagram& D, int i) {
    for (int j = 1; j <= D.k(); ++j)
        if (parent_of(D, j) == i && D.chords[j - 1].c == D.chords[i - 1].c) return true;
    return false;
}

bool starts_where_another_ends(const ChordDiagram& D, int i) {
    for (int j = 1; j <= D.k(); ++j)
        if (j != i && D.chords[j - 1].c == D.chords[i - 1].a) return true;
    return false;
}

bool has_sticky_same_end_parent(const ChordDiagram& D, int i) {
    int p = parent_of(D, i);
    if (!p) return false;
    const Chord &x = D.chords[i - 1], &P = D.chords[p - 1];
    return x.a == P.b && x.c == P.c;
}

std::pair<SubDiagram, SubDiagram> subdiagrams(const ChordDiagram& D) {
    if (D.k() == 0) throw ChordError("NotApplicable", "no chords");
    const Chord& top = D.chords.back();
    int n = D.n();
    if (next_marker(D.markers, top.d) != n) throw ChordError("NotApplicable", "d and n are not consecutive");
    SubDiagram L, R;
    std::vector<Chord> lc, rc;
    for (int x : D.markers) {
        if (x <= top.b || x == n) L.diagram.markers.push_back(x);
        if (x >= top.b) R.diagram.markers.push_back(x);
    }
    for (int j = 1; j < D.k(); ++j) {
        if (is_descendant(D.chords[j - 1], top)) {
            R.diagram.chords.push_back(D.chords[j - 1]);
            R.labels.push_back(j);
        } else {
            L.diagram.chords.push_back(D.chords[j - 1]);
            L.labels.push_back(j);
        }
    }
    return {L, R};
}

RecipePtr trivial_recipe(std::vector<int> markers) {
    std::sort(markers.begin(), markers.end());
    auto r = std::make_shared<Recipe>();
    r->markers = std::move(markers);
    return r;
}

RecipePtr make_step(RecipePtr left, RecipePtr right, StepTuple st) {
    auto [a, b, c, d, n] = st.B;
    std::set<int> N(left->markers.begin(), left->markers.end());
    N.insert(right->markers.begin(), right->markers.end());
    for (int p : st.pre) {
        if (N.count(p)) throw ChordError("BadRecipe", "zero column collides with existing marker");
        N.insert(p);
    }
    std::vector<int> Nv(N.begin(), N.end());
    std::vector<int> rest;
    for (int x : Nv)
        if (!contains(st.pre, x)) rest.push_back(x);
    if (rest.empty() || rest.back() != n) throw ChordError("BadRecipe", "n must be the largest marker outside the zero columns");
    if (next_marker(rest, a) != b || next_marker(rest, c) != d || next_marker(rest, d) != n || !(b < c))
        throw ChordError("BadRecipe", "butterfly indices not consecutive");
    std::vector<int> NL, NR;
    for (int x : rest) {
        if (x <= b || x == n) NL.push_back(x);
        if (x >= b) NR.push_back(x);
    }
    if (NL != left->markers || NR != right->markers) throw ChordError("BadRecipe", "child marker sets do not match N_L / N_R");
    if (st.cyc < 0 || st.cyc >= int(Nv.size()) || st.refl < 0 || st.refl > 1)
        throw ChordError("BadRecipe", "bad shift or reflection count");
    std::sort(st.pre.begin(), st.pre.end());
    auto r = std::make_shared<Recipe>();
    r->markers = std::move(Nv);
    r->left = std::move(left);
    r->right = std::move(right);
    r->step = std::move(st);
    r->label = -1;
    return relabel_steps(r);
}

RecipePtr relabel_steps(const RecipePtr& r) {
    int counter = 0;
    std::function<RecipePtr(const RecipePtr&)> rec = [&](const RecipePtr& x) -> RecipePtr {
        if (x->trivial()) return x;
        auto y = std::make_shared<Recipe>(*x);
        y->left = rec(x->left);
        y->right = rec(x->right);
        y->label = ++counter;
        return y;
    };
    return rec(r);
}

int num_steps(const RecipePtr& r) { return r->trivial() ? 0 : 1 + num_steps(r->left) + num_steps(r->right); }

std::vector<const Recipe*> steps_by_label(const RecipePtr& r) {
    std::vector<const Recipe*> out(num_steps(r) + 1, nullptr);
    std::function<void(const Recipe*)> rec = [&](const Recipe* x) {
        if (x->trivial()) return;
        rec(x->left.get());
        rec(x->right.get());
        out.at(x->label) = x;
    };
    rec(r.get());
    return out;
}

RecipePtr recipe_from_chord_diagram(const ChordDiagram& D) {
    std::function<RecipePtr(const std::vector<int>&, const std::vector<Chord>&)> rec =
        [&](const std::vector<int>& N, const std::vector<Chord>& chords) -> RecipePtr {
        if (chords.empty()) return trivial_recipe(N);
        const Chord top = chords.back();
        int n = N.back();
        StepTuple st;
        st.B = {top.a, top.b, top.c, top.d, n};
        std::vector<int> bar;
        for (int p : N) {
            if (top.d < p && p < n) st.pre.push_back(p);
            else bar.push_back(p);
        }
        std::vector<int> NL, NR;
        for (int x : bar) {
            if (x <= top.b || x == n) NL.push_back(x);
            if (x >= top.b) NR.push_back(x);
        }
        std::vector<Chord> lc, rc;
        for (size_t j = 0; j + 1 < chords.size(); ++j)
            (is_descendant(chords[j], top) ? rc : lc).push_back(chords[j]);
        return make_step(rec(NL, lc), rec(NR, rc), st);
    };
    return relabel_steps(rec(D.markers, D.chords));
}

RecipePtr recipe_from_steps(const std::vector<StepTuple>& steps) {
    std::vector<RecipePtr> pool;
    for (const auto& st : steps) {
        auto [a, b, c, d, n] = st.B;
        auto has = [](const RecipePtr& r, int x) { return contains(r->markers, x); };
        RecipePtr L, R;
        for (auto it = pool.rbegin(); it != pool.rend(); ++it) {
            if (!L && has(*it, a) && has(*it, b) && has(*it, n) && !has(*it, c) && !has(*it, d)) L = *it;
            else if (!R && has(*it, b) && has(*it, c) && has(*it, d) && has(*it, n) && !has(*it, a)) R = *it;
        }
        std::set<int> N(st.B.begin(), st.B.end());
        N.insert(st.pre.begin(), st.pre.end());
        if (L) N.insert(L->markers.begin(), L->markers.end());
        if (R) N.insert(R->markers.begin(), R->markers.end());
        std::vector<int> NL, NR;
        for (int x : N) {
            if (contains(st.pre, x)) continue;
            if (x <= b || x == n) NL.push_back(x);
            if (x >= b) NR.push_back(x);
        }
        if (!L) L = trivial_recipe(NL);
        if (!R) R = trivial_recipe(NR);
        pool.erase(std::remove(pool.begin(), pool.end(), L), pool.end());
        pool.erase(std::remove(pool.begin(), pool.end(), R), pool.end());
        pool.push_back(make_step(L, R, st));
    }
    if (pool.size() != 1) throw ChordError("BadRecipe", "step-tuples do not assemble into a single recipe");
    return relabel_steps(pool.back());
}

RecipePtr example_recipe_mixed() {
    return recipe_from_steps({
        {{3, 4, 5, 6, 12}, {2}, 0, 0},
        {{1, 2, 5, 6, 12}, {}, 2, 1},
        {{6, 7, 8, 9, 11}, {10, 12}, 0, 0},
        {{5, 6, 10, 11, 12}, {}, 4, 1},
    });
}

ChordDiagram example_diagram_six_chord() {
    return full_diagram(15, {{3, 4, 5, 6}, {5, 6, 8, 9}, {1, 2, 8, 9}, {10, 11, 12, 13}, {9, 10, 12, 13}, {8, 9, 13, 14}});
}

int cyc_index(const std::vector<int>& N, int x, int times) {
    auto it = std::find(N.begin(), N.end(), x);
    if (it == N.end()) throw std::out_of_range("cyc_index: marker not in set");
    int m = int(N.size());
    int p = int(it - N.begin());
    return N[((p + times) % m + m) % m];
}

int refl_index(const std::vector<int>& N, int x) {
    auto it = std::find(N.begin(), N.end(), x);
    if (it == N.end()) throw std::out_of_range("refl_index: marker not in set");
    return N[N.size() - 1 - (it - N.begin())];
}

std::vector<Quintuple> generalized_chords(const RecipePtr& r) {
    std::map<int, Quintuple> acc;
    std::function<std::vector<int>(const Recipe*)> rec = [&](const Recipe* x) -> std::vector<int> {
        if (x->trivial()) return {};
        auto labels = rec(x->left.get());
        auto rl = rec(x->right.get());
        labels.insert(labels.end(), rl.begin(), rl.end());
        acc[x->label] = x->step.B;
        labels.push_back(x->label);
        for (int l : labels) {
            for (int& v : acc[l]) {
                v = cyc_index(x->markers, v, x->step.cyc);
                if (x->step.refl) v = refl_index(x->markers, v);
            }
        }
        return labels;
    };
    rec(r.get());
    std::vector<Quintuple> out;
    for (auto& [l, q] : acc) out.push_back(q);
    return out;
}

nlohmann::json to_json(const ChordDiagram& D) {
    nlohmann::json j;
    j["n"] = D.n();
    j["markers"] = D.markers;
    j["chords"] = nlohmann::json::array();
    for (auto& c : D.chords) j["chords"].push_back({c.a, c.b, c.c, c.d});
    return j;
}

ChordDiagram chord_diagram_from_json(const nlohmann::json& j) {
    std::vector<int> markers;
    if (j.contains("markers")) markers = j["markers"].get<std::vector<int>>();
    else
        for (int i = 1; i <= j.at("n").get<int>(); ++i) markers.push_back(i);
    std::vector<Chord> chords;
    for (auto& c : j.at("chords")) chords.push_back({c[0], c[1], c[2], c[3]});
    return validate_chord_diagram(markers, chords);
}

nlohmann::json to_json(const RecipePtr& r) {
    nlohmann::json j;
    j["markers"] = r->markers;
    if (r->trivial()) return j;
    j["left"] = to_json(r->left);
    j["right"] = to_json(r->right);
    j["final"] = {{"butterfly", r->step.B}, {"pre", r->step.pre}, {"cyc", r->step.cyc}, {"refl", r->step.refl}};
    j["label"] = r->label;
    return j;
}

RecipePtr recipe_from_json(const nlohmann::json& j) {
    if (j.is_array()) {
        // flat list of step-tuples
        std::vector<StepTuple> steps;
        for (auto& s : j) {
            StepTuple st;
            auto B = s.at("butterfly").get<std::vector<int>>();
            if (B.size() != 5) throw ChordError("BadRecipe", "butterfly needs 5 indices");
            std::copy(B.begin(), B.end(), st.B.begin());
            st.pre = s.value("pre", std::vector<int>{});
            st.cyc = s.value("cyc", 0);
            st.refl = s.value("refl", 0);
            steps.push_back(st);
        }
        return recipe_from_steps(steps);
    }
    std::function<RecipePtr(const nlohmann::json&)> rec = [&](const nlohmann::json& x) -> RecipePtr {
        if (!x.contains("final")) return trivial_recipe(x.at("markers").get<std::vector<int>>());
        const auto& f = x["final"];
        StepTuple st;
        auto B = f.at("butterfly").get<std::vector<int>>();
        if (B.size() != 5) throw ChordError("BadRecipe", "butterfly needs 5 indices");
        std::copy(B.begin(), B.end(), st.B.begin());
        st.pre = f.value("pre", std::vector<int>{});
        st.cyc = f.value("cyc", 0);
        st.refl = f.value("refl", 0);
        return make_step(rec(x.at("left")), rec(x.at("right")), st);
    };
    return relabel_steps(rec(j));
}

}  // namespace amplitile
