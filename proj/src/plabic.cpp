#include "amplitile/plabic.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace amplitile {

int PlabicGraph::add_vertex(Color c, int label) {
    V.push_back({c, label, {}, true});
    return int(V.size()) - 1;
}

int PlabicGraph::add_edge(int u, int v, std::string name) {
    E.push_back({u, v, std::move(name), true});
    int e = int(E.size()) - 1;
    V[u].rot.push_back(e);
    if (v != u) V[v].rot.push_back(e);
    return e;
}

int PlabicGraph::boundary_vertex(int marker) const {
    for (size_t i = 0; i < V.size(); ++i)
        if (V[i].alive && V[i].color == Color::Boundary && V[i].label == marker) return int(i);
    throw std::out_of_range("no boundary vertex " + std::to_string(marker));
}

int PlabicGraph::edge_by_name(const std::string& name) const {
    for (size_t i = 0; i < E.size(); ++i)
        if (E[i].alive && E[i].name == name) return int(i);
    return -1;
}

void PlabicGraph::kill_edge(int e) {
    if (!E[e].alive) return;
    E[e].alive = false;
    for (int w : {E[e].u, E[e].v}) {
        auto& r = V[w].rot;
        r.erase(std::remove(r.begin(), r.end(), e), r.end());
    }
}

void PlabicGraph::compact() {
    std::vector<int> vmap(V.size(), -1), emap(E.size(), -1);
    std::vector<Vertex> nv;
    std::vector<Edge> ne;
    for (size_t i = 0; i < V.size(); ++i)
        if (V[i].alive) {
            vmap[i] = int(nv.size());
            nv.push_back(V[i]);
        }
    for (size_t i = 0; i < E.size(); ++i)
        if (E[i].alive) {
            if (vmap[E[i].u] < 0 || vmap[E[i].v] < 0) throw std::logic_error("compact: edge on dead vertex");
            emap[i] = int(ne.size());
            ne.push_back({vmap[E[i].u], vmap[E[i].v], E[i].name, true});
        }
    for (auto& v : nv) {
        std::vector<int> r;
        for (int e : v.rot)
            if (emap[e] >= 0) r.push_back(emap[e]);
        v.rot = r;
    }
    V = std::move(nv);
    E = std::move(ne);
}

int PlabicGraph::num_edges() const {
    int c = 0;
    for (auto& e : E) c += e.alive;
    return c;
}

int PlabicGraph::num_internal() const {
    int c = 0;
    for (auto& v : V) c += v.alive && v.color != Color::Boundary;
    return c;
}

std::vector<std::string> PlabicGraph::edge_names() const {
    std::vector<std::string> r;
    for (auto& e : E)
        if (e.alive) r.push_back(e.name);
    return r;
}

PlabicGraph trivial_graph(const std::vector<int>& markers) {
    PlabicGraph G;
    G.markers = markers;
    std::sort(G.markers.begin(), G.markers.end());
    for (int m : G.markers) {
        int b = G.add_vertex(Color::Boundary, m);
        int l = G.add_vertex(Color::Black);
        G.add_edge(b, l, "lol" + std::to_string(m));
    }
    return G;
}

std::string butterfly_edge(int label, int x) { return "s" + std::to_string(label) + ".x" + std::to_string(x); }

namespace {

// copy H into G, prefixing edge names that carry no step prefix; returns vertex offset
int absorb(PlabicGraph& G, const PlabicGraph& H, const std::string& prefix) {
    int vo = int(G.V.size()), eo = int(G.E.size());
    for (auto v : H.V) {
        for (int& e : v.rot) e += eo;
        G.V.push_back(v);
    }
    for (auto e : H.E) {
        e.u += vo;
        e.v += vo;
        if (e.name.empty() || e.name[0] != 's') e.name = prefix + e.name;
        G.E.push_back(e);
    }
    return vo;
}

int find_boundary(const PlabicGraph& G, int from, int to, int marker) {
    for (int i = from; i < to; ++i)
        if (G.V[i].alive && G.V[i].color == Color::Boundary && G.V[i].label == marker) return i;
    throw std::logic_error("bcfw_product: missing boundary " + std::to_string(marker));
}

// detach boundary vertex bv from its single edge and hang that edge on w instead; returns edge id
int reattach(PlabicGraph& G, int bv, int w) {
    if (G.V[bv].rot.size() != 1) throw std::logic_error("bcfw_product: boundary vertex must have degree 1");
    int e = G.V[bv].rot[0];
    if (G.E[e].u == bv) G.E[e].u = w;
    else G.E[e].v = w;
    G.V[bv].rot.clear();
    G.V[bv].alive = false;
    return e;
}

}  // namespace

PlabicGraph bcfw_product(const PlabicGraph& GL, const PlabicGraph& GR, const std::array<int, 5>& B, int label) {
    auto [a, b, c, d, n] = B;
    PlabicGraph G;
    std::string tag = "s" + std::to_string(label);
    int l0 = absorb(G, GL, tag + ".L.");
    int r0 = absorb(G, GR, tag + ".R.");
    int l1 = r0, r1 = int(G.V.size());
    std::set<int> ms(GL.markers.begin(), GL.markers.end());
    ms.insert(GR.markers.begin(), GR.markers.end());
    G.markers.assign(ms.begin(), ms.end());

    int aL = find_boundary(G, l0, l1, a), bL = find_boundary(G, l0, l1, b), nL = find_boundary(G, l0, l1, n);
    int bR = find_boundary(G, r0, r1, b), cR = find_boundary(G, r0, r1, c), dR = find_boundary(G, r0, r1, d),
        nR = find_boundary(G, r0, r1, n);

    auto bk = [&] { return G.add_vertex(Color::Black); };
    auto wh = [&] { return G.add_vertex(Color::White); };
    int A = G.add_vertex(Color::Boundary, a), Bo = G.add_vertex(Color::Boundary, b);
    int Co = G.add_vertex(Color::Boundary, c), Do = G.add_vertex(Color::Boundary, d);
    int No = G.add_vertex(Color::Boundary, n);
    int Ba = bk(), Bb = bk(), Bm = bk(), Bt = bk(), Bc = bk(), Bx = bk(), Bn = bk();
    int Ws = wh(), Wd = wh(), Wy = wh(), Wtr = wh();

    auto ed = [&](int u, int v, const std::string& nm) {
        G.E.push_back({u, v, tag + "." + nm, true});
        return int(G.E.size()) - 1;
    };
    int eA = ed(Ba, A, "a"), eB = ed(Bb, Bo, "b"), eN = ed(Bn, No, "n");
    int x1 = ed(Wd, Do, "x1"), x2 = ed(Wd, Bx, "x2"), x3 = ed(Bt, Wy, "x3"), x4 = ed(Bx, Wy, "x4");
    int x5 = ed(Ws, Bm, "x5"), x6 = ed(Ws, Ba, "x6"), x7 = ed(Bm, Wtr, "x7"), x8 = ed(Ws, Bb, "x8");
    int x9 = ed(Wtr, Bt, "x9"), x10 = ed(Wd, Bc, "x10"), x11 = ed(Bc, Co, "x11"), x12 = ed(Wy, Bn, "x12");
    int laL = reattach(G, aL, Ba), lbL = reattach(G, bL, Bm), lnL = reattach(G, nL, Bn);
    int lbR = reattach(G, bR, Bb), lcR = reattach(G, cR, Bc), ldR = reattach(G, dR, Bx), lnR = reattach(G, nR, Bt);

    G.V[A].rot = {eA};
    G.V[Bo].rot = {eB};
    G.V[Co].rot = {x11};
    G.V[Do].rot = {x1};
    G.V[No].rot = {eN};
    G.V[Ba].rot = {eA, x6, laL};
    G.V[Bb].rot = {eB, lbR, x8};
    G.V[Ws].rot = {x8, x5, x6};
    G.V[Bm].rot = {x5, x7, lbL};
    G.V[Wtr].rot = {x7, x9};
    G.V[Bt].rot = {lnR, x3, x9};
    G.V[Bc].rot = {x11, x10, lcR};
    G.V[Wd].rot = {x1, x2, x10};
    G.V[Bx].rot = {x2, x4, ldR};
    G.V[Wy].rot = {x4, x12, x3};
    G.V[Bn].rot = {eN, lnL, x12};
    G.compact();
    return G;
}

PlabicGraph graph_cyc(const PlabicGraph& G, int times) {
    PlabicGraph H = G;
    for (auto& v : H.V)
        if (v.alive && v.color == Color::Boundary) v.label = cyc_index(G.markers, v.label, times);
    return H;
}

PlabicGraph graph_refl(const PlabicGraph& G) {
    PlabicGraph H = G;
    for (auto& v : H.V) {
        if (v.alive && v.color == Color::Boundary) v.label = refl_index(G.markers, v.label);
        std::reverse(v.rot.begin(), v.rot.end());
    }
    return H;
}

PlabicGraph graph_pre(const PlabicGraph& G, const std::vector<int>& J) {
    PlabicGraph H = G;
    for (int m : J) {
        if (std::find(H.markers.begin(), H.markers.end(), m) != H.markers.end())
            throw std::invalid_argument("graph_pre: marker already present");
        int b = H.add_vertex(Color::Boundary, m);
        int l = H.add_vertex(Color::Black);
        H.add_edge(b, l, "pre" + std::to_string(m));
        H.markers.push_back(m);
    }
    std::sort(H.markers.begin(), H.markers.end());
    return H;
}

PlabicGraph cell_from_recipe(const RecipePtr& r) {
    if (r->trivial()) return trivial_graph(r->markers);
    PlabicGraph G = bcfw_product(cell_from_recipe(r->left), cell_from_recipe(r->right), r->step.B, r->label);
    if (!r->step.pre.empty()) G = graph_pre(G, r->step.pre);
    if (G.markers != r->markers) throw std::logic_error("cell_from_recipe: marker mismatch");
    if (r->step.cyc) G = graph_cyc(G, r->step.cyc);
    if (r->step.refl % 2) G = graph_refl(G);
    return G;
}

PlabicGraph cell_from_chord_diagram(const ChordDiagram& D) { return cell_from_recipe(recipe_from_chord_diagram(D)); }

PlabicGraph delete_edge(const PlabicGraph& G, const std::string& name) {
    PlabicGraph H = G;
    int e = H.edge_by_name(name);
    if (e < 0) throw std::out_of_range("delete_edge: no edge " + name);
    H.kill_edge(e);
    H.compact();
    return H;
}

PlabicGraph normalize_leaves(const PlabicGraph& G) {
    PlabicGraph H = G;
    auto fix_boundary = [&](int w, Color lost) {
        // boundary lost its only neighbour: matched-iff-in rule turns it into a lollipop
        Color c = lost == Color::White ? Color::Black : Color::White;
        int l = H.add_vertex(c);
        H.add_edge(w, l, "lol*" + std::to_string(H.V[w].label));
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t v = 0; v < H.V.size(); ++v) {
            auto& vx = H.V[v];
            if (!vx.alive || vx.color == Color::Boundary || vx.rot.size() != 1) continue;
            int e = vx.rot[0];
            int u = H.E[e].other(int(v));
            Color cu = H.V[u].color;
            if (cu == Color::Boundary) continue;
            if (cu == vx.color) {
                H.kill_edge(e);
                H.V[v].alive = false;
            } else {
                std::vector<int> others;
                for (int f : H.V[u].rot)
                    if (f != e) others.push_back(f);
                for (int f : others) {
                    int w = H.E[f].other(u);
                    H.kill_edge(f);
                    if (H.V[w].color == Color::Boundary) fix_boundary(w, cu);
                }
                H.kill_edge(e);
                H.V[v].alive = false;
                H.V[u].alive = false;
            }
            changed = true;
        }
        for (size_t w = 0; w < H.V.size(); ++w)
            if (H.V[w].alive && H.V[w].color == Color::Boundary && H.V[w].rot.empty()) {
                // only reachable when the input already had a bare boundary vertex
                fix_boundary(int(w), Color::White);
                changed = true;
            }
    }
    H.compact();
    return H;
}

namespace {

// darts: 2e is u->v, 2e+1 is v->u. boundary arcs get ids after the graph edges.
struct DartMap {
    int ne = 0;
    std::vector<int> head;               // dart -> head vertex
    std::vector<std::vector<int>> out;   // vertex -> outgoing darts, clockwise
};

DartMap build_darts(const PlabicGraph& G) {
    DartMap M;
    int nE = int(G.E.size());
    int nb = int(G.markers.size());
    M.ne = nE + nb;
    M.head.assign(2 * M.ne, -1);
    M.out.assign(G.V.size(), {});
    for (int e = 0; e < nE; ++e) {
        M.head[2 * e] = G.E[e].v;
        M.head[2 * e + 1] = G.E[e].u;
    }
    std::vector<int> bv(nb);
    for (int i = 0; i < nb; ++i) bv[i] = G.boundary_vertex(G.markers[i]);
    for (int i = 0; i < nb; ++i) {
        int arc = nE + i;  // bv[i] -> bv[i+1]
        M.head[2 * arc] = bv[(i + 1) % nb];
        M.head[2 * arc + 1] = bv[i];
    }
    for (size_t v = 0; v < G.V.size(); ++v) {
        if (!G.V[v].alive) continue;
        auto dart_out = [&](int e) { return G.E[e].u == int(v) ? 2 * e : 2 * e + 1; };
        if (G.V[v].color == Color::Boundary) {
            int i = int(std::find(G.markers.begin(), G.markers.end(), G.V[v].label) - G.markers.begin());
            M.out[v].push_back(2 * (nE + i));
            for (int e : G.V[v].rot) M.out[v].push_back(dart_out(e));
            M.out[v].push_back(2 * (nE + (i + nb - 1) % nb) + 1);
        } else {
            for (int e : G.V[v].rot) M.out[v].push_back(dart_out(e));
        }
    }
    return M;
}

}  // namespace

int connected_components(const PlabicGraph& G) {
    std::vector<int> p(G.V.size());
    std::iota(p.begin(), p.end(), 0);
    std::function<int(int)> f = [&](int x) { return p[x] == x ? x : p[x] = f(p[x]); };
    for (auto& e : G.E)
        if (e.alive) p[f(e.u)] = f(e.v);
    int first = -1;
    for (size_t v = 0; v < G.V.size(); ++v)
        if (G.V[v].alive && G.V[v].color == Color::Boundary) {
            if (first < 0) first = int(v);
            p[f(int(v))] = f(first);
        }
    std::set<int> roots;
    for (size_t v = 0; v < G.V.size(); ++v)
        if (G.V[v].alive) roots.insert(f(int(v)));
    return int(roots.size());
}

static int orbit_count(const PlabicGraph& G, int* darts_out = nullptr) {
    DartMap M = build_darts(G);
    int nd = 2 * M.ne;
    std::vector<int> pos(nd, -1), tail(nd, -1);
    for (size_t v = 0; v < M.out.size(); ++v)
        for (size_t i = 0; i < M.out[v].size(); ++i) {
            pos[M.out[v][i]] = int(i);
            tail[M.out[v][i]] = int(v);
        }
    std::vector<bool> seen(nd, false);
    int orbits = 0, live = 0;
    for (int d = 0; d < nd; ++d) {
        if (tail[d] < 0) continue;
        ++live;
        if (seen[d]) continue;
        ++orbits;
        int x = d;
        while (!seen[x]) {
            seen[x] = true;
            int y = M.head[x];
            int rev = x ^ 1;
            auto& r = M.out[y];
            int k = int(r.size());
            x = r[(pos[rev] + k - 1) % k];
        }
    }
    for (auto& v : G.V)
        if (v.alive && v.color != Color::Boundary && v.rot.empty()) ++orbits;  // isolated point
    if (darts_out) *darts_out = live;
    return orbits;
}

int face_count(const PlabicGraph& G) {
    // interior faces of the disk; floating components each contribute one spurious outer orbit
    return orbit_count(G) - connected_components(G);
}

bool euler_check(const PlabicGraph& G) {
    int darts = 0;
    int F = orbit_count(G, &darts);
    int Vn = 0;
    for (auto& v : G.V) Vn += v.alive;
    int En = darts / 2;
    return Vn - En + F == 2 * connected_components(G);
}

std::vector<int> DecoratedPermutation::affine_window() const {
    int n = int(markers.size());
    std::vector<int> f(n);
    for (int p = 0; p < n; ++p) {
        int m = markers[p];
        int q = int(std::find(markers.begin(), markers.end(), pi.at(m)) - markers.begin());
        if (q > p) f[p] = q + 1;
        else if (q < p) f[p] = q + 1 + n;
        else f[p] = fixed_color.at(m) == 2 ? p + 1 + n : p + 1;
    }
    return f;
}

namespace {
// black: counterclockwise neighbour of the incoming edge; white: clockwise
constexpr bool kBlackCCW = true;
}

TripData trips(const PlabicGraph& G0) {
    PlabicGraph G = normalize_leaves(G0);
    TripData T;
    T.perm.markers = G.markers;
    int nE = int(G.E.size());
    std::vector<int> used(2 * nE, -1);  // dart -> trip id
    std::vector<std::vector<int>> path;  // edge ids in order per trip
    auto step = [&](int v, int e) {
        auto& r = G.V[v].rot;
        int k = int(r.size());
        int i = int(std::find(r.begin(), r.end(), e) - r.begin());
        bool ccw = (G.V[v].color == Color::Black) == kBlackCCW;
        return r[ccw ? (i + k - 1) % k : (i + 1) % k];
    };
    auto walk = [&](int v, int e, int id) {
        // leave v along e; returns final vertex
        std::vector<int> p;
        while (true) {
            int d = G.E[e].u == v ? 2 * e : 2 * e + 1;
            if (used[d] >= 0) {
                T.closed_trip = true;
                break;
            }
            used[d] = id;
            p.push_back(e);
            int w = G.E[e].other(v);
            if (G.V[w].color == Color::Boundary) {
                v = w;
                break;
            }
            e = step(w, e);
            v = w;
        }
        path.push_back(p);
        return v;
    };
    for (int m : G.markers) {
        int bv = G.boundary_vertex(m);
        if (G.V[bv].rot.empty()) throw std::logic_error("trips: bare boundary vertex");
        int e = G.V[bv].rot[0];
        int id = int(path.size());
        int end = walk(bv, e, id);
        T.perm.pi[m] = G.V[end].label;
        int leaf = G.E[e].other(bv);
        bool lollipop = G.V[leaf].rot.size() == 1;
        if (end == bv) {
            if (lollipop) T.perm.fixed_color[m] = G.V[leaf].color == Color::Black ? 1 : 2;
            else {
                T.fixed_point_not_lollipop = true;
                T.perm.fixed_color[m] = 0;
            }
        }
        std::set<int> seen;
        for (int x : path.back())
            if (!seen.insert(x).second && !lollipop) T.self_intersection = true;
    }
    int nb = int(path.size());
    for (int d = 0; d < 2 * nE; ++d)
        if (used[d] < 0 && G.E[d / 2].alive) {
            T.closed_trip = true;
            break;
        }
    // bad double crossing: two trips meeting at two edges in the same order
    std::vector<std::map<int, int>> posn(nb);
    for (int t = 0; t < nb; ++t)
        for (size_t i = 0; i < path[t].size(); ++i) posn[t].emplace(path[t][i], int(i));
    for (int s = 0; s < nb && !T.bad_double_crossing; ++s)
        for (int t = s + 1; t < nb && !T.bad_double_crossing; ++t) {
            std::vector<std::pair<int, int>> common;
            for (auto [e, i] : posn[s]) {
                auto it = posn[t].find(e);
                if (it != posn[t].end()) common.push_back({i, it->second});
            }
            std::sort(common.begin(), common.end());
            for (size_t i = 1; i < common.size(); ++i)
                if (common[i - 1].second < common[i].second) T.bad_double_crossing = true;
        }
    return T;
}

DecoratedPermutation trip_permutation(const PlabicGraph& G) { return trips(G).perm; }

bool is_reduced(const PlabicGraph& G) {
    for (auto& v : G.V)
        if (v.alive && v.color != Color::Boundary && v.rot.empty()) return false;
    PlabicGraph H = normalize_leaves(G);
    if (face_count(H) != face_count(G)) return false;
    if (connected_components(H) != 1) return false;
    TripData T = trips(H);
    return !(T.closed_trip || T.self_intersection || T.bad_double_crossing || T.fixed_point_not_lollipop);
}

int dimension(const PlabicGraph& G) { return face_count(G) - 1; }

DecoratedPermutation permutation_of_matrix(const Matrix& C, const std::vector<int>& markers) {
    int n = C.cols, k = C.rows;
    if (int(markers.size()) != n) throw std::invalid_argument("permutation_of_matrix: marker count");
    auto sub = [&](const std::vector<int>& cols) {
        Matrix S(k, int(cols.size()));
        for (int i = 0; i < k; ++i)
            for (size_t j = 0; j < cols.size(); ++j) S(i, int(j)) = C(i, cols[j]);
        return rank(S);
    };
    DecoratedPermutation P;
    P.markers = markers;
    for (int i = 0; i < n; ++i) {
        if (sub({i}) == 0) {
            P.pi[markers[i]] = markers[i];
            P.fixed_color[markers[i]] = 1;
            continue;
        }
        std::vector<int> span;
        bool found = false;
        for (int s = 1; s < n; ++s) {
            int j = (i + s) % n;
            span.push_back(j);
            auto with = span;
            with.push_back(i);
            if (sub(span) == sub(with)) {
                P.pi[markers[i]] = markers[j];
                found = true;
                break;
            }
        }
        if (!found) {
            P.pi[markers[i]] = markers[i];
            P.fixed_color[markers[i]] = 2;
        }
    }
    return P;
}

MatchingTable matchings(const PlabicGraph& G0, size_t limit) {
    const PlabicGraph G = normalize_leaves(G0);
    MatchingTable T;
    T.markers = G.markers;
    for (auto& e : G.E) T.edge_name.push_back(e.name);
    int nV = int(G.V.size());
    for (auto& v : G.V)
        if (v.alive && v.color != Color::Boundary && v.rot.empty()) return T;
    // bipartite expansion: monochromatic edges get a midpoint
    struct XE {
        int u, v, orig;
    };
    std::vector<XE> xe;
    int nX = nV;
    for (size_t e = 0; e < G.E.size(); ++e) {
        auto& E = G.E[e];
        if (!E.alive) continue;
        Color cu = G.V[E.u].color, cv = G.V[E.v].color;
        if (cu != Color::Boundary && cu == cv) {
            int m = nX++;
            xe.push_back({E.u, m, int(e)});
            xe.push_back({m, E.v, -1});
        } else {
            xe.push_back({E.u, E.v, int(e)});
        }
    }
    std::vector<std::vector<int>> adj(nX);
    for (size_t i = 0; i < xe.size(); ++i) {
        adj[xe[i].u].push_back(int(i));
        adj[xe[i].v].push_back(int(i));
    }
    std::vector<bool> internal(nX, true), isb(nX, false);
    for (int v = 0; v < nV; ++v) {
        if (!G.V[v].alive) internal[v] = false;
        if (G.V[v].color == Color::Boundary) {
            internal[v] = false;
            isb[v] = true;
        }
    }
    std::vector<int> bpos(nV, -1);
    std::vector<bool> nb_white(nV, false);
    for (size_t i = 0; i < G.markers.size(); ++i) {
        int bv = G.boundary_vertex(G.markers[i]);
        bpos[bv] = int(i);
        if (G.V[bv].rot.size() != 1) throw std::logic_error("matchings: boundary vertex degree must be 1");
        int w = G.E[G.V[bv].rot[0]].other(bv);
        nb_white[bv] = G.V[w].color == Color::White;
    }
    std::vector<int> mate(nX, -1);  // matched edge
    std::vector<int> cur;
    int remaining = 0;
    for (int v = 0; v < nX; ++v) remaining += internal[v];
    std::function<void()> rec = [&]() {
        if (remaining == 0) {
            uint64_t mask = 0;
            for (int v = 0; v < nV; ++v)
                if (isb[v] && G.V[v].alive) {
                    bool matched = mate[v] >= 0;
                    if (matched == nb_white[v]) mask |= uint64_t(1) << bpos[v];
                }
            std::vector<int> es;
            for (int x : cur)
                if (xe[x].orig >= 0) es.push_back(xe[x].orig);
            T.boundary.push_back(mask);
            T.edges.push_back(std::move(es));
            if (T.boundary.size() > limit) throw std::runtime_error("matchings: limit exceeded");
            return;
        }
        int best = -1, bc = 1 << 30;
        for (int v = 0; v < nX; ++v) {
            if (!internal[v] || mate[v] >= 0) continue;
            int c = 0;
            for (int x : adj[v]) {
                int w = xe[x].u == v ? xe[x].v : xe[x].u;
                if (mate[w] < 0) ++c;
            }
            if (c < bc) {
                bc = c;
                best = v;
                if (c <= 1) break;
            }
        }
        if (bc == 0) return;
        int v = best;
        for (int x : adj[v]) {
            int w = xe[x].u == v ? xe[x].v : xe[x].u;
            if (mate[w] >= 0) continue;
            mate[v] = mate[w] = x;
            cur.push_back(x);
            remaining -= 1 + int(internal[w]);
            rec();
            remaining += 1 + int(internal[w]);
            cur.pop_back();
            mate[v] = mate[w] = -1;
        }
    };
    rec();
    if (!T.boundary.empty()) {
        T.k = __builtin_popcountll(T.boundary[0]);
        for (auto m : T.boundary)
            if (__builtin_popcountll(m) != T.k) throw std::logic_error("matchings: inconsistent boundary size");
    }
    return T;
}

Positroid positroid(const MatchingTable& T) {
    std::set<uint64_t> s(T.boundary.begin(), T.boundary.end());
    return Positroid(s.begin(), s.end());
}

Positroid positroid(const PlabicGraph& G) { return positroid(matchings(G)); }

std::vector<int> mask_to_markers(uint64_t m, const std::vector<int>& markers) {
    std::vector<int> r;
    for (size_t i = 0; i < markers.size(); ++i)
        if (m >> i & 1) r.push_back(markers[i]);
    return r;
}

bool coindependent(const MatchingTable& T, const std::vector<int>& J) {
    uint64_t jm = 0;
    for (int x : J) {
        auto it = std::find(T.markers.begin(), T.markers.end(), x);
        if (it == T.markers.end()) throw std::out_of_range("coindependent: unknown marker");
        jm |= uint64_t(1) << (it - T.markers.begin());
    }
    for (auto m : T.boundary)
        if ((m & jm) == 0) return true;
    return false;
}

EdgeWeights random_weights(const PlabicGraph& G, Rng& rng, int64_t bound) {
    EdgeWeights w;
    for (auto& e : G.E)
        if (e.alive) w[e.name] = rng.positive_rational(bound);
    return w;
}

std::map<uint64_t, Q> boundary_measurement(const PlabicGraph&, const MatchingTable& T, const EdgeWeights& w) {
    std::vector<Q> we(T.edge_name.size(), Q(1));
    for (size_t e = 0; e < we.size(); ++e) {
        auto it = w.find(T.edge_name[e]);
        if (it != w.end()) we[e] = it->second;
    }
    std::map<uint64_t, Q> D;
    for (size_t i = 0; i < T.size(); ++i) {
        Q p = 1;
        for (int e : T.edges[i]) p *= we[e];
        D[T.boundary[i]] += p;
    }
    return D;
}

static bool lex_less(uint64_t x, uint64_t y) {
    // compare sorted index lists lexicographically
    while (x && y) {
        int a = __builtin_ctzll(x), b = __builtin_ctzll(y);
        if (a != b) return a < b;
        x &= x - 1;
        y &= y - 1;
    }
    return false;
}

Matrix matrix_from_plucker(const std::map<uint64_t, Q>& delta, int k, int n) {
    uint64_t I0 = 0;
    bool have = false;
    for (auto& [m, v] : delta) {
        if (sgn(v) == 0) continue;
        if (!have || lex_less(m, I0)) I0 = m, have = true;
    }
    if (!have) throw std::runtime_error("matrix_from_plucker: no basis");
    Q d0 = delta.at(I0);
    std::vector<int> I;
    for (int i = 0; i < n; ++i)
        if (I0 >> i & 1) I.push_back(i);
    Matrix C(k, n);
    for (int r = 0; r < k; ++r)
        for (int j = 0; j < n; ++j) {
            if (I0 >> j & 1) {
                C(r, j) = j == I[r] ? 1 : 0;
                continue;
            }
            uint64_t m = (I0 & ~(uint64_t(1) << I[r])) | (uint64_t(1) << j);
            auto it = delta.find(m);
            if (it == delta.end() || sgn(it->second) == 0) continue;
            int lo = std::min(I[r], j), hi = std::max(I[r], j), between = 0;
            for (int x : I)
                if (x > lo && x < hi) ++between;
            C(r, j) = (between % 2 ? -1 : 1) * it->second / d0;
        }
    return C;
}

Matrix sample_point(const PlabicGraph& G, const MatchingTable& T, const EdgeWeights& w) {
    return matrix_from_plucker(boundary_measurement(G, T, w), T.k, int(T.markers.size()));
}

Matrix sample_point(const PlabicGraph& G, Rng& rng) {
    auto T = matchings(G);
    return sample_point(G, T, random_weights(G, rng));
}

PlabicGraph cell_from_decorated_permutation(const std::vector<int>& window) {
    int n = int(window.size());
    for (int i = 1; i <= n; ++i)
        if (window[i - 1] < i || window[i - 1] > i + n) throw std::invalid_argument("window not bounded");
    {
        std::set<int> res;
        for (int i = 0; i < n; ++i) res.insert(((window[i] - 1) % n + n) % n);
        if (int(res.size()) != n) throw std::invalid_argument("window not a permutation");
    }
    std::vector<int> f = window;
    struct Bridge {
        int i, j;
    };
    std::vector<Bridge> bridges;
    auto fixed = [&](int p) { return f[p] == p + 1 || f[p] == p + 1 + n; };
    while (true) {
        std::vector<int> nf;
        for (int p = 0; p < n; ++p)
            if (!fixed(p)) nf.push_back(p);
        if (nf.empty()) break;
        bool done = false;
        for (size_t t = 0; t < nf.size() && !done; ++t) {
            int i = nf[t], j = nf[(t + 1) % nf.size()];
            bool wrap = j <= i;
            int fi = f[i], fj = f[j] + (wrap ? n : 0);
            if (!(fi < fj)) continue;
            int ni = fj, nj = fi - (wrap ? n : 0);
            if (ni < i + 1 || ni > i + 1 + n || nj < j + 1 || nj > j + 1 + n) continue;
            f[i] = ni;
            f[j] = nj;
            bridges.push_back({i, j});
            done = true;
        }
        if (!done) throw std::logic_error("bridge decomposition stuck");
    }
    PlabicGraph G;
    for (int p = 1; p <= n; ++p) G.markers.push_back(p);
    std::vector<int> bvs(n);
    for (int p = 0; p < n; ++p) {
        bvs[p] = G.add_vertex(Color::Boundary, p + 1);
        int l = G.add_vertex(f[p] == p + 1 ? Color::Black : Color::White);
        G.add_edge(bvs[p], l, "lol" + std::to_string(p + 1));
    }
    int cnt = 0;
    // split boundary edge of p with a new vertex of colour c; returns (vertex, inward edge, outward edge)
    auto split = [&](int p, Color c) {
        int bv = bvs[p];
        int e = G.V[bv].rot[0];
        int w = G.E[e].other(bv);
        int x = G.add_vertex(c);
        if (G.E[e].u == bv) G.E[e].u = x;
        else G.E[e].v = x;
        G.V[bv].rot.clear();
        G.E.push_back({bv, x, "br" + std::to_string(++cnt) + ".leg", true});
        int leg = int(G.E.size()) - 1;
        G.V[bv].rot = {leg};
        (void)w;
        return std::array<int, 3>{x, e, leg};
    };
    for (auto it = bridges.rbegin(); it != bridges.rend(); ++it) {
        auto [W, eWin, eWleg] = split(it->i, Color::White);
        auto [Bk, eBin, eBleg] = split(it->j, Color::Black);
        G.E.push_back({W, Bk, "br" + std::to_string(cnt / 2) + ".t", true});
        int t = int(G.E.size()) - 1;
        G.V[W].rot = {eWleg, t, eWin};
        G.V[Bk].rot = {eBleg, eBin, t};
    }
    return G;
}

nlohmann::json to_json(const PlabicGraph& G) {
    nlohmann::json j;
    j["markers"] = G.markers;
    auto& vs = j["vertices"] = nlohmann::json::array();
    for (size_t v = 0; v < G.V.size(); ++v) {
        if (!G.V[v].alive) continue;
        const char* c = G.V[v].color == Color::Boundary ? "boundary" : G.V[v].color == Color::Black ? "black" : "white";
        nlohmann::json x = {{"id", v}, {"color", c}, {"rotation", G.V[v].rot}};
        if (G.V[v].color == Color::Boundary) x["marker"] = G.V[v].label;
        vs.push_back(x);
    }
    auto& es = j["edges"] = nlohmann::json::array();
    for (size_t e = 0; e < G.E.size(); ++e)
        if (G.E[e].alive) es.push_back({{"id", e}, {"name", G.E[e].name}, {"ends", {G.E[e].u, G.E[e].v}}});
    return j;
}

}  // namespace amplitile
