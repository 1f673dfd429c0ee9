#include "amplitile/cluster.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace amplitile {

namespace {

const char* kLetters[5] = {"alpha", "beta", "gamma", "delta", "eps"};

double log_abs(const Q& x) {
    long e1 = 0, e2 = 0;
    double m1 = mpz_get_d_2exp(&e1, x.get_num_mpz_t());
    double m2 = mpz_get_d_2exp(&e2, x.get_den_mpz_t());
    return std::log(std::fabs(m1)) - std::log(std::fabs(m2)) + double(e1 - e2) * std::log(2.0);
}

Matrix random_gr4(int n, Rng& rng) {
    Matrix M(4, n);
    for (auto& x : M.a) x = Q(rng.uniform_int(-40, 40));
    return M;
}

std::vector<int> iota1(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    return v;
}

Q power(Q x, int e) {
    Q r = 1;
    for (int i = 0; i < std::abs(e); ++i) r *= x;
    return e >= 0 ? r : Q(1 / r);
}

// exact integer e with x == 2^e, or nullopt
std::optional<int> log2_exact(const Q& x) {
    if (sgn(x) <= 0) return std::nullopt;
    mpz_class num = x.get_num(), den = x.get_den();
    auto pw = [](const mpz_class& z) -> int {
        if (z == 1) return 0;
        size_t b = mpz_scan1(z.get_mpz_t(), 0);
        mpz_class t = z >> b;
        return t == 1 ? int(b) : -1;
    };
    int a = pw(num), b = pw(den);
    if (a < 0 || b < 0) return std::nullopt;
    return a - b;
}

}  // namespace

std::string letter_name(int z) { return kLetters[z]; }

void accumulate(LaurentMonomial& into, const LaurentMonomial& m, int times) {
    for (auto& [v, e] : m) {
        int& x = into[v];
        x += e * times;
        if (x == 0) into.erase(v);
    }
}

std::string DominoVariables::name(int v) const {
    auto [i, z] = key.at(v);
    return std::string(kLetters[z]) + std::to_string(i);
}

DominoVariables domino_variables(const ChordDiagram& D) {
    DominoVariables dv;
    dv.table = coordinate_cluster_variables(recipe_from_chord_diagram(D));
    int k = D.k();
    dv.id.assign(k + 1, {-1, -1, -1, -1, -1});
    for (int i = 1; i <= k; ++i)
        for (int z = 0; z < 5; ++z) {
            if (z == kBeta && has_sticky_same_end_parent(D, i)) continue;
            dv.id[i][z] = int(dv.poly.size());
            dv.key.push_back({i, z});
            dv.poly.push_back(dv.table[i][z]);
        }
    for (int i = 1; i <= k; ++i) {
        if (dv.id[i][kBeta] >= 0) continue;
        int p = parent_of(D, i);
        const Poly &b = dv.table[i][kBeta], &a = dv.table[p][kAlpha];
        if (b != a && b != scale(a, -1))
            throw std::logic_error("domino_variables: beta" + std::to_string(i) + " differs from alpha" + std::to_string(p));
        dv.id[i][kBeta] = dv.id[p][kAlpha];
    }
    return dv;
}

// ---- tile sampling

StandardTile::StandardTile(const ChordDiagram& d, Matrix z, uint64_t seed) : D(d) {
    recipe = recipe_from_chord_diagram(D);
    G = cell_from_chord_diagram(D);
    T = matchings(G);
    Z = z.rows ? z : vandermonde_Z(D.n(), D.k());
    markers = D.markers;
    dom = domino_variables(D);
    coord = coordinate_functionaries(recipe);
    Rng rng(seed, 0x5eed);
    for (int attempt = 0;; ++attempt) {
        TwistorPoint P = sample(rng);
        Evaluator ev(P);
        bool ok = true;
        dom_sign.assign(dom.count(), 0);
        for (int v = 0; v < dom.count() && ok; ++v) ok = (dom_sign[v] = sgn(ev(dom.poly[v]))) != 0;
        coord_sign.assign(k() + 1, {0, 0, 0, 0, 0});
        for (int i = 1; i <= k() && ok; ++i)
            for (int zz = 0; zz < 5 && ok; ++zz) ok = (coord_sign[i][zz] = sgn(ev(coord[i][zz]))) != 0;
        if (ok) break;
        if (attempt > 20) throw std::runtime_error("StandardTile: could not find a point with nonvanishing variables");
    }
}

EdgeWeights StandardTile::unit_weights() const {
    EdgeWeights w;
    for (auto& nm : G.edge_names()) w[nm] = 1;
    return w;
}

TwistorPoint StandardTile::image(const EdgeWeights& w) const {
    Matrix C = sample_point(G, T, w);
    return TwistorPoint{amplituhedron_map(C, Z), Z, markers};
}

TwistorPoint StandardTile::sample(Rng& rng) const { return image(random_weights(G, rng)); }

// ---- monomial discovery

SignedMonomial express_in_dominoes(const Functionary& zeta, const DominoVariables& dom, int n, Rng& rng, int checks) {
    int V = dom.count(), P = V + 12;
    auto mk = iota1(n);
    Eigen::MatrixXd A(P, V);
    Eigen::VectorXd b(P);
    for (int r = 0; r < P;) {
        Matrix M = random_gr4(n, rng);
        std::vector<Q> vals(V);
        bool ok = true;
        for (int v = 0; v < V && ok; ++v) ok = sgn(vals[v] = evaluate_on_matrix(dom.poly[v], M, mk)) != 0;
        if (!ok) continue;
        Q z;
        try {
            z = evaluate_on_matrix(zeta, M, mk);
        } catch (const std::domain_error&) {
            continue;
        }
        if (sgn(z) == 0) continue;
        for (int v = 0; v < V; ++v) A(r, v) = log_abs(vals[v]);
        b(r) = log_abs(z);
        ++r;
    }
    Eigen::VectorXd e = A.colPivHouseholderQr().solve(b);
    SignedMonomial out;
    for (int v = 0; v < V; ++v) {
        long x = std::lround(e(v));
        if (std::fabs(e(v) - double(x)) > 1e-6) throw std::runtime_error("express_in_dominoes: NoMonomialFound (non-integer fit)");
        if (x) out.exps[v] = int(x);
    }
    int sign = 0;
    for (int t = 0; t < checks;) {
        Matrix M = random_gr4(n, rng);
        Q rhs = 1;
        bool ok = true;
        for (auto& [v, x] : out.exps) {
            Q val = evaluate_on_matrix(dom.poly[v], M, mk);
            if (sgn(val) == 0) {
                ok = false;
                break;
            }
            rhs *= power(val, x);
        }
        if (!ok) continue;
        Q lhs;
        try {
            lhs = evaluate_on_matrix(zeta, M, mk);
        } catch (const std::domain_error&) {
            continue;
        }
        Q r = lhs / rhs;
        int s = r == 1 ? 1 : r == -1 ? -1 : 0;
        if (s == 0 || (sign && s != sign)) throw std::runtime_error("express_in_dominoes: NoMonomialFound (identity fails)");
        sign = s;
        ++t;
    }
    out.sign = sign;
    return out;
}

// ---- classification and seeds

Classification classify_variables(const ChordDiagram& D, const DominoVariables& dom) {
    Classification c;
    c.frozen.assign(dom.count(), false);
    for (int i = 1; i <= D.k(); ++i) {
        bool sameend = has_same_end_child(D, i);
        bool in[5] = {!has_sticky_child(D, i), !(starts_where_another_ends(D, i) || has_sticky_same_end_parent(D, i)), true,
                      !sameend, !sameend};
        for (int z = 0; z < 5; ++z)
            if (in[z]) c.frozen[dom.id[i][z]] = true;
    }
    for (int v = 0; v < dom.count(); ++v) (c.frozen[v] ? c.afacet : c.mut).push_back(v);
    return c;
}

int Seed::index(const std::string& nm) const {
    for (int i = 0; i < size(); ++i)
        if (name[i] == nm) return i;
    return -1;
}

Seed build_tile_seed(const StandardTile& t) {
    const auto& D = t.D;
    const auto& dom = t.dom;
    auto cls = classify_variables(D, dom);
    Seed s;
    int V = dom.count();
    for (int v = 0; v < V; ++v) {
        s.name.push_back(dom.name(v));
        s.frozen.push_back(cls.frozen[v]);
        s.var.push_back(Functionary::of(dom.poly[v]));
        s.sign.push_back(t.dom_sign[v]);
    }
    s.B.assign(V, std::vector<int>(V, 0));
    // an arrow produced by two rules (or through an alias) is still a single arrow
    std::set<std::pair<int, int>> arrows;
    auto arrow = [&](int i, int zi, int j, int zj) {
        int u = dom.id[i][zi], w = dom.id[j][zj];
        if (u != w) arrows.insert({u, w});
    };
    int k = D.k();
    for (int i = 1; i <= k; ++i) {
        const Chord& ci = D.chords[i - 1];
        for (int j = 1; j <= k; ++j) {
            if (j == i) continue;
            const Chord& cj = D.chords[j - 1];
            bool child = parent_of(D, j) == i;
            if (parent_of(D, j) == parent_of(D, i) && cj.c == ci.a) {  // head-to-tail left sibling
                arrow(j, kGamma, i, kBeta);
                arrow(i, kBeta, j, kDelta);
                arrow(i, kBeta, i, kAlpha);
            }
            if (child && cj.c == ci.c) {  // same-end child
                arrow(i, kEps, i, kDelta);
                arrow(i, kDelta, i, kGamma);
                arrow(j, kGamma, i, kDelta);
                arrow(j, kDelta, i, kEps);
                arrow(i, kDelta, j, kDelta);
                arrow(i, kEps, j, kEps);
            }
            if (child && cj.a == ci.b) {  // sticky child
                arrow(j, kEps, i, kAlpha);
                arrow(i, kBeta, i, kAlpha);
                arrow(i, kAlpha, j, kAlpha);
                if (cj.c == ci.c) {
                    arrow(i, kAlpha, i, kEps);
                    s.dotted.push_back({dom.id[i][kAlpha], dom.id[i][kEps]});
                }
            }
        }
    }
    for (auto [u, w] : arrows) {
        s.B[u][w] += 1;
        s.B[w][u] -= 1;
    }
    return s;
}

std::pair<Functionary, Functionary> exchange_monomials(const Seed& s, int v) {
    Functionary in, out;
    for (int j = 0; j < s.size(); ++j) {
        if (s.B[j][v] > 0) in *= s.var[j].pow(s.B[j][v]);
        if (s.B[v][j] > 0) out *= s.var[j].pow(s.B[v][j]);
    }
    return {in, out};
}

Seed mutate(const Seed& s, int v, const TwistorPoint* sign_point) {
    if (v < 0 || v >= s.size()) throw std::out_of_range("mutate: no such vertex");
    if (s.frozen[v]) throw std::invalid_argument("mutate: vertex " + s.name[v] + " is frozen");
    auto [in, out] = exchange_monomials(s, v);
    Seed r = s;
    r.var[v] = sum(in, out);
    r.var[v] *= s.var[v].pow(-1);
    int sa = 1, sb = 1;
    for (int j = 0; j < s.size(); ++j) {
        if (s.B[j][v] > 0 && s.B[j][v] % 2) sa *= s.sign[j];
        if (s.B[v][j] > 0 && s.B[v][j] % 2) sb *= s.sign[j];
    }
    int sx = sa;
    if (sa != sb) {
        if (!sign_point) throw std::runtime_error("mutate: exchange monomials of opposite sign; pass a point");
        TwistorPoint P = *sign_point;
        Evaluator ev(P);
        Q val = ev(r.var[v]);
        sx = sgn(val);
        r.sign[v] = sx;
    } else {
        r.sign[v] = sx * s.sign[v];
    }
    std::string nm = s.name[v];
    r.name[v] = !nm.empty() && nm.back() == '\'' ? nm.substr(0, nm.size() - 1) : nm + "'";
    int N = s.size();
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i == v || j == v) r.B[i][j] = -s.B[i][j];
            else r.B[i][j] = s.B[i][j] + (std::abs(s.B[i][v]) * s.B[v][j] + s.B[i][v] * std::abs(s.B[v][j])) / 2;
            if (s.frozen[i] && s.frozen[j]) r.B[i][j] = 0;
        }
    r.dotted.clear();
    return r;
}

bool positivity_test(const TwistorPoint& Y, const Seed& s) {
    Evaluator ev(Y);
    for (int i = 0; i < s.size(); ++i)
        if (sgn(ev(s.var[i])) * s.sign[i] <= 0) return false;
    return true;
}

// ---- coordinate monomials and the scaling map

CoordinateMonomials coordinate_monomials(const StandardTile& t, Rng& rng) {
    CoordinateMonomials cm;
    cm.N.resize(t.k() + 1);
    for (int i = 1; i <= t.k(); ++i)
        for (int z = 0; z < 5; ++z) {
            auto sm = express_in_dominoes(t.coord[i][z], t.dom, t.n(), rng);
            int s = t.coord_sign[i][z] * sm.sign;
            for (auto& [v, e] : sm.exps)
                if (e % 2) s *= t.dom_sign[v];
            if (s != 1)
                throw std::runtime_error("coordinate_monomials: signed expression of " + letter_name(z) + std::to_string(i) +
                                         " is not positive");
            cm.N[i][z] = sm.exps;
        }
    return cm;
}

ScalingMap scaling_map(const ChordDiagram& D, const DominoVariables& dom, const CoordinateMonomials& cm) {
    int k = D.k();
    ScalingMap sm;
    sm.in_gamma.assign(k + 1, false);
    for (int i = 1; i <= k; ++i) sm.in_gamma[i] = !has_sticky_same_end_parent(D, i);
    sm.m.assign(dom.count(), {});
    std::vector<bool> known(dom.count(), false);
    auto image = [&](const LaurentMonomial& N, int skip, const char* what) {
        LaurentMonomial r;
        for (auto& [v, e] : N) {
            if (v == skip) continue;
            if (!known[v]) throw std::runtime_error(std::string("scaling_map: ") + what + " depends on undetermined " + dom.name(v));
            accumulate(r, sm.m[v], e);
        }
        return r;
    };
    for (int i = k; i >= 1; --i) {
        int def;
        if (sm.in_gamma[i]) {
            int g = dom.id[i][kGamma];
            sm.m[g] = {{i, -1}};
            known[g] = true;
            def = kGamma;
        } else {
            def = kBeta;
        }
        LaurentMonomial target = image(cm.N[i][def], -1, "defining functionary");
        for (int z = 0; z < 5; ++z) {
            if (z == def) continue;
            int u = dom.id[i][z];
            if (known[u]) continue;
            auto it = cm.N[i][z].find(u);
            if (it == cm.N[i][z].end() || std::abs(it->second) != 1)
                throw std::runtime_error("scaling_map: " + dom.name(u) + " does not enter its coordinate functionary linearly");
            LaurentMonomial rest = image(cm.N[i][z], u, "coordinate functionary");
            LaurentMonomial mu = target;
            accumulate(mu, rest, -1);
            if (it->second == -1) {
                LaurentMonomial neg;
                accumulate(neg, mu, -1);
                mu = neg;
            }
            sm.m[u] = mu;
            known[u] = true;
        }
    }
    for (int v = 0; v < dom.count(); ++v)
        if (!known[v]) throw std::runtime_error("scaling_map: " + dom.name(v) + " left undetermined");
    return sm;
}

std::string check_scaling_map(const ChordDiagram& D, const DominoVariables& dom, const CoordinateMonomials& cm,
                              const ScalingMap& sm) {
    int k = D.k();
    for (int i = 1; i <= k; ++i) {
        if (sm.in_gamma[i] && sm.m[dom.id[i][kGamma]] != LaurentMonomial{{i, -1}}) return "m(gamma" + std::to_string(i) + ") is not its inverse";
        LaurentMonomial first;
        for (int z = 0; z < 5; ++z) {
            LaurentMonomial img;
            for (auto& [v, e] : cm.N[i][z]) accumulate(img, sm.m[v], e);
            if (z == 0) first = img;
            else if (img != first) return "m of the coordinate functionaries of chord " + std::to_string(i) + " differ";
        }
    }
    for (int v = 0; v < dom.count(); ++v) {
        int d = 0;
        for (auto& [j, e] : sm.m[v]) d += e * degree(dom.poly[dom.id[j][kGamma]]);
        if (d != -degree(dom.poly[v])) return "degree identity fails at " + dom.name(v);
    }
    return "";
}

std::string to_string(const LaurentMonomial& gm, const char* base) {
    std::string num, den;
    for (auto& [j, e] : gm) {
        std::string s = std::string(base) + std::to_string(j);
        if (std::abs(e) != 1) s += "^" + std::to_string(std::abs(e));
        std::string& t = e > 0 ? num : den;
        t += (t.empty() ? "" : "*") + s;
    }
    if (num.empty()) num = "1";
    return den.empty() ? num : num + "/(" + den + ")";
}

TileCoordinates tile_coordinates(const StandardTile& t, const ScalingMap& sm) {
    TileCoordinates tc;
    std::set<int> gamma_in;
    for (int i = 1; i <= t.k(); ++i)
        if (sm.in_gamma[i]) gamma_in.insert(t.dom.id[i][kGamma]);
    for (int v = 0; v < t.dom.count(); ++v) {
        if (gamma_in.count(v)) continue;
        LaurentMonomial m{{v, 1}};
        for (auto& [j, e] : sm.m[v]) accumulate(m, {{t.dom.id[j][kGamma], 1}}, e);
        tc.vars.push_back(v);
        tc.monomial.push_back(m);
    }
    return tc;
}

Q evaluate_signed(const StandardTile& t, const LaurentMonomial& m, Evaluator& ev) {
    Q r = 1;
    for (auto& [v, e] : m) {
        Q x = t.dom_sign[v] * ev(t.dom.poly[v]);
        if (sgn(x) == 0) {
            if (e < 0) throw std::domain_error("evaluate: vanishing denominator");
            return 0;
        }
        r *= power(x, e);
    }
    return r;
}

std::vector<Q> tile_variables(const StandardTile& t, const TileCoordinates& tc, const TwistorPoint& Y) {
    Evaluator ev(Y);
    std::vector<Q> out;
    for (auto& m : tc.monomial) out.push_back(evaluate_signed(t, m, ev));
    return out;
}

std::vector<std::array<Q, 5>> coordinate_values(const StandardTile& t, const TwistorPoint& Y) {
    Evaluator ev(Y);
    std::vector<std::array<Q, 5>> out(t.k() + 1);
    for (int i = 1; i <= t.k(); ++i)
        for (int z = 0; z < 5; ++z) out[i][z] = t.coord_sign[i][z] * ev(t.coord[i][z]);
    return out;
}

Seed tile_seed(const StandardTile& t, const ScalingMap& sm, const TileCoordinates& tc) {
    Seed full = build_tile_seed(t);
    std::vector<int> keep = tc.vars;
    Seed s;
    int N = int(keep.size());
    s.B.assign(N, std::vector<int>(N, 0));
    for (int a = 0; a < N; ++a) {
        int v = keep[a];
        s.name.push_back(full.name[v]);
        s.frozen.push_back(full.frozen[v]);
        s.sign.push_back(1);
        Functionary f;
        for (auto& [u, e] : tc.monomial[a]) {
            Functionary x = Functionary::of(t.dom.poly[u]);
            x.coeff *= t.dom_sign[u];
            f *= x.pow(e);
        }
        s.var.push_back(f);
        for (int b = 0; b < N; ++b) s.B[a][b] = full.B[v][keep[b]];
    }
    for (auto [u, w] : full.dotted) {
        auto iu = std::find(keep.begin(), keep.end(), u), iw = std::find(keep.begin(), keep.end(), w);
        if (iu != keep.end() && iw != keep.end()) s.dotted.push_back({int(iu - keep.begin()), int(iw - keep.begin())});
    }
    (void)sm;
    return s;
}

// ---- calibration and the inverse map

const std::array<int, 5> kDesignatedEdge = {6, 8, 10, 1, 12};

namespace {

std::vector<std::array<Q, 5>> ratios(const StandardTile& t, const EdgeWeights& w) {
    auto cv = coordinate_values(t, t.image(w));
    for (int i = 1; i <= t.k(); ++i) {
        Q a = cv[i][0];
        for (int z = 0; z < 5; ++z) cv[i][z] /= a;
    }
    return cv;
}

EdgeWeights designated_weights(const StandardTile& t, const std::vector<std::array<Q, 5>>& W) {
    EdgeWeights w = t.unit_weights();
    for (int i = 1; i <= t.k(); ++i)
        for (int z = 0; z < 5; ++z) w.at(butterfly_edge(i, kDesignatedEdge[z])) = W[i][z];
    return w;
}

Q predicted(const Calibration& cal, int i, int z, const std::vector<std::array<Q, 5>>& W) {
    Q r = cal.base[i][z];
    for (auto& [jy, e] : cal.E[i][z]) r *= power(W[jy.first][jy.second], e);
    return r;
}

}  // namespace

Calibration calibrate(const StandardTile& t, Rng& rng, int checks) {
    int k = t.k();
    Calibration cal;
    std::vector<std::array<Q, 5>> ones(k + 1, {1, 1, 1, 1, 1});
    cal.base = ratios(t, designated_weights(t, ones));
    cal.E.assign(k + 1, {});
    for (int j = 1; j <= k; ++j)
        for (int y = 0; y < 5; ++y) {
            auto W = ones;
            W[j][y] = 2;
            auto r = ratios(t, designated_weights(t, W));
            for (int i = 1; i <= k; ++i)
                for (int z = 1; z < 5; ++z) {
                    auto e = log2_exact(r[i][z] / cal.base[i][z]);
                    if (!e) throw std::runtime_error("calibrate: ratio is not a monomial in the designated weights");
                    if (*e) cal.E[i][z][{j, y}] = *e;
                }
        }
    for (int c = 0; c < checks; ++c) {
        auto W = ones;
        for (int i = 1; i <= k; ++i)
            for (int z = 0; z < 5; ++z) W[i][z] = rng.positive_rational(9);
        auto r = ratios(t, designated_weights(t, W));
        for (int i = 1; i <= k; ++i)
            for (int z = 1; z < 5; ++z)
                if (r[i][z] != predicted(cal, i, z, W)) throw std::runtime_error("calibrate: monomial model fails at random weights");
    }
    // own weights must enter linearly; other steps define the solving order
    std::vector<std::set<int>> dep(k + 1);
    for (int i = 1; i <= k; ++i)
        for (int z = 1; z < 5; ++z) {
            for (auto& [jy, e] : cal.E[i][z]) {
                if (jy.first == i) {
                    bool ok = (jy.second == z && std::abs(e) == 1) || jy.second == 0;
                    if (!ok) throw std::runtime_error("calibrate: coupled weights within one step");
                } else {
                    dep[i].insert(jy.first);
                }
            }
            if (!cal.E[i][z].count({i, z})) throw std::runtime_error("calibrate: step weight does not enter its own ratio");
        }
    std::vector<bool> done(k + 1, false);
    while (int(cal.order.size()) < k) {
        bool progress = false;
        for (int i = 1; i <= k; ++i) {
            if (done[i]) continue;
            bool ready = true;
            for (int j : dep[i]) ready = ready && done[j];
            if (!ready) continue;
            cal.order.push_back(i);
            done[i] = progress = true;
        }
        if (!progress) throw std::runtime_error("calibrate: cyclic dependence between steps");
    }
    return cal;
}

TwistorPoint tile_inverse(const StandardTile& t, const CoordinateMonomials& cm, const ScalingMap& sm,
                          const TileCoordinates& tc, const Calibration& cal, const std::vector<Q>& p) {
    if (p.size() != tc.vars.size()) throw std::invalid_argument("tile_inverse: expected " + std::to_string(tc.vars.size()) + " values");
    int k = t.k();
    std::vector<Q> val(t.dom.count(), Q(1));
    for (size_t a = 0; a < p.size(); ++a) {
        if (sgn(p[a]) <= 0) throw std::invalid_argument("tile_inverse: tile variables must be positive");
        val[tc.vars[a]] = p[a];
    }
    (void)sm;
    std::vector<std::array<Q, 5>> target(k + 1);
    for (int i = 1; i <= k; ++i) {
        std::array<Q, 5> zp;
        for (int z = 0; z < 5; ++z) {
            zp[z] = 1;
            for (auto& [v, e] : cm.N[i][z]) zp[z] *= power(val[v], e);
        }
        for (int z = 0; z < 5; ++z) target[i][z] = zp[z] / zp[0];
    }
    std::vector<std::array<Q, 5>> W(k + 1, {1, 1, 1, 1, 1});
    for (int i : cal.order)
        for (int z = 1; z < 5; ++z) {
            Q rest = cal.base[i][z];
            int own = 0;
            for (auto& [jy, e] : cal.E[i][z]) {
                if (jy.first == i && jy.second == z) own = e;
                else rest *= power(W[jy.first][jy.second], e);
            }
            Q x = target[i][z] / rest;
            W[i][z] = own == 1 ? x : Q(1 / x);
        }
    return t.image(designated_weights(t, W));
}

nlohmann::json to_json(const Seed& s) {
    nlohmann::json j;
    auto verts = nlohmann::json::array();
    for (int i = 0; i < s.size(); ++i)
        verts.push_back({{"name", s.name[i]}, {"frozen", bool(s.frozen[i])}, {"sign", s.sign[i]}, {"variable", to_string(s.var[i])}});
    auto arrows = nlohmann::json::array();
    for (int i = 0; i < s.size(); ++i)
        for (int k = 0; k < s.size(); ++k)
            if (s.B[i][k] > 0) arrows.push_back({s.name[i], s.name[k], s.B[i][k]});
    auto dotted = nlohmann::json::array();
    for (auto [a, b] : s.dotted) dotted.push_back({s.name[a], s.name[b]});
    j["vertices"] = verts;
    j["arrows"] = arrows;
    j["dotted"] = dotted;
    return j;
}

}  // namespace amplitile
