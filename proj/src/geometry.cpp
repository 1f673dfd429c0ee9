#include "amplitile/geometry.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace amplitile {

namespace {

struct Jet {
    Q v;
    std::vector<Q> d;
};

Jet constant_jet(const Q& v, int m) { return {v, std::vector<Q>(m)}; }

Jet operator*(const Jet& a, const Jet& b) {
    Jet r{a.v * b.v, std::vector<Q>(a.d.size())};
    for (size_t i = 0; i < r.d.size(); ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
    return r;
}

void axpy(Jet& y, const Q& s, const Jet& x) {  // y += s x
    y.v += s * x.v;
    for (size_t i = 0; i < y.d.size(); ++i) y.d[i] += s * x.d[i];
}

// determinant by elimination on the real parts; all jets share the gradient length m
Jet jet_det(std::vector<std::vector<Jet>> M, int m) {
    int n = int(M.size());
    Jet det = constant_jet(1, m);
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && sgn(M[p][c].v) == 0) ++p;
        if (p == n) throw std::domain_error("jet_det: twistor vanishes at the point");
        if (p != c) {
            std::swap(M[p], M[c]);
            det.v = -det.v;
            for (auto& x : det.d) x = -x;
        }
        det = det * M[c][c];
        Q inv = 1 / M[c][c].v;
        for (int r = c + 1; r < n; ++r) {
            if (sgn(M[r][c].v) == 0 && std::all_of(M[r][c].d.begin(), M[r][c].d.end(), [](const Q& q) { return sgn(q) == 0; }))
                continue;
            // factor f = M[r][c]/M[c][c] as a jet
            Jet f{M[r][c].v * inv, std::vector<Q>(m)};
            for (int i = 0; i < m; ++i) f.d[i] = (M[r][c].d[i] - f.v * M[c][c].d[i]) * inv;
            for (int cc = c; cc < n; ++cc) {
                Jet t = f * M[c][cc];
                M[r][cc].v -= t.v;
                for (int i = 0; i < m; ++i) M[r][cc].d[i] -= t.d[i];
            }
        }
    }
    return det;
}

class JetEvaluator {
public:
    JetEvaluator(const StandardTile& t, const Matrix& Y, const std::vector<int>& pivots) : t_(t) {
        int k = Y.rows, w = Y.cols;
        if (int(pivots.size()) != k) throw std::invalid_argument("chart: need k pivot columns");
        Matrix YP(k, k);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c) YP(r, c) = Y(r, pivots[c]);
        if (sgn(det(YP)) == 0) throw std::domain_error("chart singular at this point");
        // Yh = YP^{-1} Y by solving
        Matrix aug(k, k + w);
        for (int r = 0; r < k; ++r) {
            for (int c = 0; c < k; ++c) aug(r, c) = YP(r, c);
            for (int c = 0; c < w; ++c) aug(r, k + c) = Y(r, c);
        }
        Matrix R = rref(aug);
        m_ = k * (w - k);
        Yh_.assign(k, std::vector<Jet>(w));
        int l = 0;
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < w; ++c) {
                Yh_[r][c] = constant_jet(R(r, k + c), m_);
                if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) Yh_[r][c].d[l++] = 1;
            }
    }
    int dim() const { return m_; }

    const Jet& sym(const Sym& s) {
        auto it = cache_.find(s);
        if (it != cache_.end()) return it->second;
        int k = int(Yh_.size()), w = k + 4;
        std::vector<std::vector<Jet>> M(Yh_);
        for (int x : s) {
            auto pos = std::find(t_.markers.begin(), t_.markers.end(), x) - t_.markers.begin();
            std::vector<Jet> row;
            for (int c = 0; c < w; ++c) row.push_back(constant_jet(t_.Z(int(pos), c), m_));
            M.push_back(row);
        }
        return cache_[s] = jet_det(std::move(M), m_);
    }
    Jet poly(const Poly& p) {
        Jet r = constant_jet(0, m_);
        for (auto& [mono, c] : p) {
            Jet t = constant_jet(c, m_);
            for (auto& s : mono) t = t * sym(s);
            axpy(r, 1, t);
        }
        return r;
    }
    std::vector<Q> dlog(const Poly& p) {
        Jet j = poly(p);
        if (sgn(j.v) == 0) throw std::domain_error("dlog: function vanishes at the point");
        for (auto& x : j.d) x /= j.v;
        return j.d;
    }
    std::vector<Q> dlog(const Functionary& f) {
        std::vector<Q> r(m_);
        for (auto& [p, e] : f.factors) {
            auto d = dlog(p);
            for (int i = 0; i < m_; ++i) r[i] += e * d[i];
        }
        return r;
    }

private:
    const StandardTile& t_;
    int m_ = 0;
    std::vector<std::vector<Jet>> Yh_;
    std::map<Sym, Jet> cache_;
};

Q pow_int(Q x, int e) {
    Q r = 1;
    for (int i = 0; i < std::abs(e); ++i) r *= x;
    return e >= 0 ? r : Q(1 / r);
}

}  // namespace

Q triangle_form(const Point2& v1, const Point2& v2, const Point2& v3, const Q& x, const Q& y) {
    auto br = [](const std::array<Q, 3>& p, const std::array<Q, 3>& q, const std::array<Q, 3>& r) -> Q {
        return p[0] * (q[1] * r[2] - q[2] * r[1]) - p[1] * (q[0] * r[2] - q[2] * r[0]) + p[2] * (q[0] * r[1] - q[1] * r[0]);
    };
    std::array<Q, 3> Y{1, x, y}, a{1, v1[0], v1[1]}, b{1, v2[0], v2[1]}, c{1, v3[0], v3[1]};
    Q num = br(a, b, c);
    Q den = br(Y, a, b) * br(Y, b, c) * br(Y, c, a);
    if (sgn(den) == 0) throw std::domain_error("triangle_form: on a pole");
    return num * num / den;
}

Q polygon_form(const std::vector<Point2>& v, const Q& x, const Q& y) {
    Q s = 0;
    for (size_t i = 1; i + 1 < v.size(); ++i) s += triangle_form(v[0], v[i], v[i + 1], x, y);
    return s;
}

Matrix dlog_jacobian(const StandardTile& t, const TileCoordinates& tc, const Matrix& Y, const std::vector<int>& pivots,
                     FormMode mode) {
    JetEvaluator je(t, Y, pivots);
    int m = je.dim();
    std::vector<std::vector<Q>> rows;
    if (mode == FormMode::Coord) {
        for (int i = 1; i <= t.k(); ++i) {
            auto da = je.dlog(t.coord[i][kAlpha]);
            for (int z = kBeta; z <= kEps; ++z) {
                auto dz = je.dlog(t.coord[i][z]);
                for (int l = 0; l < m; ++l) dz[l] -= da[l];
                rows.push_back(dz);
            }
        }
    } else {
        for (auto& mono : tc.monomial) {
            std::vector<Q> r(m);
            for (auto& [u, e] : mono) {
                auto d = je.dlog(t.dom.poly[u]);
                for (int l = 0; l < m; ++l) r[l] += e * d[l];
            }
            rows.push_back(r);
        }
    }
    if (int(rows.size()) != m) throw std::logic_error("dlog_jacobian: expected 4k functions");
    Matrix J(m, m);
    for (int a = 0; a < m; ++a)
        for (int l = 0; l < m; ++l) J(a, l) = rows[a][l];
    return J;
}

Q form_in_chart(const StandardTile& t, const TileCoordinates& tc, const Matrix& Y, const std::vector<int>& pivots,
                FormMode mode) {
    return det(dlog_jacobian(t, tc, Y, pivots, mode));
}

Q canonical_form_value(const StandardTile& t, const TileCoordinates& tc, const Matrix& Y, const std::vector<int>& pivots,
                       FormMode mode) {
    int k = Y.rows;
    Matrix YP(k, k);
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) YP(r, c) = Y(r, pivots[c]);
    return form_in_chart(t, tc, Y, pivots, mode) * pow_int(det(YP), -(k + 4));
}

std::vector<std::vector<int>> nonsingular_charts(const Matrix& Y, int limit) {
    int k = Y.rows, w = Y.cols;
    std::vector<std::vector<int>> out;
    std::vector<bool> pick(w, false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
        std::vector<int> P;
        for (int c = 0; c < w; ++c)
            if (pick[c]) P.push_back(c);
        if (sgn(minor_cols(Y, P)) != 0) out.push_back(P);
        if (limit && int(out.size()) >= limit) break;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

// ---- spurion

std::vector<int> shift_window(const std::vector<int>& w, int s) {
    int n = int(w.size());
    std::vector<int> r(n);
    for (int j = 1; j <= n; ++j) {
        int i = j + s, v = w[j - 1] + s;
        int q = (i - 1 >= 0) ? (i - 1) / n : -((n - i) / n);
        i -= q * n;
        v -= q * n;
        r[i - 1] = v;
    }
    return r;
}

int average_displacement_times_n(const std::vector<int>& w) {
    int s = 0;
    for (int i = 1; i <= int(w.size()); ++i) s += w[i - 1] - i;
    return s;
}

SpurionData spurion() {
    SpurionData sp;
    sp.window = {2, 3, 7, 5, 6, 10, 8, 9, 13};
    sp.G = cell_from_decorated_permutation(sp.window);
    const char* as[9] = {"123|65|789", "123|64|789", "123|54|789", "789|23|456", "789|13|456",
                         "789|12|456", "456|89|123", "456|79|123", "456|78|123"};
    for (int i = 0; i < 9; ++i) {
        sp.names.push_back("a" + std::to_string(i + 1));
        sp.a.push_back(parse_chain(as[i]));
        sp.a_sign.push_back(i % 3 == 1 ? 1 : -1);
    }
    sp.s_names = {"s1", "s2", "s3"};
    sp.s = {parse_chain("1456"), parse_chain("1237"), parse_chain("4789")};
    return sp;
}

Configuration parse_configuration(const std::string& s) {
    Configuration c;
    std::set<int> cur;
    bool open = false;
    std::string num;
    auto flush = [&] {
        if (!num.empty()) cur.insert(std::stoi(num));
        num.clear();
    };
    for (char ch : s) {
        if (ch == '(') {
            if (open) throw std::invalid_argument("configuration: nested bracket");
            open = true;
            cur.clear();
        } else if (ch == ')') {
            if (!open) throw std::invalid_argument("configuration: unbalanced bracket");
            flush();
            c.insert(cur);
            open = false;
        } else if (ch == ',' || ch == ' ') {
            flush();
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            num += ch;
        } else {
            throw std::invalid_argument(std::string("configuration: unexpected character '") + ch + "'");
        }
    }
    if (open) throw std::invalid_argument("configuration: unbalanced bracket");
    return c;
}

Configuration column_configuration(const Matrix& C) {
    int n = C.cols;
    std::vector<int> cls(n, -1);
    Configuration out;
    for (int i = 0; i < n; ++i) {
        bool zero = true;
        for (int r = 0; r < C.rows; ++r) zero = zero && sgn(C(r, i)) == 0;
        if (zero || cls[i] >= 0) continue;
        std::set<int> s{i + 1};
        cls[i] = i;
        for (int j = i + 1; j < n; ++j) {
            if (cls[j] >= 0) continue;
            Matrix P(C.rows, 2);
            bool zj = true;
            for (int r = 0; r < C.rows; ++r) {
                P(r, 0) = C(r, i);
                P(r, 1) = C(r, j);
                zj = zj && sgn(C(r, j)) == 0;
            }
            if (!zj && rank(P) == 1) {
                cls[j] = i;
                s.insert(j + 1);
            }
        }
        out.insert(s);
    }
    return out;
}

std::string to_string(const Configuration& c) {
    std::string s;
    for (auto& g : c) {
        s += "(";
        bool first = true;
        for (int x : g) {
            if (!first) s += ",";
            s += std::to_string(x);
            first = false;
        }
        s += ")";
    }
    return s;
}

namespace {

int min_support_k2(const Matrix& C) {
    auto conf = column_configuration(C);
    int nonzero = 0, big = 0;
    for (auto& g : conf) {
        nonzero += int(g.size());
        big = std::max(big, int(g.size()));
    }
    int zeros = C.cols - nonzero;
    return C.cols - zeros - big;
}

std::vector<int> iota_markers(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    return v;
}

}  // namespace

bool SpurionReport::ok() const {
    return dimension == 8 && min_row_support >= 6 && configuration_ok == trials && sign_ok == trials;
}

SpurionReport verify_spurion(const Matrix& Z, int trials, Rng& rng) {
    auto sp = spurion();
    SpurionReport rep;
    rep.dimension = dimension(sp.G);
    rep.positive.assign(9, 0);
    rep.negative.assign(9, 0);
    rep.s_positive.assign(3, 0);
    rep.s_negative.assign(3, 0);
    rep.min_row_support = 1 << 20;
    auto T = matchings(sp.G);
    auto want = parse_configuration("(1,2,3)(4,5,6)(7,8,9)");
    for (int t = 0; t < trials; ++t) {
        ++rep.trials;
        Matrix C = sample_point(sp.G, T, random_weights(sp.G, rng));
        rep.min_row_support = std::min(rep.min_row_support, min_support_k2(C));
        rep.configuration_ok += column_configuration(C) == want;
        TwistorPoint P{amplituhedron_map(C, Z), Z, iota_markers(9)};
        Evaluator ev(P);
        bool good = true;
        for (int i = 0; i < 9; ++i) {
            int s = sgn(ev(sp.a[i]));
            (s > 0 ? rep.positive[i] : rep.negative[i]) += s != 0;
            good = good && s == sp.a_sign[i];
        }
        for (int i = 0; i < 3; ++i) {
            int s = sgn(ev(sp.s[i]));
            (s > 0 ? rep.s_positive[i] : rep.s_negative[i]) += s != 0;
        }
        rep.sign_ok += good;
    }
    return rep;
}

// ---- catalog

std::string default_catalog_path() {
    if (const char* e = std::getenv("AMPLITILE_DATA")) return std::string(e) + "/catalog.json";
    return std::string(AMPLITILE_DATA_DIR) + "/catalog.json";
}

TilingCatalog load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("catalog: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("catalog: ") + e.what());
    }
    TilingCatalog c;
    c.n = j.at("n");
    c.k = j.at("k");
    c.spurion = j.at("spurion");
    for (auto& r : j.at("tiles")) c.tiles.push_back({r.at("id"), r.at("window").get<std::vector<int>>(), r.at("config")});
    c.swap_out = j.at("swap_out").get<std::vector<int>>();
    int id = 1;
    for (auto& r : j.at("swap_in")) c.swap_in.push_back({id++, r.at("window").get<std::vector<int>>(), r.at("config")});
    for (auto* rows : {&c.tiles, &c.swap_in})
        for (auto& r : *rows)
            if (int(r.window.size()) != c.n) throw std::runtime_error("catalog: window of wrong length in row " + std::to_string(r.id));
    return c;
}

CatalogReport check_catalog(const TilingCatalog& cat, int trials, Rng& rng) {
    CatalogReport rep;
    auto check = [&](const CatalogRow& r, const std::string& tag) {
        ++rep.rows;
        std::string who = tag + std::to_string(r.id);
        if (average_displacement_times_n(r.window) == cat.k * cat.n) ++rep.displacement_ok;
        else rep.failures.push_back(who + ": average displacement");
        PlabicGraph G;
        try {
            G = cell_from_decorated_permutation(r.window);
        } catch (const std::exception& e) {
            rep.failures.push_back(who + ": " + e.what());
            return;
        }
        if (dimension(G) == 4 * cat.k) ++rep.dimension_ok;
        else rep.failures.push_back(who + ": dimension " + std::to_string(dimension(G)));
        auto T = matchings(G);
        auto want = parse_configuration(r.config);
        bool ok = true;
        for (int t = 0; t < trials && ok; ++t) {
            auto got = column_configuration(sample_point(G, T, random_weights(G, rng)));
            if (got != want) {
                ok = false;
                rep.failures.push_back(who + ": configuration " + to_string(got) + " vs " + r.config);
            }
        }
        rep.configuration_ok += ok;
    };
    for (auto& r : cat.tiles) check(r, "#");
    for (auto& r : cat.swap_in) check(r, "swap ");
    for (int id : cat.swap_out)
        if (std::none_of(cat.tiles.begin(), cat.tiles.end(), [&](const CatalogRow& r) { return r.id == id; }))
            rep.failures.push_back("swap_out id " + std::to_string(id) + " not in the table");
    if (std::find(cat.swap_out.begin(), cat.swap_out.end(), cat.spurion) == cat.swap_out.end())
        rep.failures.push_back("spurion not in the swap set");
    return rep;
}

TilingSignReport tiling_sign_checks(const TilingCatalog& cat, const Matrix& Z, int trials, Rng& rng) {
    TilingSignReport rep;
    auto sp = spurion();
    auto Tsp = matchings(sp.G);
    std::vector<StandardTile> tiles;
    std::vector<Seed> seeds, all_seeds;
    for (auto& D : enumerate_chord_diagrams(cat.n, cat.k)) {
        auto w = trip_permutation(cell_from_chord_diagram(D)).affine_window();
        for (auto& r : cat.tiles)
            if (r.id != cat.spurion && r.window == w) {
                rep.tested_ids.push_back(r.id);
                tiles.emplace_back(D, Z);
                seeds.push_back(build_tile_seed(tiles.back()));
            }
        all_seeds.push_back(build_tile_seed(StandardTile(D, Z)));
    }
    rep.standard_tiles = int(all_seeds.size());
    auto mk = iota_markers(cat.n);
    for (int t = 0; t < trials; ++t) {
        ++rep.trials;
        TwistorPoint P{amplituhedron_map(sample_point(sp.G, Tsp, random_weights(sp.G, rng)), Z), Z, mk};
        Evaluator ev(P);
        for (auto& a : sp.a) rep.a_vanishing += sgn(ev(a)) == 0;
        for (int i = 1; i <= cat.n; ++i)
            for (int j = i + 2; j <= cat.n; ++j) {
                int i1 = i % cat.n + 1, j1 = j % cat.n + 1;
                if (j1 == i) continue;
                auto [s, sg] = normalize_symbol({i, i1, j, j1});
                rep.boundary_vanishing += sgn(ev(s)) == 0;
            }
        for (auto& S : seeds) rep.spurion_in_other += positivity_test(P, S);
        int hits = 0;
        for (auto& S : all_seeds) hits += positivity_test(P, S);
        rep.standard_tiling_single += hits == 1;
        for (auto& tile : tiles) {
            auto Q2 = tile.sample(rng);
            Evaluator e2(Q2);
            bool all = true;
            for (int i = 0; i < 9 && all; ++i) all = sgn(e2(sp.a[i])) == sp.a_sign[i];
            rep.other_in_spurion += all;
        }
    }
    return rep;
}

nlohmann::json to_json(const SpurionReport& r) {
    return {{"trials", r.trials},
            {"dimension", r.dimension},
            {"min_row_support", r.min_row_support},
            {"configuration_ok", r.configuration_ok},
            {"a_positive", r.positive},
            {"a_negative", r.negative},
            {"s_positive", r.s_positive},
            {"s_negative", r.s_negative},
            {"sign_ok", r.sign_ok},
            {"ok", r.ok()}};
}

nlohmann::json to_json(const CatalogReport& r) {
    return {{"rows", r.rows},
            {"dimension_ok", r.dimension_ok},
            {"displacement_ok", r.displacement_ok},
            {"configuration_ok", r.configuration_ok},
            {"failures", r.failures},
            {"ok", r.ok()}};
}

nlohmann::json to_json(const TilingSignReport& r) {
    return {{"tested_ids", r.tested_ids},
            {"trials", r.trials},
            {"spurion_in_other", r.spurion_in_other},
            {"other_in_spurion", r.other_in_spurion},
            {"a_vanishing", r.a_vanishing},
            {"boundary_vanishing", r.boundary_vanishing},
            {"standard_tiles", r.standard_tiles},
            {"standard_tiling_single", r.standard_tiling_single},
            {"ok", r.ok()}};
}

}  // namespace amplitile
