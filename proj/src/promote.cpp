#include "amplitile/promote.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace amplitile {

std::pair<Sym, int> normalize_symbol(std::array<int, 4> idx) {
    int s = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j + 1 < 4 - i; ++j)
            if (idx[j] > idx[j + 1]) {
                std::swap(idx[j], idx[j + 1]);
                s = -s;
            }
    for (int i = 0; i + 1 < 4; ++i)
        if (idx[i] == idx[i + 1]) return {idx, 0};
    return {idx, s};
}

Poly constant(const Q& c) {
    Poly p;
    if (sgn(c) != 0) p[{}] = c;
    return p;
}

Poly symbol(int i, int j, int k, int l) {
    auto [s, sg] = normalize_symbol({i, j, k, l});
    Poly p;
    if (sg != 0) p[{s}] = sg;
    return p;
}

Poly symbol(const std::vector<int>& idx) {
    if (idx.size() != 4) throw std::invalid_argument("symbol: need 4 indices");
    return symbol(idx[0], idx[1], idx[2], idx[3]);
}

Poly add(const Poly& p, const Poly& q, const Q& s) {
    Poly r = p;
    for (auto& [m, c] : q) {
        auto& x = r[m];
        x += s * c;
        if (sgn(x) == 0) r.erase(m);
    }
    return r;
}

Poly mul(const Poly& p, const Poly& q) {
    Poly r;
    for (auto& [m1, c1] : p)
        for (auto& [m2, c2] : q) {
            Monomial m;
            m.reserve(m1.size() + m2.size());
            std::merge(m1.begin(), m1.end(), m2.begin(), m2.end(), std::back_inserter(m));
            auto& x = r[m];
            x += c1 * c2;
            if (sgn(x) == 0) r.erase(m);
        }
    return r;
}

Poly scale(const Poly& p, const Q& s) {
    if (sgn(s) == 0) return {};
    Poly r = p;
    for (auto& [m, c] : r) c *= s;
    return r;
}

bool is_constant(const Poly& p) { return p.empty() || (p.size() == 1 && p.begin()->first.empty()); }

int degree(const Poly& p) {
    if (p.empty()) return -1;
    int d = int(p.begin()->first.size());
    for (auto& [m, c] : p)
        if (int(m.size()) != d) throw std::invalid_argument("degree: inhomogeneous polynomial");
    return d;
}

std::optional<Poly> divide_by_symbol(const Poly& p, const Sym& t) {
    Poly r;
    for (auto& [m, c] : p) {
        auto it = std::find(m.begin(), m.end(), t);
        if (it == m.end()) return std::nullopt;
        Monomial m2 = m;
        m2.erase(m2.begin() + (it - m.begin()));
        r[m2] = c;
    }
    return r;
}

Poly relabel(const Poly& p, const std::map<int, int>& f) {
    auto g = [&](int x) {
        auto it = f.find(x);
        return it == f.end() ? x : it->second;
    };
    Poly r;
    for (auto& [m, c] : p) {
        Poly q = constant(c);
        for (auto& s : m) q = mul(q, symbol(g(s[0]), g(s[1]), g(s[2]), g(s[3])));
        r = add(r, q);
    }
    return r;
}

Poly chain_polynomial(const ChainSpec& c) {
    size_t s = c.links.size();
    if (s == 0) throw std::invalid_argument("chain: need at least one link");
    if (c.mids.size() + 1 != s) throw std::invalid_argument("chain: mids must be one fewer than links");
    Poly r;
    for (uint64_t t = 0; t < (uint64_t(1) << s); ++t) {
        auto bit = [&](size_t j) { return int(t >> j & 1); };
        int sign = __builtin_popcountll(t) % 2 ? -1 : 1;
        Poly p = symbol(c.head[0], c.head[1], c.head[2], c.links[0][bit(0)]);
        for (size_t j = 1; j < s; ++j)
            p = mul(p, symbol(c.links[j - 1][1 - bit(j - 1)], c.mids[j - 1][0], c.mids[j - 1][1], c.links[j][bit(j)]));
        p = mul(p, symbol(c.links[s - 1][1 - bit(s - 1)], c.tail[0], c.tail[1], c.tail[2]));
        r = add(r, p, sign);
    }
    return r;
}

static std::vector<int> parse_segment(const std::string& seg) {
    std::vector<int> out;
    if (seg.find(',') != std::string::npos || seg.find(' ') != std::string::npos) {
        std::stringstream ss(seg);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            std::stringstream t2(tok);
            std::string x;
            while (t2 >> x) out.push_back(std::stoi(x));
        }
        return out;
    }
    for (char ch : seg) {
        if (ch >= '0' && ch <= '9') out.push_back(ch - '0');
        else if (ch >= 'A' && ch <= 'Z') out.push_back(ch - 'A' + 10);
        else if (ch >= 'a' && ch <= 'z') out.push_back(ch - 'a' + 10);
        else throw std::invalid_argument(std::string("parse_chain: bad marker '") + ch + "'");
    }
    return out;
}

Poly parse_chain(const std::string& s) {
    std::vector<std::vector<int>> segs;
    std::stringstream ss(s);
    std::string seg;
    while (std::getline(ss, seg, '|')) segs.push_back(parse_segment(seg));
    if (segs.size() == 1) return symbol(segs[0]);
    if (segs.size() < 3 || segs.size() % 2 == 0) throw std::invalid_argument("parse_chain: malformed chain " + s);
    ChainSpec c;
    if (segs.front().size() != 3 || segs.back().size() != 3) throw std::invalid_argument("parse_chain: ends need 3 markers");
    std::copy(segs.front().begin(), segs.front().end(), c.head.begin());
    std::copy(segs.back().begin(), segs.back().end(), c.tail.begin());
    for (size_t i = 1; i + 1 < segs.size(); ++i) {
        if (segs[i].size() != 2) throw std::invalid_argument("parse_chain: inner segments need 2 markers");
        std::array<int, 2> pr{segs[i][0], segs[i][1]};
        (i % 2 ? c.links : c.mids).push_back(pr);
    }
    return chain_polynomial(c);
}

std::string marker_char(int m) {
    if (m >= 0 && m < 10) return std::string(1, char('0' + m));
    if (m >= 10 && m < 36) return std::string(1, char('A' + m - 10));
    return "{" + std::to_string(m) + "}";
}

std::string to_string(const Sym& s) {
    std::string r = "<";
    for (int x : s) r += marker_char(x);
    return r + ">";
}

std::string to_string(const Poly& p) {
    if (p.empty()) return "0";
    std::string r;
    bool first = true;
    for (auto& [m, c] : p) {
        Q a = abs(c);
        r += sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + ");
        if (a != 1 || m.empty()) r += a.get_str() + (m.empty() ? "" : "*");
        for (auto& s : m) r += to_string(s);
        first = false;
    }
    return r;
}

// ---- promotion

namespace {

struct Slot {
    bool vec = false;
    int idx = 0;
    int i = 0, j = 0;
    std::array<int, 3> plane{};
};

int perm_sign(const std::vector<int>& seq, const std::vector<int>& target) {
    std::vector<int> perm;
    for (int p : seq) perm.push_back(int(std::find(target.begin(), target.end(), p) - target.begin()));
    int s = 1;
    for (size_t a = 0; a < perm.size(); ++a)
        for (size_t b = a + 1; b < perm.size(); ++b)
            if (perm[a] > perm[b]) s = -s;
    return s;
}

Poly slots_symbol(const std::vector<Slot>& sl) { return symbol(sl[0].idx, sl[1].idx, sl[2].idx, sl[3].idx); }

// <.. (ij)∩(plane) ..> with the 2-into-3 intersection vector v_i<j plane> - v_j<i plane>
Poly bracket(std::vector<Slot> sl) {
    int k = -1, nv = 0;
    for (int t = 0; t < 4; ++t)
        if (sl[t].vec) {
            if (k < 0) k = t;
            ++nv;
        }
    if (k < 0) return slots_symbol(sl);
    Slot V = sl[k];
    if (nv == 1) {
        std::vector<int> others;
        for (int t = 0; t < 4; ++t)
            if (t != k) others.push_back(sl[t].idx);
        auto has = [&](int x) { return std::find(others.begin(), others.end(), x) != others.end(); };
        std::vector<int> inter;
        for (int p : V.plane)
            if (has(p)) inter.push_back(p);
        if (inter.size() == 3) return {};
        if (inter.size() == 2 && !has(V.i) && !has(V.j)) {
            int w = 0;
            for (int p : V.plane)
                if (!has(p)) w = p;
            std::sort(inter.begin(), inter.end());
            int y = inter[0], z = inter[1];
            auto left = sl;
            left[k] = Slot{false, w};
            int sg = perm_sign({V.plane[0], V.plane[1], V.plane[2]}, {y, z, w});
            return scale(mul(slots_symbol(left), symbol(V.i, V.j, y, z)), -sg);
        }
    }
    auto a = sl, b = sl;
    a[k] = Slot{false, V.i};
    b[k] = Slot{false, V.j};
    return add(mul(bracket(a), symbol(V.j, V.plane[0], V.plane[1], V.plane[2])),
               mul(bracket(b), symbol(V.i, V.plane[0], V.plane[1], V.plane[2])), -1);
}

}  // namespace

std::vector<Sym> tprime_set(const Butterfly& B) {
    auto [a, b, c, d, n] = B;
    std::vector<Sym> r;
    for (auto idx : {std::array<int, 4>{a, b, c, n}, {a, b, c, d}, {b, c, d, n}, {a, c, d, n}}) r.push_back(normalize_symbol(idx).first);
    return r;
}

Promotion promote(const Poly& p, const Butterfly& B, Side side) {
    auto [a, b, c, d, n] = B;
    auto vec_of = [&](int x, Slot& s) {
        if (side == Side::L && x == b) s = Slot{true, 0, b, a, {c, d, n}};
        else if (side == Side::R && x == n) s = Slot{true, 0, b, a, {c, d, n}};
        else if (side == Side::R && x == d) s = Slot{true, 0, d, c, {a, b, n}};
        else s = Slot{false, x};
    };
    auto [t_abcn, t_abcd, t_bcdn, t_acdn] = std::array<Sym, 4>{tprime_set(B)[0], tprime_set(B)[1], tprime_set(B)[2], tprime_set(B)[3]};
    Promotion out;
    std::map<Sym, int> den;
    bool first = true;
    for (auto& [m, cf] : p) {
        std::map<Sym, int> dm;
        Poly q = constant(cf);
        for (auto& t : m) {
            bool hd = std::find(t.begin(), t.end(), d) != t.end(), hn = std::find(t.begin(), t.end(), n) != t.end();
            bool hb = std::find(t.begin(), t.end(), b) != t.end();
            if (side == Side::L && hb) dm[t_acdn]++;
            if (side == Side::R && hn) dm[t_abcd]++;
            if (side == Side::R && hd) dm[t_abcn]++;
            if (side == Side::R && hd && hn) {
                std::vector<int> xy;
                for (int u : t)
                    if (u != d && u != n) xy.push_back(u);
                int sg = perm_sign({t[0], t[1], t[2], t[3]}, {xy[0], xy[1], d, n});
                ChainSpec ch;
                ch.head = {n, a, b};
                ch.links = {{xy[0], xy[1]}};
                ch.tail = {c, d, n};
                q = mul(q, scale(mul(symbol(a, b, c, d), chain_polynomial(ch)), sg));
                continue;
            }
            std::vector<Slot> sl(4);
            for (int u = 0; u < 4; ++u) vec_of(t[u], sl[u]);
            q = mul(q, bracket(sl));
        }
        if (first) den = dm, first = false;
        else if (dm != den) throw std::invalid_argument("promote: polynomial not homogeneous in the substituted markers");
        out.numerator = add(out.numerator, q);
    }
    Poly q = out.numerator;
    std::map<Sym, int> strip;
    bool changed = !q.empty();
    while (changed) {
        changed = false;
        for (auto& t : {t_abcn, t_abcd, t_bcdn, t_acdn}) {
            auto r = divide_by_symbol(q, t);
            if (r && !r->empty()) {
                q = *r;
                strip[t]++;
                changed = true;
            }
        }
    }
    out.stripped = q;
    for (auto& [t, e] : strip) out.tprime[t] += e;
    for (auto& [t, e] : den) out.tprime[t] -= e;
    for (auto it = out.tprime.begin(); it != out.tprime.end();)
        it = it->second == 0 ? out.tprime.erase(it) : std::next(it);
    return out;
}

Poly rescaled_promote(const Poly& p, const Butterfly& B, Side side) {
    Promotion pr = promote(p, B, side);
    if (!is_constant(pr.stripped) || pr.stripped.empty()) return pr.stripped;
    // Psi(x) is a Laurent monomial in T': keep the symbol left after cancelling the substitution denominators
    if (pr.numerator.size() != 1) throw std::logic_error("rescaled_promote: constant after stripping a non-monomial");
    Monomial mono = pr.numerator.begin()->first;
    Q cf = pr.numerator.begin()->second;
    auto [a, b, c, d, n] = B;
    auto T = tprime_set(B);
    for (auto& t : p.begin()->first) {
        auto drop = [&](const Sym& s) {
            auto it = std::find(mono.begin(), mono.end(), s);
            if (it == mono.end()) throw std::logic_error("rescaled_promote: denominator symbol not in numerator");
            mono.erase(it);
        };
        bool hb = std::find(t.begin(), t.end(), b) != t.end(), hd = std::find(t.begin(), t.end(), d) != t.end(),
             hn = std::find(t.begin(), t.end(), n) != t.end();
        if (side == Side::L && hb) drop(T[3]);
        if (side == Side::R && hn) drop(T[1]);
        if (side == Side::R && hd) drop(T[0]);
    }
    Poly r;
    r[mono] = cf;
    return r;
}

// ---- functionaries

Functionary Functionary::of(const Poly& p) {
    Functionary f;
    if (p.empty()) {
        f.coeff = 0;
        return f;
    }
    if (is_constant(p)) {
        f.coeff = p.begin()->second;
        return f;
    }
    // pull out symbols common to every monomial so monomial factors cancel cleanly
    Poly rest = p;
    Monomial probe = p.begin()->first;
    for (auto& s : probe) {
        auto r = divide_by_symbol(rest, s);
        if (!r) continue;
        rest = *r;
        f.factors[symbol(s[0], s[1], s[2], s[3])] += 1;
    }
    Q lead = rest.begin()->second;
    f.coeff = lead;
    if (!is_constant(rest)) f.factors[scale(rest, 1 / lead)] += 1;
    return f;
}

Functionary& Functionary::operator*=(const Functionary& o) {
    coeff *= o.coeff;
    for (auto& [p, e] : o.factors) {
        int& x = factors[p];
        x += e;
        if (x == 0) factors.erase(p);
    }
    return *this;
}

Functionary Functionary::pow(int e) const {
    Functionary r;
    if (sgn(coeff) == 0 && e < 0) throw std::domain_error("Functionary::pow: zero to negative power");
    Q c = 1;
    for (int i = 0; i < std::abs(e); ++i) c *= coeff;
    r.coeff = e >= 0 ? c : 1 / c;
    for (auto& [p, x] : factors) r.factors[p] = x * e;
    if (e == 0) r.factors.clear();
    return r;
}

Poly Functionary::numerator() const {
    Poly r = constant(coeff);
    for (auto& [p, e] : factors)
        for (int i = 0; i < e; ++i) r = mul(r, p);
    return r;
}

Poly Functionary::denominator() const {
    Poly r = constant(1);
    for (auto& [p, e] : factors)
        for (int i = 0; i < -e; ++i) r = mul(r, p);
    return r;
}

int Functionary::degree() const {
    int d = 0;
    for (auto& [p, e] : factors) d += e * amplitile::degree(p);
    return d;
}

Functionary sum(const Functionary& f, const Functionary& g) {
    if (sgn(f.coeff) == 0) return g;
    if (sgn(g.coeff) == 0) return f;
    std::map<Poly, int> den;
    for (auto* h : {&f, &g})
        for (auto& [p, e] : h->factors)
            if (e < 0) den[p] = std::max(den[p], -e);
    auto lift = [&](const Functionary& h) {
        Poly r = constant(h.coeff);
        for (auto& [p, e] : h.factors)
            for (int i = 0; i < e; ++i) r = mul(r, p);
        for (auto& [p, d] : den) {
            auto it = h.factors.find(p);
            int own = it == h.factors.end() ? 0 : std::max(0, -it->second);
            for (int i = 0; i < d - own; ++i) r = mul(r, p);
        }
        return r;
    };
    Poly num = add(lift(f), lift(g));
    for (auto& [p, d] : den) {
        if (p.size() != 1 || p.begin()->first.size() != 1) continue;
        const Sym& s = p.begin()->first[0];
        while (d > 0) {
            auto q = divide_by_symbol(num, s);
            if (!q) break;
            num = *q;
            --d;
        }
    }
    Functionary r = Functionary::of(num);
    for (auto& [p, d] : den)
        if (d > 0) r *= Functionary::of(p).pow(-d);
    return r;
}

Functionary promote(const Functionary& f, const Butterfly& B, Side side) {
    Functionary r;
    r.coeff = f.coeff;
    for (auto& [p, e] : f.factors) {
        Promotion pr = promote(p, B, side);
        Functionary piece = Functionary::of(pr.stripped);
        for (auto& [t, x] : pr.tprime) piece *= Functionary::of(symbol(t[0], t[1], t[2], t[3])).pow(x);
        r *= piece.pow(e);
    }
    return r;
}

Functionary relabel(const Functionary& f, const std::map<int, int>& m) {
    Functionary r;
    r.coeff = f.coeff;
    for (auto& [p, e] : f.factors) r *= Functionary::of(relabel(p, m)).pow(e);
    return r;
}

std::string to_string(const Functionary& f) {
    std::string num, den;
    for (auto& [p, e] : f.factors) {
        std::string s = "(" + to_string(p) + ")";
        if (std::abs(e) != 1) s += "^" + std::to_string(std::abs(e));
        (e > 0 ? num : den) += s;
    }
    std::string r = f.coeff == 1 && !num.empty() ? "" : f.coeff == -1 && !num.empty() ? "-" : f.coeff.get_str() + (num.empty() ? "" : "*");
    r += num;
    if (!den.empty()) r += " / " + den;
    return r;
}

// ---- recursion over recipes

namespace {

std::map<int, int> cyc_map(const std::vector<int>& N, int times) {
    std::map<int, int> f;
    for (int x : N) f[x] = cyc_index(N, x, times);
    return f;
}

std::map<int, int> refl_map(const std::vector<int>& N) {
    std::map<int, int> f;
    for (int x : N) f[x] = refl_index(N, x);
    return f;
}

template <class T, class Promote, class Relabel, class Make>
void recurse(const RecipePtr& r, std::vector<std::array<T, 5>>& out, Promote prom, Relabel rel, Make make,
             std::vector<int>& labels) {
    if (r->trivial()) return;
    std::vector<int> ll, rl;
    recurse<T>(r->left, out, prom, rel, make, ll);
    recurse<T>(r->right, out, prom, rel, make, rl);
    const auto& B = r->step.B;
    for (int l : ll)
        for (auto& x : out[l]) x = prom(x, B, Side::L);
    for (int l : rl)
        for (auto& x : out[l]) x = prom(x, B, Side::R);
    auto [a, b, c, d, n] = B;
    out[r->label] = {make(b, c, d, n), make(a, c, d, n), make(a, b, d, n), make(a, b, c, n), make(a, b, c, d)};
    labels = ll;
    labels.insert(labels.end(), rl.begin(), rl.end());
    labels.push_back(r->label);
    if (r->step.cyc) {
        auto f = cyc_map(r->markers, r->step.cyc);
        for (int l : labels)
            for (auto& x : out[l]) x = rel(x, f);
    }
    if (r->step.refl % 2) {
        auto f = refl_map(r->markers);
        for (int l : labels)
            for (auto& x : out[l]) x = rel(x, f);
    }
}

}  // namespace

DominoTable coordinate_cluster_variables(const RecipePtr& r) {
    DominoTable out(num_steps(r) + 1);
    std::vector<int> labels;
    recurse<Poly>(
        r, out, [](const Poly& p, const Butterfly& B, Side s) { return rescaled_promote(p, B, s); },
        [](const Poly& p, const std::map<int, int>& f) { return relabel(p, f); },
        [](int i, int j, int k, int l) { return symbol(i, j, k, l); }, labels);
    return out;
}

FunctionaryTable coordinate_functionaries(const RecipePtr& r) {
    FunctionaryTable out(num_steps(r) + 1);
    std::vector<int> labels;
    recurse<Functionary>(
        r, out, [](const Functionary& f, const Butterfly& B, Side s) { return promote(f, B, s); },
        [](const Functionary& f, const std::map<int, int>& m) { return relabel(f, m); },
        [](int i, int j, int k, int l) { return Functionary::of(symbol(i, j, k, l)); }, labels);
    return out;
}

// ---- evaluation

Q Evaluator::operator()(const Sym& s) {
    auto it = cache_.find(s);
    if (it != cache_.end()) return it->second;
    std::vector<int> rows;
    for (int m : s) {
        auto pos = std::find(p_.markers.begin(), p_.markers.end(), m);
        if (pos == p_.markers.end()) throw std::out_of_range("evaluate: marker " + std::to_string(m) + " not in Z");
        rows.push_back(int(pos - p_.markers.begin()));
    }
    Q v = twistor(p_.Y, p_.Z, rows);
    cache_.emplace(s, v);
    return v;
}

Q Evaluator::operator()(const Poly& p) {
    Q r = 0;
    for (auto& [m, c] : p) {
        Q t = c;
        for (auto& s : m) t *= (*this)(s);
        r += t;
    }
    return r;
}

Q Evaluator::operator()(const Functionary& f) {
    Q r = f.coeff;
    for (auto& [p, e] : f.factors) {
        Q v = (*this)(p);
        if (sgn(v) == 0) {
            if (e < 0) throw std::domain_error("evaluate: denominator vanishes");
            return 0;
        }
        for (int i = 0; i < std::abs(e); ++i) {
            if (e > 0) r *= v;
            else r /= v;
        }
    }
    return r;
}

static Q minor4(const Matrix& M, const std::vector<int>& markers, const Sym& s) {
    std::vector<int> cols;
    for (int m : s) cols.push_back(int(std::find(markers.begin(), markers.end(), m) - markers.begin()));
    return minor_cols(M, cols);
}

Q evaluate_on_matrix(const Poly& p, const Matrix& M4, const std::vector<int>& markers) {
    std::map<Sym, Q> cache;
    Q r = 0;
    for (auto& [m, c] : p) {
        Q t = c;
        for (auto& s : m) {
            auto it = cache.find(s);
            if (it == cache.end()) it = cache.emplace(s, minor4(M4, markers, s)).first;
            t *= it->second;
        }
        r += t;
    }
    return r;
}

Q evaluate_on_matrix(const Functionary& f, const Matrix& M4, const std::vector<int>& markers) {
    Q r = f.coeff;
    for (auto& [p, e] : f.factors) {
        Q v = evaluate_on_matrix(p, M4, markers);
        if (sgn(v) == 0) {
            if (e < 0) throw std::domain_error("evaluate: denominator vanishes");
            return 0;
        }
        for (int i = 0; i < std::abs(e); ++i) {
            if (e > 0) r *= v;
            else r /= v;
        }
    }
    return r;
}

nlohmann::json to_json(const Poly& p) {
    auto j = nlohmann::json::array();
    for (auto& [m, c] : p) {
        auto syms = nlohmann::json::array();
        for (auto& s : m) syms.push_back(std::vector<int>(s.begin(), s.end()));
        j.push_back({{"coeff", c.get_str()}, {"symbols", syms}});
    }
    return j;
}

Poly poly_from_json(const nlohmann::json& j) {
    Poly r;
    for (auto& t : j) {
        Poly q = constant(Q(t.at("coeff").get<std::string>()));
        for (auto& s : t.at("symbols")) q = mul(q, symbol(s.get<std::vector<int>>()));
        r = add(r, q);
    }
    return r;
}

nlohmann::json to_json(const Functionary& f) {
    nlohmann::json j;
    j["coeff"] = f.coeff.get_str();
    j["numerator"] = to_json(f.numerator());
    j["denominator"] = to_json(f.denominator());
    j["text"] = to_string(f);
    return j;
}

}  // namespace amplitile
