#pragma once
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "amplitile/chords.hpp"
#include "amplitile/linalg.hpp"

namespace amplitile {

using Sym = std::array<int, 4>;  // strictly increasing
using Monomial = std::vector<Sym>;  // sorted multiset
using Poly = std::map<Monomial, Q>;

// sorted symbol and permutation sign; sign 0 on a repeated index
std::pair<Sym, int> normalize_symbol(std::array<int, 4> idx);
Poly constant(const Q& c);
Poly symbol(int i, int j, int k, int l);
Poly symbol(const std::vector<int>& idx);
Poly add(const Poly& p, const Poly& q, const Q& s = 1);
Poly mul(const Poly& p, const Poly& q);
Poly scale(const Poly& p, const Q& s);
bool is_constant(const Poly& p);
int degree(const Poly& p);  // -1 for zero; throws if inhomogeneous
std::optional<Poly> divide_by_symbol(const Poly& p, const Sym& t);  // exact in the free ring
Poly relabel(const Poly& p, const std::map<int, int>& f);

// <h0 h1 h2 | l1 | m1 | l2 | ... | ls | t0 t1 t2>, mids.size() == links.size() - 1
struct ChainSpec {
    std::array<int, 3> head{};
    std::vector<std::array<int, 2>> links;
    std::vector<std::array<int, 2>> mids;
    std::array<int, 3> tail{};
};
Poly chain_polynomial(const ChainSpec& c);
// "F89|21|34|56|89F": hex digits per marker, or comma-separated integers per segment; "3456" is a bare symbol
Poly parse_chain(const std::string& s);
std::string marker_char(int m);
std::string to_string(const Sym& s);
std::string to_string(const Poly& p);

enum class Side { L, R };
using Butterfly = std::array<int, 5>;

// Psi(p) = scalar * stripped * prod t^e over t in T'
struct Promotion {
    Poly numerator;          // multilinear substitution numerator, rewritten
    Poly stripped;           // numerator with T' factors divided out
    std::map<Sym, int> tprime;  // net exponents (stripped factors minus substitution denominators)
};
std::vector<Sym> tprime_set(const Butterfly& B);  // abcn, abcd, bcdn, acdn
Promotion promote(const Poly& p, const Butterfly& B, Side side);
Poly rescaled_promote(const Poly& p, const Butterfly& B, Side side);

// sign * prod factor^exp; factors normalized with leading coefficient 1
struct Functionary {
    Q coeff = 1;
    std::map<Poly, int> factors;
    static Functionary of(const Poly& p);
    Functionary& operator*=(const Functionary& o);
    Functionary pow(int e) const;
    Poly numerator() const;
    Poly denominator() const;
    int degree() const;
};
// f + g over a common denominator; symbol factors of the denominator that divide the sum are cancelled
Functionary sum(const Functionary& f, const Functionary& g);
Functionary promote(const Functionary& f, const Butterfly& B, Side side);
Functionary relabel(const Functionary& f, const std::map<int, int>& m);
std::string to_string(const Functionary& f);

// per step label (index 0 unused): five polynomials alpha..epsilon
using DominoTable = std::vector<std::array<Poly, 5>>;
using FunctionaryTable = std::vector<std::array<Functionary, 5>>;
DominoTable coordinate_cluster_variables(const RecipePtr& r);
FunctionaryTable coordinate_functionaries(const RecipePtr& r);

// evaluation on a twistor point; symbols as twistor coordinates with marker m -> row m-1 of Z
struct TwistorPoint {
    Matrix Y, Z;
    std::vector<int> markers;  // marker of each Z row
};
class Evaluator {
public:
    explicit Evaluator(const TwistorPoint& p) : p_(p) {}
    Q operator()(const Sym& s);
    Q operator()(const Poly& p);
    Q operator()(const Functionary& f);  // throws on vanishing denominator

private:
    const TwistorPoint& p_;
    std::map<Sym, Q> cache_;
};
// evaluation where each symbol is a 4x4 minor of a 4 x n matrix (random Gr(4,n) points for identity testing)
Q evaluate_on_matrix(const Poly& p, const Matrix& M4, const std::vector<int>& markers);
Q evaluate_on_matrix(const Functionary& f, const Matrix& M4, const std::vector<int>& markers);

nlohmann::json to_json(const Poly& p);
Poly poly_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Functionary& f);

}  // namespace amplitile
