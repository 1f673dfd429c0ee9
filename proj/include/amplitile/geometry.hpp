#pragma once
#include <array>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "amplitile/cluster.hpp"

namespace amplitile {

// toy polygon forms in the affine chart (1, x, y); vertices counterclockwise
using Point2 = std::array<Q, 2>;
Q triangle_form(const Point2& v1, const Point2& v2, const Point2& v3, const Q& x, const Q& y);
Q polygon_form(const std::vector<Point2>& v, const Q& x, const Q& y);  // fan from v[0]

enum class FormMode { Coord, Tile };

// chart Y = Y_P^{-1} Y with identity on `pivots` (k distinct column positions of Y)
// rows of the result: d log u_j over the 4k free entries, row-major over (row, non-pivot column)
Matrix dlog_jacobian(const StandardTile& t, const TileCoordinates& tc, const Matrix& Y, const std::vector<int>& pivots,
                     FormMode mode);
// coefficient of the form on d^{4k}x in the chart
Q form_in_chart(const StandardTile& t, const TileCoordinates& tc, const Matrix& Y, const std::vector<int>& pivots,
                FormMode mode);
// form_in_chart * det(Y_P)^{-(k+4)}: independent of the chart for the fixed representative Y
Q canonical_form_value(const StandardTile& t, const TileCoordinates& tc, const Matrix& Y, const std::vector<int>& pivots,
                       FormMode mode);
std::vector<std::vector<int>> nonsingular_charts(const Matrix& Y, int limit = 0);

// ---- spurion

std::vector<int> shift_window(const std::vector<int>& w, int s);  // cyclic relabelling i -> i+s
int average_displacement_times_n(const std::vector<int>& w);

struct SpurionData {
    std::vector<int> window;  // cell whose columns are (123)(456)(789)
    PlabicGraph G;
    std::vector<std::string> names;  // a1..a9
    std::vector<Poly> a;
    std::vector<int> a_sign;          // +1 for a2, a5, a8
    std::vector<std::string> s_names;
    std::vector<Poly> s;
};
SpurionData spurion();

using Configuration = std::set<std::set<int>>;
Configuration parse_configuration(const std::string& s);
// proportional classes of nonzero columns, 1-based
Configuration column_configuration(const Matrix& C);
std::string to_string(const Configuration& c);

struct SpurionReport {
    int trials = 0;
    int dimension = 0;
    int min_row_support = 0;  // over the whole row space (k = 2: n minus the largest rank-one column set)
    int configuration_ok = 0;  // per sample
    std::vector<int> positive, negative;  // per a_i
    std::vector<int> s_positive, s_negative;
    int sign_ok = 0;  // samples matching the expected sign vector
    bool ok() const;
};
SpurionReport verify_spurion(const Matrix& Z, int trials, Rng& rng);

// ---- catalog

struct CatalogRow {
    int id = 0;
    std::vector<int> window;
    std::string config;
};
struct TilingCatalog {
    int n = 9, k = 2, spurion = 28;
    std::vector<CatalogRow> tiles;
    std::vector<int> swap_out;
    std::vector<CatalogRow> swap_in;
};
std::string default_catalog_path();
TilingCatalog load_catalog(const std::string& path = default_catalog_path());

struct CatalogReport {
    int rows = 0, dimension_ok = 0, displacement_ok = 0, configuration_ok = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};
CatalogReport check_catalog(const TilingCatalog& cat, int trials, Rng& rng);

struct TilingSignReport {
    std::vector<int> tested_ids;  // catalog rows matched to standard tiles
    int trials = 0;
    int spurion_in_other = 0;  // spurion samples passing another tile's sign description
    int other_in_spurion = 0;  // other tiles' samples with the spurion sign vector
    int a_vanishing = 0;
    int boundary_vanishing = 0;  // boundary twistors vanishing at spurion samples
    // control: the standard tiles tile the whole space, so each spurion sample lies in exactly one of them
    int standard_tiles = 0;
    int standard_tiling_single = 0;
    bool ok() const {
        return spurion_in_other == 0 && other_in_spurion == 0 && a_vanishing == 0 && boundary_vanishing == 0 &&
               standard_tiling_single == trials;
    }
};
TilingSignReport tiling_sign_checks(const TilingCatalog& cat, const Matrix& Z, int trials, Rng& rng);

nlohmann::json to_json(const SpurionReport& r);
nlohmann::json to_json(const CatalogReport& r);
nlohmann::json to_json(const TilingSignReport& r);

}  // namespace amplitile
