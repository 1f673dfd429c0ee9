#pragma once
#include <string>
#include <vector>

#include <json.hpp>

#include "amplitile/chords.hpp"
#include "amplitile/plabic.hpp"
#include "amplitile/promote.hpp"

namespace amplitile {

struct FacetDescriptor {
    int step = 0;    // chord / step label
    int letter = 0;  // 0..4 = alpha..eps
    std::string edge;
    PlabicGraph graph;
    Poly cutting;          // numerator of the cutting variable
    std::string variable;  // e.g. "alpha1"
    bool rigid = true;
};

// facet graphs of a standard tile, one per AFacet variable
std::vector<FacetDescriptor> standard_facets(const ChordDiagram& D);

// chord-diagram predictions of reducedness for deleting the designated edge of `letter` at chord i
// (alpha is only a sufficient condition)
bool predicted_reduced(const ChordDiagram& D, int i, int letter);

bool condensable(const RecipePtr& r, int i, int letter);

struct Condensation {
    int step = 0;
    int letter = 0;
    std::string edge;
    PlabicGraph graph;
    bool rigid = false;
    int witness = 0;  // first step l > i where coindependence fails, 0 if rigid
};
Condensation condense(const RecipePtr& r, int i, int letter);

// all rigid condensations of condensable letters, with the coordinate functionary as cutting variable
std::vector<FacetDescriptor> recipe_facets(const RecipePtr& r);

struct FacetReport {
    int trials = 0;
    int zero = 0;         // cutting numerator exactly 0, denominator nonzero
    int others_kept = 0;  // remaining four coordinate functionaries of the step nonzero with interior signs
    std::vector<std::string> notes;
    bool ok() const { return zero == trials && others_kept == trials; }
};
FacetReport verify_facet(const RecipePtr& r, const FacetDescriptor& fd, const Matrix& Z, int trials, Rng& rng);

nlohmann::json to_json(const FacetDescriptor& fd);
nlohmann::json to_json(const FacetReport& rep);

}  // namespace amplitile
