#pragma once

#include "knotgate/presentation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace knotgate {

/// One crossing X(a,b,c,d;s): a = incoming under-strand arc, c = outgoing
/// under-strand arc, b/d = the over-strand arcs, tuple read counterclockwise
/// from a. sign is +1 or -1 and selects the conjugation direction of the
/// Wirtinger relation.
struct Crossing {
    int a = 0, b = 0, c = 0, d = 0;
    int sign = 1;
};

/// Planar-diagram code: arc labels are 1..arc_count after renumbering; every
/// label referenced by a crossing appears exactly twice; labels never
/// referenced are 0-crossing unknotted circles (`U` tokens).
struct PDCode {
    std::vector<Crossing> crossings;
    int arc_count = 0;
    std::vector<int> component_of; // arc label l -> component_of[l-1]
    int num_components = 0;
};

/// Accepts `X(a,b,c,d)` / `X(a,b,c,d;+)` / `X(a,b,c,d;-)` and `U` tokens
/// separated by `;` or newlines, `#` comments to end of line. Labels are
/// renumbered to 1..arc_count in order of first appearance. Throws
/// ValidationError: EmptyInput, MalformedToken, ArcCountMismatch.
PDCode parse_pd(const std::string& text);

/// Inverse of parse_pd up to renumbering; emits signs explicitly.
std::string serialize_pd(const PDCode& pd);

/// Wirtinger presentation of the diagram group: one generator per arc run of
/// the over-strand (the b/d slots joined across crossings, plus each unknotted
/// circle), one conjugation relator per crossing; relators that reduce to e
/// (degenerate kinks) are dropped by Presentation normalization.
Presentation wirtinger_presentation(const PDCode& pd);

struct CrossingCounts {
    int over = 0;
    int under = 0;
};

struct CatalogEntry {
    std::string name;
    PDCode pd;
    Presentation expected_presentation;
    // present exactly for the 2-component links; copied from the gate
    // Hamiltonian coefficients, not derived from PD geometry
    std::optional<CrossingCounts> crossing_counts;
};

/// Built-in diagrams: trefoil, figure8, hopf, whitehead, unknot, unlink2.
/// Throws ValidationError (UnknownName) otherwise. Stable across releases.
CatalogEntry catalog(const std::string& name);
std::vector<std::string> catalog_names();

} // namespace knotgate
