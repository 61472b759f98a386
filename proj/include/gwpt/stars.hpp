#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gwpt/geometry.hpp"

namespace gwpt {

struct WeightedRay {
    LatticeVector dir;  // primitive
    long weight = 1;    // positive

    bool operator==(const WeightedRay &o) const { return dir == o.dir && weight == o.weight; }
    bool operator<(const WeightedRay &o) const {
        if (dir != o.dir) return dir < o.dir;
        return weight < o.weight;
    }
};

// Base point + weighted primitive rays + internal-marking count.
struct Star {
    ElementaryGeometry geometry;
    RationalPoint base;
    std::vector<WeightedRay> rays;
    long internal_markings = 0;

    // Validates primitivity/admissibility/positivity, merges rays with equal
    // direction, sorts. Throws std::invalid_argument on a bad ray.
    static Star make(ElementaryGeometry geometry, RationalPoint base,
                     std::vector<WeightedRay> rays, long internal_markings);

    LatticeVector weighted_sum() const;
    long total_weight() const;
    bool operator==(const Star &o) const {
        return geometry == o.geometry && base == o.base && rays == o.rays &&
               internal_markings == o.internal_markings;
    }
    std::string to_string() const;
};

struct ComplexVertex {
    RationalPoint position;
    bool carries_class = false;
    std::set<long> markings;
};

struct ComplexEdge {
    int tail = 0, head = 0;
    long weight = 1;
};

struct ComplexRay {
    int vertex = 0;
    LatticeVector dir;  // primitive
    long weight = 1;
};

// Embedded weighted 1-complex in Sigma. Construct through make(), which
// checks positions, indices, weights, containment and ray admissibility;
// validate_embedding() additionally checks that distinct cells meet only in
// shared vertices.
struct ChowOneComplex {
    ElementaryGeometry geometry;
    std::vector<ComplexVertex> vertices;
    std::vector<ComplexEdge> edges;
    std::vector<ComplexRay> rays;
    bool allow_disconnected = false;

    static ChowOneComplex make(ElementaryGeometry geometry, std::vector<ComplexVertex> vertices,
                               std::vector<ComplexEdge> edges, std::vector<ComplexRay> rays,
                               bool allow_disconnected = false);

    LatticeVector edge_direction(const ComplexEdge &e) const;  // primitive, tail -> head
    bool is_connected() const;
    bool validate_embedding() const;  // cells intersect only in common vertices
    std::string canonical_key() const;
};

// Star of a one-vertex complex, and back.
ChowOneComplex star_to_complex(const Star &s);

// --- predicates and operations ---

// sum n_i v_i in span(collapsed_directions(geometry, base)).
bool is_balanced(const Star &s);
bool is_balanced_at_every_vertex(const ChowOneComplex &c);

struct MultiplicityData {
    long n = 1, m = 1, N = 1;
    // GL3(Z) transform carrying the star onto rays (n,0,0),(0,mn,0),(-n,-mn,0)
    // (weighted). Absent when the star is not equivalent to that normal form;
    // (n, m, N) are still the Smith data of the weighted-ray lattice.
    std::optional<IntegerMatrix> U;
};

// Requires: trivalent, balanced, full-boundary, weighted rays of rank 2.
MultiplicityData multiplicity_and_normalize(const Star &s);

// v |-> U v on directions and base. Full-boundary stars only.
Star transform_star(const IntegerMatrix &U, const Star &s);

// Injectivity of L_p -> prod_i L_q_i / <v_i>.
bool is_visible_star(const Star &s);
// Injectivity of g_Gamma : L_Gamma -> prod_E L_E x prod_H L_H.
bool is_visible_complex(const ChowOneComplex &c);

// Star at 0 from the unbounded rays, summing weights of equal directions;
// internal markings = union of vertex markings.
Star asymptotic_star(const ChowOneComplex &c);

Star star_at_vertex(const ChowOneComplex &c, int vertex);

// A 2-valent class-free marking-free vertex with opposite incident directions
// within one face of Sigma. `weight_mismatch` reports the invariant violation
// (erasable except the two incident weights differ).
bool vertex_is_erasable(const ChowOneComplex &c, int vertex, bool *weight_mismatch = nullptr);
bool is_stable(const ChowOneComplex &c);

// Repeatedly erase erasable vertices; idempotent; preserves the asymptotic
// star. A component that is a full line keeps one representative vertex.
ChowOneComplex stabilize(const ChowOneComplex &c);

}  // namespace gwpt
