#pragma once

#include "gwpt/stars.hpp"

namespace gwpt {

struct DegenerationCatalog {
    Star source;
    long vertex_bound = 2;
    std::vector<ChowOneComplex> complexes;  // stable, balanced, asymptotic star = source
};

// Stable complexes with <= vertex_bound vertices and asymptotic star s:
// partition the ray multiset over the vertices, solve integer balancing for
// the bounded-edge data, realize canonical positions, discard anything
// unstable, unbalanced or not embedded. vertex_bound in {2, 3}; includes the
// trivial one-vertex degeneration when it is stable.
DegenerationCatalog one_step_degenerations(const Star &s, long vertex_bound);

enum class FourValentCase { I, II };

// The rigid curves of the 4-valent consistency setup with rays
// (1,0,0), (0,1,0), (1,0,n), (-2,-1,-n). Case I has a single complex for all
// n; Case II has one two-vertex complex plus one triangle per n1 > n2 > 0
// with n1 + n2 = n.
std::vector<ChowOneComplex> enumerate_4valent_curves(long n, FourValentCase which);

// Are two stars equal up to a translation of the geometry (and, for the full
// boundary, a GL3(Z) change of coordinates)?
bool stars_equivalent(const Star &a, const Star &b);

// Breadth-first closure of vertex stars of one_step_degenerations(-, 2),
// deduplicated by stars_equivalent; never contains s itself.
std::vector<Star> smaller_stars(const Star &s, long depth);

}  // namespace gwpt
