#pragma once

#include "tropfan/exactlin.hpp"

#include <stdexcept>

namespace tropfan {

struct GeomError : std::runtime_error {
    explicit GeomError(const std::string& what) : std::runtime_error(what) {}
};
struct NotStronglyConvexError : GeomError {
    explicit NotStronglyConvexError(const std::string& what) : GeomError(what) {}
};

// Extreme rays of the pointed cone {x in R^d : g * x^T >= 0 for every row g}.
// Requires rank(constraints) = d (equivalent to pointedness). Rows of the
// result are primitive and sorted.
std::vector<IntVec> extreme_rays_of(const IntMatrix& constraints);

// Exact geometry of one strongly convex rational cone in ambient coordinates.
struct ConeGeom {
    int ambient = 0;
    int dim = 0;
    std::vector<IntVec> gens;          // input generators
    LatticeBasis span;                 // saturated N_sigma basis (canonical)
    std::vector<IntVec> span_normals;  // basis of {u : u . x = 0 on span}
    std::vector<IntVec> facet_normals; // ambient covectors, >= 0 on the cone,
                                       // each tight on one facet
    std::vector<IntVec> extreme;       // primitive extreme rays, sorted

    bool contains(const IntVec& v) const;
    bool in_relative_interior(const IntVec& v) const;
    // Interior lattice point (sum of extreme rays; zero for the origin cone).
    IntVec interior_point() const;
};

ConeGeom make_cone_geom(const std::vector<IntVec>& gens, int ambient);

// Generators of the intersection of two strongly convex cones.
std::vector<IntVec> intersect_cones(const ConeGeom& a, const ConeGeom& b);

// cone(b) subset of cone(a)?
bool cone_contains_cone(const ConeGeom& a, const ConeGeom& b);

// Exact rational volume of the section {x in C : u . x <= 1}; u must be
// strictly positive on C minus the origin (e.g. the sum of facet normals).
// Volumes computed with the same u are additive across subdivisions of C.
Rat cone_section_volume(const ConeGeom& c, const IntVec& u);

// Sum of the facet normals of c: strictly positive on c minus the origin.
IntVec positive_functional(const ConeGeom& c);

} // namespace tropfan
