#pragma once

#include "tropfan/geom.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tropfan {

enum class FanErrorKind {
    NonPrimitiveRay,
    DuplicateRay,
    UnusedRay,
    OverlappingCones,
    MissingFace,
    NotStronglyConvex,
    SupportMismatch,
    ConeNotInFan,
    PointOutsideSupport,
    ConeImageNotACone,
    BadInput,
};

struct FanError : std::runtime_error {
    FanErrorKind kind;
    FanError(FanErrorKind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

const char* fan_error_name(FanErrorKind k);

// A cone of a fan, identified by its sorted extreme-ray indices. The origin
// cone has an empty index set. Non-simplicial cones simply carry more than
// dim indices; the set is always exactly the extreme rays.
struct Cone {
    std::vector<int> rays;
    int dim = 0;
};

struct Fan {
    int ambient_rank = 0;
    std::vector<IntVec> rays;    // primitive, pairwise distinct
    std::vector<Cone> cones;     // all cones incl. origin; sorted by (dim, rays)
    std::vector<ConeGeom> geoms; // aligned with cones
    std::vector<int> maximal;    // indices of inclusion-maximal cones
    int dim = 0;
    bool pure = false;

    int cone_index(const std::vector<int>& sorted_rays) const;
    std::vector<int> cones_of_dim(int k) const;
    bool is_face(int tau, int sigma) const; // subset test on validated fans
    std::vector<int> cofaces_of_dim(int tau, int k) const;
    const ConeGeom& geom(int c) const { return geoms[size_t(c)]; }

    // Index of the cone whose relative interior contains v; nullopt if v is
    // outside the support.
    std::optional<int> carrier(const IntVec& v) const;

    // Smallest cone of this fan containing the given cone geometry entirely;
    // nullopt if none contains it.
    std::optional<int> smallest_containing(const ConeGeom& g) const;
};

struct BuildOptions {
    bool strict_faces = false; // require the input to list every face
};

// Validates and assembles a fan from primitive rays and cones given as
// ray-index sets (typically the maximal cones; faces are completed unless
// strict). Rejects non-fans.
Fan build_fan(const std::vector<IntVec>& rays, const std::vector<std::vector<int>>& cone_ray_sets,
              int ambient_rank, const BuildOptions& opts = {});

// Fan from explicit generator sets in ambient coordinates (rays collected
// and canonicalized automatically).
Fan build_fan_from_generators(const std::vector<std::vector<IntVec>>& generator_sets, int ambient_rank);

// The full face relation as pairs (face, cone), including the origin.
std::vector<std::pair<int, int>> face_lattice(const Fan& f);

struct StarFan {
    Fan fan;            // in the quotient lattice Z^(n-k)
    IntMatrix chart;    // n x (n-k): v |-> v * chart is the quotient map
    IntMatrix section;  // (n-k) x n right inverse
    std::vector<std::pair<int, int>> cone_map; // (cone of f containing sigma) -> star cone
    int sigma = -1;
};

StarFan star_fan(const Fan& f, int sigma);

struct ProductFan {
    Fan fan;
    // (cone of a, cone of b) -> product cone index
    std::map<std::pair<int, int>, int> cone_map;
};

ProductFan product(const Fan& a, const Fan& b);

// Cones are the closures of intersections of relatively open cones; requires
// equal supports (verified exactly; throws SupportMismatch).
Fan common_refinement(const Fan& a, const Fan& b);

// |f| = R^ambient_rank: pure of ambient dimension, nonempty, and every
// codimension-1 cone is a face of exactly two maximal cones.
bool is_complete(const Fan& f);

// Every maximal cone of `fine` is contained in some cone of `coarse`.
bool refines(const Fan& fine, const Fan& coarse);

// Exact support equality (volume comparison per maximal cone).
bool same_support(const Fan& a, const Fan& b);

struct FanClassification {
    bool simplicial = false;
    bool unimodular = false; // determinant +-1 within each N_sigma
    bool pure = false;
    LatticeBasis minimal_lattice; // saturated N_Sigma
    std::vector<int> non_simplicial_cones;
    std::vector<int> non_unimodular_cones;
};

FanClassification classify(const Fan& f);

struct FanIsomorphism {
    IntMatrix matrix;       // between minimal-lattice charts of source/target
    LatticeBasis source_basis, target_basis;
    std::vector<std::pair<int, int>> cone_bijection;
};

enum class IsoOutcome { Found, None, BudgetExceeded };

struct IsoResult {
    IsoOutcome outcome = IsoOutcome::None;
    std::optional<FanIsomorphism> iso;
};

// Searches lattice isomorphisms N_f -> N_g determined by mapping a spanning
// set of rays of f to rays of g; deterministic ordering, first hit returned.
// Optional weights (aligned with each fan's maximal list) must transport.
IsoResult find_isomorphism(const Fan& f, const Fan& g, long budget = 1000000,
                           const std::vector<Int>* f_weights = nullptr,
                           const std::vector<Int>* g_weights = nullptr);

// Fan structure on F^v = |star| x R^(dim carrier): the product of the star
// fan at the carrier of v with the orthant fan of matching rank.
Fan local_support(const Fan& f, const IntVec& v);

// Complete fan of all 2^k orthants (rays +-e_i).
Fan orthant_fan(int k);

// Transform a fan through an injective-on-support linear map given by an
// n x m matrix whose restriction to each cone is injective.
Fan map_fan(const Fan& f, const IntMatrix& m);

// Rewrite f in coordinates of a saturated sublattice containing all rays.
Fan restrict_fan(const Fan& f, const LatticeBasis& sub);

// Subfan spanned by the given cones (and their faces), rays reindexed.
Fan subfan(const Fan& f, const std::vector<int>& cone_indices);

// Stellar subdivision at a primitive ray in the relative interior of the
// given cone (dim >= 1).
Fan stellar_subdivision(const Fan& f, int sigma, const IntVec& new_ray);

} // namespace tropfan
