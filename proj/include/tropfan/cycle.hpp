#pragma once

#include "tropfan/fan.hpp"

namespace tropfan {

// A pure fan with one integer weight per maximal cone, aligned with
// fan.maximal. Tropical fans carry positive weights; Weil divisors may carry
// any sign (allow_negative).
struct WeightedFan {
    Fan fan;
    std::vector<Int> weights;
    bool allow_negative = false;

    const Int& weight_of_max(int slot) const { return weights[size_t(slot)]; }
    int max_slot(int cone_index) const;
    Int weight_of_cone(int cone_index) const;
};

WeightedFan make_weighted(Fan fan, std::vector<Int> weights, bool allow_negative = false);

// An element of M_k: integer values on the k-cones (aligned with
// fan.cones_of_dim(k)), balanced at every (k-1)-cone.
struct MinkowskiWeight {
    int k = 0;
    std::vector<Int> values;
};

enum class SelectorKind { Canonical, Randomized };

struct NormalSelector {
    SelectorKind kind = SelectorKind::Canonical;
    unsigned seed = 0;
};

// A lattice point in the relative interior of sigma whose class generates
// N_sigma / N_tau (dim sigma = dim tau + 1).
IntVec normal_vector(const Fan& f, int sigma, int tau, const NormalSelector& sel = {});

struct BalanceViolation {
    int tau = -1;
    IntVec defect; // class in Z^n / N_tau, quotient-chart coordinates
};

struct BalanceReport {
    bool balanced = true;
    std::vector<BalanceViolation> violations;
};

BalanceReport check_balancing(const WeightedFan& wf, const NormalSelector& sel = {});

// Is an arbitrary integer assignment on the k-cones balanced?
bool is_balanced_weight(const Fan& f, int k, const std::vector<Int>& values,
                        const NormalSelector& sel = {});

// Saturated lattice basis of M_k(f).
std::vector<MinkowskiWeight> minkowski_basis(const Fan& f, int k);

struct IrreducibilityVerdict {
    bool irreducible = false;
    int rank = 0;
    std::optional<MinkowskiWeight> fundamental_weight;
    bool is_fundamental = false; // weights equal the fundamental weight
};

IrreducibilityVerdict irreducibility(const WeightedFan& wf);

struct LocalProfile {
    bool reduced = false;
    bool locally_irreducible = false;
    std::vector<std::pair<int, bool>> star_verdicts; // cone -> star irreducible
};

LocalProfile local_profile(const WeightedFan& wf);

// Weighted star fan with inherited weights.
struct WeightedStar {
    WeightedFan wf;
    StarFan star;
};
WeightedStar weighted_star(const WeightedFan& wf, int sigma);

// f_* eta along the matrix map (checked: each source cone's image is a cone
// of the target). Output verified balanced.
MinkowskiWeight pushforward(const IntMatrix& map, const Fan& source, const MinkowskiWeight& eta,
                            const Fan& target);
MinkowskiWeight pushforward_weighted(const IntMatrix& map, const WeightedFan& source, const Fan& target);

WeightedFan product_weighted(const WeightedFan& a, const WeightedFan& b);

// Each maximal cone of the refinement inherits the weight of the minimal
// containing cone of wf. Requires equal support.
WeightedFan refine_weights(const WeightedFan& wf, const Fan& refinement);

// Same support and same weights after passing to a common refinement.
bool cycles_equal(const WeightedFan& a, const WeightedFan& b);

// wf.weights as a top-dimensional Minkowski weight.
MinkowskiWeight top_weight(const WeightedFan& wf);

bool is_reduced(const WeightedFan& wf);

} // namespace tropfan
