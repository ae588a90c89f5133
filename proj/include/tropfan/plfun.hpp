#pragma once

#include "tropfan/cycle.hpp"

namespace tropfan {

enum class PLErrorKind {
    FaceMismatch,
    NonIntegralInterpolation,
    RayValuesOnNonSimplicial,
    BadInput,
};

struct PLError : std::runtime_error {
    PLErrorKind kind;
    PLError(PLErrorKind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

// A piecewise integral linear function on a fan. One ambient integer
// covector per cone, canonically reduced modulo the annihilator lattice of
// the cone's span; covectors of faces agree with those of cofaces on the
// face.
struct PLFunction {
    std::vector<IntVec> covectors; // aligned with fan.cones

    Int value(const Fan& f, const IntVec& v) const; // v must lie in |f|
    Int value_at_ray(const Fan& f, int ray_index) const;
};

// Build from values at the rays; requires a simplicial fan, integrality of
// each interpolated covector on N_sigma verified.
PLFunction make_pl_from_ray_values(const Fan& f, const std::vector<Int>& ray_values);

// Build from one ambient covector per maximal cone (aligned with
// fan.maximal); face agreement verified.
PLFunction make_pl_from_covectors(const Fan& f, const std::vector<IntVec>& per_maximal);

// The restriction of a single integral covector on N_Sigma?
struct LinearityClass {
    bool is_globally_linear = false;
    std::optional<IntVec> witness; // ambient covector
};
LinearityClass linearity_class(const Fan& f, const PLFunction& phi);

// phi + the globally linear function u.
PLFunction add_linear(const Fan& f, const PLFunction& phi, const IntVec& u);

struct DivisorResult {
    std::vector<Int> ord;             // aligned with fan.cones_of_dim(d-1)
    bool trivial = true;              // all orders vanish
    std::optional<WeightedFan> weil;  // subfan of nonzero-ord cones, sign-allowed
    std::vector<std::pair<int, int>>
        weil_cone_map;                // weil maximal slot -> source cone index
};

// Order of vanishing along every codimension-1 cone; the principal tropical
// Weil divisor div(phi). Output verified balanced.
DivisorResult divisor(const WeightedFan& wf, const PLFunction& phi);

// One divisor step on a Minkowski weight (cap machinery): eta in M_j maps to
// div(phi) . eta in M_(j-1), values on all (j-1)-cones.
template <class Coeff>
std::vector<Coeff> divisor_step(const Fan& f, const PLFunction& phi, int j,
                                const std::vector<Coeff>& eta);

// Induced function on a star fan: psi_taubar(q(x)) = phi_tau(x) - phi_sigma(x).
PLFunction induced_on_star(const Fan& f, const PLFunction& phi, const StarFan& st);

// Lift of phi through a product: psi(x, y) = phi(y) on a x b.
PLFunction lift_through_product(const Fan& a, const Fan& b, const ProductFan& pf,
                                const PLFunction& phi_on_b);

} // namespace tropfan
