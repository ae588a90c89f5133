#include "tropfan/plfun.hpp"

#include <algorithm>

namespace tropfan {

namespace {

IntVec canonical_covector(const ConeGeom& g, IntVec u)
{
    if (g.span_normals.empty())
        return u;
    return reduce_mod_lattice(u, IntMatrix::from_rows(g.span_normals, g.ambient));
}

// Ambient integer covector agreeing with the given N_sigma-covector (span
// coordinates c) on the cone's span, canonically reduced.
IntVec lift_covector(const ConeGeom& g, const IntVec& c)
{
    IntMatrix X = dual_section(g.span); // n x k
    IntVec u = apply_matrix(c, X.transpose());
    return canonical_covector(g, u);
}

} // namespace

Int PLFunction::value(const Fan& f, const IntVec& v) const
{
    auto c = f.carrier(v);
    if (!c)
        throw PLError(PLErrorKind::BadInput, "PLFunction::value: point outside support");
    return dot(covectors[size_t(*c)], v);
}

Int PLFunction::value_at_ray(const Fan& f, int ray_index) const
{
    int c = f.cone_index({ray_index});
    if (c < 0)
        throw PLError(PLErrorKind::BadInput, "value_at_ray: no such ray cone");
    return dot(covectors[size_t(c)], f.rays[size_t(ray_index)]);
}

PLFunction make_pl_from_ray_values(const Fan& f, const std::vector<Int>& ray_values)
{
    if (ray_values.size() != f.rays.size())
        throw PLError(PLErrorKind::BadInput, "one value per ray required");
    PLFunction phi;
    phi.covectors.resize(f.cones.size());
    for (size_t ci = 0; ci < f.cones.size(); ++ci) {
        const Cone& cone = f.cones[ci];
        const ConeGeom& g = f.geoms[ci];
        if (int(cone.rays.size()) != g.dim)
            throw PLError(PLErrorKind::RayValuesOnNonSimplicial,
                          "ray-value form needs a simplicial fan");
        if (g.dim == 0) {
            phi.covectors[ci] = IntVec(f.ambient_rank, Int(0));
            continue;
        }
        std::vector<IntVec> rc;
        IntVec vals;
        for (int r : cone.rays) {
            rc.push_back(*coordinates_in_basis(g.span, f.rays[size_t(r)]));
            vals.push_back(ray_values[size_t(r)]);
        }
        IntMatrix R = IntMatrix::from_rows(rc, g.dim);
        auto c = solve_left_rational_as_integer(R.transpose(), vals);
        if (!c)
            throw PLError(PLErrorKind::NonIntegralInterpolation,
                          "ray values do not interpolate integrally on N_sigma");
        phi.covectors[ci] = lift_covector(g, *c);
    }
    return phi;
}

PLFunction make_pl_from_covectors(const Fan& f, const std::vector<IntVec>& per_maximal)
{
    if (per_maximal.size() != f.maximal.size())
        throw PLError(PLErrorKind::BadInput, "one covector per maximal cone required");
    for (const auto& u : per_maximal)
        if (int(u.size()) != f.ambient_rank)
            throw PLError(PLErrorKind::BadInput, "covector of wrong length");

    // Face agreement: covectors of two maximal cones agree on their common
    // rays (hence on the common face).
    for (size_t i = 0; i < f.maximal.size(); ++i)
        for (size_t j = i + 1; j < f.maximal.size(); ++j) {
            const auto& ri = f.cones[size_t(f.maximal[i])].rays;
            const auto& rj = f.cones[size_t(f.maximal[j])].rays;
            std::vector<int> common;
            std::set_intersection(ri.begin(), ri.end(), rj.begin(), rj.end(),
                                  std::back_inserter(common));
            for (int r : common)
                if (dot(per_maximal[i], f.rays[size_t(r)]) != dot(per_maximal[j], f.rays[size_t(r)]))
                    throw PLError(PLErrorKind::FaceMismatch,
                                  "covectors disagree on a shared face");
        }

    PLFunction phi;
    phi.covectors.resize(f.cones.size());
    for (size_t ci = 0; ci < f.cones.size(); ++ci) {
        int host = -1;
        for (size_t m = 0; m < f.maximal.size(); ++m)
            if (f.is_face(int(ci), f.maximal[m])) {
                host = int(m);
                break;
            }
        if (host < 0)
            throw PLError(PLErrorKind::BadInput, "cone without a maximal coface");
        phi.covectors[ci] = canonical_covector(f.geoms[ci], per_maximal[size_t(host)]);
    }
    return phi;
}

LinearityClass linearity_class(const Fan& f, const PLFunction& phi)
{
    LinearityClass lc;
    LatticeBasis b = saturate(f.rays, f.ambient_rank);
    if (b.rank() == 0) {
        lc.is_globally_linear = true;
        lc.witness = IntVec(f.ambient_rank, Int(0));
        return lc;
    }
    std::vector<IntVec> rc;
    IntVec vals;
    for (size_t r = 0; r < f.rays.size(); ++r) {
        rc.push_back(*coordinates_in_basis(b, f.rays[r]));
        vals.push_back(phi.value_at_ray(f, int(r)));
    }
    IntMatrix R = IntMatrix::from_rows(rc, b.rank());
    auto c = solve_left_rational_as_integer(R.transpose(), vals);
    if (!c)
        return lc;
    lc.is_globally_linear = true;
    IntMatrix X = dual_section(b);
    lc.witness = apply_matrix(*c, X.transpose());
    return lc;
}

PLFunction add_linear(const Fan& f, const PLFunction& phi, const IntVec& u)
{
    PLFunction out;
    out.covectors.resize(f.cones.size());
    for (size_t ci = 0; ci < f.cones.size(); ++ci) {
        IntVec w = phi.covectors[ci];
        for (size_t k = 0; k < w.size(); ++k)
            w[k] += u[k];
        out.covectors[ci] = canonical_covector(f.geoms[ci], std::move(w));
    }
    return out;
}

DivisorResult divisor(const WeightedFan& wf, const PLFunction& phi)
{
    const Fan& f = wf.fan;
    int d = f.dim;
    std::vector<int> taus = f.cones_of_dim(d - 1);
    DivisorResult res;
    res.ord.assign(taus.size(), Int(0));
    for (size_t t = 0; t < taus.size(); ++t) {
        int tau = taus[t];
        QuotientChart qc = quotient_chart(f.geom(tau).span);
        IntVec z(f.ambient_rank, Int(0));
        Int corner = 0;
        IntVec qsum(f.ambient_rank - f.cones[size_t(tau)].dim, Int(0));
        for (int sigma : f.cofaces_of_dim(tau, d)) {
            IntVec n = normal_vector(f, sigma, tau);
            Int w = wf.weight_of_cone(sigma);
            for (int k = 0; k < f.ambient_rank; ++k)
                z[size_t(k)] += w * n[size_t(k)];
            corner += w * dot(phi.covectors[size_t(sigma)], n);
            IntVec q = apply_matrix(n, qc.proj);
            for (size_t k = 0; k < qsum.size(); ++k)
                qsum[k] += w * q[k];
        }
        if (!is_zero_vec(qsum))
            throw PLError(PLErrorKind::BadInput, "divisor: fan is not balanced");
        res.ord[t] = dot(phi.covectors[size_t(tau)], z) - corner;
    }
    res.trivial = true;
    std::vector<int> support;
    for (size_t t = 0; t < taus.size(); ++t)
        if (res.ord[t] != 0) {
            res.trivial = false;
            support.push_back(taus[t]);
        }
    if (!is_balanced_weight(f, d - 1, res.ord))
        throw PLError(PLErrorKind::BadInput, "divisor: orders are not balanced");
    if (res.trivial)
        return res;

    Fan sub = subfan(f, support);
    std::vector<Int> w(sub.maximal.size(), Int(0));
    for (size_t slot = 0; slot < sub.maximal.size(); ++slot) {
        const ConeGeom& g = sub.geom(sub.maximal[size_t(slot)]);
        int src = -1;
        for (size_t t = 0; t < taus.size(); ++t)
            if (f.geom(taus[t]).extreme == g.extreme) {
                src = int(t);
                break;
            }
        if (src < 0)
            throw PLError(PLErrorKind::BadInput, "divisor: lost a support cone");
        w[slot] = res.ord[size_t(src)];
        res.weil_cone_map.emplace_back(int(slot), taus[size_t(src)]);
    }
    res.weil = make_weighted(std::move(sub), std::move(w), true);
    return res;
}

template <class Coeff>
std::vector<Coeff> divisor_step(const Fan& f, const PLFunction& phi, int j,
                                const std::vector<Coeff>& eta)
{
    std::vector<int> jc = f.cones_of_dim(j);
    std::vector<int> taus = f.cones_of_dim(j - 1);
    if (eta.size() != jc.size())
        throw PLError(PLErrorKind::BadInput, "divisor_step: value count mismatch");
    std::vector<Coeff> out(taus.size(), Coeff(0));
    for (size_t t = 0; t < taus.size(); ++t) {
        int tau = taus[t];
        QuotientChart qc = quotient_chart(f.geom(tau).span);
        std::vector<Coeff> z(size_t(f.ambient_rank), Coeff(0));
        Coeff corner(0);
        std::vector<Coeff> qsum(size_t(f.ambient_rank - f.cones[size_t(tau)].dim), Coeff(0));
        for (size_t i = 0; i < jc.size(); ++i) {
            if (!f.is_face(tau, jc[i]))
                continue;
            if (eta[i] == 0)
                continue;
            IntVec n = normal_vector(f, jc[i], tau);
            for (int k = 0; k < f.ambient_rank; ++k)
                z[size_t(k)] += eta[i] * Coeff(n[size_t(k)]);
            corner += eta[i] * Coeff(dot(phi.covectors[size_t(jc[i])], n));
            IntVec q = apply_matrix(n, qc.proj);
            for (size_t k = 0; k < qsum.size(); ++k)
                qsum[k] += eta[i] * Coeff(q[size_t(k)]);
        }
        for (const auto& s : qsum)
            if (s != 0)
                throw PLError(PLErrorKind::BadInput, "divisor_step: weight not balanced");
        Coeff val(0);
        const IntVec& ut = phi.covectors[size_t(tau)];
        for (int k = 0; k < f.ambient_rank; ++k)
            val += Coeff(ut[size_t(k)]) * z[size_t(k)];
        out[t] = val - corner;
    }
    return out;
}

template std::vector<Int> divisor_step<Int>(const Fan&, const PLFunction&, int,
                                            const std::vector<Int>&);
template std::vector<Rat> divisor_step<Rat>(const Fan&, const PLFunction&, int,
                                            const std::vector<Rat>&);

PLFunction induced_on_star(const Fan& f, const PLFunction& phi, const StarFan& st)
{
    const IntVec& base = phi.covectors[size_t(st.sigma)];
    IntMatrix sect_t = st.section.transpose();
    std::vector<IntVec> per_maximal(st.fan.maximal.size());
    std::vector<bool> filled(st.fan.maximal.size(), false);
    for (auto [src, dst] : st.cone_map) {
        int slot = -1;
        for (size_t i = 0; i < st.fan.maximal.size(); ++i)
            if (st.fan.maximal[i] == dst)
                slot = int(i);
        if (slot < 0)
            continue;
        IntVec diff = phi.covectors[size_t(src)];
        for (size_t k = 0; k < diff.size(); ++k)
            diff[k] -= base[k];
        per_maximal[size_t(slot)] = apply_matrix(diff, sect_t);
        filled[size_t(slot)] = true;
    }
    for (bool b : filled)
        if (!b)
            throw PLError(PLErrorKind::BadInput, "induced_on_star: unmatched star cone");
    return make_pl_from_covectors(st.fan, per_maximal);
}

PLFunction lift_through_product(const Fan& a, const Fan& b, const ProductFan& pf,
                                const PLFunction& phi_on_b)
{
    std::vector<IntVec> per_maximal(pf.fan.maximal.size());
    for (int ma : a.maximal)
        for (int mb : b.maximal) {
            int pc = pf.cone_map.at({ma, mb});
            int slot = -1;
            for (size_t i = 0; i < pf.fan.maximal.size(); ++i)
                if (pf.fan.maximal[i] == pc)
                    slot = int(i);
            if (slot < 0)
                throw PLError(PLErrorKind::BadInput, "lift_through_product: lost a cone");
            IntVec u(a.ambient_rank + b.ambient_rank, Int(0));
            const IntVec& v = phi_on_b.covectors[size_t(mb)];
            for (int k = 0; k < b.ambient_rank; ++k)
                u[size_t(a.ambient_rank + k)] = v[size_t(k)];
            per_maximal[size_t(slot)] = std::move(u);
        }
    return make_pl_from_covectors(pf.fan, per_maximal);
}

} // namespace tropfan
