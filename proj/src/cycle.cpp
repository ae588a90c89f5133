#include "tropfan/cycle.hpp"

#include <algorithm>
#include <random>

namespace tropfan {

int WeightedFan::max_slot(int cone_index) const
{
    for (size_t i = 0; i < fan.maximal.size(); ++i)
        if (fan.maximal[i] == cone_index)
            return int(i);
    return -1;
}

Int WeightedFan::weight_of_cone(int cone_index) const
{
    int s = max_slot(cone_index);
    if (s < 0)
        throw FanError(FanErrorKind::BadInput, "weight_of_cone: not a maximal cone");
    return weights[size_t(s)];
}

WeightedFan make_weighted(Fan fan, std::vector<Int> weights, bool allow_negative)
{
    if (!fan.pure)
        throw FanError(FanErrorKind::BadInput, "weighted fan must be pure");
    if (weights.size() != fan.maximal.size())
        throw FanError(FanErrorKind::BadInput, "one weight per maximal cone required");
    if (!allow_negative)
        for (const Int& w : weights)
            if (w <= 0)
                throw FanError(FanErrorKind::BadInput, "tropical fans need positive weights");
    WeightedFan wf;
    wf.fan = std::move(fan);
    wf.weights = std::move(weights);
    wf.allow_negative = allow_negative;
    return wf;
}

IntVec normal_vector(const Fan& f, int sigma, int tau, const NormalSelector& sel)
{
    const ConeGeom& sg = f.geom(sigma);
    const ConeGeom& tg = f.geom(tau);
    if (sg.dim != tg.dim + 1 || !f.is_face(tau, sigma))
        throw FanError(FanErrorKind::BadInput, "normal_vector: not an incident pair");

    // Quotient N_sigma / N_tau == Z via a chart on N_sigma coordinates.
    std::vector<IntVec> tau_coords;
    for (const auto& v : tg.span.vectors)
        tau_coords.push_back(*coordinates_in_basis(sg.span, v));
    LatticeBasis tau_in_sigma{sg.dim, tau_coords};
    QuotientChart qc = quotient_chart(tau_in_sigma); // sg.dim -> 1

    // Orient: generators of sigma outside tau must map positively.
    Int orient = 0;
    for (const auto& e : sg.extreme) {
        IntVec c = *coordinates_in_basis(sg.span, e);
        Int q = apply_matrix(c, qc.proj)[0];
        if (q != 0) {
            orient = q > 0 ? 1 : -1;
            break;
        }
    }
    if (orient == 0)
        throw FanError(FanErrorKind::BadInput, "normal_vector: degenerate pair");

    // x0 with quotient class 1, in ambient coordinates.
    IntVec sec = qc.section.row(0);
    for (Int& x : sec)
        x *= orient;
    IntVec x0 = apply_matrix(sec, sg.span.matrix());

    // Relative interior point of tau to push x0 inside sigma.
    IntVec z = tg.interior_point();
    if (sel.kind == SelectorKind::Randomized && tg.dim > 0) {
        std::mt19937 rng(sel.seed * 7919u + unsigned(sigma) * 131u + unsigned(tau));
        std::uniform_int_distribution<int> coef(1, 4);
        IntVec zz(z.size(), Int(0));
        for (const auto& e : tg.extreme)
            for (size_t i = 0; i < zz.size(); ++i)
                zz[i] += Int(coef(rng)) * e[i];
        z = zz;
    }

    // Smallest t >= 0 with x0 + t z in relint(sigma).
    Int t = 0;
    for (const auto& fn : sg.facet_normals) {
        Int fx = dot(fn, x0);
        Int fz = dot(fn, z);
        if (fz == 0) {
            if (fx <= 0)
                throw FanError(FanErrorKind::BadInput, "normal_vector: facet breaks orientation");
            continue;
        }
        if (fz < 0)
            throw FanError(FanErrorKind::BadInput, "normal_vector: interior point outside");
        // need fx + t fz > 0  <=>  t > -fx/fz
        Int bound = floordiv(-fx, fz) + 1;
        if (bound > t)
            t = bound;
    }
    IntVec x = x0;
    for (size_t i = 0; i < x.size(); ++i)
        x[i] += t * z[i];
    return x;
}

bool is_balanced_weight(const Fan& f, int k, const std::vector<Int>& values, const NormalSelector& sel)
{
    std::vector<int> kcones = f.cones_of_dim(k);
    if (values.size() != kcones.size())
        throw FanError(FanErrorKind::BadInput, "is_balanced_weight: value count mismatch");
    for (int tau : f.cones_of_dim(k - 1)) {
        QuotientChart qc = quotient_chart(f.geom(tau).span);
        IntVec sum(f.ambient_rank - f.cones[size_t(tau)].dim, Int(0));
        for (size_t i = 0; i < kcones.size(); ++i) {
            if (!f.is_face(tau, kcones[i]) || values[i] == 0)
                continue;
            IntVec n = normal_vector(f, kcones[i], tau, sel);
            IntVec q = apply_matrix(n, qc.proj);
            for (size_t c = 0; c < sum.size(); ++c)
                sum[c] += values[i] * q[c];
        }
        if (!is_zero_vec(sum))
            return false;
    }
    return true;
}

BalanceReport check_balancing(const WeightedFan& wf, const NormalSelector& sel)
{
    const Fan& f = wf.fan;
    int d = f.dim;
    BalanceReport rep;
    for (int tau : f.cones_of_dim(d - 1)) {
        QuotientChart qc = quotient_chart(f.geom(tau).span);
        IntVec sum(f.ambient_rank - f.cones[size_t(tau)].dim, Int(0));
        for (int sigma : f.cofaces_of_dim(tau, d)) {
            IntVec n = normal_vector(f, sigma, tau, sel);
            IntVec q = apply_matrix(n, qc.proj);
            Int w = wf.weight_of_cone(sigma);
            for (size_t c = 0; c < sum.size(); ++c)
                sum[c] += w * q[c];
        }
        if (!is_zero_vec(sum)) {
            rep.balanced = false;
            rep.violations.push_back(BalanceViolation{tau, sum});
        }
    }
    return rep;
}

std::vector<MinkowskiWeight> minkowski_basis(const Fan& f, int k)
{
    if (k < 0 || k > f.dim)
        return {};
    std::vector<int> kcones = f.cones_of_dim(k);
    if (kcones.empty())
        return {};
    std::vector<IntVec> rows;
    for (int tau : f.cones_of_dim(k - 1)) {
        QuotientChart qc = quotient_chart(f.geom(tau).span);
        int qdim = f.ambient_rank - f.cones[size_t(tau)].dim;
        std::vector<IntVec> block(size_t(qdim), IntVec(kcones.size(), Int(0)));
        for (size_t i = 0; i < kcones.size(); ++i) {
            if (!f.is_face(tau, kcones[i]))
                continue;
            IntVec n = normal_vector(f, kcones[i], tau);
            IntVec q = apply_matrix(n, qc.proj);
            for (int c = 0; c < qdim; ++c)
                block[size_t(c)][i] = q[size_t(c)];
        }
        for (auto& b : block)
            rows.push_back(std::move(b));
    }
    LatticeBasis ker =
        integer_kernel(rows.empty() ? IntMatrix(0, int(kcones.size()))
                                    : IntMatrix::from_rows(rows, int(kcones.size())));
    std::vector<MinkowskiWeight> out;
    for (const auto& v : ker.vectors)
        out.push_back(MinkowskiWeight{k, v});
    return out;
}

MinkowskiWeight top_weight(const WeightedFan& wf)
{
    MinkowskiWeight m;
    m.k = wf.fan.dim;
    std::vector<int> kc = wf.fan.cones_of_dim(m.k);
    m.values.assign(kc.size(), Int(0));
    for (size_t i = 0; i < kc.size(); ++i)
        m.values[i] = wf.weight_of_cone(kc[i]);
    return m;
}

bool is_reduced(const WeightedFan& wf)
{
    for (const Int& w : wf.weights)
        if (w != 1)
            return false;
    return true;
}

IrreducibilityVerdict irreducibility(const WeightedFan& wf)
{
    if (!check_balancing(wf).balanced)
        throw FanError(FanErrorKind::BadInput, "irreducibility: fan is not balanced");
    IrreducibilityVerdict v;
    auto basis = minkowski_basis(wf.fan, wf.fan.dim);
    v.rank = int(basis.size());
    v.irreducible = (v.rank == 1);
    if (v.irreducible) {
        MinkowskiWeight gen = basis[0];
        bool has_neg = false, has_pos = false;
        for (const Int& x : gen.values) {
            if (x < 0)
                has_neg = true;
            if (x > 0)
                has_pos = true;
        }
        if (has_neg && !has_pos)
            for (Int& x : gen.values)
                x = -x;
        v.fundamental_weight = gen;
        v.is_fundamental = (top_weight(wf).values == gen.values);
    }
    return v;
}

WeightedStar weighted_star(const WeightedFan& wf, int sigma)
{
    WeightedStar ws;
    ws.star = star_fan(wf.fan, sigma);
    std::vector<Int> w(ws.star.fan.maximal.size(), Int(0));
    for (auto [src, dst] : ws.star.cone_map) {
        int slot = -1;
        for (size_t i = 0; i < ws.star.fan.maximal.size(); ++i)
            if (ws.star.fan.maximal[i] == dst)
                slot = int(i);
        if (slot < 0)
            continue;
        w[size_t(slot)] = wf.weight_of_cone(src);
    }
    ws.wf = make_weighted(ws.star.fan, std::move(w), wf.allow_negative);
    return ws;
}

LocalProfile local_profile(const WeightedFan& wf)
{
    LocalProfile p;
    p.reduced = is_reduced(wf);
    p.locally_irreducible = true;
    for (size_t c = 0; c < wf.fan.cones.size(); ++c) {
        WeightedStar ws = weighted_star(wf, int(c));
        bool irr = irreducibility(ws.wf).irreducible;
        p.star_verdicts.emplace_back(int(c), irr);
        if (!irr)
            p.locally_irreducible = false;
    }
    return p;
}

MinkowskiWeight pushforward(const IntMatrix& map, const Fan& source, const MinkowskiWeight& eta,
                            const Fan& target)
{
    // Precondition: the image of every cone of the source is a cone of the
    // target.
    for (size_t c = 0; c < source.cones.size(); ++c) {
        std::vector<IntVec> img;
        for (int r : source.cones[c].rays)
            img.push_back(apply_matrix(source.rays[size_t(r)], map));
        ConeGeom g = make_cone_geom(img, map.cols);
        bool found = false;
        for (size_t t = 0; t < target.cones.size(); ++t)
            if (target.geoms[t].extreme == g.extreme) {
                found = true;
                break;
            }
        if (!found)
            throw FanError(FanErrorKind::ConeImageNotACone,
                           "pushforward: a cone image is not a cone of the target");
    }

    int k = eta.k;
    std::vector<int> skc = source.cones_of_dim(k);
    std::vector<int> tkc = target.cones_of_dim(k);
    MinkowskiWeight out;
    out.k = k;
    out.values.assign(tkc.size(), Int(0));
    for (size_t i = 0; i < skc.size(); ++i) {
        if (eta.values[i] == 0)
            continue;
        const ConeGeom& sg = source.geom(skc[i]);
        std::vector<IntVec> img;
        for (const auto& b : sg.span.vectors)
            img.push_back(apply_matrix(b, map));
        if (mat_rank(IntMatrix::from_rows(img, map.cols)) != k)
            continue; // dimension drops: no contribution
        std::vector<IntVec> cone_img;
        for (int r : source.cones[size_t(skc[i])].rays)
            cone_img.push_back(apply_matrix(source.rays[size_t(r)], map));
        ConeGeom g = make_cone_geom(cone_img, map.cols);
        int tc = -1;
        for (size_t t = 0; t < tkc.size(); ++t)
            if (target.geom(tkc[t]).extreme == g.extreme) {
                tc = int(t);
                break;
            }
        if (tc < 0)
            throw FanError(FanErrorKind::ConeImageNotACone,
                           "pushforward: dimension-preserving image missing");
        auto idx = lattice_index(img, target.geom(tkc[size_t(tc)]).span);
        if (!idx.finite)
            throw FanError(FanErrorKind::BadInput, "pushforward: index not finite");
        out.values[size_t(tc)] += eta.values[i] * idx.index;
    }
    if (!is_balanced_weight(target, k, out.values))
        throw FanError(FanErrorKind::BadInput, "pushforward: output not balanced");
    return out;
}

MinkowskiWeight pushforward_weighted(const IntMatrix& map, const WeightedFan& source, const Fan& target)
{
    return pushforward(map, source.fan, top_weight(source), target);
}

WeightedFan product_weighted(const WeightedFan& a, const WeightedFan& b)
{
    ProductFan pf = product(a.fan, b.fan);
    std::vector<Int> w(pf.fan.maximal.size(), Int(0));
    for (size_t ia = 0; ia < a.fan.maximal.size(); ++ia)
        for (size_t ib = 0; ib < b.fan.maximal.size(); ++ib) {
            int pc = pf.cone_map.at({a.fan.maximal[ia], b.fan.maximal[ib]});
            int slot = -1;
            for (size_t i = 0; i < pf.fan.maximal.size(); ++i)
                if (pf.fan.maximal[i] == pc)
                    slot = int(i);
            if (slot < 0)
                throw FanError(FanErrorKind::BadInput, "product_weighted: lost a maximal cone");
            w[size_t(slot)] = a.weights[ia] * b.weights[ib];
        }
    return make_weighted(pf.fan, std::move(w), a.allow_negative || b.allow_negative);
}

WeightedFan refine_weights(const WeightedFan& wf, const Fan& refinement)
{
    if (!refines(refinement, wf.fan) || !same_support(refinement, wf.fan))
        throw FanError(FanErrorKind::SupportMismatch,
                       "refine_weights: not a refinement with equal support");
    if (!refinement.pure || refinement.dim != wf.fan.dim)
        throw FanError(FanErrorKind::SupportMismatch, "refine_weights: dimension mismatch");
    std::vector<Int> w;
    for (int m : refinement.maximal) {
        auto host = wf.fan.smallest_containing(refinement.geom(m));
        if (!host)
            throw FanError(FanErrorKind::SupportMismatch, "refine_weights: stray cone");
        w.push_back(wf.weight_of_cone(*host));
    }
    return make_weighted(refinement, std::move(w), wf.allow_negative);
}

bool cycles_equal(const WeightedFan& a, const WeightedFan& b)
{
    if (a.fan.ambient_rank != b.fan.ambient_rank || a.fan.dim != b.fan.dim)
        return false;
    if (!same_support(a.fan, b.fan))
        return false;
    if (a.fan.dim == 0)
        return a.weights == b.weights;
    Fan r = common_refinement(a.fan, b.fan);
    WeightedFan ra = refine_weights(a, r);
    WeightedFan rb = refine_weights(b, r);
    return ra.weights == rb.weights;
}

} // namespace tropfan
