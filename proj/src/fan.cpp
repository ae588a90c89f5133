#include "tropfan/fan.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tropfan {

const char* fan_error_name(FanErrorKind k)
{
    switch (k) {
    case FanErrorKind::NonPrimitiveRay: return "NonPrimitiveRay";
    case FanErrorKind::DuplicateRay: return "DuplicateRay";
    case FanErrorKind::UnusedRay: return "UnusedRay";
    case FanErrorKind::OverlappingCones: return "OverlappingCones";
    case FanErrorKind::MissingFace: return "MissingFace";
    case FanErrorKind::NotStronglyConvex: return "NotStronglyConvex";
    case FanErrorKind::SupportMismatch: return "SupportMismatch";
    case FanErrorKind::ConeNotInFan: return "ConeNotInFan";
    case FanErrorKind::PointOutsideSupport: return "PointOutsideSupport";
    case FanErrorKind::ConeImageNotACone: return "ConeImageNotACone";
    case FanErrorKind::BadInput: return "BadInput";
    }
    return "Unknown";
}

int Fan::cone_index(const std::vector<int>& sorted_rays) const
{
    for (size_t i = 0; i < cones.size(); ++i)
        if (cones[i].rays == sorted_rays)
            return int(i);
    return -1;
}

std::vector<int> Fan::cones_of_dim(int k) const
{
    std::vector<int> out;
    for (size_t i = 0; i < cones.size(); ++i)
        if (cones[i].dim == k)
            out.push_back(int(i));
    return out;
}

bool Fan::is_face(int tau, int sigma) const
{
    const auto& t = cones[size_t(tau)].rays;
    const auto& s = cones[size_t(sigma)].rays;
    return std::includes(s.begin(), s.end(), t.begin(), t.end());
}

std::vector<int> Fan::cofaces_of_dim(int tau, int k) const
{
    std::vector<int> out;
    for (size_t i = 0; i < cones.size(); ++i)
        if (cones[i].dim == k && is_face(tau, int(i)))
            out.push_back(int(i));
    return out;
}

std::optional<int> Fan::carrier(const IntVec& v) const
{
    for (size_t i = 0; i < cones.size(); ++i)
        if (geoms[i].in_relative_interior(v))
            return int(i);
    return std::nullopt;
}

std::optional<int> Fan::smallest_containing(const ConeGeom& g) const
{
    auto c = carrier(g.interior_point());
    if (!c)
        return std::nullopt;
    for (const auto& v : g.gens)
        if (!geoms[size_t(*c)].contains(v))
            return std::nullopt;
    return c;
}

namespace {

std::vector<int> ray_indices_of(const std::vector<IntVec>& extreme,
                                const std::map<IntVec, int>& ray_lookup, bool* ok)
{
    std::vector<int> idx;
    *ok = true;
    for (const auto& e : extreme) {
        auto it = ray_lookup.find(e);
        if (it == ray_lookup.end()) {
            *ok = false;
            return {};
        }
        idx.push_back(it->second);
    }
    std::sort(idx.begin(), idx.end());
    return idx;
}

// All faces of a cone as sorted ray-index sets (including itself and the
// origin), via recursive facet descent.
void enumerate_faces(const ConeGeom& g, const std::vector<IntVec>& rays,
                     const std::map<IntVec, int>& ray_lookup,
                     std::map<std::vector<int>, ConeGeom>& out)
{
    bool ok = true;
    std::vector<int> key = ray_indices_of(g.extreme, ray_lookup, &ok);
    if (!ok)
        throw FanError(FanErrorKind::MissingFace,
                       "a face's ray is not a ray of the fan");
    if (out.count(key))
        return;
    out.emplace(key, g);
    if (g.dim == 0)
        return;
    for (const auto& f : g.facet_normals) {
        std::vector<IntVec> sub;
        for (const auto& e : g.extreme)
            if (dot(f, e) == 0)
                sub.push_back(e);
        enumerate_faces(make_cone_geom(sub, g.ambient), rays, ray_lookup, out);
    }
}

} // namespace

Fan build_fan(const std::vector<IntVec>& rays, const std::vector<std::vector<int>>& cone_ray_sets,
              int ambient_rank, const BuildOptions& opts)
{
    std::map<IntVec, int> ray_lookup;
    for (size_t i = 0; i < rays.size(); ++i) {
        if (int(rays[i].size()) != ambient_rank)
            throw FanError(FanErrorKind::BadInput, "ray of wrong length");
        if (is_zero_vec(rays[i]) || !is_primitive(rays[i]))
            throw FanError(FanErrorKind::NonPrimitiveRay, "ray is not a primitive vector");
        if (!ray_lookup.emplace(rays[i], int(i)).second)
            throw FanError(FanErrorKind::DuplicateRay, "duplicate ray");
    }

    std::map<std::vector<int>, ConeGeom> all;
    std::set<std::vector<int>> listed;
    for (const auto& set : cone_ray_sets) {
        std::vector<IntVec> gens;
        for (int i : set) {
            if (i < 0 || i >= int(rays.size()))
                throw FanError(FanErrorKind::BadInput, "cone refers to an unknown ray");
            gens.push_back(rays[size_t(i)]);
        }
        ConeGeom g;
        try {
            g = make_cone_geom(gens, ambient_rank);
        } catch (const NotStronglyConvexError& e) {
            throw FanError(FanErrorKind::NotStronglyConvex, e.what());
        }
        bool ok = true;
        std::vector<int> key = ray_indices_of(g.extreme, ray_lookup, &ok);
        if (!ok)
            throw FanError(FanErrorKind::MissingFace,
                           "extreme ray of a cone is not a listed ray");
        listed.insert(key);
        enumerate_faces(g, rays, ray_lookup, all);
    }
    // The origin cone is always present.
    if (!all.count({}))
        all.emplace(std::vector<int>{}, make_cone_geom({}, ambient_rank));

    if (opts.strict_faces) {
        std::set<std::vector<int>> given(listed);
        given.insert({});
        for (const auto& [key, g] : all)
            if (!given.count(key))
                throw FanError(FanErrorKind::MissingFace, "fan input does not list all faces");
    }

    // Every listed ray must occur in some cone.
    std::set<int> used;
    for (const auto& [key, g] : all)
        for (int i : key)
            used.insert(i);
    for (size_t i = 0; i < rays.size(); ++i)
        if (!used.count(int(i)))
            throw FanError(FanErrorKind::UnusedRay, "ray not used by any cone");

    Fan fan;
    fan.ambient_rank = ambient_rank;
    fan.rays = rays;
    std::vector<std::pair<std::vector<int>, ConeGeom>> sorted(all.begin(), all.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
        if (x.second.dim != y.second.dim)
            return x.second.dim < y.second.dim;
        return x.first < y.first;
    });
    for (auto& [key, g] : sorted) {
        fan.cones.push_back(Cone{key, g.dim});
        fan.geoms.push_back(std::move(g));
    }

    // tau is a face of sigma iff the tight-set closure of tau's rays inside
    // sigma is tau itself.
    auto geometric_face = [&](size_t tau, size_t sigma) {
        const ConeGeom& sg = fan.geoms[sigma];
        std::vector<IntVec> tv;
        for (int r : fan.cones[tau].rays)
            tv.push_back(rays[size_t(r)]);
        std::vector<const IntVec*> tight_normals;
        for (const auto& fn : sg.facet_normals) {
            bool all0 = true;
            for (const auto& v : tv)
                if (dot(fn, v) != 0)
                    all0 = false;
            if (all0)
                tight_normals.push_back(&fn);
        }
        std::vector<IntVec> closure;
        for (const auto& e : sg.extreme) {
            bool all0 = true;
            for (const auto* fn : tight_normals)
                if (dot(*fn, e) != 0)
                    all0 = false;
            if (all0)
                closure.push_back(e);
        }
        std::sort(tv.begin(), tv.end());
        return closure == tv;
    };

    // Pairwise fan axiom: the intersection of two cones is a common face.
    for (size_t i = 0; i < fan.cones.size(); ++i)
        for (size_t j = i + 1; j < fan.cones.size(); ++j) {
            const auto& ri = fan.cones[i].rays;
            const auto& rj = fan.cones[j].rays;
            bool i_in_j = std::includes(rj.begin(), rj.end(), ri.begin(), ri.end());
            bool j_in_i = std::includes(ri.begin(), ri.end(), rj.begin(), rj.end());
            if (i_in_j || j_in_i) {
                if ((i_in_j && !geometric_face(i, j)) || (j_in_i && !geometric_face(j, i)))
                    throw FanError(FanErrorKind::OverlappingCones,
                                   "a cone lies inside another without being a face");
                continue;
            }
            std::vector<IntVec> inter = intersect_cones(fan.geoms[i], fan.geoms[j]);
            std::vector<int> common;
            std::set_intersection(ri.begin(), ri.end(), rj.begin(), rj.end(),
                                  std::back_inserter(common));
            bool ok = true;
            std::vector<int> ikey = ray_indices_of(inter, ray_lookup, &ok);
            if (!ok || !std::includes(common.begin(), common.end(), ikey.begin(), ikey.end()) ||
                fan.cone_index(ikey) < 0)
                throw FanError(FanErrorKind::OverlappingCones,
                               "two cones intersect outside a common face");
        }

    for (size_t i = 0; i < fan.cones.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < fan.cones.size() && !dominated; ++j)
            if (i != j && fan.is_face(int(i), int(j)))
                dominated = true;
        if (!dominated)
            fan.maximal.push_back(int(i));
        fan.dim = std::max(fan.dim, fan.cones[i].dim);
    }
    fan.pure = true;
    for (int m : fan.maximal)
        if (fan.cones[size_t(m)].dim != fan.dim)
            fan.pure = false;
    return fan;
}

Fan build_fan_from_generators(const std::vector<std::vector<IntVec>>& generator_sets, int ambient_rank)
{
    std::map<IntVec, int> ray_lookup;
    std::vector<IntVec> rays;
    std::vector<std::vector<int>> sets;
    for (const auto& gens : generator_sets) {
        ConeGeom g = make_cone_geom(gens, ambient_rank);
        std::vector<int> key;
        for (const auto& e : g.extreme) {
            auto it = ray_lookup.find(e);
            if (it == ray_lookup.end()) {
                it = ray_lookup.emplace(e, int(rays.size())).first;
                rays.push_back(e);
            }
            key.push_back(it->second);
        }
        std::sort(key.begin(), key.end());
        sets.push_back(std::move(key));
    }
    return build_fan(rays, sets, ambient_rank);
}

std::vector<std::pair<int, int>> face_lattice(const Fan& f)
{
    std::vector<std::pair<int, int>> rel;
    for (size_t t = 0; t < f.cones.size(); ++t)
        for (size_t s = 0; s < f.cones.size(); ++s)
            if (f.is_face(int(t), int(s)))
                rel.emplace_back(int(t), int(s));
    return rel;
}

StarFan star_fan(const Fan& f, int sigma)
{
    if (sigma < 0 || sigma >= int(f.cones.size()))
        throw FanError(FanErrorKind::ConeNotInFan, "star_fan: no such cone");
    StarFan st;
    st.sigma = sigma;
    const ConeGeom& sg = f.geom(sigma);
    QuotientChart qc = quotient_chart(sg.span);
    st.chart = qc.proj;
    st.section = qc.section;

    std::vector<int> cofaces;
    for (size_t i = 0; i < f.cones.size(); ++i)
        if (f.is_face(sigma, int(i)))
            cofaces.push_back(int(i));

    std::vector<std::vector<IntVec>> gensets;
    std::vector<int> maxcof;
    for (int c : cofaces) {
        bool is_max = true;
        for (int d : cofaces)
            if (d != c && f.is_face(c, d))
                is_max = false;
        if (!is_max)
            continue;
        maxcof.push_back(c);
        std::vector<IntVec> gens;
        for (int r : f.cones[size_t(c)].rays)
            gens.push_back(apply_matrix(f.rays[size_t(r)], qc.proj));
        gensets.push_back(std::move(gens));
    }
    st.fan = build_fan_from_generators(gensets, f.ambient_rank - sg.dim);

    for (int c : cofaces) {
        std::vector<IntVec> gens;
        for (int r : f.cones[size_t(c)].rays)
            gens.push_back(apply_matrix(f.rays[size_t(r)], qc.proj));
        ConeGeom g = make_cone_geom(gens, st.fan.ambient_rank);
        std::vector<int> key;
        for (const auto& e : g.extreme) {
            int found = -1;
            for (size_t i = 0; i < st.fan.rays.size(); ++i)
                if (st.fan.rays[i] == e) {
                    found = int(i);
                    break;
                }
            if (found < 0)
                throw FanError(FanErrorKind::ConeImageNotACone, "star image ray missing");
            key.push_back(found);
        }
        std::sort(key.begin(), key.end());
        int idx = st.fan.cone_index(key);
        if (idx < 0)
            throw FanError(FanErrorKind::ConeImageNotACone, "star image cone missing");
        st.cone_map.emplace_back(c, idx);
    }
    return st;
}

ProductFan product(const Fan& a, const Fan& b)
{
    int n = a.ambient_rank, m = b.ambient_rank;
    std::vector<IntVec> rays;
    for (const auto& r : a.rays) {
        IntVec v(n + m, Int(0));
        for (int i = 0; i < n; ++i)
            v[i] = r[i];
        rays.push_back(std::move(v));
    }
    for (const auto& r : b.rays) {
        IntVec v(n + m, Int(0));
        for (int i = 0; i < m; ++i)
            v[n + i] = r[i];
        rays.push_back(std::move(v));
    }
    std::vector<std::vector<int>> sets;
    for (int ma : a.maximal)
        for (int mb : b.maximal) {
            std::vector<int> s = a.cones[size_t(ma)].rays;
            for (int r : b.cones[size_t(mb)].rays)
                s.push_back(int(a.rays.size()) + r);
            std::sort(s.begin(), s.end());
            sets.push_back(std::move(s));
        }
    ProductFan pf;
    pf.fan = build_fan(rays, sets, n + m);
    for (size_t ca = 0; ca < a.cones.size(); ++ca)
        for (size_t cb = 0; cb < b.cones.size(); ++cb) {
            std::vector<int> s = a.cones[ca].rays;
            for (int r : b.cones[cb].rays)
                s.push_back(int(a.rays.size()) + r);
            std::sort(s.begin(), s.end());
            int idx = pf.fan.cone_index(s);
            if (idx < 0)
                throw FanError(FanErrorKind::ConeImageNotACone, "product cone missing");
            pf.cone_map[{int(ca), int(cb)}] = idx;
        }
    return pf;
}

bool same_support(const Fan& a, const Fan& b)
{
    if (a.ambient_rank != b.ambient_rank)
        return false;
    if (a.dim == 0 || b.dim == 0)
        return a.dim == b.dim;

    auto covered = [](const Fan& x, const Fan& y) {
        // Every maximal cone of x is exactly tiled by its intersections with
        // the maximal cones of y (exact volume comparison).
        for (int mx : x.maximal) {
            const ConeGeom& cg = x.geom(mx);
            if (cg.dim == 0)
                return false; // mixed with positive-dim maximals: not coverable
            IntVec u = positive_functional(cg);
            Rat target = cone_section_volume(cg, u);
            Rat sum(0);
            std::set<std::vector<IntVec>> seen;
            for (int my : y.maximal) {
                std::vector<IntVec> gens = intersect_cones(cg, y.geom(my));
                if (gens.empty())
                    continue;
                ConeGeom pg = make_cone_geom(gens, x.ambient_rank);
                if (pg.dim != cg.dim)
                    continue;
                if (!seen.insert(gens).second)
                    continue;
                sum += cone_section_volume(pg, u);
            }
            if (sum != target)
                return false;
        }
        return true;
    };
    return covered(a, b) && covered(b, a);
}

Fan common_refinement(const Fan& a, const Fan& b)
{
    if (!same_support(a, b))
        throw FanError(FanErrorKind::SupportMismatch, "common_refinement: supports differ");
    if (a.dim == 0)
        return a;
    std::vector<std::vector<IntVec>> pieces;
    for (int ma : a.maximal)
        for (int mb : b.maximal) {
            std::vector<IntVec> gens = intersect_cones(a.geom(ma), b.geom(mb));
            pieces.push_back(std::move(gens));
        }
    return build_fan_from_generators(pieces, a.ambient_rank);
}

bool is_complete(const Fan& f)
{
    int n = f.ambient_rank;
    if (n == 0)
        return !f.cones.empty();
    if (!f.pure || f.dim != n || f.cones_of_dim(n).empty())
        return false;
    for (int t : f.cones_of_dim(n - 1))
        if (f.cofaces_of_dim(t, n).size() != 2)
            return false;
    return true;
}

bool refines(const Fan& fine, const Fan& coarse)
{
    for (int m : fine.maximal)
        if (!coarse.smallest_containing(fine.geom(m)))
            return false;
    return true;
}

FanClassification classify(const Fan& f)
{
    FanClassification c;
    c.pure = f.pure;
    c.simplicial = true;
    c.unimodular = true;
    c.minimal_lattice = saturate(f.rays, f.ambient_rank);
    for (size_t i = 0; i < f.cones.size(); ++i) {
        const ConeGeom& g = f.geoms[i];
        if (int(g.extreme.size()) != g.dim) {
            c.simplicial = false;
            c.unimodular = false;
            c.non_simplicial_cones.push_back(int(i));
            c.non_unimodular_cones.push_back(int(i));
            continue;
        }
        if (g.dim == 0)
            continue;
        std::vector<IntVec> coords;
        for (const auto& e : g.extreme)
            coords.push_back(*coordinates_in_basis(g.span, e));
        if (abs(bareiss_det(IntMatrix::from_rows(coords, g.dim))) != 1) {
            c.unimodular = false;
            c.non_unimodular_cones.push_back(int(i));
        }
    }
    return c;
}

namespace {

std::vector<IntVec> rays_in_basis(const Fan& f, const LatticeBasis& basis)
{
    std::vector<IntVec> out;
    for (const auto& r : f.rays) {
        auto c = coordinates_in_basis(basis, r);
        if (!c)
            throw FanError(FanErrorKind::BadInput, "ray outside sublattice");
        out.push_back(*c);
    }
    return out;
}

} // namespace

Fan restrict_fan(const Fan& f, const LatticeBasis& sub)
{
    std::vector<IntVec> rays = rays_in_basis(f, sub);
    std::vector<std::vector<int>> sets;
    for (int m : f.maximal)
        sets.push_back(f.cones[size_t(m)].rays);
    return build_fan(rays, sets, sub.rank());
}

Fan map_fan(const Fan& f, const IntMatrix& m)
{
    std::vector<std::vector<IntVec>> gensets;
    for (int mx : f.maximal) {
        std::vector<IntVec> gens;
        for (int r : f.cones[size_t(mx)].rays)
            gens.push_back(apply_matrix(f.rays[size_t(r)], m));
        gensets.push_back(std::move(gens));
    }
    return build_fan_from_generators(gensets, m.cols);
}

Fan subfan(const Fan& f, const std::vector<int>& cone_indices)
{
    std::set<int> used_rays;
    std::vector<std::vector<int>> sets;
    for (int c : cone_indices) {
        sets.push_back(f.cones[size_t(c)].rays);
        for (int r : f.cones[size_t(c)].rays)
            used_rays.insert(r);
    }
    std::vector<IntVec> rays;
    std::map<int, int> remap;
    for (int r : used_rays) {
        remap[r] = int(rays.size());
        rays.push_back(f.rays[size_t(r)]);
    }
    for (auto& s : sets)
        for (int& r : s)
            r = remap[r];
    return build_fan(rays, sets, f.ambient_rank);
}

Fan orthant_fan(int k)
{
    std::vector<IntVec> rays;
    for (int i = 0; i < k; ++i)
        for (int s : {1, -1}) {
            IntVec v(k, Int(0));
            v[i] = s;
            rays.push_back(std::move(v));
        }
    std::vector<std::vector<int>> sets;
    for (int mask = 0; mask < (1 << k); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < k; ++i)
            s.push_back(2 * i + ((mask >> i) & 1));
        std::sort(s.begin(), s.end());
        sets.push_back(std::move(s));
    }
    if (k == 0)
        sets.push_back({});
    return build_fan(rays, sets, k);
}

Fan local_support(const Fan& f, const IntVec& v)
{
    auto c = f.carrier(v);
    if (!c)
        throw FanError(FanErrorKind::PointOutsideSupport, "local_support: point outside |fan|");
    StarFan st = star_fan(f, *c);
    return product(st.fan, orthant_fan(f.cones[size_t(*c)].dim)).fan;
}

Fan stellar_subdivision(const Fan& f, int sigma, const IntVec& new_ray)
{
    if (sigma < 0 || sigma >= int(f.cones.size()) || f.cones[size_t(sigma)].dim < 1)
        throw FanError(FanErrorKind::ConeNotInFan, "stellar_subdivision: bad cone");
    if (!f.geom(sigma).in_relative_interior(new_ray) || !is_primitive(new_ray))
        throw FanError(FanErrorKind::BadInput, "stellar_subdivision: ray not interior-primitive");

    std::vector<std::vector<IntVec>> gensets;
    for (int m : f.maximal) {
        if (!f.is_face(sigma, m)) {
            std::vector<IntVec> gens;
            for (int r : f.cones[size_t(m)].rays)
                gens.push_back(f.rays[size_t(r)]);
            gensets.push_back(std::move(gens));
            continue;
        }
        const ConeGeom& g = f.geom(m);
        const auto& srays = f.cones[size_t(sigma)].rays;
        if (g.dim == f.cones[size_t(sigma)].dim) {
            // sigma itself is maximal: join the new ray with each facet.
            std::vector<IntVec> dummy;
            for (const auto& fn : g.facet_normals) {
                std::vector<IntVec> gens{new_ray};
                for (const auto& e : g.extreme)
                    if (dot(fn, e) == 0)
                        gens.push_back(e);
                gensets.push_back(std::move(gens));
            }
            if (g.dim == 1)
                gensets.push_back({new_ray});
            continue;
        }
        // Facets of m not containing sigma, joined with the new ray.
        for (const auto& fn : g.facet_normals) {
            bool contains_sigma = true;
            for (int r : srays)
                if (dot(fn, f.rays[size_t(r)]) != 0)
                    contains_sigma = false;
            if (contains_sigma)
                continue;
            std::vector<IntVec> gens{new_ray};
            for (const auto& e : g.extreme)
                if (dot(fn, e) == 0)
                    gens.push_back(e);
            gensets.push_back(std::move(gens));
        }
    }
    return build_fan_from_generators(gensets, f.ambient_rank);
}

IsoResult find_isomorphism(const Fan& f, const Fan& g, long budget,
                           const std::vector<Int>* f_weights, const std::vector<Int>* g_weights)
{
    IsoResult res;
    LatticeBasis bf = saturate(f.rays, f.ambient_rank);
    LatticeBasis bg = saturate(g.rays, g.ambient_rank);
    if (bf.rank() != bg.rank())
        return res;
    if (f.rays.size() != g.rays.size())
        return res;
    {
        std::map<int, int> df, dg;
        for (const auto& c : f.cones)
            df[c.dim]++;
        for (const auto& c : g.cones)
            dg[c.dim]++;
        if (df != dg)
            return res;
    }
    int d = bf.rank();
    if (d == 0) {
        FanIsomorphism iso;
        iso.matrix = IntMatrix(0, 0);
        iso.source_basis = bf;
        iso.target_basis = bg;
        iso.cone_bijection.emplace_back(f.cone_index({}), g.cone_index({}));
        res.outcome = IsoOutcome::Found;
        res.iso = std::move(iso);
        return res;
    }

    std::vector<IntVec> fr = rays_in_basis(f, bf);
    std::vector<IntVec> gr = rays_in_basis(g, bg);

    // Deterministic spanning subset of f's rays.
    std::vector<int> pivot;
    {
        std::vector<IntVec> acc;
        for (size_t i = 0; i < fr.size() && int(pivot.size()) < d; ++i) {
            acc.push_back(fr[i]);
            if (mat_rank(IntMatrix::from_rows(acc, d)) == int(acc.size()))
                pivot.push_back(int(i));
            else
                acc.pop_back();
        }
    }
    IntMatrix R(d, d);
    for (int i = 0; i < d; ++i)
        R.set_row(i, fr[size_t(pivot[i])]);

    // Weight lookup per maximal cone key.
    auto weight_of = [](const Fan& fan, const std::vector<Int>* w, int cone) -> const Int* {
        if (!w)
            return nullptr;
        for (size_t i = 0; i < fan.maximal.size(); ++i)
            if (fan.maximal[i] == cone)
                return &(*w)[i];
        return nullptr;
    };

    std::set<std::vector<int>> gcones;
    for (const auto& c : g.cones)
        gcones.insert(c.rays);

    long tried = 0;
    int q = int(gr.size());
    std::vector<int> tuple(d, 0);
    std::vector<bool> usedk(q, false);

    std::optional<FanIsomorphism> found;
    auto attempt = [&](const std::vector<int>& ks) -> bool {
        IntMatrix S(d, d);
        for (int i = 0; i < d; ++i)
            S.set_row(i, gr[size_t(ks[i])]);
        // A solves R * A = S (so pivot ray i maps onto candidate ray i);
        // column j of A solves a * R^T = S-column-j.
        IntMatrix A(d, d);
        IntMatrix Rt = R.transpose();
        for (int j = 0; j < d; ++j) {
            IntVec col(d);
            for (int i = 0; i < d; ++i)
                col[i] = S.at(i, j);
            auto x = solve_left_rational_as_integer(Rt, col);
            if (!x)
                return false;
            for (int i = 0; i < d; ++i)
                A.at(i, j) = (*x)[i];
        }
        if (abs(bareiss_det(A)) != 1)
            return false;
        // Ray bijection.
        std::vector<int> img(fr.size(), -1);
        std::vector<bool> hit(gr.size(), false);
        for (size_t i = 0; i < fr.size(); ++i) {
            IntVec t = apply_matrix(fr[i], A);
            int k = -1;
            for (size_t j = 0; j < gr.size(); ++j)
                if (gr[j] == t) {
                    k = int(j);
                    break;
                }
            if (k < 0 || hit[size_t(k)])
                return false;
            hit[size_t(k)] = true;
            img[i] = k;
        }
        // Cone bijection both ways, with weights when supplied.
        std::vector<std::pair<int, int>> bij;
        for (size_t ci = 0; ci < f.cones.size(); ++ci) {
            std::vector<int> key;
            for (int r : f.cones[ci].rays)
                key.push_back(img[size_t(r)]);
            std::sort(key.begin(), key.end());
            if (!gcones.count(key))
                return false;
            int gi = g.cone_index(key);
            bij.emplace_back(int(ci), gi);
            const Int* wf = weight_of(f, f_weights, int(ci));
            const Int* wg = weight_of(g, g_weights, gi);
            if ((wf == nullptr) != (wg == nullptr))
                return false;
            if (wf && wg && *wf != *wg)
                return false;
        }
        FanIsomorphism iso;
        iso.matrix = A;
        iso.source_basis = bf;
        iso.target_basis = bg;
        iso.cone_bijection = std::move(bij);
        found = std::move(iso);
        return true;
    };

    // Lexicographic enumeration of ordered d-tuples of distinct g-ray indices.
    std::vector<int> ks;
    bool exceeded = false;
    auto rec = [&](auto&& self) -> bool {
        if (int(ks.size()) == d) {
            if (++tried > budget) {
                exceeded = true;
                return true;
            }
            return attempt(ks);
        }
        for (int k = 0; k < q; ++k) {
            if (usedk[size_t(k)])
                continue;
            usedk[size_t(k)] = true;
            ks.push_back(k);
            bool stop = self(self);
            ks.pop_back();
            usedk[size_t(k)] = false;
            if (stop)
                return true;
        }
        return false;
    };
    rec(rec);

    if (found) {
        res.outcome = IsoOutcome::Found;
        res.iso = std::move(found);
    } else if (exceeded) {
        res.outcome = IsoOutcome::BudgetExceeded;
    }
    return res;
}

} // namespace tropfan
