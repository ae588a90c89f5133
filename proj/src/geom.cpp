#include "tropfan/geom.hpp"

#include <algorithm>
#include <set>

namespace tropfan {

std::vector<IntVec> extreme_rays_of(const IntMatrix& constraints)
{
    int d = constraints.cols;
    if (d == 0)
        return {};
    if (mat_rank(constraints) != d)
        throw GeomError("extreme_rays_of: cone not pointed");

    // Dedupe constraint rows up to positive scaling.
    std::set<IntVec> rowset;
    for (int r = 0; r < constraints.rows; ++r) {
        IntVec v = constraints.row(r);
        if (!is_zero_vec(v))
            rowset.insert(make_primitive(v));
    }
    std::vector<IntVec> rows(rowset.begin(), rowset.end());
    int m = int(rows.size());
    IntMatrix G = IntMatrix::from_rows(rows, d);

    std::set<IntVec> found;
    if (d == 1) {
        for (int s : {1, -1}) {
            IntVec v{Int(s)};
            bool ok = true;
            for (int r = 0; r < m; ++r)
                if (G.at(r, 0) * v[0] < 0) {
                    ok = false;
                    break;
                }
            if (ok)
                found.insert(v);
        }
        return {found.begin(), found.end()};
    }

    // Every extreme ray is the kernel of some rank-(d-1) subset of the
    // constraint rows; enumerate (d-1)-subsets.
    std::vector<int> idx(d - 1);
    auto test_candidate = [&](const IntVec& v) {
        bool nonneg = true, nonpos = true;
        for (int r = 0; r < m; ++r) {
            Int s = dot(rows[r], v);
            if (s < 0)
                nonneg = false;
            if (s > 0)
                nonpos = false;
        }
        if (nonneg)
            found.insert(v);
        else if (nonpos) {
            IntVec nv(v.size());
            for (size_t i = 0; i < v.size(); ++i)
                nv[i] = -v[i];
            found.insert(nv);
        }
    };

    // Iterative subset enumeration.
    std::vector<int> comb;
    comb.reserve(d - 1);
    auto recurse = [&](auto&& self, int start) -> void {
        if (int(comb.size()) == d - 1) {
            std::vector<IntVec> sub;
            for (int i : comb)
                sub.push_back(rows[i]);
            IntMatrix S = IntMatrix::from_rows(sub, d);
            auto ker = integer_kernel(S);
            if (ker.rank() == 1)
                test_candidate(ker.vectors[0]);
            return;
        }
        for (int i = start; i < m; ++i) {
            comb.push_back(i);
            self(self, i + 1);
            comb.pop_back();
        }
    };
    recurse(recurse, 0);
    return {found.begin(), found.end()};
}

bool ConeGeom::contains(const IntVec& v) const
{
    for (const auto& u : span_normals)
        if (dot(u, v) != 0)
            return false;
    for (const auto& u : facet_normals)
        if (dot(u, v) < 0)
            return false;
    return true;
}

bool ConeGeom::in_relative_interior(const IntVec& v) const
{
    for (const auto& u : span_normals)
        if (dot(u, v) != 0)
            return false;
    for (const auto& u : facet_normals)
        if (dot(u, v) <= 0)
            return false;
    return true;
}

IntVec ConeGeom::interior_point() const
{
    IntVec p(ambient, Int(0));
    for (const auto& r : extreme)
        for (int i = 0; i < ambient; ++i)
            p[i] += r[i];
    return p;
}

ConeGeom make_cone_geom(const std::vector<IntVec>& gens, int ambient)
{
    ConeGeom g;
    g.ambient = ambient;
    g.gens = gens;
    g.span = saturate(gens, ambient);
    g.dim = g.span.rank();
    g.span_normals = integer_kernel(g.span.rank() == 0
                                        ? IntMatrix(0, ambient)
                                        : g.span.matrix())
                         .vectors;
    if (g.dim == 0) {
        for (const auto& v : gens)
            if (!is_zero_vec(v))
                throw GeomError("make_cone_geom: inconsistent span");
        return g;
    }

    // Generators in span coordinates.
    std::vector<IntVec> coords;
    for (const auto& v : gens) {
        if (is_zero_vec(v))
            continue;
        auto c = coordinates_in_basis(g.span, v);
        if (!c)
            throw GeomError("make_cone_geom: generator outside saturated span");
        coords.push_back(*c);
    }
    IntMatrix C = IntMatrix::from_rows(coords, g.dim);

    // Facet normals (in span coordinates) are the extreme rays of the dual
    // cone {u : c . u >= 0 for all generators c}; the dual is pointed since
    // the generators span.
    std::vector<IntVec> dual = extreme_rays_of(C);
    if (mat_rank(IntMatrix::from_rows(dual, g.dim)) != g.dim)
        throw NotStronglyConvexError("cone contains a line");

    // Extreme rays in span coordinates, then back to ambient.
    std::vector<IntVec> ext = extreme_rays_of(IntMatrix::from_rows(dual, g.dim));
    IntMatrix B = g.span.matrix();
    for (const auto& e : ext)
        g.extreme.push_back(apply_matrix(e, B));
    std::sort(g.extreme.begin(), g.extreme.end());

    // Lift facet normals to canonical ambient covectors.
    IntMatrix X = dual_section(g.span); // B * X = I
    IntMatrix Xt = X.transpose();
    IntMatrix ann = IntMatrix::from_rows(g.span_normals, ambient);
    for (const auto& u : dual) {
        IntVec lifted = apply_matrix(u, Xt);
        if (!g.span_normals.empty())
            lifted = reduce_mod_lattice(lifted, ann);
        g.facet_normals.push_back(std::move(lifted));
    }
    std::sort(g.facet_normals.begin(), g.facet_normals.end());
    return g;
}

std::vector<IntVec> intersect_cones(const ConeGeom& a, const ConeGeom& b)
{
    if (a.ambient != b.ambient)
        throw GeomError("intersect_cones: ambient mismatch");
    int n = a.ambient;

    // Restrict to the common span.
    std::vector<IntVec> eqs;
    eqs.insert(eqs.end(), a.span_normals.begin(), a.span_normals.end());
    eqs.insert(eqs.end(), b.span_normals.begin(), b.span_normals.end());
    LatticeBasis S;
    if (eqs.empty()) {
        S.ambient_rank = n;
        for (int i = 0; i < n; ++i) {
            IntVec e(n);
            e[i] = 1;
            S.vectors.push_back(std::move(e));
        }
    } else {
        S = integer_kernel(IntMatrix::from_rows(eqs, n));
    }
    int m = S.rank();
    if (m == 0)
        return {};

    std::vector<IntVec> ineqs;
    auto add_restricted = [&](const std::vector<IntVec>& fs) {
        for (const auto& f : fs) {
            IntVec g(m);
            for (int i = 0; i < m; ++i)
                g[i] = dot(f, S.vectors[i]);
            if (!is_zero_vec(g))
                ineqs.push_back(std::move(g));
        }
    };
    add_restricted(a.facet_normals);
    add_restricted(b.facet_normals);
    if (ineqs.empty())
        throw GeomError("intersect_cones: inputs not strongly convex");

    std::vector<IntVec> rays = extreme_rays_of(IntMatrix::from_rows(ineqs, m));
    IntMatrix B = S.matrix();
    std::vector<IntVec> out;
    for (const auto& r : rays)
        out.push_back(apply_matrix(r, B));
    std::sort(out.begin(), out.end());
    return out;
}

bool cone_contains_cone(const ConeGeom& a, const ConeGeom& b)
{
    for (const auto& v : b.gens)
        if (!a.contains(v))
            return false;
    return true;
}

IntVec positive_functional(const ConeGeom& c)
{
    IntVec u(c.ambient, Int(0));
    for (const auto& f : c.facet_normals)
        for (int i = 0; i < c.ambient; ++i)
            u[i] += f[i];
    return u;
}

namespace {

// Recursive stellar triangulation of a cone into simplicial subcones spanned
// by extreme rays.
void triangulate(const ConeGeom& c, std::vector<std::vector<IntVec>>& out)
{
    if (int(c.extreme.size()) == c.dim) {
        out.push_back(c.extreme);
        return;
    }
    const IntVec& r0 = c.extreme.front();
    for (const auto& f : c.facet_normals) {
        if (dot(f, r0) <= 0)
            continue; // facet contains r0 (or is not offset from it)
        std::vector<IntVec> fg;
        for (const auto& e : c.extreme)
            if (dot(f, e) == 0)
                fg.push_back(e);
        ConeGeom face = make_cone_geom(fg, c.ambient);
        std::vector<std::vector<IntVec>> sub;
        triangulate(face, sub);
        for (auto& s : sub) {
            s.push_back(r0);
            out.push_back(std::move(s));
        }
    }
}

} // namespace

Rat cone_section_volume(const ConeGeom& c, const IntVec& u)
{
    if (c.dim == 0)
        return Rat(0);
    std::vector<std::vector<IntVec>> simplices;
    triangulate(c, simplices);
    Rat total(0);
    for (const auto& simp : simplices) {
        std::vector<IntVec> coords;
        Rat denom(1);
        for (const auto& v : simp) {
            auto cc = coordinates_in_basis(c.span, v);
            if (!cc)
                throw GeomError("cone_section_volume: ray outside span");
            coords.push_back(*cc);
            Int h = dot(u, v);
            if (h <= 0)
                throw GeomError("cone_section_volume: functional not positive");
            denom *= Rat(h);
        }
        Int det = bareiss_det(IntMatrix::from_rows(coords, c.dim));
        Rat vol = Rat(abs(det)) / denom;
        total += vol;
    }
    return total;
}

} // namespace tropfan
