#include "doctest.h"

#include "tropfan/exactlin.hpp"

#include <random>

using namespace tropfan;

namespace {

// Independent oracle: fraction-free Gaussian elimination. Computes the rank
// and determinant (when square) without touching the library's hnf path.
struct FfgeResult {
    int rank;
    Int det; // only meaningful for square input
};

FfgeResult ffge(IntMatrix w)
{
    int n = w.rows, m = w.cols;
    Int prev = 1, sign = 1;
    int r = 0;
    for (int c = 0; c < m && r < n; ++c) {
        int p = -1;
        for (int i = r; i < n; ++i)
            if (w.at(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0)
            continue;
        if (p != r) {
            for (int j = 0; j < m; ++j)
                std::swap(w.at(r, j), w.at(p, j));
            sign = -sign;
        }
        for (int i = r + 1; i < n; ++i) {
            for (int j = c + 1; j < m; ++j)
                w.at(i, j) = (w.at(i, j) * w.at(r, c) - w.at(i, c) * w.at(r, j)) / prev;
            w.at(i, c) = 0;
        }
        prev = w.at(r, c);
        ++r;
    }
    Int det = 0;
    if (n == m) {
        if (r < n)
            det = 0;
        else
            det = sign * prev;
    }
    return {r, det};
}

// Oracle: elementary gcd/lcm steps for the invariant factors of a diagonal
// matrix diag(a, b) -> diag(gcd, lcm).
std::pair<Int, Int> gcd_lcm_pair(const Int& a, const Int& b)
{
    Int g = gcd_int(a, b);
    if (g == 0)
        return {0, 0};
    return {g, a / g * b};
}

IntMatrix mk(std::initializer_list<std::initializer_list<long>> rows)
{
    std::vector<IntVec> rs;
    size_t cols = 0;
    for (auto& r : rows) {
        IntVec v;
        for (long x : r)
            v.push_back(Int(x));
        cols = v.size();
        rs.push_back(v);
    }
    return IntMatrix::from_rows(rs, int(cols));
}

bool is_row_hnf(const IntMatrix& h)
{
    int lastpivot = -1;
    for (int r = 0; r < h.rows; ++r) {
        int p = -1;
        for (int c = 0; c < h.cols; ++c)
            if (h.at(r, c) != 0) {
                p = c;
                break;
            }
        if (p < 0) {
            for (int rr = r + 1; rr < h.rows; ++rr)
                for (int c = 0; c < h.cols; ++c)
                    if (h.at(rr, c) != 0)
                        return false;
            return true;
        }
        if (p <= lastpivot)
            return false;
        if (h.at(r, p) <= 0)
            return false;
        for (int rr = 0; rr < r; ++rr)
            if (h.at(rr, p) < 0 || h.at(rr, p) >= h.at(r, p))
                return false;
        lastpivot = p;
    }
    return true;
}

} // namespace

TEST_CASE("hnf identity and zero row")
{
    auto r = hnf(IntMatrix::identity(2));
    CHECK(r.h == IntMatrix::identity(2));
    CHECK(r.u == IntMatrix::identity(2));

    auto z = hnf(mk({{0, 0}}));
    CHECK(z.h == mk({{0, 0}}));
    CHECK(z.u == IntMatrix::identity(1));
}

TEST_CASE("hnf of [[2,6],[0,4]] against ffge oracle")
{
    IntMatrix m = mk({{2, 6}, {0, 4}});
    auto r = hnf(m);
    CHECK(is_row_hnf(r.h));
    CHECK(abs(bareiss_det(r.u)) == 1);
    CHECK(mat_mul(r.u, m) == r.h);
    CHECK(abs(bareiss_det(r.h)) == 8);
    CHECK(abs(ffge(m).det) == 8);
}

TEST_CASE("hnf factorization identity on random matrices")
{
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> dim(1, 5), val(-9, 9);
    for (int trial = 0; trial < 60; ++trial) {
        int n = dim(rng), m = dim(rng);
        IntMatrix a(n, m);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j)
                a.at(i, j) = val(rng);
        auto r = hnf(a);
        CHECK(mat_mul(r.u, a) == r.h);
        CHECK(abs(bareiss_det(r.u)) == 1);
        CHECK(is_row_hnf(r.h));
        CHECK(mat_rank(a) == ffge(a).rank);
    }
}

TEST_CASE("snf identity, diag(2,3), and [[2,4]]")
{
    auto i2 = snf(IntMatrix::identity(2));
    CHECK(i2.s == IntMatrix::identity(2));

    auto d = snf(mk({{2, 0}, {0, 3}}));
    CHECK(d.s.at(0, 0) == 1);
    CHECK(d.s.at(1, 1) == 6);
    auto oracle = gcd_lcm_pair(2, 3);
    CHECK(d.s.at(0, 0) == oracle.first);
    CHECK(d.s.at(1, 1) == oracle.second);
    CHECK(mat_mul(mat_mul(d.left, mk({{2, 0}, {0, 3}})), d.right) == d.s);

    auto g = snf(mk({{2, 4}}));
    CHECK(g.s.at(0, 0) == 2);
}

TEST_CASE("snf invariants on random matrices")
{
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> dim(1, 4), val(-7, 7);
    for (int trial = 0; trial < 50; ++trial) {
        int n = dim(rng), m = dim(rng);
        IntMatrix a(n, m);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j)
                a.at(i, j) = val(rng);
        auto r = snf(a);
        CHECK(mat_mul(mat_mul(r.left, a), r.right) == r.s);
        CHECK(abs(bareiss_det(r.left)) == 1);
        CHECK(abs(bareiss_det(r.right)) == 1);
        Int prev = -1;
        for (int t = 0; t < std::min(n, m); ++t) {
            for (int j = 0; j < m; ++j)
                if (j != t)
                    CHECK(r.s.at(t, j) == 0);
            Int dtt = r.s.at(t, t);
            CHECK(dtt >= 0);
            if (prev >= 0) {
                if (prev == 0)
                    CHECK(dtt == 0);
                else
                    CHECK(dtt % prev == 0);
            }
            prev = dtt;
        }
    }
}

TEST_CASE("integer_kernel basics")
{
    // m = [1,1,1]: rank-2 kernel containing (1,-1,0) and (0,1,-1).
    auto k = integer_kernel(mk({{1, 1, 1}}));
    CHECK(k.rank() == 2);
    CHECK(in_row_lattice(k.matrix(), IntVec{Int(1), Int(-1), Int(0)}));
    CHECK(in_row_lattice(k.matrix(), IntVec{Int(0), Int(1), Int(-1)}));

    auto ke = integer_kernel(IntMatrix::identity(3));
    CHECK(ke.rank() == 0);

    auto k2 = integer_kernel(mk({{2, -2}}));
    REQUIRE(k2.rank() == 1);
    CHECK(k2.vectors[0] == IntVec{Int(1), Int(1)});
}

TEST_CASE("integer_kernel output is saturated (snf oracle)")
{
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> dim(1, 4), val(-6, 6);
    for (int trial = 0; trial < 40; ++trial) {
        int n = dim(rng), m = dim(rng);
        IntMatrix a(n, m);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j)
                a.at(i, j) = val(rng);
        auto k = integer_kernel(a);
        for (const auto& v : k.vectors) {
            IntVec img(n, Int(0));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < m; ++j)
                    img[i] += a.at(i, j) * v[j];
            CHECK(is_zero_vec(img));
        }
        if (k.rank() > 0) {
            auto sr = snf(k.matrix());
            for (int i = 0; i < k.rank(); ++i)
                CHECK(sr.s.at(i, i) == 1);
        }
        CHECK(k.rank() == m - ffge(a.transpose()).rank);
    }
}

TEST_CASE("saturate")
{
    auto s1 = saturate({IntVec{Int(2), Int(3)}}, 2);
    REQUIRE(s1.rank() == 1);
    CHECK(s1.vectors[0] == IntVec{Int(2), Int(3)});

    auto s2 = saturate({IntVec{Int(2), Int(4)}}, 2);
    REQUIRE(s2.rank() == 1);
    CHECK(s2.vectors[0] == IntVec{Int(1), Int(2)});

    auto s3 = saturate({}, 3);
    CHECK(s3.rank() == 0);
    CHECK(s3.ambient_rank == 3);

    // gcd oracle for single vectors.
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> val(-20, 20);
    for (int trial = 0; trial < 30; ++trial) {
        IntVec v{Int(val(rng)), Int(val(rng)), Int(val(rng))};
        if (is_zero_vec(v))
            continue;
        auto s = saturate({v}, 3);
        REQUIRE(s.rank() == 1);
        IntVec p = make_primitive(v);
        bool same = (s.vectors[0] == p);
        IntVec np(3);
        for (int i = 0; i < 3; ++i)
            np[i] = -p[i];
        CHECK((same || s.vectors[0] == np));
    }
}

TEST_CASE("saturation is idempotent and full-rank saturation is Z^n")
{
    auto full = saturate({IntVec{Int(1), Int(0)}, IntVec{Int(3), Int(2)}}, 2);
    CHECK(full.rank() == 2);
    auto sr = snf(full.matrix());
    CHECK(sr.s.at(0, 0) == 1);
    CHECK(sr.s.at(1, 1) == 1);
}

TEST_CASE("lattice_index")
{
    LatticeBasis z1{1, {IntVec{Int(1)}}};
    auto same = lattice_index({IntVec{Int(1)}}, z1);
    CHECK(same.finite);
    CHECK(same.index == 1);

    // Projection of the line {3x=2y}: ray generator (2,3) maps to 2 under the
    // first-coordinate projection.
    auto two = lattice_index({IntVec{Int(2)}}, z1);
    CHECK(two.finite);
    CHECK(two.index == 2);

    LatticeBasis z2{2, {IntVec{Int(1), Int(0)}, IntVec{Int(0), Int(1)}}};
    auto inf = lattice_index({IntVec{Int(1), Int(0)}}, z2);
    CHECK_FALSE(inf.finite);

    CHECK_THROWS(lattice_index({IntVec{Int(1), Int(1)}}, LatticeBasis{2, {IntVec{Int(1), Int(0)}}}));

    // snf oracle: index = product of invariant factors of the coordinate matrix.
    auto idx = lattice_index({IntVec{Int(2), Int(0)}, IntVec{Int(1), Int(3)}}, z2);
    CHECK(idx.finite);
    auto sr = snf(mk({{2, 0}, {1, 3}}));
    CHECK(idx.index == sr.s.at(0, 0) * sr.s.at(1, 1));
    CHECK(idx.index == 6);
}

TEST_CASE("quotient chart and dual section")
{
    LatticeBasis sub = saturate({IntVec{Int(2), Int(3), Int(0)}}, 3);
    auto qc = quotient_chart(sub);
    CHECK(qc.proj.rows == 3);
    CHECK(qc.proj.cols == 2);
    // Kernel of the projection is exactly the sublattice.
    CHECK(is_zero_vec(apply_matrix(sub.vectors[0], qc.proj)));
    // Section is a right inverse.
    CHECK(mat_mul(qc.section, qc.proj) == IntMatrix::identity(2));

    auto ds = dual_section(sub);
    IntMatrix prod = mat_mul(sub.matrix(), ds);
    CHECK(prod == IntMatrix::identity(1));
}

TEST_CASE("chart_sending_to_last_unit")
{
    IntVec v{Int(2), Int(3)};
    auto W = chart_sending_to_last_unit(v);
    CHECK(abs(bareiss_det(W)) == 1);
    CHECK(apply_matrix(v, W) == IntVec{Int(0), Int(1)});

    IntVec w{Int(0), Int(0), Int(1)};
    auto W3 = chart_sending_to_last_unit(w);
    CHECK(abs(bareiss_det(W3)) == 1);
    CHECK(apply_matrix(w, W3) == IntVec{Int(0), Int(0), Int(1)});
}

TEST_CASE("reduce_mod_lattice is a canonical representative")
{
    IntMatrix lat = mk({{2, 0}, {0, 3}});
    IntVec v{Int(5), Int(-4)};
    IntVec r = reduce_mod_lattice(v, lat);
    CHECK(r == IntVec{Int(1), Int(2)});
    IntVec diff{v[0] - r[0], v[1] - r[1]};
    CHECK(in_row_lattice(lat, diff));
}
