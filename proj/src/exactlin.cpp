#include "tropfan/exactlin.hpp"

#include <algorithm>
#include <stdexcept>

namespace tropfan {

IntVec make_primitive(const IntVec& v)
{
    Int g = 0;
    for (const Int& x : v)
        g = gcd_int(g, x);
    if (g == 0)
        return v;
    IntVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        w[i] = v[i] / g;
    return w;
}

bool is_primitive(const IntVec& v)
{
    Int g = 0;
    for (const Int& x : v)
        g = gcd_int(g, x);
    return g == 1;
}

IntVec IntMatrix::row(int r) const
{
    IntVec v(cols);
    for (int c = 0; c < cols; ++c)
        v[c] = at(r, c);
    return v;
}

void IntMatrix::set_row(int r, const IntVec& v)
{
    for (int c = 0; c < cols; ++c)
        at(r, c) = v[c];
}

IntMatrix IntMatrix::identity(int n)
{
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, int cols)
{
    IntMatrix m(int(rows.size()), cols);
    for (int r = 0; r < m.rows; ++r) {
        if (int(rows[r].size()) != cols)
            throw std::invalid_argument("from_rows: ragged row");
        m.set_row(r, rows[r]);
    }
    return m;
}

std::vector<IntVec> IntMatrix::to_rows() const
{
    std::vector<IntVec> v;
    v.reserve(rows);
    for (int r = 0; r < rows; ++r)
        v.push_back(row(r));
    return v;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols, rows);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            t.at(c, r) = at(r, c);
    return t;
}

IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y)
{
    if (x.cols != y.rows)
        throw std::invalid_argument("mat_mul: shape mismatch");
    IntMatrix z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Int& v = x.at(i, k);
            if (v == 0)
                continue;
            for (int j = 0; j < y.cols; ++j)
                z.at(i, j) += v * y.at(k, j);
        }
    return z;
}

IntVec apply_matrix(const IntVec& v, const IntMatrix& m)
{
    if (int(v.size()) != m.rows)
        throw std::invalid_argument("apply: shape mismatch");
    IntVec out(m.cols);
    for (int r = 0; r < m.rows; ++r) {
        if (v[r] == 0)
            continue;
        for (int c = 0; c < m.cols; ++c)
            out[c] += v[r] * m.at(r, c);
    }
    return out;
}

Int bareiss_det(const IntMatrix& m)
{
    if (m.rows != m.cols)
        throw std::invalid_argument("bareiss_det: not square");
    int n = m.rows;
    if (n == 0)
        return 1;
    IntMatrix w = m;
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (w.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (w.at(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0)
                return 0;
            for (int c = 0; c < n; ++c)
                std::swap(w.at(k, c), w.at(p, c));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                w.at(i, j) = (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)) / prev;
        prev = w.at(k, k);
    }
    return sign * w.at(n - 1, n - 1);
}

HnfResult hnf(const IntMatrix& m)
{
    HnfResult res{m, IntMatrix::identity(m.rows)};
    IntMatrix& h = res.h;
    IntMatrix& u = res.u;

    auto row_sub = [&](int dst, int src, const Int& q) {
        if (q == 0)
            return;
        for (int c = 0; c < h.cols; ++c)
            h.at(dst, c) -= q * h.at(src, c);
        for (int c = 0; c < u.cols; ++c)
            u.at(dst, c) -= q * u.at(src, c);
    };
    auto row_swap = [&](int i, int j) {
        if (i == j)
            return;
        for (int c = 0; c < h.cols; ++c)
            std::swap(h.at(i, c), h.at(j, c));
        for (int c = 0; c < u.cols; ++c)
            std::swap(u.at(i, c), u.at(j, c));
    };
    auto row_neg = [&](int i) {
        for (int c = 0; c < h.cols; ++c)
            h.at(i, c) = -h.at(i, c);
        for (int c = 0; c < u.cols; ++c)
            u.at(i, c) = -u.at(i, c);
    };

    int r = 0;
    for (int c = 0; c < h.cols && r < h.rows; ++c) {
        // Euclidean descent in column c among rows r..end.
        for (;;) {
            int pivot = -1;
            for (int i = r; i < h.rows; ++i) {
                if (h.at(i, c) == 0)
                    continue;
                if (pivot < 0 || abs(h.at(i, c)) < abs(h.at(pivot, c)))
                    pivot = i;
            }
            if (pivot < 0)
                break;
            row_swap(r, pivot);
            bool clean = true;
            for (int i = r + 1; i < h.rows; ++i) {
                if (h.at(i, c) == 0)
                    continue;
                Int q = floordiv(h.at(i, c), h.at(r, c));
                row_sub(i, r, q);
                if (h.at(i, c) != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (h.at(r, c) == 0)
            continue;
        if (h.at(r, c) < 0)
            row_neg(r);
        for (int i = 0; i < r; ++i)
            row_sub(i, r, floordiv(h.at(i, c), h.at(r, c)));
        ++r;
    }
    return res;
}

SnfResult snf(const IntMatrix& m)
{
    SnfResult res{m, IntMatrix::identity(m.rows), IntMatrix::identity(m.cols)};
    IntMatrix& s = res.s;
    IntMatrix& L = res.left;
    IntMatrix& R = res.right;

    auto row_sub = [&](int dst, int src, const Int& q) {
        if (q == 0)
            return;
        for (int c = 0; c < s.cols; ++c)
            s.at(dst, c) -= q * s.at(src, c);
        for (int c = 0; c < L.cols; ++c)
            L.at(dst, c) -= q * L.at(src, c);
    };
    auto col_sub = [&](int dst, int src, const Int& q) {
        if (q == 0)
            return;
        for (int r = 0; r < s.rows; ++r)
            s.at(r, dst) -= q * s.at(r, src);
        for (int r = 0; r < R.rows; ++r)
            R.at(r, dst) -= q * R.at(r, src);
    };
    auto row_swap = [&](int i, int j) {
        if (i == j)
            return;
        for (int c = 0; c < s.cols; ++c)
            std::swap(s.at(i, c), s.at(j, c));
        for (int c = 0; c < L.cols; ++c)
            std::swap(L.at(i, c), L.at(j, c));
    };
    auto col_swap = [&](int i, int j) {
        if (i == j)
            return;
        for (int r = 0; r < s.rows; ++r)
            std::swap(s.at(r, i), s.at(r, j));
        for (int r = 0; r < R.rows; ++r)
            std::swap(R.at(r, i), R.at(r, j));
    };
    auto row_neg = [&](int i) {
        for (int c = 0; c < s.cols; ++c)
            s.at(i, c) = -s.at(i, c);
        for (int c = 0; c < L.cols; ++c)
            L.at(i, c) = -L.at(i, c);
    };

    int n = std::min(s.rows, s.cols);
    for (int t = 0; t < n; ++t) {
        for (;;) {
            // Locate a minimal-abs nonzero entry in the remaining block.
            int pr = -1, pc = -1;
            for (int i = t; i < s.rows; ++i)
                for (int j = t; j < s.cols; ++j) {
                    if (s.at(i, j) == 0)
                        continue;
                    if (pr < 0 || abs(s.at(i, j)) < abs(s.at(pr, pc))) {
                        pr = i;
                        pc = j;
                    }
                }
            if (pr < 0)
                break;
            row_swap(t, pr);
            col_swap(t, pc);
            bool clean = true;
            for (int i = t + 1; i < s.rows; ++i) {
                Int q = floordiv(s.at(i, t), s.at(t, t));
                row_sub(i, t, q);
                if (s.at(i, t) != 0)
                    clean = false;
            }
            for (int j = t + 1; j < s.cols; ++j) {
                Int q = floordiv(s.at(t, j), s.at(t, t));
                col_sub(j, t, q);
                if (s.at(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            // Divisibility scan over the untouched block.
            bool redo = false;
            for (int i = t + 1; i < s.rows && !redo; ++i)
                for (int j = t + 1; j < s.cols && !redo; ++j)
                    if (s.at(i, j) % s.at(t, t) != 0) {
                        row_sub(t, i, Int(-1)); // add row i to row t
                        redo = true;
                    }
            if (!redo)
                break;
        }
        if (s.at(t, t) < 0)
            row_neg(t);
    }
    return res;
}

LatticeBasis integer_kernel(const IntMatrix& m)
{
    // Left kernel of m^T equals {x : m * x^T = 0}.
    IntMatrix mt = m.transpose();
    HnfResult hr = hnf(mt);
    std::vector<IntVec> ker;
    for (int r = 0; r < hr.h.rows; ++r) {
        bool zero = true;
        for (int c = 0; c < hr.h.cols; ++c)
            if (hr.h.at(r, c) != 0) {
                zero = false;
                break;
            }
        if (zero)
            ker.push_back(hr.u.row(r));
    }
    // Canonicalize.
    IntMatrix kmat = IntMatrix::from_rows(ker, m.cols);
    IntMatrix kh = hnf(kmat).h;
    LatticeBasis out;
    out.ambient_rank = m.cols;
    for (int r = 0; r < kh.rows; ++r) {
        IntVec v = kh.row(r);
        if (!is_zero_vec(v))
            out.vectors.push_back(std::move(v));
    }
    return out;
}

LatticeBasis saturate(const std::vector<IntVec>& vectors, int ambient_rank)
{
    if (vectors.empty())
        return LatticeBasis{ambient_rank, {}};
    IntMatrix m = IntMatrix::from_rows(vectors, ambient_rank);
    LatticeBasis orth = integer_kernel(m);
    if (orth.vectors.empty()) {
        LatticeBasis full;
        full.ambient_rank = ambient_rank;
        for (int i = 0; i < ambient_rank; ++i) {
            IntVec e(ambient_rank);
            e[i] = 1;
            full.vectors.push_back(std::move(e));
        }
        return full;
    }
    return integer_kernel(orth.matrix());
}

std::optional<RatVec> solve_left_rational(const IntMatrix& m, const IntVec& b)
{
    // Solve x * m = b via the HNF of m: with h = u*m, solve y * h = b by
    // forward substitution over the echelon pivots, then x = y * u.
    HnfResult hr = hnf(m);
    const IntMatrix& h = hr.h;
    RatVec y(h.rows, Rat(0));
    RatVec rem(b.size());
    for (size_t i = 0; i < b.size(); ++i)
        rem[i] = b[i];
    int r = 0;
    for (int c = 0; c < h.cols; ++c) {
        if (r < h.rows && h.at(r, c) != 0) {
            Rat coef = rem[c] / Rat(h.at(r, c));
            if (coef != 0)
                for (int cc = 0; cc < h.cols; ++cc)
                    rem[cc] -= coef * Rat(h.at(r, cc));
            y[r] = coef;
            ++r;
        } else if (rem[c] != 0) {
            return std::nullopt;
        }
    }
    for (int c = 0; c < h.cols; ++c)
        if (rem[c] != 0)
            return std::nullopt;
    RatVec x(m.rows, Rat(0));
    for (int i = 0; i < h.rows; ++i) {
        if (y[i] == 0)
            continue;
        for (int j = 0; j < m.rows; ++j)
            x[j] += y[i] * Rat(hr.u.at(i, j));
    }
    return x;
}

std::optional<IntVec> solve_left_rational_as_integer(const IntMatrix& m, const IntVec& b)
{
    auto x = solve_left_rational(m, b);
    if (!x)
        return std::nullopt;
    IntVec out(x->size());
    for (size_t i = 0; i < x->size(); ++i) {
        if (denominator((*x)[i]) != 1)
            return std::nullopt;
        out[i] = numerator((*x)[i]);
    }
    return out;
}

std::optional<IntVec> coordinates_in_basis(const LatticeBasis& basis, const IntVec& v)
{
    if (basis.rank() == 0)
        return is_zero_vec(v) ? std::optional<IntVec>(IntVec{}) : std::nullopt;
    return solve_left_rational_as_integer(basis.matrix(), v);
}

bool in_span(const LatticeBasis& basis, const IntVec& v)
{
    if (basis.rank() == 0)
        return is_zero_vec(v);
    return solve_left_rational(basis.matrix(), v).has_value();
}

LatticeIndexResult lattice_index(const std::vector<IntVec>& sub, const LatticeBasis& ambient)
{
    std::vector<IntVec> coords;
    for (const IntVec& v : sub) {
        auto rc = ambient.rank() == 0
                      ? (is_zero_vec(v) ? std::optional<RatVec>(RatVec{}) : std::nullopt)
                      : solve_left_rational(ambient.matrix(), v);
        if (!rc)
            throw std::invalid_argument("lattice_index: vector outside ambient span");
        IntVec c(rc->size());
        for (size_t i = 0; i < rc->size(); ++i) {
            if (denominator((*rc)[i]) != 1)
                throw std::invalid_argument("lattice_index: vector outside ambient lattice");
            c[i] = numerator((*rc)[i]);
        }
        coords.push_back(std::move(c));
    }
    int k = ambient.rank();
    if (k == 0)
        return LatticeIndexResult{true, 1};
    IntMatrix cm = IntMatrix::from_rows(coords, k);
    SnfResult sr = snf(cm);
    Int prod = 1;
    int nz = 0;
    for (int i = 0; i < std::min(sr.s.rows, sr.s.cols); ++i)
        if (sr.s.at(i, i) != 0) {
            prod *= sr.s.at(i, i);
            ++nz;
        }
    if (nz < k)
        return LatticeIndexResult{false, 0};
    return LatticeIndexResult{true, prod};
}

IntMatrix chart_sending_to_last_unit(const IntVec& v)
{
    int n = int(v.size());
    if (!is_primitive(v))
        throw std::invalid_argument("chart_sending_to_last_unit: vector not primitive");
    IntMatrix m = IntMatrix::from_rows({v}, n);
    SnfResult sr = snf(m); // s = left * v * right = [1 0 ... 0]
    // v * right = left^{-1} * e1 = (+-1) * e1; rows of right^{-1} form a basis
    // whose first row is +-v. Build B with v last, then W = B^{-1} computed
    // by solving (it is unimodular so the inverse is integral).
    // Row i of right^{-1} solves x * right = e_i.
    IntMatrix rinv(n, n);
    for (int i = 0; i < n; ++i) {
        IntVec e(n);
        e[i] = 1;
        auto x = solve_left_rational_as_integer(sr.right, e);
        if (!x)
            throw std::logic_error("chart: right not invertible");
        rinv.set_row(i, *x);
    }
    Int sgn = sr.left.at(0, 0); // +-1
    IntVec first = rinv.row(0);
    for (Int& x : first)
        x *= sgn; // = v itself
    std::vector<IntVec> brows;
    for (int i = 1; i < n; ++i)
        brows.push_back(rinv.row(i));
    brows.push_back(first);
    IntMatrix B = IntMatrix::from_rows(brows, n);
    // W = B^{-1}: v * W = (last row of B) * B^{-1} = e_n.
    IntMatrix W(n, n);
    for (int i = 0; i < n; ++i) {
        IntVec e(n);
        e[i] = 1;
        auto x = solve_left_rational_as_integer(B, e);
        if (!x)
            throw std::logic_error("chart: basis not unimodular");
        W.set_row(i, *x);
    }
    return W;
}

QuotientChart quotient_chart(const LatticeBasis& sub)
{
    int n = sub.ambient_rank;
    int k = sub.rank();
    SnfResult sr = snf(sub.matrix());
    for (int i = 0; i < k; ++i)
        if (sr.s.at(i, i) != 1)
            throw std::invalid_argument("quotient_chart: sublattice not saturated");
    IntMatrix rinv(n, n);
    for (int i = 0; i < n; ++i) {
        IntVec e(n);
        e[i] = 1;
        auto x = solve_left_rational_as_integer(sr.right, e);
        if (!x)
            throw std::logic_error("quotient_chart: right not invertible");
        rinv.set_row(i, *x);
    }
    QuotientChart qc;
    qc.proj = IntMatrix(n, n - k);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n - k; ++c)
            qc.proj.at(r, c) = sr.right.at(r, k + c);
    qc.section = IntMatrix(n - k, n);
    for (int r = 0; r < n - k; ++r)
        for (int c = 0; c < n; ++c)
            qc.section.at(r, c) = rinv.at(k + r, c);
    return qc;
}

IntMatrix dual_section(const LatticeBasis& basis)
{
    int n = basis.ambient_rank;
    int k = basis.rank();
    SnfResult sr = snf(basis.matrix()); // s = left * B * right = [I_k | 0]
    for (int i = 0; i < k; ++i)
        if (sr.s.at(i, i) != 1)
            throw std::invalid_argument("dual_section: basis not saturated");
    // B * (right * [I;0] * left) = left^{-1} [I|0] right^{-1} right [I;0] left = I_k.
    IntMatrix ik0(n, k);
    for (int i = 0; i < k; ++i)
        ik0.at(i, i) = 1;
    return mat_mul(mat_mul(sr.right, ik0), sr.left);
}

IntVec reduce_mod_lattice(const IntVec& v, const IntMatrix& lat)
{
    IntMatrix h = hnf(lat).h;
    IntVec w = v;
    int r = 0;
    for (int c = 0; c < h.cols && r < h.rows; ++c) {
        if (h.at(r, c) == 0)
            continue;
        Int q = floordiv(w[c], h.at(r, c));
        if (q != 0)
            for (int cc = 0; cc < h.cols; ++cc)
                w[cc] -= q * h.at(r, cc);
        ++r;
    }
    return w;
}

bool in_row_lattice(const IntMatrix& lat, const IntVec& v)
{
    return solve_left_rational_as_integer(lat, v).has_value();
}

int mat_rank(const IntMatrix& m)
{
    IntMatrix h = hnf(m).h;
    int r = 0;
    for (int i = 0; i < h.rows; ++i) {
        bool zero = true;
        for (int c = 0; c < h.cols; ++c)
            if (h.at(i, c) != 0) {
                zero = false;
                break;
            }
        if (!zero)
            ++r;
    }
    return r;
}

} // namespace tropfan
