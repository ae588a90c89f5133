#pragma once

#include "tropfan/ints.hpp"

#include <optional>
#include <string>

namespace tropfan {

// Row-major arbitrary-precision integer matrix. Vectors throughout the
// library are rows; a linear map T : Z^n -> Z^m is an n x m matrix acting by
// v |-> v * T, so composition "T then S" is the product T * S.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * size_t(c)) {}

    Int& at(int r, int c) { return a[size_t(r) * cols + c]; }
    const Int& at(int r, int c) const { return a[size_t(r) * cols + c]; }

    IntVec row(int r) const;
    void set_row(int r, const IntVec& v);

    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<IntVec>& rows, int cols);
    std::vector<IntVec> to_rows() const;

    IntMatrix transpose() const;
    bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y);
IntVec apply_matrix(const IntVec& v, const IntMatrix& m); // v * m
Int bareiss_det(const IntMatrix& m);               // fraction-free determinant
int mat_rank(const IntMatrix& m);

struct HnfResult {
    IntMatrix h; // row Hermite normal form: echelon, positive pivots,
                 // entries above each pivot reduced into [0, pivot)
    IntMatrix u; // unimodular, h = u * m
};
HnfResult hnf(const IntMatrix& m);

struct SnfResult {
    IntMatrix s;     // diagonal, d1 | d2 | ..., nonnegative
    IntMatrix left;  // unimodular
    IntMatrix right; // unimodular, s = left * m * right
};
SnfResult snf(const IntMatrix& m);

// A saturated basis of a subgroup of Z^ambient_rank: vectors are independent
// over Q and generate span(vectors) intersected with the full lattice.
struct LatticeBasis {
    int ambient_rank = 0;
    std::vector<IntVec> vectors;

    int rank() const { return int(vectors.size()); }
    IntMatrix matrix() const { return IntMatrix::from_rows(vectors, ambient_rank); }
};

// Saturated basis of {x in Z^cols : m * x^T = 0}, i.e. of the vectors
// annihilated by every row of m. Canonicalized via HNF.
LatticeBasis integer_kernel(const IntMatrix& m);

// Saturated basis of span(vectors) intersected with Z^ambient_rank; a single
// vector yields its primitive generator.
LatticeBasis saturate(const std::vector<IntVec>& vectors, int ambient_rank);

struct LatticeIndexResult {
    bool finite = false;
    Int index = 0; // valid when finite
};

// Index of the subgroup generated by `sub` inside the group generated by
// `ambient`; infinite when the rank drops. Throws if a vector of `sub` lies
// outside the rational span of `ambient`.
LatticeIndexResult lattice_index(const std::vector<IntVec>& sub, const LatticeBasis& ambient);

// Solve x * m = b exactly. The integer variant requires an integral solution.
std::optional<IntVec> solve_left_rational_as_integer(const IntMatrix& m, const IntVec& b);
std::optional<RatVec> solve_left_rational(const IntMatrix& m, const IntVec& b);

// Coordinates of v in a lattice basis (rows of basis.matrix()); nullopt when
// v is outside the subgroup.
std::optional<IntVec> coordinates_in_basis(const LatticeBasis& basis, const IntVec& v);
bool in_span(const LatticeBasis& basis, const IntVec& v);

// Unimodular n x n matrix W with v * W = e_n (v primitive).
IntMatrix chart_sending_to_last_unit(const IntVec& v);

// Quotient chart data for a saturated sublattice L of Z^n: q(v) = v * proj is
// the quotient map Z^n -> Z^(n-k) with kernel L, and section * proj = I.
struct QuotientChart {
    IntMatrix proj;    // n x (n-k)
    IntMatrix section; // (n-k) x n, a right inverse of proj
};
QuotientChart quotient_chart(const LatticeBasis& sub);

// Integer right-inverse of the basis matrix B (k x n, saturated): an n x k
// matrix X with B * X = I_k. Used to lift covectors from N_sigma to Z^n.
IntMatrix dual_section(const LatticeBasis& basis);

// Canonical representative of v modulo the lattice generated by the rows of
// `lat` (reduced against the HNF of lat).
IntVec reduce_mod_lattice(const IntVec& v, const IntMatrix& lat);

// Does v lie in the subgroup generated by the rows of lat?
bool in_row_lattice(const IntMatrix& lat, const IntVec& v);

} // namespace tropfan
