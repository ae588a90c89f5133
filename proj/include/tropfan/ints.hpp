#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace tropfan {

// Exact arithmetic everywhere: integers are arbitrary precision, rationals
// appear only inside Chow rank computations.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Int floordiv(const Int& a, const Int& b)
{
    Int q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0)))
        --q;
    return q;
}

inline Int gcd_int(const Int& a, const Int& b)
{
    return boost::multiprecision::gcd(a, b);
}

inline Int dot(const IntVec& a, const IntVec& b)
{
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline bool is_zero_vec(const IntVec& v)
{
    for (const Int& x : v)
        if (x != 0)
            return false;
    return true;
}

IntVec make_primitive(const IntVec& v);
bool is_primitive(const IntVec& v);

} // namespace tropfan
