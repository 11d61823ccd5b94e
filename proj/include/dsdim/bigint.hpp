#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdlib>
#include <string>

#include "dsdim/errors.hpp"

namespace dsdim {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// C(t, k) as the polynomial t(t-1)...(t-k+1)/k!, defined for every integer
// t (negative included); C(t, 0) = 1.
inline Int binom(const Int& t, long k) {
    if (k < 0) return 0;
    Int num = 1;
    for (long u = 0; u < k; ++u) num *= t - u;
    Int den = 1;
    for (long u = 2; u <= k; ++u) den *= u;
    return num / den;  // exact: k! divides any product of k consecutive integers
}

inline Int binom(long t, long k) { return binom(Int(t), k); }

inline bool is_integer(const Rat& r) {
    return boost::multiprecision::denominator(r) == 1;
}

inline Int to_int(const Rat& r) {
    if (!is_integer(r)) throw NonIntegralFit("expected integer, got " + r.str());
    return boost::multiprecision::numerator(r);
}

inline std::string rat_str(const Rat& r) { return r.str(); }

// Global enumeration budget for grid sweeps and lattice counting, read once
// from DSDIM_MAX_CELLS (default 10^7 cells).
inline long long max_cells() {
    static const long long cap = [] {
        if (const char* env = std::getenv("DSDIM_MAX_CELLS")) {
            long long v = std::atoll(env);
            if (v > 0) return v;
        }
        return 10'000'000LL;
    }();
    return cap;
}

inline void charge_cells(long long n) {
    if (n > max_cells())
        throw CellCapExceeded("enumeration of " + std::to_string(n) +
                              " cells exceeds DSDIM_MAX_CELLS=" +
                              std::to_string(max_cells()));
}

}  // namespace dsdim
