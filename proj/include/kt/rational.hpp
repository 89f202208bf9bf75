#ifndef KT_RATIONAL_HPP
#define KT_RATIONAL_HPP

#include <gmpxx.h>
#include <string>

namespace kt {

// Exact rational scalar. GMP keeps values canonical (reduced, positive
// denominator) as long as they are produced by arithmetic; values built
// from raw numerator/denominator pairs must be canonicalized once.
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

// "p" or "p/q", q > 0.
inline std::string rat_str(const Rat& r) { return r.get_str(); }

} // namespace kt

#endif
