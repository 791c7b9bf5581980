#pragma once

#include <gmpxx.h>

#include <string>

#include "tvarsl2/errors.hpp"

namespace tvarsl2 {

// Exact arbitrary-precision scalars. mpq_class keeps values canonical
// (lowest terms, positive denominator); no floating point anywhere.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw domain_error("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat(const Int& num, const Int& den) {
    if (den == 0) throw domain_error("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int numerator(const Rat& q) { return q.get_num(); }
inline Int denominator(const Rat& q) { return q.get_den(); }

inline Int to_integer(const Rat& q) {
    if (!is_integer(q)) throw domain_error("expected integer, got " + q.get_str());
    return q.get_num();
}

// floor(p/q) exact
inline Int rat_floor(const Rat& q) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
}

// Serialization is "p/q", or "p" when the denominator is 1.
inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline std::string int_to_string(const Int& n) { return n.get_str(); }

Rat rat_from_string(const std::string& s);
Int int_from_string(const std::string& s);

}  // namespace tvarsl2
