#ifndef SMT_RATIONAL_HPP
#define SMT_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace smt {

// Exact coefficient field of every q-expansion in this library.
using ZZ = mpz_class;
using QQ = mpq_class;

inline QQ make_q(const ZZ& num, const ZZ& den) {
    QQ q(num, den);
    q.canonicalize();
    return q;
}

inline QQ make_q(long num, long den) { return make_q(ZZ(num), ZZ(den)); }

inline bool is_integer(const QQ& q) { return q.get_den() == 1; }

inline ZZ pow_zz(const ZZ& base, unsigned long e) {
    ZZ r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline QQ pow_qq(const QQ& base, long e) {
    if (e >= 0) {
        return QQ(pow_zz(base.get_num(), (unsigned long)e),
                  pow_zz(base.get_den(), (unsigned long)e));
    }
    return QQ(pow_zz(base.get_den(), (unsigned long)(-e)),
              pow_zz(base.get_num(), (unsigned long)(-e)));
}

inline ZZ gcd_zz(const ZZ& a, const ZZ& b) {
    ZZ r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline long gcd_l(long a, long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline long lcm_l(long a, long b) { return a / gcd_l(a, b) * b; }

// Floor of sqrt(n) for n >= 0.
inline ZZ isqrt_zz(const ZZ& n) {
    ZZ r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline long isqrt_l(long n) {
    ZZ r = isqrt_zz(ZZ(n));
    return r.get_si();
}

inline bool is_square_zz(const ZZ& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline std::string to_string(const QQ& q) { return q.get_str(); }
inline std::string to_string(const ZZ& z) { return z.get_str(); }

}  // namespace smt

#endif
