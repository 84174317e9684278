#include "smt/arithfun.hpp"

#include <algorithm>
#include <stdexcept>

#include "smt/errors.hpp"

namespace smt {

ZZ sigma1(long n) { return sigma_k(n, 1); }

ZZ sigma_k(long n, int k) {
    if (n < 1) throw Error("sigma_k: n must be positive");
    ZZ s = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        s += pow_zz(ZZ(d), k);
        long e = n / d;
        if (e != d) s += pow_zz(ZZ(e), k);
    }
    return s;
}

ZZ sigma1_ratio(long n, long D) {
    if (D < 1) throw Error("sigma1_ratio: D must be positive");
    if (n % D) return 0;
    return sigma1(n / D);
}

int kronecker(const ZZ& a, const ZZ& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

int kronecker(long a, long n) { return kronecker(ZZ(a), ZZ(n)); }

QQ hurwitz(long n) {
    if (n < 0) throw Error("hurwitz: n must be nonnegative");
    if (n == 0) return make_q(-1, 12);
    long r = n % 4;
    if (r == 1 || r == 2) return 0;
    // Reduced forms [a,b,c]: -a < b <= a <= c, b >= 0 when a == c.
    QQ h = 0;
    for (long b = (n % 2); b * b <= n / 3; b += 2) {
        long m = (b * b + n);  // = 4ac
        if (m % 4) continue;
        m /= 4;
        for (long a = std::max(b, 1L); a * a <= m; ++a) {
            if (m % a) continue;
            long c = m / a;  // a <= c automatic from a^2 <= m
            // weight by the stabilizer: content-reduced discriminant decides
            long g = gcd_l(gcd_l(a, b), c);
            long d0 = n / (g * g);
            QQ w = 1;
            if ((n % (g * g)) == 0) {
                if (d0 == 3)
                    w = make_q(1, 3);
                else if (d0 == 4)
                    w = make_q(1, 2);
            }
            if (b == 0 || a == b || a == c) {
                h += w;  // only +b representative
            } else {
                h += 2 * w;  // [a,b,c] and [a,-b,c] are distinct classes
            }
        }
    }
    return h;
}

std::vector<long> divisors(long n) {
    if (n < 1) throw Error("divisors: n must be positive");
    std::vector<long> ds;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        ds.push_back(d);
        if (d != n / d) ds.push_back(n / d);
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

bool is_squarefree(long n) {
    if (n < 1) return false;
    for (long p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
    }
    return true;
}

long sigma0(long n) { return (long)divisors(n).size(); }

long ext_gcd(long a, long b, long& x, long& y) {
    if (b == 0) {
        x = (a >= 0) ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    long x1, y1;
    long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

long atkin_lehner_unit(long D, long M) {
    if (M < 1 || D < 1 || M % D || gcd_l(D, M / D) != 1)
        throw Error("atkin_lehner_unit: need D | M with gcd(D, M/D) = 1");
    // Split 2M = A * B, A the part where u ≡ -1, B the part where u ≡ +1.
    // For even D the factor 2 of 2M sticks to D (A = 2D), else to M/D.
    long A, B;
    if (D % 2 == 0) {
        A = 2 * D;
        B = M / D;
    } else {
        A = D;
        B = 2 * (M / D);
    }
    // CRT: u ≡ -1 mod A, u ≡ 1 mod B.
    long x, y;
    long g = ext_gcd(A, B, x, y);
    if (g != 1) throw Error("atkin_lehner_unit: CRT split not coprime");
    long n = 2 * M;
    // u = (-1)*B*y + 1*A*x  mod 2M
    long u = ((-(B % n) * (y % n)) % n + ((A % n) * (x % n)) % n) % n;
    u %= n;
    if (u < 0) u += n;
    return u;
}

}  // namespace smt
