#include "smt/zseries.hpp"

#include <algorithm>

#include "smt/errors.hpp"

namespace smt {

namespace {

// pentagonal exponents t*k(3k-1)/2, t*k(3k+1)/2 with signs (-1)^k, below n
struct PentTerm {
    long long e;
    int sign;
};

std::vector<PentTerm> pentagonal_terms(long t, long long n) {
    std::vector<PentTerm> ps;
    for (long long k = 1;; ++k) {
        long long e1 = t * (k * (3 * k - 1) / 2);
        long long e2 = t * (k * (3 * k + 1) / 2);
        if (e1 >= n && e2 >= n) break;
        int s = (k % 2) ? -1 : 1;
        if (e1 < n) ps.push_back({e1, s});
        if (e2 < n) ps.push_back({e2, s});
    }
    std::sort(ps.begin(), ps.end(), [](auto& a, auto& b) { return a.e < b.e; });
    return ps;
}

}  // namespace

void euler_pass(ZVec& v, long t, int dir) {
    long long n = (long long)v.size();
    auto ps = pentagonal_terms(t, n);
    if (dir > 0) {
        // y[m] = x[m] + sum_k sign_k x[m - e_k]; descending m keeps x intact
        for (long long m = n - 1; m >= 0; --m) {
            for (auto& p : ps) {
                if (p.e > m) break;
                if (p.sign > 0)
                    v[m] += v[m - p.e];
                else
                    v[m] -= v[m - p.e];
            }
        }
    } else {
        // y solves y * E = x: y[m] = x[m] - sum_k sign_k y[m - e_k]; ascending
        for (long long m = 0; m < n; ++m) {
            for (auto& p : ps) {
                if (p.e > m) break;
                if (p.sign > 0)
                    v[m] -= v[m - p.e];
                else
                    v[m] += v[m - p.e];
            }
        }
    }
}

void theta_pass(ZVec& v, int dir) {
    long long n = (long long)v.size();
    std::vector<long long> sq;
    for (long long k = 1; k * k < n; ++k) sq.push_back(k * k);
    if (dir > 0) {
        for (long long m = n - 1; m >= 0; --m) {
            for (long long e : sq) {
                if (e > m) break;
                ZZ& dst = v[m];
                const ZZ& src = v[m - e];
                dst += src;
                dst += src;
            }
        }
    } else {
        for (long long m = 0; m < n; ++m) {
            for (long long e : sq) {
                if (e > m) break;
                const ZZ& src = v[m - e];
                v[m] -= src;
                v[m] -= src;
            }
        }
    }
}

void shift_up(ZVec& v, long k) {
    if (k <= 0) return;
    if ((size_t)k >= v.size()) {
        std::fill(v.begin(), v.end(), ZZ(0));
        return;
    }
    v.resize(v.size() - k);
    v.insert(v.begin(), (size_t)k, ZZ(0));
}

void axpy(ZVec& v, const ZZ& c, const ZVec& w) {
    size_t n = std::min(v.size(), w.size());
    for (size_t i = 0; i < n; ++i) {
        mpz_addmul(v[i].get_mpz_t(), c.get_mpz_t(), w[i].get_mpz_t());
    }
}

ZZ convolve_at(const ZVec& a, const ZVec& b, long long idx) {
    ZZ s = 0;
    long long lo = std::max<long long>(0, idx - (long long)b.size() + 1);
    long long hi = std::min<long long>((long long)a.size() - 1, idx);
    for (long long j = lo; j <= hi; ++j) {
        mpz_addmul(s.get_mpz_t(), a[j].get_mpz_t(), b[idx - j].get_mpz_t());
    }
    return s;
}

}  // namespace smt
