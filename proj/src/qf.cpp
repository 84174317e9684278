#include "smt/qf.hpp"

#include <algorithm>

#include "smt/arithfun.hpp"
#include "smt/errors.hpp"

namespace smt {

QuadForm apply(const QuadForm& Q, const Mat2& g) {
    QuadForm R;
    R.M = Q.M;
    R.a = Q.eval(g.p, g.r);
    R.b = 2 * Q.a * g.p * g.q + Q.b * (g.p * g.s + g.q * g.r) + 2 * Q.c * g.r * g.s;
    R.c = Q.eval(g.q, g.s);
    return R;
}

std::pair<QuadForm, Mat2> reduce(const QuadForm& Q0) {
    if (!Q0.positive_definite())
        throw NotPositiveDefinite("reduce: form [" + Q0.a.get_str() + "," + Q0.b.get_str() +
                                  "," + Q0.c.get_str() + "]");
    QuadForm Q = Q0;
    Mat2 U;
    while (true) {
        // normalize: -a < b <= a  via  b -> b + 2ak
        if (Q.b > Q.a || Q.b <= -Q.a) {
            ZZ k, rem;
            ZZ num = Q.a - Q.b;
            ZZ den = 2 * Q.a;
            mpz_fdiv_q(k.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            Mat2 T{1, k, 0, 1};
            Q = apply(Q, T);
            U = U * T;
        }
        if (Q.a > Q.c) {
            Mat2 S{0, -1, 1, 0};
            Q = apply(Q, S);
            U = U * S;
            continue;
        }
        break;
    }
    if (Q.a == Q.c && Q.b < 0) {
        Mat2 S{0, -1, 1, 0};
        Q = apply(Q, S);
        U = U * S;
    }
    return {Q, U};
}

std::vector<Mat2> automorphs(const QuadForm& Q) {
    if (!Q.positive_definite()) throw NotPositiveDefinite("automorphs");
    ZZ g = Q.content();
    ZZ a0 = Q.a / g, b0 = Q.b / g, c0 = Q.c / g;
    ZZ d0 = 4 * a0 * c0 - b0 * b0;
    std::vector<std::pair<long, long>> tu = {{2, 0}, {-2, 0}};
    if (d0 == 4) {
        tu.push_back({0, 1});
        tu.push_back({0, -1});
    } else if (d0 == 3) {
        for (long t : {1L, -1L})
            for (long u : {1L, -1L}) tu.push_back({t, u});
    }
    std::vector<Mat2> out;
    for (auto& [t, u] : tu) {
        out.push_back(Mat2{(t - b0 * u) / 2, -c0 * u, a0 * u, (t + b0 * u) / 2});
    }
    return out;
}

std::optional<Mat2> gamma0_equivalent(const QuadForm& Q1, const QuadForm& Q2, long M) {
    if (Q1.disc() != Q2.disc()) return std::nullopt;
    auto [R1, U1] = reduce(Q1);
    auto [R2, U2] = reduce(Q2);
    if (!(R1 == R2)) return std::nullopt;
    Mat2 U2i = U2.inv();
    for (const Mat2& A : automorphs(R1)) {
        Mat2 g = U1 * A * U2i;
        if (g.r % M == 0) return g;
    }
    return std::nullopt;
}

long stabilizer_order(const QuadForm& Q, long M) {
    long count = 0;
    for (const Mat2& A : automorphs(Q)) {
        if (A.r % M == 0) ++count;
    }
    return count / 2;  // mod {±1}
}

std::vector<std::pair<QuadForm, long>> class_reps(long d, long M) {
    if (d <= 0) throw InvalidDiscriminant("class_reps: d must be positive");
    long r4 = d % 4;
    if (r4 == 1 || r4 == 2)
        throw InvalidDiscriminant("class_reps: -d must be 0 or 1 mod 4");
    if (M < 1 || !is_squarefree(M)) throw Error("class_reps: M must be squarefree positive");

    // quick admissibility: -d must be a square mod 4M
    bool admissible = false;
    for (long b = 0; b < 2 * M && !admissible; ++b)
        admissible = ((ZZ(b) * b + d) % (4 * M) == 0);
    if (!admissible) return {};

    auto enumerate = [&](long bound) {
        std::vector<QuadForm> reps;
        for (long a = M; a <= bound; a += M) {
            for (long b = -a + 1; b <= a; ++b) {
                ZZ num = ZZ(b) * b + d;
                if (num % (4 * a) != 0) continue;
                QuadForm Q{ZZ(a), ZZ(b), num / (4 * a), M};
                bool known = false;
                for (const QuadForm& R : reps) {
                    // b mod 2M is a Gamma_0(M)-invariant: cheap pre-filter
                    if (((R.b - Q.b) % (2 * M)) != 0) continue;
                    if (gamma0_equivalent(R, Q, M)) {
                        known = true;
                        break;
                    }
                }
                if (!known) reps.push_back(Q);
            }
        }
        return reps;
    };

    // The orbit Im-maximization bound has a primitivity edge case at
    // composite M, so the bound doubles until two consecutive enumerations
    // agree; a silent miss becomes a loud error at the cap.
    long bound = M * (isqrt_l(d / 3) + 1) + M;
    auto reps = enumerate(bound);
    bool stable = false;
    for (int i = 0; i < 5 && !stable; ++i) {
        auto check = enumerate(2 * bound + 4 * M);
        stable = (check.size() == reps.size());
        if (!stable) {
            bound = 2 * bound + 4 * M;
            reps = std::move(check);
        }
    }
    if (!stable)
        throw Error("class_reps: enumeration bound unstable at d=" + std::to_string(d) +
                    " M=" + std::to_string(M));

    std::vector<std::pair<QuadForm, long>> out;
    out.reserve(reps.size());
    for (const QuadForm& Q : reps) out.emplace_back(Q, stabilizer_order(Q, M));
    return out;
}

HeegnerPoint heegner_point(const QuadForm& Q, long prec_bits) {
    if (!Q.positive_definite()) throw NotPositiveDefinite("heegner_point");
    ZZ disc = Q.disc();
    BigFloat d = BigFloat::from_zz(-disc, prec_bits);
    BigFloat two_a = BigFloat::from_zz(2 * Q.a, prec_bits);
    BigComplex approx{BigFloat::from_zz(-Q.b, prec_bits) / two_a, sqrt(d) / two_a};
    return {Q, Q.b, Q.a, disc, approx};
}

GenusCharData::GenusCharData(long Delta_, long r_, long M_) : Delta(Delta_), r(r_), M(M_) {
    if (Delta == 1) throw Error("genus character: Delta must differ from 1");
    long m4 = ((Delta % 4) + 4) % 4;
    if (m4 != 0 && m4 != 1) throw Error("genus character: Delta must be 0 or 1 mod 4");
    if (gcd_l(Delta, 2 * M) != 1) throw Error("genus character: gcd(Delta, 2M) must be 1");
    if (!is_squarefree(Delta < 0 ? -Delta : Delta))
        throw Error("genus character: Delta must be a fundamental discriminant");
    long lhs = ((Delta - r * r) % (4 * M) + 4 * M) % (4 * M);
    if (lhs != 0) throw Error("genus character: Delta must be r^2 mod 4M");
}

int genus_char(const GenusCharData& chi, const QuadForm& Q) {
    long M = chi.M;
    if (Q.a % M != 0) throw Error("genus_char: form must have M | a");
    ZZ disc = Q.disc();  // = b^2 - 4M(a/M)c in the level-split coordinates
    ZZ D(chi.Delta);
    if (disc % D != 0) return 0;
    ZZ ap = Q.a / M;
    ZZ g = gcd_zz(gcd_zz(gcd_zz(abs(ap), abs(Q.b)), abs(Q.c)), abs(D));
    if (g != 1) return 0;
    // (disc/Delta) must be a square modulo 4M
    ZZ quot = disc / D;
    long mod = 4 * M;
    ZZ qm = ((quot % mod) + mod) % mod;
    bool sq = false;
    for (long y = 0; y < mod && !sq; ++y) sq = (ZZ(y) * y - qm) % mod == 0;
    if (!sq) return 0;
    // any represented value coprime to Delta decides the symbol
    long bound = std::labs(chi.Delta) + 2;
    for (long M1 : divisors(M)) {
        long M2 = M / M1;
        QuadForm split{M1 * ap, Q.b, M2 * Q.c, 1};
        for (long x = -bound; x <= bound; ++x) {
            for (long y = -bound; y <= bound; ++y) {
                if (x == 0 && y == 0) continue;
                ZZ n = split.eval(x, y);
                if (gcd_zz(n, abs(D)) == 1) return kronecker(D, n);
            }
        }
    }
    throw NoRepresentableValue(
        "genus_char: no represented value coprime to Delta within |x|,|y| <= " +
        std::to_string(bound));
}

}  // namespace smt
