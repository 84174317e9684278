#ifndef SMT_ARITHFUN_HPP
#define SMT_ARITHFUN_HPP

#include <vector>

#include "smt/rational.hpp"

namespace smt {

// Sum of positive divisors of n (n >= 1).
ZZ sigma1(long n);

// sigma_k for the Eisenstein expansions.
ZZ sigma_k(long n, int k);

// sigma1(n/D) with the convention that the value is 0 when D does not divide n.
ZZ sigma1_ratio(long n, long D);

// Kronecker symbol (a|n), the full extension of the Jacobi symbol.
int kronecker(const ZZ& a, const ZZ& n);
int kronecker(long a, long n);

// Hurwitz class number H(n): weighted count of reduced positive-definite
// forms of discriminant -n (stabilizer weights 1/2, 1/3 at disc -4, -3),
// H(0) = -1/12, and 0 unless n ≡ 0,3 mod 4.
QQ hurwitz(long n);

std::vector<long> divisors(long n);
bool is_squarefree(long n);

// Number of divisors.
long sigma0(long n);

// Atkin-Lehner unit u_D mod 2M for squarefree M and D | M with gcd(D, M/D)=1:
// the unique unit with u ≡ -1 at the (2-adjusted) D-part of 2M and u ≡ +1 at
// the complementary part. W_D acts on L'/L ≅ Z/2M as multiplication by u_D.
long atkin_lehner_unit(long D, long M);

// Extended gcd: g = ax + by.
long ext_gcd(long a, long b, long& x, long& y);

}  // namespace smt

#endif
