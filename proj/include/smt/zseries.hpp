#ifndef SMT_ZSERIES_HPP
#define SMT_ZSERIES_HPP

#include <vector>

#include "smt/rational.hpp"

namespace smt {

/*
 * Dense integer power series on the integer q-grid, used for the deep
 * expansions the Borcherds lift needs (tens of thousands of terms). All
 * pipeline steps are eta-factor or theta passes: addition-only recurrences
 * against pentagonal-number or square sparsity.
 */
using ZVec = std::vector<ZZ>;

// v *= prod_{n>=1}(1 - q^{t n})   (dir = +1)
// v /= prod_{n>=1}(1 - q^{t n})   (dir = -1)
void euler_pass(ZVec& v, long t, int dir);

// v *= theta (dir = +1) or v /= theta (dir = -1), theta = 1 + 2 sum q^{n^2}
void theta_pass(ZVec& v, int dir);

// v *= q^k (k >= 0): shift up, dropping the top coefficients
void shift_up(ZVec& v, long k);

// v += c * w
void axpy(ZVec& v, const ZZ& c, const ZVec& w);

// sum_j a[j] * b[idx - j]
ZZ convolve_at(const ZVec& a, const ZVec& b, long long idx);

}  // namespace smt

#endif
