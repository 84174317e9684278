#ifndef SMT_BIGCOMPLEX_HPP
#define SMT_BIGCOMPLEX_HPP

#include <mpfr.h>

#include <string>
#include <utility>

#include "smt/errors.hpp"
#include "smt/rational.hpp"

namespace smt {

/*
 * RAII wrapper over mpfr_t. Binary operations compute at the min of the two
 * operand precisions; precision is in bits and never below 64.
 */
class BigFloat {
public:
    explicit BigFloat(long prec = 64);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    static BigFloat from_long(long v, long prec);
    static BigFloat from_double(double v, long prec);
    static BigFloat from_qq(const QQ& v, long prec);
    static BigFloat from_zz(const ZZ& v, long prec);
    static BigFloat pi(long prec);

    long prec() const { return mpfr_get_prec(v_); }
    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

    // Same value carried at a different working precision.
    BigFloat at_prec(long p) const {
        BigFloat r(p);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string str(size_t digits = 30) const;

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
    BigFloat operator-() const;
    friend bool operator<(const BigFloat& a, const BigFloat& b);
    friend bool operator>(const BigFloat& a, const BigFloat& b);

    friend BigFloat sqrt(const BigFloat& a);
    friend BigFloat abs(const BigFloat& a);
    friend BigFloat exp(const BigFloat& a);
    friend BigFloat log(const BigFloat& a);
    friend BigFloat cos(const BigFloat& a);
    friend BigFloat sin(const BigFloat& a);
    friend BigFloat round(const BigFloat& a);

    // Nearest integer as exact ZZ together with |a - nearest|.
    std::pair<ZZ, BigFloat> round_to_zz() const;

    // 2^-k upper bound estimate: returns floor(log2 |a|), minimal for 0.
    long ilog2() const;

private:
    mpfr_t v_;
};

struct BigComplex {
    BigFloat re, im;

    explicit BigComplex(long prec = 64) : re(prec), im(prec) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

    long prec() const { return std::min(re.prec(), im.prec()); }
    BigComplex at_prec(long p) const { return {re.at_prec(p), im.at_prec(p)}; }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
    BigComplex operator-() const;

    friend BigComplex sqrt(const BigComplex& a);  // principal branch
    friend BigFloat abs(const BigComplex& a);
    friend BigFloat norm2(const BigComplex& a);  // |a|^2

    static BigComplex from_qq(const QQ& re, const QQ& im, long prec);
    static BigComplex i_unit(long prec);

    // exp(2*pi*i*z)
    friend BigComplex exp2pii(const BigComplex& z);

    std::string str(size_t digits = 30) const;
};

BigComplex pow_int(const BigComplex& a, long e);
BigComplex exp2pii(const BigComplex& z);

}  // namespace smt

#endif
