#include "smt/bigcomplex.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace smt {

static long clamp_prec(long p) { return p < 64 ? 64 : p; }

// release the MPFR constant caches when the process exits
static const int mpfr_cache_cleanup = [] {
    std::atexit([] { mpfr_free_cache(); });
    return 0;
}();

BigFloat::BigFloat(long prec) { mpfr_init2(v_, clamp_prec(prec)); mpfr_set_zero(v_, 1); }

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::from_long(long v, long prec) {
    BigFloat r(prec);
    mpfr_set_si(r.v_, v, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::from_double(double v, long prec) {
    BigFloat r(prec);
    mpfr_set_d(r.v_, v, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::from_zz(const ZZ& v, long prec) {
    BigFloat r(prec);
    mpfr_set_z(r.v_, v.get_mpz_t(), MPFR_RNDN);
    return r;
}

BigFloat BigFloat::from_qq(const QQ& v, long prec) {
    BigFloat r(prec);
    mpfr_set_q(r.v_, v.get_mpq_t(), MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pi(long prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

std::string BigFloat::str(size_t digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", (int)digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

#define SMT_BF_BINOP(op, fn)                                              \
    BigFloat operator op(const BigFloat& a, const BigFloat& b) {          \
        BigFloat r(std::min(a.prec(), b.prec()));                         \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                  \
        return r;                                                         \
    }

SMT_BF_BINOP(+, mpfr_add)
SMT_BF_BINOP(-, mpfr_sub)
SMT_BF_BINOP(*, mpfr_mul)
SMT_BF_BINOP(/, mpfr_div)
#undef SMT_BF_BINOP

BigFloat BigFloat::operator-() const {
    BigFloat r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }

#define SMT_BF_UNOP(name, fn)                \
    BigFloat name(const BigFloat& a) {       \
        BigFloat r(a.prec());                \
        fn(r.v_, a.v_, MPFR_RNDN);           \
        return r;                            \
    }

SMT_BF_UNOP(sqrt, mpfr_sqrt)
SMT_BF_UNOP(abs, mpfr_abs)
SMT_BF_UNOP(exp, mpfr_exp)
SMT_BF_UNOP(log, mpfr_log)
SMT_BF_UNOP(cos, mpfr_cos)
SMT_BF_UNOP(sin, mpfr_sin)
#undef SMT_BF_UNOP

BigFloat round(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_round(r.v_, a.v_);
    return r;
}

std::pair<ZZ, BigFloat> BigFloat::round_to_zz() const {
    BigFloat n = smt::round(*this);
    ZZ z;
    mpfr_get_z(z.get_mpz_t(), n.v_, MPFR_RNDN);
    BigFloat resid = smt::abs(*this - n);
    return {z, resid};
}

long BigFloat::ilog2() const {
    if (mpfr_zero_p(v_)) return -mpfr_get_prec(v_) * 4;  // effectively -inf
    return (long)mpfr_get_exp(v_) - 1;
}

BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re + b.re, a.im + b.im};
}
BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re - b.re, a.im - b.im};
}
BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    BigFloat d = norm2(b);
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
BigComplex BigComplex::operator-() const { return {-re, -im}; }

BigFloat norm2(const BigComplex& a) { return a.re * a.re + a.im * a.im; }

BigFloat abs(const BigComplex& a) {
    BigFloat r(a.prec());
    mpfr_hypot(r.raw(), a.re.raw(), a.im.raw(), MPFR_RNDN);
    return r;
}

BigComplex sqrt(const BigComplex& a) {
    // principal branch via the stable half-angle formulas
    long p = a.prec();
    BigFloat m = abs(a);
    BigFloat two = BigFloat::from_long(2, p);
    BigFloat u = sqrt((m + a.re) / two);
    BigFloat v = sqrt((m - a.re) / two);
    if (a.im.sign() < 0) v = -v;
    return {u, v};
}

BigComplex BigComplex::from_qq(const QQ& re, const QQ& im, long prec) {
    return {BigFloat::from_qq(re, prec), BigFloat::from_qq(im, prec)};
}

BigComplex BigComplex::i_unit(long prec) {
    return {BigFloat::from_long(0, prec), BigFloat::from_long(1, prec)};
}

BigComplex exp2pii(const BigComplex& z) {
    long p = z.prec();
    BigFloat twopi = BigFloat::from_long(2, p) * BigFloat::pi(p);
    BigFloat mod = exp(-twopi * z.im);
    BigFloat arg = twopi * z.re;
    return {mod * cos(arg), mod * sin(arg)};
}

BigComplex pow_int(const BigComplex& a, long e) {
    if (e < 0) {
        BigComplex one{BigFloat::from_long(1, a.prec()), BigFloat::from_long(0, a.prec())};
        return one / pow_int(a, -e);
    }
    BigComplex r{BigFloat::from_long(1, a.prec()), BigFloat::from_long(0, a.prec())};
    BigComplex b = a;
    while (e > 0) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

std::string BigComplex::str(size_t digits) const {
    std::ostringstream os;
    os << re.str(digits) << (im.sign() < 0 ? " - " : " + ") << abs(im).str(digits) << "i";
    return os.str();
}

}  // namespace smt
