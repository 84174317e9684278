#ifndef SMT_QSERIES_HPP
#define SMT_QSERIES_HPP

#include <iosfwd>
#include <map>
#include <string>

#include "smt/errors.hpp"
#include "smt/rational.hpp"

namespace smt {

/*
 * Exact Laurent series in q^{1/den} with rational coefficients, known modulo
 * q^{trunc/den}. Invariants: every stored exponent numerator e satisfies
 * lowest_exp() <= e < trunc(); zero coefficients are never stored; arithmetic
 * never extends the truncation (the result truncation is the min of the
 * operand truncations, shifted appropriately for products).
 */
class QSeries {
public:
    using Coeffs = std::map<long long, QQ>;

    QSeries() : den_(1), trunc_(0) {}
    QSeries(long den, long long trunc);

    static QSeries zero(long den, long long trunc) { return QSeries(den, trunc); }
    // c * q^{e/den} + O(q^{trunc/den})
    static QSeries monomial(const QQ& c, long long e, long den, long long trunc);
    static QSeries one(long den, long long trunc) { return monomial(1, 0, den, trunc); }

    long den() const { return den_; }
    long long trunc() const { return trunc_; }
    // Lowest known exponent numerator; equals trunc() for the zero series.
    long long lowest_exp() const { return coef_.empty() ? trunc_ : coef_.begin()->first; }
    const Coeffs& coeffs() const { return coef_; }
    bool is_zero() const { return coef_.empty(); }

    // Coefficient of q^{e/den}; throws InsufficientTruncation when e >= trunc.
    QQ at(long long e) const;
    // Coefficient of the integer power q^{k} (k*den must be representable).
    QQ at_q(long long k) const { return at(k * den_); }

    void set(long long e, const QQ& v);
    void add_to(long long e, const QQ& v);

    // Representation with denominator newden (a multiple of den()).
    QSeries with_den(long newden) const;
    // Smallest denominator representation (divide den by gcd of exponents).
    QSeries reduced_den() const;
    // Same coefficients, truncation lowered to new_trunc (numerator units).
    QSeries truncated(long long new_trunc) const;

    // q^{1/den} -> q^{s/den}; exponents and truncation scale by s (s >= 1).
    QSeries scaled_exponents(long s) const;
    // Multiply by q^{e/den}.
    QSeries shifted(long long e) const;

    friend QSeries operator+(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    QSeries operator-() const;
    friend QSeries operator*(const QQ& c, const QSeries& a);
    friend long long first_mismatch(const QSeries& a, const QSeries& b);

    // q d/dq.
    QSeries derivative() const;

    std::string to_text() const;
    static QSeries from_text(const std::string& text);

private:
    long den_;
    long long trunc_;
    Coeffs coef_;

    static void align(QSeries& a, QSeries& b);
};

// a^e by binary powering; negative e via exact inversion of the leading part.
QSeries pow_int(const QSeries& a, long e);
// Arbitrary-precision exponent; exact for two-term bases (1 + c q^n).
QSeries pow_int(const QSeries& a, const ZZ& e);
// 1/a; requires a nonzero leading coefficient below the truncation.
QSeries inverse(const QSeries& a);

// First exponent numerator (on the common denominator) where a and b differ,
// limited to exponents < min common truncation; -1 if none.
long long first_mismatch(const QSeries& a, const QSeries& b);
bool agree_to_truncation(const QSeries& a, const QSeries& b);

std::ostream& operator<<(std::ostream& os, const QSeries& s);

}  // namespace smt

#endif
