#ifndef SMT_QF_HPP
#define SMT_QF_HPP

#include <optional>
#include <utility>
#include <vector>

#include "smt/bigcomplex.hpp"
#include "smt/rational.hpp"

namespace smt {

// Element of SL2(Z); acts on forms by (Q∘g)(x,y) = Q(px+qy, rx+sy).
struct Mat2 {
    ZZ p{1}, q{0}, r{0}, s{1};

    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return {a.p * b.p + a.q * b.r, a.p * b.q + a.q * b.s, a.r * b.p + a.s * b.r,
                a.r * b.q + a.s * b.s};
    }
    Mat2 inv() const { return {s, -q, -r, p}; }  // valid for det = 1
    ZZ det() const { return p * s - q * r; }
    bool operator==(const Mat2&) const = default;
};

/*
 * Integral binary quadratic form [a,b,c] carried with a level M (squarefree);
 * the level-M family requires M | a. disc = b^2 - 4ac; positive definite
 * means a > 0, disc < 0.
 */
struct QuadForm {
    ZZ a, b, c;
    long M{1};

    ZZ disc() const { return b * b - 4 * a * c; }
    bool positive_definite() const { return a > 0 && disc() < 0; }
    ZZ content() const { return gcd_zz(gcd_zz(abs(a), abs(b)), abs(c)); }
    ZZ eval(const ZZ& x, const ZZ& y) const { return a * x * x + b * x * y + c * y * y; }
    bool operator==(const QuadForm&) const = default;
};

QuadForm apply(const QuadForm& Q, const Mat2& g);

// Gauss reduction under SL2(Z); returns the reduced representative R and the
// transform U with Q∘U = R. Reduced: -a < b <= a <= c, b >= 0 if a == c.
std::pair<QuadForm, Mat2> reduce(const QuadForm& Q);

// All automorphs of a positive-definite form in SL2(Z) (2, 4 or 6 elements;
// scaled forms inherit the automorphs of their primitive part).
std::vector<Mat2> automorphs(const QuadForm& Q);

// Some g in Gamma_0(M) with Q1∘g = Q2, if one exists.
std::optional<Mat2> gamma0_equivalent(const QuadForm& Q1, const QuadForm& Q2, long M);

// Order of the stabilizer of Q in Gamma_0(M)/{±1} (1, 2 or 3).
long stabilizer_order(const QuadForm& Q, long M);

// One representative per Gamma_0(M)-class of positive-definite forms [a,b,c]
// with M | a and b^2-4ac = -d, paired with the stabilizer order w.
// Empty when -d is not a square modulo 4M. Includes imprimitive forms.
std::vector<std::pair<QuadForm, long>> class_reps(long d, long M);

/*
 * CM point of a positive-definite form: the root of a z^2 + b z + c with
 * positive imaginary part, exact as (-b + sqrt(disc))/(2a) plus a float
 * approximation at the requested precision.
 */
struct HeegnerPoint {
    QuadForm form;
    ZZ surd_b, surd_a, surd_disc;  // alpha = (-surd_b + sqrt(surd_disc)) / (2 surd_a)
    BigComplex approx;
};

HeegnerPoint heegner_point(const QuadForm& Q, long prec_bits);

/*
 * Data of the generalized genus character chi_Delta at level M:
 * Delta ≠ 1 a discriminant with gcd(Delta, 2M) = 1 and Delta ≡ r^2 mod 4M.
 */
struct GenusCharData {
    long Delta;
    long r;
    long M;

    GenusCharData(long Delta_, long r_, long M_);
};

// chi_Delta on a level-M form (M | a). Returns -1, 0 or 1.
int genus_char(const GenusCharData& chi, const QuadForm& Q);

}  // namespace smt

#endif
