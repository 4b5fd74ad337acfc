#pragma once

#include <map>
#include <string>
#include <utility>

#include "adelic/interval.hpp"
#include "adelic/rational.hpp"

namespace adelic {

/// Exact real scalar in a multi-quadratic field Q(sqrt(m1), ..., sqrt(mk)):
/// a finite map from squarefree positive integers n to rational coefficients,
/// with value sum_n c_n * sqrt(n). Key 1 is the rational part. Closed under
/// ring operations (sqrt(a)*sqrt(b) reduces to a rational multiple of the
/// squarefree part of a*b); equality is coefficientwise because square roots
/// of distinct squarefree integers are linearly independent over Q.
class QuadReal {
public:
    QuadReal() = default;
    QuadReal(long v) { set_coeff(1, Rat(v)); }
    QuadReal(const Int& v) { set_coeff(1, Rat(v)); }
    QuadReal(const Rat& v) { set_coeff(1, v); }

    /// sqrt(n) for n >= 0; square factors are pulled out (sqrt(12) = 2*sqrt(3))
    static QuadReal sqrt_of(const Int& n);
    /// c * sqrt(n), with the same reduction
    static QuadReal radical_term(const Rat& c, const Int& n);

    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return c_.empty() || (c_.size() == 1 && c_.begin()->first == 1); }
    bool is_integer() const { return is_rational() && adelic::is_integer(rational_part()); }

    Rat rational_part() const;
    Rat coeff(long n) const;
    const std::map<long, Rat>& coeffs() const { return c_; }

    QuadReal operator+(const QuadReal& o) const;
    QuadReal operator-(const QuadReal& o) const;
    QuadReal operator*(const QuadReal& o) const;
    QuadReal operator-() const;
    QuadReal& operator+=(const QuadReal& o) { return *this = *this + o; }
    QuadReal& operator-=(const QuadReal& o) { return *this = *this - o; }

    QuadReal mul_rat(const Rat& q) const;
    QuadReal div_rat(const Rat& q) const;

    bool operator==(const QuadReal& o) const { return c_ == o.c_; }
    bool operator!=(const QuadReal& o) const { return !(*this == o); }

    std::string str() const;

private:
    friend int quad_sign(const QuadReal&);
    friend Interval quad_eval(const QuadReal&, mpfr_prec_t);

    void set_coeff(long n, const Rat& v);
    std::map<long, Rat> c_;
};

/// Certified sign: 0 iff structurally zero; otherwise decided by interval
/// refinement starting at 64 bits and doubling (terminates: a nonzero element
/// is bounded away from 0). Two-term elements are decided purely rationally.
int quad_sign(const QuadReal& s);

/// (floor(s), {s}) with {s} in [0,1), decided exactly.
std::pair<Int, QuadReal> quad_floor_frac(const QuadReal& s);

/// Enclosure of width <= 2^(1-precision).
Interval quad_eval(const QuadReal& s, mpfr_prec_t precision);

double quad_to_double(const QuadReal& s);

/// compare helpers built on quad_sign
inline bool quad_less(const QuadReal& a, const QuadReal& b) { return quad_sign(a - b) < 0; }

/// sparse exact serialization "n:num/den;n2:num/den" (deterministic,
/// ascending n); "0" for zero
std::string quad_to_coeff_string(const QuadReal& s);
QuadReal quad_from_coeff_string(const std::string& text);

}  // namespace adelic
