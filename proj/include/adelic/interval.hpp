#pragma once

#include <mpfr.h>

#include <optional>
#include <string>

#include "adelic/rational.hpp"

namespace adelic {

/// Closed interval [lo, hi] whose endpoints are arbitrary-precision binary
/// floats (dyadic rationals), maintained with outward rounding so that the
/// exact value is always enclosed. Used for numeric emission and for
/// certifying signs of exact quantities.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 64);
    Interval(const Interval& o);
    Interval(Interval&& o) noexcept;
    Interval& operator=(const Interval& o);
    Interval& operator=(Interval&& o) noexcept;
    ~Interval();

    static Interval from_rat(const Rat& q, mpfr_prec_t prec);
    static Interval from_endpoints(const Rat& lo, const Rat& hi, mpfr_prec_t prec);
    static Interval from_long(long v, mpfr_prec_t prec);
    /// enclosure of sqrt(n), n >= 0 integer
    static Interval sqrt_of(const Int& n, mpfr_prec_t prec);
    static Interval pi(mpfr_prec_t prec);

    mpfr_prec_t prec() const { return prec_; }

    Interval operator+(const Interval& o) const;
    Interval operator-(const Interval& o) const;
    Interval operator*(const Interval& o) const;
    Interval operator-() const;
    Interval mul_rat(const Rat& q) const;
    Interval div_ui(unsigned long n) const;

    /// interval square: never negative
    Interval square() const;
    /// endpoint-wise sqrt; requires lo >= 0
    Interval sqrt() const;
    /// rigorous cosine/sine enclosures (handle interior extrema)
    Interval cos() const;
    Interval sin() const;

    /// exact endpoints as rationals (dyadic)
    Rat lo_q() const;
    Rat hi_q() const;
    Rat width() const { return hi_q() - lo_q(); }
    double mid_d() const;

    /// +1 if lo > 0, -1 if hi < 0, 0 if the interval is exactly [0,0],
    /// nullopt when zero is strictly interior (undecided).
    std::optional<int> certified_sign() const;

    bool contains_zero() const;
    std::string str() const;

private:
    Interval(mpfr_prec_t prec, bool);  // uninitialised-endpoints tag
    mpfr_t lo_, hi_;
    mpfr_prec_t prec_;
};

/// Rectangular complex enclosure.
struct CInterval {
    Interval re, im;

    CInterval(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    CInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

    CInterval operator+(const CInterval& o) const { return {re + o.re, im + o.im}; }
    CInterval operator*(const CInterval& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    CInterval div_ui(unsigned long n) const { return {re.div_ui(n), im.div_ui(n)}; }
    Interval abs() const { return (re.square() + im.square()).sqrt(); }
};

/// e(t) = exp(2*pi*i*t) for an enclosure of t.
CInterval expi(const Interval& t);

}  // namespace adelic
