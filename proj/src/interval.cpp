#include "adelic/interval.hpp"

#include <algorithm>
#include <cstdio>

namespace adelic {

Interval::Interval(mpfr_prec_t prec) : prec_(std::max<mpfr_prec_t>(prec, MPFR_PREC_MIN)) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(mpfr_prec_t prec, bool) : prec_(std::max<mpfr_prec_t>(prec, MPFR_PREC_MIN)) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
}

Interval::Interval(const Interval& o) : Interval(o.prec_, true) {
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
    if (this != &o) {
        mpfr_set_prec(lo_, o.prec_);
        mpfr_set_prec(hi_, o.prec_);
        prec_ = o.prec_;
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    std::swap(prec_, o.prec_);
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::from_rat(const Rat& q, mpfr_prec_t prec) {
    Interval r(prec, true);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::from_endpoints(const Rat& lo, const Rat& hi, mpfr_prec_t prec) {
    if (lo > hi) throw std::invalid_argument("Interval::from_endpoints: lo > hi");
    Interval r(prec, true);
    mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::from_long(long v, mpfr_prec_t prec) {
    Interval r(prec, true);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

Interval Interval::sqrt_of(const Int& n, mpfr_prec_t prec) {
    if (n < 0) throw std::domain_error("Interval::sqrt_of: negative argument");
    Interval r(prec, true);
    mpfr_set_z(r.lo_, n.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, n.get_mpz_t(), MPFR_RNDU);
    mpfr_sqrt(r.lo_, r.lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, r.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::pi(mpfr_prec_t prec) {
    Interval r(prec, true);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::operator+(const Interval& o) const {
    Interval r(std::max(prec_, o.prec_), true);
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::operator-(const Interval& o) const {
    Interval r(std::max(prec_, o.prec_), true);
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

Interval Interval::operator-() const {
    Interval r(prec_, true);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval Interval::operator*(const Interval& o) const {
    Interval r(std::max(prec_, o.prec_), true);
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    const mpfr_srcptr a[2] = {lo_, hi_};
    const mpfr_srcptr b[2] = {o.lo_, o.hi_};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_mul(t, a[i], b[j], MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, a[i], b[j], MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

Interval Interval::mul_rat(const Rat& q) const {
    Interval r(prec_, true);
    if (sgn(q) >= 0) {
        mpfr_mul_q(r.lo_, lo_, q.get_mpq_t(), MPFR_RNDD);
        mpfr_mul_q(r.hi_, hi_, q.get_mpq_t(), MPFR_RNDU);
    } else {
        mpfr_mul_q(r.lo_, hi_, q.get_mpq_t(), MPFR_RNDD);
        mpfr_mul_q(r.hi_, lo_, q.get_mpq_t(), MPFR_RNDU);
    }
    return r;
}

Interval Interval::div_ui(unsigned long n) const {
    if (n == 0) throw std::domain_error("Interval::div_ui: zero divisor");
    Interval r(prec_, true);
    mpfr_div_ui(r.lo_, lo_, n, MPFR_RNDD);
    mpfr_div_ui(r.hi_, hi_, n, MPFR_RNDU);
    return r;
}

Interval Interval::square() const {
    Interval r(prec_, true);
    if (mpfr_sgn(lo_) >= 0) {
        mpfr_sqr(r.lo_, lo_, MPFR_RNDD);
        mpfr_sqr(r.hi_, hi_, MPFR_RNDU);
    } else if (mpfr_sgn(hi_) <= 0) {
        mpfr_sqr(r.lo_, hi_, MPFR_RNDD);
        mpfr_sqr(r.hi_, lo_, MPFR_RNDU);
    } else {
        mpfr_set_zero(r.lo_, 1);
        mpfr_t t;
        mpfr_init2(t, prec_);
        mpfr_sqr(r.hi_, lo_, MPFR_RNDU);
        mpfr_sqr(t, hi_, MPFR_RNDU);
        if (mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
        mpfr_clear(t);
    }
    return r;
}

Interval Interval::sqrt() const {
    if (mpfr_sgn(lo_) < 0) throw std::domain_error("Interval::sqrt: negative lower endpoint");
    Interval r(prec_, true);
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

namespace {

// Range of cos or sin over the angle interval [lo, hi]. Endpoint values are
// taken with outward rounding; any extremum point that may fall inside the
// interval widens the corresponding side to +-1. Extrema: cos at k*pi (max
// for even k), sin at (2k+1)*pi/2 (max for even k).
void trig_range(const mpfr_t lo, const mpfr_t hi, mpfr_prec_t prec, bool want_sin, mpfr_t out_lo,
                mpfr_t out_hi) {
    mpfr_t a, b;
    mpfr_init2(a, prec);
    mpfr_init2(b, prec);

    auto eval = [&](const mpfr_t x, mpfr_rnd_t rnd, mpfr_t dst) {
        if (want_sin)
            mpfr_sin(dst, x, rnd);
        else
            mpfr_cos(dst, x, rnd);
    };

    eval(lo, MPFR_RNDD, a);
    eval(hi, MPFR_RNDD, b);
    mpfr_set(out_lo, mpfr_cmp(a, b) <= 0 ? a : b, MPFR_RNDD);
    eval(lo, MPFR_RNDU, a);
    eval(hi, MPFR_RNDU, b);
    mpfr_set(out_hi, mpfr_cmp(a, b) >= 0 ? a : b, MPFR_RNDU);

    const double pi_d = 3.14159265358979323846;
    double frac_lo = mpfr_get_d(lo, MPFR_RNDD) / pi_d - 2.0;
    double frac_hi = mpfr_get_d(hi, MPFR_RNDU) / pi_d + 2.0;
    if (!(frac_hi - frac_lo <= 16.0)) {
        // very wide angle interval: the trivial enclosure
        mpfr_set_si(out_lo, -1, MPFR_RNDD);
        mpfr_set_si(out_hi, 1, MPFR_RNDU);
    } else {
        Interval piI = Interval::pi(prec);
        for (long k = static_cast<long>(frac_lo); k <= static_cast<long>(frac_hi); ++k) {
            // extremum location as an enclosure
            Interval ext = want_sin ? piI.mul_rat(Rat(2 * k + 1, 2)) : piI.mul_rat(Rat(k));
            mpfr_set_q(a, ext.lo_q().get_mpq_t(), MPFR_RNDD);
            mpfr_set_q(b, ext.hi_q().get_mpq_t(), MPFR_RNDU);
            bool maybe_inside = mpfr_cmp(b, lo) >= 0 && mpfr_cmp(a, hi) <= 0;
            if (!maybe_inside) continue;
            bool is_max = ((k % 2) + 2) % 2 == 0;
            if (is_max)
                mpfr_set_si(out_hi, 1, MPFR_RNDU);
            else
                mpfr_set_si(out_lo, -1, MPFR_RNDD);
        }
    }

    if (mpfr_cmp_si(out_lo, -1) < 0) mpfr_set_si(out_lo, -1, MPFR_RNDD);
    if (mpfr_cmp_si(out_hi, 1) > 0) mpfr_set_si(out_hi, 1, MPFR_RNDU);

    mpfr_clear(a);
    mpfr_clear(b);
}

}  // namespace

Interval Interval::cos() const {
    Interval out(prec_, true);
    trig_range(lo_, hi_, prec_, false, out.lo_, out.hi_);
    return out;
}

Interval Interval::sin() const {
    Interval out(prec_, true);
    trig_range(lo_, hi_, prec_, true, out.lo_, out.hi_);
    return out;
}

Rat Interval::lo_q() const {
    Rat q;
    mpfr_get_q(q.get_mpq_t(), lo_);
    q.canonicalize();
    return q;
}

Rat Interval::hi_q() const {
    Rat q;
    mpfr_get_q(q.get_mpq_t(), hi_);
    q.canonicalize();
    return q;
}

double Interval::mid_d() const {
    mpfr_t m;
    mpfr_init2(m, prec_);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_ui(m, m, 2, MPFR_RNDN);
    double d = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return d;
}

std::optional<int> Interval::certified_sign() const {
    if (mpfr_sgn(lo_) > 0) return 1;
    if (mpfr_sgn(hi_) < 0) return -1;
    if (mpfr_zero_p(lo_) && mpfr_zero_p(hi_)) return 0;
    return std::nullopt;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

std::string Interval::str() const {
    char buf[128];
    std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", mpfr_get_d(lo_, MPFR_RNDD),
                  mpfr_get_d(hi_, MPFR_RNDU));
    return buf;
}

CInterval expi(const Interval& t) {
    Interval angle = t * (Interval::pi(t.prec()) + Interval::pi(t.prec()));
    return {angle.cos(), angle.sin()};
}

}  // namespace adelic
