#include "adelic/quadreal.hpp"

#include <numeric>
#include <sstream>

namespace adelic {

namespace {

// n = s^2 * m with m squarefree; returns (s, m). Trial division is fine at
// the radicand sizes this library sees (products of small squarefree keys).
std::pair<Int, Int> split_square(const Int& n) {
    Int s = 1, m = 1, rem = n;
    for (Int d = 2; d * d <= rem; ++d) {
        if (rem % d != 0) continue;
        int e = 0;
        while (rem % d == 0) {
            rem /= d;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) s *= d;
        if (e % 2) m *= d;
    }
    m *= rem;
    return {s, m};
}

long to_key(const Int& m) {
    if (!m.fits_slong_p()) throw std::overflow_error("QuadReal: radicand too large");
    return m.get_si();
}

}  // namespace

QuadReal QuadReal::sqrt_of(const Int& n) { return radical_term(Rat(1), n); }

QuadReal QuadReal::radical_term(const Rat& c, const Int& n) {
    if (n < 0) throw std::domain_error("QuadReal: negative radicand");
    QuadReal r;
    if (c == 0 || n == 0) return r;
    auto [s, m] = split_square(n);
    r.set_coeff(to_key(m), c * Rat(s));
    return r;
}

Rat QuadReal::rational_part() const { return coeff(1); }

Rat QuadReal::coeff(long n) const {
    auto it = c_.find(n);
    return it == c_.end() ? Rat(0) : it->second;
}

void QuadReal::set_coeff(long n, const Rat& v) {
    if (v == 0)
        c_.erase(n);
    else
        c_[n] = v;
}

QuadReal QuadReal::operator+(const QuadReal& o) const {
    QuadReal r = *this;
    for (const auto& [n, v] : o.c_) {
        auto it = r.c_.find(n);
        if (it == r.c_.end()) {
            r.c_.emplace(n, v);
        } else {
            it->second += v;
            if (it->second == 0) r.c_.erase(it);
        }
    }
    return r;
}

QuadReal QuadReal::operator-(const QuadReal& o) const { return *this + (-o); }

QuadReal QuadReal::operator-() const {
    QuadReal r = *this;
    for (auto& [n, v] : r.c_) v = -v;
    return r;
}

QuadReal QuadReal::operator*(const QuadReal& o) const {
    QuadReal r;
    for (const auto& [m, cm] : c_)
        for (const auto& [n, cn] : o.c_) {
            // sqrt(m)*sqrt(n) = g*sqrt((m/g)*(n/g)) with g = gcd(m, n);
            // the product of the coprime squarefree parts is squarefree
            long g = std::gcd(m, n);
            long key = (m / g) * (n / g);
            Rat add = cm * cn * Rat(g);
            auto it = r.c_.find(key);
            if (it == r.c_.end()) {
                if (add != 0) r.c_.emplace(key, add);
            } else {
                it->second += add;
                if (it->second == 0) r.c_.erase(it);
            }
        }
    return r;
}

QuadReal QuadReal::mul_rat(const Rat& q) const {
    QuadReal r;
    if (q == 0) return r;
    for (const auto& [n, v] : c_) r.c_.emplace(n, v * q);
    return r;
}

QuadReal QuadReal::div_rat(const Rat& q) const {
    if (q == 0) throw std::domain_error("QuadReal: division by zero");
    return mul_rat(Rat(1) / q);
}

std::string QuadReal::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, v] : c_) {
        if (!first) os << (sgn(v) >= 0 ? " + " : " - ");
        Rat a = (first || sgn(v) >= 0) ? v : Rat(-v);
        if (n == 1) {
            os << rat_to_string(a);
        } else {
            if (a != 1) os << rat_to_string(a) << "*";
            os << "sqrt(" << n << ")";
        }
        first = false;
    }
    return os.str();
}

int quad_sign(const QuadReal& s) {
    if (s.c_.empty()) return 0;
    if (s.c_.size() == 1) {
        // a or a*sqrt(n): sign of the coefficient
        return sgn(s.c_.begin()->second);
    }
    if (s.c_.size() == 2 && s.c_.begin()->first == 1) {
        // a + b*sqrt(n), opposite-signed branches decided by squaring
        const Rat& a = s.c_.begin()->second;
        auto second = std::next(s.c_.begin());
        const Rat& b = second->second;
        long n = second->first;
        if (sgn(a) == sgn(b)) return sgn(a);
        Rat cmp = b * b * Rat(n) - a * a;  // |b*sqrt(n)|^2 - |a|^2
        int c = sgn(cmp);
        if (c == 0) return 0;  // cannot happen for squarefree n > 1, kept for safety
        return c > 0 ? sgn(b) : sgn(a);
    }
    for (mpfr_prec_t prec = 64;; prec *= 2) {
        Interval I = quad_eval(s, prec);
        if (auto sg = I.certified_sign()) return *sg;
        if (prec > (mpfr_prec_t{1} << 24))
            throw std::logic_error("quad_sign: refinement failed to separate from zero");
    }
}

Interval quad_eval(const QuadReal& s, mpfr_prec_t precision) {
    if (precision < 1) throw std::invalid_argument("quad_eval: precision must be >= 1");
    if (s.c_.empty()) return Interval(precision);

    unsigned shift = static_cast<unsigned>(std::min<mpfr_prec_t>(precision, 1 << 20)) - 1;
    Rat target(Int(1), Int(1) << shift);

    for (mpfr_prec_t work = precision + 8;; work *= 2) {
        Interval acc(work);
        for (const auto& [n, v] : s.c_) {
            if (n == 1)
                acc = acc + Interval::from_rat(v, work);
            else
                acc = acc + Interval::sqrt_of(Int(n), work).mul_rat(v);
        }
        if (acc.width() <= target) return acc;
    }
}

double quad_to_double(const QuadReal& s) { return quad_eval(s, 64).mid_d(); }

std::pair<Int, QuadReal> quad_floor_frac(const QuadReal& s) {
    if (s.is_rational()) {
        Int m = rat_floor(s.rational_part());
        return {m, QuadReal(Rat(s.rational_part() - Rat(m)))};
    }
    for (mpfr_prec_t prec = 64;; prec *= 2) {
        Interval I = quad_eval(s, prec);
        Int fl = rat_floor(I.lo_q());
        Int fh = rat_floor(I.hi_q());
        if (fl == fh) return {fl, s - QuadReal(fl)};
        if (fh - fl == 1) {
            // boundary case: decide s >= fh exactly
            Int m = quad_sign(s - QuadReal(fh)) >= 0 ? fh : fl;
            return {m, s - QuadReal(m)};
        }
        // width >= 1: refine
    }
}

std::string quad_to_coeff_string(const QuadReal& s) {
    if (s.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, v] : s.coeffs()) {
        if (!first) os << ";";
        os << n << ":" << rat_to_string(v);
        first = false;
    }
    return os.str();
}

QuadReal quad_from_coeff_string(const std::string& text) {
    QuadReal r;
    if (text.empty() || text == "0") return r;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ';')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("QuadReal: bad coefficient item '" + item + "'");
        long n = std::stol(item.substr(0, colon));
        Rat c = rat_from_string(item.substr(colon + 1));
        r += QuadReal::radical_term(c, Int(n));
    }
    return r;
}

}  // namespace adelic
