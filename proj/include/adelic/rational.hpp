#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace adelic {

using Int = mpz_class;
using Rat = mpq_class;

/// p-adic valuation: finite integer or the +infinity sentinel for 0.
/// Never encoded as a large integer, so ultrametric identities stay exact.
class Valuation {
public:
    static Valuation infinity() { return Valuation(true, 0); }
    static Valuation of(long v) { return Valuation(false, v); }

    bool is_infinite() const { return infinite_; }
    long value() const {
        if (infinite_) throw std::domain_error("Valuation: +infinity has no finite value");
        return v_;
    }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.v_ == b.v_);
    }
    friend bool operator!=(const Valuation& a, const Valuation& b) { return !(a == b); }
    // +infinity compares greater than every finite valuation
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator>=(const Valuation& a, const Valuation& b) { return !(a < b); }

    friend Valuation min(const Valuation& a, const Valuation& b) { return a < b ? a : b; }

    std::string str() const { return infinite_ ? "+inf" : std::to_string(v_); }

private:
    Valuation(bool inf, long v) : infinite_(inf), v_(v) {}
    bool infinite_;
    long v_;
};

bool is_prime(const Int& p);

/// v_p(x); throws on non-prime p; Valuation::infinity() for x = 0.
Valuation padic_val(const Rat& x, const Int& p);

/// |x|_p = p^(-v_p(x)) as an exact rational; 0 for x = 0.
Rat padic_abs(const Rat& x, const Int& p);

/// {x}_p: the sum of negative-index digits of the p-adic expansion of x,
/// as an exact rational in [0,1) with p-power denominator. x - {x}_p is
/// p-integral. Computed by modular inverse, not digit streaming.
Rat padic_frac(const Rat& x, const Int& p);

/// floor_p(x) = x - {x}_p, a p-integral rational.
Rat padic_floor(const Rat& x, const Int& p);

/// Exact rank over Q of a dense rational matrix (fraction-free elimination).
long rational_rank(const std::vector<std::vector<Rat>>& m);

// ---- rational string I/O ("a" or "a/b", exact, never floats) ----

Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& q);

// ---- small helpers ----

inline int sgn(const Rat& q) { return mpq_sgn(q.get_mpq_t()); }
inline int sgn(const Int& z) { return mpz_sgn(z.get_mpz_t()); }

/// floor of a rational as an integer
Int rat_floor(const Rat& q);

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

/// true iff every prime factor of n lies in `primes` (n >= 1)
bool factors_over(const Int& n, const std::vector<long>& primes);

}  // namespace adelic
