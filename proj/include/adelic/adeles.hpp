#pragma once

#include <vector>

#include "adelic/quadreal.hpp"
#include "adelic/rational.hpp"

namespace adelic {

/// Finite ordered set of distinct primes p1 < p2 < ...
class PrimeSet {
public:
    explicit PrimeSet(std::vector<long> primes);

    size_t size() const { return primes_.size(); }
    long operator[](size_t i) const { return primes_[i]; }
    const std::vector<long>& list() const { return primes_; }
    bool contains(long p) const;

    bool operator==(const PrimeSet& o) const { return primes_ == o.primes_; }
    bool operator!=(const PrimeSet& o) const { return !(*this == o); }

    std::string str() const;

private:
    std::vector<long> primes_;
};

/// true iff the denominator of x factors entirely over Q
bool gamma_check(const Rat& x, const PrimeSet& Q);

/// Element of Gamma_Q = Z[1/p1, 1/p2, ...]
struct GammaScalar {
    GammaScalar(Rat v, PrimeSet q);
    Rat value;
    PrimeSet ambient;
};

struct GammaVector {
    GammaVector(std::vector<Rat> e, PrimeSet q);
    size_t dim() const { return entries.size(); }
    bool is_zero() const;
    std::vector<Rat> entries;
    PrimeSet ambient;
};

/// One coordinate of A_Q: a real part plus one rational p-part per p in Q.
struct AdeleScalar {
    AdeleScalar(QuadReal r, PrimeSet q, std::vector<Rat> p);
    QuadReal real;
    PrimeSet primes;
    std::vector<Rat> parts;  // parts[i] lives in Q_{primes[i]}

    AdeleScalar operator+(const AdeleScalar& o) const;
    AdeleScalar operator-(const AdeleScalar& o) const;
    AdeleScalar mul_rat(const Rat& q) const;
    bool operator==(const AdeleScalar& o) const;
};

struct AdeleVector {
    explicit AdeleVector(std::vector<AdeleScalar> cs);
    size_t dim() const { return coords.size(); }
    const PrimeSet& primes() const { return coords.front().primes; }
    std::vector<AdeleScalar> coords;

    AdeleVector operator+(const AdeleVector& o) const;
    AdeleVector operator-(const AdeleVector& o) const;
    AdeleVector mul_rat(const Rat& q) const;
    /// coordinate j scaled by scales[j] in every place
    AdeleVector scale_coords(const std::vector<Rat>& scales) const;
    bool operator==(const AdeleVector& o) const;
};

AdeleScalar diagonal_embed(const GammaScalar& g);
AdeleVector diagonal_embed(const GammaVector& g);

/// Reduction to the strict fundamental domain [0,1)^d x prod Z_p^d.
/// reduced = x - diagonal_embed(shift), real parts in [0,1), p-parts
/// p-integral; idempotent.
struct ReduceResult {
    AdeleVector reduced;
    GammaVector shift;
};
ReduceResult reduce_mod_gamma(const AdeleVector& x);

/// Exact phase of psi_gamma at x: sum_j (gamma_j x_inf_j - sum_p {gamma_j x_p_j}_p).
QuadReal character_phase(const GammaVector& gamma, const AdeleVector& x);

/// theta from the unique-ergodicity argument; same exact expression as the
/// character phase of alpha.
QuadReal theta(const GammaVector& gamma, const AdeleVector& alpha);

/// psi_gamma(x) as a complex enclosure; the phase is accumulated exactly and
/// reduced mod 1 before the single numeric exponential.
CInterval character_eval(const GammaVector& gamma, const AdeleVector& x, mpfr_prec_t precision);

/// (1/N) sum_{n=1}^N psi_gamma(n*alpha).
/// The direct path iterates the exact phase {n*theta}; the orbit path reduces
/// n*alpha in the fundamental domain and evaluates the character there. Both
/// phase sequences agree exactly (that identity is tested, not assumed).
std::vector<QuadReal> weyl_phases_direct(const GammaVector& gamma, const AdeleVector& alpha, long N);
std::vector<QuadReal> weyl_phases_orbit(const GammaVector& gamma, const AdeleVector& alpha, long N);
CInterval weyl_sum(const GammaVector& gamma, const AdeleVector& alpha, long N, mpfr_prec_t precision);
CInterval weyl_sum_orbit(const GammaVector& gamma, const AdeleVector& alpha, long N,
                         mpfr_prec_t precision);

/// Exact ergodicity test: T_alpha is (uniquely) ergodic iff
/// 1, alpha_inf_1, ..., alpha_inf_d are linearly independent over Q, decided
/// by the rational rank of the irrational coefficient matrix. When dependent,
/// `dependence` is a nonzero integer vector with
/// sum_j dependence[j]*alpha_inf_j = constant (a rational).
struct ErgodicityReport {
    bool ergodic = false;
    long rank = 0;
    std::vector<Int> dependence;
    Rat constant;
    std::string str() const;
};
ErgodicityReport check_ergodic(const AdeleVector& alpha);

/// exact re-verification of a non-ergodicity certificate
bool verify_dependence(const AdeleVector& alpha, const std::vector<Int>& dependence,
                       const Rat& constant);

}  // namespace adelic
