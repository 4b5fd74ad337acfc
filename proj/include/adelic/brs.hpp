#pragma once

#include <stdexcept>
#include <vector>

#include "adelic/adeles.hpp"
#include "adelic/intlat.hpp"

namespace adelic {

/// requested volume is negative (not realizable as a BRS volume)
struct NotRepresentable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// rotation fails the linear-independence (ergodicity) hypothesis
struct NonErgodicRotation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RotationSpec {
    static RotationSpec make(AdeleVector a);

    size_t dim() const { return alpha.dim(); }
    const PrimeSet& primes() const { return alpha.primes(); }

    AdeleVector alpha;
    ErgodicityReport ergodicity;
};

struct VolumeSpec {
    VolumeSpec(GammaVector g, Int e) : gamma(std::move(g)), eta(std::move(e)) {}
    GammaVector gamma;
    Int eta;
};

/// delta = product of all |gamma|_p > 1 (the denominator over Q-primes),
/// g = gamma * delta. gamma = 0 gives (1, 0).
struct DenomResult {
    Int delta;
    Int g;
};
DenomResult denominator_of(const GammaScalar& gamma);

/// V = sum_j (gamma_j alpha_inf_j - sum_p {gamma_j alpha_p_j}_p) + eta, exact.
QuadReal volume_of(const VolumeSpec& spec, const AdeleVector& alpha);

/// beta_j = alpha_inf_j/delta_j - sum_p {alpha_p_j/delta_j}_p and the integer
/// eta' with V = sum_j g_j beta_j + eta'. Requires every gamma_j != 0 (zero
/// coordinates are split off by construct_brs); the V identity is asserted.
struct BetaEta {
    std::vector<QuadReal> beta;
    Int eta_prime;
};
BetaEta beta_eta(const VolumeSpec& spec, const AdeleVector& alpha);

/// spanning row = m * beta + z with m integer, z integer vector
struct SpanRecord {
    Int m;
    IntVec z;
};

/// Parallelotope with volume sum g_j beta_j + eta' spanned by rows in
/// Z*beta + Z^d: v1 = G*beta + eta'*a1 and v_i = a_i for i >= 2, where
/// A = unimodular_completion(g) and G = gcd(g). The determinant identity
/// det = g.beta + eta' is exact by multilinearity and is asserted. If the
/// determinant comes out negative (only possible for d = 1 with g < 0) the
/// single row is negated.
struct PBResult {
    std::vector<std::vector<QuadReal>> rows;
    std::vector<SpanRecord> records;
};
PBResult build_PB(const IntVec& g, const Int& eta_prime, const std::vector<QuadReal>& beta);

/// Constructed adelic BRS: A = P_A x prod_p (delta_1 Z_p x ... x delta_d Z_p),
/// with the companion B = P_B x prod_p Z_p^d. Coordinates with gamma_j = 0
/// carry a unit row ([0,1) factor) and delta_j = 1. gamma = 0 entirely gives
/// eta copies of the whole space (mult = eta, unit cube); V = 0 gives the
/// empty set (mult = 0). Invariantly mult * det(P_B) = V and
/// det(P_A) = (prod delta_j) * det(P_B), both exact.
struct BRSSet {
    size_t dim;
    PrimeSet primes;
    IntVec delta;
    IntVec g;
    std::vector<QuadReal> beta;
    Int eta_prime;
    QuadReal volume;
    Int mult;
    std::vector<size_t> zero_coords;
    Parallelotope PB;
    Parallelotope PA;
    std::vector<SpanRecord> span_records;  // for the rows of P_B
};

struct ConstructOptions {
    /// apply exact unimodular size reduction to the P_B block rows; shortens
    /// enumeration boxes without changing det or the Z*beta + Z^d class
    bool reduce_spans = true;
};

BRSSet construct_brs(const VolumeSpec& spec, const RotationSpec& rot, ConstructOptions opts = {});

/// Count of q in Gamma_Q^d with x + q inside P x prod_p (delta_j Z_p), times
/// mult. The p-adic constraints pin q_j to delta_j * (k_j + f_j) with
/// f_j = sum_p {-x_p_j / delta_j}_p and k_j integer; the k box comes from the
/// exact vertex extrema of P.
Int chi_product_set(const Parallelotope& p, const IntVec& delta, const AdeleVector& x,
                    const Int& mult);

/// chi of the constructed set A
Int chi_A(const BRSSet& set, const AdeleVector& x);
/// chi of the companion set B (unit p-adic radii)
Int chi_B(const BRSSet& set, const AdeleVector& x);
/// torus indicator of P_B as a multiset on R^d/Z^d
Int chi_PB(const Parallelotope& pb, const std::vector<QuadReal>& y);

}  // namespace adelic
