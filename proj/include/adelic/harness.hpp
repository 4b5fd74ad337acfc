#pragma once

#include <functional>
#include <string>
#include <vector>

#include "adelic/brs.hpp"

namespace adelic {

/// Birkhoff discrepancy series S_N = (sum_{n=0}^{N-1} chi(x0 + n alpha)) - N V,
/// held exactly: per-step counts plus the exact volume. Samples carry the
/// exact S_N; numeric emission happens at output time.
struct OrbitSample {
    long N;
    Int count;    // C_N = sum of the first N counts
    QuadReal S;   // C_N - N*V
};

class OrbitSeries {
public:
    long n_max = 0;
    long stride = 1;
    QuadReal volume;
    std::vector<long> counts;  // chi at steps n = 0 .. n_max-1
    std::vector<OrbitSample> samples;
    QuadReal max_abs;  // max |S_N| over 1 <= N <= n_max
    long argmax_N = 0;

    /// exact S_N for any N <= n_max (prefix sum)
    QuadReal S_at(long N) const;
    /// max |S_N| over N in [n_lo, n_hi] (exact comparisons)
    QuadReal max_abs_in(long n_lo, long n_hi) const;
    /// telescoping identity S_{N+1} - S_N = chi_N - V, checkable from storage
    bool telescoping_ok() const;
};

/// Exact orbit series for chi_A of a constructed set. Partition-deterministic:
/// the counts are pure per-index values, so any `threads` >= 1 gives
/// bit-identical output.
OrbitSeries birkhoff_series(const BRSSet& set, const RotationSpec& rot, const AdeleVector& x0,
                            long n_max, long stride, int threads = 1);

/// Series for an arbitrary product set P x prod Z_p^d of volume `volume`
/// (used by the control experiment).
OrbitSeries product_set_series(const Parallelotope& p, const QuadReal& volume,
                               const RotationSpec& rot, const AdeleVector& x0, long n_max,
                               long stride, int threads = 1);

/// Verifies, for all 0 <= n <= n_test, the exact equalities
///   chi_A(n alpha) = chi_B(n D^-1 alpha) = mult * chi_PB(n beta mod Z^d).
/// The three counts are evaluated on independently maintained orbits.
struct ChainReport {
    bool ok = true;
    long n_checked = 0;
    long first_violation_n = -1;
    Int cA, cB, cPB;
    std::string state_dump;
    std::string str() const;
};
ChainReport lemma_chain_check(const VolumeSpec& spec, const RotationSpec& rot, long n_test,
                              ConstructOptions opts = {});

/// Bounded enumeration of the volume set: gamma_j = a/b with |a| <= height,
/// b a Q-smooth positive integer <= height, eta in [eta_min, eta_max]; keeps
/// exact V in [0, v_cap], deduplicated by exact equality, sorted ascending.
struct VolumeEntry {
    std::vector<Rat> gamma;
    Int eta;
    QuadReal V;
};
struct VolumeList {
    std::vector<VolumeEntry> entries;
};
VolumeList enumerate_volumes(const RotationSpec& rot, long height, const Int& eta_min,
                             const Int& eta_max, const Rat& v_cap);

/// Negative-control series: the box [0,c_1) x ... x [0,c_d) x prod Z_p^d with
/// rational c_i, prod c_i = vprime. Growth is reported, never asserted.
OrbitSeries control_series(const Rat& vprime, const RotationSpec& rot, long n_max, long stride,
                           int threads = 1);

/// Finite-window surrogate for the coboundary transfer function:
/// min over 1 <= N <= n_window of sum_{n<N} (chi_A(x + n alpha) - V).
/// Diagnostic only; the window min need not have converged.
QuadReal transfer_estimate(const BRSSet& set, const RotationSpec& rot, const AdeleVector& x,
                           long n_window);

}  // namespace adelic
