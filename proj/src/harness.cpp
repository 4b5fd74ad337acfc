#include "adelic/harness.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

namespace adelic {

QuadReal OrbitSeries::S_at(long N) const {
    if (N < 0 || N > n_max) throw std::out_of_range("OrbitSeries::S_at");
    Int c = 0;
    for (long n = 0; n < N; ++n) c += counts[static_cast<size_t>(n)];
    return QuadReal(c) - volume.mul_rat(Rat(N));
}

QuadReal OrbitSeries::max_abs_in(long n_lo, long n_hi) const {
    n_lo = std::max(n_lo, 1L);
    n_hi = std::min(n_hi, n_max);
    if (n_lo > n_hi) return QuadReal();
    Int c = 0;
    for (long n = 0; n < n_lo - 1; ++n) c += counts[static_cast<size_t>(n)];
    QuadReal best;
    QuadReal S = QuadReal(c) - volume.mul_rat(Rat(n_lo - 1));
    for (long N = n_lo; N <= n_hi; ++N) {
        S += QuadReal(counts[static_cast<size_t>(N - 1)]) - volume;
        QuadReal a = quad_sign(S) >= 0 ? S : -S;
        if (quad_sign(a - best) > 0) best = a;
    }
    return best;
}

bool OrbitSeries::telescoping_ok() const {
    // S_{N+1} - S_N = chi_N - V by construction of the stored counts; verify
    // against the sampled exact values
    for (const OrbitSample& s : samples) {
        Int c = 0;
        for (long n = 0; n < s.N; ++n) c += counts[static_cast<size_t>(n)];
        if (c != s.count) return false;
        if (s.S != QuadReal(c) - volume.mul_rat(Rat(s.N))) return false;
    }
    return true;
}

namespace {

// counts[n] = chi(x0 + n alpha) for n in [n_begin, n_end), computed from a
// fresh exact orbit start so ranges are independent
void orbit_counts(const std::function<Int(const AdeleVector&)>& chi, const RotationSpec& rot,
                  const AdeleVector& x0, long n_begin, long n_end, std::vector<long>& counts) {
    if (n_begin >= n_end) return;
    AdeleVector x = x0 + rot.alpha.mul_rat(Rat(n_begin));
    x = reduce_mod_gamma(x).reduced;
    for (long n = n_begin; n < n_end; ++n) {
        counts[static_cast<size_t>(n)] = static_cast<long>(chi(x).get_si());
        if (n + 1 < n_end) x = reduce_mod_gamma(x + rot.alpha).reduced;
    }
}

OrbitSeries series_driver(const std::function<Int(const AdeleVector&)>& chi, const QuadReal& volume,
                          const RotationSpec& rot, const AdeleVector& x0, long n_max, long stride,
                          int threads) {
    if (n_max < 0) throw std::invalid_argument("series: n_max must be >= 0");
    if (stride < 1) stride = 1;
    if (threads < 1) threads = 1;

    OrbitSeries s;
    s.n_max = n_max;
    s.stride = stride;
    s.volume = volume;
    s.counts.assign(static_cast<size_t>(n_max), 0);

    if (n_max > 0) {
        if (threads == 1 || n_max < 2 * threads) {
            orbit_counts(chi, rot, x0, 0, n_max, s.counts);
        } else {
            std::vector<std::thread> pool;
            long chunk = (n_max + threads - 1) / threads;
            for (int t = 0; t < threads; ++t) {
                long b = t * chunk, e = std::min<long>(n_max, b + chunk);
                pool.emplace_back([&, b, e] { orbit_counts(chi, rot, x0, b, e, s.counts); });
            }
            for (auto& th : pool) th.join();
        }
    }

    Int c = 0;
    QuadReal S;
    for (long N = 1; N <= n_max; ++N) {
        c += s.counts[static_cast<size_t>(N - 1)];
        S += QuadReal(s.counts[static_cast<size_t>(N - 1)]) - volume;
        QuadReal a = quad_sign(S) >= 0 ? S : -S;
        if (quad_sign(a - s.max_abs) > 0) {
            s.max_abs = a;
            s.argmax_N = N;
        }
        if (N % stride == 0 || N == n_max) s.samples.push_back({N, c, S});
    }
    return s;
}

}  // namespace

OrbitSeries birkhoff_series(const BRSSet& set, const RotationSpec& rot, const AdeleVector& x0,
                            long n_max, long stride, int threads) {
    return series_driver([&set](const AdeleVector& x) { return chi_A(set, x); }, set.volume, rot,
                         x0, n_max, stride, threads);
}

OrbitSeries product_set_series(const Parallelotope& p, const QuadReal& volume,
                               const RotationSpec& rot, const AdeleVector& x0, long n_max,
                               long stride, int threads) {
    IntVec ones(p.dim(), Int(1));
    return series_driver(
        [&p, &ones](const AdeleVector& x) { return chi_product_set(p, ones, x, Int(1)); }, volume,
        rot, x0, n_max, stride, threads);
}

ChainReport lemma_chain_check(const VolumeSpec& spec, const RotationSpec& rot, long n_test,
                              ConstructOptions opts) {
    BRSSet set = construct_brs(spec, rot, opts);
    const size_t d = rot.dim();

    // D^-1 alpha scales coordinate j by 1/delta_j in every place
    std::vector<Rat> inv_delta(d);
    for (size_t j = 0; j < d; ++j) inv_delta[j] = Rat(Int(1), set.delta[j]);
    AdeleVector alpha_scaled = rot.alpha.scale_coords(inv_delta);

    ChainReport rep;
    AdeleVector x = rot.alpha;           // alpha-orbit, advanced after use
    AdeleVector u = alpha_scaled;        // D^-1 alpha orbit
    std::vector<QuadReal> y(d);          // beta-orbit on R^d/Z^d

    auto record_failure = [&](long n, const Int& a, const Int& b, const Int& pb) {
        rep.ok = false;
        rep.first_violation_n = n;
        rep.cA = a;
        rep.cB = b;
        rep.cPB = pb;
        std::ostringstream os;
        os << "n=" << n << ": chi_A=" << a.get_str() << " chi_B=" << b.get_str()
           << " mult*chi_PB=" << pb.get_str() << "\n";
        os << "  beta-orbit point: (";
        for (size_t j = 0; j < d; ++j) os << (j ? ", " : "") << y[j].str();
        os << ")\n  V = " << set.volume.str() << ", eta' = " << set.eta_prime.get_str();
        rep.state_dump = os.str();
    };

    for (long n = 0; n <= n_test; ++n) {
        Int cA, cB, cPB;
        if (n == 0) {
            std::vector<AdeleScalar> zero_coords_v;
            std::vector<Rat> zeros(rot.primes().size(), Rat(0));
            for (size_t j = 0; j < d; ++j)
                zero_coords_v.emplace_back(QuadReal(), rot.primes(), zeros);
            AdeleVector zero(std::move(zero_coords_v));
            cA = chi_A(set, zero);
            cB = chi_B(set, zero);
            cPB = chi_PB(set.PB, std::vector<QuadReal>(d)) * set.mult;
        } else {
            AdeleVector xr = reduce_mod_gamma(x).reduced;
            AdeleVector ur = reduce_mod_gamma(u).reduced;
            cA = chi_A(set, xr);
            cB = chi_B(set, ur);
            cPB = chi_PB(set.PB, y) * set.mult;
            if (n < n_test) {
                x = xr + rot.alpha;
                u = ur + alpha_scaled;
            }
        }
        rep.n_checked = n;
        if (!(cA == cB && cB == cPB)) {
            record_failure(n, cA, cB, cPB);
            return rep;
        }
        // advance the beta orbit to n+1 (mod Z^d)
        for (size_t j = 0; j < d; ++j) y[j] = quad_floor_frac(y[j] + set.beta[j]).second;
    }
    return rep;
}

std::string ChainReport::str() const {
    std::ostringstream os;
    if (ok)
        os << "lemma chain: exact equality for all n <= " << n_checked;
    else
        os << "lemma chain VIOLATION at n = " << first_violation_n << "\n" << state_dump;
    return os.str();
}

namespace {

// positive Q-smooth integers <= bound
std::vector<Int> smooth_denominators(const PrimeSet& Q, long bound) {
    std::vector<Int> out{Int(1)};
    for (size_t i = 0; i < Q.size(); ++i) {
        size_t current = out.size();
        for (size_t k = 0; k < current; ++k) {
            Int v = out[k] * Q[i];
            while (v <= bound) {
                out.push_back(v);
                v *= Q[i];
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

VolumeList enumerate_volumes(const RotationSpec& rot, long height, const Int& eta_min,
                             const Int& eta_max, const Rat& v_cap) {
    if (height < 0) throw std::invalid_argument("enumerate_volumes: height must be >= 0");
    const size_t d = rot.dim();
    const PrimeSet& Q = rot.primes();

    std::vector<Rat> candidates;
    for (const Int& b : smooth_denominators(Q, std::max<long>(height, 1)))
        for (Int a = -height; a <= height; ++a) {
            Rat q(a, b);
            q.canonicalize();
            if (q.get_den() == b || (a == 0 && b == 1)) candidates.push_back(q);
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    if (height == 0) candidates = {Rat(0)};

    double work = 1;
    for (size_t j = 0; j < d; ++j) work *= static_cast<double>(candidates.size());
    if (work > 2e7) throw std::invalid_argument("enumerate_volumes: search space too large");

    VolumeList list;
    std::vector<size_t> idx(d, 0);
    QuadReal cap{v_cap};
    while (true) {
        std::vector<Rat> gamma(d);
        for (size_t j = 0; j < d; ++j) gamma[j] = candidates[idx[j]];
        GammaVector gv(gamma, Q);
        QuadReal base = character_phase(gv, rot.alpha);
        for (Int eta = eta_min; eta <= eta_max; ++eta) {
            QuadReal V = base + QuadReal(eta);
            if (quad_sign(V) < 0) continue;
            if (quad_sign(V - cap) > 0) continue;
            list.entries.push_back({gamma, eta, V});
        }

        size_t j = 0;
        while (j < d) {
            if (++idx[j] < candidates.size()) break;
            idx[j] = 0;
            ++j;
        }
        if (j == d) break;
    }

    std::sort(list.entries.begin(), list.entries.end(),
              [](const VolumeEntry& a, const VolumeEntry& b) { return quad_less(a.V, b.V); });
    list.entries.erase(std::unique(list.entries.begin(), list.entries.end(),
                                   [](const VolumeEntry& a, const VolumeEntry& b) {
                                       return a.V == b.V;
                                   }),
                       list.entries.end());
    return list;
}

OrbitSeries control_series(const Rat& vprime, const RotationSpec& rot, long n_max, long stride,
                           int threads) {
    if (sgn(vprime) <= 0) throw std::invalid_argument("control_series: volume must be positive");
    const size_t d = rot.dim();

    // rational box edges with exact product vprime: approximate the d-th root
    // for the first d-1 edges, then let the last edge absorb the remainder
    std::vector<Rat> edges(d);
    Rat rest = vprime;
    for (size_t j = 0; j + 1 < d; ++j) {
        double target = std::pow(quad_to_double(QuadReal(rest)), 1.0 / static_cast<double>(d - j));
        Rat e(std::lround(target * 64), 64);
        e.canonicalize();
        if (sgn(e) <= 0) e = Rat(1, 64);
        edges[j] = e;
        rest /= e;
    }
    edges[d - 1] = rest;

    std::vector<std::vector<QuadReal>> rows(d, std::vector<QuadReal>(d));
    for (size_t j = 0; j < d; ++j) rows[j][j] = QuadReal(edges[j]);
    Parallelotope box{rows};

    return product_set_series(box, QuadReal(vprime), rot,
                              rot.alpha.mul_rat(Rat(0)),  // x0 = 0
                              n_max, stride, threads);
}

QuadReal transfer_estimate(const BRSSet& set, const RotationSpec& rot, const AdeleVector& x,
                           long n_window) {
    if (n_window < 1) throw std::invalid_argument("transfer_estimate: window must be >= 1");
    QuadReal prefix;
    QuadReal best;
    bool have = false;
    AdeleVector pt = reduce_mod_gamma(x).reduced;
    for (long n = 0; n < n_window; ++n) {
        prefix += QuadReal(chi_A(set, pt)) - set.volume;
        if (!have || quad_sign(prefix - best) < 0) {
            best = prefix;
            have = true;
        }
        if (n + 1 < n_window) pt = reduce_mod_gamma(pt + rot.alpha).reduced;
    }
    return best;
}

}  // namespace adelic
