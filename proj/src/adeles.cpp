#include "adelic/adeles.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace adelic {

PrimeSet::PrimeSet(std::vector<long> primes) : primes_(std::move(primes)) {
    if (primes_.empty()) throw std::invalid_argument("PrimeSet: must be nonempty");
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
    for (long p : primes_)
        if (!is_prime(Int(p)))
            throw std::invalid_argument("PrimeSet: " + std::to_string(p) + " is not prime");
}

bool PrimeSet::contains(long p) const {
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

std::string PrimeSet::str() const {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < primes_.size(); ++i) os << (i ? "," : "") << primes_[i];
    os << "}";
    return os.str();
}

bool gamma_check(const Rat& x, const PrimeSet& Q) { return factors_over(x.get_den(), Q.list()); }

GammaScalar::GammaScalar(Rat v, PrimeSet q) : value(std::move(v)), ambient(std::move(q)) {
    if (!gamma_check(value, ambient))
        throw std::invalid_argument("GammaScalar: " + rat_to_string(value) +
                                    " has a denominator prime outside " + ambient.str());
}

GammaVector::GammaVector(std::vector<Rat> e, PrimeSet q) : entries(std::move(e)), ambient(std::move(q)) {
    if (entries.empty()) throw std::invalid_argument("GammaVector: dimension must be >= 1");
    for (const Rat& v : entries)
        if (!gamma_check(v, ambient))
            throw std::invalid_argument("GammaVector: entry " + rat_to_string(v) +
                                        " not in Gamma_" + ambient.str());
}

bool GammaVector::is_zero() const {
    return std::all_of(entries.begin(), entries.end(), [](const Rat& v) { return v == 0; });
}

AdeleScalar::AdeleScalar(QuadReal r, PrimeSet q, std::vector<Rat> p)
    : real(std::move(r)), primes(std::move(q)), parts(std::move(p)) {
    if (parts.size() != primes.size())
        throw std::invalid_argument("AdeleScalar: need one p-part per prime");
}

AdeleScalar AdeleScalar::operator+(const AdeleScalar& o) const {
    if (primes != o.primes) throw std::invalid_argument("AdeleScalar: prime set mismatch");
    std::vector<Rat> p(parts);
    for (size_t i = 0; i < p.size(); ++i) p[i] += o.parts[i];
    return {real + o.real, primes, std::move(p)};
}

AdeleScalar AdeleScalar::operator-(const AdeleScalar& o) const {
    if (primes != o.primes) throw std::invalid_argument("AdeleScalar: prime set mismatch");
    std::vector<Rat> p(parts);
    for (size_t i = 0; i < p.size(); ++i) p[i] -= o.parts[i];
    return {real - o.real, primes, std::move(p)};
}

AdeleScalar AdeleScalar::mul_rat(const Rat& q) const {
    std::vector<Rat> p(parts);
    for (Rat& v : p) v *= q;
    return {real.mul_rat(q), primes, std::move(p)};
}

bool AdeleScalar::operator==(const AdeleScalar& o) const {
    return primes == o.primes && real == o.real && parts == o.parts;
}

AdeleVector::AdeleVector(std::vector<AdeleScalar> cs) : coords(std::move(cs)) {
    if (coords.empty()) throw std::invalid_argument("AdeleVector: dimension must be >= 1");
    for (const auto& c : coords)
        if (c.primes != coords.front().primes)
            throw std::invalid_argument("AdeleVector: coordinates must share one prime set");
}

AdeleVector AdeleVector::operator+(const AdeleVector& o) const {
    if (dim() != o.dim()) throw std::invalid_argument("AdeleVector: dimension mismatch");
    std::vector<AdeleScalar> cs;
    cs.reserve(dim());
    for (size_t j = 0; j < dim(); ++j) cs.push_back(coords[j] + o.coords[j]);
    return AdeleVector(std::move(cs));
}

AdeleVector AdeleVector::operator-(const AdeleVector& o) const {
    if (dim() != o.dim()) throw std::invalid_argument("AdeleVector: dimension mismatch");
    std::vector<AdeleScalar> cs;
    cs.reserve(dim());
    for (size_t j = 0; j < dim(); ++j) cs.push_back(coords[j] - o.coords[j]);
    return AdeleVector(std::move(cs));
}

AdeleVector AdeleVector::mul_rat(const Rat& q) const {
    std::vector<AdeleScalar> cs;
    cs.reserve(dim());
    for (const auto& c : coords) cs.push_back(c.mul_rat(q));
    return AdeleVector(std::move(cs));
}

AdeleVector AdeleVector::scale_coords(const std::vector<Rat>& scales) const {
    if (scales.size() != dim()) throw std::invalid_argument("scale_coords: dimension mismatch");
    std::vector<AdeleScalar> cs;
    cs.reserve(dim());
    for (size_t j = 0; j < dim(); ++j) cs.push_back(coords[j].mul_rat(scales[j]));
    return AdeleVector(std::move(cs));
}

bool AdeleVector::operator==(const AdeleVector& o) const { return coords == o.coords; }

AdeleScalar diagonal_embed(const GammaScalar& g) {
    std::vector<Rat> parts(g.ambient.size(), g.value);
    return {QuadReal(g.value), g.ambient, std::move(parts)};
}

AdeleVector diagonal_embed(const GammaVector& g) {
    std::vector<AdeleScalar> cs;
    cs.reserve(g.dim());
    for (const Rat& v : g.entries) cs.push_back(diagonal_embed(GammaScalar(v, g.ambient)));
    return AdeleVector(std::move(cs));
}

ReduceResult reduce_mod_gamma(const AdeleVector& x) {
    const PrimeSet& Q = x.primes();
    std::vector<AdeleScalar> reduced;
    std::vector<Rat> shift;
    reduced.reserve(x.dim());
    shift.reserve(x.dim());

    for (const AdeleScalar& c : x.coords) {
        // g0 collects the p-adic fractional parts; subtracting it diagonally
        // makes every p-part p-integral at once
        Rat g0(0);
        for (size_t i = 0; i < Q.size(); ++i) g0 += padic_frac(c.parts[i], Int(Q[i]));

        QuadReal real = c.real - QuadReal(g0);
        auto [m, frac] = quad_floor_frac(real);

        Rat total = g0 + Rat(m);
        std::vector<Rat> parts(c.parts);
        for (Rat& v : parts) v -= total;
        reduced.emplace_back(std::move(frac), Q, std::move(parts));
        shift.push_back(total);
    }
    return {AdeleVector(std::move(reduced)), GammaVector(std::move(shift), Q)};
}

QuadReal character_phase(const GammaVector& gamma, const AdeleVector& x) {
    if (gamma.dim() != x.dim()) throw std::invalid_argument("character_phase: dimension mismatch");
    if (gamma.ambient != x.primes())
        throw std::invalid_argument("character_phase: prime set mismatch");
    const PrimeSet& Q = x.primes();
    QuadReal phase;
    for (size_t j = 0; j < x.dim(); ++j) {
        const Rat& gj = gamma.entries[j];
        if (gj == 0) continue;
        phase += x.coords[j].real.mul_rat(gj);
        for (size_t i = 0; i < Q.size(); ++i)
            phase -= QuadReal(padic_frac(gj * x.coords[j].parts[i], Int(Q[i])));
    }
    return phase;
}

QuadReal theta(const GammaVector& gamma, const AdeleVector& alpha) {
    return character_phase(gamma, alpha);
}

CInterval character_eval(const GammaVector& gamma, const AdeleVector& x, mpfr_prec_t precision) {
    QuadReal phase = character_phase(gamma, x);
    QuadReal frac = quad_floor_frac(phase).second;
    return expi(quad_eval(frac, precision + 8));
}

std::vector<QuadReal> weyl_phases_direct(const GammaVector& gamma, const AdeleVector& alpha,
                                         long N) {
    if (N < 0) throw std::invalid_argument("weyl: N must be >= 0");
    QuadReal th = quad_floor_frac(theta(gamma, alpha)).second;
    std::vector<QuadReal> phases;
    phases.reserve(static_cast<size_t>(N));
    QuadReal run;
    for (long n = 1; n <= N; ++n) {
        run += th;
        // run stays in [0,2) here, so the floor is 0 or 1
        if (quad_sign(run - QuadReal(1)) >= 0) run -= QuadReal(1);
        phases.push_back(run);
    }
    return phases;
}

std::vector<QuadReal> weyl_phases_orbit(const GammaVector& gamma, const AdeleVector& alpha,
                                        long N) {
    if (N < 0) throw std::invalid_argument("weyl: N must be >= 0");
    std::vector<QuadReal> phases;
    phases.reserve(static_cast<size_t>(N));
    AdeleVector x = alpha;
    for (long n = 1; n <= N; ++n) {
        AdeleVector red = reduce_mod_gamma(x).reduced;
        phases.push_back(quad_floor_frac(character_phase(gamma, red)).second);
        if (n < N) x = red + alpha;
    }
    return phases;
}

namespace {

CInterval mean_of_phases(const std::vector<QuadReal>& phases, mpfr_prec_t precision) {
    CInterval acc(precision);
    for (const QuadReal& ph : phases) acc = acc + expi(quad_eval(ph, precision + 8));
    if (phases.empty()) {
        // empty sum: exactly zero
        return acc;
    }
    return acc.div_ui(static_cast<unsigned long>(phases.size()));
}

}  // namespace

CInterval weyl_sum(const GammaVector& gamma, const AdeleVector& alpha, long N,
                   mpfr_prec_t precision) {
    if (N < 1) throw std::invalid_argument("weyl_sum: N must be >= 1");
    if (gamma.is_zero()) {
        CInterval one(precision);
        one.re = Interval::from_long(1, precision);
        return one;
    }
    return mean_of_phases(weyl_phases_direct(gamma, alpha, N), precision);
}

CInterval weyl_sum_orbit(const GammaVector& gamma, const AdeleVector& alpha, long N,
                         mpfr_prec_t precision) {
    if (N < 1) throw std::invalid_argument("weyl_sum: N must be >= 1");
    return mean_of_phases(weyl_phases_orbit(gamma, alpha, N), precision);
}

ErgodicityReport check_ergodic(const AdeleVector& alpha) {
    const size_t d = alpha.dim();

    // columns: squarefree keys n > 1 appearing in any coordinate
    std::set<long> keys;
    for (const auto& c : alpha.coords)
        for (const auto& [n, v] : c.real.coeffs())
            if (n > 1) keys.insert(n);

    std::vector<std::vector<Rat>> m(d, std::vector<Rat>(std::max<size_t>(keys.size(), 1), Rat(0)));
    {
        size_t col = 0;
        for (long n : keys) {
            for (size_t j = 0; j < d; ++j) m[j][col] = alpha.coords[j].real.coeff(n);
            ++col;
        }
    }

    ErgodicityReport rep;
    rep.rank = rational_rank(m);
    rep.ergodic = rep.rank == static_cast<long>(d);
    if (rep.ergodic) return rep;

    // left kernel: c with c^T m = 0. Eliminate on the transpose.
    const size_t K = keys.empty() ? 0 : keys.size();
    std::vector<std::vector<Rat>> t(K, std::vector<Rat>(d, Rat(0)));
    for (size_t j = 0; j < d; ++j)
        for (size_t k = 0; k < K; ++k) t[k][j] = m[j][k];

    std::vector<long> pivot_col;
    size_t pr = 0;
    for (size_t pc = 0; pc < d && pr < K; ++pc) {
        size_t piv = pr;
        while (piv < K && t[piv][pc] == 0) ++piv;
        if (piv == K) continue;
        std::swap(t[pr], t[piv]);
        for (size_t r = 0; r < K; ++r) {
            if (r == pr || t[r][pc] == 0) continue;
            Rat f = t[r][pc] / t[pr][pc];
            for (size_t c2 = 0; c2 < d; ++c2) t[r][c2] -= f * t[pr][c2];
        }
        pivot_col.push_back(static_cast<long>(pc));
        ++pr;
    }

    // pick the first non-pivot column as the free variable
    long free_col = -1;
    for (size_t c2 = 0; c2 < d; ++c2)
        if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<long>(c2)) == pivot_col.end()) {
            free_col = static_cast<long>(c2);
            break;
        }
    if (free_col < 0) throw std::logic_error("check_ergodic: dependent system with no free column");

    std::vector<Rat> c(d, Rat(0));
    c[static_cast<size_t>(free_col)] = 1;
    for (size_t r = 0; r < pivot_col.size(); ++r) {
        size_t pc = static_cast<size_t>(pivot_col[r]);
        c[pc] = -t[r][static_cast<size_t>(free_col)] / t[r][pc];
    }

    // scale to a primitive integer vector
    Int lcm = 1;
    for (const Rat& v : c) {
        Int l;
        mpz_lcm(l.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
        lcm = l;
    }
    Int gcd = 0;
    std::vector<Int> dep(d);
    for (size_t j = 0; j < d; ++j) {
        Rat scaled = c[j] * Rat(lcm);
        dep[j] = scaled.get_num();
        Int g;
        mpz_gcd(g.get_mpz_t(), gcd.get_mpz_t(), dep[j].get_mpz_t());
        gcd = g;
    }
    if (gcd > 1)
        for (Int& v : dep) v /= gcd;

    Rat constant(0);
    for (size_t j = 0; j < d; ++j) constant += Rat(dep[j]) * alpha.coords[j].real.rational_part();

    rep.dependence = std::move(dep);
    rep.constant = constant;
    return rep;
}

bool verify_dependence(const AdeleVector& alpha, const std::vector<Int>& dependence,
                       const Rat& constant) {
    if (dependence.size() != alpha.dim()) return false;
    bool nonzero = false;
    QuadReal sum;
    for (size_t j = 0; j < alpha.dim(); ++j) {
        if (dependence[j] != 0) nonzero = true;
        sum += alpha.coords[j].real.mul_rat(Rat(dependence[j]));
    }
    return nonzero && sum == QuadReal(constant);
}

std::string ErgodicityReport::str() const {
    std::ostringstream os;
    if (ergodic) {
        os << "ergodic (independence rank " << rank << ")";
    } else {
        os << "non-ergodic (rank " << rank << "); dependence: ";
        for (size_t j = 0; j < dependence.size(); ++j)
            os << (j ? ", " : "(") << dependence[j].get_str();
        os << ") with rational value " << rat_to_string(constant);
    }
    return os.str();
}

}  // namespace adelic
