#include "adelic/rational.hpp"

namespace adelic {

bool is_prime(const Int& p) {
    if (p < 2) return false;
    return mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

namespace {

void require_prime(const Int& p) {
    if (!is_prime(p)) throw std::invalid_argument("p-adic operation: p = " + p.get_str() + " is not prime");
}

// exponent of p in a nonzero integer
long int_val(const Int& n, const Int& p) {
    Int rem;
    return static_cast<long>(mpz_remove(rem.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

}  // namespace

Valuation padic_val(const Rat& x, const Int& p) {
    require_prime(p);
    if (x == 0) return Valuation::infinity();
    return Valuation::of(int_val(x.get_num(), p) - int_val(x.get_den(), p));
}

Rat padic_abs(const Rat& x, const Int& p) {
    Valuation v = padic_val(x, p);
    if (v.is_infinite()) return Rat(0);
    Int pow;
    mpz_pow_ui(pow.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(std::abs(v.value())));
    Rat r = v.value() >= 0 ? Rat(1, pow) : Rat(pow);
    r.canonicalize();
    return r;
}

Rat padic_frac(const Rat& x, const Int& p) {
    Valuation v = padic_val(x, p);
    if (v.is_infinite() || v.value() >= 0) return Rat(0);

    // x = u / (p^k * b) with p coprime to u and b; {x}_p = (u * b^-1 mod p^k) / p^k
    unsigned long k = static_cast<unsigned long>(-v.value());
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
    Int b = x.get_den();
    mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), pk.get_mpz_t());
    Int binv;
    if (mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), pk.get_mpz_t()) == 0)
        throw std::logic_error("padic_frac: non-invertible unit part");
    Int r = x.get_num() * binv;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), pk.get_mpz_t());  // mod gives [0, p^k)
    Rat out(r, pk);
    out.canonicalize();
    return out;
}

Rat padic_floor(const Rat& x, const Int& p) { return x - padic_frac(x, p); }

long rational_rank(const std::vector<std::vector<Rat>>& m) {
    if (m.empty()) return 0;
    std::vector<std::vector<Rat>> a = m;
    const size_t rows = a.size(), cols = a[0].size();
    for (const auto& row : a)
        if (row.size() != cols) throw std::invalid_argument("rational_rank: ragged matrix");

    long rank = 0;
    size_t pr = 0;
    for (size_t pc = 0; pc < cols && pr < rows; ++pc) {
        size_t piv = pr;
        while (piv < rows && a[piv][pc] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[pr], a[piv]);
        for (size_t r = pr + 1; r < rows; ++r) {
            if (a[r][pc] == 0) continue;
            Rat f = a[r][pc] / a[pr][pc];
            for (size_t c = pc; c < cols; ++c) a[r][c] -= f * a[pr][c];
        }
        ++pr;
        ++rank;
    }
    return rank;
}

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rational: empty string");
    if (s.find_first_of(".eE") != std::string::npos)
        throw std::invalid_argument("rational: '" + s + "' is not an exact a/b string");
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("rational: cannot parse '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("rational: zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Int rat_floor(const Rat& q) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return f;
}

bool factors_over(const Int& n, const std::vector<long>& primes) {
    if (n < 1) throw std::invalid_argument("factors_over: n must be positive");
    Int rem = n;
    for (long p : primes) {
        Int pz(p);
        Int out;
        mpz_remove(out.get_mpz_t(), rem.get_mpz_t(), pz.get_mpz_t());
        rem = out;
    }
    return rem == 1;
}

}  // namespace adelic
