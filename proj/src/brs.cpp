#include "adelic/brs.hpp"

#include <algorithm>
#include <cmath>

namespace adelic {

RotationSpec RotationSpec::make(AdeleVector a) {
    ErgodicityReport rep = check_ergodic(a);
    return {std::move(a), std::move(rep)};
}

DenomResult denominator_of(const GammaScalar& gamma) {
    if (gamma.value == 0) return {Int(1), Int(0)};
    return {gamma.value.get_den(), gamma.value.get_num()};
}

QuadReal volume_of(const VolumeSpec& spec, const AdeleVector& alpha) {
    return character_phase(spec.gamma, alpha) + QuadReal(spec.eta);
}

namespace {

struct PipelineData {
    IntVec delta, g;
    std::vector<QuadReal> beta;
    Int eta_prime;
};

// per-coordinate delta_j, g_j, beta_j and the integer eta'; gamma_j = 0 is
// allowed here (delta 1, g 0) so construct_brs can treat all coordinates
// uniformly
PipelineData pipeline_data(const GammaVector& gamma, const Int& eta, const AdeleVector& alpha) {
    const PrimeSet& Q = alpha.primes();
    const size_t d = alpha.dim();
    PipelineData out;
    out.delta.resize(d);
    out.g.resize(d);
    out.beta.resize(d);

    Rat eta_prime_acc(eta);
    for (size_t j = 0; j < d; ++j) {
        auto [delta, g] = denominator_of(GammaScalar(gamma.entries[j], Q));
        out.delta[j] = delta;
        out.g[j] = g;

        Rat inv_delta(Int(1), delta);
        QuadReal beta = alpha.coords[j].real.mul_rat(inv_delta);
        for (size_t i = 0; i < Q.size(); ++i) {
            Int p(Q[i]);
            Rat scaled = alpha.coords[j].parts[i] * inv_delta;
            Rat frac = padic_frac(scaled, p);
            beta -= QuadReal(frac);
            eta_prime_acc += Rat(g) * frac - padic_frac(Rat(g) * scaled, p);
        }
        out.beta[j] = beta;
    }

    if (!is_integer(eta_prime_acc))
        throw std::logic_error("beta_eta: eta' failed to be an integer (arithmetic bug)");
    out.eta_prime = eta_prime_acc.get_num();
    return out;
}

void assert_volume_identity(const PipelineData& pd, const QuadReal& V) {
    QuadReal sum(pd.eta_prime);
    for (size_t j = 0; j < pd.beta.size(); ++j) sum += pd.beta[j].mul_rat(Rat(pd.g[j]));
    if (sum != V)
        throw std::logic_error("beta_eta: V != sum g_j beta_j + eta' (arithmetic bug)");
}

std::vector<double> approx_row(const std::vector<QuadReal>& row) {
    std::vector<double> r(row.size());
    for (size_t j = 0; j < row.size(); ++j) r[j] = quad_to_double(row[j]);
    return r;
}

// Iterated pairwise Lagrange reduction with exact integer row operations.
// Row lengths only guide the (approximate) rounding; every update is exact
// and preserves both the determinant and the Z*beta + Z^d membership.
void size_reduce_rows(std::vector<std::vector<QuadReal>>& rows, std::vector<SpanRecord>& recs) {
    const size_t d = rows.size();
    if (d < 2) return;

    std::vector<std::vector<double>> a(d);
    for (size_t i = 0; i < d; ++i) a[i] = approx_row(rows[i]);

    auto norm2 = [&](size_t i) {
        double s = 0;
        for (double v : a[i]) s += v * v;
        return s;
    };
    auto dotij = [&](size_t i, size_t j) {
        double s = 0;
        for (size_t k = 0; k < d; ++k) s += a[i][k] * a[j][k];
        return s;
    };

    for (int pass = 0; pass < 64; ++pass) {
        bool changed = false;
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) {
                if (i == j) continue;
                double nj = norm2(j);
                if (!(nj > 0)) continue;
                double mu = dotij(i, j) / nj;
                if (!(std::abs(mu) < 1e12)) continue;
                long c = std::lround(mu);
                if (c == 0) continue;
                // accept only strict improvement to guarantee termination
                double before = norm2(i);
                std::vector<double> trial(d);
                for (size_t k = 0; k < d; ++k) trial[k] = a[i][k] - static_cast<double>(c) * a[j][k];
                double after = 0;
                for (double v : trial) after += v * v;
                if (!(after < before * (1 - 1e-9))) continue;

                Rat cr(Int(c));
                for (size_t k = 0; k < d; ++k) rows[i][k] -= rows[j][k].mul_rat(cr);
                recs[i].m -= Int(c) * recs[j].m;
                for (size_t k = 0; k < d; ++k) recs[i].z[k] -= Int(c) * recs[j].z[k];
                a[i] = approx_row(rows[i]);
                changed = true;
            }
        if (!changed) break;
    }
}

std::vector<std::vector<QuadReal>> unit_cube_rows(size_t d) {
    std::vector<std::vector<QuadReal>> rows(d, std::vector<QuadReal>(d));
    for (size_t j = 0; j < d; ++j) rows[j][j] = QuadReal(1);
    return rows;
}

}  // namespace

BetaEta beta_eta(const VolumeSpec& spec, const AdeleVector& alpha) {
    for (const Rat& gj : spec.gamma.entries)
        if (gj == 0)
            throw std::invalid_argument("beta_eta: zero gamma coordinate (split off by construct_brs)");
    PipelineData pd = pipeline_data(spec.gamma, spec.eta, alpha);
    assert_volume_identity(pd, volume_of(spec, alpha));
    return {pd.beta, pd.eta_prime};
}

PBResult build_PB(const IntVec& g, const Int& eta_prime, const std::vector<QuadReal>& beta) {
    const size_t d = g.size();
    if (d == 0 || beta.size() != d) throw std::invalid_argument("build_PB: dimension mismatch");

    auto [G, a1_cert] = gcd_vector(g);  // throws on zero vector
    (void)a1_cert;
    IntMat A = unimodular_completion(g);

    std::vector<std::vector<QuadReal>> rows(d, std::vector<QuadReal>(d));
    std::vector<SpanRecord> recs;
    recs.reserve(d);
    for (size_t j = 0; j < d; ++j)
        rows[0][j] = beta[j].mul_rat(Rat(G)) + QuadReal(eta_prime * A.at(0, j));
    recs.push_back({G, IntVec(d)});
    for (size_t j = 0; j < d; ++j) recs[0].z[j] = eta_prime * A.at(0, j);
    for (size_t i = 1; i < d; ++i) {
        for (size_t j = 0; j < d; ++j) rows[i][j] = QuadReal(A.at(i, j));
        recs.push_back({Int(0), A.row(i)});
    }

    QuadReal expected(eta_prime);
    for (size_t j = 0; j < d; ++j) expected += beta[j].mul_rat(Rat(g[j]));

    QuadReal det = det_oneirr(rows);
    if (det == expected) return {std::move(rows), std::move(recs)};

    if (d == 1 && det == -expected) {
        // unimodular_completion gave det(A) = -1 (g < 0); negating the single
        // row restores det = V and stays in Z*beta + Z
        for (auto& e : rows[0]) e = -e;
        recs[0].m = -recs[0].m;
        for (Int& z : recs[0].z) z = -z;
        return {std::move(rows), std::move(recs)};
    }
    throw std::logic_error("build_PB: determinant identity violated (arithmetic bug)");
}

BRSSet construct_brs(const VolumeSpec& spec, const RotationSpec& rot, ConstructOptions opts) {
    if (!rot.ergodicity.ergodic)
        throw NonErgodicRotation("construct_brs: rotation is not ergodic: " + rot.ergodicity.str());
    if (spec.gamma.dim() != rot.dim() || spec.gamma.ambient != rot.primes())
        throw std::invalid_argument("construct_brs: spec/rotation shape mismatch");

    const size_t d = rot.dim();
    const AdeleVector& alpha = rot.alpha;

    QuadReal V = volume_of(spec, alpha);
    int vs = quad_sign(V);
    if (vs < 0)
        throw NotRepresentable("construct_brs: volume " + V.str() + " is negative");

    PipelineData pd = pipeline_data(spec.gamma, spec.eta, alpha);
    assert_volume_identity(pd, V);

    std::vector<size_t> zero_coords, nonzero_coords;
    for (size_t j = 0; j < d; ++j)
        (spec.gamma.entries[j] == 0 ? zero_coords : nonzero_coords).push_back(j);

    // V = 0 forces gamma = 0 and eta = 0 under ergodicity: the empty set
    if (vs == 0) {
        Parallelotope cube{unit_cube_rows(d)};
        std::vector<SpanRecord> recs;
        for (size_t j = 0; j < d; ++j) {
            IntVec z(d, Int(0));
            z[j] = 1;
            recs.push_back({Int(0), std::move(z)});
        }
        return {d,       rot.primes(), pd.delta, pd.g, pd.beta, pd.eta_prime,
                V,       Int(0),       zero_coords,   cube, cube, std::move(recs)};
    }

    std::vector<std::vector<QuadReal>> pb_rows;
    std::vector<SpanRecord> recs;
    Int mult(1);

    if (nonzero_coords.empty()) {
        // eta copies of the whole space
        pb_rows = unit_cube_rows(d);
        for (size_t j = 0; j < d; ++j) {
            IntVec z(d, Int(0));
            z[j] = 1;
            recs.push_back({Int(0), std::move(z)});
        }
        mult = spec.eta;
    } else {
        IntVec g_block;
        std::vector<QuadReal> beta_block;
        for (size_t j : nonzero_coords) {
            g_block.push_back(pd.g[j]);
            beta_block.push_back(pd.beta[j]);
        }
        PBResult block = build_PB(g_block, pd.eta_prime, beta_block);
        if (opts.reduce_spans) size_reduce_rows(block.rows, block.records);

        // scatter the block into full dimension; zero coordinates get a unit
        // row (the [0,1) factor), which leaves the determinant unchanged
        pb_rows.assign(d, std::vector<QuadReal>(d));
        recs.assign(d, SpanRecord{Int(0), IntVec(d, Int(0))});
        for (size_t bi = 0; bi < nonzero_coords.size(); ++bi) {
            size_t full_row = nonzero_coords[bi];
            for (size_t bj = 0; bj < nonzero_coords.size(); ++bj)
                pb_rows[full_row][nonzero_coords[bj]] = block.rows[bi][bj];
            recs[full_row].m = block.records[bi].m;
            for (size_t bj = 0; bj < nonzero_coords.size(); ++bj)
                recs[full_row].z[nonzero_coords[bj]] = block.records[bi].z[bj];
        }
        for (size_t j : zero_coords) {
            pb_rows[j][j] = QuadReal(1);
            recs[j].z[j] = 1;
        }
    }

    Parallelotope PB{pb_rows};

    std::vector<std::vector<QuadReal>> pa_rows = pb_rows;
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) pa_rows[i][j] = pa_rows[i][j].mul_rat(Rat(pd.delta[j]));
    Parallelotope PA{pa_rows};

    // exact invariants: mult * det(P_B) = V, det(P_A) = (prod delta) det(P_B),
    // and every row is m*beta + z as recorded
    if (PB.det().mul_rat(Rat(mult)) != V)
        throw std::logic_error("construct_brs: det(P_B) != V (arithmetic bug)");
    Int dprod(1);
    for (const Int& dj : pd.delta) dprod *= dj;
    if (PA.det() != PB.det().mul_rat(Rat(dprod)))
        throw std::logic_error("construct_brs: det(P_A) != prod(delta) * det(P_B)");
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            QuadReal expect = pd.beta[j].mul_rat(Rat(recs[i].m)) + QuadReal(recs[i].z[j]);
            if (pb_rows[i][j] != expect)
                throw std::logic_error("construct_brs: span record mismatch");
        }

    return {d,
            rot.primes(),
            pd.delta,
            pd.g,
            pd.beta,
            pd.eta_prime,
            V,
            mult,
            zero_coords,
            std::move(PB),
            std::move(PA),
            std::move(recs)};
}

Int chi_product_set(const Parallelotope& p, const IntVec& delta, const AdeleVector& x,
                    const Int& mult) {
    if (mult == 0) return 0;
    const size_t d = p.dim();
    if (x.dim() != d || delta.size() != d)
        throw std::invalid_argument("chi_product_set: dimension mismatch");
    const PrimeSet& Q = x.primes();

    // the p-adic ball constraints force q_j = delta_j (k_j + f_j), k_j integer
    std::vector<QuadReal> base(d);
    for (size_t j = 0; j < d; ++j) {
        Rat fj(0);
        Rat inv_delta(Int(1), delta[j]);
        for (size_t i = 0; i < Q.size(); ++i)
            fj += padic_frac(-x.coords[j].parts[i] * inv_delta, Int(Q[i]));
        base[j] = x.coords[j].real + QuadReal(Rat(delta[j]) * fj);
    }

    // k ranges from the exact vertex box of P (outer floor bound is safe)
    std::vector<Int> lo(d), hi(d);
    for (size_t j = 0; j < d; ++j) {
        auto [elo, ehi] = p.axis_extent(j);
        Rat inv_delta(Int(1), delta[j]);
        lo[j] = quad_floor_frac((elo - base[j]).mul_rat(inv_delta)).first;
        hi[j] = quad_floor_frac((ehi - base[j]).mul_rat(inv_delta)).first;
        if (hi[j] < lo[j]) return 0;
    }

    Int count = 0;
    std::vector<Int> k(lo);
    std::vector<QuadReal> y(d);
    while (true) {
        for (size_t j = 0; j < d; ++j) y[j] = base[j] + QuadReal(delta[j] * k[j]);
        if (p.contains(y)) ++count;

        size_t j = 0;
        while (j < d) {
            ++k[j];
            if (k[j] <= hi[j]) break;
            k[j] = lo[j];
            ++j;
        }
        if (j == d) break;
    }
    return count * mult;
}

Int chi_A(const BRSSet& set, const AdeleVector& x) {
    if (x.primes() != set.primes) throw std::invalid_argument("chi_A: prime set mismatch");
    return chi_product_set(set.PA, set.delta, x, set.mult);
}

Int chi_B(const BRSSet& set, const AdeleVector& x) {
    if (x.primes() != set.primes) throw std::invalid_argument("chi_B: prime set mismatch");
    IntVec ones(set.dim, Int(1));
    return chi_product_set(set.PB, ones, x, set.mult);
}

Int chi_PB(const Parallelotope& pb, const std::vector<QuadReal>& y) {
    return count_lattice_translates(pb, y);
}

}  // namespace adelic
