#include "adelic/intlat.hpp"

namespace adelic {

IntMat IntMat::identity(size_t n) {
    IntMat m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntVec IntMat::row(size_t i) const {
    IntVec r(cols);
    for (size_t j = 0; j < cols; ++j) r[j] = at(i, j);
    return r;
}

Int dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int det_int(const IntMat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("det_int: matrix not square");
    const size_t n = m.rows;
    if (n == 0) return 1;
    IntMat a = m;
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            size_t piv = k + 1;
            while (piv < n && a.at(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            for (size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Int num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

GcdCertificate gcd_vector(const IntVec& g) {
    if (g.empty()) throw std::invalid_argument("gcd_vector: empty vector");
    bool all_zero = true;
    for (const Int& v : g)
        if (v != 0) all_zero = false;
    if (all_zero) throw std::invalid_argument("gcd_vector: zero vector");

    const size_t d = g.size();
    IntVec coeff(d, Int(0));
    coeff[0] = 1;
    Int acc = g[0];
    for (size_t i = 1; i < d; ++i) {
        Int gg, s, t;
        mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), acc.get_mpz_t(),
                   g[i].get_mpz_t());
        for (size_t k = 0; k < i; ++k) coeff[k] *= s;
        coeff[i] = t;
        acc = gg;
    }
    // g[0] < 0 and the rest zero leaves acc negative; normalize
    if (acc < 0) {
        acc = -acc;
        for (Int& v : coeff) v = -v;
    }
    return {acc, coeff};
}

IntMat unimodular_completion(const IntVec& g) {
    if (g.empty()) throw std::invalid_argument("unimodular_completion: empty vector");
    bool all_zero = true;
    for (const Int& v : g)
        if (v != 0) all_zero = false;
    if (all_zero) throw std::invalid_argument("unimodular_completion: zero vector");

    const size_t d = g.size();
    IntMat u = IntMat::identity(d);
    IntVec c = g;

    // column reduction of c by unimodular row operations on u, Hermite style:
    // after step i the pair (c[0], c[i]) becomes (gcd, 0)
    for (size_t i = 1; i < d; ++i) {
        if (c[i] == 0 && c[0] >= 0) continue;
        Int gg, s, t;
        mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), c[0].get_mpz_t(),
                   c[i].get_mpz_t());
        Int f0 = c[0] / gg, fi = c[i] / gg;
        for (size_t j = 0; j < d; ++j) {
            Int r0 = s * u.at(0, j) + t * u.at(i, j);
            Int ri = -fi * u.at(0, j) + f0 * u.at(i, j);
            u.at(0, j) = r0;
            u.at(i, j) = ri;
        }
        c[0] = gg;
        c[i] = 0;
    }

    if (d == 1) {
        // the 1x1 case cannot satisfy both a1.g = gcd > 0 and det = +1 when
        // g < 0; callers compensate (see build_PB)
        return u;
    }

    if (det_int(u) < 0)
        for (size_t j = 0; j < d; ++j) u.at(1, j) = -u.at(1, j);
    return u;
}

QuadReal det_quad(const std::vector<std::vector<QuadReal>>& m) {
    const size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("det_quad: matrix not square");
    if (n == 0) return QuadReal(1);
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];

    // expand along the first row
    QuadReal det;
    std::vector<std::vector<QuadReal>> minor(n - 1, std::vector<QuadReal>(n - 1));
    for (size_t k = 0; k < n; ++k) {
        if (m[0][k].is_zero()) continue;
        for (size_t i = 1; i < n; ++i) {
            size_t cc = 0;
            for (size_t j = 0; j < n; ++j) {
                if (j == k) continue;
                minor[i - 1][cc++] = m[i][j];
            }
        }
        QuadReal term = m[0][k] * det_quad(minor);
        det = (k % 2 == 0) ? det + term : det - term;
    }
    return det;
}

QuadReal det_oneirr(const std::vector<std::vector<QuadReal>>& m) {
    const size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("det_oneirr: matrix not square");

    long irr_row = -1;
    for (size_t i = 0; i < n; ++i) {
        bool integral = true;
        for (const auto& e : m[i])
            if (!e.is_integer()) integral = false;
        if (!integral) {
            if (irr_row >= 0)
                throw std::invalid_argument("det_oneirr: more than one non-integer row");
            irr_row = static_cast<long>(i);
        }
    }

    if (irr_row < 0) {
        IntMat a(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) a.at(i, j) = m[i][j].rational_part().get_num();
        return QuadReal(det_int(a));
    }

    const size_t r = static_cast<size_t>(irr_row);
    QuadReal det;
    IntMat minor(n - 1, n - 1);
    for (size_t k = 0; k < n; ++k) {
        if (m[r][k].is_zero()) continue;
        size_t ri = 0;
        for (size_t i = 0; i < n; ++i) {
            if (i == r) continue;
            size_t cc = 0;
            for (size_t j = 0; j < n; ++j) {
                if (j == k) continue;
                minor.at(ri, cc++) = m[i][j].rational_part().get_num();
            }
            ++ri;
        }
        QuadReal term = m[r][k] * QuadReal(det_int(minor));
        det = ((r + k) % 2 == 0) ? det + term : det - term;
    }
    return det;
}

Parallelotope::Parallelotope(std::vector<std::vector<QuadReal>> spans)
    : dim_(spans.size()), rows_(std::move(spans)) {
    if (dim_ == 0) throw std::invalid_argument("Parallelotope: dimension must be >= 1");
    for (const auto& r : rows_)
        if (r.size() != dim_) throw std::invalid_argument("Parallelotope: spans must be d x d");

    det_ = det_quad(rows_);
    det_sign_ = quad_sign(det_);
    if (det_sign_ == 0) throw std::invalid_argument("Parallelotope: degenerate spans");

    // cofactor matrix: det(rows with row i replaced by y) = sum_j y_j cof_[i][j]
    cof_.assign(dim_, std::vector<QuadReal>(dim_));
    if (dim_ == 1) {
        cof_[0][0] = QuadReal(1);
    } else {
        std::vector<std::vector<QuadReal>> minor(dim_ - 1, std::vector<QuadReal>(dim_ - 1));
        for (size_t i = 0; i < dim_; ++i)
            for (size_t j = 0; j < dim_; ++j) {
                size_t ri = 0;
                for (size_t r = 0; r < dim_; ++r) {
                    if (r == i) continue;
                    size_t cc = 0;
                    for (size_t c = 0; c < dim_; ++c) {
                        if (c == j) continue;
                        minor[ri][cc++] = rows_[r][c];
                    }
                    ++ri;
                }
                QuadReal mdet = det_quad(minor);
                cof_[i][j] = ((i + j) % 2 == 0) ? mdet : -mdet;
            }
    }

    // vertices are subset sums of the rows, so the extrema split by sign
    extents_.reserve(dim_);
    for (size_t j = 0; j < dim_; ++j) {
        QuadReal lo, hi;
        for (size_t i = 0; i < dim_; ++i) {
            int s = quad_sign(rows_[i][j]);
            if (s < 0) lo += rows_[i][j];
            if (s > 0) hi += rows_[i][j];
        }
        extents_.emplace_back(std::move(lo), std::move(hi));
    }
}

bool Parallelotope::contains(const std::vector<QuadReal>& x) const {
    if (x.size() != dim_) throw std::invalid_argument("Parallelotope::contains: dim mismatch");
    for (size_t i = 0; i < dim_; ++i) {
        QuadReal num;
        for (size_t j = 0; j < dim_; ++j) {
            if (x[j].is_zero() || cof_[i][j].is_zero()) continue;
            num += x[j] * cof_[i][j];
        }
        // t_i = num / det; need t_i >= 0 and t_i < 1
        int sn = quad_sign(num);
        if (sn != 0 && sn != det_sign_) return false;  // t_i < 0
        if (sn != 0) {
            // |num| < |det| <=> t_i < 1
            QuadReal diff = (sn > 0 ? num : -num) - (det_sign_ > 0 ? det_ : -det_);
            if (quad_sign(diff) >= 0) return false;
        }
    }
    return true;
}

Int count_lattice_translates(const Parallelotope& p, const std::vector<QuadReal>& y) {
    const size_t d = p.dim();
    if (y.size() != d) throw std::invalid_argument("count_lattice_translates: dim mismatch");

    // integer bounding box of P - y, outward-rounded
    std::vector<Int> lo(d), hi(d);
    for (size_t j = 0; j < d; ++j) {
        auto [elo, ehi] = p.axis_extent(j);
        lo[j] = quad_floor_frac(elo - y[j]).first;  // floor is a safe lower bound for ceil
        hi[j] = quad_floor_frac(ehi - y[j]).first;
        if (hi[j] < lo[j]) return 0;
    }

    // independent membership: fresh determinant per candidate, no cached cofactors
    const QuadReal& det = p.det();
    const int ds = p.det_sign();
    std::vector<QuadReal> point(d);
    std::vector<std::vector<QuadReal>> work = p.spans();

    Int count = 0;
    std::vector<Int> m(lo);
    while (true) {
        for (size_t j = 0; j < d; ++j) point[j] = y[j] + QuadReal(m[j]);
        bool inside = true;
        for (size_t i = 0; i < d && inside; ++i) {
            std::vector<QuadReal> saved = work[i];
            work[i] = point;
            QuadReal num = det_quad(work);
            work[i] = saved;
            int sn = quad_sign(num);
            if (sn != 0 && sn != ds) {
                inside = false;
            } else if (sn != 0) {
                QuadReal diff = (sn > 0 ? num : -num) - (ds > 0 ? det : -det);
                if (quad_sign(diff) >= 0) inside = false;
            }
        }
        if (inside) ++count;

        size_t j = 0;
        while (j < d) {
            ++m[j];
            if (m[j] <= hi[j]) break;
            m[j] = lo[j];
            ++j;
        }
        if (j == d) break;
    }
    return count;
}

}  // namespace adelic
