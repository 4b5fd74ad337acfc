#pragma once

#include <vector>

#include "adelic/quadreal.hpp"
#include "adelic/rational.hpp"

namespace adelic {

using IntVec = std::vector<Int>;

struct IntMat {
    IntMat(size_t r, size_t c) : rows(r), cols(c), a(r * c, Int(0)) {}
    static IntMat identity(size_t n);

    Int& at(size_t i, size_t j) { return a[i * cols + j]; }
    const Int& at(size_t i, size_t j) const { return a[i * cols + j]; }
    IntVec row(size_t i) const;

    size_t rows, cols;
    std::vector<Int> a;
};

Int dot(const IntVec& a, const IntVec& b);

/// Exact determinant of a square integer matrix (fraction-free Bareiss).
Int det_int(const IntMat& m);

/// gcd of the entries of a nonzero vector, with an integer certificate row:
/// coeff . g == gcd (iterated extended Euclid).
struct GcdCertificate {
    Int gcd;
    IntVec coeff;
};
GcdCertificate gcd_vector(const IntVec& g);

/// Integer matrix A with A*g = (G, 0, ..., 0)^T, G = gcd(g); rows 2..d form a
/// basis of {z : z.g = 0}. det(A) = +1 for d >= 2 (a row of the orthogonal
/// block is negated if needed); for d = 1 the only choice is A = [sign(g)].
IntMat unimodular_completion(const IntVec& g);

/// Exact determinant of a small matrix with QuadReal entries, by cofactor
/// expansion (dimensions here are tiny).
QuadReal det_quad(const std::vector<std::vector<QuadReal>>& m);

/// Determinant of a matrix with at most one non-integer row, expanded along
/// that row with fraction-free integer minors. Rejects two-plus irrational rows.
QuadReal det_oneirr(const std::vector<std::vector<QuadReal>>& m);

/// Half-open span {sum t_i v_i : t_i in [0,1)} of d independent row vectors,
/// anchored at the origin. Nondegeneracy (exact det != 0) is checked at
/// construction; the det and the cofactor matrix are cached, so membership
/// queries cost d^2 QuadReal products.
class Parallelotope {
public:
    explicit Parallelotope(std::vector<std::vector<QuadReal>> spans);

    size_t dim() const { return dim_; }
    const std::vector<std::vector<QuadReal>>& spans() const { return rows_; }
    const QuadReal& det() const { return det_; }
    int det_sign() const { return det_sign_; }

    /// exact membership via Cramer sign tests: x = sum t_i v_i with all
    /// t_i in [0,1)
    bool contains(const std::vector<QuadReal>& x) const;

    /// [min, max] of coordinate j over the closure (vertex extrema; cached)
    const std::pair<QuadReal, QuadReal>& axis_extent(size_t j) const { return extents_[j]; }

private:
    size_t dim_;
    std::vector<std::vector<QuadReal>> rows_;
    QuadReal det_;
    int det_sign_;
    std::vector<std::vector<QuadReal>> cof_;  // cof_[i][j]: cofactor of entry (i, j)
    std::vector<std::pair<QuadReal, QuadReal>> extents_;
};

inline bool parallelotope_contains(const Parallelotope& p, const std::vector<QuadReal>& x) {
    return p.contains(x);
}

/// #{m in Z^d : y + m in P}, enumerated over the integer bounding box of
/// P - y. Membership here is decided by a fresh determinant per candidate,
/// independent of the cached-cofactor path used by Parallelotope::contains.
Int count_lattice_translates(const Parallelotope& p, const std::vector<QuadReal>& y);

}  // namespace adelic
