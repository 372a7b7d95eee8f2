#pragma once

#include <compare>
#include <vector>

#include "latspec/errors.hpp"

namespace latspec {

/// Element of the prime field GF(p): a value in [0, p) with modulus p.
class GFElement {
public:
    GFElement(long value, long modulus);

    long value() const { return value_; }
    long modulus() const { return modulus_; }

    GFElement operator+(const GFElement& o) const;
    GFElement operator-(const GFElement& o) const;
    GFElement operator*(const GFElement& o) const;
    GFElement operator/(const GFElement& o) const;
    GFElement operator-() const;
    GFElement inverse() const;

    friend bool operator==(const GFElement& a, const GFElement& b) {
        return a.modulus_ == b.modulus_ && a.value_ == b.value_;
    }

private:
    long value_;
    long modulus_;
};

/// Dense matrix over GF(p), row-major. A matrix in canonical form satisfies
/// the RREF predicate: pivot columns strictly increasing, pivots equal 1,
/// pivot columns otherwise 0, no zero rows. Canonical matrices are the
/// unique representatives of their row spaces, so subspace equality is
/// plain equality of canonical forms.
class GFMatrix {
public:
    GFMatrix(long rows, long cols, long modulus);
    static GFMatrix from_rows(const std::vector<std::vector<long>>& rows, long cols, long modulus);

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    long modulus() const { return modulus_; }

    long value_at(long r, long c) const { return v_[static_cast<std::size_t>(r * cols_ + c)]; }
    void set_value(long r, long c, long value);
    GFElement at(long r, long c) const { return GFElement(value_at(r, c), modulus_); }

    std::vector<long> row_values(long r) const;
    const std::vector<long>& flattened() const { return v_; }

    bool is_canonical_rref() const;

    friend bool operator==(const GFMatrix& a, const GFMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.modulus_ == b.modulus_ && a.v_ == b.v_;
    }
    friend bool operator!=(const GFMatrix& a, const GFMatrix& b) { return !(a == b); }

private:
    long rows_, cols_, modulus_;
    std::vector<long> v_;
};

/// Unique reduced row echelon form with zero rows removed. Preserves the
/// row space and is idempotent. Requires a prime modulus (enforced at
/// matrix construction).
GFMatrix rref(const GFMatrix& m);

long gf_rank(const GFMatrix& m);

/// True when `row` lies in the row space of `canon` (canon in RREF form).
bool row_space_contains(const GFMatrix& canon, const std::vector<long>& row);

/// Subspace containment: every row of `a` lies in the row space of `b`.
bool subspace_leq(const GFMatrix& a, const GFMatrix& b);

/// Canonical form of the sum (span of the union) of two row spaces.
GFMatrix subspace_sum(const GFMatrix& a, const GFMatrix& b);

/// Canonical form of the intersection of two row spaces (Zassenhaus).
GFMatrix subspace_intersection(const GFMatrix& a, const GFMatrix& b);

/// All canonical RREF representatives of the `dim_sub`-dimensional
/// subspaces of GF(modulus)^dim_ambient, sorted lexicographically on the
/// flattened entries.
std::vector<GFMatrix> enumerate_subspaces(long dim_ambient, long dim_sub, long modulus);

}  // namespace latspec
