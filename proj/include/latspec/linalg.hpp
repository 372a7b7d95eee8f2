#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "latspec/rational.hpp"

namespace latspec {

/// Element of R^X as a dense sequence of exact rationals, indexed by the
/// canonical vertex order of the owning lattice.
class FunctionVector {
public:
    FunctionVector() = default;
    explicit FunctionVector(std::size_t n) : v_(n) {}

    static FunctionVector zero(std::size_t n) { return FunctionVector(n); }
    static FunctionVector ones(std::size_t n);
    static FunctionVector unit(std::size_t n, std::size_t i);

    std::size_t size() const { return v_.size(); }
    const Rational& operator[](std::size_t i) const { return v_[i]; }
    Rational& operator[](std::size_t i) { return v_[i]; }

    bool is_zero() const;

    FunctionVector& operator+=(const FunctionVector& o);
    FunctionVector& operator-=(const FunctionVector& o);
    FunctionVector& operator*=(const Rational& c);
    /// this += c * o
    void add_scaled(const Rational& c, const FunctionVector& o);

    friend FunctionVector operator+(FunctionVector a, const FunctionVector& b) { a += b; return a; }
    friend FunctionVector operator-(FunctionVector a, const FunctionVector& b) { a -= b; return a; }
    friend FunctionVector operator*(const Rational& c, FunctionVector a) { a *= c; return a; }

    friend bool operator==(const FunctionVector& a, const FunctionVector& b) { return a.v_ == b.v_; }
    friend bool operator!=(const FunctionVector& a, const FunctionVector& b) { return !(a == b); }

private:
    std::vector<Rational> v_;
};

Rational dot(const FunctionVector& a, const FunctionVector& b);

/// Pointwise product.
FunctionVector hadamard(const FunctionVector& a, const FunctionVector& b);

/// Dense matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), v_(rows * cols) {}

    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Rational& at(std::size_t r, std::size_t c) const { return v_[r * cols_ + c]; }
    Rational& at(std::size_t r, std::size_t c) { return v_[r * cols_ + c]; }

    FunctionVector multiply(const FunctionVector& x) const;

    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.v_ == b.v_;
    }
    friend bool operator!=(const RationalMatrix& a, const RationalMatrix& b) { return !(a == b); }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> v_;
};

/// Incremental exact Gram-Schmidt state: holds the orthogonalized vectors
/// and their squared norms, so projections cost one pass of inner products.
class OrthoBasis {
public:
    /// The standard basis of R^n, which is its own Gram-Schmidt result.
    static OrthoBasis standard_basis(std::size_t n);

    std::size_t size() const { return q_.size(); }
    std::size_t ambient_dim() const { return q_.empty() ? 0 : q_.front().size(); }
    const std::vector<FunctionVector>& vectors() const { return q_; }
    const Rational& norm_sq(std::size_t i) const { return norms_[i]; }

    /// Gram-Schmidt step: appends the residual of v against the current
    /// span. Returns false (and appends nothing) when the residual is zero,
    /// i.e. v was already in the span.
    bool append(const FunctionVector& v);

    /// Projection coefficients <f, q_i>/<q_i, q_i>.
    std::vector<Rational> coefficients(const FunctionVector& f) const;

    FunctionVector project(const FunctionVector& f) const;
    FunctionVector residual(const FunctionVector& f) const;

private:
    std::vector<FunctionVector> q_;
    std::vector<Rational> norms_;
};

/// Ordered list of linearly independent vectors spanning a named subspace,
/// together with its Gram-Schmidt data when the producer has built it.
struct SubspaceBasis {
    std::vector<FunctionVector> vectors;
    std::string label;
    int level = -1;
    std::optional<OrthoBasis> ortho;

    std::size_t dimension() const { return vectors.size(); }
};

/// Exact rank over the rationals. All vectors must have equal length.
std::size_t rational_rank(const std::vector<FunctionVector>& vectors);

/// Exact orthogonal projection of f onto span(basis). The residual
/// f - result has inner product exactly zero with every basis vector.
/// Uses the basis's stored Gram data when present. Rejects length
/// mismatches.
FunctionVector project_onto_span(const FunctionVector& f, const SubspaceBasis& basis);

/// Exact basis of the kernel of m, one vector per free column, in free
/// column order; empty when the kernel is trivial.
SubspaceBasis nullspace_basis(const RationalMatrix& m);

std::size_t matrix_rank(const RationalMatrix& m);

}  // namespace latspec
