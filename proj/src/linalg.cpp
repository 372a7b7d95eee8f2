#include "latspec/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace latspec {

FunctionVector FunctionVector::ones(std::size_t n) {
    FunctionVector f(n);
    for (std::size_t i = 0; i < n; ++i) f.v_[i] = 1;
    return f;
}

FunctionVector FunctionVector::unit(std::size_t n, std::size_t i) {
    FunctionVector f(n);
    f.v_[i] = 1;
    return f;
}

bool FunctionVector::is_zero() const {
    return std::all_of(v_.begin(), v_.end(), [](const Rational& x) { return x.is_zero(); });
}

FunctionVector& FunctionVector::operator+=(const FunctionVector& o) {
    if (size() != o.size()) throw invalid_parameter_error("FunctionVector: length mismatch");
    for (std::size_t i = 0; i < v_.size(); ++i)
        if (!o.v_[i].is_zero()) v_[i] += o.v_[i];
    return *this;
}

FunctionVector& FunctionVector::operator-=(const FunctionVector& o) {
    if (size() != o.size()) throw invalid_parameter_error("FunctionVector: length mismatch");
    for (std::size_t i = 0; i < v_.size(); ++i)
        if (!o.v_[i].is_zero()) v_[i] -= o.v_[i];
    return *this;
}

FunctionVector& FunctionVector::operator*=(const Rational& c) {
    if (c.is_zero()) {
        for (auto& x : v_) x = Rational();
        return *this;
    }
    for (auto& x : v_)
        if (!x.is_zero()) x *= c;
    return *this;
}

void FunctionVector::add_scaled(const Rational& c, const FunctionVector& o) {
    if (size() != o.size()) throw invalid_parameter_error("FunctionVector: length mismatch");
    if (c.is_zero()) return;
    for (std::size_t i = 0; i < v_.size(); ++i)
        if (!o.v_[i].is_zero()) v_[i] += c * o.v_[i];
}

Rational dot(const FunctionVector& a, const FunctionVector& b) {
    if (a.size() != b.size()) throw invalid_parameter_error("dot: length mismatch");
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

FunctionVector hadamard(const FunctionVector& a, const FunctionVector& b) {
    if (a.size() != b.size()) throw invalid_parameter_error("hadamard: length mismatch");
    FunctionVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) r[i] = a[i] * b[i];
    return r;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FunctionVector RationalMatrix::multiply(const FunctionVector& x) const {
    if (x.size() != cols_) throw invalid_parameter_error("RationalMatrix: length mismatch");
    FunctionVector y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Rational s;
        for (std::size_t c = 0; c < cols_; ++c) {
            const Rational& a = at(r, c);
            if (!a.is_zero() && !x[c].is_zero()) s += a * x[c];
        }
        y[r] = s;
    }
    return y;
}

OrthoBasis OrthoBasis::standard_basis(std::size_t n) {
    OrthoBasis ob;
    ob.q_.reserve(n);
    ob.norms_.assign(n, Rational(1));
    for (std::size_t i = 0; i < n; ++i) ob.q_.push_back(FunctionVector::unit(n, i));
    return ob;
}

bool OrthoBasis::append(const FunctionVector& v) {
    FunctionVector r = residual(v);
    if (r.is_zero()) return false;
    norms_.push_back(dot(r, r));
    q_.push_back(std::move(r));
    return true;
}

std::vector<Rational> OrthoBasis::coefficients(const FunctionVector& f) const {
    std::vector<Rational> cs(q_.size());
    for (std::size_t i = 0; i < q_.size(); ++i) {
        Rational d = dot(f, q_[i]);
        if (!d.is_zero()) cs[i] = d / norms_[i];
    }
    return cs;
}

FunctionVector OrthoBasis::project(const FunctionVector& f) const {
    FunctionVector p(f.size());
    for (std::size_t i = 0; i < q_.size(); ++i) {
        Rational d = dot(f, q_[i]);
        if (!d.is_zero()) p.add_scaled(d / norms_[i], q_[i]);
    }
    return p;
}

FunctionVector OrthoBasis::residual(const FunctionVector& f) const {
    // The stored vectors are exactly orthogonal, so subtracting the whole
    // projection at once equals the sequential Gram-Schmidt sweep and keeps
    // every inner product against the original (often sparse) input.
    FunctionVector r = f;
    r -= project(f);
    return r;
}

namespace {

// Fraction-free row echelon form over the integers with per-row content
// reduction. Rows are scaled copies of the rational input; column order is
// left to right, pivot row is the first with a nonzero entry.
struct IntegerRef {
    std::vector<std::vector<Integer>> rows;
    std::vector<std::size_t> pivot_cols;  // per pivot row, increasing
    std::size_t cols = 0;

    std::size_t rank() const { return pivot_cols.size(); }
};

void reduce_row_content(std::vector<Integer>& row) {
    Integer g = 0;
    for (const Integer& x : row) {
        if (sgn(x) == 0) continue;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    if (g <= 1) return;
    for (Integer& x : row)
        if (sgn(x) != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

std::vector<Integer> scaled_integer_row(const RationalMatrix& m, std::size_t r) {
    Integer l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        const Integer d = m.at(r, c).denominator();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    std::vector<Integer> row(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        const Rational& x = m.at(r, c);
        row[c] = x.numerator() * (l / x.denominator());
    }
    return row;
}

IntegerRef integer_ref(const RationalMatrix& m) {
    IntegerRef ref;
    ref.cols = m.cols();
    ref.rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) ref.rows.push_back(scaled_integer_row(m, r));
    for (auto& row : ref.rows) reduce_row_content(row);

    std::size_t pr = 0;
    for (std::size_t c = 0; c < ref.cols && pr < ref.rows.size(); ++c) {
        std::size_t sel = pr;
        while (sel < ref.rows.size() && sgn(ref.rows[sel][c]) == 0) ++sel;
        if (sel == ref.rows.size()) continue;
        std::swap(ref.rows[pr], ref.rows[sel]);
        const std::vector<Integer>& pivot = ref.rows[pr];
        const Integer& p = pivot[c];
        for (std::size_t r = pr + 1; r < ref.rows.size(); ++r) {
            auto& row = ref.rows[r];
            if (sgn(row[c]) == 0) continue;
            const Integer f = row[c];
            for (std::size_t cc = c; cc < ref.cols; ++cc) row[cc] = p * row[cc] - f * pivot[cc];
            reduce_row_content(row);
        }
        ref.pivot_cols.push_back(c);
        ++pr;
    }
    return ref;
}

}  // namespace

std::size_t rational_rank(const std::vector<FunctionVector>& vectors) {
    if (vectors.empty()) return 0;
    const std::size_t n = vectors.front().size();
    for (const auto& v : vectors)
        if (v.size() != n) throw invalid_parameter_error("rational_rank: length mismatch");
    RationalMatrix m(vectors.size(), n);
    for (std::size_t r = 0; r < vectors.size(); ++r)
        for (std::size_t c = 0; c < n; ++c) m.at(r, c) = vectors[r][c];
    return integer_ref(m).rank();
}

std::size_t matrix_rank(const RationalMatrix& m) { return integer_ref(m).rank(); }

FunctionVector project_onto_span(const FunctionVector& f, const SubspaceBasis& basis) {
    for (const auto& v : basis.vectors)
        if (v.size() != f.size())
            throw invalid_parameter_error("project_onto_span: length mismatch");
    if (basis.ortho) {
        if (basis.ortho->size() != basis.vectors.size())
            throw invalid_parameter_error("project_onto_span: stale Gram data");
        return basis.ortho->project(f);
    }
    OrthoBasis ob;
    for (const auto& v : basis.vectors)
        if (!ob.append(v))
            throw invalid_parameter_error("project_onto_span: basis vectors are dependent");
    return ob.project(f);
}

SubspaceBasis nullspace_basis(const RationalMatrix& m) {
    IntegerRef ref = integer_ref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : ref.pivot_cols) is_pivot[c] = true;

    SubspaceBasis basis;
    basis.label = "kernel";
    for (std::size_t fc = 0; fc < n; ++fc) {
        if (is_pivot[fc]) continue;
        FunctionVector v(n);
        v[fc] = 1;
        // back-substitute pivot coordinates bottom-up
        for (std::size_t t = ref.rank(); t-- > 0;) {
            const std::size_t pc = ref.pivot_cols[t];
            const auto& row = ref.rows[t];
            Rational s;
            for (std::size_t c = pc + 1; c < n; ++c) {
                if (sgn(row[c]) == 0 || v[c].is_zero()) continue;
                s += Rational(row[c]) * v[c];
            }
            if (!s.is_zero()) v[pc] = -(s / Rational(row[pc]));
        }
        basis.vectors.push_back(std::move(v));
    }
    return basis;
}

}  // namespace latspec
