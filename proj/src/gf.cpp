#include "latspec/gf.hpp"

#include <algorithm>
#include <string>

#include "latspec/combinatorics.hpp"

namespace latspec {

namespace {

long mod_reduce(long v, long p) {
    long r = v % p;
    return r < 0 ? r + p : r;
}

long mod_inv(long a, long p) {
    // extended Euclid; a nonzero mod p, p prime
    long t = 0, new_t = 1;
    long r = p, new_r = mod_reduce(a, p);
    while (new_r != 0) {
        long q = r / new_r;
        long tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw invalid_parameter_error("GF: element not invertible");
    return mod_reduce(t, p);
}

void require_same_modulus(const GFElement& a, const GFElement& b) {
    if (a.modulus() != b.modulus())
        throw invalid_parameter_error("GF: mixed moduli " + std::to_string(a.modulus()) + " and " +
                                      std::to_string(b.modulus()));
}

}  // namespace

GFElement::GFElement(long value, long modulus) : value_(0), modulus_(modulus) {
    if (!is_prime(modulus))
        throw invalid_parameter_error("GF: modulus " + std::to_string(modulus) +
                                      " is not prime (prime fields only)");
    value_ = mod_reduce(value, modulus);
}

GFElement GFElement::operator+(const GFElement& o) const {
    require_same_modulus(*this, o);
    return GFElement(value_ + o.value_, modulus_);
}

GFElement GFElement::operator-(const GFElement& o) const {
    require_same_modulus(*this, o);
    return GFElement(value_ - o.value_, modulus_);
}

GFElement GFElement::operator*(const GFElement& o) const {
    require_same_modulus(*this, o);
    return GFElement(value_ * o.value_, modulus_);
}

GFElement GFElement::operator/(const GFElement& o) const {
    require_same_modulus(*this, o);
    if (o.value_ == 0) throw invalid_parameter_error("GF: division by zero");
    return GFElement(value_ * mod_inv(o.value_, modulus_), modulus_);
}

GFElement GFElement::operator-() const { return GFElement(-value_, modulus_); }

GFElement GFElement::inverse() const {
    if (value_ == 0) throw invalid_parameter_error("GF: zero has no inverse");
    return GFElement(mod_inv(value_, modulus_), modulus_);
}

GFMatrix::GFMatrix(long rows, long cols, long modulus)
    : rows_(rows), cols_(cols), modulus_(modulus), v_(static_cast<std::size_t>(rows * cols), 0) {
    if (rows < 0 || cols < 0) throw invalid_parameter_error("GFMatrix: negative dimensions");
    if (!is_prime(modulus))
        throw invalid_parameter_error("GFMatrix: modulus " + std::to_string(modulus) +
                                      " is not prime (prime fields only)");
}

GFMatrix GFMatrix::from_rows(const std::vector<std::vector<long>>& rows, long cols, long modulus) {
    GFMatrix m(static_cast<long>(rows.size()), cols, modulus);
    for (long r = 0; r < m.rows_; ++r) {
        if (static_cast<long>(rows[static_cast<std::size_t>(r)].size()) != cols)
            throw invalid_parameter_error("GFMatrix: ragged rows");
        for (long c = 0; c < cols; ++c)
            m.set_value(r, c, rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    }
    return m;
}

void GFMatrix::set_value(long r, long c, long value) {
    v_[static_cast<std::size_t>(r * cols_ + c)] = mod_reduce(value, modulus_);
}

std::vector<long> GFMatrix::row_values(long r) const {
    return std::vector<long>(v_.begin() + r * cols_, v_.begin() + (r + 1) * cols_);
}

bool GFMatrix::is_canonical_rref() const {
    long prev_pivot = -1;
    for (long r = 0; r < rows_; ++r) {
        long pivot = -1;
        for (long c = 0; c < cols_; ++c) {
            if (value_at(r, c) != 0) {
                pivot = c;
                break;
            }
        }
        if (pivot < 0) return false;  // zero row
        if (pivot <= prev_pivot) return false;
        if (value_at(r, pivot) != 1) return false;
        for (long rr = 0; rr < rows_; ++rr)
            if (rr != r && value_at(rr, pivot) != 0) return false;
        prev_pivot = pivot;
    }
    return true;
}

GFMatrix rref(const GFMatrix& m) {
    const long p = m.modulus();
    std::vector<std::vector<long>> rows;
    rows.reserve(static_cast<std::size_t>(m.rows()));
    for (long r = 0; r < m.rows(); ++r) rows.push_back(m.row_values(r));

    long pivot_row = 0;
    for (long c = 0; c < m.cols() && pivot_row < static_cast<long>(rows.size()); ++c) {
        long sel = -1;
        for (long r = pivot_row; r < static_cast<long>(rows.size()); ++r) {
            if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0) {
                sel = r;
                break;
            }
        }
        if (sel < 0) continue;
        std::swap(rows[static_cast<std::size_t>(pivot_row)], rows[static_cast<std::size_t>(sel)]);
        auto& pr = rows[static_cast<std::size_t>(pivot_row)];
        const long inv = mod_inv(pr[static_cast<std::size_t>(c)], p);
        for (long cc = c; cc < m.cols(); ++cc)
            pr[static_cast<std::size_t>(cc)] = mod_reduce(pr[static_cast<std::size_t>(cc)] * inv, p);
        for (long r = 0; r < static_cast<long>(rows.size()); ++r) {
            if (r == pivot_row) continue;
            const long f = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            if (f == 0) continue;
            for (long cc = c; cc < m.cols(); ++cc) {
                auto& x = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)];
                x = mod_reduce(x - f * pr[static_cast<std::size_t>(cc)], p);
            }
        }
        ++pivot_row;
    }
    rows.resize(static_cast<std::size_t>(pivot_row));  // drop zero rows
    return GFMatrix::from_rows(rows, m.cols(), p);
}

long gf_rank(const GFMatrix& m) { return rref(m).rows(); }

bool row_space_contains(const GFMatrix& canon, const std::vector<long>& row) {
    const long p = canon.modulus();
    std::vector<long> w = row;
    long r = 0;
    for (long c = 0; c < canon.cols() && r < canon.rows(); ++c) {
        if (canon.value_at(r, c) == 0) continue;  // not this row's pivot column
        // canon is RREF: canon(r, c) == 1 at its pivot
        const long f = w[static_cast<std::size_t>(c)];
        if (f != 0)
            for (long cc = c; cc < canon.cols(); ++cc)
                w[static_cast<std::size_t>(cc)] =
                    mod_reduce(w[static_cast<std::size_t>(cc)] - f * canon.value_at(r, cc), p);
        ++r;
    }
    return std::all_of(w.begin(), w.end(), [](long x) { return x == 0; });
}

bool subspace_leq(const GFMatrix& a, const GFMatrix& b) {
    if (a.cols() != b.cols() || a.modulus() != b.modulus())
        throw invalid_parameter_error("subspace_leq: incompatible matrices");
    for (long r = 0; r < a.rows(); ++r)
        if (!row_space_contains(b, a.row_values(r))) return false;
    return true;
}

GFMatrix subspace_sum(const GFMatrix& a, const GFMatrix& b) {
    if (a.cols() != b.cols() || a.modulus() != b.modulus())
        throw invalid_parameter_error("subspace_sum: incompatible matrices");
    std::vector<std::vector<long>> rows;
    for (long r = 0; r < a.rows(); ++r) rows.push_back(a.row_values(r));
    for (long r = 0; r < b.rows(); ++r) rows.push_back(b.row_values(r));
    return rref(GFMatrix::from_rows(rows, a.cols(), a.modulus()));
}

GFMatrix subspace_intersection(const GFMatrix& a, const GFMatrix& b) {
    if (a.cols() != b.cols() || a.modulus() != b.modulus())
        throw invalid_parameter_error("subspace_intersection: incompatible matrices");
    const long n = a.cols();
    // Zassenhaus: reduce [A|A; B|0]; rows with zero left half carry an
    // intersection basis in their right half.
    std::vector<std::vector<long>> rows;
    for (long r = 0; r < a.rows(); ++r) {
        std::vector<long> w(static_cast<std::size_t>(2 * n), 0);
        for (long c = 0; c < n; ++c) {
            w[static_cast<std::size_t>(c)] = a.value_at(r, c);
            w[static_cast<std::size_t>(n + c)] = a.value_at(r, c);
        }
        rows.push_back(std::move(w));
    }
    for (long r = 0; r < b.rows(); ++r) {
        std::vector<long> w(static_cast<std::size_t>(2 * n), 0);
        for (long c = 0; c < n; ++c) w[static_cast<std::size_t>(c)] = b.value_at(r, c);
        rows.push_back(std::move(w));
    }
    GFMatrix reduced = rref(GFMatrix::from_rows(rows, 2 * n, a.modulus()));
    std::vector<std::vector<long>> inter;
    for (long r = 0; r < reduced.rows(); ++r) {
        bool left_zero = true;
        for (long c = 0; c < n && left_zero; ++c)
            if (reduced.value_at(r, c) != 0) left_zero = false;
        if (!left_zero) continue;
        std::vector<long> w(static_cast<std::size_t>(n));
        for (long c = 0; c < n; ++c) w[static_cast<std::size_t>(c)] = reduced.value_at(r, n + c);
        inter.push_back(std::move(w));
    }
    return rref(GFMatrix::from_rows(inter, n, a.modulus()));
}

std::vector<GFMatrix> enumerate_subspaces(long dim_ambient, long dim_sub, long modulus) {
    if (dim_sub < 0 || dim_sub > dim_ambient)
        throw invalid_parameter_error("enumerate_subspaces: dimension out of range");
    std::vector<GFMatrix> out;
    if (dim_sub == 0) {
        out.emplace_back(0, dim_ambient, modulus);
        return out;
    }
    // Every subspace has a unique RREF basis: choose pivot columns, then
    // fill the free cells (right of the row's pivot, outside pivot columns)
    // with arbitrary field values.
    std::vector<long> pivots(static_cast<std::size_t>(dim_sub));
    for (long i = 0; i < dim_sub; ++i) pivots[static_cast<std::size_t>(i)] = i;
    const auto emit_for_pivots = [&](const std::vector<long>& piv) {
        std::vector<bool> is_pivot(static_cast<std::size_t>(dim_ambient), false);
        for (long c : piv) is_pivot[static_cast<std::size_t>(c)] = true;
        std::vector<std::pair<long, long>> free_cells;
        for (long r = 0; r < dim_sub; ++r)
            for (long c = piv[static_cast<std::size_t>(r)] + 1; c < dim_ambient; ++c)
                if (!is_pivot[static_cast<std::size_t>(c)]) free_cells.emplace_back(r, c);
        std::vector<long> fill(free_cells.size(), 0);
        while (true) {
            GFMatrix m(dim_sub, dim_ambient, modulus);
            for (long r = 0; r < dim_sub; ++r) m.set_value(r, piv[static_cast<std::size_t>(r)], 1);
            for (std::size_t t = 0; t < free_cells.size(); ++t)
                m.set_value(free_cells[t].first, free_cells[t].second, fill[t]);
            out.push_back(std::move(m));
            std::size_t t = 0;
            while (t < fill.size() && fill[t] == modulus - 1) fill[t++] = 0;
            if (t == fill.size()) break;
            ++fill[t];
        }
    };
    while (true) {
        emit_for_pivots(pivots);
        // next pivot combination in lexicographic order
        long i = dim_sub - 1;
        while (i >= 0 && pivots[static_cast<std::size_t>(i)] == dim_ambient - dim_sub + i) --i;
        if (i < 0) break;
        ++pivots[static_cast<std::size_t>(i)];
        for (long t = i + 1; t < dim_sub; ++t)
            pivots[static_cast<std::size_t>(t)] = pivots[static_cast<std::size_t>(t - 1)] + 1;
    }
    std::sort(out.begin(), out.end(),
              [](const GFMatrix& x, const GFMatrix& y) { return x.flattened() < y.flattened(); });
    return out;
}

}  // namespace latspec
