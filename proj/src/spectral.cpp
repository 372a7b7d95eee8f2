#include "latspec/spectral.hpp"

#include <algorithm>
#include <utility>

#include "latspec/combinatorics.hpp"
#include "latspec/errors.hpp"

namespace latspec {

namespace {

// Dense spectral work is quadratic-to-cubic in |X|; refuse instances where
// that is plainly out of reach.
constexpr long kMaxSpectralVertices = 4096;

// Levels up to this size use plain exact Gram-Schmidt for independent-subset
// extraction. Larger levels are preselected modulo two fixed primes (exact
// arithmetic certifies the outcome afterwards; see build_v).
constexpr std::size_t kExactSelectionLimit = 300;

constexpr std::uint64_t kSelectionPrimes[2] = {2147483647ULL, 2147483629ULL};

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    b %= p;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

// Row echelon accumulator over GF(p). Rows are kept pivot-normalized and
// sorted by pivot column.
class ModEchelon {
public:
    explicit ModEchelon(std::uint64_t p) : p_(p) {}

    /// Reduces the row against the current echelon; absorbs and returns
    /// true when something nonzero is left.
    bool absorb(std::vector<std::uint64_t> row) {
        for (std::size_t t = 0; t < rows_.size(); ++t) {
            const std::size_t pc = pivots_[t];
            if (row[pc] == 0) continue;
            const std::uint64_t f = row[pc];
            const auto& er = rows_[t];
            for (std::size_t c = pc; c < row.size(); ++c)
                if (er[c] != 0) row[c] = (row[c] + (p_ - f) * er[c]) % p_;
        }
        std::size_t pivot = row.size();
        for (std::size_t c = 0; c < row.size(); ++c)
            if (row[c] != 0) {
                pivot = c;
                break;
            }
        if (pivot == row.size()) return false;
        const std::uint64_t inv = mod_pow(row[pivot], p_ - 2, p_);
        for (std::size_t c = pivot; c < row.size(); ++c)
            if (row[c] != 0) row[c] = row[c] * inv % p_;
        const auto where = std::upper_bound(pivots_.begin(), pivots_.end(), pivot);
        const std::size_t idx = static_cast<std::size_t>(where - pivots_.begin());
        pivots_.insert(where, pivot);
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(row));
        return true;
    }

private:
    std::uint64_t p_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<std::size_t> pivots_;
};

std::vector<std::uint64_t> vector_mod_p(const FunctionVector& v, std::uint64_t p, bool& ok) {
    std::vector<std::uint64_t> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Rational& x = v[i];
        if (x.is_zero()) continue;
        const Integer num = x.numerator();
        const Integer den = x.denominator();
        const std::uint64_t dm = mpz_fdiv_ui(den.get_mpz_t(), static_cast<unsigned long>(p));
        if (dm == 0) {
            ok = false;
            return r;
        }
        const std::uint64_t nm = mpz_fdiv_ui(num.get_mpz_t(), static_cast<unsigned long>(p));
        r[i] = nm * mod_pow(dm, p - 2, p) % p;
    }
    ok = true;
    return r;
}

std::vector<std::uint64_t> support_mod_p(const std::vector<long>& support, std::size_t n) {
    std::vector<std::uint64_t> r(n, 0);
    for (long x : support) r[static_cast<std::size_t>(x)] = 1;
    return r;
}

Rational dot_on_support(const std::vector<long>& support, const FunctionVector& f) {
    Rational s;
    for (long x : support) {
        const Rational& v = f[static_cast<std::size_t>(x)];
        if (!v.is_zero()) s += v;
    }
    return s;
}

}  // namespace

SpectralDecomposition::SpectralDecomposition(const GraphLattice& lattice)
    : lattice_(lattice), nverts_(lattice.vertex_count()), d_(lattice.diameter()) {
    if (nverts_ > kMaxSpectralVertices)
        throw size_cap_error(lattice.family().describe() + ": " + std::to_string(nverts_) +
                             " vertices exceed the spectral-stage bound " +
                             std::to_string(kMaxSpectralVertices));
    supports_.resize(static_cast<std::size_t>(d_) + 2);
    lambda_.resize(static_cast<std::size_t>(d_) + 1);
    v_.resize(static_cast<std::size_t>(d_) + 1);
    mu_.resize(static_cast<std::size_t>(d_) + 1);
}

const std::vector<long>& SpectralDecomposition::iota_support(int level, long position) {
    auto& cache = supports_[static_cast<std::size_t>(level)];
    if (!cache) {
        const auto& elems = lattice_.level(level);
        std::vector<std::vector<long>> all(elems.size());
        const auto& verts = lattice_.level(d_);
        for (std::size_t e = 0; e < elems.size(); ++e) {
            if (level == d_ + 1) continue;  // top: empty support
            auto& supp = all[e];
            for (long x = 0; x < nverts_; ++x)
                if (lattice_.leq(elems[e], verts[static_cast<std::size_t>(x)])) supp.push_back(x);
        }
        cache = std::move(all);
    }
    return (*cache)[static_cast<std::size_t>(position)];
}

FunctionVector SpectralDecomposition::iota(const LatticeElement& z) {
    FunctionVector f(static_cast<std::size_t>(nverts_));
    const int r = lattice_.rank(z);
    if (r == d_ + 1) return f;  // indicator of the empty vertex set
    const long pos = lattice_.position_in_level(z);
    for (long x : iota_support(r, pos)) f[static_cast<std::size_t>(x)] = 1;
    return f;
}

void SpectralDecomposition::ensure_distances() {
    if (dist_built_) return;
    const std::size_t n = static_cast<std::size_t>(nverts_);
    dist_.assign(n * n, 0);
    for (long x = 0; x < nverts_; ++x) {
        for (long y = x; y < nverts_; ++y) {
            const int dxy = lattice_.distance(x, y);
            dist_[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(y)] =
                static_cast<std::uint16_t>(dxy);
            dist_[static_cast<std::size_t>(y) * n + static_cast<std::size_t>(x)] =
                static_cast<std::uint16_t>(dxy);
        }
    }
    classes_.assign(static_cast<std::size_t>(d_) + 1, {});
    for (auto& c : classes_) c.resize(n);
    for (long x = 0; x < nverts_; ++x)
        for (long y = 0; y < nverts_; ++y)
            classes_[dist_[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(y)]]
                    [static_cast<std::size_t>(x)]
                        .push_back(y);
    dist_built_ = true;
}

int SpectralDecomposition::distance(long x, long y) {
    ensure_distances();
    return dist_[static_cast<std::size_t>(x) * static_cast<std::size_t>(nverts_) +
                 static_cast<std::size_t>(y)];
}

const std::vector<long>& SpectralDecomposition::distance_class(int i, long x) {
    if (i < 0 || i > d_) throw invalid_parameter_error("distance_class: class out of range");
    ensure_distances();
    return classes_[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)];
}

FunctionVector SpectralDecomposition::adjacency_apply(const FunctionVector& f) {
    return distance_class_apply(1, f);
}

FunctionVector SpectralDecomposition::distance_class_apply(int i, const FunctionVector& f) {
    if (f.size() != static_cast<std::size_t>(nverts_))
        throw invalid_parameter_error("distance_class_apply: length mismatch");
    if (i < 0 || i > d_) throw invalid_parameter_error("distance_class_apply: class out of range");
    ensure_distances();
    FunctionVector out(f.size());
    const auto& cls = classes_[static_cast<std::size_t>(i)];
    for (long x = 0; x < nverts_; ++x) {
        Rational s;
        for (long y : cls[static_cast<std::size_t>(x)]) {
            const Rational& v = f[static_cast<std::size_t>(y)];
            if (!v.is_zero()) s += v;
        }
        out[static_cast<std::size_t>(x)] = s;
    }
    return out;
}

RationalMatrix SpectralDecomposition::adjacency_matrix(int i) {
    if (i < 0 || i > d_) throw invalid_parameter_error("adjacency_matrix: class out of range");
    ensure_distances();
    const std::size_t n = static_cast<std::size_t>(nverts_);
    RationalMatrix m(n, n);
    const auto& cls = classes_[static_cast<std::size_t>(i)];
    for (std::size_t x = 0; x < n; ++x)
        for (long y : cls[x]) m.at(x, static_cast<std::size_t>(y)) = 1;
    return m;
}

void SpectralDecomposition::ensure_intersection_numbers() {
    if (pijh_) return;
    ensure_distances();
    const std::size_t n = static_cast<std::size_t>(nverts_);
    const std::size_t w = static_cast<std::size_t>(d_) + 1;
    std::vector<long> table(w * w * w, -1);
    std::vector<long> cnt(w * w);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t h = dist_[x * n + y];
            std::fill(cnt.begin(), cnt.end(), 0);
            const std::uint16_t* dx = dist_.data() + x * n;
            const std::uint16_t* dy = dist_.data() + y * n;
            for (std::size_t z = 0; z < n; ++z) ++cnt[static_cast<std::size_t>(dx[z]) * w + dy[z]];
            for (std::size_t i = 0; i < w; ++i)
                for (std::size_t j = 0; j < w; ++j) {
                    long& slot = table[(i * w + j) * w + h];
                    if (slot < 0)
                        slot = cnt[i * w + j];
                    else if (slot != cnt[i * w + j])
                        throw verification_error(
                            lattice_.family().describe() +
                            ": intersection count is not constant over pairs at distance " +
                            std::to_string(h) + " (classes " + std::to_string(i) + "," +
                            std::to_string(j) + ")");
                }
        }
    }
    pijh_ = std::move(table);
}

long SpectralDecomposition::intersection_number(int i, int j, int h) {
    if (i < 0 || i > d_ || j < 0 || j > d_ || h < 0 || h > d_)
        throw invalid_parameter_error("intersection_number: index out of range");
    ensure_intersection_numbers();
    const std::size_t w = static_cast<std::size_t>(d_) + 1;
    const long v = (*pijh_)[(static_cast<std::size_t>(i) * w + static_cast<std::size_t>(j)) * w +
                            static_cast<std::size_t>(h)];
    return v < 0 ? 0 : v;  // -1 marks (i,j,h) with no witnessing pair
}

const OrthoBasis& SpectralDecomposition::lambda_ortho(int j) {
    if (j < 0) return empty_ortho_;
    return *lambda_basis(j).ortho;
}

long SpectralDecomposition::lambda_dimension(int j) {
    if (j < 0) return 0;
    return static_cast<long>(lambda_basis(j).dimension());
}

void SpectralDecomposition::build_lambda(int j) {
    const auto& elems = lattice_.level(j);
    SubspaceBasis basis;
    basis.label = "level-span";
    basis.level = j;

    if (j == d_) {
        // Level-d indicators are exactly the standard basis: each vertex
        // lies below itself and nothing else at its own level.
        for (long x = 0; x < nverts_; ++x) {
            const auto& supp = iota_support(d_, x);
            if (supp.size() != 1 || supp.front() != x)
                throw verification_error("level-d indicator is not a unit vector");
            basis.vectors.push_back(
                FunctionVector::unit(static_cast<std::size_t>(nverts_), static_cast<std::size_t>(x)));
        }
        basis.ortho = OrthoBasis::standard_basis(static_cast<std::size_t>(nverts_));
        lambda_[static_cast<std::size_t>(j)] = std::move(basis);
        return;
    }

    std::vector<std::size_t> selected;
    if (elems.size() <= kExactSelectionLimit) {
        OrthoBasis ob;
        for (std::size_t e = 0; e < elems.size(); ++e) {
            FunctionVector cand = iota(elems[e]);
            if (ob.append(cand)) {
                selected.push_back(e);
                basis.vectors.push_back(std::move(cand));
            }
        }
        basis.ortho = std::move(ob);
    } else {
        // Preselect modulo two fixed primes; the exact Gram-Schmidt pass
        // below certifies independence of the chosen subset.
        for (int attempt = 0; attempt < 2; ++attempt) {
            const std::uint64_t p = kSelectionPrimes[attempt];
            ModEchelon ech(p);
            std::vector<std::size_t> sel;
            for (std::size_t e = 0; e < elems.size(); ++e)
                if (ech.absorb(support_mod_p(iota_support(j, static_cast<long>(e)),
                                             static_cast<std::size_t>(nverts_))))
                    sel.push_back(e);
            if (attempt == 0)
                selected = std::move(sel);
            else if (selected != sel)
                throw verification_error("modular level-span preselection disagrees between primes");
        }
        OrthoBasis ob;
        for (std::size_t e : selected) {
            FunctionVector cand = iota(elems[e]);
            if (!ob.append(cand))
                throw verification_error("preselected level indicator is dependent over Q");
            basis.vectors.push_back(std::move(cand));
        }
        basis.ortho = std::move(ob);
    }

    lambda_[static_cast<std::size_t>(j)] = std::move(basis);

    // the previous level's span must sit inside this one
    if (j >= 1) {
        const auto& prev = lambda_basis(j - 1);
        const OrthoBasis& ob = *lambda_[static_cast<std::size_t>(j)]->ortho;
        for (const auto& b : prev.vectors)
            if (!ob.residual(b).is_zero())
                throw verification_error("level spans do not form a filtration at level " +
                                         std::to_string(j));
    }
}

const SubspaceBasis& SpectralDecomposition::lambda_basis(int j) {
    if (j < 0 || j > d_) throw invalid_parameter_error("lambda_basis: level out of range");
    if (!lambda_[static_cast<std::size_t>(j)]) build_lambda(j);
    return *lambda_[static_cast<std::size_t>(j)];
}

void SpectralDecomposition::build_v(int j) {
    const auto& elems = lattice_.level(j);
    const OrthoBasis& prev = lambda_ortho(j - 1);

    SubspaceBasis basis;
    basis.label = "eigenspace";
    basis.level = j;

    if (elems.size() <= kExactSelectionLimit) {
        OrthoBasis independence;
        for (std::size_t e = 0; e < elems.size(); ++e) {
            FunctionVector r = prev.residual(iota(elems[e]));
            if (r.is_zero()) continue;
            if (independence.append(r)) basis.vectors.push_back(std::move(r));
        }
    } else {
        const std::vector<FunctionVector>* prev_vectors =
            j >= 1 ? &lambda_basis(j - 1).vectors : nullptr;
        std::vector<std::size_t> selected;
        for (int attempt = 0; attempt < 2; ++attempt) {
            const std::uint64_t p = kSelectionPrimes[attempt];
            ModEchelon ech(p);
            if (prev_vectors)
                for (const auto& b : *prev_vectors) {
                    bool ok = true;
                    ech.absorb(vector_mod_p(b, p, ok));
                    if (!ok)
                        throw verification_error(
                            "level-span basis does not reduce modulo the selection prime");
                }
            std::vector<std::size_t> sel;
            for (std::size_t e = 0; e < elems.size(); ++e)
                if (ech.absorb(support_mod_p(iota_support(j, static_cast<long>(e)),
                                             static_cast<std::size_t>(nverts_))))
                    sel.push_back(e);
            if (attempt == 0)
                selected = std::move(sel);
            else if (selected != sel)
                throw verification_error("modular eigenspace preselection disagrees between primes");
        }
        for (std::size_t e : selected) {
            FunctionVector r = prev.residual(iota(elems[e]));
            if (r.is_zero())
                throw verification_error("preselected eigenspace candidate has zero residual");
            basis.vectors.push_back(std::move(r));
        }
        if (j == d_) {
            // dim V_d is pinned by dim Lambda_d = |X|, so the selection size
            // is certified immediately.
            const long expect = nverts_ - lambda_dimension(d_ - 1);
            if (static_cast<long>(basis.vectors.size()) != expect)
                throw verification_error("top-level eigenspace selection missed a direction");
        }
    }

    if (basis.vectors.empty())
        throw verification_error("eigenspace V_" + std::to_string(j) + " came out empty");
    if (basis.vectors.size() <= kExactSelectionLimit) {
        OrthoBasis ob;
        for (const auto& v : basis.vectors)
            if (!ob.append(v)) throw verification_error("eigenspace basis is dependent");
        basis.ortho = std::move(ob);
    }
    v_[static_cast<std::size_t>(j)] = std::move(basis);
}

const SubspaceBasis& SpectralDecomposition::v_basis(int j) {
    if (j < 0 || j > d_) throw invalid_parameter_error("v_basis: level out of range");
    if (!v_[static_cast<std::size_t>(j)]) build_v(j);
    return *v_[static_cast<std::size_t>(j)];
}

FunctionVector SpectralDecomposition::star_upper(const LatticeElement& w) {
    if (lattice_.rank(w) > d_) throw invalid_parameter_error("star_upper: undefined above level d");
    FunctionVector s(static_cast<std::size_t>(nverts_));
    for (const auto& v : lattice_.upper_covers(w)) s += iota(v);
    return s;
}

FunctionVector SpectralDecomposition::star_lower(const LatticeElement& w) {
    // the bottom element gives the empty sum
    FunctionVector s(static_cast<std::size_t>(nverts_));
    for (const auto& v : lattice_.lower_covers(w)) s += iota(v);
    return s;
}

LevelConstants SpectralDecomposition::constants(int j) const {
    if (j < 0 || j > d_) throw invalid_parameter_error("constants: level out of range");
    const Family& fam = lattice_.family();
    const int n = fam.n;
    const int k = fam.k;
    LevelConstants lc;
    lc.j = j;
    switch (fam.kind) {
        case FamilyKind::johnson:
            lc.c = k - j;
            if (j < d_) lc.alpha = Integer(n - 2 * j);
            if (j >= 1 && j < d_) lc.beta = Integer(k - (j - 1));
            if (j >= 1) lc.nu = Integer(k - (j - 1));
            if (j < d_) lc.a_up = Integer(n - j);
            if (j >= 1) lc.a_down = Integer(j);
            break;
        case FamilyKind::grassmann:
            lc.c = q_int(k - j, fam.q);
            if (j < d_)
                lc.alpha = q_int(n - 2 * j, fam.q) * int_pow(fam.q, static_cast<unsigned long>(j));
            if (j >= 1 && j < d_) lc.beta = q_int(k - (j - 1), fam.q);
            if (j >= 1) lc.nu = q_int(k - (j - 1), fam.q);
            if (j < d_) lc.a_up = q_int(n - j, fam.q);
            if (j >= 1) lc.a_down = q_int(j, fam.q);
            break;
        case FamilyKind::hamming:
            lc.c = n - j;
            if (j < d_) lc.alpha = Integer(2 * (n - j));
            if (j >= 1 && j < d_) lc.beta = Integer(n - j);  // c_{j-1} - 1
            if (j >= 1) lc.nu = Integer(1);
            if (j < d_) lc.a_up = Integer(2 * (n - j));
            if (j >= 1) lc.a_down = Integer(j);
            break;
    }
    return lc;
}

Rational SpectralDecomposition::theta(int j) {
    if (j < 0 || j > d_) throw invalid_parameter_error("theta: level out of range");
    if (!thetas_) {
        const Family& fam = lattice_.family();
        const int n = fam.n;
        const int k = fam.k;
        std::vector<Integer> closed(static_cast<std::size_t>(d_) + 1);
        for (int t = 0; t <= d_; ++t) {
            switch (fam.kind) {
                case FamilyKind::johnson:
                    closed[static_cast<std::size_t>(t)] =
                        Integer(k - t) * Integer(n - k - t) - Integer(t);
                    break;
                case FamilyKind::grassmann:
                    closed[static_cast<std::size_t>(t)] =
                        int_pow(fam.q, static_cast<unsigned long>(t + 1)) * q_int(k - t, fam.q) *
                            q_int(n - k - t, fam.q) -
                        q_int(t, fam.q);
                    break;
                case FamilyKind::hamming:
                    closed[static_cast<std::size_t>(t)] = Integer(n - 2 * t);
                    break;
            }
        }
        // recursive form: start at level d, add alpha_j (or 2) going down
        Integer rec;
        switch (fam.kind) {
            case FamilyKind::johnson: rec = Integer(-k); break;
            case FamilyKind::grassmann: rec = -q_int(k, fam.q); break;
            case FamilyKind::hamming: rec = Integer(-n); break;
        }
        for (int t = d_; t >= 0; --t) {
            if (t < d_) {
                if (fam.kind == FamilyKind::hamming)
                    rec += 2;
                else
                    rec += *constants(t).alpha;
            }
            if (rec != closed[static_cast<std::size_t>(t)])
                throw verification_error("eigenvalue closed form disagrees with the recursion at level " +
                                         std::to_string(t));
        }
        thetas_ = std::move(closed);
    }
    return Rational((*thetas_)[static_cast<std::size_t>(j)]);
}

RationalMatrix SpectralDecomposition::u_matrix(int j) {
    if (j < 0 || j > d_) throw invalid_parameter_error("u_matrix: level out of range");
    const std::size_t n = static_cast<std::size_t>(nverts_);
    RationalMatrix m(n, n);
    const auto& elems = lattice_.level(j);
    for (std::size_t e = 0; e < elems.size(); ++e) {
        const auto& supp = iota_support(j, static_cast<long>(e));
        for (long x : supp)
            for (long y : supp) {
                Rational& slot = m.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
                slot += 1;
            }
    }
    return m;
}

RationalMatrix SpectralDecomposition::u_matrix_expansion(int j) {
    if (j < 0 || j > d_) throw invalid_parameter_error("u_matrix_expansion: level out of range");
    ensure_distances();
    const std::size_t n = static_cast<std::size_t>(nverts_);
    RationalMatrix m(n, n);
    for (int l = j; l <= d_; ++l) {
        const Rational coef(lattice_.a_level_count(l, j));
        const auto& cls = classes_[static_cast<std::size_t>(d_ - l)];
        for (std::size_t x = 0; x < n; ++x)
            for (long y : cls[x]) m.at(x, static_cast<std::size_t>(y)) += coef;
    }
    return m;
}

Rational SpectralDecomposition::p_eigenvalue(int i, int j) {
    if (i < 0 || i > d_ || j < 0 || j > d_)
        throw invalid_parameter_error("p_eigenvalue: index out of range");
    const auto& basis = v_basis(j);
    std::optional<Rational> scalar;
    for (std::size_t t = 0; t < basis.vectors.size(); ++t) {
        const FunctionVector& v = basis.vectors[t];
        const FunctionVector w = distance_class_apply(i, v);
        std::size_t lead = v.size();
        for (std::size_t s = 0; s < v.size(); ++s)
            if (!v[s].is_zero()) {
                lead = s;
                break;
            }
        const Rational c = w[lead] / v[lead];
        FunctionVector check = v;
        check *= c;
        if (check != w)
            throw verification_error("distance matrix " + std::to_string(i) +
                                     " does not act as a scalar on basis vector " +
                                     std::to_string(t) + " of V_" + std::to_string(j));
        if (!scalar)
            scalar = c;
        else if (*scalar != c)
            throw verification_error("distance matrix " + std::to_string(i) +
                                     " acts with two different scalars on V_" + std::to_string(j));
    }
    return *scalar;
}

Rational SpectralDecomposition::mu_level1_closed_form() const {
    const Family& fam = lattice_.family();
    switch (fam.kind) {
        case FamilyKind::johnson: return Rational(binom(fam.n - 2, fam.k - 1));
        case FamilyKind::grassmann:
            return Rational(Integer(q_binom(fam.n - 2, fam.k - 1, fam.q) *
                                    int_pow(fam.q, static_cast<unsigned long>(fam.k - 1))));
        case FamilyKind::hamming:
            return Rational(Integer(int_pow(2, static_cast<unsigned long>(fam.n - 1))));
    }
    throw invalid_parameter_error("mu_level1_closed_form: unknown family");
}

Rational SpectralDecomposition::p1_closed_form(int i) const {
    const Family& fam = lattice_.family();
    const long n = fam.n;
    const long k = fam.k;
    switch (fam.kind) {
        case FamilyKind::johnson:
            return Rational(Integer(binom(k - 1, i) * binom(n - k - 1, i) -
                                    binom(k - 1, i - 1) * binom(n - k - 1, i - 1)));
        case FamilyKind::grassmann: {
            const long q = fam.q;
            const Rational frac(Integer(q_int(i, q) * q_int(n, q)),
                                Integer(q_int(k, q) * q_int(n - k, q) *
                                        int_pow(q, static_cast<unsigned long>(i))));
            return (Rational(1) - frac) *
                   Rational(Integer(
                       int_pow(q, static_cast<unsigned long>(i) * static_cast<unsigned long>(i)) *
                       q_binom(k, i, q) * q_binom(n - k, i, q)));
        }
        case FamilyKind::hamming:
            return Rational(Integer(binom(n, i) - 2 * binom(n - 1, i - 1)));
    }
    throw invalid_parameter_error("p1_closed_form: unknown family");
}

Rational SpectralDecomposition::mu(int j) {
    if (j < 0 || j > d_) throw invalid_parameter_error("mu: level out of range");
    if (mu_[static_cast<std::size_t>(j)]) return *mu_[static_cast<std::size_t>(j)];

    Rational value;
    for (int i = 0; i <= d_ - j; ++i)
        value += Rational(lattice_.a_level_count(d_ - i, j)) * p_eigenvalue(i, j);

    if (j == 1) {
        const Rational closed = mu_level1_closed_form();
        if (closed != value)
            throw verification_error("level-1 frame constant disagrees with its closed form");
    }

    // the level matrix must act on V_j as multiplication by mu_j
    const RationalMatrix U = u_matrix(j);
    for (const auto& v : v_basis(j).vectors) {
        FunctionVector expect = v;
        expect *= value;
        if (U.multiply(v) != expect)
            throw verification_error("level matrix does not act as mu on V_" + std::to_string(j));
    }

    mu_[static_cast<std::size_t>(j)] = value;
    return value;
}

const SpectralTable& SpectralDecomposition::verify_eigenspaces() {
    if (table_) return *table_;

    long dim_total = 0;
    std::vector<long> dims(static_cast<std::size_t>(d_) + 1);
    for (int j = 0; j <= d_; ++j) {
        const Rational th = theta(j);
        const auto& basis = v_basis(j);
        for (std::size_t t = 0; t < basis.vectors.size(); ++t) {
            const FunctionVector& x = basis.vectors[t];
            FunctionVector expect = x;
            expect *= th;
            if (adjacency_apply(x) != expect)
                throw verification_error("adjacency action fails at level " + std::to_string(j) +
                                         ", basis vector " + std::to_string(t));
        }
        dims[static_cast<std::size_t>(j)] = static_cast<long>(basis.dimension());
        dim_total += dims[static_cast<std::size_t>(j)];
        if (dims[static_cast<std::size_t>(j)] != lambda_dimension(j) - lambda_dimension(j - 1))
            throw verification_error("dim V_" + std::to_string(j) +
                                     " is not the level-span dimension difference");
        if (j > 0 && !(theta(j) < theta(j - 1)))
            throw verification_error("eigenvalues are not strictly decreasing");
    }
    if (dim_total != nverts_)
        throw verification_error("eigenspace dimensions sum to " + std::to_string(dim_total) +
                                 " instead of " + std::to_string(nverts_));

    // independent kernel oracle on A - theta I, one eigenvalue at a time
    const RationalMatrix A = adjacency_matrix(1);
    for (int j = 0; j <= d_; ++j) {
        RationalMatrix m = A;
        const Rational th = theta(j);
        for (std::size_t t = 0; t < m.rows(); ++t) m.at(t, t) -= th;
        const SubspaceBasis kernel = nullspace_basis(m);
        if (static_cast<long>(kernel.dimension()) != dims[static_cast<std::size_t>(j)])
            throw verification_error("kernel oracle dimension " + std::to_string(kernel.dimension()) +
                                     " != dim V_" + std::to_string(j) + " = " +
                                     std::to_string(dims[static_cast<std::size_t>(j)]));
    }

    SpectralTable table;
    table.family = lattice_.family();
    table.vertex_count = nverts_;
    for (int j = 0; j <= d_; ++j) {
        SpectralRow row;
        row.j = j;
        row.theta = theta(j).numerator();
        row.dim = dims[static_cast<std::size_t>(j)];
        row.mu = mu(j);
        row.constants = constants(j);
        table.rows.push_back(std::move(row));
    }
    table_ = std::move(table);
    return *table_;
}

FunctionVector SpectralDecomposition::project_v(int j, const FunctionVector& h) {
    if (j < 0 || j > d_) throw invalid_parameter_error("project_v: level out of range");
    FunctionVector p = lambda_ortho(j).project(h);
    if (j >= 1) p -= lambda_ortho(j - 1).project(h);
    return p;
}

TightFrameReport SpectralDecomposition::tight_frame_check(int j) {
    if (j < 0 || j > d_) throw invalid_parameter_error("tight_frame_check: level out of range");
    TightFrameReport report;
    report.j = j;
    report.frame_size = static_cast<long>(lattice_.level(j).size());
    report.mu = mu(j);
    report.passed = true;

    const OrthoBasis& prev = lambda_ortho(j - 1);
    const std::size_t m = prev.size();
    const std::size_t count = static_cast<std::size_t>(report.frame_size);
    const std::size_t n = static_cast<std::size_t>(nverts_);

    // frame vector u_check = iota_u - sum_i coef[u][i] q_i, kept factored
    std::vector<std::vector<Rational>> coef(count);
    for (std::size_t u = 0; u < count; ++u) {
        const auto& supp = iota_support(j, static_cast<long>(u));
        coef[u].resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            Rational s = dot_on_support(supp, prev.vectors()[i]);
            if (!s.is_zero()) coef[u][i] = s / prev.norm_sq(i);
        }
    }

    const auto& basis = v_basis(j);
    for (std::size_t t = 0; t < basis.vectors.size(); ++t) {
        const FunctionVector& f = basis.vectors[t];
        std::vector<Rational> w(m);
        for (std::size_t i = 0; i < m; ++i) w[i] = dot(prev.vectors()[i], f);

        // g[u] = <u_check, f>
        std::vector<Rational> g(count);
        for (std::size_t u = 0; u < count; ++u) {
            Rational s = dot_on_support(iota_support(j, static_cast<long>(u)), f);
            for (std::size_t i = 0; i < m; ++i)
                if (!coef[u][i].is_zero() && !w[i].is_zero()) s -= coef[u][i] * w[i];
            g[u] = s;
        }

        // sum_u g[u] u_check, expanded through the factored form
        FunctionVector lhs(n);
        std::vector<Rational> h(m);
        Rational scalar_sum;
        for (std::size_t u = 0; u < count; ++u) {
            if (g[u].is_zero()) continue;
            scalar_sum += g[u] * g[u];
            for (long x : iota_support(j, static_cast<long>(u)))
                lhs[static_cast<std::size_t>(x)] += g[u];
            for (std::size_t i = 0; i < m; ++i)
                if (!coef[u][i].is_zero()) h[i] += g[u] * coef[u][i];
        }
        for (std::size_t i = 0; i < m; ++i)
            if (!h[i].is_zero()) lhs.add_scaled(-h[i], prev.vectors()[i]);

        FunctionVector rhs = f;
        rhs *= report.mu;
        if (lhs != rhs) {
            report.passed = false;
            report.detail = "frame identity fails on basis vector " + std::to_string(t);
            return report;
        }
        if (scalar_sum != report.mu * dot(f, f)) {
            report.passed = false;
            report.detail = "scalar frame identity fails on basis vector " + std::to_string(t);
            return report;
        }
        ++report.vectors_checked;
    }
    return report;
}

}  // namespace latspec
