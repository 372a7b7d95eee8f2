#include "latspec/lattice.hpp"

#include <algorithm>
#include <stdexcept>

#include "latspec/combinatorics.hpp"
#include "latspec/errors.hpp"

namespace latspec {

Family Family::johnson(int n, int k) {
    Family f;
    f.kind = FamilyKind::johnson;
    f.n = n;
    f.k = k;
    f.validate();
    return f;
}

Family Family::grassmann(int n, int k, long q) {
    Family f;
    f.kind = FamilyKind::grassmann;
    f.n = n;
    f.k = k;
    f.q = q;
    f.validate();
    return f;
}

Family Family::hamming(int n) {
    Family f;
    f.kind = FamilyKind::hamming;
    f.n = n;
    f.validate();
    return f;
}

std::string Family::name() const {
    switch (kind) {
        case FamilyKind::johnson: return "johnson";
        case FamilyKind::grassmann: return "grassmann";
        case FamilyKind::hamming: return "hamming";
    }
    return {};
}

std::string Family::describe() const {
    switch (kind) {
        case FamilyKind::johnson:
            return "J(" + std::to_string(n) + "," + std::to_string(k) + ")";
        case FamilyKind::grassmann:
            return "G(" + std::to_string(n) + "," + std::to_string(k) + ";" + std::to_string(q) + ")";
        case FamilyKind::hamming:
            return "H(" + std::to_string(n) + ",2)";
    }
    return {};
}

void Family::validate() const {
    switch (kind) {
        case FamilyKind::johnson:
            if (k < 1) throw invalid_parameter_error("johnson: k must be >= 1");
            if (2 * k > n) throw invalid_parameter_error("johnson: requires 2k <= n");
            return;
        case FamilyKind::grassmann:
            if (k < 1) throw invalid_parameter_error("grassmann: k must be >= 1");
            if (2 * k > n) throw invalid_parameter_error("grassmann: requires 2k <= n");
            if (!is_prime(q))
                throw invalid_parameter_error(
                    "grassmann: q = " + std::to_string(q) +
                    " is not prime; only prime fields are supported");
            return;
        case FamilyKind::hamming:
            if (n < 1) throw invalid_parameter_error("hamming: n must be >= 1");
            return;
    }
    throw invalid_parameter_error("family: unknown kind");
}

namespace {

// --- canonical element orders ------------------------------------------

int hamming_digit(const SignedWordElem& w, int pos) {
    // +1 < -1 < 0 encoded as 0 < 1 < 2
    if (std::binary_search(w.plus.begin(), w.plus.end(), pos)) return 0;
    if (std::binary_search(w.minus.begin(), w.minus.end(), pos)) return 1;
    return 2;
}

bool signed_word_less(const SignedWordElem& a, const SignedWordElem& b) {
    int last = 0;
    if (!a.plus.empty()) last = std::max(last, a.plus.back());
    if (!a.minus.empty()) last = std::max(last, a.minus.back());
    if (!b.plus.empty()) last = std::max(last, b.plus.back());
    if (!b.minus.empty()) last = std::max(last, b.minus.back());
    for (int pos = 1; pos <= last; ++pos) {
        const int da = hamming_digit(a, pos);
        const int db = hamming_digit(b, pos);
        if (da != db) return da < db;
    }
    return false;
}

// --- enumeration ---------------------------------------------------------

std::vector<std::vector<int>> enumerate_subsets(int n, int l) {
    std::vector<std::vector<int>> out;
    if (l < 0 || l > n) return out;
    std::vector<int> cur(static_cast<std::size_t>(l));
    for (int i = 0; i < l; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
        out.push_back(cur);
        int i = l - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - l + i + 1) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int t = i + 1; t < l; ++t)
            cur[static_cast<std::size_t>(t)] = cur[static_cast<std::size_t>(t - 1)] + 1;
    }
    if (l == 0) out.assign(1, {});
    return out;
}

std::vector<LatticeElement> enumerate_johnson_level(int n, int l) {
    std::vector<LatticeElement> out;
    for (auto& s : enumerate_subsets(n, l)) out.push_back(SubsetElem{std::move(s)});
    return out;
}

std::vector<LatticeElement> enumerate_hamming_level(int n, int l) {
    std::vector<LatticeElement> out;
    for (const auto& support : enumerate_subsets(n, l)) {
        // all sign patterns over the support
        const int m = static_cast<int>(support.size());
        for (long mask = 0; mask < (1L << m); ++mask) {
            SignedWordElem w;
            for (int i = 0; i < m; ++i) {
                if (mask & (1L << i))
                    w.minus.push_back(support[static_cast<std::size_t>(i)]);
                else
                    w.plus.push_back(support[static_cast<std::size_t>(i)]);
            }
            out.push_back(std::move(w));
        }
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

std::vector<LatticeElement> enumerate_grassmann_level(int n, int l, long q) {
    std::vector<LatticeElement> out;
    for (auto& m : enumerate_subspaces(n, l, q)) out.push_back(SubspaceElem{std::move(m)});
    return out;
}

// --- sorted-vector set helpers -------------------------------------------

std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

bool sorted_includes(const std::vector<int>& big, const std::vector<int>& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool sorted_disjoint(const std::vector<int>& a, const std::vector<int>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib)
            ++ia;
        else if (*ib < *ia)
            ++ib;
        else
            return false;
    }
    return true;
}

}  // namespace

bool canonical_less(const LatticeElement& a, const LatticeElement& b) {
    if (is_top(a)) return false;
    if (is_top(b)) return true;
    if (const auto* sa = std::get_if<SubsetElem>(&a))
        return sa->members < std::get<SubsetElem>(b).members;
    if (const auto* wa = std::get_if<SignedWordElem>(&a))
        return signed_word_less(*wa, std::get<SignedWordElem>(b));
    return std::get<SubspaceElem>(a).mat.flattened() < std::get<SubspaceElem>(b).mat.flattened();
}

GraphLattice GraphLattice::build(const Family& family, const SizeLimits& limits) {
    family.validate();
    const int d = family.diameter();

    // level sizes from the closed-form counts, checked against the caps
    // before any enumeration happens
    std::vector<Integer> sizes;
    Integer total = 1;  // top
    for (int l = 0; l <= d; ++l) {
        Integer s;
        switch (family.kind) {
            case FamilyKind::johnson: s = binom(family.n, l); break;
            case FamilyKind::grassmann: s = q_binom(family.n, l, family.q); break;
            case FamilyKind::hamming: s = int_pow(2, static_cast<unsigned long>(l)) * binom(family.n, l); break;
        }
        sizes.push_back(s);
        total += s;
    }
    if (sizes.back() > limits.max_vertices)
        throw size_cap_error(family.describe() + ": vertex count " + int_str(sizes.back()) +
                             " exceeds the cap " + std::to_string(limits.max_vertices));
    if (total > limits.max_total_elements)
        throw size_cap_error(family.describe() + ": total element count " + int_str(total) +
                             " exceeds the cap " + std::to_string(limits.max_total_elements));

    GraphLattice L;
    L.family_ = family;
    L.d_ = d;
    for (int l = 0; l <= d; ++l) {
        std::vector<LatticeElement> level;
        switch (family.kind) {
            case FamilyKind::johnson: level = enumerate_johnson_level(family.n, l); break;
            case FamilyKind::grassmann: level = enumerate_grassmann_level(family.n, l, family.q); break;
            case FamilyKind::hamming: level = enumerate_hamming_level(family.n, l); break;
        }
        if (Integer(static_cast<long>(level.size())) != sizes[static_cast<std::size_t>(l)])
            throw verification_error(family.describe() + ": enumerated level " + std::to_string(l) +
                                     " size disagrees with the closed-form count");
        L.levels_.push_back(std::move(level));
    }
    L.levels_.push_back({TopElem{}});
    return L;
}

long GraphLattice::total_elements() const {
    long t = 0;
    for (const auto& lvl : levels_) t += static_cast<long>(lvl.size());
    return t;
}

const std::vector<LatticeElement>& GraphLattice::level(int l) const {
    if (l < 0 || l > d_ + 1) throw invalid_parameter_error("level: index out of range");
    return levels_[static_cast<std::size_t>(l)];
}

const LatticeElement& GraphLattice::vertex(long index) const {
    const auto& verts = levels_[static_cast<std::size_t>(d_)];
    if (index < 0 || index >= static_cast<long>(verts.size()))
        throw invalid_parameter_error("vertex: index out of range");
    return verts[static_cast<std::size_t>(index)];
}

long GraphLattice::vertex_index(const LatticeElement& x) const {
    if (rank(x) != d_) throw invalid_parameter_error("vertex_index: not a vertex");
    return position_in_level(x);
}

long GraphLattice::position_in_level(const LatticeElement& e) const {
    const auto& lvl = levels_[static_cast<std::size_t>(rank(e))];
    const auto it = std::lower_bound(lvl.begin(), lvl.end(), e, canonical_less);
    if (it == lvl.end() || !(*it == e))
        throw invalid_parameter_error("position_in_level: element not in this lattice");
    return static_cast<long>(it - lvl.begin());
}

int GraphLattice::rank(const LatticeElement& e) const {
    if (is_top(e)) return d_ + 1;
    if (const auto* s = std::get_if<SubsetElem>(&e)) return static_cast<int>(s->members.size());
    if (const auto* w = std::get_if<SignedWordElem>(&e))
        return static_cast<int>(w->plus.size() + w->minus.size());
    return static_cast<int>(std::get<SubspaceElem>(e).mat.rows());
}

bool GraphLattice::leq(const LatticeElement& u, const LatticeElement& w) const {
    if (is_top(w)) return true;
    if (is_top(u)) return false;
    switch (family_.kind) {
        case FamilyKind::johnson:
            return sorted_includes(std::get<SubsetElem>(w).members, std::get<SubsetElem>(u).members);
        case FamilyKind::grassmann:
            return subspace_leq(std::get<SubspaceElem>(u).mat, std::get<SubspaceElem>(w).mat);
        case FamilyKind::hamming: {
            const auto& a = std::get<SignedWordElem>(u);
            const auto& b = std::get<SignedWordElem>(w);
            return sorted_includes(b.plus, a.plus) && sorted_includes(b.minus, a.minus);
        }
    }
    throw invalid_parameter_error("leq: unknown family");
}

LatticeElement GraphLattice::meet(const LatticeElement& u, const LatticeElement& w) const {
    if (is_top(u)) return w;
    if (is_top(w)) return u;
    switch (family_.kind) {
        case FamilyKind::johnson:
            return SubsetElem{sorted_intersection(std::get<SubsetElem>(u).members,
                                                  std::get<SubsetElem>(w).members)};
        case FamilyKind::grassmann:
            return SubspaceElem{
                subspace_intersection(std::get<SubspaceElem>(u).mat, std::get<SubspaceElem>(w).mat)};
        case FamilyKind::hamming: {
            const auto& a = std::get<SignedWordElem>(u);
            const auto& b = std::get<SignedWordElem>(w);
            return SignedWordElem{sorted_intersection(a.plus, b.plus),
                                  sorted_intersection(a.minus, b.minus)};
        }
    }
    throw invalid_parameter_error("meet: unknown family");
}

LatticeElement GraphLattice::join(const LatticeElement& u, const LatticeElement& w) const {
    if (is_top(u) || is_top(w)) return TopElem{};
    switch (family_.kind) {
        case FamilyKind::johnson: {
            auto uni = sorted_union(std::get<SubsetElem>(u).members, std::get<SubsetElem>(w).members);
            if (static_cast<int>(uni.size()) > family_.k) return TopElem{};
            return SubsetElem{std::move(uni)};
        }
        case FamilyKind::grassmann: {
            GFMatrix span = subspace_sum(std::get<SubspaceElem>(u).mat, std::get<SubspaceElem>(w).mat);
            if (span.rows() > family_.k) return TopElem{};
            return SubspaceElem{std::move(span)};
        }
        case FamilyKind::hamming: {
            const auto& a = std::get<SignedWordElem>(u);
            const auto& b = std::get<SignedWordElem>(w);
            auto plus = sorted_union(a.plus, b.plus);
            auto minus = sorted_union(a.minus, b.minus);
            if (!sorted_disjoint(plus, minus)) return TopElem{};
            return SignedWordElem{std::move(plus), std::move(minus)};
        }
    }
    throw invalid_parameter_error("join: unknown family");
}

bool GraphLattice::covers(const LatticeElement& w, const LatticeElement& u) const {
    return rank(w) == rank(u) + 1 && leq(u, w);
}

std::vector<LatticeElement> GraphLattice::upper_covers(const LatticeElement& w) const {
    const int r = rank(w);
    std::vector<LatticeElement> out;
    if (r >= d_ + 1) return out;
    for (const auto& v : levels_[static_cast<std::size_t>(r + 1)])
        if (leq(w, v)) out.push_back(v);
    return out;
}

std::vector<LatticeElement> GraphLattice::lower_covers(const LatticeElement& w) const {
    const int r = rank(w);
    std::vector<LatticeElement> out;
    if (r <= 0) return out;
    for (const auto& v : levels_[static_cast<std::size_t>(r - 1)])
        if (leq(v, w)) out.push_back(v);
    return out;
}

Integer GraphLattice::a_level_count(int j, int l) const {
    if (j < 0 || j > d_ || l < 0 || l > d_)
        throw invalid_parameter_error("a_level_count: level out of range");
    const int n = family_.n;
    if (l <= j) {
        switch (family_.kind) {
            case FamilyKind::johnson: return binom(j, l);
            case FamilyKind::grassmann: return q_binom(j, l, family_.q);
            case FamilyKind::hamming: return binom(j, l);
        }
    } else {
        switch (family_.kind) {
            case FamilyKind::johnson: return binom(n - j, l - j);
            case FamilyKind::grassmann: return q_binom(n - j, l - j, family_.q);
            case FamilyKind::hamming:
                return int_pow(2, static_cast<unsigned long>(l - j)) * binom(n - j, l - j);
        }
    }
    throw invalid_parameter_error("a_level_count: unknown family");
}

Integer GraphLattice::a_vertex_count(int j) const {
    if (j == d_ + 1) return 0;
    return a_level_count(j, d_);
}

int GraphLattice::meet_rank(const LatticeElement& x, const LatticeElement& y) const {
    if (is_top(x)) return rank(y);
    if (is_top(y)) return rank(x);
    switch (family_.kind) {
        case FamilyKind::johnson:
            return static_cast<int>(sorted_intersection(std::get<SubsetElem>(x).members,
                                                        std::get<SubsetElem>(y).members)
                                        .size());
        case FamilyKind::grassmann: {
            // dim(x meet y) = dim x + dim y - dim(x + y)
            const auto& a = std::get<SubspaceElem>(x).mat;
            const auto& b = std::get<SubspaceElem>(y).mat;
            return static_cast<int>(a.rows() + b.rows() - subspace_sum(a, b).rows());
        }
        case FamilyKind::hamming: {
            const auto& a = std::get<SignedWordElem>(x);
            const auto& b = std::get<SignedWordElem>(y);
            return static_cast<int>(sorted_intersection(a.plus, b.plus).size() +
                                    sorted_intersection(a.minus, b.minus).size());
        }
    }
    throw invalid_parameter_error("meet_rank: unknown family");
}

int GraphLattice::distance(const LatticeElement& x, const LatticeElement& y) const {
    if (rank(x) != d_ || rank(y) != d_)
        throw invalid_parameter_error("distance: arguments must be vertices");
    return d_ - meet_rank(x, y);
}

int GraphLattice::distance(long x_index, long y_index) const {
    return distance(vertex(x_index), vertex(y_index));
}

}  // namespace latspec
