#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "latspec/gf.hpp"
#include "latspec/rational.hpp"

namespace latspec {

enum class FamilyKind { johnson, grassmann, hamming };

/// Graph family with parameters. Johnson J(n,k): k-subsets of an n-set,
/// 2k <= n, k >= 1. Grassmann G(n,k;q): k-dimensional subspaces of
/// GF(q)^n, 2k <= n, k >= 1, q prime. Hamming H(n,2): words of length n
/// over a 2-letter alphabet, n >= 1.
struct Family {
    FamilyKind kind = FamilyKind::johnson;
    int n = 0;
    int k = 0;   // unused for hamming
    long q = 0;  // grassmann only

    static Family johnson(int n, int k);
    static Family grassmann(int n, int k, long q);
    static Family hamming(int n);

    int diameter() const { return kind == FamilyKind::hamming ? n : k; }
    std::string name() const;      // "johnson" | "grassmann" | "hamming"
    std::string describe() const;  // e.g. "J(5,2)", "G(4,2;2)", "H(3,2)"

    void validate() const;  // throws invalid_parameter_error

    friend bool operator==(const Family& a, const Family& b) {
        return a.kind == b.kind && a.n == b.n && a.k == b.k && a.q == b.q;
    }
};

/// Sorted subset of {1..n}.
struct SubsetElem {
    std::vector<int> members;
    friend bool operator==(const SubsetElem& a, const SubsetElem& b) { return a.members == b.members; }
};

/// Canonical RREF row space over GF(q); a 0 x n matrix encodes the zero
/// subspace.
struct SubspaceElem {
    GFMatrix mat;
    friend bool operator==(const SubspaceElem& a, const SubspaceElem& b) { return a.mat == b.mat; }
};

/// Partial signed word: plus holds the +1 positions, minus the -1
/// positions, disjoint subsets of {1..n}.
struct SignedWordElem {
    std::vector<int> plus;
    std::vector<int> minus;
    friend bool operator==(const SignedWordElem& a, const SignedWordElem& b) {
        return a.plus == b.plus && a.minus == b.minus;
    }
};

/// The adjoined greatest element.
struct TopElem {
    friend bool operator==(const TopElem&, const TopElem&) { return true; }
};

using LatticeElement = std::variant<SubsetElem, SubspaceElem, SignedWordElem, TopElem>;

inline bool is_top(const LatticeElement& e) { return std::holds_alternative<TopElem>(e); }

/// Strict order used for the canonical per-level enumeration: subsets
/// lexicographically; signed words lexicographically on the ternary word
/// with +1 < -1 < 0 per position; subspaces lexicographically on the
/// flattened RREF entries. Top sorts last.
bool canonical_less(const LatticeElement& a, const LatticeElement& b);

struct SizeLimits {
    long max_vertices = 20000;
    long max_total_elements = 100000;
};

/// A fully built instance: the ranked lattice of one graph family, levels
/// 0..d+1 enumerated in canonical order, with the vertex set at level d.
/// Immutable after build; every query is pure.
class GraphLattice {
public:
    static GraphLattice build(const Family& family, const SizeLimits& limits = {});

    const Family& family() const { return family_; }
    int diameter() const { return d_; }
    long vertex_count() const { return static_cast<long>(levels_[static_cast<std::size_t>(d_)].size()); }
    long total_elements() const;

    const std::vector<std::vector<LatticeElement>>& levels() const { return levels_; }
    const std::vector<LatticeElement>& level(int l) const;
    const LatticeElement& bottom() const { return levels_.front().front(); }
    const LatticeElement& top() const { return levels_.back().front(); }
    const LatticeElement& vertex(long index) const;

    /// Index of a vertex in the canonical order of level d.
    long vertex_index(const LatticeElement& x) const;
    /// Position of an element within its level's canonical order.
    long position_in_level(const LatticeElement& e) const;

    int rank(const LatticeElement& e) const;  // rank(top) = d+1
    bool leq(const LatticeElement& u, const LatticeElement& w) const;
    LatticeElement meet(const LatticeElement& u, const LatticeElement& w) const;
    LatticeElement join(const LatticeElement& u, const LatticeElement& w) const;

    /// True when w covers u: u < w with no element strictly between.
    /// Computed through the rank function (the lattice is ranked).
    bool covers(const LatticeElement& w, const LatticeElement& u) const;
    std::vector<LatticeElement> upper_covers(const LatticeElement& w) const;
    std::vector<LatticeElement> lower_covers(const LatticeElement& w) const;

    /// Closed-form count a_j^l: for an element z at level j, the number of
    /// level-l elements below z (l <= j) or above z (l >= j). Independent
    /// of the choice of z.
    Integer a_level_count(int j, int l) const;
    /// a_j = a_j^d for j <= d, with a_{d+1} = 0.
    Integer a_vertex_count(int j) const;

    /// Rank of the meet, computed without materializing the meet.
    int meet_rank(const LatticeElement& x, const LatticeElement& y) const;

    /// Graph distance between vertices: d - rank(x meet y).
    int distance(long x_index, long y_index) const;
    int distance(const LatticeElement& x, const LatticeElement& y) const;

private:
    GraphLattice() = default;

    Family family_;
    int d_ = 0;
    std::vector<std::vector<LatticeElement>> levels_;
};

}  // namespace latspec
