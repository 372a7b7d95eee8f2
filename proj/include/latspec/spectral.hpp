#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latspec/lattice.hpp"
#include "latspec/linalg.hpp"

namespace latspec {

/// Per-level structure constants of one family.
struct LevelConstants {
    int j = 0;
    Integer c;                      // upper-cover multiplier, 0 <= j <= d
    std::optional<Integer> alpha;   // defined for j < d
    std::optional<Integer> beta;    // defined for 1 <= j < d
    std::optional<Integer> nu;      // defined for 1 <= j <= d
    std::optional<Integer> a_up;    // a_j^{j+1}, defined for j < d
    std::optional<Integer> a_down;  // a_j^{j-1}, defined for j >= 1
};

struct SpectralRow {
    int j = 0;
    Integer theta;
    long dim = 0;
    Rational mu;
    LevelConstants constants;
};

struct SpectralTable {
    Family family;
    long vertex_count = 0;
    std::vector<SpectralRow> rows;
};

struct TightFrameReport {
    int j = 0;
    long frame_size = 0;
    Rational mu;
    long vectors_checked = 0;
    bool passed = false;
    std::string detail;
};

/// Spectral structure of one built lattice: the vertex-indicator embedding,
/// the adjacency operator and its distance classes, the nested level spans
/// with their orthogonal complements, eigenvalues, frame constants, and the
/// exact verification of all of it. All arithmetic is rational and exact.
///
/// Results are cached; build caches single-threaded, then share read-only.
class SpectralDecomposition {
public:
    explicit SpectralDecomposition(const GraphLattice& lattice);

    const GraphLattice& lattice() const { return lattice_; }
    long vertex_count() const { return nverts_; }

    /// Indicator vector of {x : z <= x} in vertex order. iota(top) = 0,
    /// iota(bottom) = all-ones.
    FunctionVector iota(const LatticeElement& z);
    /// Vertex indices where iota is 1, for the element at (level, position).
    const std::vector<long>& iota_support(int level, long position);

    /// Graph distance from the cached table (filled from the lattice).
    int distance(long x, long y);
    /// Vertices at distance i from x.
    const std::vector<long>& distance_class(int i, long x);

    /// Exact image of f under the adjacency operator. Symmetric.
    FunctionVector adjacency_apply(const FunctionVector& f);
    /// f mapped by the i-th distance matrix.
    FunctionVector distance_class_apply(int i, const FunctionVector& f);
    /// The i-th distance matrix as a dense 0/1 rational matrix.
    RationalMatrix adjacency_matrix(int i);
    /// p_ij^h, verified constant over every vertex pair at distance h.
    long intersection_number(int i, int j, int h);

    /// Maximal independent subset of the level-j indicator vectors, in
    /// canonical element order, with Gram data. Checks that the level-(j-1)
    /// span is contained in the level-j span.
    const SubspaceBasis& lambda_basis(int j);
    long lambda_dimension(int j);

    /// Exact basis of V_j: residuals of the level-j indicators against the
    /// level-(j-1) span, independent subset in canonical order.
    const SubspaceBasis& v_basis(int j);

    /// Sum of indicators over upper / lower covers of w.
    FunctionVector star_upper(const LatticeElement& w);
    FunctionVector star_lower(const LatticeElement& w);

    LevelConstants constants(int j) const;

    /// Closed-form eigenvalue of the adjacency operator on V_j. Also
    /// evaluates the recursive form and checks the two agree.
    Rational theta(int j);

    /// Checks A v = theta_j v exactly for every V_j basis vector, checks
    /// dim V_j against the independent kernel oracle on A - theta_j I,
    /// checks the dimensions sum to |X|, and fills the table.
    const SpectralTable& verify_eigenspaces();

    /// Gram-style level matrix: (U^j)_{xy} = #{u in level j : u <= x, u <= y},
    /// built directly from the indicator supports.
    RationalMatrix u_matrix(int j);
    /// The same matrix assembled from the distance matrices with the
    /// closed-form level counts as coefficients (independent route).
    RationalMatrix u_matrix_expansion(int j);

    /// Eigenvalue of the i-th distance matrix on V_j, read off empirically
    /// from its action on the V_j basis; checks the action is scalar and
    /// constant across the basis.
    Rational p_eigenvalue(int i, int j);

    /// Frame constant for level j; checks U^j v = mu_j v on the V_j basis,
    /// and for j = 1 also checks the closed form.
    Rational mu(int j);
    /// Closed form of mu_1 for this family.
    Rational mu_level1_closed_form() const;
    /// Closed form of p_i(1) for this family (cross-check of the j=1 row).
    Rational p1_closed_form(int i) const;

    /// Orthogonal projection onto V_j, realized as the difference of the
    /// projections onto the level-j and level-(j-1) spans.
    FunctionVector project_v(int j, const FunctionVector& h);

    /// Checks sum_u <u_check, f> u_check = mu_j f exactly for every V_j
    /// basis vector f, where u_check is the V_j-projection of the level-j
    /// indicator of u; also checks the scalar form.
    TightFrameReport tight_frame_check(int j);

private:
    void ensure_distances();
    void ensure_intersection_numbers();
    const OrthoBasis& lambda_ortho(int j);  // j = -1 gives the empty basis
    void build_lambda(int j);
    void build_v(int j);

    const GraphLattice& lattice_;
    long nverts_ = 0;
    int d_ = 0;

    std::vector<std::optional<std::vector<std::vector<long>>>> supports_;
    bool dist_built_ = false;
    std::vector<std::uint16_t> dist_;
    std::vector<std::vector<std::vector<long>>> classes_;
    std::optional<std::vector<long>> pijh_;

    OrthoBasis empty_ortho_;
    std::vector<std::optional<SubspaceBasis>> lambda_;
    std::vector<std::optional<SubspaceBasis>> v_;
    std::optional<std::vector<Integer>> thetas_;
    std::vector<std::optional<Rational>> mu_;
    std::optional<SpectralTable> table_;
};

}  // namespace latspec
