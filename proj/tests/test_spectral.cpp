#include <doctest.h>

#include <vector>

#include "latspec/lattice.hpp"
#include "latspec/spectral.hpp"

using latspec::Family;
using latspec::FunctionVector;
using latspec::GraphLattice;
using latspec::Integer;
using latspec::Rational;
using latspec::RationalMatrix;
using latspec::SignedWordElem;
using latspec::SpectralDecomposition;
using latspec::SubsetElem;

namespace {

std::vector<long> v_dims(SpectralDecomposition& s) {
    std::vector<long> dims;
    for (int j = 0; j <= s.lattice().diameter(); ++j)
        dims.push_back(static_cast<long>(s.v_basis(j).dimension()));
    return dims;
}

}  // namespace

TEST_CASE("indicator vectors at the boundary of the lattice") {
    const auto L = GraphLattice::build(Family::johnson(5, 2));
    SpectralDecomposition s(L);
    CHECK(s.iota(L.bottom()) == FunctionVector::ones(10));
    CHECK(s.iota(L.top()) == FunctionVector::zero(10));
    const FunctionVector atom = s.iota(SubsetElem{{1}});
    CHECK(latspec::dot(atom, atom) == Rational(4));  // vertices containing a fixed point
}

TEST_CASE("adjacency operator on constants and indicators") {
    const auto L = GraphLattice::build(Family::johnson(5, 2));
    SpectralDecomposition s(L);
    FunctionVector expect = FunctionVector::ones(10);
    expect *= Rational(6);  // valency k(n-k)
    CHECK(s.adjacency_apply(FunctionVector::ones(10)) == expect);

    // the adjacency image of a vertex indicator is its neighborhood profile
    const long x = 0;
    const FunctionVector image = s.adjacency_apply(s.iota(L.vertex(x)));
    for (long y = 0; y < L.vertex_count(); ++y)
        CHECK(image[static_cast<std::size_t>(y)] == Rational(L.distance(x, y) == 1 ? 1 : 0));
}

TEST_CASE("the parity vector of the 3-cube is an eigenvector at the bottom eigenvalue") {
    const auto L = GraphLattice::build(Family::hamming(3));
    SpectralDecomposition s(L);
    FunctionVector parity(static_cast<std::size_t>(L.vertex_count()));
    for (long x = 0; x < L.vertex_count(); ++x) {
        const auto& w = std::get<SignedWordElem>(L.vertex(x));
        parity[static_cast<std::size_t>(x)] = Rational(w.minus.size() % 2 == 0 ? 1 : -1);
    }
    FunctionVector expect = parity;
    expect *= Rational(-3);
    CHECK(s.adjacency_apply(parity) == expect);
}

TEST_CASE("distance matrices: identity, partition of the all-ones matrix, valency") {
    const auto L = GraphLattice::build(Family::johnson(5, 2));
    SpectralDecomposition s(L);
    CHECK(s.adjacency_matrix(0) == RationalMatrix::identity(10));
    RationalMatrix sum(10, 10);
    for (int i = 0; i <= L.diameter(); ++i) {
        const RationalMatrix a = s.adjacency_matrix(i);
        for (std::size_t r = 0; r < 10; ++r)
            for (std::size_t c = 0; c < 10; ++c) sum.at(r, c) += a.at(r, c);
    }
    for (std::size_t r = 0; r < 10; ++r)
        for (std::size_t c = 0; c < 10; ++c) CHECK(sum.at(r, c) == Rational(1));
    const RationalMatrix a1 = s.adjacency_matrix(1);
    for (std::size_t r = 0; r < 10; ++r) {
        Rational row_sum;
        for (std::size_t c = 0; c < 10; ++c) row_sum += a1.at(r, c);
        CHECK(row_sum == Rational(6));
    }
}

TEST_CASE("intersection numbers") {
    auto j52 = GraphLattice::build(Family::johnson(5, 2));
    SpectralDecomposition s(j52);
    for (int j = 0; j <= 2; ++j)
        for (int h = 0; h <= 2; ++h) CHECK(s.intersection_number(0, j, h) == (j == h ? 1 : 0));
    CHECK(s.intersection_number(1, 1, 0) == 6);

    auto h3 = GraphLattice::build(Family::hamming(3));
    SpectralDecomposition sh(h3);
    CHECK(sh.intersection_number(1, 1, 2) == 2);
}

TEST_CASE("level spans form a filtration with the expected dimensions") {
    const auto L = GraphLattice::build(Family::johnson(5, 2));
    SpectralDecomposition s(L);
    CHECK(s.lambda_dimension(0) == 1);
    CHECK(s.lambda_dimension(1) == 5);
    CHECK(s.lambda_dimension(2) == 10);  // the whole space
}

TEST_CASE("eigenspace dimensions per family") {
    {
        const auto L = GraphLattice::build(Family::johnson(5, 2));
        SpectralDecomposition s(L);
        CHECK(v_dims(s) == std::vector<long>{1, 4, 5});
    }
    {
        const auto L = GraphLattice::build(Family::hamming(3));
        SpectralDecomposition s(L);
        CHECK(v_dims(s) == std::vector<long>{1, 3, 3, 1});
    }
    {
        const auto L = GraphLattice::build(Family::grassmann(4, 2, 2));
        SpectralDecomposition s(L);
        CHECK(v_dims(s) == std::vector<long>{1, 14, 20});
    }
}

TEST_CASE("star sums collapse as scaled indicators") {
    const auto L = GraphLattice::build(Family::johnson(5, 2));
    SpectralDecomposition s(L);
    for (int j = 0; j <= L.diameter(); ++j) {
        const Rational c(s.constants(j).c);
        for (const auto& w : L.level(j)) {
            FunctionVector expect = s.iota(w);
            expect *= c;
            CHECK(s.star_upper(w) == expect);
        }
    }
    // the bottom's lower star is the empty sum
    CHECK(s.star_lower(L.bottom()).is_zero());
}

TEST_CASE("per-level constants") {
    {
        const auto L = GraphLattice::build(Family::johnson(5, 2));
        SpectralDecomposition s(L);
        const auto c1 = s.constants(1);
        CHECK(*c1.alpha == 3);
        CHECK(*c1.beta == 2);
        CHECK(c1.c == 1);
        const auto c0 = s.constants(0);
        CHECK(c0.c == 2);
        CHECK_FALSE(c0.beta.has_value());
        CHECK_FALSE(c0.a_down.has_value());
    }
    {
        const auto L = GraphLattice::build(Family::hamming(3));
        SpectralDecomposition s(L);
        const auto c1 = s.constants(1);
        CHECK(*c1.alpha == 4);
        CHECK(*c1.beta == 2);
        CHECK(*c1.nu == 1);
    }
    {
        const auto L = GraphLattice::build(Family::grassmann(4, 2, 2));
        SpectralDecomposition s(L);
        const auto c0 = s.constants(0);
        CHECK(*c0.alpha == 15);
        CHECK_FALSE(c0.beta.has_value());
    }
}

TEST_CASE("eigenvalues from the closed forms") {
    {
        const auto L = GraphLattice::build(Family::johnson(5, 2));
        SpectralDecomposition s(L);
        CHECK(s.theta(0) == Rational(6));
        CHECK(s.theta(1) == Rational(1));
        CHECK(s.theta(2) == Rational(-2));
    }
    {
        const auto L = GraphLattice::build(Family::hamming(3));
        SpectralDecomposition s(L);
        for (int j = 0; j <= 3; ++j) CHECK(s.theta(j) == Rational(3 - 2 * j));
    }
    {
        const auto L = GraphLattice::build(Family::grassmann(4, 2, 2));
        SpectralDecomposition s(L);
        CHECK(s.theta(0) == Rational(18));
        CHECK(s.theta(1) == Rational(3));
        CHECK(s.theta(2) == Rational(-3));
        // weighted trace vanishes: 18 + 14*3 - 20*3 = 0
        s.verify_eigenspaces();
        Rational trace;
        for (int j = 0; j <= 2; ++j)
            trace += s.theta(j) * Rational(static_cast<long>(s.v_basis(j).dimension()));
        CHECK(trace.is_zero());
    }
}

TEST_CASE("full eigenspace verification across the families") {
    {
        const auto L = GraphLattice::build(Family::johnson(5, 2));
        SpectralDecomposition s(L);
        const auto& table = s.verify_eigenspaces();
        REQUIRE(table.rows.size() == 3);
        CHECK(table.rows[0].dim == 1);
        CHECK(table.rows[1].dim == 4);
        CHECK(table.rows[2].dim == 5);
    }
    {
        const auto L = GraphLattice::build(Family::hamming(4));
        SpectralDecomposition s(L);
        const auto& table = s.verify_eigenspaces();
        const std::vector<long> expect_theta{4, 2, 0, -2, -4};
        const std::vector<long> expect_dim{1, 4, 6, 4, 1};
        REQUIRE(table.rows.size() == 5);
        for (std::size_t j = 0; j < 5; ++j) {
            CHECK(table.rows[j].theta == expect_theta[j]);
            CHECK(table.rows[j].dim == expect_dim[j]);
        }
    }
    {
        const auto L = GraphLattice::build(Family::grassmann(4, 2, 2));
        SpectralDecomposition s(L);
        const auto& table = s.verify_eigenspaces();
        CHECK(table.rows[0].dim == 1);
        CHECK(table.rows[1].dim == 14);
        CHECK(table.rows[2].dim == 20);
    }
}

TEST_CASE("level matrices directly and through the distance expansion") {
    const auto L = GraphLattice::build(Family::johnson(5, 2));
    SpectralDecomposition s(L);
    // U^0 is the all-ones matrix, U^d the identity
    const RationalMatrix u0 = s.u_matrix(0);
    for (std::size_t r = 0; r < 10; ++r)
        for (std::size_t c = 0; c < 10; ++c) CHECK(u0.at(r, c) == Rational(1));
    CHECK(s.u_matrix(2) == RationalMatrix::identity(10));
    // entries of U^1 count the shared points of two vertices
    const RationalMatrix u1 = s.u_matrix(1);
    for (long x = 0; x < 10; ++x)
        for (long y = 0; y < 10; ++y) {
            const long overlap = 2 - L.distance(x, y);
            CHECK(u1.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) ==
                  Rational(overlap));
        }
    for (int j = 0; j <= 2; ++j) CHECK(s.u_matrix(j) == s.u_matrix_expansion(j));
}

TEST_CASE("distance-matrix eigenvalues read off the eigenspaces") {
    const auto h3 = GraphLattice::build(Family::hamming(3));
    SpectralDecomposition s(h3);
    for (int j = 0; j <= 3; ++j) {
        CHECK(s.p_eigenvalue(0, j) == Rational(1));
        CHECK(s.p_eigenvalue(1, j) == s.theta(j));
    }
    const std::vector<long> row{1, 1, -1, -1};
    for (int i = 0; i <= 3; ++i) {
        CHECK(s.p_eigenvalue(i, 1) == Rational(row[static_cast<std::size_t>(i)]));
        CHECK(s.p1_closed_form(i) == Rational(row[static_cast<std::size_t>(i)]));
    }
}

TEST_CASE("frame constants") {
    {
        const auto L = GraphLattice::build(Family::johnson(5, 2));
        SpectralDecomposition s(L);
        CHECK(s.mu(1) == Rational(3));
        CHECK(s.mu(0) == Rational(10));  // sum of the distance-class sizes
    }
    {
        const auto L = GraphLattice::build(Family::hamming(3));
        SpectralDecomposition s(L);
        CHECK(s.mu(1) == Rational(4));
        CHECK(s.mu(3) == Rational(1));
    }
    {
        const auto L = GraphLattice::build(Family::grassmann(4, 2, 2));
        SpectralDecomposition s(L);
        CHECK(s.mu(1) == Rational(6));
    }
}

TEST_CASE("tight-frame identity per level") {
    {
        const auto L = GraphLattice::build(Family::johnson(5, 2));
        SpectralDecomposition s(L);
        for (int j = 0; j <= 2; ++j) {
            const auto report = s.tight_frame_check(j);
            CHECK(report.passed);
            CHECK(report.vectors_checked == static_cast<long>(s.v_basis(j).dimension()));
        }
    }
    {
        const auto L = GraphLattice::build(Family::hamming(3));
        SpectralDecomposition s(L);
        const auto report = s.tight_frame_check(3);
        CHECK(report.passed);
        CHECK(report.mu == Rational(1));
    }
}

TEST_CASE("indicator product rule and inner products over all element pairs") {
    const auto L = GraphLattice::build(Family::johnson(5, 2));
    SpectralDecomposition s(L);
    std::vector<const latspec::LatticeElement*> elems;
    for (const auto& level : L.levels())
        for (const auto& e : level) elems.push_back(&e);
    for (const auto* z : elems)
        for (const auto* y : elems) {
            const FunctionVector prod = latspec::hadamard(s.iota(*z), s.iota(*y));
            const latspec::LatticeElement join = L.join(*z, *y);
            CHECK(prod == s.iota(join));
            CHECK(latspec::dot(s.iota(*z), s.iota(*y)) ==
                  Rational(L.a_vertex_count(L.rank(join))));
        }
}

TEST_CASE("operator application agrees with explicit matrix multiplication") {
    const auto L = GraphLattice::build(Family::grassmann(4, 2, 2));
    SpectralDecomposition s(L);
    const RationalMatrix a1 = s.adjacency_matrix(1);
    FunctionVector f(static_cast<std::size_t>(L.vertex_count()));
    long c = -17;
    for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = Rational(c, (c % 5 + 7));
        c = (c * 31 + 7) % 23;
    }
    CHECK(s.adjacency_apply(f) == a1.multiply(f));
}

TEST_CASE("eigenspace bases are mutually orthogonal") {
    const auto L = GraphLattice::build(Family::hamming(4));
    SpectralDecomposition s(L);
    for (int i = 0; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j)
            for (const auto& vi : s.v_basis(i).vectors)
                for (const auto& vj : s.v_basis(j).vectors) CHECK(latspec::dot(vi, vj).is_zero());
}

TEST_CASE("projection onto an eigenspace splits the identity") {
    const auto L = GraphLattice::build(Family::johnson(5, 2));
    SpectralDecomposition s(L);
    FunctionVector f(10);
    for (std::size_t i = 0; i < 10; ++i) f[i] = Rational(static_cast<long>(3 * i) - 7, 4);
    FunctionVector sum(10);
    for (int j = 0; j <= 2; ++j) sum += s.project_v(j, f);
    CHECK(sum == f);
}
