#include <doctest.h>

#include <vector>

#include "latspec/lattice.hpp"

using latspec::Family;
using latspec::GFMatrix;
using latspec::GraphLattice;
using latspec::Integer;
using latspec::LatticeElement;
using latspec::SignedWordElem;
using latspec::SizeLimits;
using latspec::SubsetElem;
using latspec::SubspaceElem;

namespace {

std::vector<std::size_t> level_sizes(const GraphLattice& L) {
    std::vector<std::size_t> sizes;
    for (const auto& level : L.levels()) sizes.push_back(level.size());
    return sizes;
}

}  // namespace

TEST_CASE("level sizes of the three families") {
    const auto j52 = GraphLattice::build(Family::johnson(5, 2));
    CHECK(level_sizes(j52) == std::vector<std::size_t>{1, 5, 10, 1});

    const auto h3 = GraphLattice::build(Family::hamming(3));
    CHECK(level_sizes(h3) == std::vector<std::size_t>{1, 6, 12, 8, 1});

    const auto g422 = GraphLattice::build(Family::grassmann(4, 2, 2));
    CHECK(level_sizes(g422) == std::vector<std::size_t>{1, 15, 35, 1});
}

TEST_CASE("parameter gates") {
    CHECK_THROWS_AS(Family::johnson(3, 2), latspec::invalid_parameter_error);   // 2k > n
    CHECK_THROWS_AS(Family::johnson(5, 0), latspec::invalid_parameter_error);
    CHECK_THROWS_AS(Family::grassmann(4, 2, 4), latspec::invalid_parameter_error);  // q not prime
    CHECK_THROWS_AS(Family::grassmann(3, 2, 2), latspec::invalid_parameter_error);  // 2k > n
    CHECK_THROWS_AS(Family::hamming(0), latspec::invalid_parameter_error);
}

TEST_CASE("size caps refuse oversized instances before enumeration") {
    CHECK_THROWS_AS(GraphLattice::build(Family::johnson(300, 2)), latspec::size_cap_error);
    SizeLimits tiny;
    tiny.max_vertices = 5;
    CHECK_THROWS_AS(GraphLattice::build(Family::johnson(5, 2), tiny), latspec::size_cap_error);
    SizeLimits roomy;
    roomy.max_vertices = 50000;
    roomy.max_total_elements = 250000;
    CHECK(GraphLattice::build(Family::johnson(300, 1), roomy).vertex_count() == 300);
}

TEST_CASE("meets per family") {
    const auto j52 = GraphLattice::build(Family::johnson(5, 2));
    CHECK(j52.meet(SubsetElem{{1, 2}}, SubsetElem{{2, 3}}) == LatticeElement(SubsetElem{{2}}));
    CHECK(j52.meet(SubsetElem{{1, 2}}, j52.top()) == LatticeElement(SubsetElem{{1, 2}}));

    const auto h3 = GraphLattice::build(Family::hamming(3));
    CHECK(h3.meet(SignedWordElem{{1}, {2}}, SignedWordElem{{1}, {3}}) ==
          LatticeElement(SignedWordElem{{1}, {}}));

    const auto g422 = GraphLattice::build(Family::grassmann(4, 2, 2));
    const SubspaceElem e12{GFMatrix::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}}, 4, 2)};
    const SubspaceElem e23{GFMatrix::from_rows({{0, 1, 0, 0}, {0, 0, 1, 0}}, 4, 2)};
    const SubspaceElem e2{GFMatrix::from_rows({{0, 1, 0, 0}}, 4, 2)};
    CHECK(g422.meet(e12, e23) == LatticeElement(e2));
}

TEST_CASE("joins per family, including the overflow cases") {
    const auto j52 = GraphLattice::build(Family::johnson(5, 2));
    CHECK(j52.join(SubsetElem{{1}}, SubsetElem{{2}}) == LatticeElement(SubsetElem{{1, 2}}));
    CHECK(latspec::is_top(j52.join(SubsetElem{{1, 2}}, SubsetElem{{2, 3}})));  // union too large

    const auto h3 = GraphLattice::build(Family::hamming(3));
    CHECK(latspec::is_top(h3.join(SignedWordElem{{1}, {}}, SignedWordElem{{}, {1}})));  // sign clash
    CHECK(h3.join(SignedWordElem{{1}, {}}, SignedWordElem{{}, {2}}) ==
          LatticeElement(SignedWordElem{{1}, {2}}));

    const auto g422 = GraphLattice::build(Family::grassmann(4, 2, 2));
    const SubspaceElem e1{GFMatrix::from_rows({{1, 0, 0, 0}}, 4, 2)};
    const SubspaceElem e2{GFMatrix::from_rows({{0, 1, 0, 0}}, 4, 2)};
    const SubspaceElem e12{GFMatrix::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}}, 4, 2)};
    CHECK(g422.join(e1, e2) == LatticeElement(e12));
    const SubspaceElem e34{GFMatrix::from_rows({{0, 0, 1, 0}, {0, 0, 0, 1}}, 4, 2)};
    CHECK(latspec::is_top(g422.join(e12, e34)));
}

TEST_CASE("ranks") {
    const auto j52 = GraphLattice::build(Family::johnson(5, 2));
    CHECK(j52.rank(j52.bottom()) == 0);
    CHECK(j52.rank(j52.top()) == 3);
    for (const auto& x : j52.level(2)) CHECK(j52.rank(x) == j52.diameter());

    const auto g422 = GraphLattice::build(Family::grassmann(4, 2, 2));
    for (const auto& e : g422.level(1))
        CHECK(g422.rank(e) == std::get<SubspaceElem>(e).mat.rows());
}

TEST_CASE("order relation and covers") {
    const auto j52 = GraphLattice::build(Family::johnson(5, 2));
    CHECK(j52.leq(SubsetElem{{1}}, SubsetElem{{1, 3}}));
    CHECK_FALSE(j52.leq(SubsetElem{{2}}, SubsetElem{{1, 3}}));
    CHECK(j52.leq(SubsetElem{{1, 3}}, j52.top()));

    CHECK(j52.upper_covers(SubsetElem{{1}}).size() == 4);
    CHECK(j52.covers(SubsetElem{{1, 2}}, SubsetElem{{1}}));
    CHECK_FALSE(j52.covers(SubsetElem{{1, 2}}, SubsetElem{{3}}));

    const auto h3 = GraphLattice::build(Family::hamming(3));
    for (const auto& x : h3.level(3)) CHECK(h3.lower_covers(x).size() == 3);
}

TEST_CASE("rank-based covers agree with the brute-force interval scan") {
    for (const auto& fam : {Family::johnson(5, 2), Family::hamming(3)}) {
        const auto L = GraphLattice::build(fam);
        std::vector<const LatticeElement*> elems;
        for (const auto& level : L.levels())
            for (const auto& e : level) elems.push_back(&e);
        for (const auto* u : elems) {
            for (const auto* w : elems) {
                const bool strict = L.leq(*u, *w) && !(*u == *w);
                bool between = false;
                for (const auto* z : elems) {
                    if (*z == *u || *z == *w) continue;
                    if (L.leq(*u, *z) && L.leq(*z, *w)) {
                        between = true;
                        break;
                    }
                }
                CHECK(L.covers(*w, *u) == (strict && !between));
            }
        }
    }
}

TEST_CASE("closed-form level counts against brute force") {
    const auto j73 = GraphLattice::build(Family::johnson(7, 3));
    CHECK(j73.a_level_count(3, 2) == 3);

    const auto h3 = GraphLattice::build(Family::hamming(3));
    CHECK(h3.a_level_count(1, 3) == 4);
    // brute force: vertices above a fixed atom
    const auto& atom = h3.level(1).front();
    long above = 0;
    for (const auto& x : h3.level(3))
        if (h3.leq(atom, x)) ++above;
    CHECK(Integer(above) == h3.a_level_count(1, 3));

    const auto g422 = GraphLattice::build(Family::grassmann(4, 2, 2));
    CHECK(g422.a_level_count(1, 2) == 7);  // planes over a fixed line in GF(2)^4
    const auto& line = g422.level(1).front();
    long planes = 0;
    for (const auto& x : g422.level(2))
        if (g422.leq(line, x)) ++planes;
    CHECK(Integer(planes) == g422.a_level_count(1, 2));

    CHECK(g422.a_vertex_count(g422.diameter() + 1) == 0);
}

TEST_CASE("distances") {
    const auto j52 = GraphLattice::build(Family::johnson(5, 2));
    CHECK(j52.distance(SubsetElem{{1, 2}}, SubsetElem{{1, 2}}) == 0);
    CHECK(j52.distance(SubsetElem{{1, 2}}, SubsetElem{{1, 3}}) == 1);
    CHECK(j52.distance(SubsetElem{{1, 2}}, SubsetElem{{3, 4}}) == 2);

    const auto h3 = GraphLattice::build(Family::hamming(3));
    CHECK(h3.distance(SignedWordElem{{1, 2, 3}, {}}, SignedWordElem{{3}, {1, 2}}) == 2);
}

TEST_CASE("canonical enumeration is deterministic and ordered") {
    const auto a = GraphLattice::build(Family::johnson(5, 2));
    const auto b = GraphLattice::build(Family::johnson(5, 2));
    for (int l = 0; l <= a.diameter() + 1; ++l) CHECK(a.level(l) == b.level(l));
    CHECK(a.level(2).front() == LatticeElement(SubsetElem{{1, 2}}));
    CHECK(a.level(2).back() == LatticeElement(SubsetElem{{4, 5}}));

    // signed words: +1 before -1 before 0, position-major
    const auto h2 = GraphLattice::build(Family::hamming(2));
    const auto& atoms = h2.level(1);
    REQUIRE(atoms.size() == 4);
    CHECK(atoms[0] == LatticeElement(SignedWordElem{{1}, {}}));
    CHECK(atoms[1] == LatticeElement(SignedWordElem{{}, {1}}));
    CHECK(atoms[2] == LatticeElement(SignedWordElem{{2}, {}}));
    CHECK(atoms[3] == LatticeElement(SignedWordElem{{}, {2}}));
    // vertices: all-plus word first
    CHECK(h2.vertex(0) == LatticeElement(SignedWordElem{{1, 2}, {}}));

    // grassmann levels sorted by flattened canonical entries
    const auto g = GraphLattice::build(Family::grassmann(4, 2, 2));
    for (std::size_t i = 0; i + 1 < g.level(2).size(); ++i)
        CHECK(std::get<SubspaceElem>(g.level(2)[i]).mat.flattened() <
              std::get<SubspaceElem>(g.level(2)[i + 1]).mat.flattened());
}

TEST_CASE("vertex indexing round-trips") {
    const auto g = GraphLattice::build(Family::grassmann(4, 2, 2));
    for (long i = 0; i < g.vertex_count(); ++i) CHECK(g.vertex_index(g.vertex(i)) == i);
    CHECK_THROWS_AS(g.vertex_index(g.top()), latspec::invalid_parameter_error);
    CHECK_THROWS_AS(g.vertex(g.vertex_count()), latspec::invalid_parameter_error);
}
