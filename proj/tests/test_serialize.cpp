#include <doctest.h>

#include "latspec/norton.hpp"
#include "latspec/serialize.hpp"
#include "latspec/verify.hpp"

using latspec::Family;
using latspec::GraphLattice;
using latspec::Json;

TEST_CASE("family descriptors round-trip through json") {
    for (const auto& f : {Family::johnson(5, 2), Family::grassmann(4, 2, 3), Family::hamming(4)}) {
        const Family back = latspec::family_from_json(latspec::family_to_json(f));
        CHECK(back == f);
    }
}

TEST_CASE("element serialization shapes") {
    const auto j52 = GraphLattice::build(Family::johnson(5, 2));
    CHECK(latspec::element_to_json(j52.vertex(0)) == Json::array({1, 2}));
    CHECK(latspec::element_to_json(j52.top()) == Json{{"top", true}});
    CHECK(latspec::element_to_json(j52.bottom()) == Json::array());

    const auto h2 = GraphLattice::build(Family::hamming(2));
    const Json w = latspec::element_to_json(h2.level(1).front());
    CHECK(w["plus"] == Json::array({1}));
    CHECK(w["minus"] == Json::array());

    const auto g = GraphLattice::build(Family::grassmann(4, 2, 2));
    const Json sub = latspec::element_to_json(g.vertex(0));
    CHECK(sub["modulus"] == 2);
    CHECK(sub["rows"].size() == 2);
    CHECK(sub["rows"][0].size() == 4);
    const Json zero_sub = latspec::element_to_json(g.bottom());
    CHECK(zero_sub["rows"].empty());
}

TEST_CASE("lattice export carries sizes, levels, and the vertex index") {
    const auto j52 = GraphLattice::build(Family::johnson(5, 2));
    const Json j = latspec::lattice_to_json(j52);
    CHECK(j["level_sizes"] == Json::array({1, 5, 10, 1}));
    CHECK(j["levels"].size() == 4);
    CHECK(j["vertex_index"].size() == 10);
    CHECK(j["vertex_index"][0] == Json::array({1, 2}));
    CHECK(j["diameter"] == 2);
}

TEST_CASE("spectral table export uses integer strings") {
    const auto L = GraphLattice::build(Family::johnson(5, 2));
    latspec::SpectralDecomposition s(L);
    const Json j = latspec::spectral_table_to_json(s.verify_eigenspaces());
    CHECK(j["rows"].size() == 3);
    CHECK(j["rows"][0]["theta"] == "6");
    CHECK(j["rows"][2]["theta"] == "-2");
    CHECK(j["rows"][1]["mu"] == "3");
    CHECK(j["rows"][0]["beta"].is_null());
    CHECK(j["rows"][1]["beta"] == "2");
}

TEST_CASE("product report export") {
    const auto L = GraphLattice::build(Family::johnson(5, 2));
    latspec::SpectralDecomposition s(L);
    latspec::NortonAlgebra alg(s);
    const Json j = latspec::norton_report_to_json(alg.verify());
    CHECK(j["diagonal_coefficient"] == "1/5");
    CHECK(j["off_diagonal"]["kind"] == "pair_sum");
    CHECK(j["off_diagonal"]["pair_coefficient"] == "-1/15");
    CHECK(j["verified"] == true);
    CHECK(j["failures"].empty());
}

TEST_CASE("suite report export marks passing checks") {
    const latspec::SuiteReport report = latspec::run_suite(Family::hamming(2));
    const Json j = latspec::suite_report_to_json(report);
    CHECK(j["passed"] == true);
    CHECK(j["checks"].size() == report.checks.size());
    for (const auto& c : j["checks"]) CHECK(c["passed"] == true);
}

TEST_CASE("exports are byte-stable across repeated construction") {
    const auto a = GraphLattice::build(Family::grassmann(4, 2, 2));
    const auto b = GraphLattice::build(Family::grassmann(4, 2, 2));
    CHECK(latspec::lattice_to_json(a).dump(2) == latspec::lattice_to_json(b).dump(2));

    latspec::SpectralDecomposition sa(a), sb(b);
    CHECK(latspec::spectral_table_to_json(sa.verify_eigenspaces()).dump(2) ==
          latspec::spectral_table_to_json(sb.verify_eigenspaces()).dump(2));
}
