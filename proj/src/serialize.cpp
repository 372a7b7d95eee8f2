#include "latspec/serialize.hpp"

#include "latspec/errors.hpp"

namespace latspec {

Json family_to_json(const Family& f) {
    Json j;
    j["name"] = f.name();
    j["n"] = f.n;
    if (f.kind != FamilyKind::hamming) j["k"] = f.k;
    if (f.kind == FamilyKind::grassmann) j["q"] = f.q;
    return j;
}

Family family_from_json(const Json& j) {
    const std::string name = j.at("name").get<std::string>();
    if (name == "johnson") return Family::johnson(j.at("n").get<int>(), j.at("k").get<int>());
    if (name == "grassmann")
        return Family::grassmann(j.at("n").get<int>(), j.at("k").get<int>(), j.at("q").get<long>());
    if (name == "hamming") return Family::hamming(j.at("n").get<int>());
    throw invalid_parameter_error("family_from_json: unknown family '" + name + "'");
}

Json element_to_json(const LatticeElement& e) {
    if (is_top(e)) return Json{{"top", true}};
    if (const auto* s = std::get_if<SubsetElem>(&e)) return Json(s->members);
    if (const auto* w = std::get_if<SignedWordElem>(&e))
        return Json{{"plus", w->plus}, {"minus", w->minus}};
    const auto& m = std::get<SubspaceElem>(e).mat;
    Json rows = Json::array();
    for (long r = 0; r < m.rows(); ++r) rows.push_back(m.row_values(r));
    return Json{{"modulus", m.modulus()}, {"rows", rows}};
}

Json lattice_to_json(const GraphLattice& lattice) {
    Json j;
    j["family"] = family_to_json(lattice.family());
    j["diameter"] = lattice.diameter();
    j["vertex_count"] = lattice.vertex_count();
    Json sizes = Json::array();
    Json levels = Json::array();
    for (const auto& level : lattice.levels()) {
        sizes.push_back(level.size());
        Json one = Json::array();
        for (const auto& e : level) one.push_back(element_to_json(e));
        levels.push_back(std::move(one));
    }
    j["level_sizes"] = std::move(sizes);
    j["levels"] = std::move(levels);
    Json verts = Json::array();
    for (long x = 0; x < lattice.vertex_count(); ++x) verts.push_back(element_to_json(lattice.vertex(x)));
    j["vertex_index"] = std::move(verts);
    return j;
}

namespace {

Json opt_int(const std::optional<Integer>& v) {
    if (!v) return nullptr;
    return int_str(*v);
}

}  // namespace

Json spectral_table_to_json(const SpectralTable& table) {
    Json j;
    j["family"] = family_to_json(table.family);
    j["vertex_count"] = table.vertex_count;
    Json rows = Json::array();
    for (const auto& row : table.rows) {
        Json r;
        r["j"] = row.j;
        r["theta"] = int_str(row.theta);
        r["dim"] = row.dim;
        r["mu"] = row.mu.str();
        r["c"] = int_str(row.constants.c);
        r["alpha"] = opt_int(row.constants.alpha);
        r["beta"] = opt_int(row.constants.beta);
        r["nu"] = opt_int(row.constants.nu);
        r["a_up"] = opt_int(row.constants.a_up);
        r["a_down"] = opt_int(row.constants.a_down);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

Json tight_frame_report_to_json(const TightFrameReport& report) {
    Json j;
    j["j"] = report.j;
    j["frame_size"] = report.frame_size;
    j["mu"] = report.mu.str();
    j["vectors_checked"] = report.vectors_checked;
    j["passed"] = report.passed;
    j["detail"] = report.detail;
    return j;
}

Json norton_report_to_json(const NortonProductReport& report) {
    Json j;
    j["family"] = family_to_json(report.family);
    j["diagonal_coefficient"] = report.diagonal_coefficient.str();
    Json off;
    switch (report.off_kind) {
        case OffDiagonalKind::zero:
            off["kind"] = "zero";
            break;
        case OffDiagonalKind::pair_sum:
            off["kind"] = "pair_sum";
            off["pair_coefficient"] = report.off_pair_coefficient.str();
            break;
        case OffDiagonalKind::pair_plus_line_sum:
            off["kind"] = "pair_plus_line_sum";
            off["pair_coefficient"] = report.off_pair_coefficient.str();
            off["line_sum_coefficient"] = report.off_line_sum_coefficient.str();
            break;
    }
    j["off_diagonal"] = std::move(off);
    j["closed_form_asserted"] = report.closed_form_asserted;
    j["pairs_checked"] = report.pairs_checked;
    j["verified"] = report.verified;
    Json failures = Json::array();
    for (const auto& f : report.failures)
        failures.push_back(Json{{"tau", f.tau}, {"sigma", f.sigma}, {"what", f.what}});
    j["failures"] = std::move(failures);
    j["associativity"] = report.associativity;
    return j;
}

}  // namespace latspec
