// Acceptance suite: runs every criterion at its stated tolerance (exact
// arithmetic throughout) and prints one pass/fail line per criterion.
// argv[1]: path to the CLI binary, argv[2]: path to the schema directory.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "latspec/norton.hpp"
#include "latspec/serialize.hpp"
#include "latspec/spectral.hpp"
#include "latspec/verify.hpp"

using latspec::Family;
using latspec::FunctionVector;
using latspec::GraphLattice;
using latspec::Json;
using latspec::Rational;

namespace {

std::string g_cli;
std::string g_schema_dir;

std::vector<Family> desk_battery() {
    return {Family::johnson(5, 2),      Family::johnson(6, 2), Family::johnson(7, 3),
            Family::hamming(2),         Family::hamming(3),    Family::hamming(4),
            Family::hamming(5),         Family::grassmann(4, 2, 2),
            Family::grassmann(4, 2, 3)};
}

void expect(bool cond, const std::string& what) {
    if (!cond) throw std::runtime_error(what);
}

// ---------------------------------------------------------------- helpers --

int run_cli(const std::string& args, const std::string& stdout_path) {
    const std::string cmd = g_cli + " " + args + " > " + stdout_path + " 2> /dev/null";
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Minimal structural validator for the schema subset used in schemas/:
// type (string or list), properties, required, items, enum.
void validate_schema(const Json& value, const Json& schema, const std::string& where,
                     std::vector<std::string>& errors) {
    if (schema.contains("type")) {
        const auto matches = [&](const std::string& t) {
            if (t == "object") return value.is_object();
            if (t == "array") return value.is_array();
            if (t == "string") return value.is_string();
            if (t == "integer") return value.is_number_integer();
            if (t == "number") return value.is_number();
            if (t == "boolean") return value.is_boolean();
            if (t == "null") return value.is_null();
            return false;
        };
        bool ok = false;
        if (schema["type"].is_string()) {
            ok = matches(schema["type"].get<std::string>());
        } else {
            for (const auto& t : schema["type"])
                if (matches(t.get<std::string>())) ok = true;
        }
        if (!ok) {
            errors.push_back(where + ": type mismatch");
            return;
        }
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& e : schema["enum"])
            if (e == value) ok = true;
        if (!ok) errors.push_back(where + ": value not in enum");
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& r : schema["required"])
                if (!value.contains(r.get<std::string>()))
                    errors.push_back(where + ": missing required key " + r.get<std::string>());
        if (schema.contains("properties"))
            for (const auto& [key, sub] : schema["properties"].items())
                if (value.contains(key)) validate_schema(value[key], sub, where + "." + key, errors);
    }
    if (value.is_array() && schema.contains("items"))
        for (std::size_t i = 0; i < value.size(); ++i)
            validate_schema(value[i], schema["items"], where + "[" + std::to_string(i) + "]", errors);
}

void check_against_schema(const std::string& json_path, const std::string& schema_name) {
    const Json value = Json::parse(slurp(json_path));
    const Json schema = Json::parse(slurp(g_schema_dir + "/" + schema_name));
    std::vector<std::string> errors;
    validate_schema(value, schema, schema_name, errors);
    expect(errors.empty(), errors.empty() ? "" : errors.front());
}

// -------------------------------------------------------------- criteria --

// Eigenvalue closed forms equal the kernel-oracle eigenvalues, dimensions
// sum to the vertex count.
void criterion_eigenvalues() {
    const std::vector<std::vector<long>> anchors_theta = {
        {6, 1, -2},                // J(5,2)
        {8, 2, -2},                // J(6,2)
        {12, 5, 0, -3},            // J(7,3)
        {2, 0, -2},                // H(2,2)
        {3, 1, -1, -3},            // H(3,2)
        {4, 2, 0, -2, -4},         // H(4,2)
        {5, 3, 1, -1, -3, -5},     // H(5,2)
        {18, 3, -3},               // G(4,2;2)
        {48, 8, -4},               // G(4,2;3)
    };
    const auto battery = desk_battery();
    for (std::size_t t = 0; t < battery.size(); ++t) {
        const auto lattice = GraphLattice::build(battery[t]);
        latspec::SpectralDecomposition spectral(lattice);
        const auto& table = spectral.verify_eigenspaces();  // formula vs oracle, dims sum
        long dim_sum = 0;
        for (std::size_t j = 0; j < table.rows.size(); ++j) {
            expect(table.rows[j].theta == anchors_theta[t][j],
                   battery[t].describe() + ": unexpected eigenvalue");
            dim_sum += table.rows[j].dim;
        }
        expect(dim_sum == lattice.vertex_count(), battery[t].describe() + ": dimensions do not sum");
    }
}

// The frame identity holds exactly for every level and every basis vector.
void criterion_tight_frames() {
    for (const auto& family : desk_battery()) {
        const auto lattice = GraphLattice::build(family);
        latspec::SpectralDecomposition spectral(lattice);
        for (int j = 0; j <= lattice.diameter(); ++j) {
            const auto report = spectral.tight_frame_check(j);
            expect(report.passed, family.describe() + " level " + std::to_string(j) + ": " +
                                      report.detail);
            expect(report.vectors_checked ==
                       static_cast<long>(spectral.v_basis(j).dimension()),
                   family.describe() + ": frame check skipped vectors");
        }
    }
}

// The level-1 frame constant: closed form == expansion == level-matrix action.
void criterion_mu1() {
    for (const auto& family : desk_battery()) {
        const auto lattice = GraphLattice::build(family);
        latspec::SpectralDecomposition spectral(lattice);
        const Rational mu1 = spectral.mu(1);  // asserts all three routes agree
        Rational expansion;
        const int d = lattice.diameter();
        for (int i = 0; i <= d - 1; ++i)
            expansion += Rational(lattice.a_level_count(d - i, 1)) * spectral.p_eigenvalue(i, 1);
        expect(expansion == mu1, family.describe() + ": expansion route disagrees");
        expect(spectral.mu_level1_closed_form() == mu1,
               family.describe() + ": closed form disagrees");
    }
    // concrete anchors
    const auto check_value = [](const Family& f, long expected) {
        const auto lattice = GraphLattice::build(f);
        latspec::SpectralDecomposition spectral(lattice);
        expect(spectral.mu(1) == Rational(expected), f.describe() + ": mu_1 anchor mismatch");
    };
    check_value(Family::johnson(5, 2), 3);
    check_value(Family::hamming(3), 4);
    check_value(Family::grassmann(4, 2, 2), 6);
}

// Numeric products equal the closed forms for every atom pair, with the
// stated coefficients.
void criterion_norton() {
    const auto run = [](const Family& f) {
        const auto lattice = GraphLattice::build(f);
        latspec::SpectralDecomposition spectral(lattice);
        spectral.verify_eigenspaces();
        latspec::NortonAlgebra algebra(spectral);
        const auto report = algebra.verify();
        expect(report.verified, f.describe() + ": pairwise verification failed");
        expect(report.closed_form_asserted, f.describe() + ": closed form was not asserted");
        const long atoms = static_cast<long>(lattice.level(1).size());
        expect(report.pairs_checked == atoms * atoms, f.describe() + ": not all pairs checked");
        return report;
    };
    for (int n : {3, 4}) {
        const auto report = run(Family::hamming(n));
        expect(report.off_kind == latspec::OffDiagonalKind::zero &&
                   report.diagonal_coefficient.is_zero(),
               "H(" + std::to_string(n) + ",2): products must vanish identically");
    }
    {
        const auto report = run(Family::johnson(5, 2));
        expect(report.diagonal_coefficient == Rational(1, 5) &&
                   report.off_pair_coefficient == Rational(-1, 15),
               "J(5,2): coefficient anchors mismatch");
    }
    {
        const auto report = run(Family::johnson(6, 2));
        expect(report.diagonal_coefficient == Rational(1, 3) &&
                   report.off_pair_coefficient == Rational(-1, 12),
               "J(6,2): coefficient anchors mismatch");
    }
    {
        const auto report = run(Family::grassmann(4, 2, 2));
        expect(report.diagonal_coefficient == Rational(3, 5) &&
                   report.off_pair_coefficient == Rational(-1, 5) &&
                   report.off_line_sum_coefficient == Rational(1, 6),
               "G(4,2;2): coefficient anchors mismatch");
    }
}

// The structural identity battery, exhaustive at desk scale.
void criterion_structural() {
    const std::vector<std::string> names = {
        "count_constants",     "indicator_identities", "star_identities",
        "vertex_star_identity", "cover_sum_identity",  "filtration_residual",
        "rank_modularity",     "cover_property"};
    std::vector<Family> battery = desk_battery();
    battery.insert(battery.begin(), Family::johnson(4, 2));
    for (const auto& family : battery) {
        const latspec::SuiteReport report = latspec::run_suite(family);
        for (const auto& name : names) {
            bool found = false;
            for (const auto& c : report.checks)
                if (c.name == name) {
                    found = true;
                    expect(c.passed, family.describe() + " " + name + ": " + c.detail);
                }
            expect(found, family.describe() + ": check " + name + " missing");
        }
        expect(report.passed(), family.describe() + ": a suite check failed");
    }
}

// Cross-oracle consistency: frame projection vs Gram-Schmidt projection on
// every vertex indicator, level matrices vs their expansions, operator
// application vs explicit multiplication.
void criterion_cross_oracle() {
    for (const auto& family : desk_battery()) {
        const auto lattice = GraphLattice::build(family);
        latspec::SpectralDecomposition spectral(lattice);
        spectral.verify_eigenspaces();
        latspec::NortonAlgebra algebra(spectral);
        const std::size_t n = static_cast<std::size_t>(lattice.vertex_count());
        for (std::size_t x = 0; x < n; ++x) {
            const FunctionVector e = FunctionVector::unit(n, x);
            expect(algebra.pi1_frame(e) == spectral.project_v(1, e),
                   family.describe() + ": frame and Gram-Schmidt projections disagree");
        }
        for (int j = 0; j <= lattice.diameter(); ++j)
            expect(spectral.u_matrix(j) == spectral.u_matrix_expansion(j),
                   family.describe() + ": level matrix expansion mismatch");
        const latspec::RationalMatrix a1 = spectral.adjacency_matrix(1);
        FunctionVector f(n);
        long c = 5;
        for (std::size_t i = 0; i < n; ++i) {
            f[i] = Rational(c - 11, (c % 4) + 1);
            c = (c * 13 + 3) % 29;
        }
        expect(spectral.adjacency_apply(f) == a1.multiply(f),
               family.describe() + ": operator application disagrees with multiplication");
    }
}

// Byte-identical machine-readable reports on consecutive full runs, plus
// the documented exit codes and schema conformance of every export.
void criterion_cli_determinism() {
    expect(!g_cli.empty(), "path to the CLI binary was not supplied");
    const std::string out1 = "acceptance_verify_run1.json";
    const std::string out2 = "acceptance_verify_run2.json";
    expect(run_cli("verify --all --format json --out " + out1, "acceptance_stdout1.txt") == 0,
           "first full verify run failed");
    expect(run_cli("verify --all --format json --out " + out2, "acceptance_stdout2.txt") == 0,
           "second full verify run failed");
    const std::string r1 = slurp(out1);
    const std::string r2 = slurp(out2);
    expect(!r1.empty() && r1 == r2, "full verify reports are not byte-identical");
    check_against_schema(out1, "verify.schema.json");

    // exit-code table: 0 ok, 1 handled above by verify, 2 bad parameters, 3 size cap
    expect(run_cli("eigen --family johnson --n 5 --k 2 --format json --out acceptance_eigen.json",
                   "acceptance_null.txt") == 0,
           "eigen run failed");
    check_against_schema("acceptance_eigen.json", "spectral.schema.json");
    expect(run_cli("build --family johnson --n 5 --k 2 --format json --out acceptance_lattice.json",
                   "acceptance_null.txt") == 0,
           "build run failed");
    check_against_schema("acceptance_lattice.json", "lattice.schema.json");
    expect(run_cli("norton --family grassmann --n 4 --k 2 --q 2 --format json --out "
                   "acceptance_norton.json",
                   "acceptance_null.txt") == 0,
           "norton run failed");
    check_against_schema("acceptance_norton.json", "norton.schema.json");
    expect(run_cli("frame --family hamming --n 3 --j 3 --format json --out acceptance_frame.json",
                   "acceptance_null.txt") == 0,
           "frame run failed");
    check_against_schema("acceptance_frame.json", "frame.schema.json");

    expect(run_cli("eigen --family johnson --n 5 --k 2 --matrix u1 --out acceptance_u1.csv",
                   "acceptance_null.txt") == 0,
           "matrix CSV dump failed");
    expect(slurp("acceptance_u1.csv").rfind("2,1,1,1,1,1,1,0,0,0\n", 0) == 0,
           "level-matrix CSV row disagrees with the shared-point counts");

    expect(run_cli("verify --family johnson --n 3 --k 2", "acceptance_null.txt") == 2,
           "invalid parameters must exit with code 2");
    expect(run_cli("eigen --family johnson --n 5 --k 2 --max-vertices 5", "acceptance_null.txt") == 3,
           "size-cap violations must exit with code 3");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_cli = argv[1];
    if (argc > 2) g_schema_dir = argv[2];

    struct Criterion {
        int number;
        std::string title;
        std::function<void()> run;
        double budget_seconds;  // 0 = unbounded
    };
    const std::vector<Criterion> criteria = {
        {1, "eigenvalue closed forms vs kernel oracle, dimensions sum to |X|", criterion_eigenvalues, 30.0},
        {2, "tight-frame identity exact on every level and basis vector", criterion_tight_frames, 0.0},
        {3, "level-1 frame constant: closed form, expansion, matrix action", criterion_mu1, 0.0},
        {4, "pairwise products equal the closed forms with stated coefficients", criterion_norton, 60.0},
        {5, "structural identity battery, exhaustive at desk scale", criterion_structural, 0.0},
        {6, "cross-oracle consistency of projections, level matrices, operators", criterion_cross_oracle, 0.0},
        {7, "byte-identical reports, exit codes, schema conformance", criterion_cli_determinism, 0.0},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            criterion.run();
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && criterion.budget_seconds > 0 && elapsed > criterion.budget_seconds) {
            ok = false;
            detail = "exceeded the " + std::to_string(criterion.budget_seconds) + "s budget";
        }
        std::ostringstream line;
        line << "criterion " << criterion.number << " [" << (ok ? "pass" : "FAIL") << "] "
             << criterion.title << " (" << static_cast<long>(elapsed * 1000) << " ms)";
        if (!ok) line << " -- " << detail;
        std::cout << line.str() << std::endl;
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
