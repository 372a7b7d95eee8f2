#include "latspec/verify.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "latspec/combinatorics.hpp"
#include "latspec/errors.hpp"
#include "latspec/norton.hpp"
#include "latspec/spectral.hpp"

namespace latspec {

namespace {

// Exhaustive greatest-lower/least-upper-bound witness scans are cubic in
// the element count; above this size they run on a deterministic sample of
// pairs instead (every other law stays exhaustive).
constexpr long kExhaustiveElements = 300;

using IntVec = std::vector<long>;

void require(bool cond, const std::string& what) {
    if (!cond) throw verification_error(what);
}

/// Whole-suite working state: one lattice, one spectral decomposition, and
/// integer-vector views of the indicator embedding for the cheap identities.
struct Workbench {
    explicit Workbench(const Family& family, const SizeLimits& limits)
        : lattice(GraphLattice::build(family, limits)), spectral(lattice) {}

    GraphLattice lattice;
    SpectralDecomposition spectral;

    long verts() const { return lattice.vertex_count(); }
    int diam() const { return lattice.diameter(); }

    const std::vector<long>& support(const LatticeElement& e) {
        return spectral.iota_support(lattice.rank(e), lattice.position_in_level(e));
    }

    IntVec iota_int(const LatticeElement& e) {
        IntVec v(static_cast<std::size_t>(verts()), 0);
        if (is_top(e)) return v;
        for (long x : support(e)) v[static_cast<std::size_t>(x)] = 1;
        return v;
    }

    IntVec star_lower_int(const LatticeElement& e) {
        IntVec v(static_cast<std::size_t>(verts()), 0);
        for (const auto& c : lattice.lower_covers(e))
            for (long x : support(c)) ++v[static_cast<std::size_t>(x)];
        return v;
    }

    IntVec star_upper_int(const LatticeElement& e) {
        IntVec v(static_cast<std::size_t>(verts()), 0);
        if (lattice.rank(e) >= diam()) return v;  // covers above level d carry the zero indicator
        for (const auto& c : lattice.upper_covers(e))
            for (long x : support(c)) ++v[static_cast<std::size_t>(x)];
        return v;
    }
};

long to_long(const Integer& v) { return static_cast<long>(v.get_si()); }

// ---------------------------------------------------------------- checks --

void check_level_counts(Workbench& wb) {
    const auto& L = wb.lattice;
    require(L.level(0).size() == 1, "level 0 must hold exactly the bottom element");
    require(L.level(wb.diam() + 1).size() == 1, "the top level must hold exactly one element");
    // enumerated sizes against the closed-form counts
    const Family& fam = L.family();
    for (int l = 0; l <= wb.diam(); ++l) {
        Integer expect;
        switch (fam.kind) {
            case FamilyKind::johnson: expect = binom(fam.n, l); break;
            case FamilyKind::grassmann: expect = q_binom(fam.n, l, fam.q); break;
            case FamilyKind::hamming:
                expect = int_pow(2, static_cast<unsigned long>(l)) * binom(fam.n, l);
                break;
        }
        require(Integer(static_cast<long>(L.level(l).size())) == expect,
                "level " + std::to_string(l) + " size disagrees with the closed form");
    }
}

std::vector<const LatticeElement*> all_elements(const GraphLattice& L) {
    std::vector<const LatticeElement*> out;
    for (const auto& level : L.levels())
        for (const auto& e : level) out.push_back(&e);
    return out;
}

void check_lattice_axioms(Workbench& wb) {
    const auto& L = wb.lattice;
    const auto elems = all_elements(L);
    const long n = static_cast<long>(elems.size());
    const bool exhaustive = n <= kExhaustiveElements;

    for (long a = 0; a < n; ++a) {
        for (long b = a; b < n; ++b) {
            const auto& u = *elems[static_cast<std::size_t>(a)];
            const auto& w = *elems[static_cast<std::size_t>(b)];
            const LatticeElement m = L.meet(u, w);
            const LatticeElement j = L.join(u, w);
            require(m == L.meet(w, u) && j == L.join(w, u), "meet/join must be commutative");
            require(L.leq(m, u) && L.leq(m, w), "meet must be a lower bound");
            require(L.leq(u, j) && L.leq(w, j), "join must be an upper bound");
            if (a == b) require(m == u && j == u, "meet/join must be idempotent");
            require(L.meet(u, j) == u && L.join(u, m) == u, "absorption fails");
        }
    }

    // greatest/least witness scans
    const auto scan_pair = [&](const LatticeElement& u, const LatticeElement& w) {
        const LatticeElement m = L.meet(u, w);
        const LatticeElement j = L.join(u, w);
        for (const auto* z : elems) {
            if (L.leq(*z, u) && L.leq(*z, w))
                require(L.leq(*z, m), "meet is not the greatest lower bound");
            if (L.leq(u, *z) && L.leq(w, *z))
                require(L.leq(j, *z), "join is not the least upper bound");
        }
    };
    if (exhaustive) {
        for (long a = 0; a < n; ++a)
            for (long b = a; b < n; ++b)
                scan_pair(*elems[static_cast<std::size_t>(a)], *elems[static_cast<std::size_t>(b)]);
    } else {
        // deterministic sample: a fixed stride through the element list
        const long stride = std::max<long>(1, n / 60);
        for (long a = 0; a < n; a += stride)
            for (long b = a; b < n; b += stride)
                scan_pair(*elems[static_cast<std::size_t>(a)], *elems[static_cast<std::size_t>(b)]);
    }
}

void check_atomicity(Workbench& wb) {
    const auto& L = wb.lattice;
    const auto& atoms = L.level(1);
    for (int l = 1; l <= wb.diam(); ++l) {
        for (const auto& z : L.level(l)) {
            LatticeElement acc = L.bottom();
            for (const auto& t : atoms)
                if (L.leq(t, z)) acc = L.join(acc, t);
            require(acc == z, "an element is not the join of the atoms below it");
        }
    }
}

void check_rank_modularity(Workbench& wb) {
    const auto& L = wb.lattice;
    const auto elems = all_elements(L);
    for (std::size_t a = 0; a < elems.size(); ++a) {
        for (std::size_t b = a; b < elems.size(); ++b) {
            const auto& u = *elems[a];
            const auto& w = *elems[b];
            const LatticeElement j = L.join(u, w);
            if (is_top(j)) continue;
            require(L.rank(u) + L.rank(w) == L.rank(j) + L.rank(L.meet(u, w)),
                    "rank modularity fails");
        }
    }
}

void check_cover_property(Workbench& wb) {
    const auto& L = wb.lattice;
    const auto elems = all_elements(L);
    for (const auto* up : elems) {
        for (const auto* wp : elems) {
            const auto& u = *up;
            const auto& w = *wp;
            if (L.rank(u) >= wb.diam() || L.rank(w) >= wb.diam()) continue;  // non-coatoms only
            const LatticeElement j = L.join(u, w);
            const LatticeElement m = L.meet(u, w);
            const bool join_covers_both = !is_top(j) && L.covers(j, u) && L.covers(j, w);
            const bool both_cover_meet = L.covers(u, m) && L.covers(w, m);
            if (join_covers_both) require(both_cover_meet, "cover property (downward) fails");
            if (both_cover_meet && !is_top(j))
                require(L.covers(j, u) && L.covers(j, w), "cover property (upward) fails");
        }
    }
}

void check_atom_join_rank(Workbench& wb) {
    const auto& L = wb.lattice;
    const auto& atoms = L.level(1);
    for (std::size_t a = 0; a < atoms.size(); ++a)
        for (std::size_t b = a + 1; b < atoms.size(); ++b) {
            const LatticeElement j = L.join(atoms[a], atoms[b]);
            if (!is_top(j)) require(L.rank(j) == 2, "distinct atoms with a proper join must meet rank 2");
        }
}

void check_cover_rank_consistency(Workbench& wb) {
    // the rank-based cover test against the brute-force interval scan
    const auto& L = wb.lattice;
    const auto elems = all_elements(L);
    const bool exhaustive = static_cast<long>(elems.size()) <= kExhaustiveElements;
    const long stride = exhaustive ? 1 : std::max<long>(1, static_cast<long>(elems.size()) / 60);
    for (std::size_t a = 0; a < elems.size(); a += static_cast<std::size_t>(stride)) {
        for (std::size_t b = 0; b < elems.size(); b += static_cast<std::size_t>(stride)) {
            const auto& u = *elems[a];
            const auto& w = *elems[b];
            const bool strictly_less = L.leq(u, w) && !(u == w);
            bool has_between = false;
            if (strictly_less)
                for (const auto* z : elems) {
                    if (*z == u || *z == w) continue;
                    if (L.leq(u, *z) && L.leq(*z, w)) {
                        has_between = true;
                        break;
                    }
                }
            require(L.covers(w, u) == (strictly_less && !has_between),
                    "rank-based cover test disagrees with the interval scan");
        }
    }
}

void check_count_constants(Workbench& wb) {
    const auto& L = wb.lattice;
    for (int j = 0; j <= wb.diam(); ++j) {
        for (int l = 0; l <= wb.diam(); ++l) {
            const Integer expect = L.a_level_count(j, l);
            for (const auto& z : L.level(j)) {
                long count = 0;
                for (const auto& y : L.level(l))
                    if (l <= j ? L.leq(y, z) : L.leq(z, y)) ++count;
                require(Integer(count) == expect,
                        "count constant (" + std::to_string(j) + "," + std::to_string(l) +
                            ") disagrees with brute force");
            }
        }
    }
}

void check_distances(Workbench& wb) {
    const auto& L = wb.lattice;
    const long n = wb.verts();
    // adjacency lists from the lattice distance; spot-check the cached
    // table against the direct meet-rank computation along the way
    std::vector<std::vector<long>> adj(static_cast<std::size_t>(n));
    for (long x = 0; x < n; ++x) {
        for (long y : wb.spectral.distance_class(1, x)) adj[static_cast<std::size_t>(x)].push_back(y);
        std::sort(adj[static_cast<std::size_t>(x)].begin(), adj[static_cast<std::size_t>(x)].end());
        const long probe = (x * 31) % n;
        require(wb.spectral.distance(x, probe) == L.distance(x, probe),
                "cached distance table disagrees with the lattice distance");
    }
    for (long x = 0; x < n; ++x) {
        std::vector<int> dist(static_cast<std::size_t>(n), -1);
        std::deque<long> queue{x};
        dist[static_cast<std::size_t>(x)] = 0;
        while (!queue.empty()) {
            const long cur = queue.front();
            queue.pop_front();
            for (long y : adj[static_cast<std::size_t>(cur)])
                if (dist[static_cast<std::size_t>(y)] < 0) {
                    dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(cur)] + 1;
                    queue.push_back(y);
                }
        }
        for (long y = 0; y < n; ++y)
            require(dist[static_cast<std::size_t>(y)] == wb.spectral.distance(x, y),
                    "lattice distance disagrees with breadth-first search");
    }
}

void check_intersection_numbers(Workbench& wb) {
    auto& S = wb.spectral;
    const int d = wb.diam();
    // building the table verifies constancy over all pairs
    for (int j = 0; j <= d; ++j)
        for (int h = 0; h <= d; ++h)
            require(S.intersection_number(0, j, h) == (j == h ? 1 : 0),
                    "intersection numbers with i = 0 must reduce to the Kronecker delta");
    std::vector<long> degree_row(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) degree_row[static_cast<std::size_t>(i)] = S.intersection_number(i, i, 0);
    long total = 0;
    for (long v : degree_row) total += v;
    require(total == wb.verts(), "distance-class sizes must sum to the vertex count");
}

void check_indicator_identities(Workbench& wb) {
    auto& wbl = wb.lattice;
    const auto elems = all_elements(wbl);
    // boundary values
    require(wb.iota_int(wbl.bottom()) == IntVec(static_cast<std::size_t>(wb.verts()), 1),
            "the bottom indicator must be the all-ones vector");
    require(wb.iota_int(wbl.top()) == IntVec(static_cast<std::size_t>(wb.verts()), 0),
            "the top indicator must vanish");
    for (const auto* zp : elems) {
        if (is_top(*zp)) continue;
        const long norm = static_cast<long>(wb.support(*zp).size());
        require(Integer(norm) == wbl.a_vertex_count(wbl.rank(*zp)),
                "squared indicator norm disagrees with the level count");
    }
    // product rule and inner products over all pairs
    for (const auto* zp : elems) {
        const std::vector<long> sz = is_top(*zp) ? std::vector<long>{} : wb.support(*zp);
        for (const auto* yp : elems) {
            const std::vector<long> sy = is_top(*yp) ? std::vector<long>{} : wb.support(*yp);
            std::vector<long> common;
            std::set_intersection(sz.begin(), sz.end(), sy.begin(), sy.end(),
                                  std::back_inserter(common));
            const LatticeElement j = wbl.join(*zp, *yp);
            const std::vector<long> sj = is_top(j) ? std::vector<long>{} : wb.support(j);
            require(common == sj, "pointwise indicator product disagrees with the join indicator");
            require(Integer(static_cast<long>(common.size())) ==
                        wbl.a_vertex_count(wbl.rank(j)),
                    "indicator inner product disagrees with the join level count");
        }
    }
}

void check_star_identities(Workbench& wb) {
    const auto& L = wb.lattice;
    for (int j = 0; j <= wb.diam(); ++j) {
        const long c = to_long(wb.spectral.constants(j).c);
        for (const auto& w : L.level(j)) {
            // upper stars collapse onto the element's own indicator
            IntVec expect = wb.iota_int(w);
            for (auto& x : expect) x *= c;
            require(wb.star_upper_int(w) == expect, "upper star does not scale the indicator");
            if (j >= 1) {
                // lower stars split into the scaled indicator plus the 0/1
                // profile of meets landing one level down
                const long down = to_long(*wb.spectral.constants(j).a_down);
                IntVec lower = wb.iota_int(w);
                for (auto& x : lower) x *= down;
                for (long xi = 0; xi < wb.verts(); ++xi)
                    if (L.meet_rank(w, L.vertex(xi)) == j - 1) ++lower[static_cast<std::size_t>(xi)];
                require(wb.star_lower_int(w) == lower,
                        "lower star does not split into the scaled indicator plus the meet profile");
            }
        }
    }
}

void check_vertex_star_identity(Workbench& wb) {
    const auto& L = wb.lattice;
    const int d = wb.diam();
    const long down = to_long(*wb.spectral.constants(d).a_down);
    for (long x = 0; x < wb.verts(); ++x) {
        IntVec expect(static_cast<std::size_t>(wb.verts()), 0);
        for (long y : wb.spectral.distance_class(1, x)) expect[static_cast<std::size_t>(y)] = 1;
        expect[static_cast<std::size_t>(x)] += down;
        require(wb.star_lower_int(L.vertex(x)) == expect,
                "vertex lower star does not equal adjacency plus the scaled indicator");
    }
}

void check_cover_sum_identity(Workbench& wb) {
    const auto& L = wb.lattice;
    const int d = wb.diam();
    // j = 0 degenerates: the bottom's lower star is empty, so the sum of the
    // atoms' lower stars must be alpha_0 times the all-ones vector.
    {
        const long alpha0 = to_long(*wb.spectral.constants(0).alpha);
        IntVec sum(static_cast<std::size_t>(wb.verts()), 0);
        for (const auto& u : L.level(1)) {
            const IntVec us = wb.star_lower_int(u);
            for (long i = 0; i < wb.verts(); ++i) sum[static_cast<std::size_t>(i)] += us[static_cast<std::size_t>(i)];
        }
        require(sum == IntVec(static_cast<std::size_t>(wb.verts()), alpha0),
                "atom lower stars do not sum to alpha_0 times the all-ones vector");
    }
    for (int j = 1; j < d; ++j) {
        const auto cs = wb.spectral.constants(j);
        const long alpha = to_long(*cs.alpha);
        const long beta = to_long(*cs.beta);
        // lower stars of the level above, shared across all w
        std::vector<IntVec> above;
        for (const auto& u : L.level(j + 1)) above.push_back(wb.star_lower_int(u));
        for (const auto& w : L.level(j)) {
            IntVec sum(static_cast<std::size_t>(wb.verts()), 0);
            const auto& ups = L.level(j + 1);
            for (std::size_t t = 0; t < ups.size(); ++t)
                if (L.leq(w, ups[t]))
                    for (long i = 0; i < wb.verts(); ++i)
                        sum[static_cast<std::size_t>(i)] += above[t][static_cast<std::size_t>(i)];
            IntVec expect = wb.iota_int(w);
            for (auto& x : expect) x *= alpha;
            const IntVec ws = wb.star_lower_int(w);
            for (long i = 0; i < wb.verts(); ++i)
                expect[static_cast<std::size_t>(i)] += beta * ws[static_cast<std::size_t>(i)];
            require(sum == expect, "cover-sum identity fails at level " + std::to_string(j));
        }
    }
}

void check_filtration_residual(Workbench& wb) {
    auto& S = wb.spectral;
    const auto& L = wb.lattice;
    const int d = wb.diam();
    // recursion form on every level element (integer arithmetic)
    for (int j = 0; j <= d; ++j) {
        const long theta = to_long(S.theta(j).numerator());
        const long nu = j >= 1 ? to_long(*S.constants(j).nu) : 0;
        for (const auto& w : L.level(j)) {
            const IntVec iw = wb.iota_int(w);
            IntVec lhs(static_cast<std::size_t>(wb.verts()), 0);
            // adjacency image of a 0/1 vector
            for (long x : wb.support(w))
                for (long y : wb.spectral.distance_class(1, x)) ++lhs[static_cast<std::size_t>(y)];
            IntVec rhs = iw;
            for (auto& v : rhs) v *= theta;
            if (j >= 1) {
                const IntVec ws = wb.star_lower_int(w);
                for (long i = 0; i < wb.verts(); ++i)
                    rhs[static_cast<std::size_t>(i)] += nu * ws[static_cast<std::size_t>(i)];
            }
            require(lhs == rhs, "adjacency recursion fails on a level-" + std::to_string(j) +
                                    " indicator");
        }
    }
    // projection form: the adjacency image of a level-span basis vector,
    // shifted by its eigenvalue, must land inside the previous span
    for (int j = 1; j <= d; ++j) {
        const Rational theta = S.theta(j);
        const auto& basis = S.lambda_basis(j);
        for (const auto& v : basis.vectors) {
            FunctionVector r = S.adjacency_apply(v);
            r.add_scaled(-theta, v);
            require(S.lambda_basis(j - 1).ortho->residual(r).is_zero(),
                    "shifted adjacency image escapes the previous level span at level " +
                        std::to_string(j));
        }
    }
}

void check_eigenspaces(Workbench& wb) {
    auto& S = wb.spectral;
    const SpectralTable& table = S.verify_eigenspaces();
    // trace: the adjacency matrix has zeros on the diagonal
    Rational trace;
    for (const auto& row : table.rows) trace += Rational(row.theta) * Rational(row.dim);
    require(trace.is_zero(), "weighted eigenvalue sum must equal the zero trace");
    // mutual orthogonality of the eigenspace bases
    for (int i = 0; i <= wb.diam(); ++i)
        for (int j = i + 1; j <= wb.diam(); ++j)
            for (const auto& vi : S.v_basis(i).vectors)
                for (const auto& vj : S.v_basis(j).vectors)
                    require(dot(vi, vj).is_zero(), "eigenspace bases are not orthogonal");
}

void check_level_matrix_expansion(Workbench& wb) {
    auto& S = wb.spectral;
    for (int j = 0; j <= wb.diam(); ++j)
        require(S.u_matrix(j) == S.u_matrix_expansion(j),
                "level matrix disagrees with its distance-matrix expansion at level " +
                    std::to_string(j));
}

void check_tight_frames(Workbench& wb) {
    for (int j = 0; j <= wb.diam(); ++j) {
        const TightFrameReport r = wb.spectral.tight_frame_check(j);
        require(r.passed, "tight frame fails at level " + std::to_string(j) + ": " + r.detail);
    }
}

void check_level1_frame_constant(Workbench& wb) {
    auto& S = wb.spectral;
    // mu(1) internally checks the expansion, the closed form, and the level
    // matrix action; on top of that, the printed eigenvalue row must match
    // the empirical one.
    S.mu(1);
    for (int i = 0; i <= wb.diam(); ++i)
        require(S.p1_closed_form(i) == S.p_eigenvalue(i, 1),
                "distance-matrix eigenvalue row at level 1 disagrees with its closed form");
}

void check_norton_products(Workbench& wb) {
    NortonAlgebra algebra(wb.spectral);
    const NortonProductReport report = algebra.verify();
    if (!report.verified) {
        std::string what = "pairwise product verification failed";
        if (!report.failures.empty())
            what += ": (" + std::to_string(report.failures.front().tau) + "," +
                    std::to_string(report.failures.front().sigma) + ") " +
                    report.failures.front().what;
        throw verification_error(what);
    }
    if (wb.lattice.family().kind == FamilyKind::hamming)
        require(report.associativity == "associative",
                "all-zero products must make the algebra associative");
}

}  // namespace

bool SuiteReport::passed() const {
    if (skipped) return true;
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

bool BatteryReport::passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.passed(); });
}

SuiteReport run_suite(const Family& family, const SizeLimits& limits) {
    SuiteReport report;
    report.family = family;

    Workbench wb(family, limits);

    const std::vector<std::pair<std::string, std::function<void(Workbench&)>>> checks = {
        {"level_counts", check_level_counts},
        {"lattice_axioms", check_lattice_axioms},
        {"atomicity", check_atomicity},
        {"rank_modularity", check_rank_modularity},
        {"cover_property", check_cover_property},
        {"atom_join_rank", check_atom_join_rank},
        {"cover_rank_consistency", check_cover_rank_consistency},
        {"count_constants", check_count_constants},
        {"graph_distance", check_distances},
        {"intersection_numbers", check_intersection_numbers},
        {"indicator_identities", check_indicator_identities},
        {"star_identities", check_star_identities},
        {"vertex_star_identity", check_vertex_star_identity},
        {"cover_sum_identity", check_cover_sum_identity},
        {"filtration_residual", check_filtration_residual},
        {"eigenspace_decomposition", check_eigenspaces},
        {"level_matrix_expansion", check_level_matrix_expansion},
        {"tight_frames", check_tight_frames},
        {"level1_frame_constant", check_level1_frame_constant},
        {"norton_products", check_norton_products},
    };

    for (const auto& [name, fn] : checks) {
        CheckResult result;
        result.name = name;
        try {
            fn(wb);
            result.passed = true;
        } catch (const std::exception& e) {
            result.passed = false;
            result.detail = e.what();
        }
        report.checks.push_back(std::move(result));
    }
    return report;
}

std::vector<Family> default_battery() {
    return {
        Family::johnson(4, 2),    Family::johnson(5, 2),      Family::johnson(6, 2),
        Family::johnson(7, 3),    Family::hamming(2),         Family::hamming(3),
        Family::hamming(4),       Family::hamming(5),         Family::grassmann(4, 2, 2),
        Family::grassmann(4, 2, 3), Family::grassmann(6, 2, 2),
    };
}

BatteryReport run_battery(const std::vector<Family>& families, const SizeLimits& limits) {
    BatteryReport report;
    for (const auto& family : families) {
        try {
            report.suites.push_back(run_suite(family, limits));
        } catch (const size_cap_error& e) {
            SuiteReport skipped;
            skipped.family = family;
            skipped.skipped = true;
            skipped.skip_reason = e.what();
            report.suites.push_back(std::move(skipped));
        }
    }
    return report;
}

Json suite_report_to_json(const SuiteReport& report) {
    Json j;
    j["family"] = family_to_json(report.family);
    if (report.skipped) {
        j["skipped"] = true;
        j["skip_reason"] = report.skip_reason;
        return j;
    }
    Json checks = Json::array();
    for (const auto& c : report.checks)
        checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    j["checks"] = std::move(checks);
    j["passed"] = report.passed();
    return j;
}

Json battery_report_to_json(const BatteryReport& report) {
    Json j;
    Json suites = Json::array();
    for (const auto& s : report.suites) suites.push_back(suite_report_to_json(s));
    j["suites"] = std::move(suites);
    j["passed"] = report.passed();
    return j;
}

}  // namespace latspec
