#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "autalg/classifier.hpp"
#include "autalg/compat_ops.hpp"
#include "autalg/error.hpp"
#include "autalg/powers.hpp"
#include "autalg/structure.hpp"
#include "support.hpp"

using namespace autalg;
using testing_support::catalog_algebras;
using testing_support::Named;

namespace {

// closure under pointwise product, checked directly
bool closed(const AutomaticAlgebra& m, const std::vector<std::vector<int>>& rel) {
    std::set<std::vector<int>> s(rel.begin(), rel.end());
    for (const auto& x : s)
        for (const auto& y : s) {
            std::vector<int> z(x.size());
            for (size_t i = 0; i < x.size(); ++i) z[i] = m.mul(x[i], y[i]);
            if (!s.count(z)) return false;
        }
    return true;
}

std::vector<Named> test_algebras() {
    auto out = catalog_algebras();
    for (size_t i = 0, n = out.size(); i < n; ++i) {
        auto norm = normalize_algebra(out[i].m).first;
        if (!norm.same_table(out[i].m)) out.push_back({out[i].label + "/normalized", norm});
    }
    // total, constant letters in bijection with the states
    out.push_back({"const2", AutomaticAlgebra({"q", "r"}, {"a", "b"}, {0, 1, 0, 1})});
    out.push_back({"const3", AutomaticAlgebra({"q", "r", "s"}, {"a", "b", "c"}, {0, 1, 2, 0, 1, 2, 0, 1, 2})});
    return out;
}

// every parameter list worth trying for an op on m
std::vector<std::vector<std::string>> params_for(const AutomaticAlgebra& m, const std::string& op) {
    std::vector<std::vector<std::string>> out;
    if (op == "g") {
        for (int u = 0; u + 1 < m.size(); ++u)
            for (int v = 0; v + 1 < m.size(); ++v)
                if (m.code_is_letter(u) || m.code_is_letter(v)) out.push_back({m.code_name(u), m.code_name(v)});
        // large algebras: a seeded sample of pairs
        if (m.size() > 16) {
            std::mt19937 rng(static_cast<unsigned>(m.size()));
            std::shuffle(out.begin(), out.end(), rng);
            out.resize(16);
        }
    } else if (op == "lambda") {
        for (const auto& s : m.state_names()) out.push_back({s});
    } else if (op == "pbar") {
        for (int i = 0; i < 4; ++i) out.push_back({std::to_string(i)});
    } else {
        out.push_back({});
    }
    return out;
}

}  // namespace

TEST_CASE("op examples") {
    auto l = catalog("L");
    auto meet = make_compatible_op(l, "qmeet");
    int q = *l.find_state("q"), r = *l.find_state("r"), a = l.letter_code(*l.find_letter("a"));
    CHECK(meet.table.at({q, r}) == q);
    CHECK(meet.table.at({q, a}) == l.zero_code());

    auto b = catalog("B");
    auto join = make_compatible_op(b, "join");
    int bq = *b.find_state("q");
    CHECK(join.table.at({b.zero_code(), bq}) == bq);
    CHECK(join.table.at({bq, bq}) == bq);

    auto c3 = catalog("C", {3});
    auto lam = make_compatible_op(c3, "lambda", {"2"});
    for (int x = c3.num_states(); x < c3.size(); ++x) CHECK(lam.table.at({x}) == x);
    std::set<int> img;
    for (int s = 0; s < 3; ++s) img.insert(lam.table.at({s}));
    CHECK(img.size() == 3);
    CHECK(lam.table.at({*c3.find_state("1")}) == *c3.find_state("2"));

    try {
        make_compatible_op(catalog("B"), "qmeet");
        FAIL("B is not total");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PreconditionViolated);
    }
}

TEST_CASE("every op graph is compatible where it applies") {
    std::map<std::string, int> built;
    for (const auto& [label, m] : test_algebras()) {
        for (const std::string op : {"g", "join", "qmeet", "meet", "h", "lambda", "diamond", "pbar"})
            for (const auto& ps : params_for(m, op)) {
                PartialOperation f;
                try {
                    f = make_compatible_op(m, op, ps);
                } catch (const Error& e) {
                    CAPTURE(label);
                    CAPTURE(op);
                    CAPTURE(e.what());
                    CHECK((e.kind() == ErrorKind::PreconditionViolated || e.kind() == ErrorKind::BadParams ||
                           e.kind() == ErrorKind::IndexOutOfRange));
                    continue;
                }
                CAPTURE(label);
                CAPTURE(op);
                auto g = f.graph();
                CHECK(g.size() == f.table.size());
                CHECK(is_compatible(m, g));
                if (g.size() <= 300) CHECK(closed(m, g));
                ++built[op];
            }
        auto la = letter_affine_analysis(m);
        if (!la.affine) continue;
        for (int i = 0; i < static_cast<int>(la.groups.size()); ++i) {
            auto h = la.groups[i].subgroup_h;
            std::sort(h.begin(), h.end());
            auto hg = subgroup_group(la.groups[i].group, h);
            int u = psi_fixed_point(m, i);
            for (const auto& phi : endomorphisms(hg)) {
                if (phi[u] != u) continue;
                auto f = psi_op(m, i, phi);
                CAPTURE(label);
                CHECK(is_compatible(m, f.graph()));
                if (f.table.size() <= 300) CHECK(closed(m, f.graph()));
                ++built["psi"];
            }
        }
    }
    for (const char* op : {"g", "join", "qmeet", "meet", "h", "lambda", "diamond", "pbar", "psi"}) {
        CAPTURE(op);
        CHECK(built[op] > 0);
    }
}

TEST_CASE("compatibility checker agrees with direct closure") {
    auto b = catalog("B");
    std::mt19937 rng(5);
    for (int t = 0; t < 300; ++t) {
        std::set<std::vector<int>> rel;
        int k = 1 + static_cast<int>(rng() % 3);
        for (int i = 0, n = 1 + static_cast<int>(rng() % 6); i < n; ++i) {
            std::vector<int> x;
            for (int j = 0; j < k; ++j) x.push_back(static_cast<int>(rng() % b.size()));
            rel.insert(x);
        }
        std::vector<std::vector<int>> r(rel.begin(), rel.end());
        CHECK(is_compatible(b, r) == closed(b, r));
    }
}
