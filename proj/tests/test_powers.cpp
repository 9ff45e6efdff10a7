#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "autalg/algebra.hpp"
#include "autalg/error.hpp"
#include "autalg/powers.hpp"
#include "autalg/random.hpp"
#include "support.hpp"

using namespace autalg;

namespace {

int c(const AutomaticAlgebra& m, const std::string& n) { return m.code(*m.find(n)); }

std::set<PowerElement> naive_closure(const AutomaticAlgebra& m, std::set<PowerElement> s) {
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<PowerElement> cur(s.begin(), s.end());
        for (const auto& x : cur)
            for (const auto& y : cur) {
                PowerElement p;
                for (size_t i = 0; i < x.values.size(); ++i) p.values.push_back(m.mul(x.values[i], y.values[i]));
                grew |= s.insert(p).second;
            }
    }
    return s;
}

// every map A -> T, checked against the full table
std::vector<FiniteMap> all_homs(const Groupoid& a, const Groupoid& t, bool injective) {
    std::vector<FiniteMap> out;
    FiniteMap h(static_cast<size_t>(a.n), 0);
    while (true) {
        bool ok = true;
        for (int x = 0; x < a.n && ok; ++x)
            for (int y = 0; y < a.n && ok; ++y) ok = h[a.mul(x, y)] == t.mul(h[x], h[y]);
        if (ok && (!injective || std::set<int>(h.begin(), h.end()).size() == h.size())) out.push_back(h);
        int i = a.n - 1;
        while (i >= 0 && ++h[i] == t.n) h[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

std::vector<PowerElement> random_gens(Rng& rng, const AutomaticAlgebra& m, int n, int k) {
    std::uniform_int_distribution<int> val(0, m.size() - 1);
    std::vector<PowerElement> g;
    for (int i = 0; i < k; ++i) {
        PowerElement x;
        for (int j = 0; j < n; ++j) x.values.push_back(val(rng));
        g.push_back(x);
    }
    return g;
}

}  // namespace

TEST_CASE("power_element") {
    auto b = catalog("B");
    int z = b.zero_code(), r = c(b, "r"), q = c(b, "q");
    CHECK(power_element(b, z, {{1, r}, {5, r}}, 6).values == std::vector<int>{z, r, z, z, z, r});
    CHECK(power_element(b, q, {}, 3).values == std::vector<int>{q, q, q});
    CHECK(power_element(b, q, {}, 1).values == std::vector<int>{q});
    try {
        power_element(b, z, {{1, r}, {1, q}}, 3);
        FAIL("duplicate accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DuplicateIndex);
    }
    try {
        power_element(b, z, {{3, r}}, 3);
        FAIL("out of range accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IndexOutOfRange);
    }
}

TEST_CASE("subuniverse examples") {
    auto b = catalog("B");
    int q = c(b, "q"), a = c(b, "a"), r = c(b, "r"), z = b.zero_code();
    auto s = generate_subuniverse(b, 2, {PowerElement{{q, q}}, PowerElement{{a, a}}});
    CHECK(std::set<PowerElement>(s.begin(), s.end()) ==
          std::set<PowerElement>{PowerElement{{q, q}}, PowerElement{{a, a}}, PowerElement{{r, r}}, PowerElement{{z, z}}});
    CHECK(s[0] == PowerElement{{q, q}});
    CHECK(s[1] == PowerElement{{a, a}});
    CHECK(generate_subuniverse(b, 3, {power_element(b, z, {}, 3)}).size() == 1);

    auto f0 = catalog("F", {0});
    auto t = generate_subuniverse(f0, 1, {PowerElement{{c(f0, "q")}}, PowerElement{{c(f0, "a")}}});
    CHECK(t.size() == 4);
}

TEST_CASE("subuniverse matches naive closure, monotone and idempotent") {
    Rng rng(11);
    auto b = catalog("B");
    for (int trial = 0; trial < 60; ++trial) {
        int n = 1 + trial % 3;
        auto x = random_gens(rng, b, n, 3);
        auto y = x;
        auto extra = random_gens(rng, b, n, 2);
        y.insert(y.end(), extra.begin(), extra.end());
        auto sx = generate_subuniverse(b, n, x);
        auto sy = generate_subuniverse(b, n, y);
        std::set<PowerElement> setx(sx.begin(), sx.end()), sety(sy.begin(), sy.end());
        CHECK(setx == naive_closure(b, std::set<PowerElement>(x.begin(), x.end())));
        CHECK(std::includes(sety.begin(), sety.end(), setx.begin(), setx.end()));
        auto again = generate_subuniverse(b, n, sx);
        CHECK(std::set<PowerElement>(again.begin(), again.end()) == setx);
    }
}

TEST_CASE("subuniverse cap") {
    auto b = catalog("B");
    Rng rng(3);
    CHECK_THROWS_AS(generate_subuniverse(b, 4, random_gens(rng, b, 4, 6), 3), Error);
}

TEST_CASE("hom examples") {
    auto b = catalog("B");
    Groupoid gb = as_groupoid(b);
    auto homs = enumerate_homs(gb, gb);
    FiniteMap id(static_cast<size_t>(b.size()));
    for (int i = 0; i < b.size(); ++i) id[i] = i;
    CHECK(std::find(homs.begin(), homs.end(), id) != homs.end());

    auto f0 = catalog("F", {0});
    HomOptions inj;
    inj.injective_only = true;
    auto emb = enumerate_homs(as_groupoid(f0), gb, inj);
    FiniteMap want{c(b, "q"), c(b, "r"), c(b, "a"), b.zero_code()};
    CHECK(std::find(emb.begin(), emb.end(), want) != emb.end());

    CHECK(enumerate_homs(as_groupoid(catalog("N", {0})), as_groupoid(catalog("N", {1})), inj).empty());
}

TEST_CASE("hom enumeration equals brute force") {
    std::vector<std::pair<AutomaticAlgebra, AutomaticAlgebra>> pairs{
        {catalog("F", {0}), catalog("B")},      {catalog("N", {0}), catalog("N", {1})},
        {catalog("T1"), catalog("C", {3})},     {catalog("K1"), catalog("N", {4})},
        {catalog("N", {2}), catalog("N", {5})}, {catalog("F", {1}), catalog("L")},
        {catalog("R"), catalog("R")},
    };
    Rng rng(5);
    auto b = catalog("B");
    for (int i = 0; i < 6; ++i) {
        auto s = generate_subuniverse(b, 2, random_gens(rng, b, 2, 2));
        if (s.size() > 6) continue;
        Groupoid a = groupoid_from_elements(b, s);
        for (bool inj : {false, true}) {
            HomOptions o;
            o.injective_only = inj;
            auto got = enumerate_homs(a, as_groupoid(b), o);
            auto want = all_homs(a, as_groupoid(b), inj);
            std::sort(got.begin(), got.end());
            CHECK(got == want);
        }
    }
    for (const auto& [x, y] : pairs) {
        Groupoid a = as_groupoid(x), t = as_groupoid(y);
        for (bool inj : {false, true}) {
            HomOptions o;
            o.injective_only = inj;
            auto got = enumerate_homs(a, t, o);
            for (const auto& h : got) {
                CHECK(is_hom(a, t, h));
                CHECK(h[x.zero_code()] == y.zero_code());
            }
            auto want = all_homs(a, t, inj);
            std::sort(got.begin(), got.end());
            CHECK(got == want);
        }
    }
}

TEST_CASE("hom_extends agrees with filtering all homs") {
    Rng rng(17);
    std::vector<std::pair<AutomaticAlgebra, AutomaticAlgebra>> pairs{
        {catalog("F", {1}), catalog("L")}, {catalog("N", {4}), catalog("N", {5})}, {catalog("B"), catalog("B")},
        {catalog("C", {3}), catalog("C3id")}};
    for (const auto& [x, y] : pairs) {
        Groupoid a = as_groupoid(x), t = as_groupoid(y);
        auto homs = all_homs(a, t, false);
        std::uniform_int_distribution<int> src(0, a.n - 1), dst(0, t.n - 1);
        for (int trial = 0; trial < 40; ++trial) {
            FiniteMap preset(static_cast<size_t>(a.n), -1);
            int k = 1 + trial % 3;
            for (int i = 0; i < k; ++i) preset[src(rng)] = dst(rng);
            bool want = std::any_of(homs.begin(), homs.end(), [&](const FiniteMap& h) {
                for (int i = 0; i < a.n; ++i)
                    if (preset[i] >= 0 && h[i] != preset[i]) return false;
                return true;
            });
            CHECK(hom_extends(a, t, preset) == want);
        }
    }
}

TEST_CASE("hom cap") {
    auto b = catalog("B");
    HomOptions o;
    o.max_elements = 3;
    CHECK_THROWS_AS(enumerate_homs(as_groupoid(b), as_groupoid(b), o), Error);
}

TEST_CASE("compatibility") {
    auto b = catalog("B");
    int q = c(b, "q"), r = c(b, "r");
    std::vector<std::vector<int>> diag;
    for (int x = 0; x < b.size(); ++x) diag.push_back({x, x});
    CHECK(is_compatible(b, diag));
    CHECK_FALSE(is_compatible(b, {{q, r}}));
    // subuniverses of M^2 are compatible by construction
    Rng rng(23);
    for (int i = 0; i < 20; ++i) {
        auto s = generate_subuniverse(b, 2, random_gens(rng, b, 2, 2));
        std::vector<std::vector<int>> rel;
        for (const auto& x : s) rel.push_back(x.values);
        CHECK(is_compatible(b, rel));
    }
}

TEST_CASE("evaluations preserve compatible relations") {
    // A <= B^2, R a binary compatible relation on B, X = hom(A, B):
    // for x, y in X with (x(p), y(p)) in R at every generator p of A the
    // pair stays in R everywhere, and evaluation at any point lands in R
    auto b = catalog("B");
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        auto gens = random_gens(rng, b, 2, 2);
        if (gens[0] == gens[1]) continue;
        auto s = generate_subuniverse(b, 2, gens);
        if (s.size() > 8) continue;
        Groupoid a = groupoid_from_elements(b, s);
        auto homs = enumerate_homs(a, as_groupoid(b));
        auto rs = generate_subuniverse(b, 2, random_gens(rng, b, 2, 2));
        std::set<std::pair<int, int>> rel;
        for (const auto& x : rs) rel.insert({x.values[0], x.values[1]});
        for (const auto& x : homs)
            for (const auto& y : homs) {
                bool gens_in = true;
                for (int p = 0; p < 2 && p < a.n; ++p) gens_in &= rel.count({x[p], y[p]}) > 0;
                if (!gens_in) continue;
                for (int p = 0; p < a.n; ++p) CHECK(rel.count({x[p], y[p]}) == 1);
            }
    }
}
