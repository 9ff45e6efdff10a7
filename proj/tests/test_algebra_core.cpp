#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>

#include "autalg/algebra.hpp"
#include "autalg/error.hpp"
#include "autalg/io.hpp"
#include "support.hpp"

using namespace autalg;
using testing_support::catalog_algebras;

namespace {

Element st(const AutomaticAlgebra& m, const std::string& n) { return Element::state(*m.find_state(n)); }
Element le(const AutomaticAlgebra& m, const std::string& n) { return Element::letter(*m.find_letter(n)); }

// transitions as "q a r" lines, independent of the emitter
std::string table_of(const AutomaticAlgebra& m) {
    std::string s;
    for (int q = 0; q < m.num_states(); ++q)
        for (int a = 0; a < m.num_letters(); ++a)
            if (m.delta(q, a) != AutomaticAlgebra::kUndefined)
                s += m.state_names()[q] + " " + m.letter_names()[a] + " " + m.state_names()[m.delta(q, a)] + "\n";
    return s;
}

}  // namespace

TEST_CASE("product on B") {
    auto b = catalog("B");
    CHECK(product(b, st(b, "q"), le(b, "a")) == st(b, "r"));
    CHECK(product(b, Element::zero(), st(b, "q")).is_zero());
    CHECK(product(b, le(b, "a"), le(b, "b")).is_zero());
    CHECK(product(b, st(b, "q"), le(b, "b")).is_zero());
}

TEST_CASE("apply_word on B") {
    auto b = catalog("B");
    CHECK(apply_word(b, st(b, "q"), parse_word_compact(b, "abc")) == st(b, "s"));
    CHECK(apply_word(b, st(b, "q"), {}) == st(b, "q"));
    CHECK(apply_word(b, st(b, "q"), parse_word_compact(b, "ba")).is_zero());
}

TEST_CASE("catalog shapes") {
    auto f0 = catalog("F", {0});
    CHECK(f0.num_states() == 2);
    CHECK(f0.num_letters() == 1);
    CHECK(table_of(f0) == "q a r\n");

    auto c3 = catalog("C", {3});
    CHECK(table_of(c3) == "1 b 2\n1 c 3\n2 b 3\n2 c 1\n3 b 1\n3 c 2\n");

    auto n4 = catalog("N", {4});
    CHECK(n4.num_states() == 2);
    CHECK(table_of(n4) == "q a r\nq b r\nr a r\nr b q\n");

    CHECK(table_of(catalog("B")) == "q a r\nr b r\nr c s\n");
    CHECK(table_of(catalog("L")) == "q a q\nq b q\nq c q\nr a q\nr b r\nr c s\ns a s\ns b s\ns c s\n");

    auto f2 = catalog("F", {2});
    CHECK(f2.state_names() == std::vector<std::string>{"q", "r", "s1", "s2"});
}

TEST_CASE("catalog errors") {
    CHECK_THROWS_AS(catalog("nope"), Error);
    try {
        catalog("C", {4});
        FAIL("even p accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadParams);
    }
    try {
        catalog("B", {1});
        FAIL("arity ignored");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadParams);
    }
}

TEST_CASE("absorption and flatness on every catalog algebra") {
    for (const auto& [label, m] : catalog_algebras()) {
        CAPTURE(label);
        for (int x = 0; x < m.size(); ++x) {
            CHECK(m.mul(m.zero_code(), x) == m.zero_code());
            CHECK(m.mul(x, m.zero_code()) == m.zero_code());
            for (int y = 0; y < m.size(); ++y) {
                int p = m.mul(x, y);
                if (p != m.zero_code()) {
                    CHECK(m.code_is_state(x));
                    CHECK(m.code_is_letter(y));
                    CHECK(p == m.delta(x, y - m.num_states()));
                }
            }
        }
    }
}

TEST_CASE("apply_word splits over concatenation") {
    for (const auto& [label, m] : catalog_algebras(false)) {
        CAPTURE(label);
        std::vector<Word> words{{}};
        for (int len = 1; len <= 4; ++len) {
            std::vector<Word> next;
            for (const auto& w : words)
                if (static_cast<int>(w.size()) == len - 1)
                    for (int a = 0; a < m.num_letters(); ++a) {
                        auto v = w;
                        v.push_back(a);
                        next.push_back(v);
                    }
            words.insert(words.end(), next.begin(), next.end());
        }
        for (int c = 0; c < m.size(); ++c) {
            Element x = m.element(c);
            for (const auto& w : words)
                for (size_t cut = 0; cut <= w.size(); ++cut) {
                    Word u(w.begin(), w.begin() + static_cast<long>(cut)), v(w.begin() + static_cast<long>(cut), w.end());
                    REQUIRE(apply_word(m, x, w) == apply_word(m, apply_word(m, x, u), v));
                }
        }
    }
}

TEST_CASE("file round trip") {
    for (const auto& [label, m] : catalog_algebras()) {
        CAPTURE(label);
        auto back = parse_algebra_file(emit_algebra_file(m));
        CHECK(back.same_table(m));
        CHECK(table_of(back) == table_of(m));
    }
}

TEST_CASE("B file parses to the catalog table") {
    auto m = parse_algebra_file("# B\nstates q r s\nletters a b c\ntrans q a r\ntrans r b r\ntrans r c s\n");
    CHECK(m.same_table(catalog("B")));
}

TEST_CASE("parse errors") {
    auto kind = [](const std::string& text) {
        try {
            parse_algebra_file(text);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Usage;
    };
    CHECK(kind("states q r s\nletters a\ntrans q a r\ntrans q a s\n") == ErrorKind::ConflictingTransition);
    CHECK(kind("states q 0\nletters a\n") == ErrorKind::ReservedName);
    CHECK(kind("trans q a q\nstates q\nletters a\n") == ErrorKind::ParseError);
    CHECK(kind("states q\nstates r\nletters a\n") == ErrorKind::ParseError);
    CHECK(kind("states q\nletters a\ntrans q a z\n") == ErrorKind::ParseError);
    CHECK(kind("states q\nletters a\ntrans q a\n") == ErrorKind::ParseError);
    // a repeated identical edge is harmless
    CHECK(kind("states q r\nletters a\ntrans q a r\ntrans q a r\n") == ErrorKind::Usage);
}

TEST_CASE("element codes") {
    auto m = catalog("B");
    CHECK(m.zero_code() == 6);
    CHECK(m.code_name(m.zero_code()) == "0");
    CHECK(m.find("0")->is_zero());
    for (int c = 0; c < m.size(); ++c) CHECK(m.code(m.element(c)) == c);
}
