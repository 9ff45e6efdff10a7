#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "autalg/classifier.hpp"
#include "autalg/powers.hpp"
#include "autalg/random.hpp"
#include "autalg/structure.hpp"
#include "autalg/terms.hpp"
#include "mutations.hpp"
#include "support.hpp"

using namespace autalg;
using testing_support::catalog_algebras;
using testing_support::genuine_mutations;

namespace {

struct Golden {
    const char* name;
    std::vector<long> params;
    Outcome outcome;
    const char* rule;
};

const std::vector<Golden> kGoldens = {
    {"B", {}, Outcome::NonDualizable, "whiskery"},
    {"R", {}, Outcome::NonDualizable, "whiskery"},
    {"L3star", {}, Outcome::NonDualizable, "rankill"},
    {"F", {0}, Outcome::NonDualizable, "whiskery"},
    {"F", {1}, Outcome::NonDualizable, "whiskery"},
    {"F", {2}, Outcome::NonDualizable, "whiskery"},
    {"N", {0}, Outcome::NonDualizable, nullptr},
    {"N", {1}, Outcome::NonDualizable, nullptr},
    {"N", {2}, Outcome::NonDualizable, nullptr},
    {"N", {3}, Outcome::NonDualizable, nullptr},
    {"N", {4}, Outcome::NonDualizable, nullptr},
    {"N", {5}, Outcome::NonDualizable, nullptr},
    {"C", {3}, Outcome::NonDualizable, "nondcomm"},
    {"C3id", {}, Outcome::Dualizable, "letter_affine"},
    {"T1", {}, Outcome::Dualizable, nullptr},
    {"T2", {}, Outcome::Dualizable, nullptr},
    {"K1", {}, Outcome::Dualizable, nullptr},
    {"K2", {}, Outcome::Dualizable, nullptr},
    {"K3", {}, Outcome::Dualizable, nullptr},
    {"L", {}, Outcome::Unknown, "unknown"},
};

const std::vector<std::string> kRuleOrder = {"zero_semigroup", "normalize",        "whiskery",  "rankill",
                                             "order_sensitivity", "single_letter", "two_state", "constant_letters",
                                             "all_loops",      "letter_affine",    "nondcomm",  "unknown"};

bool equations_hold(const AutomaticAlgebra& m) {
    return !check_identity(m, parse_and_normalize("xy"), parse_and_normalize("xyyy")) &&
           !check_identity(m, parse_and_normalize("wxyz"), parse_and_normalize("wyxz"));
}

bool some_n_embeds(const AutomaticAlgebra& m) {
    HomOptions opt;
    opt.injective_only = true;
    opt.limit = 1;
    for (long i = 0; i <= 5; ++i)
        if (!enumerate_homs(as_groupoid(catalog("N", {i})), m, opt).empty()) return true;
    return false;
}

}  // namespace

TEST_CASE("golden verdicts") {
    for (const auto& g : kGoldens) {
        CAPTURE(g.name);
        auto m = catalog(g.name, g.params);
        auto v = classify(m);
        CHECK(v.outcome == g.outcome);
        if (g.rule) CHECK(v.rule == g.rule);
        CHECK(verify_certificate(m, verdict_to_json(v)).ok);
    }
    auto l3 = classify(catalog("L3star"));
    CHECK(l3.certificate.at("case") == 2);
    auto b = classify(catalog("B"));
    CHECK(b.certificate.at("letter") == "a");
    CHECK(b.certificate.at("state") == "q");
}

TEST_CASE("L carries the full negative trace") {
    auto v = classify(catalog("L"));
    REQUIRE(v.trace.size() == kRuleOrder.size());
    for (size_t i = 0; i < kRuleOrder.size(); ++i) {
        CHECK(v.trace[i].rule == kRuleOrder[i]);
        if (kRuleOrder[i] != "unknown" && kRuleOrder[i] != "normalize") CHECK_FALSE(v.trace[i].fired);
    }
}

TEST_CASE("trace follows the rule order") {
    for (const auto& [label, m] : catalog_algebras()) {
        auto v = classify(m);
        size_t at = 0;
        for (const auto& t : v.trace) {
            while (at < kRuleOrder.size() && kRuleOrder[at] != t.rule) ++at;
            CHECK(at < kRuleOrder.size());
        }
        CHECK((!v.trace.empty() && v.trace.back().fired));
    }
}

TEST_CASE("JSON round trip") {
    for (const auto& [label, m] : catalog_algebras()) {
        Json j = verdict_to_json(classify(m));
        Json back = verdict_to_json(verdict_from_json(Json::parse(j.dump())));
        CHECK(back == j);
    }
}

TEST_CASE("certificates verify: catalog and 500 random") {
    for (const auto& [label, m] : catalog_algebras()) {
        auto r = verify_certificate(m, verdict_to_json(classify(m)));
        CAPTURE(label);
        CAPTURE(r.reason);
        CHECK(r.ok);
    }
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        auto m = random_algebra(rng, 4, 3);
        auto r = verify_certificate(m, verdict_to_json(classify(m)));
        CAPTURE(r.reason);
        CHECK(r.ok);
    }
}

TEST_CASE("tampered certificates are rejected") {
    auto b = catalog("B");
    Json j = verdict_to_json(classify(b));
    Json t = j;
    t["certificate"]["letter"] = "b";
    CHECK_FALSE(verify_certificate(b, t).ok);
    t = j;
    t["verdict"] = "dualizable";
    CHECK_FALSE(verify_certificate(b, t).ok);
    t = j;
    t["certificate"]["kind"] = "bogus";
    CHECK_FALSE(verify_certificate(b, t).ok);
    CHECK_FALSE(verify_certificate(b, Json::object()).ok);

    auto c3id = catalog("C3id");
    Json a = verdict_to_json(classify(c3id));
    CHECK(verify_certificate(c3id, a).ok);
    a["certificate"]["components"][0]["letters"]["b"] = "1";
    CHECK_FALSE(verify_certificate(c3id, a).ok);
}

TEST_CASE("mutation fuzzing on the golden set") {
    std::map<std::string, int> per_category;
    int total = 0;
    for (const auto& g : kGoldens) {
        auto m = catalog(g.name, g.params);
        Json j = verdict_to_json(classify(m));
        for (const auto& mu : genuine_mutations(m, j)) {
            CAPTURE(g.name);
            CAPTURE(mu.verdict.dump());
            CHECK_FALSE(verify_certificate(m, mu.verdict).ok);
            ++per_category[mu.category];
            ++total;
        }
    }
    CHECK(total >= 20);
    for (const char* c : {"letter", "state", "word", "embedding"}) CHECK(per_category[c] > 0);
}

TEST_CASE("normalize examples") {
    AutomaticAlgebra m({"q", "r"}, {"a", "b", "c"},
                       {AutomaticAlgebra::kUndefined, 0, 0, AutomaticAlgebra::kUndefined, 1, 1});
    auto [n, steps] = normalize_algebra(m);
    REQUIRE(steps.size() >= 2);
    CHECK(steps[0].kind == StepKind::DropUndefinedLetter);
    CHECK(steps[0].removed == "a");
    bool saw = false;
    for (const auto& [from, to] : steps[0].embedding)
        if (from == "a") saw = to == std::pair<std::string, std::string>{"0", "q"};
    CHECK(saw);
    CHECK(steps[1].kind == StepKind::DropRepeatedLetter);
    CHECK(steps[1].removed == "c");
    saw = false;
    for (const auto& [from, to] : steps[1].embedding)
        if (from == "c") saw = to == std::pair<std::string, std::string>{"b", "b"};
    CHECK(saw);
    CHECK(n.letter_names() == std::vector<std::string>{"b"});

    auto c3 = catalog("C", {3});
    auto [same, none] = normalize_algebra(c3);
    CHECK(none.empty());
    CHECK(same.same_table(c3));
}

TEST_CASE("normalization steps embed, random") {
    Rng rng(12);
    for (int i = 0; i < 200; ++i) {
        auto m = random_algebra(rng, 4, 3, 0.5);
        auto [n, steps] = normalize_algebra(m);
        CHECK(n.num_states() <= m.num_states());
        CHECK(n.num_letters() <= m.num_letters());
        auto [again, more] = normalize_algebra(n);
        CHECK(more.empty());
    }
}

TEST_CASE("chain") {
    CHECK(gen_chain(1).same_table(catalog("C", {3})));
    auto m2 = gen_chain(2);
    CHECK(m2.num_states() == 3);
    CHECK(m2.num_letters() == 3);
    auto m3 = gen_chain(3);
    CHECK(m3.num_states() == 10);
    CHECK(m3.num_letters() == 5);
    CHECK(chain_primes(3) == std::vector<long>{7});
    std::vector<Outcome> want = {Outcome::NonDualizable, Outcome::Dualizable, Outcome::NonDualizable,
                                 Outcome::Dualizable};
    for (int n = 1; n <= 4; ++n) CHECK(classify(gen_chain(n)).outcome == want[n - 1]);
}

TEST_CASE("stability under normalization") {
    Rng rng(13);
    for (int i = 0; i < 300; ++i) {
        auto m = random_algebra(rng, 4, 3);
        CHECK(classify(normalize_algebra(m).first).outcome == classify(m).outcome);
    }
}

TEST_CASE("dualizable and non-dualizable rules never both apply") {
    Rng rng(14);
    for (int i = 0; i < 300; ++i) {
        auto m = random_algebra(rng, 4, 3);
        auto v = classify(m);
        auto n = normalize_algebra(m).first;
        if (n.num_states() == 0 || n.num_letters() == 0) continue;
        bool nd = whiskery_check(n) || rankill_check(n) || order_sensitivity(n) || nondcomm_check(n);
        if (n.num_states() == 2 && !equations_hold(n)) nd = true;
        bool d = letter_affine_analysis(n).affine;
        bool loops = true, constant = n.is_total();
        for (int a = 0; a < n.num_letters(); ++a)
            for (int q = 0; q < n.num_states(); ++q) {
                loops = loops && (n.delta(q, a) < 0 || n.delta(q, a) == q);
                constant = constant && n.delta(q, a) == n.delta(0, a);
            }
        d = d || loops || constant || (n.num_states() == 2 && equations_hold(n));
        d = d || (n.num_letters() == 1 && !whiskery_check(n));
        CHECK_FALSE((d && nd));
        if (v.outcome == Outcome::Dualizable) CHECK_FALSE(nd);
        if (v.outcome == Outcome::NonDualizable) CHECK_FALSE(d);
    }
}

TEST_CASE("two-state algebras: equations iff no forbidden embedding") {
    int count = 0;
    for (int ns = 1; ns <= 2; ++ns) {
        int cells = 2 * ns, total = 1;
        for (int i = 0; i < cells; ++i) total *= 3;
        std::vector<std::string> letters = ns == 1 ? std::vector<std::string>{"a"} : std::vector<std::string>{"a", "b"};
        for (int code = 0; code < total; ++code) {
            std::vector<int> delta;
            for (int c = 0, x = code; c < cells; ++c, x /= 3) delta.push_back(x % 3 == 2 ? AutomaticAlgebra::kUndefined : x % 3);
            AutomaticAlgebra m({"q", "r"}, letters, delta);
            CHECK(equations_hold(m) == !some_n_embeds(m));
            CHECK(classify(m).outcome != Outcome::Unknown);
            ++count;
        }
    }
    CHECK(count == 90);
}
