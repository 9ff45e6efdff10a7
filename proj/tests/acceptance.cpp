// Acceptance suite: one PASS/FAIL line per criterion, exit 4 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>

#include "autalg/classifier.hpp"
#include "autalg/compat_ops.hpp"
#include "autalg/error.hpp"
#include "autalg/groups.hpp"
#include "autalg/powers.hpp"
#include "autalg/random.hpp"
#include "autalg/structure.hpp"
#include "autalg/terms.hpp"
#include "autalg/witness.hpp"
#include "mutations.hpp"
#include "support.hpp"

using namespace autalg;
using testing_support::catalog_algebras;

namespace {

// criterion body: returns a short summary, throws std::runtime_error on failure
using Body = std::function<std::string()>;

[[noreturn]] void failed(const std::string& why) { throw std::runtime_error(why); }

void expect(bool ok, const std::string& why) {
    if (!ok) failed(why);
}

bool run(int id, const std::string& title, const Body& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
        detail = body();
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", s);
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " -- " << detail << " (" << buf
              << ")" << std::endl;
    return ok;
}

std::string outcome_str(Outcome o) { return outcome_name(o); }

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

bool whiskery_oracle(const AutomaticAlgebra& m) {
    for (int a = 0; a < m.num_letters(); ++a)
        for (int q = 0; q < m.num_states(); ++q) {
            int qa = m.delta(q, a);
            if (qa < 0) continue;
            bool ok = false;
            for (int n = 1, cur = qa; n <= m.num_states() && !ok; ++n) {
                cur = cur < 0 ? -1 : m.delta(cur, a);
                ok = cur == qa;
            }
            if (!ok) return false;
        }
    return true;
}

// some state kills one rearrangement of a word of length <= len and not another
bool order_sensitive_brute(const AutomaticAlgebra& m, int len) {
    if (m.is_total()) return false;  // nothing is ever killed
    const int ns = m.num_letters();
    for (int l = 1; l <= len; ++l) {
        // words grouped by letter multiset; per class and state: seen killed / seen alive
        std::map<std::vector<int>, std::vector<std::pair<bool, bool>>> cls;
        std::vector<int> w(static_cast<size_t>(l), 0);
        while (true) {
            std::vector<int> key(static_cast<size_t>(ns), 0);
            for (int a : w) ++key[a];
            auto& st = cls[key];
            if (st.empty()) st.assign(static_cast<size_t>(m.num_states()), {false, false});
            for (int s = 0; s < m.num_states(); ++s) {
                int q = s;
                for (int a : w) q = q < 0 ? -1 : m.delta(q, a);
                (q < 0 ? st[s].first : st[s].second) = true;
                if (st[s].first && st[s].second) return true;
            }
            int i = 0;
            while (i < l && ++w[i] == ns) w[i++] = 0;
            if (i == l) break;
        }
    }
    return false;
}

std::vector<testing_support::Named> with_normalized(std::vector<testing_support::Named> v) {
    for (size_t i = 0, n = v.size(); i < n; ++i) {
        auto norm = normalize_algebra(v[i].m).first;
        if (!norm.same_table(v[i].m)) v.push_back({v[i].label + "/normalized", norm});
    }
    return v;
}

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

std::string label(const Golden& g) {
    std::string s = g.name;
    for (long p : g.params) s += std::to_string(p);
    return s;
}

std::string c1() {
    for (const auto& g : kGoldens) {
        auto m = catalog(g.name, g.params);
        auto v = classify(m);
        expect(v.outcome == g.outcome, label(g) + ": got " + outcome_str(v.outcome));
        if (g.rule) expect(v.rule == g.rule, label(g) + ": rule " + v.rule);
        expect(verify_certificate(m, verdict_to_json(v)).ok, label(g) + ": certificate rejected");
    }
    auto l3 = classify(catalog("L3star"));
    expect(l3.certificate.at("case") == 2, "L3star: not rankill case 2");
    auto b = classify(catalog("B"));
    expect(b.certificate.at("letter") == "a" && b.certificate.at("state") == "q", "B: witness is not (a, q)");
    auto l = classify(catalog("L"));
    for (const auto& t : l.trace)
        if (t.rule != "unknown" && t.rule != "normalize") expect(!t.fired, "L: rule " + t.rule + " fired");
    return std::to_string(kGoldens.size()) + " algebras";
}

std::string c2() {
    const Outcome want[] = {Outcome::NonDualizable, Outcome::Dualizable, Outcome::NonDualizable,
                            Outcome::Dualizable};
    std::string seq;
    for (int n = 1; n <= 4; ++n) {
        auto o = classify(gen_chain(n)).outcome;
        seq += std::string(n > 1 ? " " : "") + (o == Outcome::Dualizable ? "D" : o == Outcome::NonDualizable ? "ND" : "?");
        expect(o == want[n - 1], "M_" + std::to_string(n) + " is " + outcome_str(o));
    }
    expect(chain_primes(3) == std::vector<long>{7}, "stage 3 prime is not 7");
    expect(gen_chain(3).num_states() == 10, "M_3 does not have 3 + 7 states");
    return seq + ", p = 7";
}

std::string c3() {
    int count = 0, d = 0;
    for (int ns = 1; ns <= 2; ++ns) {
        int cells = 2 * ns, total = 1;
        for (int i = 0; i < cells; ++i) total *= 3;
        std::vector<std::string> letters = ns == 1 ? std::vector<std::string>{"a"} : std::vector<std::string>{"a", "b"};
        for (int code = 0; code < total; ++code) {
            std::vector<int> delta;
            for (int c = 0, x = code; c < cells; ++c, x /= 3)
                delta.push_back(x % 3 == 2 ? AutomaticAlgebra::kUndefined : x % 3);
            AutomaticAlgebra m({"q", "r"}, letters, delta);
            bool eq = equations_hold(m);
            expect(eq == !some_n_embeds(m), "discrepancy at table " + std::to_string(code) + " with " +
                                                std::to_string(ns) + " letters");
            auto o = classify(m).outcome;
            expect(o != Outcome::Unknown, "unknown at table " + std::to_string(code));
            d += o == Outcome::Dualizable;
            ++count;
        }
    }
    return std::to_string(count) + " algebras, " + std::to_string(d) + " dualizable, 0 discrepancies";
}

std::string c4() {
    Rng rng(4);
    int fails = 0;
    for (int i = 0; i < 500; ++i) {
        auto m = random_algebra(rng, 4, 3);
        bool d = !whiskery_direct(m).has_value(), q = !whiskery_quasi(m).has_value(),
             f = !f_embedding_search(m).has_value();
        expect(d == q && q == f, "disagreement on sample " + std::to_string(i) + " (seed 4)");
        expect(d == whiskery_oracle(m), "direct check disagrees with the word-run oracle on sample " + std::to_string(i));
        fails += !d;
    }
    return "500 algebras (seed 4), " + std::to_string(fails) + " not whiskery";
}

std::string c5() {
    int n = 0, sensitive = 0;
    auto check = [&](const AutomaticAlgebra& m, const std::string& what) {
        bool exact = order_sensitivity(m).has_value();
        expect(exact == order_sensitive_brute(m, 6), what + ": exact " + (exact ? "yes" : "no") + ", brute force differs");
        sensitive += exact;
        ++n;
    };
    for (const auto& [l, m] : catalog_algebras()) check(m, l);
    Rng rng(5);
    for (int i = 0; i < 200; ++i) check(random_algebra(rng, 3, 2), "random sample " + std::to_string(i) + " (seed 5)");
    return std::to_string(n) + " algebras, " + std::to_string(sensitive) + " order-sensitive";
}

std::string c6() {
    std::map<std::string, int> built;
    for (const auto& [l, m] : with_normalized(catalog_algebras())) {
        for (const std::string op : {"g", "join", "qmeet", "meet", "h", "lambda", "diamond", "pbar"}) {
            std::vector<std::vector<std::string>> params;
            if (op == "g") {
                for (int u = 0; u + 1 < m.size(); ++u)
                    for (int v = 0; v + 1 < m.size(); ++v)
                        if (m.code_is_letter(u) || m.code_is_letter(v)) params.push_back({m.code_name(u), m.code_name(v)});
                if (m.size() > 16) {
                    std::mt19937 rng(static_cast<unsigned>(m.size()));
                    std::shuffle(params.begin(), params.end(), rng);
                    params.resize(16);
                }
            } else if (op == "lambda") {
                for (const auto& s : m.state_names()) params.push_back({s});
            } else if (op == "pbar") {
                for (size_t i = 0; i < components(m).size(); ++i) params.push_back({std::to_string(i)});
            } else {
                params.push_back({});
            }
            for (const auto& ps : params) {
                PartialOperation f;
                try {
                    f = make_compatible_op(m, op, ps);
                } catch (const Error& e) {
                    if (e.kind() == ErrorKind::PreconditionViolated) continue;
                    throw;
                }
                expect(is_compatible(m, f.graph()), l + ": " + op + " is not compatible");
                ++built[op];
            }
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
                expect(is_compatible(m, psi_op(m, i, phi).graph()), l + ": psi is not compatible");
                ++built["psi"];
            }
        }
    }
    std::string out;
    for (const char* op : {"g", "join", "qmeet", "meet", "h", "lambda", "diamond", "pbar", "psi"}) {
        expect(built[op] > 0, std::string("no algebra exercised ") + op);
        out += std::string(out.empty() ? "" : " ") + op + "=" + std::to_string(built[op]);
    }
    return out;
}

std::string c7() {
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        auto m = random_commuting_connected(rng, 5);
        std::vector<int> all(static_cast<size_t>(m.num_states()));
        for (int q = 0; q < m.num_states(); ++q) all[q] = q;
        auto g = component_group(m, all);
        check_abelian_group(g.group);
        for (size_t k = 0; k < g.letters.size(); ++k)
            for (int q = 0; q < m.num_states(); ++q)
                expect(g.states[g.group.mul(g.element_of_state(q), g.letter_images[k])] == m.delta(q, g.letters[k]),
                       "q.a != q * a_(i) on sample " + std::to_string(i) + " (seed 7)");
        // regular: from each state, g -> q*g is a bijection onto the states
        for (int q = 0; q < m.num_states(); ++q) {
            std::set<int> hit;
            for (int x = 0; x < g.group.n; ++x) hit.insert(g.states[g.group.mul(g.element_of_state(q), x)]);
            expect(static_cast<int>(hit.size()) == m.num_states() && g.group.n == m.num_states(),
                   "action not regular on sample " + std::to_string(i));
        }
    }
    return "100 algebras (seed 7)";
}

std::string c8() {
    long checks = 0;
    int types = 0;
    for (const auto& orders : testing_support::abelian_types_upto_12()) {
        ++types;
        for (unsigned seed : {0u, 101u}) {
            auto g = testing_support::product_group(orders, seed);
            auto endos = testing_support::brute_homs(g, g.n, [&](int a, int b) { return g.mul(a, b); }, g.identity);
            std::set<std::vector<int>> endo_set(endos.begin(), endos.end());
            int ex = exponent(g);
            for (int m : {ex, 2 * ex}) {
                auto chars = testing_support::brute_homs(g, m, [m](int a, int b) { return (a + b) % m; }, 0);
                std::set<std::vector<int>> char_set(chars.begin(), chars.end());
                for (int u = 0; u < g.n; ++u) {
                    std::string where = "order " + std::to_string(g.n) + " m=" + std::to_string(m) + " u=" + std::to_string(u);
                    auto w = huc_character(g, m, u);
                    expect(char_set.count(w.chi) > 0, where + ": chi is not a character");
                    for (int h = 0; h < g.n; ++h) {
                        if (h == g.identity) continue;
                        expect(endo_set.count(w.endo[h]) > 0, where + ": supplied map is not an endomorphism");
                        expect(w.endo[h][u] == u && w.chi[w.endo[h][h]] != 0, where + ": supplied endomorphism fails");
                        bool any = false;
                        for (const auto& phi : endos) any = any || (phi[u] == u && w.chi[phi[h]] != 0);
                        expect(any, where + ": no endomorphism moves h off ker chi");
                        ++checks;
                    }
                }
            }
        }
    }
    return std::to_string(types) + " group types, " + std::to_string(checks) + " (u, h) checks";
}

std::string c9() {
    long total = 0, passing = 0;
    for (int mod : {2, 3})
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k) {
                int cells = j * k;
                long count = 1;
                for (int c = 0; c < cells; ++c) count *= mod;
                for (long code = 0; code < count; ++code) {
                    MatrixZm a{mod, j, k, {}};
                    for (long c = 0, x = code; c < cells; ++c, x /= mod) a.entries.push_back(static_cast<int>(x % mod));
                    ++total;
                    bool hyp = check_rows_subgroup(a).ok && check_columns_coset(a).ok && check_row_zero(a).ok;
                    // row-zero directly
                    bool rz = true;
                    for (int r = 0; r < j; ++r) {
                        bool has = false;
                        for (int c = 0; c < k; ++c) has = has || a.at(r, c) == 0;
                        rz = rz && has;
                    }
                    expect(check_row_zero(a).ok == rz, "row-zero checker disagrees");
                    if (!hyp) continue;
                    ++passing;
                    int want = -1;
                    for (int c = 0; c < k && want < 0; ++c) {
                        bool zero = true;
                        for (int r = 0; r < j; ++r) zero = zero && a.at(r, c) == 0;
                        if (zero) want = c;
                    }
                    std::string where = "Z_" + std::to_string(mod) + " " + std::to_string(j) + "x" + std::to_string(k) +
                                        " #" + std::to_string(code);
                    expect(want >= 0, where + ": hypotheses hold but no zero column");
                    expect(find_zero_column(a) == want, where + ": wrong column");
                }
            }
    return std::to_string(total) + " matrices, " + std::to_string(passing) + " satisfy the hypotheses";
}

std::string c10() {
    struct C {
        std::string name;
        std::vector<std::string> params;
    };
    const std::vector<C> cases = {{"thm_wc", {"0"}},         {"thm_wc", {"1"}},         {"ex_all4_L", {}},
                                  {"lem_2state2_N4", {}}, {"lem_2state3_N5", {}}, {"thm_nondcomm", {}}};
    long restrictions = 0;
    for (const auto& c : cases) {
        for (int n : {4, 6}) {
            auto sp = build_truncation(c.name, c.params, n);
            auto rep = verify_construction(sp);
            expect(!rep.g_in_a, c.name + " N=" + std::to_string(n) + ": g in A");
            for (const auto& id : rep.identities)
                expect(id.pass && id.instances > 0, c.name + " N=" + std::to_string(n) + ": " + id.identity);
        }
        auto sp = build_truncation(c.name, c.params, 4);
        auto k = kernel_block_analysis(sp, sp.nu, 128);
        expect(k.violations == 0, c.name + ": " + std::to_string(k.violations) + " kernel violations at N=4");
        restrictions += k.hom_count;
    }
    return "6 constructions at N = 4, 6; kernel analysis at N = 4 over " + std::to_string(restrictions) +
           " restrictions, 0 violations";
}

std::string c11() {
    long accepted = 0;
    auto accept = [&](const AutomaticAlgebra& m, const std::string& what) {
        auto r = verify_certificate(m, verdict_to_json(classify(m)));
        expect(r.ok, what + ": " + r.reason);
        ++accepted;
    };
    for (const auto& g : kGoldens) accept(catalog(g.name, g.params), label(g));
    for (const auto& [l, m] : catalog_algebras()) accept(m, l);
    Rng rng(11);
    for (int i = 0; i < 500; ++i) accept(random_algebra(rng, 4, 3), "random sample " + std::to_string(i) + " (seed 11)");

    std::map<std::string, int> cats;
    long rejected = 0;
    for (const auto& g : kGoldens) {
        auto m = catalog(g.name, g.params);
        Json j = verdict_to_json(classify(m));
        for (const auto& mu : testing_support::genuine_mutations(m, j)) {
            expect(!verify_certificate(m, mu.verdict).ok, label(g) + ": accepted mutated " + mu.category);
            ++cats[mu.category];
            ++rejected;
        }
    }
    expect(rejected >= 20, "only " + std::to_string(rejected) + " mutations generated");
    std::string by;
    for (const auto& [c, n] : cats) by += " " + c + "=" + std::to_string(n);
    return std::to_string(accepted) + " certificates accepted; " + std::to_string(rejected) + " mutations rejected (" +
           by.substr(1) + ")";
}

std::string c12() {
    auto f0 = catalog("F", {0});
    std::vector<PowerElement> a;
    for (int c = 0; c < f0.size(); ++c) a.push_back(PowerElement{{c}});
    auto r1 = local_eval_probe(f0, a, 3);
    expect(r1.letter_range_violations == 0, "F_0: " + std::to_string(r1.letter_range_violations) + " violations");
    auto sq = n0_square_probe_algebra();
    expect(sq.size() <= 6, "N_0 square probe algebra has more than 6 elements");
    auto r2 = local_eval_probe(catalog("N", {0}), sq, 3);
    expect(r2.letter_range_violations == 0, "N_0^2: " + std::to_string(r2.letter_range_violations) + " violations");
    return "F_0: " + std::to_string(r1.homs) + " homs, " + std::to_string(r1.three_local_letter) +
           " maps with a letter; N_0^2: " + std::to_string(r2.homs) + " homs, " +
           std::to_string(r2.three_local_letter) + " maps with a letter; 0 non-evaluations";
}

}  // namespace

int main() {
    bool ok = true;
    ok &= run(1, "golden verdicts", c1);
    ok &= run(2, "chain alternation", c2);
    ok &= run(3, "two-state exhaustive", c3);
    ok &= run(4, "whiskery three ways", c4);
    ok &= run(5, "order sensitivity exact", c5);
    ok &= run(6, "compatible operations", c6);
    ok &= run(7, "component group", c7);
    ok &= run(8, "character construction", c8);
    ok &= run(9, "zero column", c9);
    ok &= run(10, "witness truncations", c10);
    ok &= run(11, "certificate audit", c11);
    ok &= run(12, "local evaluation probes", c12);
    return ok ? 0 : 4;
}
