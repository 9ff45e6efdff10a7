#include "autalg/witness.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "autalg/error.hpp"
#include "autalg/structure.hpp"
#include "autalg/terms.hpp"

namespace autalg {

std::vector<std::string> construction_names() {
    return {"thm_wc", "thm_pcomm_case1", "ex_all4_L", "lem_2state2_N4", "lem_2state3_N5", "thm_nondcomm"};
}

namespace {

int code_of(const AutomaticAlgebra& m, const std::string& name) {
    auto e = m.find(name);
    if (!e) fail(ErrorKind::UnknownName, "no element named '" + name + "'");
    return m.code(*e);
}

PowerElement prod(const AutomaticAlgebra& m, const std::vector<PowerElement>& xs) {
    PowerElement r = xs.front();
    for (size_t i = 1; i < xs.size(); ++i) r = power_mul(m, r, xs[i]);
    return r;
}

PowerElement constant(const AutomaticAlgebra& m, int code, int width) { return power_element(m, code, {}, width); }

int state_letter_run(const AutomaticAlgebra& m, int q, const Word& w) { return q < 0 ? -1 : run_word(m, q, w); }

Word repeat(int a, long n) { return Word(static_cast<size_t>(n), a); }

Word concat(std::initializer_list<Word> parts) {
    Word w;
    for (const auto& p : parts) w.insert(w.end(), p.begin(), p.end());
    return w;
}

// parameters of the transposition case, derived from an order-sensitivity failure
struct PcommParams {
    int q = 0, a = 0, b = 0;
    Word c;
    long p = 1;
    int s = 0, r = 0, t = -1;  // t = -1 means 0
};

PcommParams derive_pcomm(const AutomaticAlgebra& m) {
    for (int a = 0; a < m.num_letters(); ++a)
        for (int q = 0; q < m.num_states(); ++q)
            if (!letter_whiskery_at(m, a, q))
                fail(ErrorKind::PreconditionViolated, "letter " + m.letter_names()[a] + " is not whiskery");
    auto w = order_sensitivity(m);
    if (!w) fail(ErrorKind::PreconditionViolated, "algebra passes every permutation quasi-equation");
    // adjacent swaps from the surviving word to the killed one
    Word cur = w->survives;
    const Word& target = w->killed;
    std::optional<PcommParams> found;
    for (size_t pos = 0; pos < cur.size() && !found; ++pos) {
        size_t j = pos;
        while (cur[j] != target[pos]) ++j;
        for (; j > pos && !found; --j) {
            Word next = cur;
            std::swap(next[j - 1], next[j]);
            if (run_word(m, w->state, cur) >= 0 && run_word(m, w->state, next) < 0) {
                PcommParams pp;
                pp.q = run_word(m, w->state, Word(cur.begin(), cur.begin() + static_cast<long>(j - 1)));
                pp.a = next[j - 1];
                pp.b = next[j];
                pp.c = Word(cur.begin() + static_cast<long>(j + 1), cur.end());
                found = pp;
            }
            cur = next;
        }
    }
    if (!found) fail(ErrorKind::InternalInconsistency, "no killing transposition between the witness words");
    PcommParams pp = *found;
    const int a = pp.a, b = pp.b;
    pp.r = state_letter_run(m, pp.q, concat({{b, a}, pp.c}));
    if (pp.r < 0) fail(ErrorKind::InternalInconsistency, "qbac is not a state");
    long bound = 1;
    for (long i = 2; i <= m.num_states(); ++i) bound = std::lcm(bound, i);
    for (long p = 1; p <= 2 * bound; ++p) {
        if (state_letter_run(m, pp.q, concat({{b}, repeat(b, p), {a}, pp.c})) != pp.r) continue;
        if (state_letter_run(m, pp.q, concat({{a}, repeat(b, p), {a}, pp.c})) >= 0) continue;
        int qba = state_letter_run(m, pp.q, {b, a});
        for (int s = 0; s < m.num_states(); ++s)
            if (state_letter_run(m, s, repeat(a, p + 2)) == qba &&
                state_letter_run(m, s, concat({{a}, repeat(a, p), {a}, pp.c})) == pp.r) {
                pp.p = p;
                pp.s = s;
                pp.t = state_letter_run(m, s, concat({{b}, repeat(a, p), {a}, pp.c}));
                return pp;
            }
    }
    fail(ErrorKind::PreconditionViolated, "no p and s satisfy the three displayed conditions");
}

struct NondcommParams {
    int b = 0, c = 0;
    int lambda = 1;
    int r = 0, s = 0;
    int nu = 1;
};

int perm_order(const AutomaticAlgebra& m, int a) {
    int best = 1;
    for (int q = 0; q < m.num_states(); ++q) {
        int x = m.delta(q, a), n = 1;
        while (x != q) {
            x = m.delta(x, a);
            ++n;
        }
        best = std::lcm(best, n);
    }
    return best;
}

NondcommParams derive_nondcomm(const AutomaticAlgebra& m, const std::vector<std::string>& params) {
    PermProfile prof = permutation_profile(m);
    if (!prof.permutational || !prof.commuting)
        fail(ErrorKind::PreconditionViolated, "thm_nondcomm needs commuting permutations");
    NondcommParams np;
    if (params.size() == 2) {
        auto b = m.find_letter(params[0]), c = m.find_letter(params[1]);
        if (!b || !c) fail(ErrorKind::UnknownName, "unknown letter for thm_nondcomm");
        np.b = *b;
        np.c = *c;
    } else if (params.empty()) {
        auto w = nondcomm_check(m);
        if (!w) fail(ErrorKind::PreconditionViolated, "no letters b, c meet the conditions");
        np.b = w->b;
        np.c = w->c;
    } else {
        fail(ErrorKind::BadParams, "thm_nondcomm takes no parameters or two letters");
    }
    np.lambda = std::lcm(perm_order(m, np.b), perm_order(m, np.c));
    np.nu = m.num_letters() - 1;
    Word bcinv = concat({{np.b}, repeat(np.c, np.lambda - 1)});
    for (int s = 0; s < m.num_states(); ++s) {
        int r = run_word(m, s, bcinv);
        if (r != s) {
            np.s = s;
            np.r = r;
            return np;
        }
    }
    fail(ErrorKind::PreconditionViolated, "b c^-1 acts as the identity");
}

// combinations of size k from pool, in lexicographic order
void combinations(const std::vector<int>& pool, int k, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> pick;
    std::function<void(size_t)> rec = [&](size_t from) {
        if (static_cast<int>(pick.size()) == k) {
            f(pick);
            return;
        }
        for (size_t i = from; i < pool.size(); ++i) {
            pick.push_back(pool[i]);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x + 1);
    return "{" + s + "}";
}

}  // namespace

ConstructionSpec build_truncation(const std::string& name, const std::vector<std::string>& params, int n,
                                  const std::optional<AutomaticAlgebra>& base, size_t max_elements) {
    if (n < 3) fail(ErrorKind::BadParams, "truncation size must be at least 3");
    ConstructionSpec sp;
    sp.name = name;
    sp.truncation = n;
    auto add_a0 = [&](int basev, std::vector<std::pair<int, int>> ov) {
        sp.a0.push_back(power_element(sp.m, basev, ov, sp.width));
        sp.a0_base.push_back(basev);
    };
    auto add_b = [&](int basev, std::vector<std::pair<int, int>> ov) {
        auto x = power_element(sp.m, basev, ov, sp.width);
        if (std::find(sp.b.begin(), sp.b.end(), x) != sp.b.end()) return;
        sp.b.push_back(std::move(x));
        sp.b_base.push_back(basev);
    };
    auto index_labels = [&] {
        for (int i = 0; i < n; ++i) sp.coord_labels.push_back(std::to_string(i + 1));
    };

    if (name == "thm_wc") {
        if (params.size() != 1) fail(ErrorKind::BadParams, "thm_wc takes m");
        long mm = 0;
        try {
            mm = std::stol(params[0]);
        } catch (...) {
            fail(ErrorKind::BadParams, "thm_wc needs an integer m");
        }
        sp.m = catalog("F", {mm});
        sp.width = n;
        index_labels();
        sp.params = {{"m", params[0]}};
        sp.mu = "mu(n) = n";
        int z = sp.m.zero_code(), q = code_of(sp.m, "q"), r = code_of(sp.m, "r"), a = code_of(sp.m, "a");
        for (int i = 1; i < n; ++i) add_a0(z, {{0, r}, {i, r}});
        for (int i = 1; i < n; ++i)
            for (int j = i + 1; j < n; ++j) add_b(z, {{0, q}, {i, q}, {j, q}});
        for (int i = 1; i < n; ++i) add_b(a, {{i, z}});
        sp.g = power_element(sp.m, z, {{0, r}}, n);
    } else if (name == "ex_all4_L") {
        if (!params.empty()) fail(ErrorKind::BadParams, "ex_all4_L takes no parameters");
        AutomaticAlgebra l = catalog("L");
        sp.m = l.restrict({0, 1, 2}, {0, 2});
        sp.width = n;
        index_labels();
        sp.mu = "mu(n) = n";
        int q = code_of(sp.m, "q"), r = code_of(sp.m, "r"), s = code_of(sp.m, "s"), a = code_of(sp.m, "a"),
            c = code_of(sp.m, "c");
        for (int i = 0; i < n; ++i) add_a0(q, {{i, s}});
        for (int k = 0; k < n; ++k) add_b(c, {{k, a}});
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                if (i != k) add_b(q, {{i, s}, {k, r}});
        sp.g = constant(sp.m, q, n);
    } else if (name == "lem_2state2_N4") {
        if (!params.empty()) fail(ErrorKind::BadParams, "lem_2state2_N4 takes no parameters");
        sp.m = catalog("N", {4});
        sp.width = n;
        index_labels();
        sp.mu = "mu(n) = n";
        int q = code_of(sp.m, "q"), r = code_of(sp.m, "r"), a = code_of(sp.m, "a"), b = code_of(sp.m, "b");
        for (int i = 0; i < n; ++i) add_a0(q, {{i, r}});
        for (int i = 0; i < n; ++i) add_b(b, {{i, a}});
        sp.g = constant(sp.m, q, n);
    } else if (name == "lem_2state3_N5") {
        if (!params.empty()) fail(ErrorKind::BadParams, "lem_2state3_N5 takes no parameters");
        sp.m = catalog("N", {5});
        sp.width = n;
        index_labels();
        sp.mu = "mu(n) = 1";
        int q = code_of(sp.m, "q"), r = code_of(sp.m, "r"), a = code_of(sp.m, "a"), b = code_of(sp.m, "b"),
            c = code_of(sp.m, "c");
        for (int i = 0; i < n; ++i) add_a0(q, {{i, r}});
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                if (i != k) add_b(b, {{i, c}, {k, a}});
        sp.g = constant(sp.m, q, n);
    } else if (name == "thm_nondcomm") {
        sp.m = base ? *base : catalog("C", {3});
        NondcommParams np = derive_nondcomm(sp.m, params);
        const int nq = sp.m.num_states(), off = 2 * nq;
        if (n < np.nu + 2) fail(ErrorKind::BadParams, "truncation too small for nu");
        sp.width = off + n;
        for (int q = 0; q < nq; ++q) {
            sp.coord_labels.push_back("(" + sp.m.state_names()[q] + "," + sp.m.letter_names()[np.b] + ")");
            sp.coord_labels.push_back("(" + sp.m.state_names()[q] + "," + sp.m.letter_names()[np.c] + ")");
        }
        index_labels();
        const std::string bn = sp.m.letter_names()[np.b], cn = sp.m.letter_names()[np.c];
        sp.params = {{"b", bn},
                     {"c", cn},
                     {"r", sp.m.state_names()[np.r]},
                     {"s", sp.m.state_names()[np.s]},
                     {"lambda", std::to_string(np.lambda)},
                     {"nu", std::to_string(np.nu)}};
        sp.mu = "none (nu = |Sigma| - 1)";
        sp.nu = np.nu;
        int bc = sp.m.letter_code(np.b), cc = sp.m.letter_code(np.c);
        int s = sp.m.state_code(np.s), r = sp.m.state_code(np.r);
        std::vector<std::pair<int, int>> block_states, block_letters;
        for (int q = 0; q < nq; ++q) {
            block_states.push_back({2 * q, sp.m.state_code(q)});
            block_states.push_back({2 * q + 1, sp.m.state_code(q)});
            block_letters.push_back({2 * q, bc});
            block_letters.push_back({2 * q + 1, cc});
        }
        for (int i = 0; i < n; ++i) {
            auto ov = block_states;
            ov.push_back({off + i, r});
            add_a0(s, ov);
        }
        std::vector<int> pool(static_cast<size_t>(n));
        std::iota(pool.begin(), pool.end(), 0);
        // w_I for |I| = nu + 1, the size the kernel argument runs on
        combinations(pool, np.nu + 1, [&](const std::vector<int>& in) {
            auto ov = block_letters;
            for (int j : in) ov.push_back({off + j, bc});
            add_b(cc, ov);
        });
        sp.g = power_element(sp.m, s, block_states, sp.width);
    } else if (name == "thm_pcomm_case1") {
        sp.m = base ? *base : catalog("N", {1});
        if (!params.empty()) fail(ErrorKind::BadParams, "thm_pcomm_case1 takes no parameters");
        if (n < 4) fail(ErrorKind::BadParams, "thm_pcomm_case1 needs N >= 4");
        PcommParams pp = derive_pcomm(sp.m);
        sp.width = n;
        index_labels();
        const auto& sn = sp.m.state_names();
        const auto& ln = sp.m.letter_names();
        sp.params = {{"q", sn[pp.q]},
                     {"a", ln[pp.a]},
                     {"b", ln[pp.b]},
                     {"c", word_string(sp.m, pp.c)},
                     {"p", std::to_string(pp.p)},
                     {"s", sn[pp.s]},
                     {"r", sn[pp.r]},
                     {"t", pp.t < 0 ? "0" : sn[pp.t]}};
        sp.mu = "mu(n) = n^2";
        int z = sp.m.zero_code(), q = pp.q, s = pp.s, r = pp.r;
        int a = sp.m.letter_code(pp.a), b = sp.m.letter_code(pp.b);
        for (int i = 0; i < n; ++i) add_a0(r, {{i, z}});
        for (int i = 0; i < n; ++i) {
            add_b(b, {{i, a}});
            add_b(b, {{i, z}});
        }
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                if (k == i) continue;
                add_b(q, {{i, z}, {k, s}});
                for (int l = 0; l < n; ++l) {
                    if (l == i || l == k) continue;
                    add_b(q, {{i, z}, {k, s}, {l, z}});
                    if (k < l) add_b(q, {{i, z}, {k, z}, {l, z}});
                }
            }
        add_b(a, {});
        add_b(b, {});
        for (int c : pp.c) add_b(sp.m.letter_code(c), {});
        sp.g = constant(sp.m, r, n);
    } else {
        fail(ErrorKind::UnknownName, "unknown construction '" + name + "'");
    }
    std::vector<PowerElement> gens = sp.a0;
    gens.insert(gens.end(), sp.b.begin(), sp.b.end());
    sp.elements = generate_subuniverse(sp.m, sp.width, gens, max_elements);
    return sp;
}

namespace {

class IdentityRunner {
public:
    IdentityRunner(const ConstructionSpec& sp, ConstructionReport& rep)
        : sp_(sp), rep_(rep), in_a_(sp.elements.begin(), sp.elements.end()) {}

    void begin(const std::string& identity, const std::string& ranges) { rep_.identities.push_back({identity, ranges, 0, true}); }

    // lhs = product of factors; every factor must lie in A
    void instance(const std::string& where, const PowerElement& lhs, const std::vector<PowerElement>& factors) {
        auto& cur = rep_.identities.back();
        for (const auto& f : factors)
            if (!in_a_.count(f))
                fail(ErrorKind::ProofIdentityFailed,
                     sp_.name + ": factor " + power_string(sp_.m, f) + " of '" + cur.identity + "' at " + where + " is not in A");
        PowerElement rhs = prod(sp_.m, factors);
        if (!(rhs == lhs)) {
            cur.pass = false;
            fail(ErrorKind::ProofIdentityFailed, sp_.name + ": '" + cur.identity + "' fails at " + where + ": " +
                                                     power_string(sp_.m, lhs) + " != " + power_string(sp_.m, rhs));
        }
        ++cur.instances;
    }

    bool in_a(const PowerElement& x) const { return in_a_.count(x) > 0; }

private:
    const ConstructionSpec& sp_;
    ConstructionReport& rep_;
    std::set<PowerElement> in_a_;
};

std::string at(std::initializer_list<std::pair<const char*, int>> idx) {
    std::string s;
    for (const auto& [n, v] : idx) s += (s.empty() ? "" : ", ") + std::string(n) + "=" + std::to_string(v + 1);
    return s;
}

bool all_in(const PowerElement& x, const std::function<bool(int)>& pred) {
    return std::all_of(x.values.begin(), x.values.end(), pred);
}

}  // namespace

ConstructionReport verify_construction(const ConstructionSpec& sp) {
    ConstructionReport rep;
    IdentityRunner run(sp, rep);
    const AutomaticAlgebra& m = sp.m;
    const int n = sp.truncation, w = sp.width;
    auto pe = [&](int basev, std::vector<std::pair<int, int>> ov) { return power_element(m, basev, ov, w); };
    auto is_state = [&](int c) { return m.code_is_state(c); };
    auto is_letter = [&](int c) { return m.code_is_letter(c); };
    const int z = m.zero_code();
    std::function<bool(const PowerElement&)> stated;  // universe written in the proof

    if (sp.name == "thm_wc") {
        int q = code_of(m, "q"), r = code_of(m, "r"), a = code_of(m, "a");
        run.begin("0 r1 rj = 0 q1 qj qk . a 0k", "j != k in 2..N");
        for (int j = 1; j < n; ++j)
            for (int k = 1; k < n; ++k)
                if (j != k) {
                    int lo = std::min(j, k), hi = std::max(j, k);
                    run.instance(at({{"j", j}, {"k", k}}), pe(z, {{0, r}, {j, r}}),
                                 {pe(z, {{0, q}, {lo, q}, {hi, q}}), pe(a, {{k, z}})});
                }
        run.begin("0 q1 qj qk . a 0l = 0 r1 rj rk", "j, k, l distinct in 2..N");
        for (int j = 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = 1; l < n; ++l)
                    if (l != j && l != k)
                        run.instance(at({{"j", j}, {"k", k}, {"l", l}}), pe(z, {{0, r}, {j, r}, {k, r}}),
                                     {pe(z, {{0, q}, {j, q}, {k, q}}), pe(a, {{l, z}})});
    } else if (sp.name == "ex_all4_L") {
        int q = code_of(m, "q"), r = code_of(m, "r"), s = code_of(m, "s"), a = code_of(m, "a"), c = code_of(m, "c");
        run.begin("q si = q si rk . c ak", "i != k in 1..N");
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                if (i != k) run.instance(at({{"i", i}, {"k", k}}), pe(q, {{i, s}}), {pe(q, {{i, s}, {k, r}}), pe(c, {{k, a}})});
        run.begin("q si rk . c al = q si sk", "i, k, l distinct in 1..N");
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    if (i != k && i != l && k != l)
                        run.instance(at({{"i", i}, {"k", k}, {"l", l}}), pe(q, {{i, s}, {k, s}}),
                                     {pe(q, {{i, s}, {k, r}}), pe(c, {{l, a}})});
        stated = [&](const PowerElement& x) {
            bool states = all_in(x, is_state);
            bool qr = all_in(x, [&](int v) { return v == q || v == r; });
            return (states && !qr) || all_in(x, is_letter) || all_in(x, [&](int v) { return v == z; });
        };
    } else if (sp.name == "lem_2state2_N4") {
        int q = code_of(m, "q"), r = code_of(m, "r"), a = code_of(m, "a"), b = code_of(m, "b");
        run.begin("q rj = q rk . b ak . b aj", "j != k in 1..N");
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (j != k)
                    run.instance(at({{"j", j}, {"k", k}}), pe(q, {{j, r}}), {pe(q, {{k, r}}), pe(b, {{k, a}}), pe(b, {{j, a}})});
        run.begin("q rk . b al . b aj = q rj rk", "j, k, l distinct in 1..N");
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    if (j != k && j != l && k != l)
                        run.instance(at({{"j", j}, {"k", k}, {"l", l}}), pe(q, {{j, r}, {k, r}}),
                                     {pe(q, {{k, r}}), pe(b, {{l, a}}), pe(b, {{j, a}})});
        stated = [&](const PowerElement& x) {
            bool states = all_in(x, is_state) && !all_in(x, [&](int v) { return v == q; });
            bool letters = all_in(x, is_letter) && !all_in(x, [&](int v) { return v == b; });
            return states || letters || all_in(x, [&](int v) { return v == z; });
        };
    } else if (sp.name == "lem_2state3_N5") {
        int q = code_of(m, "q"), r = code_of(m, "r"), a = code_of(m, "a"), b = code_of(m, "b"), c = code_of(m, "c");
        run.begin("q rk = q rj . b ci ak", "i, j, k distinct in 1..N");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    if (i != j && i != k && j != k)
                        run.instance(at({{"i", i}, {"j", j}, {"k", k}}), pe(q, {{k, r}}),
                                     {pe(q, {{j, r}}), pe(b, {{i, c}, {k, a}})});
        run.begin("q ri . b ci ak = q ri rk", "i != k in 1..N");
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                if (i != k)
                    run.instance(at({{"i", i}, {"k", k}}), pe(q, {{i, r}, {k, r}}), {pe(q, {{i, r}}), pe(b, {{i, c}, {k, a}})});
        stated = [&](const PowerElement& x) {
            bool states = all_in(x, is_state) && !all_in(x, [&](int v) { return v == q; });
            bool letters = all_in(x, is_letter) && !all_in(x, [&](int v) { return v == b || v == c; });
            return states || letters || all_in(x, [&](int v) { return v == z; });
        };
    } else if (sp.name == "thm_nondcomm") {
        NondcommParams np;
        std::vector<std::string> bc;
        for (const auto& [k, v] : sp.params)
            if (k == "b" || k == "c") bc.push_back(v);
        np = derive_nondcomm(m, bc);
        const int nq = m.num_states(), off = 2 * nq;
        int bcode = m.letter_code(np.b), ccode = m.letter_code(np.c);
        auto v_of = [&](int i) {
            std::vector<std::pair<int, int>> ov;
            for (int q = 0; q < nq; ++q) {
                ov.push_back({2 * q, m.state_code(q)});
                ov.push_back({2 * q + 1, m.state_code(q)});
            }
            ov.push_back({off + i, m.state_code(np.r)});
            return pe(m.state_code(np.s), ov);
        };
        auto w_of = [&](const std::vector<int>& in) {
            std::vector<std::pair<int, int>> ov;
            for (int q = 0; q < nq; ++q) {
                ov.push_back({2 * q, bcode});
                ov.push_back({2 * q + 1, ccode});
            }
            for (int j : in) ov.push_back({off + j, bcode});
            return pe(ccode, ov);
        };
        run.begin("v_i = v_j . w_{K+i} . w_{K+j}^(lambda-1)", "i != j in 1..N, K of size nu avoiding i, j");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                std::vector<int> pool;
                for (int x = 0; x < n; ++x)
                    if (x != i && x != j) pool.push_back(x);
                combinations(pool, np.nu, [&](const std::vector<int>& k) {
                    auto ki = k, kj = k;
                    ki.push_back(i);
                    kj.push_back(j);
                    std::sort(ki.begin(), ki.end());
                    std::sort(kj.begin(), kj.end());
                    std::vector<PowerElement> f{v_of(j), w_of(ki)};
                    for (int t = 0; t < np.lambda - 1; ++t) f.push_back(w_of(kj));
                    run.instance(at({{"i", i}, {"j", j}}) + " K=" + join_ints(k), v_of(i), f);
                });
            }
    } else if (sp.name == "thm_pcomm_case1") {
        PcommParams pp = derive_pcomm(m);
        int a = m.letter_code(pp.a), b = m.letter_code(pp.b), q = pp.q, s = pp.s, r = pp.r;
        int t = pp.t < 0 ? z : pp.t;
        std::vector<PowerElement> tail;  // a . c1 ... cm as constants
        tail.push_back(constant(m, a, w));
        for (int c : pp.c) tail.push_back(constant(m, m.letter_code(c), w));
        auto pw = [&](const PowerElement& x, long p) { return std::vector<PowerElement>(static_cast<size_t>(p), x); };
        auto chain = [&](std::vector<PowerElement> head, const PowerElement& rep_el) {
            auto more = pw(rep_el, pp.p);
            head.insert(head.end(), more.begin(), more.end());
            head.insert(head.end(), tail.begin(), tail.end());
            return head;
        };
        const char* ranges = "i, j, k, l distinct in 1..N";
        std::vector<std::string> ids{"r 0i = q 0i sk . b ak . (b ak)^p . a . c",
                                     "q 0i sk . b al . (b ak)^p . a . c = r 0i tk 0l",
                                     "r 0i tk 0l = q 0i sk 0l . b 0l . (b ak)^p . a . c",
                                     "q 0i sk 0l . b 0k . (b ak)^p . a . c = r 0i 0k 0l",
                                     "r 0i 0k 0l = q 0i 0k 0l . b 0i . b^p . a . c",
                                     "q 0i 0k 0l . b 0j . b^p . a . c = r 0i 0j 0k 0l"};
        for (size_t id = 0; id < ids.size(); ++id) {
            run.begin(ids[id], ranges);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        for (int l = 0; l < n; ++l) {
                            std::set<int> d{i, j, k, l};
                            if (d.size() != 4) continue;
                            std::string where = at({{"i", i}, {"j", j}, {"k", k}, {"l", l}});
                            PowerElement bak = pe(b, {{k, a}});
                            switch (id) {
                                case 0: run.instance(where, pe(r, {{i, z}}), chain({pe(q, {{i, z}, {k, s}}), bak}, bak)); break;
                                case 1:
                                    run.instance(where, pe(r, {{i, z}, {k, t}, {l, z}}),
                                                 chain({pe(q, {{i, z}, {k, s}}), pe(b, {{l, a}})}, bak));
                                    break;
                                case 2:
                                    run.instance(where, pe(r, {{i, z}, {k, t}, {l, z}}),
                                                 chain({pe(q, {{i, z}, {k, s}, {l, z}}), pe(b, {{l, z}})}, bak));
                                    break;
                                case 3:
                                    run.instance(where, pe(r, {{i, z}, {k, z}, {l, z}}),
                                                 chain({pe(q, {{i, z}, {k, s}, {l, z}}), pe(b, {{k, z}})}, bak));
                                    break;
                                case 4:
                                    run.instance(where, pe(r, {{i, z}, {k, z}, {l, z}}),
                                                 chain({pe(q, {{i, z}, {k, z}, {l, z}}), pe(b, {{i, z}})}, constant(m, b, w)));
                                    break;
                                case 5:
                                    run.instance(where, pe(r, {{i, z}, {j, z}, {k, z}, {l, z}}),
                                                 chain({pe(q, {{i, z}, {k, z}, {l, z}}), pe(b, {{j, z}})}, constant(m, b, w)));
                                    break;
                            }
                        }
        }
        stated = [&](const PowerElement& x) {
            return std::any_of(x.values.begin(), x.values.end(), [&](int v) { return v == z; }) || all_in(x, is_letter);
        };
    } else {
        fail(ErrorKind::UnknownName, "unknown construction '" + sp.name + "'");
    }

    rep.g_in_a = run.in_a(sp.g);
    if (stated)
        for (const auto& x : sp.elements)
            if (!stated(x)) {
                rep.inside_stated_universe = false;
                fail(ErrorKind::ProofIdentityFailed,
                     sp.name + ": generated element " + power_string(m, x) + " lies outside the stated universe of A");
            }

    std::ostringstream out;
    out << "construction " << sp.name << "\n";
    out << "scope: finite truncation over the index set {1.." << n << "}";
    if (sp.width != n) out << " plus " << (sp.width - n) << " block coordinates";
    out << "; checks the displayed identities, membership of every factor in A = Sg(A0 u B), and g not in A."
           " The bounded-index congruence condition on the infinite algebra is not checked.\n";
    out << "provenance: " << sp.mu << "\n";
    for (const auto& [k, v] : sp.params) out << "param " << k << " = " << v << "\n";
    out << "|A0| = " << sp.a0.size() << ", |B| = " << sp.b.size() << ", |A| = " << sp.elements.size() << "\n";
    out << "g = " << power_string(m, sp.g) << "\n";
    out << "--- machine ---\n";
    for (const auto& c : rep.identities)
        out << "identity \"" << c.identity << "\" ranges \"" << c.ranges << "\" instances " << c.instances << " "
            << (c.pass ? "pass" : "fail") << "\n";
    out << "g_in_A " << (rep.g_in_a ? "yes" : "no") << " " << (rep.g_in_a ? "fail" : "pass") << "\n";
    if (stated) out << "A_within_stated_universe " << (rep.inside_stated_universe ? "pass" : "fail") << "\n";
    rep.text = out.str();
    if (rep.g_in_a) fail(ErrorKind::ProofIdentityFailed, sp.name + ": g = " + power_string(m, sp.g) + " lies in A");
    return rep;
}

KernelReport kernel_block_analysis(const ConstructionSpec& sp, int nu, size_t max_elements) {
    KernelReport rep;
    rep.nu = nu;
    Groupoid a = groupoid_from_elements(sp.m, sp.elements);
    Groupoid t = as_groupoid(sp.m);
    if (static_cast<size_t>(a.n) > max_elements)
        fail(ErrorKind::CapExceeded, "kernel analysis: |A| = " + std::to_string(a.n) + " exceeds the cap " +
                                         std::to_string(max_elements));
    std::map<PowerElement, int> pos;
    for (size_t i = 0; i < sp.elements.size(); ++i) pos[sp.elements[i]] = static_cast<int>(i);
    std::vector<int> a0pos;
    for (const auto& x : sp.a0) a0pos.push_back(pos.at(x));
    // the kernel on A0 depends only on x restricted to A0: walk those
    // restrictions and keep the ones that extend to a homomorphism
    const int k = static_cast<int>(a0pos.size());
    std::vector<int> vals(static_cast<size_t>(k), 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == k) {
            FiniteMap preset(static_cast<size_t>(a.n), -1);
            for (int j = 0; j < k; ++j) preset[a0pos[j]] = vals[j];
            bool extends = hom_extends(a, t, preset);
            if (!extends) return;
            std::map<int, int> blocks;
            for (int v : vals) ++blocks[v];
            std::vector<int> sizes;
            for (const auto& [v, c] : blocks) sizes.push_back(c);
            std::sort(sizes.rbegin(), sizes.rend());
            int big = static_cast<int>(std::count_if(sizes.begin(), sizes.end(), [&](int s) { return s > nu; }));
            if (big >= 2) {
                ++rep.violations;
                if (rep.first_violations.size() < 8) rep.first_violations.push_back(rep.hom_count);
            }
            ++rep.block_histogram[sizes];
            ++rep.hom_count;
            return;
        }
        for (int v = 0; v < t.n; ++v) {
            vals[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    std::ostringstream out;
    out << "kernel analysis " << sp.name << " N=" << sp.truncation << " nu=" << nu << "\n";
    out << "scope: every restriction x|A0 of a homomorphism x: A -> M at this truncation\n";
    out << "restrictions " << rep.hom_count << "\n";
    for (const auto& [sz, c] : rep.block_histogram) {
        out << "blocks [";
        for (size_t i = 0; i < sz.size(); ++i) out << (i ? " " : "") << sz[i];
        out << "] x" << c << "\n";
    }
    out << "violations " << rep.violations << "\n";
    rep.text = out.str();
    return rep;
}

std::vector<PowerElement> n0_square_probe_algebra() {
    AutomaticAlgebra n0 = catalog("N", {0});
    int q = code_of(n0, "q"), r = code_of(n0, "r"), a = code_of(n0, "a");
    std::vector<PowerElement> gens{PowerElement{{q, q}}, PowerElement{{a, a}}, PowerElement{{q, r}}};
    return generate_subuniverse(n0, 2, gens);
}

LocalEvalReport local_eval_probe(const AutomaticAlgebra& m, const std::vector<PowerElement>& elems, int k) {
    LocalEvalReport rep;
    if (k < 1) fail(ErrorKind::BadParams, "k must be positive");
    if (elems.size() > 64) fail(ErrorKind::CapExceeded, "probe algebra has more than 64 elements");
    Groupoid a = groupoid_from_elements(m, elems);
    auto homs = enumerate_homs(a, m);
    const int h = static_cast<int>(homs.size()), sz = m.size();
    rep.homs = h;
    if (h > kLocalProbeHoms) fail(ErrorKind::CapExceeded, "more than " + std::to_string(kLocalProbeHoms) + " homomorphisms");
    long total = 1;
    for (int i = 0; i < h && total >= 0; ++i) total = total > (1L << 56) / sz ? -1 : total * sz;
    rep.maps = total;
    long nodes = 0;
    // mask[x][v]: points of A where hom x takes value v
    std::vector<std::vector<std::uint64_t>> mask(static_cast<size_t>(h), std::vector<std::uint64_t>(static_cast<size_t>(sz), 0));
    for (int x = 0; x < h; ++x)
        for (int p = 0; p < a.n; ++p) mask[x][homs[x][p]] |= std::uint64_t{1} << p;

    auto run = [&](int kk, const std::function<void(const std::vector<int>&)>& visit) {
        std::vector<int> f(static_cast<size_t>(h), 0);
        std::function<bool(int)> ok = [&](int t) {
            // every subset of {0..t} containing t with at most kk members
            std::vector<int> pick{t};
            std::function<bool(int, std::uint64_t)> rec = [&](int from, std::uint64_t m0) -> bool {
                if (m0 == 0) return false;
                if (static_cast<int>(pick.size()) == kk) return true;
                for (int y = from; y < t; ++y) {
                    pick.push_back(y);
                    bool good = rec(y + 1, m0 & mask[y][f[y]]);
                    pick.pop_back();
                    if (!good) return false;
                }
                return true;
            };
            return rec(0, mask[t][f[t]]);
        };
        std::function<void(int)> dfs = [&](int t) {
            if (t == h) {
                visit(f);
                return;
            }
            for (int v = 0; v < sz; ++v) {
                if (++nodes > kLocalProbeNodes) fail(ErrorKind::CapExceeded, "local probe search exceeds the node cap");
                f[t] = v;
                if (ok(t)) dfs(t + 1);
            }
        };
        dfs(0);
    };
    auto is_eval = [&](const std::vector<int>& f) {
        std::uint64_t m0 = a.n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << a.n) - 1;
        for (int x = 0; x < h; ++x) m0 &= mask[x][f[x]];
        return m0 != 0;
    };
    long local = 0;
    run(k, [&](const std::vector<int>& f) {
        ++local;
        if (is_eval(f))
            ++rep.evaluations;
        else
            ++rep.local_only;
    });
    rep.neither = rep.maps < 0 ? -1 : rep.maps - local;
    run(3, [&](const std::vector<int>& f) {
        bool letter = std::any_of(f.begin(), f.end(), [&](int v) { return m.code_is_letter(v); });
        if (!letter) return;
        ++rep.three_local_letter;
        if (!is_eval(f)) ++rep.letter_range_violations;
    });
    std::ostringstream out;
    out << "local evaluation probe: |A| = " << a.n << ", |hom(A,M)| = " << h << ", maps = ";
    if (rep.maps >= 0)
        out << rep.maps;
    else
        out << sz << "^" << h;
    out << ", k = " << k << "\n";
    out << "scope: every map hom(A,M) -> M at this size; maps failing a small subset are counted, not visited\n";
    out << "evaluations " << rep.evaluations << "\n";
    out << k << "-local non-evaluations " << rep.local_only << "\n";
    if (rep.neither >= 0) out << "neither " << rep.neither << "\n";
    out << "3-local with a letter in range " << rep.three_local_letter << ", of which non-evaluations "
        << rep.letter_range_violations << "\n";
    rep.text = out.str();
    return rep;
}

}  // namespace autalg
