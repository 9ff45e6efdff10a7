#include "autalg/classifier.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "autalg/error.hpp"
#include "autalg/powers.hpp"
#include "autalg/structure.hpp"
#include "autalg/terms.hpp"

namespace autalg {

const char* step_kind_name(StepKind k) {
    switch (k) {
        case StepKind::DropUndefinedLetter: return "drop_undefined_letter";
        case StepKind::DropRepeatedLetter: return "drop_repeated_letter";
        case StepKind::DropIsolatedState: return "drop_isolated_state";
        case StepKind::DropRedundantState: return "drop_redundant_state";
    }
    return "?";
}

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Dualizable: return "dualizable";
        case Outcome::NonDualizable: return "non_dualizable";
        case Outcome::Unknown: return "unknown";
    }
    return "?";
}

namespace {

std::vector<int> all_but(int n, int skip) {
    std::vector<int> v;
    for (int i = 0; i < n; ++i)
        if (i != skip) v.push_back(i);
    return v;
}

bool check_step_embedding(const AutomaticAlgebra& from, const AutomaticAlgebra& to, const ReductionStep& step) {
    std::map<std::string, std::pair<int, int>> phi;
    for (const auto& [x, img] : step.embedding) {
        auto a = to.find(img.first), b = to.find(img.second);
        if (!a || !b) return false;
        phi[x] = {to.code(*a), to.code(*b)};
    }
    std::vector<std::pair<int, int>> img(static_cast<size_t>(from.size()));
    std::set<std::pair<int, int>> used;
    for (int c = 0; c < from.size(); ++c) {
        auto it = phi.find(from.code_name(c));
        if (it == phi.end()) return false;
        img[c] = it->second;
        if (!used.insert(it->second).second) return false;
    }
    for (int x = 0; x < from.size(); ++x)
        for (int y = 0; y < from.size(); ++y) {
            auto want = img[from.mul(x, y)];
            std::pair<int, int> got{to.mul(img[x].first, img[y].first), to.mul(img[x].second, img[y].second)};
            if (want != got) return false;
        }
    return true;
}

ReductionStep make_step(const AutomaticAlgebra& from, StepKind kind, int removed_code, int img1, int img2,
                        const AutomaticAlgebra& to, const std::string& kept) {
    ReductionStep s;
    s.kind = kind;
    s.removed = from.code_name(removed_code);
    s.kept = kept;
    for (int c = 0; c < from.size(); ++c) {
        if (c == removed_code) {
            s.embedding.push_back({from.code_name(c), {from.code_name(img1), from.code_name(img2)}});
        } else {
            s.embedding.push_back({from.code_name(c), {from.code_name(c), "0"}});
        }
    }
    if (!check_step_embedding(from, to, s))
        fail(ErrorKind::InternalInconsistency, std::string(step_kind_name(kind)) + " embedding for " + s.removed +
                                                   " is not an injective hom");
    return s;
}

// one reduction, or nothing if the algebra is already reduced
std::optional<std::pair<AutomaticAlgebra, ReductionStep>> reduce_once(const AutomaticAlgebra& m) {
    const int nq = m.num_states(), ns = m.num_letters();
    auto sets = letter_sets(m);
    if (nq > 0)
        for (int a = 0; a < ns; ++a)
            if (sets[a].dom.empty()) {
                AutomaticAlgebra n = m.restrict(all_but(nq, -1), all_but(ns, a));
                return std::make_pair(n, make_step(m, StepKind::DropUndefinedLetter, m.letter_code(a), m.zero_code(),
                                                   m.state_code(0), n, m.state_names()[0]));
            }
    for (int a = 0; a < ns; ++a)
        for (int b = a + 1; b < ns; ++b) {
            bool same = true;
            for (int q = 0; q < nq && same; ++q) same = m.delta(q, a) == m.delta(q, b);
            if (!same) continue;
            AutomaticAlgebra n = m.restrict(all_but(nq, -1), all_but(ns, b));
            return std::make_pair(n, make_step(m, StepKind::DropRepeatedLetter, m.letter_code(b), m.letter_code(a),
                                               m.letter_code(a), n, m.letter_names()[a]));
        }
    std::vector<bool> in_ran(static_cast<size_t>(nq), false), in_dom(static_cast<size_t>(nq), false);
    for (const auto& s : sets) {
        for (int q : s.ran) in_ran[q] = true;
        for (int q : s.dom) in_dom[q] = true;
    }
    if (ns > 0)
        for (int q = 0; q < nq; ++q)
            if (!in_ran[q] && !in_dom[q]) {
                AutomaticAlgebra n = m.restrict(all_but(nq, q), all_but(ns, -1));
                return std::make_pair(n, make_step(m, StepKind::DropIsolatedState, m.state_code(q), m.zero_code(),
                                                   m.letter_code(0), n, m.letter_names()[0]));
            }
    for (int q = 0; q < nq; ++q) {
        if (in_ran[q]) continue;
        for (int r = 0; r < nq; ++r) {
            if (r == q) continue;
            bool same = true;
            for (int a = 0; a < ns && same; ++a) same = m.delta(q, a) == m.delta(r, a);
            if (!same) continue;
            AutomaticAlgebra n = m.restrict(all_but(nq, q), all_but(ns, -1));
            return std::make_pair(n, make_step(m, StepKind::DropRedundantState, m.state_code(q), m.state_code(r),
                                               m.state_code(r), n, m.state_names()[r]));
        }
    }
    return std::nullopt;
}

}  // namespace

std::pair<AutomaticAlgebra, std::vector<ReductionStep>> normalize_algebra(const AutomaticAlgebra& m) {
    AutomaticAlgebra cur = m;
    std::vector<ReductionStep> steps;
    while (auto r = reduce_once(cur)) {
        cur = r->first;
        steps.push_back(r->second);
    }
    return {cur, steps};
}

namespace {

Json names_of(const AutomaticAlgebra& m, const Word& w) {
    Json a = Json::array();
    for (int x : w) a.push_back(m.letter_names()[x]);
    return a;
}

Json map_json(const AutomaticAlgebra& src, const AutomaticAlgebra& dst, const FiniteMap& h) {
    Json o = Json::object();
    for (int c = 0; c < src.size(); ++c) o[src.code_name(c)] = dst.code_name(h[c]);
    return o;
}

Json step_json(const ReductionStep& s) {
    Json e = Json::object();
    for (const auto& [x, img] : s.embedding) e[x] = Json::array({img.first, img.second});
    return Json{{"kind", step_kind_name(s.kind)}, {"removed", s.removed}, {"kept", s.kept}, {"embedding", e}};
}

Json group_json(const AutomaticAlgebra& m, const AbelianGroupData& g) {
    Json states = Json::array(), table = Json::array(), letters = Json::object(), dropped = Json::array(),
         h = Json::array(), dec = Json::array();
    for (int q : g.states) states.push_back(m.state_names()[q]);
    for (int i = 0; i < g.group.n; ++i) {
        Json row = Json::array();
        for (int j = 0; j < g.group.n; ++j) row.push_back(g.group.labels[g.group.mul(i, j)]);
        table.push_back(row);
    }
    for (size_t t = 0; t < g.letters.size(); ++t)
        letters[m.letter_names()[g.letters[t]]] = g.group.labels[g.letter_images[t]];
    for (int a : g.dropped_letters) dropped.push_back(m.letter_names()[a]);
    for (int x : g.subgroup_h) h.push_back(g.group.labels[x]);
    for (const auto& f : g.decomposition) dec.push_back({{"generator", g.group.labels[f.generator]}, {"order", f.order}});
    return Json{{"states", states},   {"identity", g.group.labels[g.group.identity]},
                {"table", table},     {"letters", letters},
                {"dropped", dropped}, {"H", h},
                {"exponent", g.exponent}, {"decomposition", dec}};
}

}  // namespace

Verdict classify(const AutomaticAlgebra& m) {
    Verdict v;
    auto note = [&](const std::string& rule, bool fired, const std::string& detail) {
        v.trace.push_back({rule, fired, detail});
    };
    auto zero_semigroup = [](const AutomaticAlgebra& a) { return a.num_states() == 0 || a.num_letters() == 0; };
    if (zero_semigroup(m)) {
        note("zero_semigroup", true, m.num_states() == 0 ? "no states" : "no letters");
        v.outcome = Outcome::Dualizable;
        v.rule = "zero_semigroup";
        v.certificate = {{"kind", "zero_semigroup"}};
        return v;
    }
    note("zero_semigroup", false, "states and letters present");

    auto [n, steps] = normalize_algebra(m);
    {
        std::string d;
        for (const auto& s : steps) d += (d.empty() ? "" : "; ") + std::string(step_kind_name(s.kind)) + " " + s.removed;
        note("normalize", !steps.empty(), steps.empty() ? "already reduced" : d);
    }
    auto finish = [&](Outcome o, const std::string& rule, Json inner) {
        v.outcome = o;
        v.rule = rule;
        if (steps.empty()) {
            v.certificate = std::move(inner);
        } else {
            Json st = Json::array();
            for (const auto& s : steps) st.push_back(step_json(s));
            v.certificate = {{"kind", "reduction_chain"}, {"steps", st}, {"inner", std::move(inner)}};
        }
        return v;
    };

    if (zero_semigroup(n)) {
        note("zero_semigroup", true, "reduced algebra has no letters");
        return finish(Outcome::Dualizable, "zero_semigroup", {{"kind", "zero_semigroup"}});
    }

    if (auto w = whiskery_check(n)) {
        std::string a = n.letter_names()[w->letter], q = n.state_names()[w->state];
        note("whiskery", true, "letter " + a + " fails at state " + q);
        Json emb = {{"algebra", "F"}, {"param", w->embedding.m},
                    {"map", map_json(catalog("F", {w->embedding.m}), n, w->embedding.map)}};
        return finish(Outcome::NonDualizable, "whiskery",
                      {{"kind", "whiskery_failure"}, {"letter", a}, {"state", q}, {"embedding", emb}});
    }
    note("whiskery", false, "every letter acts as whiskery cycles");

    if (auto w = rankill_check(n)) {
        std::string a = n.letter_names()[w->letter], q = n.state_names()[w->state];
        note("rankill", true,
             (w->case_no == 1 ? "path from ks " : "path from ran ") + a + " at " + q + " via '" + word_string(n, w->word) + "'");
        return finish(Outcome::NonDualizable, "rankill",
                      {{"kind", "rankill"}, {"case", w->case_no}, {"letter", a}, {"state", q}, {"word", names_of(n, w->word)}});
    }
    note("rankill", false, "no ks->dom or ran->ks path");

    if (auto w = order_sensitivity(n)) {
        std::string q = n.state_names()[w->state];
        note("order_sensitivity", true,
             q + " " + word_string(n, w->killed) + " = 0 but " + q + " " + word_string(n, w->survives) + " != 0");
        return finish(Outcome::NonDualizable, "order_sensitivity",
                      {{"kind", "order_sensitive"}, {"state", q}, {"killed", names_of(n, w->killed)},
                       {"survives", names_of(n, w->survives)}});
    }
    note("order_sensitivity", false, "every rearrangement preserves killing");

    if (n.num_letters() == 1) {
        note("single_letter", true, "one letter, whiskery");
        return finish(Outcome::Dualizable, "single_letter", {{"kind", "single_letter"}, {"letter", n.letter_names()[0]}});
    }
    note("single_letter", false, std::to_string(n.num_letters()) + " letters");

    if (n.num_states() == 2) {
        auto eq1 = check_identity(n, parse_and_normalize("xy"), parse_and_normalize("xyyy"));
        auto eq2 = check_identity(n, parse_and_normalize("wxyz"), parse_and_normalize("wyxz"));
        Groupoid target = as_groupoid(n);
        int which = -1;
        FiniteMap emb;
        for (int i = 0; i <= 5 && which < 0; ++i) {
            HomOptions opt;
            opt.injective_only = true;
            opt.limit = 1;
            auto homs = enumerate_homs(as_groupoid(catalog("N", {i})), target, opt);
            if (!homs.empty()) {
                which = i;
                emb = homs.front();
            }
        }
        bool equations = !eq1 && !eq2;
        if (equations != (which < 0))
            fail(ErrorKind::InternalInconsistency, "two-state equations and forbidden embeddings disagree");
        if (equations) {
            note("two_state", true, "xy = xyyy and wxyz = wyxz hold");
            return finish(Outcome::Dualizable, "two_state",
                          {{"kind", "two_state_equations"}, {"identities", Json::array({"xy = xyyy", "wxyz = wyxz"})}});
        }
        const auto& fail_asg = eq1 ? *eq1 : *eq2;
        Json asg = Json::object();
        for (const auto& [var, val] : fail_asg) asg[var] = n.code_name(val);
        std::string ident = eq1 ? "xy = xyyy" : "wxyz = wyxz";
        note("two_state", true, "N" + std::to_string(which) + " embeds; " + ident + " fails at " + assignment_string(n, fail_asg));
        return finish(Outcome::NonDualizable, "two_state",
                      {{"kind", "two_state_forbidden"},
                       {"algebra", "N"},
                       {"param", which},
                       {"map", map_json(catalog("N", {which}), n, emb)},
                       {"identity", ident},
                       {"assignment", asg}});
    }
    note("two_state", false, std::to_string(n.num_states()) + " states");

    {
        bool constant = n.is_total();
        Json consts = Json::object();
        for (int a = 0; a < n.num_letters() && constant; ++a) {
            for (int q = 0; q < n.num_states(); ++q) constant = constant && n.delta(q, a) == n.delta(0, a);
            if (constant) consts[n.letter_names()[a]] = n.state_names()[n.delta(0, a)];
        }
        if (constant) {
            note("constant_letters", true, "every letter is total and constant");
            return finish(Outcome::Dualizable, "constant_letters", {{"kind", "constant_letters"}, {"constants", consts}});
        }
        note("constant_letters", false, n.is_total() ? "some letter is not constant" : "not total");
    }

    {
        bool loops = true;
        Json comps = Json::array();
        for (int q = 0; q < n.num_states(); ++q) {
            Json fix = Json::array();
            for (int a = 0; a < n.num_letters(); ++a) {
                int t = n.delta(q, a);
                if (t == AutomaticAlgebra::kUndefined) continue;
                if (t != q) loops = false;
                fix.push_back(n.letter_names()[a]);
            }
            comps.push_back({{"state", n.state_names()[q]}, {"letters", fix}});
        }
        if (loops) {
            note("all_loops", true, "every edge is a loop");
            return finish(Outcome::Dualizable, "all_loops", {{"kind", "all_loops"}, {"components", comps}});
        }
        note("all_loops", false, "some edge is not a loop");
    }

    {
        auto rep = letter_affine_analysis(n);
        if (rep.affine) {
            Json comps = Json::array();
            for (const auto& g : rep.groups) comps.push_back(group_json(n, g));
            note("letter_affine", true, std::to_string(rep.groups.size()) + " component group(s)");
            return finish(Outcome::Dualizable, "letter_affine", {{"kind", "letter_affine"}, {"components", comps}});
        }
        note("letter_affine", false, rep.reason);
    }

    if (auto w = nondcomm_check(n)) {
        std::string b = n.letter_names()[w->b], c = n.letter_names()[w->c];
        note("nondcomm", true, "rho_" + b + " rho_" + c + "^-1 has order " + std::to_string(w->m));
        return finish(Outcome::NonDualizable, "nondcomm",
                      {{"kind", "commuting_permutations"}, {"b", b}, {"c", c}, {"m", w->m}, {"report", w->report}});
    }
    note("nondcomm", false, "no letter pair passes the commuting-permutation coset test");

    note("unknown", true, "no rule decides this algebra");
    return finish(Outcome::Unknown, "unknown", {{"kind", "none"}});
}

Json verdict_to_json(const Verdict& v) {
    Json tr = Json::array();
    for (const auto& t : v.trace) tr.push_back({{"rule", t.rule}, {"fired", t.fired}, {"detail", t.detail}});
    return Json{{"verdict", outcome_name(v.outcome)}, {"rule", v.rule}, {"certificate", v.certificate}, {"trace", tr}};
}

Verdict verdict_from_json(const Json& j) {
    try {
        Verdict v;
        std::string o = j.at("verdict").get<std::string>();
        if (o == "dualizable")
            v.outcome = Outcome::Dualizable;
        else if (o == "non_dualizable")
            v.outcome = Outcome::NonDualizable;
        else if (o == "unknown")
            v.outcome = Outcome::Unknown;
        else
            fail(ErrorKind::ParseError, "unknown verdict '" + o + "'");
        v.rule = j.at("rule").get<std::string>();
        v.certificate = j.at("certificate");
        for (const auto& t : j.at("trace"))
            v.trace.push_back({t.at("rule").get<std::string>(), t.at("fired").get<bool>(), t.at("detail").get<std::string>()});
        return v;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ParseError, std::string("malformed verdict: ") + e.what());
    }
}

namespace {

bool is_prime_number(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

long least_prime_above(long x) {
    long p = x + 1;
    while (!is_prime_number(p)) ++p;
    return p;
}

}  // namespace

std::vector<long> chain_primes(int n) {
    std::vector<long> out;
    long letters = 2;  // C_3
    long states = 3;
    for (int k = 2; k <= n; ++k) {
        (void)states;
        if (k % 2 == 0) {
            letters = gen_chain(k).num_letters();
        } else {
            long p = least_prime_above(letters + 3);
            out.push_back(p);
            letters += 2;
        }
    }
    return out;
}

AutomaticAlgebra gen_chain(int n) {
    if (n < 1) fail(ErrorKind::BadParams, "chain needs n >= 1");
    AutomaticAlgebra cur = cycle_pair(3, "", "b", "c");
    int next_g = 1;
    for (int k = 2; k <= n; ++k) {
        const int nq = cur.num_states(), ns = cur.num_letters();
        std::vector<std::string> states = cur.state_names(), letters = cur.letter_names();
        std::vector<std::vector<int>> perms;
        for (int a = 0; a < ns; ++a) {
            std::vector<int> p(static_cast<size_t>(nq));
            for (int q = 0; q < nq; ++q) p[q] = cur.delta(q, a);
            perms.push_back(p);
        }
        if (k % 2 == 0) {
            // close under composition; new group elements become letters
            std::vector<std::vector<int>> elems;
            std::set<std::vector<int>> seen;
            for (const auto& p : perms)
                if (seen.insert(p).second) elems.push_back(p);
            const size_t gens = elems.size();
            for (size_t i = 0; i < elems.size(); ++i)
                for (size_t g = 0; g < gens; ++g) {
                    std::vector<int> c(static_cast<size_t>(nq));
                    for (int q = 0; q < nq; ++q) c[q] = elems[g][elems[i][q]];
                    if (seen.insert(c).second) elems.push_back(c);
                }
            std::vector<int> delta = cur.delta_table();
            for (size_t i = gens; i < elems.size(); ++i) {
                letters.push_back("g" + std::to_string(next_g++));
                perms.push_back(elems[i]);
            }
            std::vector<int> d(static_cast<size_t>(nq) * letters.size());
            for (int q = 0; q < nq; ++q)
                for (size_t a = 0; a < letters.size(); ++a) d[q * letters.size() + a] = perms[a][q];
            cur = AutomaticAlgebra(states, letters, d);
        } else {
            long p = least_prime_above(ns + 3);
            const int total = nq + static_cast<int>(p);
            for (long i = 1; i <= p; ++i) states.push_back("s" + std::to_string(k) + "_" + std::to_string(i));
            letters.push_back("b_" + std::to_string(k));
            letters.push_back("c_" + std::to_string(k));
            const size_t nl = letters.size();
            std::vector<int> d(static_cast<size_t>(total) * nl);
            for (int q = 0; q < total; ++q)
                for (size_t a = 0; a < nl; ++a) {
                    int val;
                    if (q < nq) {
                        val = a < static_cast<size_t>(ns) ? perms[a][q] : q;
                    } else if (a < static_cast<size_t>(ns)) {
                        val = q;
                    } else {
                        int i = q - nq;  // 0-based position on the new cycle
                        int step = a == static_cast<size_t>(ns) ? 1 : static_cast<int>(p) - 1;
                        val = nq + static_cast<int>((i + step) % p);
                    }
                    d[q * nl + a] = val;
                }
            cur = AutomaticAlgebra(states, letters, d);
        }
    }
    return cur;
}

}  // namespace autalg
