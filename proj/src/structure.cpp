#include "autalg/structure.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "autalg/error.hpp"

namespace autalg {

std::vector<std::vector<int>> components(const AutomaticAlgebra& m) {
    const int n = m.num_states();
    std::vector<int> parent(static_cast<size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int q = 0; q < n; ++q)
        for (int a = 0; a < m.num_letters(); ++a) {
            int r = m.delta(q, a);
            if (r == AutomaticAlgebra::kUndefined) continue;
            int x = find(q), y = find(r);
            if (x != y) parent[std::max(x, y)] = std::min(x, y);
        }
    std::vector<std::vector<int>> blocks;
    std::vector<int> block_of(static_cast<size_t>(n), -1);
    for (int q = 0; q < n; ++q) {
        int root = find(q);
        if (block_of[root] < 0) {
            block_of[root] = static_cast<int>(blocks.size());
            blocks.emplace_back();
        }
        blocks[block_of[root]].push_back(q);
    }
    return blocks;
}

std::vector<LetterSets> letter_sets(const AutomaticAlgebra& m) {
    std::vector<LetterSets> out(static_cast<size_t>(m.num_letters()));
    for (int a = 0; a < m.num_letters(); ++a) {
        std::set<int> ran;
        for (int q = 0; q < m.num_states(); ++q) {
            int r = m.delta(q, a);
            if (r == AutomaticAlgebra::kUndefined) {
                out[a].ks.push_back(q);
            } else {
                out[a].dom.push_back(q);
                ran.insert(r);
            }
        }
        out[a].ran.assign(ran.begin(), ran.end());
    }
    return out;
}

namespace {

// shortest word leading from some source into the target set; sources and
// letters are tried in index order
std::optional<std::pair<int, Word>> path_into(const AutomaticAlgebra& m, const std::vector<int>& sources,
                                              const std::vector<int>& targets) {
    const int n = m.num_states();
    std::vector<bool> target(static_cast<size_t>(n), false);
    for (int t : targets) target[t] = true;
    std::vector<int> prev(static_cast<size_t>(n), -2), via(static_cast<size_t>(n), -1), origin(static_cast<size_t>(n), -1);
    std::vector<int> queue;
    for (int s : sources)
        if (prev[s] == -2) {
            prev[s] = -1;
            origin[s] = s;
            queue.push_back(s);
        }
    for (size_t h = 0; h < queue.size(); ++h) {
        int x = queue[h];
        if (target[x]) {
            Word w;
            for (int y = x; prev[y] != -1; y = prev[y]) w.push_back(via[y]);
            std::reverse(w.begin(), w.end());
            return std::make_pair(origin[x], w);
        }
        for (int a = 0; a < m.num_letters(); ++a) {
            int y = m.delta(x, a);
            if (y == AutomaticAlgebra::kUndefined || prev[y] != -2) continue;
            prev[y] = x;
            via[y] = a;
            origin[y] = origin[x];
            queue.push_back(y);
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<RankillWitness> rankill_check(const AutomaticAlgebra& m) {
    auto sets = letter_sets(m);
    for (int a = 0; a < m.num_letters(); ++a)
        if (auto p = path_into(m, sets[a].ran, sets[a].ks)) return RankillWitness{2, a, p->first, p->second};
    for (int a = 0; a < m.num_letters(); ++a)
        if (auto p = path_into(m, sets[a].ks, sets[a].dom)) return RankillWitness{1, a, p->first, p->second};
    return std::nullopt;
}

bool verify_rankill(const AutomaticAlgebra& m, const RankillWitness& w) {
    if (w.letter < 0 || w.letter >= m.num_letters() || w.state < 0 || w.state >= m.num_states()) return false;
    for (int x : w.word)
        if (x < 0 || x >= m.num_letters()) return false;
    int end = run_word(m, w.state, w.word);
    if (end == AutomaticAlgebra::kUndefined) return false;
    bool end_defined = m.delta(end, w.letter) != AutomaticAlgebra::kUndefined;
    if (w.case_no == 1) return m.delta(w.state, w.letter) == AutomaticAlgebra::kUndefined && end_defined;
    if (w.case_no == 2) {
        bool in_ran = false;
        for (int q = 0; q < m.num_states(); ++q) in_ran = in_ran || m.delta(q, w.letter) == w.state;
        return in_ran && !end_defined;
    }
    return false;
}

bool letter_whiskery_at(const AutomaticAlgebra& m, int letter, int state) {
    int a = m.letter_code(letter);
    int qa = m.mul(m.state_code(state), a);
    int x = qa;
    for (int n = 1; n <= m.num_states(); ++n) {
        x = m.mul(x, a);
        if (x == qa) return true;
    }
    return false;
}

FEmbedding f_embedding_from_orbit(const AutomaticAlgebra& m, int letter, int state) {
    std::vector<int> orbit{state};
    std::vector<int> pos(static_cast<size_t>(m.num_states()), -1);
    pos[state] = 0;
    int cycle_start = -1;
    bool dies = false;
    for (;;) {
        int nxt = m.delta(orbit.back(), letter);
        if (nxt == AutomaticAlgebra::kUndefined) {
            dies = true;
            break;
        }
        if (pos[nxt] >= 0) {
            cycle_start = pos[nxt];
            break;
        }
        pos[nxt] = static_cast<int>(orbit.size());
        orbit.push_back(nxt);
    }
    FEmbedding e;
    const int a = m.letter_code(letter);
    if (dies) {
        if (orbit.size() < 2) fail(ErrorKind::PreconditionViolated, "letter is whiskery at this state");
        int x = orbit[orbit.size() - 2], y = orbit.back();
        // F_0 codes: q, r, a, 0
        e.m = 0;
        e.map = {m.state_code(x), m.state_code(y), a, m.zero_code()};
        return e;
    }
    // qa lies off the cycle; r' is the last state before the cycle
    if (cycle_start < 2) fail(ErrorKind::PreconditionViolated, "letter is whiskery at this state");
    int rp = orbit[cycle_start - 1], qp = orbit[cycle_start - 2];
    int len = static_cast<int>(orbit.size()) - cycle_start;
    e.m = len;
    e.map.push_back(m.state_code(qp));
    e.map.push_back(m.state_code(rp));
    for (int i = 0; i < len; ++i) e.map.push_back(m.state_code(orbit[cycle_start + i]));
    e.map.push_back(a);
    e.map.push_back(m.zero_code());
    return e;
}

std::optional<WhiskeryFailure> whiskery_direct(const AutomaticAlgebra& m) {
    for (int a = 0; a < m.num_letters(); ++a)
        for (int q = 0; q < m.num_states(); ++q)
            if (!letter_whiskery_at(m, a, q)) return WhiskeryFailure{a, q, f_embedding_from_orbit(m, a, q)};
    return std::nullopt;
}

std::optional<Assignment> whiskery_quasi(const AutomaticAlgebra& m) {
    static const QuasiIdentity qi = parse_quasi_identity("vxx = wxx => vx = wx");
    return check_quasi_identity(m, qi);
}

std::optional<FEmbedding> f_embedding_search(const AutomaticAlgebra& m) {
    Groupoid target = as_groupoid(m);
    for (int k = 0; k + 2 <= m.num_states(); ++k) {
        Groupoid f = as_groupoid(catalog("F", {k}));
        HomOptions opt;
        opt.injective_only = true;
        opt.limit = 1;
        auto homs = enumerate_homs(f, target, opt);
        if (!homs.empty()) return FEmbedding{k, homs.front()};
    }
    return std::nullopt;
}

std::optional<WhiskeryFailure> whiskery_check(const AutomaticAlgebra& m) {
    auto direct = whiskery_direct(m);
    auto quasi = whiskery_quasi(m);
    auto embed = f_embedding_search(m);
    if (direct.has_value() != quasi.has_value() || direct.has_value() != embed.has_value())
        fail(ErrorKind::InternalInconsistency,
             std::string("whiskery conditions disagree: direct ") + (direct ? "fails" : "passes") + ", quasi-equation " +
                 (quasi ? "fails" : "holds") + ", F_m embedding " + (embed ? "found" : "absent"));
    if (direct) {
        Groupoid f = as_groupoid(catalog("F", {direct->embedding.m}));
        if (!is_hom(f, as_groupoid(m), direct->embedding.map) || !is_injective(direct->embedding.map))
            fail(ErrorKind::InternalInconsistency, "orbit embedding is not an injective hom");
    }
    return direct;
}

PermProfile permutation_profile(const AutomaticAlgebra& m) {
    PermProfile p;
    const int n = m.num_states(), k = m.num_letters();
    p.permutational = true;
    for (int a = 0; a < k; ++a) {
        std::vector<int> r(static_cast<size_t>(n));
        std::vector<bool> hit(static_cast<size_t>(n), false);
        for (int q = 0; q < n; ++q) {
            r[q] = m.delta(q, a);
            if (r[q] == AutomaticAlgebra::kUndefined || hit[r[q]])
                p.permutational = false;
            else
                hit[r[q]] = true;
        }
        p.rho.push_back(r);
    }
    p.commuting = true;
    for (int a = 0; a < k && p.commuting; ++a)
        for (int b = a + 1; b < k && p.commuting; ++b)
            for (int q = 0; q < n; ++q)
                if (run_word(m, q, {a, b}) != run_word(m, q, {b, a})) {
                    p.commuting = false;
                    break;
                }
    for (const auto& comp : components(m)) {
        PermProfile::ComponentStatus st;
        for (int a = 0; a < k; ++a) {
            size_t def = 0;
            for (int q : comp) def += m.delta(q, a) != AutomaticAlgebra::kUndefined;
            (def == comp.size() ? st.total : def == 0 ? st.undefined : st.partial).push_back(a);
        }
        p.per_component.push_back(st);
    }
    return p;
}

int AbelianGroupData::element_of_state(int q) const {
    auto it = std::lower_bound(states.begin(), states.end(), q);
    if (it == states.end() || *it != q) return -1;
    return static_cast<int>(it - states.begin());
}

AbelianGroupData component_group(const AutomaticAlgebra& m, const std::vector<int>& component) {
    AbelianGroupData g;
    g.states = component;
    std::sort(g.states.begin(), g.states.end());
    if (g.states.empty()) fail(ErrorKind::NotTransitive, "empty component");
    auto sname = [&](int q) { return m.state_names()[q]; };
    auto lname = [&](int a) { return m.letter_names()[a]; };
    for (int a = 0; a < m.num_letters(); ++a) {
        size_t def = 0;
        std::set<int> img;
        for (int q : g.states) {
            int r = m.delta(q, a);
            if (r == AutomaticAlgebra::kUndefined) continue;
            ++def;
            if (g.element_of_state(r) < 0)
                fail(ErrorKind::NotTransitive, "letter " + lname(a) + " leaves the component at " + sname(q));
            img.insert(r);
        }
        if (def == 0) {
            g.dropped_letters.push_back(a);
            continue;
        }
        if (def != g.states.size())
            fail(ErrorKind::NotPermutational, "letter " + lname(a) + " is defined on only part of the component");
        if (img.size() != g.states.size())
            fail(ErrorKind::NotPermutational, "letter " + lname(a) + " is not injective on the component");
        g.letters.push_back(a);
    }
    for (size_t i = 0; i < g.letters.size(); ++i)
        for (size_t j = i + 1; j < g.letters.size(); ++j)
            for (int q : g.states) {
                int a = g.letters[i], b = g.letters[j];
                if (run_word(m, q, {a, b}) != run_word(m, q, {b, a}))
                    fail(ErrorKind::NotCommuting,
                         "letters " + lname(a) + " and " + lname(b) + " do not commute at state " + sname(q));
            }
    // words from e to each state
    const int n = static_cast<int>(g.states.size());
    std::vector<Word> word_to(static_cast<size_t>(n));
    std::vector<bool> seen(static_cast<size_t>(n), false);
    std::vector<int> queue{0};
    seen[0] = true;
    for (size_t h = 0; h < queue.size(); ++h) {
        int x = queue[h];
        for (int a : g.letters) {
            int y = g.element_of_state(m.delta(g.states[x], a));
            if (seen[y]) continue;
            seen[y] = true;
            word_to[y] = word_to[x];
            word_to[y].push_back(a);
            queue.push_back(y);
        }
    }
    for (int i = 0; i < n; ++i)
        if (!seen[i]) fail(ErrorKind::NotTransitive, "state " + sname(g.states[i]) + " is not reachable from " + sname(g.states[0]));

    g.group.n = n;
    g.group.identity = 0;
    g.group.table.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        g.group.labels.push_back(sname(g.states[i]));
        for (int j = 0; j < n; ++j) g.group.table[i * n + j] = g.element_of_state(run_word(m, g.states[i], word_to[j]));
    }
    try {
        check_abelian_group(g.group);
    } catch (const Error& e) {
        fail(ErrorKind::InternalInconsistency, std::string("transferred action is not an abelian group: ") + e.what());
    }
    for (int a : g.letters) g.letter_images.push_back(g.element_of_state(m.delta(g.states[0], a)));
    for (int i = 0; i < n; ++i)
        for (size_t t = 0; t < g.letters.size(); ++t)
            if (g.element_of_state(m.delta(g.states[i], g.letters[t])) != g.group.mul(i, g.letter_images[t]))
                fail(ErrorKind::InternalInconsistency, "q.a differs from q * a_(i)");
    std::vector<int> hgens;
    for (int x : g.letter_images)
        for (int y : g.letter_images) hgens.push_back(g.group.mul(g.group.inverse(x), y));
    g.subgroup_h = subgroup_generated(g.group, hgens);
    g.exponent = exponent(g.group);
    g.decomposition = cyclic_decomposition(g.group);
    return g;
}

bool verify_group_data(const AutomaticAlgebra& m, const AbelianGroupData& g, std::string* why) {
    auto no = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    const int n = static_cast<int>(g.states.size());
    if (n == 0 || g.group.n != n || g.group.table.size() != static_cast<size_t>(n) * n) return no("size mismatch");
    for (int q : g.states)
        if (q < 0 || q >= m.num_states()) return no("bad state");
    if (!std::is_sorted(g.states.begin(), g.states.end())) return no("states not sorted");
    try {
        check_abelian_group(g.group);
    } catch (const Error& e) {
        return no(e.what());
    }
    if (g.letters.size() != g.letter_images.size()) return no("letter images missing");
    std::set<int> listed(g.letters.begin(), g.letters.end());
    for (int a : g.dropped_letters) {
        if (!listed.insert(a).second) return no("letter listed twice");
        for (int q : g.states)
            if (m.delta(q, a) != AutomaticAlgebra::kUndefined) return no("dropped letter is defined on the component");
    }
    for (int a = 0; a < m.num_letters(); ++a) {
        if (listed.count(a)) continue;
        for (int q : g.states)
            if (m.delta(q, a) != AutomaticAlgebra::kUndefined) return no("letter missing from the report");
    }
    auto idx = [&](int q) {
        auto it = std::find(g.states.begin(), g.states.end(), q);
        return it == g.states.end() ? -1 : static_cast<int>(it - g.states.begin());
    };
    for (size_t t = 0; t < g.letters.size(); ++t)
        for (int i = 0; i < n; ++i) {
            int r = m.delta(g.states[i], g.letters[t]);
            if (r == AutomaticAlgebra::kUndefined || idx(r) != g.group.mul(i, g.letter_images[t]))
                return no("q.a != q * a_(i) for letter " + m.letter_names()[g.letters[t]]);
        }
    // regular: translations by distinct elements differ at the identity
    for (int i = 0; i < n; ++i)
        if (g.group.mul(g.group.identity, i) != i) return no("action is not regular");
    if (subgroup_generated(g.group, g.letter_images).size() != static_cast<size_t>(n))
        return no("letter images do not generate the group");
    std::vector<int> hgens;
    for (int x : g.letter_images)
        for (int y : g.letter_images) hgens.push_back(g.group.mul(g.group.inverse(x), y));
    if (subgroup_generated(g.group, hgens) != g.subgroup_h) return no("H does not match");
    return true;
}

LetterAffineReport letter_affine_analysis(const AutomaticAlgebra& m) {
    LetterAffineReport rep;
    auto comps = components(m);
    for (size_t ci = 0; ci < comps.size(); ++ci) {
        AbelianGroupData g;
        try {
            g = component_group(m, comps[ci]);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::InternalInconsistency) throw;
            rep.component = static_cast<int>(ci);
            rep.reason = e.what();
            rep.groups.clear();
            return rep;
        }
        std::set<int> images(g.letter_images.begin(), g.letter_images.end());
        const size_t k = g.letters.size();
        for (size_t x = 0; x < k; ++x)
            for (size_t y = 0; y < k; ++y)
                for (size_t z = 0; z < k; ++z) {
                    int v = g.group.mul(g.group.mul(g.letter_images[x], g.group.inverse(g.letter_images[y])),
                                        g.letter_images[z]);
                    if (!images.count(v)) {
                        rep.component = static_cast<int>(ci);
                        rep.triple = {g.letters[x], g.letters[y], g.letters[z]};
                        rep.reason = "p(" + m.letter_names()[g.letters[x]] + "," + m.letter_names()[g.letters[y]] +
                                     "," + m.letter_names()[g.letters[z]] + ") = " + g.group.labels[v] +
                                     " is not a letter image";
                        rep.groups.clear();
                        return rep;
                    }
                }
        rep.groups.push_back(std::move(g));
    }
    rep.affine = true;
    return rep;
}

namespace {

using Perm = std::vector<int>;

Perm compose(const Perm& x, const Perm& y) {  // x then y
    Perm z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = y[x[i]];
    return z;
}

Perm invert(const Perm& x) {
    Perm z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[x[i]] = static_cast<int>(i);
    return z;
}

int perm_order(const Perm& x) {
    Perm id(x.size());
    std::iota(id.begin(), id.end(), 0);
    int k = 1;
    for (Perm y = x; y != id; y = compose(y, x)) ++k;
    return k;
}

bool is_subgroup(const std::set<Perm>& s) {
    for (const auto& x : s)
        for (const auto& y : s)
            if (!s.count(compose(x, y))) return false;
    return true;
}

}  // namespace

bool has_small_coset_subsets(const std::vector<std::vector<int>>& actions, int m) {
    const size_t k = actions.size();
    for (unsigned long mask = 1; mask < (1UL << k); ++mask) {
        int size = __builtin_popcountl(mask);
        if (size < 2 || m % size != 0) continue;
        size_t first = static_cast<size_t>(__builtin_ctzl(mask));
        Perm kinv = invert(actions[first]);
        std::set<Perm> h;
        for (size_t i = 0; i < k; ++i)
            if (mask >> i & 1UL) h.insert(compose(kinv, actions[i]));
        if (is_subgroup(h)) return true;
    }
    return false;
}

bool has_small_coset_cyclic(const std::vector<std::vector<int>>& actions, int m) {
    std::set<Perm> kset(actions.begin(), actions.end());
    for (const auto& k : actions) {
        Perm kinv = invert(k);
        for (const auto& s : actions) {
            Perm h = compose(kinv, s);
            int o = perm_order(h);
            if (o == 1) continue;
            for (int p = 2; p <= o; ++p) {
                if (o % p != 0 || m % p != 0) continue;
                bool prime = true;
                for (int d = 2; d * d <= p; ++d) prime = prime && p % d != 0;
                if (!prime) continue;
                Perm g = h;
                for (int t = 1; t < o / p; ++t) g = compose(g, h);
                // k, kg, kg^2, ... all actions?
                bool inside = true;
                Perm cur = k;
                for (int j = 0; j < p && inside; ++j) {
                    inside = kset.count(cur) > 0;
                    cur = compose(cur, g);
                }
                if (inside) return true;
            }
        }
    }
    return false;
}

std::optional<NondcommWitness> nondcomm_check(const AutomaticAlgebra& m) {
    PermProfile prof = permutation_profile(m);
    if (!prof.permutational || !prof.commuting) return std::nullopt;
    auto comps = components(m);
    // distinct restricted actions per component, in local indices
    std::vector<std::vector<Perm>> acts(comps.size());
    for (size_t ci = 0; ci < comps.size(); ++ci) {
        std::set<Perm> seen;
        for (int a = 0; a < m.num_letters(); ++a) {
            Perm r;
            for (int q : comps[ci]) {
                int t = prof.rho[a][q];
                r.push_back(static_cast<int>(std::find(comps[ci].begin(), comps[ci].end(), t) - comps[ci].begin()));
            }
            if (seen.insert(r).second) acts[ci].push_back(r);
        }
    }
    for (int b = 0; b < m.num_letters(); ++b)
        for (int c = b + 1; c < m.num_letters(); ++c) {
            int order = perm_order(compose(prof.rho[b], invert(prof.rho[c])));
            if (order <= 1) continue;
            bool ok = true;
            std::vector<std::string> report;
            for (size_t ci = 0; ci < comps.size() && ok; ++ci) {
                bool bad = has_small_coset_cyclic(acts[ci], order);
                if (acts[ci].size() <= 12 && has_small_coset_subsets(acts[ci], order) != bad)
                    fail(ErrorKind::InternalInconsistency, "coset searches disagree");
                if (bad) {
                    ok = false;
                    break;
                }
                std::string names;
                for (int q : comps[ci]) names += (names.empty() ? "" : ",") + m.state_names()[q];
                report.push_back("component {" + names + "}: " + std::to_string(acts[ci].size()) +
                                 " letter actions, no coset of a nontrivial subgroup of order dividing " +
                                 std::to_string(order));
            }
            if (ok) return NondcommWitness{b, c, order, report};
        }
    return std::nullopt;
}

}  // namespace autalg
