// Certificate checker. Everything here is recomputed with plain loops over
// the multiplication table; none of the classifier's search code is used.
#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "autalg/classifier.hpp"
#include "autalg/error.hpp"

namespace autalg {

namespace {

struct Reject {
    std::string reason;
};

[[noreturn]] void reject(const std::string& why) { throw Reject{why}; }

int code_of(const AutomaticAlgebra& m, const Json& j) {
    if (!j.is_string()) reject("element name is not a string");
    auto e = m.find(j.get<std::string>());
    if (!e) reject("unknown element '" + j.get<std::string>() + "'");
    return m.code(*e);
}

int letter_of(const AutomaticAlgebra& m, const Json& j) {
    if (!j.is_string()) reject("letter is not a string");
    auto a = m.find_letter(j.get<std::string>());
    if (!a) reject("unknown letter '" + j.get<std::string>() + "'");
    return *a;
}

int state_of(const AutomaticAlgebra& m, const Json& j) {
    if (!j.is_string()) reject("state is not a string");
    auto q = m.find_state(j.get<std::string>());
    if (!q) reject("unknown state '" + j.get<std::string>() + "'");
    return *q;
}

Word word_of(const AutomaticAlgebra& m, const Json& j) {
    if (!j.is_array()) reject("word is not an array");
    Word w;
    for (const auto& x : j) w.push_back(letter_of(m, x));
    return w;
}

int run(const AutomaticAlgebra& m, int q, const Word& w) {
    for (int a : w) {
        if (q < 0) return -1;
        q = m.delta(q, a);
    }
    return q;
}

// {"x": "y", ...} from src codes to m codes; must be an injective hom
void check_map_embedding(const AutomaticAlgebra& src, const AutomaticAlgebra& m, const Json& map) {
    if (!map.is_object()) reject("embedding is not an object");
    std::vector<int> img(static_cast<size_t>(src.size()), -1);
    for (auto it = map.begin(); it != map.end(); ++it) {
        auto e = src.find(it.key());
        if (!e) reject("embedding names unknown source element " + it.key());
        img[src.code(*e)] = code_of(m, it.value());
    }
    std::set<int> used;
    for (int x = 0; x < src.size(); ++x) {
        if (img[x] < 0) reject("embedding misses " + src.code_name(x));
        if (!used.insert(img[x]).second) reject("embedding is not injective");
    }
    for (int x = 0; x < src.size(); ++x)
        for (int y = 0; y < src.size(); ++y)
            if (img[src.mul(x, y)] != m.mul(img[x], img[y]))
                reject("embedding is not a hom at (" + src.code_name(x) + "," + src.code_name(y) + ")");
}

bool whiskery_at(const AutomaticAlgebra& m, int a, int q) {
    std::vector<int> orbit{q};
    for (int i = 0; i <= m.num_states(); ++i) {
        int c = orbit.back();
        orbit.push_back(c < 0 ? -1 : m.delta(c, a));
    }
    for (int n = 1; n <= m.num_states(); ++n)
        if (orbit[1] == orbit[n + 1]) return true;
    return false;
}

bool group_contains(const std::vector<std::vector<int>>& k, const std::vector<int>& p) {
    return std::find(k.begin(), k.end(), p) != k.end();
}

std::vector<int> perm_mul(const std::vector<int>& f, const std::vector<int>& g) {  // f then g
    std::vector<int> r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = g[f[i]];
    return r;
}

int perm_order(const std::vector<int>& f) {
    std::vector<int> id(f.size());
    std::iota(id.begin(), id.end(), 0);
    std::vector<int> cur = f;
    int n = 1;
    while (cur != id) {
        cur = perm_mul(cur, f);
        ++n;
    }
    return n;
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Outcome verify_inner(const AutomaticAlgebra& m, const Json& c);

void verify_letter_affine(const AutomaticAlgebra& m, const Json& c) {
    const Json& comps = c.at("components");
    std::vector<int> owner(static_cast<size_t>(m.num_states()), -1);
    std::vector<std::vector<int>> states_of;
    for (size_t ci = 0; ci < comps.size(); ++ci) {
        std::vector<int> st;
        for (const auto& s : comps[ci].at("states")) {
            int q = state_of(m, s);
            if (owner[q] >= 0) reject("state " + m.state_names()[q] + " in two components");
            owner[q] = static_cast<int>(ci);
            st.push_back(q);
        }
        states_of.push_back(st);
    }
    for (int q = 0; q < m.num_states(); ++q)
        if (owner[q] < 0) reject("state " + m.state_names()[q] + " in no component");
    for (int q = 0; q < m.num_states(); ++q)
        for (int a = 0; a < m.num_letters(); ++a) {
            int t = m.delta(q, a);
            if (t >= 0 && owner[t] != owner[q]) reject("edge leaves its component");
        }
    for (size_t ci = 0; ci < comps.size(); ++ci) {
        const Json& g = comps[ci];
        const auto& st = states_of[ci];
        const int n = static_cast<int>(st.size());
        auto local = [&](const Json& name) {
            int q = state_of(m, name);
            auto it = std::find(st.begin(), st.end(), q);
            if (it == st.end()) reject("group element outside its component");
            return static_cast<int>(it - st.begin());
        };
        const Json& tab = g.at("table");
        if (static_cast<int>(tab.size()) != n) reject("group table has wrong size");
        std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(tab[i].size()) != n) reject("group table has wrong size");
            for (int j = 0; j < n; ++j) t[i][j] = local(tab[i][j]);
        }
        int e = local(g.at("identity"));
        for (int i = 0; i < n; ++i) {
            if (t[e][i] != i || t[i][e] != i) reject("identity law fails");
            bool inv = false;
            for (int j = 0; j < n; ++j) {
                if (t[i][j] != t[j][i]) reject("group is not abelian");
                inv = inv || t[i][j] == e;
                for (int k = 0; k < n; ++k)
                    if (t[t[i][j]][k] != t[i][t[j][k]]) reject("group is not associative");
            }
            if (!inv) reject("missing inverse");
        }
        std::set<int> images;
        std::set<int> seen_letters;
        for (auto it = g.at("letters").begin(); it != g.at("letters").end(); ++it) {
            int a = letter_of(m, Json(it.key()));
            int img = local(it.value());
            seen_letters.insert(a);
            images.insert(img);
            for (int i = 0; i < n; ++i)
                if (m.delta(st[i], a) != st[t[i][img]]) reject("q.a != q * a_(i) for letter " + it.key());
        }
        for (const auto& d : g.at("dropped")) {
            int a = letter_of(m, d);
            seen_letters.insert(a);
            for (int q : st)
                if (m.delta(q, a) >= 0) reject("dropped letter is defined on the component");
        }
        if (static_cast<int>(seen_letters.size()) != m.num_letters()) reject("letters not all accounted for");
        if (images.empty()) reject("component has no letters");
        std::set<int> h;
        for (const auto& x : g.at("H")) h.insert(local(x));
        if (!h.count(e)) reject("H misses the identity");
        for (int x : h)
            for (int y : h)
                if (!h.count(t[x][y])) reject("H is not closed");
        int a0 = *images.begin();
        std::set<int> coset;
        for (int x : h) coset.insert(t[a0][x]);
        if (coset != images) reject("letter images are not a coset of H");
    }
}

void verify_nondcomm(const AutomaticAlgebra& m, const Json& c) {
    const int nq = m.num_states();
    std::vector<std::vector<int>> rho;
    for (int a = 0; a < m.num_letters(); ++a) {
        std::vector<int> p(static_cast<size_t>(nq));
        std::set<int> img;
        for (int q = 0; q < nq; ++q) {
            p[q] = m.delta(q, a);
            if (p[q] < 0) reject("letter " + m.letter_names()[a] + " is not total");
            img.insert(p[q]);
        }
        if (static_cast<int>(img.size()) != nq) reject("letter " + m.letter_names()[a] + " is not a permutation");
        rho.push_back(p);
    }
    for (const auto& f : rho)
        for (const auto& g : rho)
            if (perm_mul(f, g) != perm_mul(g, f)) reject("letters do not commute");
    int b = letter_of(m, c.at("b")), cc = letter_of(m, c.at("c"));
    std::vector<int> cinv(static_cast<size_t>(nq));
    for (int q = 0; q < nq; ++q) cinv[rho[cc][q]] = q;
    int order = perm_order(perm_mul(rho[b], cinv));
    if (order != c.at("m").get<int>()) reject("stated order m is wrong");
    if (order <= 1) reject("m must exceed 1");
    // components by flood fill
    std::vector<int> comp(static_cast<size_t>(nq), -1);
    int ncomp = 0;
    for (int s = 0; s < nq; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            int q = stack.back();
            stack.pop_back();
            for (const auto& p : rho)
                for (int r : {p[q], static_cast<int>(std::find(p.begin(), p.end(), q) - p.begin())})
                    if (comp[r] < 0) {
                        comp[r] = ncomp;
                        stack.push_back(r);
                    }
        }
        ++ncomp;
    }
    for (int ci = 0; ci < ncomp; ++ci) {
        std::vector<int> st;
        for (int q = 0; q < nq; ++q)
            if (comp[q] == ci) st.push_back(q);
        std::vector<std::vector<int>> k;
        for (const auto& p : rho) {
            std::vector<int> r;
            for (int q : st) r.push_back(static_cast<int>(std::find(st.begin(), st.end(), p[q]) - st.begin()));
            if (!group_contains(k, r)) k.push_back(r);
        }
        // a coset k<h> inside K with h of prime order p | m
        for (const auto& x : k)
            for (const auto& y : k) {
                std::vector<int> xinv(x.size());
                for (size_t i = 0; i < x.size(); ++i) xinv[x[i]] = static_cast<int>(i);
                std::vector<int> h = perm_mul(xinv, y);
                int o = perm_order(h);
                if (o <= 1 || !is_prime(o) || order % o != 0) continue;
                std::vector<int> cur = x;
                bool inside = true;
                for (int i = 0; i < o && inside; ++i) {
                    inside = group_contains(k, cur);
                    cur = perm_mul(cur, h);
                }
                if (inside) reject("component " + std::to_string(ci) + " has a coset of order dividing m");
            }
    }
    if (!c.at("report").is_array()) reject("report is not an array");
}

AutomaticAlgebra replay_step(const AutomaticAlgebra& m, const Json& step) {
    std::string kind = step.at("kind").get<std::string>();
    std::string removed = step.at("removed").get<std::string>(), kept = step.at("kept").get<std::string>();
    std::vector<int> ks(static_cast<size_t>(m.num_states())), kl(static_cast<size_t>(m.num_letters()));
    std::iota(ks.begin(), ks.end(), 0);
    std::iota(kl.begin(), kl.end(), 0);
    auto in_ran = [&](int q) {
        for (int p = 0; p < m.num_states(); ++p)
            for (int a = 0; a < m.num_letters(); ++a)
                if (m.delta(p, a) == q) return true;
        return false;
    };
    if (kind == "drop_undefined_letter") {
        int a = letter_of(m, Json(removed));
        for (int q = 0; q < m.num_states(); ++q)
            if (m.delta(q, a) >= 0) reject("dropped letter has nonempty domain");
        kl.erase(kl.begin() + a);
    } else if (kind == "drop_repeated_letter") {
        int a = letter_of(m, Json(removed)), b = letter_of(m, Json(kept));
        if (a == b) reject("letter repeated with itself");
        for (int q = 0; q < m.num_states(); ++q)
            if (m.delta(q, a) != m.delta(q, b)) reject("letters act differently");
        kl.erase(kl.begin() + a);
    } else if (kind == "drop_isolated_state") {
        int q = state_of(m, Json(removed));
        for (int a = 0; a < m.num_letters(); ++a)
            if (m.delta(q, a) >= 0) reject("isolated state has an edge");
        if (in_ran(q)) reject("isolated state has an incoming edge");
        ks.erase(ks.begin() + q);
    } else if (kind == "drop_redundant_state") {
        int q = state_of(m, Json(removed)), r = state_of(m, Json(kept));
        if (q == r) reject("state redundant with itself");
        if (in_ran(q)) reject("redundant state has an incoming edge");
        for (int a = 0; a < m.num_letters(); ++a)
            if (m.delta(q, a) != m.delta(r, a)) reject("states act differently");
        ks.erase(ks.begin() + q);
    } else {
        reject("unknown step kind '" + kind + "'");
    }
    AutomaticAlgebra n = m.restrict(ks, kl);
    // embedding into n^2
    const Json& emb = step.at("embedding");
    std::vector<std::pair<int, int>> img(static_cast<size_t>(m.size()), {-1, -1});
    for (auto it = emb.begin(); it != emb.end(); ++it) {
        auto e = m.find(it.key());
        if (!e) reject("step embedding names unknown element " + it.key());
        if (!it.value().is_array() || it.value().size() != 2) reject("step image is not a pair");
        img[m.code(*e)] = {code_of(n, it.value()[0]), code_of(n, it.value()[1])};
    }
    std::set<std::pair<int, int>> used;
    for (int x = 0; x < m.size(); ++x) {
        if (img[x].first < 0) reject("step embedding misses " + m.code_name(x));
        if (!used.insert(img[x]).second) reject("step embedding is not injective");
    }
    for (int x = 0; x < m.size(); ++x)
        for (int y = 0; y < m.size(); ++y) {
            std::pair<int, int> got{n.mul(img[x].first, img[y].first), n.mul(img[x].second, img[y].second)};
            if (got != img[m.mul(x, y)]) reject("step embedding is not a hom");
        }
    return n;
}

Outcome verify_inner(const AutomaticAlgebra& m, const Json& c) {
    std::string kind = c.at("kind").get<std::string>();
    const int nq = m.num_states(), ns = m.num_letters();
    if (kind == "zero_semigroup") {
        if (nq != 0 && ns != 0) reject("algebra has states and letters");
        return Outcome::Dualizable;
    }
    if (kind == "whiskery_failure") {
        int a = letter_of(m, c.at("letter")), q = state_of(m, c.at("state"));
        if (whiskery_at(m, a, q)) reject("letter acts as a whiskery cycle at the state");
        const Json& e = c.at("embedding");
        if (e.at("algebra") != "F") reject("embedding source is not F_m");
        int p = e.at("param").get<int>();
        if (p < 0 || p > 64) reject("bad F_m parameter");
        check_map_embedding(catalog("F", {p}), m, e.at("map"));
        return Outcome::NonDualizable;
    }
    if (kind == "rankill") {
        int cs = c.at("case").get<int>();
        int a = letter_of(m, c.at("letter")), q = state_of(m, c.at("state"));
        Word w = word_of(m, c.at("word"));
        int r = run(m, q, w);
        if (r < 0) reject("word is undefined from the state");
        if (cs == 1) {
            if (m.delta(q, a) >= 0) reject("state is not a kill state");
            if (m.delta(r, a) < 0) reject("path does not end in the domain");
        } else if (cs == 2) {
            bool hit = false;
            for (int p = 0; p < nq; ++p) hit = hit || m.delta(p, a) == q;
            if (!hit) reject("state is not in the range");
            if (m.delta(r, a) >= 0) reject("path does not end in a kill state");
        } else {
            reject("bad rankill case");
        }
        return Outcome::NonDualizable;
    }
    if (kind == "order_sensitive") {
        int q = state_of(m, c.at("state"));
        Word k = word_of(m, c.at("killed")), s = word_of(m, c.at("survives"));
        Word ks = k, ss = s;
        std::sort(ks.begin(), ks.end());
        std::sort(ss.begin(), ss.end());
        if (ks != ss) reject("words are not rearrangements");
        if (run(m, q, k) >= 0) reject("killed word survives");
        if (run(m, q, s) < 0) reject("surviving word is killed");
        return Outcome::NonDualizable;
    }
    if (kind == "single_letter") {
        if (ns != 1) reject("more than one letter");
        if (letter_of(m, c.at("letter")) != 0) reject("wrong letter");
        for (int q = 0; q < nq; ++q)
            if (!whiskery_at(m, 0, q)) reject("letter is not whiskery");
        return Outcome::Dualizable;
    }
    if (kind == "two_state_equations") {
        if (nq != 2) reject("not a two-state algebra");
        const int z = m.size();
        for (int x = 0; x < z; ++x)
            for (int y = 0; y < z; ++y) {
                int xy = m.mul(x, y);
                if (xy != m.mul(m.mul(xy, y), y)) reject("xy = xyyy fails");
            }
        for (int w = 0; w < z; ++w)
            for (int x = 0; x < z; ++x)
                for (int y = 0; y < z; ++y)
                    for (int v = 0; v < z; ++v)
                        if (m.mul(m.mul(m.mul(w, x), y), v) != m.mul(m.mul(m.mul(w, y), x), v))
                            reject("wxyz = wyxz fails");
        return Outcome::Dualizable;
    }
    if (kind == "two_state_forbidden") {
        if (nq != 2) reject("not a two-state algebra");
        if (c.at("algebra") != "N") reject("forbidden algebra is not N_i");
        int i = c.at("param").get<int>();
        if (i < 0 || i > 5) reject("bad N_i parameter");
        check_map_embedding(catalog("N", {i}), m, c.at("map"));
        std::string ident = c.at("identity").get<std::string>();
        std::map<std::string, int> v;
        for (auto it = c.at("assignment").begin(); it != c.at("assignment").end(); ++it)
            v[it.key()] = code_of(m, it.value());
        auto get = [&](const char* n) {
            auto it = v.find(n);
            if (it == v.end()) reject(std::string("assignment misses ") + n);
            return it->second;
        };
        if (ident == "xy = xyyy") {
            int x = get("x"), y = get("y"), xy = m.mul(x, y);
            if (xy == m.mul(m.mul(xy, y), y)) reject("assignment satisfies xy = xyyy");
        } else if (ident == "wxyz = wyxz") {
            int w = get("w"), x = get("x"), y = get("y"), z = get("z");
            if (m.mul(m.mul(m.mul(w, x), y), z) == m.mul(m.mul(m.mul(w, y), x), z))
                reject("assignment satisfies wxyz = wyxz");
        } else {
            reject("unknown identity '" + ident + "'");
        }
        return Outcome::NonDualizable;
    }
    if (kind == "constant_letters") {
        const Json& k = c.at("constants");
        if (static_cast<int>(k.size()) != ns) reject("constants do not cover the letters");
        for (auto it = k.begin(); it != k.end(); ++it) {
            int a = letter_of(m, Json(it.key())), t = state_of(m, it.value());
            for (int q = 0; q < nq; ++q)
                if (m.delta(q, a) != t) reject("letter " + it.key() + " is not constant");
        }
        return Outcome::Dualizable;
    }
    if (kind == "all_loops") {
        for (int q = 0; q < nq; ++q)
            for (int a = 0; a < ns; ++a)
                if (m.delta(q, a) >= 0 && m.delta(q, a) != q) reject("edge is not a loop");
        return Outcome::Dualizable;
    }
    if (kind == "letter_affine") {
        verify_letter_affine(m, c);
        return Outcome::Dualizable;
    }
    if (kind == "commuting_permutations") {
        verify_nondcomm(m, c);
        return Outcome::NonDualizable;
    }
    if (kind == "reduction_chain") {
        AutomaticAlgebra cur = m;
        if (!c.at("steps").is_array() || c.at("steps").empty()) reject("empty reduction chain");
        for (const auto& s : c.at("steps")) cur = replay_step(cur, s);
        if (c.at("inner").at("kind") == "reduction_chain") reject("nested reduction chain");
        return verify_inner(cur, c.at("inner"));
    }
    if (kind == "none") return Outcome::Unknown;
    reject("unknown certificate kind '" + kind + "'");
}

}  // namespace

VerifyResult verify_certificate(const AutomaticAlgebra& m, const Json& verdict) {
    try {
        Verdict v = verdict_from_json(verdict);
        Outcome o = verify_inner(m, v.certificate);
        if (o != v.outcome) return {false, "certificate supports a different verdict"};
        return {true, o == Outcome::Unknown ? "no claim to check" : "ok"};
    } catch (const Reject& r) {
        return {false, r.reason};
    } catch (const Error& e) {
        return {false, e.what()};
    } catch (const nlohmann::json::exception& e) {
        return {false, std::string("malformed certificate: ") + e.what()};
    }
}

}  // namespace autalg
