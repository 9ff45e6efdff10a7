#include "autalg/groups.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "autalg/error.hpp"

namespace autalg {

int FiniteGroup::inverse(int x) const {
    for (int y = 0; y < n; ++y)
        if (mul(x, y) == identity) return y;
    fail(ErrorKind::InternalInconsistency, "element without inverse");
}

int FiniteGroup::power(int x, long k) const {
    int r = identity;
    for (long i = 0; i < k; ++i) r = mul(r, x);
    return r;
}

int FiniteGroup::order(int x) const {
    int k = 1;
    for (int y = x; y != identity; y = mul(y, x)) ++k;
    return k;
}

void check_abelian_group(const FiniteGroup& g) {
    auto bad = [&](const std::string& why) { fail(ErrorKind::NotAbelian, why); };
    if (g.n < 1 || g.table.size() != static_cast<size_t>(g.n) * g.n) bad("malformed table");
    for (int v : g.table)
        if (v < 0 || v >= g.n) bad("table entry out of range");
    for (int x = 0; x < g.n; ++x) {
        if (g.mul(g.identity, x) != x) bad("identity fails at " + std::to_string(x));
        bool has_inv = false;
        for (int y = 0; y < g.n; ++y) {
            if (g.mul(x, y) != g.mul(y, x))
                bad("elements " + std::to_string(x) + " and " + std::to_string(y) + " do not commute");
            if (g.mul(x, y) == g.identity) has_inv = true;
            for (int z = 0; z < g.n; ++z)
                if (g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z))) bad("not associative");
        }
        if (!has_inv) bad("element " + std::to_string(x) + " has no inverse");
    }
}

int exponent(const FiniteGroup& g) {
    int e = 1;
    for (int x = 0; x < g.n; ++x) e = std::lcm(e, g.order(x));
    return e;
}

std::vector<int> subgroup_generated(const FiniteGroup& g, const std::vector<int>& gens) {
    std::vector<bool> in(static_cast<size_t>(g.n), false);
    std::vector<int> members{g.identity};
    in[g.identity] = true;
    for (size_t i = 0; i < members.size(); ++i)
        for (int s : gens) {
            int z = g.mul(members[i], s);
            if (!in[z]) {
                in[z] = true;
                members.push_back(z);
            }
        }
    std::sort(members.begin(), members.end());
    return members;
}

namespace {

std::vector<int> prime_factors(int n) {
    std::vector<int> ps;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

bool is_power_of(int x, int p) {
    while (x % p == 0) x /= p;
    return x == 1;
}

int ipow(int b, int e) {
    int r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

std::vector<CyclicFactor> cyclic_decomposition(const FiniteGroup& g) {
    check_abelian_group(g);
    std::vector<CyclicFactor> out;
    std::vector<int> ord(static_cast<size_t>(g.n));
    for (int x = 0; x < g.n; ++x) ord[x] = g.order(x);
    for (int p : prime_factors(g.n)) {
        std::vector<int> sylow;
        for (int x = 0; x < g.n; ++x)
            if (is_power_of(ord[x], p)) sylow.push_back(x);
        // count elements killed by p^j to read off the type
        std::vector<int> logs{0};
        for (int j = 1;; ++j) {
            int pj = ipow(p, j);
            int c = 0;
            for (int x : sylow)
                if (pj % ord[x] == 0) ++c;
            int l = 0;
            while (ipow(p, l) < c) ++l;
            logs.push_back(l);
            if (c == static_cast<int>(sylow.size())) break;
        }
        // number of parts of size >= j is logs[j] - logs[j-1]
        std::vector<int> parts;  // exponents, descending
        for (size_t j = logs.size() - 1; j >= 1; --j) {
            int at_least_j = logs[j] - logs[j - 1];
            int at_least_next = j + 1 < logs.size() ? logs[j + 1] - logs[j] : 0;
            for (int t = 0; t < at_least_j - at_least_next; ++t) parts.push_back(static_cast<int>(j));
        }
        std::vector<int> chosen;
        std::function<bool(size_t, int)> pick = [&](size_t idx, int size) -> bool {
            if (idx == parts.size()) return true;
            int want = ipow(p, parts[idx]);
            for (int x : sylow) {
                if (ord[x] != want) continue;
                chosen.push_back(x);
                int s = static_cast<int>(subgroup_generated(g, chosen).size());
                if (s == size * want && pick(idx + 1, s)) return true;
                chosen.pop_back();
            }
            return false;
        };
        if (!pick(0, 1)) fail(ErrorKind::InternalInconsistency, "no basis found for the Sylow subgroup");
        std::vector<CyclicFactor> block;
        for (size_t i = 0; i < chosen.size(); ++i) block.push_back({chosen[i], ord[chosen[i]], p});
        std::stable_sort(block.begin(), block.end(),
                         [](const CyclicFactor& a, const CyclicFactor& b) { return a.order < b.order; });
        out.insert(out.end(), block.begin(), block.end());
    }
    // round trip through coordinates
    basis_coordinates(g, out);
    return out;
}

std::vector<std::vector<int>> basis_coordinates(const FiniteGroup& g, const std::vector<CyclicFactor>& basis) {
    std::vector<std::vector<int>> coords(static_cast<size_t>(g.n));
    std::vector<bool> hit(static_cast<size_t>(g.n), false);
    std::vector<int> e(basis.size(), 0);
    long total = 1;
    for (const auto& f : basis) total *= f.order;
    if (total != g.n) fail(ErrorKind::InternalInconsistency, "basis orders do not multiply to the group order");
    for (long t = 0; t < total; ++t) {
        int x = g.identity;
        for (size_t i = 0; i < basis.size(); ++i) x = g.mul(x, g.power(basis[i].generator, e[i]));
        if (hit[x]) fail(ErrorKind::InternalInconsistency, "basis does not give unique coordinates");
        hit[x] = true;
        coords[x] = e;
        for (size_t i = basis.size(); i-- > 0;) {
            if (++e[i] < basis[i].order) break;
            e[i] = 0;
        }
    }
    return coords;
}

bool is_endomorphism(const FiniteGroup& g, const std::vector<int>& phi) {
    if (static_cast<int>(phi.size()) != g.n) return false;
    for (int x = 0; x < g.n; ++x)
        for (int y = 0; y < g.n; ++y)
            if (phi[g.mul(x, y)] != g.mul(phi[x], phi[y])) return false;
    return true;
}

std::vector<std::vector<int>> endomorphisms(const FiniteGroup& g, size_t max_order) {
    if (static_cast<size_t>(g.n) > max_order)
        fail(ErrorKind::CapExceeded, "group of order " + std::to_string(g.n) + " exceeds the endomorphism cap");
    auto basis = cyclic_decomposition(g);
    auto coords = basis_coordinates(g, basis);
    std::vector<std::vector<int>> choices;
    for (const auto& f : basis) {
        std::vector<int> c;
        for (int y = 0; y < g.n; ++y)
            if (f.order % g.order(y) == 0) c.push_back(y);
        choices.push_back(c);
    }
    std::vector<std::vector<int>> out;
    std::vector<size_t> pick(basis.size(), 0);
    for (;;) {
        std::vector<int> phi(static_cast<size_t>(g.n));
        for (int x = 0; x < g.n; ++x) {
            int y = g.identity;
            for (size_t i = 0; i < basis.size(); ++i) y = g.mul(y, g.power(choices[i][pick[i]], coords[x][i]));
            phi[x] = y;
        }
        out.push_back(std::move(phi));
        size_t i = basis.size();
        while (i > 0) {
            --i;
            if (++pick[i] < choices[i].size()) break;
            pick[i] = 0;
            if (i == 0) return out;
        }
        if (basis.empty()) return out;
    }
}

bool check_character_witness(const FiniteGroup& h, int u, const CharacterWitness& w, std::string* why) {
    auto no = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    if (static_cast<int>(w.chi.size()) != h.n || static_cast<int>(w.endo.size()) != h.n) return no("wrong table sizes");
    for (int x = 0; x < h.n; ++x)
        for (int y = 0; y < h.n; ++y)
            if (w.chi[h.mul(x, y)] != (w.chi[x] + w.chi[y]) % w.m) return no("chi is not a homomorphism");
    for (int x = 0; x < h.n; ++x) {
        if (x == h.identity) continue;
        const auto& phi = w.endo[x];
        if (!is_endomorphism(h, phi)) return no("endo for " + std::to_string(x) + " is not an endomorphism");
        if (phi[u] != u) return no("endo for " + std::to_string(x) + " moves u");
        if (w.chi[phi[x]] == 0) return no("chi(endo(h)) = 0 for h = " + std::to_string(x));
    }
    return true;
}

namespace {

long modp(long x, long q) { return ((x % q) + q) % q; }

long inverse_mod(long a, long q) {
    for (long b = 1; b < q; ++b)
        if (modp(a * b, q) == 1) return b;
    fail(ErrorKind::ConstructionFailed, "no inverse mod " + std::to_string(q));
}

struct Factored {
    long a;  // unit part
    int k;   // p-adic valuation, n when the value is 0
    int d;   // order exponent, n - k
};

Factored factor(long v, int p, int n) {
    if (v == 0) return {1, n, 0};
    int k = 0;
    while (v % p == 0) {
        v /= p;
        ++k;
    }
    return {v, k, n - k};
}

}  // namespace

CharacterWitness huc_character(const FiniteGroup& h, int m, int u) {
    check_abelian_group(h);
    if (m < 1 || m % exponent(h) != 0)
        fail(ErrorKind::ExponentMismatch,
             "exponent " + std::to_string(exponent(h)) + " does not divide m = " + std::to_string(m));
    if (u < 0 || u >= h.n) fail(ErrorKind::PreconditionViolated, "u is not an element");
    CharacterWitness w;
    w.m = m;
    w.chi.assign(static_cast<size_t>(h.n), 0);
    std::vector<int> ident(static_cast<size_t>(h.n));
    std::iota(ident.begin(), ident.end(), 0);
    w.endo.assign(static_cast<size_t>(h.n), ident);
    if (h.n == 1) return w;

    auto basis = cyclic_decomposition(h);
    auto cc = basis_coordinates(h, basis);
    std::vector<int> exps;  // n_j with order p^{n_j}
    for (const auto& f : basis) {
        int e = 0;
        while (ipow(f.prime, e) < f.order) ++e;
        exps.push_back(e);
    }
    // blocks of consecutive factors sharing a prime
    std::vector<std::pair<size_t, size_t>> blocks;
    for (size_t i = 0; i < basis.size();) {
        size_t j = i;
        while (j < basis.size() && basis[j].prime == basis[i].prime) ++j;
        blocks.push_back({i, j});
        i = j;
    }

    // shear so that the last coordinate of u has maximal order in its block
    for (auto [lo, hi] : blocks) {
        int p = basis[lo].prime;
        size_t k = hi - 1;
        auto d_of = [&](size_t j) { return factor(cc[u][j], p, exps[j]).d; };
        int dmax = 0;
        for (size_t j = lo; j < hi; ++j) dmax = std::max(dmax, d_of(j));
        if (d_of(k) != dmax) {
            size_t i = lo;
            while (d_of(i) != dmax) ++i;
            int mod_k = basis[k].order;
            long mu = ipow(p, exps[k] - exps[i]);
            for (auto& c : cc) c[k] = static_cast<int>(modp(c[k] + mu * c[i], mod_k));
            if (d_of(k) != dmax) fail(ErrorKind::ConstructionFailed, "shear did not raise the order of u");
        }
    }
    std::map<std::vector<int>, int> elem_of;
    for (int x = 0; x < h.n; ++x) elem_of[cc[x]] = x;
    if (static_cast<int>(elem_of.size()) != h.n) fail(ErrorKind::ConstructionFailed, "coordinates lost injectivity");

    for (int x = 0; x < h.n; ++x) {
        long v = 0;
        for (auto [lo, hi] : blocks) v += static_cast<long>(m / basis[hi - 1].order) * cc[x][hi - 1];
        w.chi[x] = static_cast<int>(modp(v, m));
    }

    for (int x = 0; x < h.n; ++x) {
        if (x == h.identity) continue;
        size_t b = 0;
        auto nonzero_in = [&](size_t bi) {
            for (size_t j = blocks[bi].first; j < blocks[bi].second; ++j)
                if (cc[x][j] != 0) return true;
            return false;
        };
        while (!nonzero_in(b)) ++b;
        auto [lo, hi] = blocks[b];
        size_t k = hi - 1;
        if (cc[x][k] != 0) continue;  // identity works
        size_t i = lo;
        while (cc[x][i] == 0) ++i;
        int p = basis[k].prime;
        long qk = basis[k].order;
        Factored fi = factor(cc[u][i], p, exps[i]);
        Factored fk = factor(cc[u][k], p, exps[k]);
        int d = fk.d - fi.d;
        long c = modp((fi.a * ipow(p, d) - fk.a) * inverse_mod(modp(fk.a, qk), qk), qk);
        long mu = ipow(p, exps[k] - exps[i]);
        std::vector<int> phi(static_cast<size_t>(h.n));
        for (int y = 0; y < h.n; ++y) {
            std::vector<int> t = cc[y];
            t[k] = static_cast<int>(modp(mu * cc[y][i] - c * cc[y][k], qk));
            phi[y] = elem_of.at(t);
        }
        w.endo[x] = std::move(phi);
    }

    std::string why;
    if (!check_character_witness(h, u, w, &why)) fail(ErrorKind::ConstructionFailed, why);
    return w;
}

Vec MatrixZm::row(int i) const { return Vec(entries.begin() + i * cols, entries.begin() + (i + 1) * cols); }

Vec MatrixZm::col(int j) const {
    Vec c;
    for (int i = 0; i < rows; ++i) c.push_back(at(i, j));
    return c;
}

namespace {

std::string vec_string(const Vec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

// all vectors of Z_m^k in lexicographic order
template <class F>
void for_each_vector(int m, int k, F f) {
    Vec x(static_cast<size_t>(k), 0);
    for (;;) {
        f(x);
        int i = k - 1;
        while (i >= 0 && x[i] == m - 1) x[i--] = 0;
        if (i < 0) return;
        ++x[i];
    }
}

long dot(const Vec& a, const Vec& b) {
    long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += static_cast<long>(a[i]) * b[i];
    return s;
}

}  // namespace

bool is_subgroup_zm(int m, const std::vector<Vec>& s) {
    if (s.empty()) return false;
    std::set<Vec> set(s.begin(), s.end());
    if (!set.count(Vec(s[0].size(), 0))) return false;
    for (const auto& x : set)
        for (const auto& y : set) {
            Vec z(x.size());
            for (size_t i = 0; i < x.size(); ++i) z[i] = static_cast<int>(modp(x[i] + y[i], m));
            if (!set.count(z)) return false;
        }
    return true;
}

bool is_coset_zm(int m, const std::vector<Vec>& s) {
    if (s.empty()) return false;
    std::set<Vec> set(s.begin(), s.end());
    for (const auto& x : set)
        for (const auto& y : set)
            for (const auto& z : set) {
                Vec t(x.size());
                for (size_t i = 0; i < x.size(); ++i) t[i] = static_cast<int>(modp(x[i] - y[i] + z[i], m));
                if (!set.count(t)) return false;
            }
    return true;
}

std::vector<Vec> solution_set(int m, int k, const std::vector<Vec>& system) {
    std::vector<Vec> out;
    for_each_vector(m, k, [&](const Vec& x) {
        for (const auto& c : system)
            if (modp(dot(c, x), m) != 0) return;
        out.push_back(x);
    });
    return out;
}

std::vector<Vec> annihilator_system(int m, int k, const std::vector<Vec>& h) {
    if (m < 2) fail(ErrorKind::PreconditionViolated, "modulus must be at least 2");
    for (const auto& x : h)
        if (static_cast<int>(x.size()) != k) fail(ErrorKind::NotSubgroup, "vector of the wrong length");
    if (!is_subgroup_zm(m, h)) fail(ErrorKind::NotSubgroup, "set is not a subgroup of Z_m^k");
    std::vector<Vec> system;
    std::set<Vec> span{Vec(static_cast<size_t>(k), 0)};
    for_each_vector(m, k, [&](const Vec& c) {
        for (const auto& x : h)
            if (modp(dot(c, x), m) != 0) return;
        if (span.count(c)) return;
        system.push_back(c);
        // extend the span by multiples of c
        std::vector<Vec> cur(span.begin(), span.end());
        for (const auto& s : cur)
            for (int t = 1; t < m; ++t) {
                Vec v(static_cast<size_t>(k));
                for (int i = 0; i < k; ++i) v[i] = static_cast<int>(modp(s[i] + static_cast<long>(t) * c[i], m));
                span.insert(v);
            }
    });
    std::set<Vec> sol;
    for (auto& v : solution_set(m, k, system)) sol.insert(v);
    std::set<Vec> hs(h.begin(), h.end());
    if (sol != hs) fail(ErrorKind::InternalInconsistency, "annihilator round trip failed");
    return system;
}

HypothesisCheck check_rows_subgroup(const MatrixZm& a) {
    std::vector<Vec> rows;
    for (int i = 0; i < a.rows; ++i) rows.push_back(a.row(i));
    std::set<Vec> set(rows.begin(), rows.end());
    if (!set.count(Vec(static_cast<size_t>(a.cols), 0))) return {false, "rows-subgroup", "zero row missing"};
    for (const auto& x : set)
        for (const auto& y : set) {
            Vec z(x.size());
            for (size_t i = 0; i < x.size(); ++i) z[i] = static_cast<int>(modp(x[i] + y[i], a.m));
            if (!set.count(z)) return {false, "rows-subgroup", vec_string(x) + "+" + vec_string(y)};
        }
    return {};
}

HypothesisCheck check_columns_coset(const MatrixZm& a) {
    std::set<Vec> set;
    for (int j = 0; j < a.cols; ++j) set.insert(a.col(j));
    for (const auto& x : set)
        for (const auto& y : set)
            for (const auto& z : set) {
                Vec t(x.size());
                for (size_t i = 0; i < x.size(); ++i) t[i] = static_cast<int>(modp(x[i] - y[i] + z[i], a.m));
                if (!set.count(t))
                    return {false, "columns-coset", vec_string(x) + "-" + vec_string(y) + "+" + vec_string(z)};
            }
    return {};
}

HypothesisCheck check_row_zero(const MatrixZm& a) {
    for (int i = 0; i < a.rows; ++i) {
        bool zero = false;
        for (int j = 0; j < a.cols; ++j) zero = zero || a.at(i, j) == 0;
        if (!zero) return {false, "row-zero", vec_string(a.row(i))};
    }
    return {};
}

int find_zero_column(const MatrixZm& a) {
    if (a.rows < 1 || a.cols < 1) fail(ErrorKind::PreconditionViolated, "empty matrix");
    for (const auto& chk : {check_rows_subgroup(a), check_columns_coset(a), check_row_zero(a)})
        if (!chk.ok) fail(ErrorKind::HypothesisFailed, chk.which + ": " + chk.witness);
    int found = -1;
    for (int j = 0; j < a.cols && found < 0; ++j) {
        bool zero = true;
        for (int i = 0; i < a.rows; ++i) zero = zero && a.at(i, j) == 0;
        if (zero) found = j;
    }
    if (found < 0) fail(ErrorKind::PropositionViolated, "hypotheses hold but no column is constantly 0");

    // the annihilator argument must also produce a zero column
    std::vector<Vec> rows;
    for (int i = 0; i < a.rows; ++i) rows.push_back(a.row(i));
    bool produced = false;
    for_each_vector(a.m, a.cols, [&](const Vec& c) {
        if (produced) return;
        long sum = 0;
        for (int v : c) sum += v;
        if (modp(sum, a.m) != 1) return;
        for (const auto& r : rows)
            if (modp(dot(c, r), a.m) != 0) return;
        Vec d(static_cast<size_t>(a.rows), 0);
        for (int j = 0; j < a.cols; ++j)
            for (int i = 0; i < a.rows; ++i) d[i] = static_cast<int>(modp(d[i] + static_cast<long>(c[j]) * a.at(i, j), a.m));
        if (d != Vec(static_cast<size_t>(a.rows), 0))
            fail(ErrorKind::PropositionViolated, "combination " + vec_string(c) + " is not the zero column");
        produced = true;
    });
    if (!produced) fail(ErrorKind::PropositionViolated, "no annihilating combination with coefficient sum 1");
    return found;
}

}  // namespace autalg
