#include "autalg/compat_ops.hpp"

#include <algorithm>
#include <set>

#include "autalg/error.hpp"
#include "autalg/structure.hpp"

namespace autalg {

std::vector<std::vector<int>> PartialOperation::graph() const {
    std::vector<std::vector<int>> out;
    for (const auto& [args, v] : table) {
        auto row = args;
        row.push_back(v);
        out.push_back(std::move(row));
    }
    return out;
}

FiniteGroup subgroup_group(const FiniteGroup& g, const std::vector<int>& elems) {
    FiniteGroup h;
    h.n = static_cast<int>(elems.size());
    h.table.resize(static_cast<size_t>(h.n) * h.n);
    auto pos = [&](int x) {
        auto it = std::find(elems.begin(), elems.end(), x);
        if (it == elems.end()) fail(ErrorKind::NotSubgroup, "subset is not closed");
        return static_cast<int>(it - elems.begin());
    };
    for (int i = 0; i < h.n; ++i)
        for (int j = 0; j < h.n; ++j) h.table[static_cast<size_t>(i) * h.n + j] = pos(g.mul(elems[i], elems[j]));
    h.identity = pos(g.identity);
    for (int x : elems) h.labels.push_back(x < static_cast<int>(g.labels.size()) ? g.labels[x] : std::to_string(x));
    return h;
}

namespace {

int element_code(const AutomaticAlgebra& m, const std::string& name) {
    auto e = m.find(name);
    if (!e) fail(ErrorKind::UnknownName, "no element named '" + name + "'");
    return m.code(*e);
}

void expect_params(const std::string& name, const std::vector<std::string>& p, size_t n) {
    if (p.size() != n)
        fail(ErrorKind::BadParams, name + " takes " + std::to_string(n) + " parameter(s), got " + std::to_string(p.size()));
}

std::vector<AbelianGroupData> permutational_groups(const AutomaticAlgebra& m, const std::string& op) {
    PermProfile prof = permutation_profile(m);
    if (!prof.permutational) fail(ErrorKind::PreconditionViolated, op + " needs every letter to be a permutation");
    if (!prof.commuting) fail(ErrorKind::PreconditionViolated, op + " needs commuting letters");
    std::vector<AbelianGroupData> out;
    for (const auto& c : components(m)) out.push_back(component_group(m, c));
    return out;
}

// every letter total and constant, paired one-to-one with the states
std::vector<int> constant_setting(const AutomaticAlgebra& m, const std::string& op) {
    if (!m.is_total()) fail(ErrorKind::PreconditionViolated, op + " needs a total algebra");
    if (m.num_letters() != m.num_states())
        fail(ErrorKind::PreconditionViolated, op + " needs as many letters as states");
    std::vector<int> value(static_cast<size_t>(m.num_letters()));
    std::set<int> seen;
    for (int a = 0; a < m.num_letters(); ++a) {
        value[a] = m.delta(0, a);
        for (int q = 0; q < m.num_states(); ++q)
            if (m.delta(q, a) != value[a])
                fail(ErrorKind::PreconditionViolated, op + " needs constant letters");
        seen.insert(value[a]);
    }
    if (static_cast<int>(seen.size()) != m.num_states())
        fail(ErrorKind::PreconditionViolated, op + " needs distinct letter values");
    return value;
}

// index i in the chain order: a_i is letter i, q_i its value
struct ChainIndex {
    std::vector<int> of_code;  // code -> i, or -1 for 0
};

ChainIndex chain_index(const AutomaticAlgebra& m, const std::vector<int>& value) {
    ChainIndex c;
    c.of_code.assign(static_cast<size_t>(m.size()), -1);
    for (int a = 0; a < m.num_letters(); ++a) {
        c.of_code[m.letter_code(a)] = a;
        c.of_code[m.state_code(value[a])] = a;
    }
    return c;
}

int group_of_state(const std::vector<AbelianGroupData>& groups, int q, int* elem) {
    for (size_t i = 0; i < groups.size(); ++i) {
        int e = groups[i].element_of_state(q);
        if (e >= 0) {
            *elem = e;
            return static_cast<int>(i);
        }
    }
    fail(ErrorKind::InternalInconsistency, "state outside every component");
}

int image_of(const AbelianGroupData& g, int letter) {
    auto it = std::find(g.letters.begin(), g.letters.end(), letter);
    if (it == g.letters.end()) fail(ErrorKind::InternalInconsistency, "letter missing from component");
    return g.letter_images[it - g.letters.begin()];
}

// least letter whose image in g is x
int letter_with_image(const AutomaticAlgebra& m, const AbelianGroupData& g, int x) {
    for (int a = 0; a < m.num_letters(); ++a)
        if (image_of(g, a) == x) return a;
    fail(ErrorKind::PreconditionViolated, "no letter acts as " + g.group.labels[x]);
}

void require_affine(const AutomaticAlgebra& m, const std::string& op) {
    auto rep = letter_affine_analysis(m);
    if (!rep.affine) fail(ErrorKind::PreconditionViolated, op + " needs a letter-affine algebra: " + rep.reason);
}

}  // namespace

PartialOperation make_compatible_op(const AutomaticAlgebra& m, const std::string& name,
                                    const std::vector<std::string>& params) {
    PartialOperation op;
    op.name = name;
    const int n = m.size(), z = m.zero_code();
    auto is_state = [&](int c) { return m.code_is_state(c); };
    auto is_letter = [&](int c) { return m.code_is_letter(c); };

    if (name == "g") {
        expect_params(name, params, 2);
        int u = element_code(m, params[0]), v = element_code(m, params[1]);
        if (!is_letter(u) && !is_letter(v)) fail(ErrorKind::PreconditionViolated, "g needs u or v to be a letter");
        op.name = "g_" + params[0] + "," + params[1];
        op.arity = 2;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) op.table[{x, y}] = (x == u && y == v) ? u : z;
        return op;
    }
    if (name == "join") {
        expect_params(name, params, 0);
        op.arity = 2;
        for (int x = 0; x < n; ++x) op.table[{x, x}] = x;
        for (int q = 0; q < m.num_states(); ++q) {
            op.table[{z, q}] = q;
            op.table[{q, z}] = q;
        }
        return op;
    }
    if (name == "qmeet") {
        expect_params(name, params, 0);
        if (!m.is_total()) fail(ErrorKind::PreconditionViolated, "qmeet needs a total algebra");
        op.arity = 2;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                op.table[{x, y}] = ((is_state(x) && is_state(y)) || (is_letter(x) && is_letter(y))) ? x : z;
        return op;
    }
    if (name == "meet") {
        expect_params(name, params, 0);
        auto value = constant_setting(m, name);
        auto idx = chain_index(m, value);
        op.arity = 2;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                int r = z;
                bool same = (is_state(x) && is_state(y)) || (is_letter(x) && is_letter(y));
                if (same) {
                    int i = std::max(idx.of_code[x], idx.of_code[y]);
                    r = is_state(x) ? m.state_code(value[i]) : m.letter_code(i);
                }
                op.table[{x, y}] = r;
            }
        return op;
    }
    if (name == "h") {
        expect_params(name, params, 0);
        auto value = constant_setting(m, name);
        const int q1 = m.state_code(value[0]), a1 = m.letter_code(0);
        op.arity = 3;
        auto low = [&](int c) { return c == z || c == q1; };
        for (int x = 0; x < n; ++x) {
            if (x == a1) continue;
            for (int y = 0; y < n; ++y)
                for (int w = 0; w < n; ++w)
                    op.table[{x, y, w}] = (x == q1 && low(y) && low(w)) ? ((y == q1 || w == q1) ? q1 : z) : z;
        }
        return op;
    }
    if (name == "lambda") {
        expect_params(name, params, 1);
        auto groups = permutational_groups(m, name);
        auto g = m.find_state(params[0]);
        if (!g) fail(ErrorKind::UnknownName, "no state named '" + params[0] + "'");
        int ge = 0;
        int gi = group_of_state(groups, *g, &ge);
        op.name = "lambda_" + params[0];
        op.arity = 1;
        for (int x = 0; x < n; ++x) {
            int r = x;
            if (is_state(x)) {
                int e = groups[gi].element_of_state(x);
                if (e >= 0) r = groups[gi].states[groups[gi].group.mul(ge, e)];
            }
            op.table[{x}] = r;
        }
        return op;
    }
    if (name == "diamond") {
        expect_params(name, params, 0);
        auto groups = permutational_groups(m, name);
        op.arity = 2;
        for (const auto& g : groups) {
            std::set<int> h(g.subgroup_h.begin(), g.subgroup_h.end());
            for (int u = 0; u < g.group.n; ++u)
                for (int v = 0; v < g.group.n; ++v) {
                    bool in = h.count(g.group.mul(g.group.inverse(u), v)) > 0;
                    op.table[{g.states[u], g.states[v]}] = in ? g.states[u] : z;
                }
        }
        for (int a = 0; a < m.num_letters(); ++a)
            for (int b = 0; b < m.num_letters(); ++b) op.table[{m.letter_code(a), m.letter_code(b)}] = m.letter_code(a);
        op.table[{z, z}] = z;
        return op;
    }
    if (name == "pbar") {
        expect_params(name, params, 1);
        auto groups = permutational_groups(m, name);
        require_affine(m, name);
        int ci = 0;
        try {
            ci = std::stoi(params[0]);
        } catch (...) {
            fail(ErrorKind::BadParams, "pbar needs a component index");
        }
        if (ci < 0 || ci >= static_cast<int>(groups.size())) fail(ErrorKind::IndexOutOfRange, "no component " + params[0]);
        const auto& g = groups[ci];
        auto p = [&](int x, int y, int w) { return g.group.mul(g.group.mul(x, g.group.inverse(y)), w); };
        op.name = "pbar_" + params[0];
        op.arity = 3;
        for (int x = 0; x < g.group.n; ++x)
            for (int y = 0; y < g.group.n; ++y)
                for (int w = 0; w < g.group.n; ++w) op.table[{g.states[x], g.states[y], g.states[w]}] = g.states[p(x, y, w)];
        for (int a = 0; a < m.num_letters(); ++a)
            for (int b = 0; b < m.num_letters(); ++b)
                for (int c = 0; c < m.num_letters(); ++c) {
                    int t = p(image_of(g, a), image_of(g, b), image_of(g, c));
                    op.table[{m.letter_code(a), m.letter_code(b), m.letter_code(c)}] =
                        m.letter_code(letter_with_image(m, g, t));
                }
        op.table[{z, z, z}] = z;
        return op;
    }
    fail(ErrorKind::UnknownName, "unknown compatible operation '" + name + "'");
}

int psi_fixed_point(const AutomaticAlgebra& m, int component) {
    auto groups = permutational_groups(m, "psi");
    if (component < 0 || component >= static_cast<int>(groups.size()))
        fail(ErrorKind::IndexOutOfRange, "no component " + std::to_string(component));
    const auto& g = groups[component];
    int ni = g.group.n / static_cast<int>(g.subgroup_h.size());
    int u = g.group.power(image_of(g, 0), ni);
    auto it = std::find(g.subgroup_h.begin(), g.subgroup_h.end(), u);
    if (it == g.subgroup_h.end()) fail(ErrorKind::InternalInconsistency, "a_i^{n_i} outside H_i");
    return static_cast<int>(it - g.subgroup_h.begin());
}

PartialOperation psi_op(const AutomaticAlgebra& m, int component, const std::vector<int>& phi) {
    auto groups = permutational_groups(m, "psi");
    require_affine(m, "psi");
    if (component < 0 || component >= static_cast<int>(groups.size()))
        fail(ErrorKind::IndexOutOfRange, "no component " + std::to_string(component));
    const auto& g = groups[component];
    const auto& hs = g.subgroup_h;
    FiniteGroup h = subgroup_group(g.group, hs);
    if (static_cast<int>(phi.size()) != h.n || !is_endomorphism(h, phi))
        fail(ErrorKind::PreconditionViolated, "phi is not an endomorphism of H_i");
    int u = psi_fixed_point(m, component);
    if (phi[u] != u) fail(ErrorKind::PreconditionViolated, "phi does not fix u_i");
    const int ai = image_of(g, 0);
    const int ni = g.group.n / h.n;
    // xi(a_i^t k) = a_i^t phi(k), 0 <= t < n_i
    std::vector<int> xi(static_cast<size_t>(g.group.n), -1);
    for (int t = 0; t < ni; ++t) {
        int at = g.group.power(ai, t);
        for (int k = 0; k < h.n; ++k) {
            int x = g.group.mul(at, hs[k]);
            int v = g.group.mul(at, hs[phi[k]]);
            if (xi[x] >= 0 && xi[x] != v) fail(ErrorKind::InternalInconsistency, "xi is not well defined");
            xi[x] = v;
        }
    }
    for (int x : xi)
        if (x < 0) fail(ErrorKind::InternalInconsistency, "a_i does not generate G_i/H_i");
    PartialOperation op;
    op.name = "psi";
    op.arity = 1;
    for (int x = 0; x < g.group.n; ++x) op.table[{g.states[x]}] = g.states[xi[x]];
    for (int a = 0; a < m.num_letters(); ++a)
        op.table[{m.letter_code(a)}] = m.letter_code(letter_with_image(m, g, xi[image_of(g, a)]));
    op.table[{m.zero_code()}] = m.zero_code();
    return op;
}

}  // namespace autalg
