#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "autalg/algebra.hpp"
#include "autalg/groups.hpp"

namespace testing_support {

struct Named {
    std::string label;
    autalg::AutomaticAlgebra m;
};

inline std::vector<Named> catalog_algebras(bool with_chain = true) {
    using autalg::catalog;
    std::vector<Named> out;
    for (const char* n : {"B", "L", "L3star", "R", "C3id", "T1", "T2", "K1", "K2", "K3"}) out.push_back({n, catalog(n)});
    for (long m = 0; m <= 2; ++m) out.push_back({"F" + std::to_string(m), catalog("F", {m})});
    for (long i = 0; i <= 5; ++i) out.push_back({"N" + std::to_string(i), catalog("N", {i})});
    out.push_back({"C3", catalog("C", {3})});
    out.push_back({"C5", catalog("C", {5})});
    if (with_chain)
        for (long n = 1; n <= 4; ++n) out.push_back({"chain" + std::to_string(n), catalog("chain", {n})});
    return out;
}

// Z_{o1} x ... x Z_{or}, elements relabelled by a seeded shuffle (seed 0: no shuffle)
inline autalg::FiniteGroup product_group(const std::vector<int>& orders, unsigned seed = 0) {
    int n = 1;
    for (int o : orders) n *= o;
    auto decode = [&](int x) {
        std::vector<int> v;
        for (int o : orders) v.push_back(x % o), x /= o;
        return v;
    };
    auto encode = [&](const std::vector<int>& v) {
        int x = 0, w = 1;
        for (size_t i = 0; i < orders.size(); ++i) x += v[i] * w, w *= orders[i];
        return x;
    };
    std::vector<int> relabel(static_cast<size_t>(n));
    std::iota(relabel.begin(), relabel.end(), 0);
    if (seed) {
        std::mt19937 rng(seed);
        std::shuffle(relabel.begin(), relabel.end(), rng);
    }
    autalg::FiniteGroup g;
    g.n = n;
    g.table.assign(static_cast<size_t>(n) * n, 0);
    g.labels.resize(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) {
        g.labels[relabel[x]] = "g" + std::to_string(x);
        for (int y = 0; y < n; ++y) {
            auto a = decode(x), b = decode(y);
            for (size_t i = 0; i < orders.size(); ++i) a[i] = (a[i] + b[i]) % orders[i];
            g.table[static_cast<size_t>(relabel[x]) * n + relabel[y]] = relabel[encode(a)];
        }
    }
    g.identity = relabel[0];
    return g;
}

// one invariant-factor list per isomorphism type of abelian group of order <= 12
inline std::vector<std::vector<int>> abelian_types_upto_12() {
    return {{},     {2},    {3},  {4},     {2, 2}, {5},  {6},     {7},     {8},
            {2, 4}, {2, 2, 2}, {9}, {3, 3}, {10},   {11}, {12},    {2, 6}};
}

// All homomorphisms G -> target given by a table, by brute force over images of
// greedily chosen generators. target_mul(a, b) on 0..target_n-1, target identity 0.
inline std::vector<std::vector<int>> brute_homs(const autalg::FiniteGroup& g, int target_n,
                                                const std::function<int(int, int)>& target_mul, int target_id) {
    std::vector<int> gens;
    std::vector<bool> span(static_cast<size_t>(g.n), false);
    auto close = [&]() {
        std::vector<int> elems{g.identity};
        std::fill(span.begin(), span.end(), false);
        span[g.identity] = true;
        for (size_t i = 0; i < elems.size(); ++i)
            for (int s : gens)
                if (int z = g.mul(elems[i], s); !span[z]) span[z] = true, elems.push_back(z);
    };
    close();
    for (int x = 0; x < g.n; ++x)
        if (!span[x]) gens.push_back(x), close();
    std::vector<std::vector<int>> out;
    std::vector<int> img(gens.size(), 0);
    while (true) {
        std::vector<int> phi(static_cast<size_t>(g.n), -1);
        phi[g.identity] = target_id;
        std::vector<int> order{g.identity};
        bool ok = true;
        for (size_t i = 0; i < order.size() && ok; ++i)
            for (size_t k = 0; k < gens.size() && ok; ++k) {
                int z = g.mul(order[i], gens[k]);
                int v = target_mul(phi[order[i]], img[k]);
                if (phi[z] < 0)
                    phi[z] = v, order.push_back(z);
                else
                    ok = phi[z] == v;
            }
        for (int x = 0; x < g.n && ok; ++x)
            for (int y = 0; y < g.n && ok; ++y) ok = phi[g.mul(x, y)] == target_mul(phi[x], phi[y]);
        if (ok) out.push_back(phi);
        size_t k = 0;
        while (k < img.size() && ++img[k] == target_n) img[k++] = 0;
        if (k == img.size()) break;
    }
    return out;
}

}  // namespace testing_support
