#include "autalg/powers.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <unordered_set>

#include "autalg/error.hpp"

namespace autalg {

PowerElement power_element(const AutomaticAlgebra& m, int base, const std::vector<std::pair<int, int>>& overrides,
                           int n) {
    if (n < 1) fail(ErrorKind::IndexOutOfRange, "index size must be at least 1");
    if (base < 0 || base >= m.size()) fail(ErrorKind::IndexOutOfRange, "base is not an element code");
    PowerElement x{std::vector<int>(static_cast<size_t>(n), base)};
    std::vector<bool> used(static_cast<size_t>(n), false);
    for (auto [i, v] : overrides) {
        if (i < 0 || i >= n)
            fail(ErrorKind::IndexOutOfRange, "override index " + std::to_string(i) + " outside 0.." + std::to_string(n - 1));
        if (v < 0 || v >= m.size()) fail(ErrorKind::IndexOutOfRange, "override value is not an element code");
        if (used[i]) fail(ErrorKind::DuplicateIndex, "index " + std::to_string(i) + " overridden twice");
        used[i] = true;
        x.values[i] = v;
    }
    return x;
}

PowerElement power_mul(const AutomaticAlgebra& m, const PowerElement& x, const PowerElement& y) {
    PowerElement z;
    z.values.resize(x.values.size());
    for (size_t i = 0; i < x.values.size(); ++i) z.values[i] = m.mul(x.values[i], y.values[i]);
    return z;
}

std::string power_string(const AutomaticAlgebra& m, const PowerElement& x) {
    std::string s = "(";
    for (size_t i = 0; i < x.values.size(); ++i) {
        if (i) s += ",";
        s += m.code_name(x.values[i]);
    }
    return s + ")";
}

std::vector<PowerElement> generate_subuniverse(const AutomaticAlgebra& m, int n, const std::vector<PowerElement>& gens,
                                               size_t max_elements) {
    std::vector<PowerElement> out;
    std::set<std::vector<int>> seen;
    auto add = [&](PowerElement x) {
        if (!seen.insert(x.values).second) return;
        if (out.size() >= max_elements)
            fail(ErrorKind::CapExceeded, "subuniverse exceeds " + std::to_string(max_elements) + " elements");
        out.push_back(std::move(x));
    };
    for (const auto& g : gens) {
        if (g.size() != n) fail(ErrorKind::IndexOutOfRange, "generator has the wrong index size");
        add(g);
    }
    // every pair (i, j) is multiplied once, in both orders
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = 0; j <= i; ++j) {
            add(power_mul(m, out[i], out[j]));
            if (i != j) add(power_mul(m, out[j], out[i]));
        }
    return out;
}

Groupoid groupoid_from_elements(const AutomaticAlgebra& m, const std::vector<PowerElement>& elems) {
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i].values, static_cast<int>(i));
    Groupoid g;
    g.n = static_cast<int>(elems.size());
    g.table.resize(elems.size() * elems.size());
    for (size_t i = 0; i < elems.size(); ++i) {
        g.labels.push_back(power_string(m, elems[i]));
        for (size_t j = 0; j < elems.size(); ++j) {
            auto it = index.find(power_mul(m, elems[i], elems[j]).values);
            if (it == index.end()) fail(ErrorKind::InternalInconsistency, "element set is not closed under product");
            g.table[i * elems.size() + j] = it->second;
        }
    }
    return g;
}

namespace {

// closure of in[] after adding x, in place
void close_with(const Groupoid& a, std::vector<bool>& in, std::vector<int>& members, int x) {
    if (in[x]) return;
    in[x] = true;
    members.push_back(x);
    for (size_t i = 0; i < members.size(); ++i)
        for (size_t j = 0; j <= i; ++j)
            for (int z : {a.mul(members[i], members[j]), a.mul(members[j], members[i])})
                if (!in[z]) {
                    in[z] = true;
                    members.push_back(z);
                }
}

}  // namespace

// Repeatedly adds the element whose closure covers the most new elements;
// ties go to the least index.
std::vector<int> greedy_generators(const Groupoid& a) {
    std::vector<int> gens;
    std::vector<bool> in(static_cast<size_t>(a.n), false);
    std::vector<int> members;
    while (members.size() < static_cast<size_t>(a.n)) {
        int best = -1;
        size_t best_size = 0;
        for (int x = 0; x < a.n; ++x) {
            if (in[x]) continue;
            std::vector<bool> in2 = in;
            std::vector<int> m2 = members;
            close_with(a, in2, m2, x);
            if (best < 0 || m2.size() > best_size) {
                best = x;
                best_size = m2.size();
            }
        }
        gens.push_back(best);
        close_with(a, in, members, best);
    }
    return gens;
}

namespace {

class HomSearch {
public:
    HomSearch(const Groupoid& a, const Groupoid& t, const HomOptions& o, const std::function<bool(const FiniteMap&)>& visit)
        : a_(a), t_(t), opt_(o), visit_(visit), h_(static_cast<size_t>(a.n), -1), used_(static_cast<size_t>(t.n), 0) {
        gens_ = greedy_generators(a);
    }

    void run() {
        if (!opt_.preset.empty()) {
            if (opt_.preset.size() != static_cast<size_t>(a_.n)) fail(ErrorKind::BadParams, "preset has the wrong size");
            for (int x = 0; x < a_.n; ++x)
                if (opt_.preset[x] >= 0 && !set(x, opt_.preset[x])) return;
            if (!propagate(0)) return;
        }
        dfs(0);
    }

private:
    bool set(int x, int v) {
        if (h_[x] >= 0) return h_[x] == v;
        if (opt_.injective_only && used_[v]) return false;
        h_[x] = v;
        ++used_[v];
        trail_.push_back(x);
        defined_.push_back(x);
        return true;
    }

    // h(xy) = h(x)h(y) for every newly defined x against everything defined
    bool propagate(size_t from) {
        for (size_t k = from; k < trail_.size(); ++k) {
            int x = trail_[k];
            for (size_t j = 0; j < defined_.size(); ++j) {
                int y = defined_[j];
                if (!set(a_.mul(x, y), t_.mul(h_[x], h_[y]))) return false;
                if (!set(a_.mul(y, x), t_.mul(h_[y], h_[x]))) return false;
            }
        }
        return true;
    }

    void undo(size_t mark) {
        while (trail_.size() > mark) {
            int x = trail_.back();
            trail_.pop_back();
            defined_.pop_back();
            --used_[h_[x]];
            h_[x] = -1;
        }
    }

    void dfs(size_t depth) {
        if (stop_) return;
        if (depth == gens_.size()) {
            ++found_;
            if (!visit_(h_) || (opt_.limit && found_ >= opt_.limit)) stop_ = true;
            return;
        }
        int g = gens_[depth];
        for (int v = 0; v < t_.n && !stop_; ++v) {
            size_t mark = trail_.size();
            if (set(g, v) && propagate(mark)) dfs(depth + 1);
            undo(mark);
        }
    }

    const Groupoid& a_;
    const Groupoid& t_;
    HomOptions opt_;
    const std::function<bool(const FiniteMap&)>& visit_;
    size_t found_ = 0;
    bool stop_ = false;
    std::vector<int> gens_;
    FiniteMap h_;
    std::vector<int> used_;
    std::vector<int> trail_, defined_;
};

}  // namespace

void for_each_hom(const Groupoid& a, const Groupoid& target, const HomOptions& opt,
                  const std::function<bool(const FiniteMap&)>& visit) {
    if (static_cast<size_t>(a.n) > opt.max_elements)
        fail(ErrorKind::CapExceeded, "hom search source has " + std::to_string(a.n) + " elements, cap is " +
                                         std::to_string(opt.max_elements));
    HomSearch(a, target, opt, visit).run();
}

std::vector<FiniteMap> enumerate_homs(const Groupoid& a, const Groupoid& target, const HomOptions& opt) {
    std::vector<FiniteMap> out;
    for_each_hom(a, target, opt, [&](const FiniteMap& h) {
        out.push_back(h);
        return true;
    });
    return out;
}

std::vector<FiniteMap> enumerate_homs(const Groupoid& a, const AutomaticAlgebra& m, const HomOptions& opt) {
    Groupoid t = as_groupoid(m);
    return enumerate_homs(a, t, opt);
}

namespace {

class ExtendSearch {
public:
    ExtendSearch(const Groupoid& a, const Groupoid& t) : a_(a), t_(t) {
        for (int x = 0; x < a.n; ++x)
            for (int y = 0; y < a.n; ++y) {
                int z = a.mul(x, y);
                int id = static_cast<int>(tri_.size());
                tri_.push_back({x, y, z});
                for (int e : {x, y, z}) watch_[e].push_back(id);
            }
    }

    bool solve(std::vector<uint64_t> dom) {
        if (!revise(dom)) return false;
        int best = -1, bc = 65;
        for (int x = 0; x < a_.n; ++x) {
            int c = std::popcount(dom[x]);
            if (c > 1 && c < bc) best = x, bc = c;
        }
        if (best < 0) return true;
        for (int v = 0; v < t_.n; ++v) {
            if (!(dom[best] >> v & 1)) continue;
            auto d = dom;
            d[best] = uint64_t{1} << v;
            if (solve(std::move(d))) return true;
        }
        return false;
    }

private:
    bool revise(std::vector<uint64_t>& dom) {
        std::vector<int> queue(tri_.size());
        std::vector<char> queued(tri_.size(), 1);
        for (size_t i = 0; i < tri_.size(); ++i) queue[i] = static_cast<int>(i);
        while (!queue.empty()) {
            int id = queue.back();
            queue.pop_back();
            queued[id] = 0;
            auto [x, y, z] = tri_[id];
            uint64_t nx = 0, ny = 0, nz = 0;
            for (int u = 0; u < t_.n; ++u) {
                if (!(dom[x] >> u & 1)) continue;
                for (int v = 0; v < t_.n; ++v) {
                    if (!(dom[y] >> v & 1)) continue;
                    int w = t_.mul(u, v);
                    if (dom[z] >> w & 1) {
                        nx |= uint64_t{1} << u;
                        ny |= uint64_t{1} << v;
                        nz |= uint64_t{1} << w;
                    }
                }
            }
            // x, y, z need not be distinct; intersect in order
            uint64_t fx = dom[x] & nx;
            uint64_t fy = (y == x ? fx : dom[y]) & ny;
            if (y == x) fx = fy;
            uint64_t fz = dom[z] & nz;
            if (z == x) fz &= fx;
            if (z == y) fz &= fy;
            if (z == x) fx = fz;
            if (z == y) fy = fz;
            for (auto [e, f] : {std::pair{x, fx}, std::pair{y, fy}, std::pair{z, fz}}) {
                if (!f) return false;
                if (f != dom[e]) {
                    dom[e] = f;
                    for (int w : watch_[e])
                        if (!queued[w]) queued[w] = 1, queue.push_back(w);
                }
            }
        }
        return true;
    }

    const Groupoid& a_;
    const Groupoid& t_;
    std::vector<std::array<int, 3>> tri_;
    std::map<int, std::vector<int>> watch_;
};

}  // namespace

bool hom_extends(const Groupoid& a, const Groupoid& target, const FiniteMap& preset) {
    if (target.n > 64) fail(ErrorKind::CapExceeded, "hom_extends needs a target of at most 64 elements");
    if (preset.size() != static_cast<size_t>(a.n)) fail(ErrorKind::BadParams, "preset has the wrong size");
    uint64_t all = target.n == 64 ? ~uint64_t{0} : (uint64_t{1} << target.n) - 1;
    std::vector<uint64_t> dom(static_cast<size_t>(a.n), all);
    for (int x = 0; x < a.n; ++x) {
        if (preset[x] >= target.n) return false;
        if (preset[x] >= 0) dom[x] = uint64_t{1} << preset[x];
    }
    return ExtendSearch(a, target).solve(std::move(dom));
}

bool is_hom(const Groupoid& a, const Groupoid& target, const FiniteMap& h) {
    if (static_cast<int>(h.size()) != a.n) return false;
    for (int v : h)
        if (v < 0 || v >= target.n) return false;
    for (int x = 0; x < a.n; ++x)
        for (int y = 0; y < a.n; ++y)
            if (h[a.mul(x, y)] != target.mul(h[x], h[y])) return false;
    return true;
}

bool is_injective(const FiniteMap& h) {
    std::set<int> s(h.begin(), h.end());
    return s.size() == h.size();
}

bool is_compatible(const AutomaticAlgebra& m, const std::vector<std::vector<int>>& rel) {
    if (rel.empty()) return true;
    const size_t k = rel[0].size();
    for (const auto& x : rel)
        if (x.size() != k) return false;
    // tuples as base-|M| integers; a bitmap when |M|^k is small
    const uint64_t base = static_cast<uint64_t>(m.size());
    long double span = 1;
    for (size_t i = 0; i < k; ++i) span *= static_cast<long double>(base);
    if (span > 1e18L) {
        std::set<std::vector<int>> r(rel.begin(), rel.end());
        for (const auto& x : r)
            for (const auto& y : r) {
                std::vector<int> z(k);
                for (size_t i = 0; i < k; ++i) z[i] = m.mul(x[i], y[i]);
                if (!r.count(z)) return false;
            }
        return true;
    }
    auto encode = [&](const std::vector<int>& x) {
        uint64_t c = 0;
        for (size_t i = 0; i < k; ++i) c = c * base + static_cast<uint64_t>(x[i]);
        return c;
    };
    std::vector<std::vector<int>> r(rel.begin(), rel.end());
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    std::vector<bool> bitmap;
    std::unordered_set<uint64_t> hashed;
    const bool use_bitmap = span <= static_cast<long double>(1u << 28);
    if (use_bitmap) bitmap.assign(static_cast<size_t>(span), false);
    for (const auto& x : r) {
        if (use_bitmap)
            bitmap[encode(x)] = true;
        else
            hashed.insert(encode(x));
    }
    std::vector<int> z(k);
    for (const auto& x : r)
        for (const auto& y : r) {
            for (size_t i = 0; i < k; ++i) z[i] = m.mul(x[i], y[i]);
            uint64_t c = encode(z);
            if (use_bitmap ? !bitmap[c] : !hashed.count(c)) return false;
        }
    return true;
}

}  // namespace autalg
