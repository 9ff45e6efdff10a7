#include "autalg/random.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace autalg {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::vector<std::string> names(const char* prefix, int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

}  // namespace

AutomaticAlgebra random_algebra(Rng& rng, int max_states, int max_letters, double p_undefined) {
    int nq = uniform(rng, 1, max_states), ns = uniform(rng, 1, max_letters);
    std::bernoulli_distribution undef(p_undefined);
    std::vector<int> delta(static_cast<size_t>(nq * ns));
    for (int& d : delta) d = undef(rng) ? AutomaticAlgebra::kUndefined : uniform(rng, 0, nq - 1);
    return AutomaticAlgebra(names("q", nq), names("a", ns), delta);
}

AutomaticAlgebra random_commuting_connected(Rng& rng, int max_states) {
    // group elements as pairs (x mod n1, y mod n2)
    int n1 = uniform(rng, 1, max_states), n2 = 1;
    if (max_states >= 4 && uniform(rng, 0, 3) == 0) n1 = 2, n2 = 2;
    const int order = n1 * n2;
    auto add = [&](int g, int h) { return ((g / n2 + h / n2) % n1) * n2 + (g % n2 + h % n2) % n2; };
    std::vector<int> gens;
    if (n2 == 2)
        gens = {n2, 1};  // (1,0), (0,1)
    else
        gens = {std::min(1, order - 1)};
    int extra = uniform(rng, 0, 2);
    for (int i = 0; i < extra; ++i) gens.push_back(uniform(rng, 0, order - 1));
    std::shuffle(gens.begin(), gens.end(), rng);
    std::vector<int> relabel(static_cast<size_t>(order));
    std::iota(relabel.begin(), relabel.end(), 0);
    std::shuffle(relabel.begin(), relabel.end(), rng);
    const int ns = static_cast<int>(gens.size());
    std::vector<int> delta(static_cast<size_t>(order * ns));
    for (int g = 0; g < order; ++g)
        for (int a = 0; a < ns; ++a) delta[relabel[g] * ns + a] = relabel[add(g, gens[a])];
    return AutomaticAlgebra(names("q", order), names("a", ns), delta);
}

}  // namespace autalg
