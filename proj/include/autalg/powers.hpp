#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "autalg/algebra.hpp"

namespace autalg {

// Tuple of element codes over the index set {0..n-1}.
struct PowerElement {
    std::vector<int> values;

    int size() const { return static_cast<int>(values.size()); }
    friend bool operator==(const PowerElement& a, const PowerElement& b) { return a.values == b.values; }
    friend bool operator<(const PowerElement& a, const PowerElement& b) { return a.values < b.values; }
};

// base everywhere except at the overridden indices. Throws DuplicateIndex,
// IndexOutOfRange.
PowerElement power_element(const AutomaticAlgebra& m, int base, const std::vector<std::pair<int, int>>& overrides,
                           int n);
PowerElement power_mul(const AutomaticAlgebra& m, const PowerElement& x, const PowerElement& y);
std::string power_string(const AutomaticAlgebra& m, const PowerElement& x);

// Generators first (deduplicated, in the given order), then new products in
// discovery order. Throws CapExceeded past max_elements.
std::vector<PowerElement> generate_subuniverse(const AutomaticAlgebra& m, int n, const std::vector<PowerElement>& gens,
                                               size_t max_elements = std::numeric_limits<size_t>::max());

// Table of the closed set; throws InternalInconsistency if it is not closed.
Groupoid groupoid_from_elements(const AutomaticAlgebra& m, const std::vector<PowerElement>& elems);

constexpr size_t kDefaultHomCap = 64;

// image (target element index) for each element of A
using FiniteMap = std::vector<int>;

struct HomOptions {
    bool injective_only = false;
    size_t max_elements = kDefaultHomCap;  // cap on |A|
    size_t limit = 0;                      // stop after this many maps; 0 = all
    FiniteMap preset;                      // optional fixed images, -1 = free
};

// Backtracking over images of a greedy generating set, with products
// propagated after every choice. Deterministic lexicographic order on the
// generator images.
std::vector<FiniteMap> enumerate_homs(const Groupoid& a, const Groupoid& target, const HomOptions& opt = {});
std::vector<FiniteMap> enumerate_homs(const Groupoid& a, const AutomaticAlgebra& m, const HomOptions& opt = {});
std::vector<int> greedy_generators(const Groupoid& a);
// Same order; visit returns false to stop early.
void for_each_hom(const Groupoid& a, const Groupoid& target, const HomOptions& opt,
                  const std::function<bool(const FiniteMap&)>& visit);

bool is_hom(const Groupoid& a, const Groupoid& target, const FiniteMap& h);

// Whether the partial map preset (-1 = free) extends to a homomorphism.
// Arc consistency over all products of a; target must have at most 64 elements.
bool hom_extends(const Groupoid& a, const Groupoid& target, const FiniteMap& preset);
bool is_injective(const FiniteMap& h);

// R (tuples of codes, all the same arity) closed under pointwise product.
bool is_compatible(const AutomaticAlgebra& m, const std::vector<std::vector<int>>& rel);

}  // namespace autalg
