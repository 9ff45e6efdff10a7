#pragma once

#include <optional>
#include <string>
#include <vector>

#include "autalg/algebra.hpp"
#include "autalg/groups.hpp"
#include "autalg/powers.hpp"
#include "autalg/terms.hpp"

namespace autalg {

// Connected components of the underlying graph, sorted by least state.
std::vector<std::vector<int>> components(const AutomaticAlgebra& m);

struct LetterSets {
    std::vector<int> dom, ran, ks;  // state indices, ascending
};
std::vector<LetterSets> letter_sets(const AutomaticAlgebra& m);

struct RankillWitness {
    int case_no = 0;  // 1: ks -> dom, 2: ran -> ks
    int letter = 0;
    int state = 0;
    Word word;
};
// Case 2 is tried for every letter before case 1.
std::optional<RankillWitness> rankill_check(const AutomaticAlgebra& m);
bool verify_rankill(const AutomaticAlgebra& m, const RankillWitness& w);

struct FEmbedding {
    int m = 0;        // index of F_m
    FiniteMap map;    // code in F_m -> code in M
};

struct WhiskeryFailure {
    int letter = 0;
    int state = 0;
    FEmbedding embedding;  // F_m into M built from the failing orbit
};

// qa = qa^{n+1} for some 1 <= n <= |Q|
bool letter_whiskery_at(const AutomaticAlgebra& m, int letter, int state);
std::optional<WhiskeryFailure> whiskery_direct(const AutomaticAlgebra& m);
std::optional<Assignment> whiskery_quasi(const AutomaticAlgebra& m);
// injective hom search from F_m, 0 <= m <= |Q|-2
std::optional<FEmbedding> f_embedding_search(const AutomaticAlgebra& m);
// Runs all three and throws InternalInconsistency if they disagree.
std::optional<WhiskeryFailure> whiskery_check(const AutomaticAlgebra& m);
// F_m embedding from the orbit of q under a; requires a to fail at q
FEmbedding f_embedding_from_orbit(const AutomaticAlgebra& m, int letter, int state);

struct PermProfile {
    bool permutational = false;
    bool commuting = false;
    std::vector<std::vector<int>> rho;  // per letter, state -> state or kUndefined
    // per component: letters defined on all / none / part of it
    struct ComponentStatus {
        std::vector<int> total, undefined, partial;
    };
    std::vector<ComponentStatus> per_component;
};
PermProfile permutation_profile(const AutomaticAlgebra& m);

struct AbelianGroupData {
    std::vector<int> states;           // the component; element i of the group is states[i]
    FiniteGroup group;                 // labels are state names
    std::vector<int> letters;          // Sigma_C, letter indices
    std::vector<int> dropped_letters;  // undefined on the whole component
    std::vector<int> letter_images;    // parallel to letters: a_(i) as group element
    std::vector<int> subgroup_h;       // sorted group elements
    int exponent = 1;
    std::vector<CyclicFactor> decomposition;

    int element_of_state(int q) const;
};

// Throws NotPermutational, NotCommuting, NotTransitive.
AbelianGroupData component_group(const AutomaticAlgebra& m, const std::vector<int>& component);
// Re-checks q.a = q * a_(i), regularity and H from the data and m alone.
bool verify_group_data(const AutomaticAlgebra& m, const AbelianGroupData& g, std::string* why = nullptr);

struct LetterAffineReport {
    bool affine = false;
    std::vector<AbelianGroupData> groups;  // one per component when affine
    int component = -1;                    // failing component index
    std::vector<int> triple;               // letters a, b, c with a b^-1 c outside Sigma_(i)
    std::string reason;
};
LetterAffineReport letter_affine_analysis(const AutomaticAlgebra& m);

struct NondcommWitness {
    int b = 0, c = 0;
    int m = 0;                        // order of rho_b rho_c^-1
    std::vector<std::string> report;  // per component: why no coset of order dividing m exists
};
std::optional<NondcommWitness> nondcomm_check(const AutomaticAlgebra& m);
// coset condition for one component and modulus, via subsets of the action set (actions distinct)
bool has_small_coset_subsets(const std::vector<std::vector<int>>& actions, int m);
// same, via cosets of cyclic subgroups of prime order
bool has_small_coset_cyclic(const std::vector<std::vector<int>>& actions, int m);

}  // namespace autalg
