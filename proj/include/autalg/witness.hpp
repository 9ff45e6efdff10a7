#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "autalg/algebra.hpp"
#include "autalg/powers.hpp"

namespace autalg {

// Finite truncation of a non-dualizability construction. Coordinates are
// 0-based internally; reports print the index part 1-based.
struct ConstructionSpec {
    std::string name;
    AutomaticAlgebra m;
    int truncation = 0;                     // N
    int width = 0;                          // number of coordinates
    std::vector<std::string> coord_labels;  // "1".."N", or "(q,b)" for the block part
    std::vector<std::pair<std::string, std::string>> params;  // shown in reports
    std::string mu;                                          // provenance only
    int nu = 1;                                              // block bound for kernel analysis
    std::vector<PowerElement> a0, b;
    std::vector<int> a0_base, b_base;  // value at an untouched index coordinate
    PowerElement g;
    std::vector<PowerElement> elements;  // Sg(A0 u B), generators first
};

// thm_wc (params {m}), ex_all4_L, lem_2state2_N4, lem_2state3_N5,
// thm_nondcomm (base algebra, params {} or {b, c}), thm_pcomm_case1 (base
// algebra with an order-sensitivity failure). base defaults to C_3 and N_1.
std::vector<std::string> construction_names();
ConstructionSpec build_truncation(const std::string& name, const std::vector<std::string>& params, int n,
                                  const std::optional<AutomaticAlgebra>& base = std::nullopt,
                                  size_t max_elements = 20000);

struct IdentityCheck {
    std::string identity;
    std::string ranges;
    long instances = 0;
    bool pass = true;
};

struct ConstructionReport {
    std::vector<IdentityCheck> identities;
    bool g_in_a = false;
    bool inside_stated_universe = true;  // A within the universe written in the proof, where one is given
    std::string text;
};

// Throws ProofIdentityFailed on the first failing instance, or if g is in A.
ConstructionReport verify_construction(const ConstructionSpec& spec);

struct KernelReport {
    // distinct restrictions x|A0 over all homs x: A -> M; the kernel on A0
    // only depends on the restriction
    long hom_count = 0;
    std::map<std::vector<int>, long> block_histogram;  // descending block sizes -> count
    long violations = 0;                               // restrictions with two blocks larger than nu
    std::vector<long> first_violations;                // up to 8, enumeration order
    int nu = 1;
    std::string text;
};

KernelReport kernel_block_analysis(const ConstructionSpec& spec, int nu, size_t max_elements = kDefaultHomCap);

struct LocalEvalReport {
    long homs = 0;
    long maps = 0;         // |M|^homs, -1 if it overflows
    long evaluations = 0;
    long local_only = 0;   // k-locally an evaluation but not an evaluation
    long neither = 0;      // -1 when maps is -1
    long three_local_letter = 0;     // 3-local maps with a letter in range
    long letter_range_violations = 0;   // of those, not evaluations
    std::string text;
};

constexpr int kLocalProbeHoms = 64;
constexpr long kLocalProbeNodes = 10'000'000;

// A is a subalgebra of M^width given by its elements. The search only
// extends partial maps that are still k-locally evaluations. Throws
// CapExceeded past kLocalProbeHoms homs or kLocalProbeNodes search nodes.
LocalEvalReport local_eval_probe(const AutomaticAlgebra& m, const std::vector<PowerElement>& a, int k);

// Sg{(q,q),(a,a),(q,r)} in N_0^2
std::vector<PowerElement> n0_square_probe_algebra();

}  // namespace autalg
