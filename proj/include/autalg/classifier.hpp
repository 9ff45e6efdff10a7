#pragma once

#include <string>
#include <utility>
#include <vector>

#include "autalg/algebra.hpp"
#include "json.hpp"

namespace autalg {

using Json = nlohmann::ordered_json;

enum class StepKind { DropUndefinedLetter, DropRepeatedLetter, DropIsolatedState, DropRedundantState };
const char* step_kind_name(StepKind k);

struct ReductionStep {
    StepKind kind;
    std::string removed;
    std::string kept;  // the letter/state it is folded onto, or the witness element
    // element name before the step -> pair of element names after it
    std::vector<std::pair<std::string, std::pair<std::string, std::string>>> embedding;
};

// Drop undefined letters, repeated letters, isolated and redundant states to a
// fixpoint, restarting from the first kind after every step.
// Each embedding is checked to be an injective hom; throws
// InternalInconsistency otherwise.
std::pair<AutomaticAlgebra, std::vector<ReductionStep>> normalize_algebra(const AutomaticAlgebra& m);

enum class Outcome { Dualizable, NonDualizable, Unknown };
const char* outcome_name(Outcome o);  // dualizable | non_dualizable | unknown

struct TraceEntry {
    std::string rule;
    bool fired = false;
    std::string detail;
};

struct Verdict {
    Outcome outcome = Outcome::Unknown;
    std::string rule;
    Json certificate;
    std::vector<TraceEntry> trace;
};

// Rule order (also the trace order): zero_semigroup, normalize, whiskery,
// rankill, order_sensitivity, single_letter, two_state, constant_letters,
// all_loops, letter_affine, nondcomm, unknown.
Verdict classify(const AutomaticAlgebra& m);

Json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j);  // throws ParseError

struct VerifyResult {
    bool ok = false;
    std::string reason;
};
// Re-derives the certificate from m alone.
VerifyResult verify_certificate(const AutomaticAlgebra& m, const Json& verdict);

// M_1 = C_3; odd -> even closes the letters to an abelian group (new letters
// g1, g2, ...); even -> odd adjoins C_p with letters b_k, c_k, p the least
// prime > |Sigma| + 3.
AutomaticAlgebra gen_chain(int n);
// prime used at each odd stage k >= 3 up to n
std::vector<long> chain_primes(int n);

}  // namespace autalg
