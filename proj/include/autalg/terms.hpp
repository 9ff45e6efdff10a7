#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "autalg/algebra.hpp"

namespace autalg {

struct GroupoidTerm {
    std::string var;  // set for a variable
    std::shared_ptr<const GroupoidTerm> left, right;  // set for a product

    bool is_var() const { return !left; }
    static GroupoidTerm variable(std::string v);
    static GroupoidTerm prod(GroupoidTerm l, GroupoidTerm r);
    std::string to_string() const;
};

struct NormalTerm {
    bool zero = false;
    std::string head;
    std::vector<std::string> tail;

    static NormalTerm zero_equivalent() { return {true, {}, {}}; }
    static NormalTerm chain(std::string head, std::vector<std::string> tail = {}) {
        return {false, std::move(head), std::move(tail)};
    }
    GroupoidTerm to_term() const;  // left-bracketed; ZeroEquivalent becomes x*(x*x)
    std::string to_string() const;
    friend bool operator==(const NormalTerm& a, const NormalTerm& b) {
        return a.zero == b.zero && (a.zero || (a.head == b.head && a.tail == b.tail));
    }
};

using Equation = std::pair<NormalTerm, NormalTerm>;

struct QuasiIdentity {
    std::vector<Equation> premises;
    Equation conclusion;
};

// variable name -> element code
using Assignment = std::vector<std::pair<std::string, int>>;

GroupoidTerm parse_term(const std::string& src);
NormalTerm normalize(const GroupoidTerm& t);
NormalTerm parse_and_normalize(const std::string& src);
// "lhs = rhs" or "e1 & e2 => e3"
QuasiIdentity parse_quasi_identity(const std::string& src);

int eval_term(const AutomaticAlgebra& m, const GroupoidTerm& t, const Assignment& a);
int eval_normal(const AutomaticAlgebra& m, const NormalTerm& t, const Assignment& a);

// Variables in order of first appearance.
std::vector<std::string> variables_of(const std::vector<Equation>& eqs);

// Exhaustive; returns the first counterexample in lexicographic assignment
// order (first variable most significant, values in code order).
std::optional<Assignment> check_identity(const AutomaticAlgebra& m, const NormalTerm& lhs, const NormalTerm& rhs);
std::optional<Assignment> check_quasi_identity(const AutomaticAlgebra& m, const QuasiIdentity& qi);

std::string assignment_string(const AutomaticAlgebra& m, const Assignment& a);

struct OrderWitness {
    int state = 0;
    Word killed;    // state * killed == 0
    Word survives;  // state * survives != 0, a rearrangement of killed
};

// Exact decision: is some (*)_phi quasi-equation failed?
std::optional<OrderWitness> order_sensitivity(const AutomaticAlgebra& m);
// Brute force over all words of length <= max_len.
std::optional<OrderWitness> order_sensitivity_bounded(const AutomaticAlgebra& m, int max_len);

}  // namespace autalg
