#pragma once

#include <map>
#include <string>
#include <vector>

#include "autalg/algebra.hpp"
#include "autalg/groups.hpp"

namespace autalg {

// Partial operation on element codes; the domain is the key set.
struct PartialOperation {
    std::string name;
    int arity = 0;
    std::map<std::vector<int>, int> table;

    // (x1..xk, f(x)) for every x in the domain
    std::vector<std::vector<int>> graph() const;
};

// Names and params (element names unless noted):
//   g u v         binary, needs {u,v} meeting the letters
//   join          partial join of the order 0 < q
//   qmeet         quasi-meet; needs M total
//   meet          needs M total, letters constant, a bijection letters <-> states
//   h             ternary op from the constant-letter argument; same setting as meet
//   lambda g      left translation by state g on its component group
//   diamond       binary partial op built from the subgroups H_i
//   pbar i        Mal'cev op of component i (0-based); needs letter-affine
// All but g/join/qmeet need M permutational with commuting letters, or the
// stated setting. Throws PreconditionViolated, UnknownName, BadParams.
PartialOperation make_compatible_op(const AutomaticAlgebra& m, const std::string& name,
                                    const std::vector<std::string>& params = {});

// Extension of phi in End(H_i) with phi(u_i) = u_i to G_i, letters and 0.
// phi is indexed by position in the sorted subgroup H_i. Needs letter-affine.
PartialOperation psi_op(const AutomaticAlgebra& m, int component, const std::vector<int>& phi);

// H as a group on 0..|elems|-1 in the given order; labels carried over
FiniteGroup subgroup_group(const FiniteGroup& g, const std::vector<int>& elems);

// u_i = a_i^{n_i} as a position in the sorted H_i, for the first letter a_i
int psi_fixed_point(const AutomaticAlgebra& m, int component);

}  // namespace autalg
