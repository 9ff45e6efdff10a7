#pragma once

#include <string>
#include <vector>

namespace autalg {

// Finite group as an explicit operation table on 0..n-1.
struct FiniteGroup {
    int n = 0;
    std::vector<int> table;
    int identity = 0;
    std::vector<std::string> labels;

    int mul(int x, int y) const { return table[static_cast<size_t>(x) * n + y]; }
    int inverse(int x) const;
    int power(int x, long k) const;  // k >= 0
    int order(int x) const;
};

// Throws NotAbelian naming the failing law.
void check_abelian_group(const FiniteGroup& g);
int exponent(const FiniteGroup& g);
std::vector<int> subgroup_generated(const FiniteGroup& g, const std::vector<int>& gens);  // sorted

struct CyclicFactor {
    int generator;
    int order;  // prime power
    int prime;
};

// Primary decomposition: primes ascending, orders ascending within a prime.
// Throws NotAbelian.
std::vector<CyclicFactor> cyclic_decomposition(const FiniteGroup& g);

// exponent vector of each element with respect to the factors; throws
// InternalInconsistency if the factors do not form a basis
std::vector<std::vector<int>> basis_coordinates(const FiniteGroup& g, const std::vector<CyclicFactor>& basis);

// All endomorphisms as tables; images of basis generators filtered by order.
std::vector<std::vector<int>> endomorphisms(const FiniteGroup& g, size_t max_order = 64);
bool is_endomorphism(const FiniteGroup& g, const std::vector<int>& phi);

struct CharacterWitness {
    int m = 1;
    std::vector<int> chi;               // element -> Z_m
    std::vector<std::vector<int>> endo;  // endo[h] is the endomorphism used for h
};

// Character chi: H -> Z_m such that each h != e has an endomorphism fixing u
// that moves h off ker chi. Throws ExponentMismatch, ConstructionFailed.
CharacterWitness huc_character(const FiniteGroup& h, int m, int u);
// Checks the witness property using only the tables in w.
bool check_character_witness(const FiniteGroup& h, int u, const CharacterWitness& w, std::string* why = nullptr);

using Vec = std::vector<int>;

// Rows spanning the annihilator of the subgroup H <= Z_m^k. Throws NotSubgroup;
// throws InternalInconsistency if the round trip fails.
std::vector<Vec> annihilator_system(int m, int k, const std::vector<Vec>& h);
// All x in Z_m^k with c.x = 0 for every row c, in lexicographic order.
std::vector<Vec> solution_set(int m, int k, const std::vector<Vec>& system);
bool is_subgroup_zm(int m, const std::vector<Vec>& s);
// closed under x - y + z
bool is_coset_zm(int m, const std::vector<Vec>& s);

struct MatrixZm {
    int m = 2;
    int rows = 0, cols = 0;
    std::vector<int> entries;  // row-major, reduced mod m

    int at(int i, int j) const { return entries[static_cast<size_t>(i) * cols + j]; }
    Vec row(int i) const;
    Vec col(int j) const;
};

struct HypothesisCheck {
    bool ok = true;
    std::string which;    // rows-subgroup | columns-coset | row-zero
    std::string witness;  // offending row/column/triple
};

HypothesisCheck check_rows_subgroup(const MatrixZm& a);
HypothesisCheck check_columns_coset(const MatrixZm& a);
HypothesisCheck check_row_zero(const MatrixZm& a);

// Least all-zero column. Throws HypothesisFailed; throws PropositionViolated
// if the hypotheses hold and no such column exists, or if the column produced
// from the annihilator argument is not constantly zero.
int find_zero_column(const MatrixZm& a);

}  // namespace autalg
