#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace autalg {

enum class Tag : std::uint8_t { Zero, State, Letter };

struct Element {
    Tag tag = Tag::Zero;
    int index = 0;

    static Element zero() { return {Tag::Zero, 0}; }
    static Element state(int i) { return {Tag::State, i}; }
    static Element letter(int i) { return {Tag::Letter, i}; }

    bool is_zero() const { return tag == Tag::Zero; }
    bool is_state() const { return tag == Tag::State; }
    bool is_letter() const { return tag == Tag::Letter; }

    friend bool operator==(const Element& a, const Element& b) {
        return a.tag == b.tag && (a.tag == Tag::Zero || a.index == b.index);
    }
};

using Word = std::vector<int>;  // letter indices

// Finite automatic algebra on Q ∪ Σ ∪ {0}. Immutable once built.
//
// Elements are also addressed by integer codes: states 0..|Q|-1, letters
// |Q|..|Q|+|Σ|-1, and zero last. Every enumeration in the library uses this
// order.
class AutomaticAlgebra {
public:
    static constexpr int kUndefined = -1;

    AutomaticAlgebra() = default;
    // delta is row-major |Q| x |Σ|, kUndefined for missing transitions.
    AutomaticAlgebra(std::vector<std::string> states, std::vector<std::string> letters,
                     std::vector<int> delta);

    int num_states() const { return static_cast<int>(states_.size()); }
    int num_letters() const { return static_cast<int>(letters_.size()); }
    int size() const { return num_states() + num_letters() + 1; }

    const std::vector<std::string>& state_names() const { return states_; }
    const std::vector<std::string>& letter_names() const { return letters_; }
    const std::vector<int>& delta_table() const { return delta_; }

    // transition target, or kUndefined
    int delta(int q, int a) const { return delta_[static_cast<size_t>(q) * letters_.size() + a]; }

    int zero_code() const { return num_states() + num_letters(); }
    int state_code(int q) const { return q; }
    int letter_code(int a) const { return num_states() + a; }
    bool code_is_state(int c) const { return c < num_states(); }
    bool code_is_letter(int c) const { return c >= num_states() && c < zero_code(); }
    int code(const Element& e) const;
    Element element(int code) const;

    // product on codes; total
    int mul(int x, int y) const {
        if (x >= num_states() || !code_is_letter(y)) return zero_code();
        int t = delta(x, y - num_states());
        return t == kUndefined ? zero_code() : t;
    }

    std::string name(const Element& e) const;
    std::string code_name(int c) const { return name(element(c)); }
    std::optional<Element> find(const std::string& name) const;
    std::optional<int> find_letter(const std::string& name) const;
    std::optional<int> find_state(const std::string& name) const;

    bool is_total() const;
    bool same_table(const AutomaticAlgebra& other) const;

    // subalgebra keeping the given states and letters (in index order)
    AutomaticAlgebra restrict(const std::vector<int>& keep_states, const std::vector<int>& keep_letters) const;

private:
    std::vector<std::string> states_;
    std::vector<std::string> letters_;
    std::vector<int> delta_;
};

Element product(const AutomaticAlgebra& m, const Element& x, const Element& y);
Element apply_word(const AutomaticAlgebra& m, const Element& x, const Word& w);
// state index -> state index or kUndefined
int run_word(const AutomaticAlgebra& m, int q, const Word& w);

std::string word_string(const AutomaticAlgebra& m, const Word& w);
// letters given one name per entry
Word parse_word(const AutomaticAlgebra& m, const std::vector<std::string>& names);
// concatenated single-character letter names, e.g. "abc"
Word parse_word_compact(const AutomaticAlgebra& m, const std::string& s);

// Named algebras: B, L, L3star, R, F(m), N(i), C(p), chain(n), plus the
// small 2-state examples from the |Q| = 2 classification (T1, T2, K1, K2, K3)
// and C3id (C3 with an identity letter).
AutomaticAlgebra catalog(const std::string& name, const std::vector<long>& params = {});
std::vector<std::string> catalog_names();

// C_p with states prefix1..prefixp; b is the p-cycle i -> i+1, c its inverse.
AutomaticAlgebra cycle_pair(long p, const std::string& state_prefix, const std::string& b, const std::string& c);

// Helper used by the catalog and tests.
struct Edge {
    std::string from, letter, to;
};
AutomaticAlgebra build_algebra(std::vector<std::string> states, std::vector<std::string> letters,
                               const std::vector<Edge>& edges);

// Finite groupoid given by its table; used for powers and abstract hom search.
struct Groupoid {
    int n = 0;
    std::vector<int> table;  // n*n
    std::vector<std::string> labels;

    int mul(int x, int y) const { return table[static_cast<size_t>(x) * n + y]; }
};

Groupoid as_groupoid(const AutomaticAlgebra& m);

}  // namespace autalg
