#include "autalg/algebra.hpp"

#include <set>

#include "autalg/error.hpp"

namespace autalg {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::Usage: return "Usage";
        case ErrorKind::UnknownName: return "UnknownName";
        case ErrorKind::BadParams: return "BadParams";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::ConflictingTransition: return "ConflictingTransition";
        case ErrorKind::ReservedName: return "ReservedName";
        case ErrorKind::DuplicateIndex: return "DuplicateIndex";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::PreconditionViolated: return "PreconditionViolated";
        case ErrorKind::NotPermutational: return "NotPermutational";
        case ErrorKind::NotCommuting: return "NotCommuting";
        case ErrorKind::NotTransitive: return "NotTransitive";
        case ErrorKind::NotAbelian: return "NotAbelian";
        case ErrorKind::NotSubgroup: return "NotSubgroup";
        case ErrorKind::ExponentMismatch: return "ExponentMismatch";
        case ErrorKind::HypothesisFailed: return "HypothesisFailed";
        case ErrorKind::InternalInconsistency: return "InternalInconsistency";
        case ErrorKind::ConstructionFailed: return "ConstructionFailed";
        case ErrorKind::PropositionViolated: return "PropositionViolated";
        case ErrorKind::ProofIdentityFailed: return "ProofIdentityFailed";
    }
    return "Error";
}

int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::Usage:
        case ErrorKind::UnknownName:
        case ErrorKind::BadParams:
            return 1;
        case ErrorKind::ParseError:
        case ErrorKind::SyntaxError:
        case ErrorKind::ConflictingTransition:
        case ErrorKind::ReservedName:
            return 2;
        case ErrorKind::InternalInconsistency:
        case ErrorKind::ConstructionFailed:
        case ErrorKind::PropositionViolated:
        case ErrorKind::ProofIdentityFailed:
            return 4;
        default:
            return 3;
    }
}

namespace {

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    for (char ch : s) {
        bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '_';
        if (!ok) return false;
    }
    return true;
}

}  // namespace

AutomaticAlgebra::AutomaticAlgebra(std::vector<std::string> states, std::vector<std::string> letters,
                                   std::vector<int> delta)
    : states_(std::move(states)), letters_(std::move(letters)), delta_(std::move(delta)) {
    std::set<std::string> seen;
    for (const auto* list : {&states_, &letters_}) {
        for (const auto& n : *list) {
            if (n == "0") fail(ErrorKind::ReservedName, "the name 0 is reserved for the zero element");
            if (!valid_name(n)) fail(ErrorKind::ParseError, "invalid name '" + n + "'");
            if (!seen.insert(n).second) fail(ErrorKind::ParseError, "duplicate name '" + n + "'");
        }
    }
    if (delta_.size() != states_.size() * letters_.size())
        fail(ErrorKind::BadParams, "transition table has wrong size");
    for (int t : delta_)
        if (t != kUndefined && (t < 0 || t >= num_states()))
            fail(ErrorKind::BadParams, "transition target out of range");
}

int AutomaticAlgebra::code(const Element& e) const {
    switch (e.tag) {
        case Tag::Zero: return zero_code();
        case Tag::State: return e.index;
        case Tag::Letter: return num_states() + e.index;
    }
    return zero_code();
}

Element AutomaticAlgebra::element(int c) const {
    if (c < num_states()) return Element::state(c);
    if (c < zero_code()) return Element::letter(c - num_states());
    return Element::zero();
}

std::string AutomaticAlgebra::name(const Element& e) const {
    switch (e.tag) {
        case Tag::Zero: return "0";
        case Tag::State: return states_.at(e.index);
        case Tag::Letter: return letters_.at(e.index);
    }
    return "0";
}

std::optional<Element> AutomaticAlgebra::find(const std::string& n) const {
    if (n == "0") return Element::zero();
    if (auto q = find_state(n)) return Element::state(*q);
    if (auto a = find_letter(n)) return Element::letter(*a);
    return std::nullopt;
}

std::optional<int> AutomaticAlgebra::find_state(const std::string& n) const {
    for (int i = 0; i < num_states(); ++i)
        if (states_[i] == n) return i;
    return std::nullopt;
}

std::optional<int> AutomaticAlgebra::find_letter(const std::string& n) const {
    for (int i = 0; i < num_letters(); ++i)
        if (letters_[i] == n) return i;
    return std::nullopt;
}

bool AutomaticAlgebra::is_total() const {
    for (int t : delta_)
        if (t == kUndefined) return false;
    return true;
}

bool AutomaticAlgebra::same_table(const AutomaticAlgebra& o) const {
    return states_ == o.states_ && letters_ == o.letters_ && delta_ == o.delta_;
}

AutomaticAlgebra AutomaticAlgebra::restrict(const std::vector<int>& keep_states,
                                            const std::vector<int>& keep_letters) const {
    std::vector<int> new_index(states_.size(), kUndefined);
    std::vector<std::string> st, lt;
    for (size_t i = 0; i < keep_states.size(); ++i) {
        new_index[keep_states[i]] = static_cast<int>(i);
        st.push_back(states_[keep_states[i]]);
    }
    for (int a : keep_letters) lt.push_back(letters_[a]);
    std::vector<int> d;
    for (int q : keep_states) {
        for (int a : keep_letters) {
            int t = delta(q, a);
            if (t != kUndefined && new_index[t] == kUndefined)
                fail(ErrorKind::PreconditionViolated, "kept states are not closed under the kept letters");
            d.push_back(t == kUndefined ? kUndefined : new_index[t]);
        }
    }
    return AutomaticAlgebra(std::move(st), std::move(lt), std::move(d));
}

Element product(const AutomaticAlgebra& m, const Element& x, const Element& y) {
    return m.element(m.mul(m.code(x), m.code(y)));
}

Element apply_word(const AutomaticAlgebra& m, const Element& x, const Word& w) {
    int c = m.code(x);
    for (int a : w) c = m.mul(c, m.letter_code(a));
    return m.element(c);
}

int run_word(const AutomaticAlgebra& m, int q, const Word& w) {
    for (int a : w) {
        if (q == AutomaticAlgebra::kUndefined) return q;
        q = m.delta(q, a);
    }
    return q;
}

std::string word_string(const AutomaticAlgebra& m, const Word& w) {
    bool compact = true;
    for (const auto& n : m.letter_names()) compact = compact && n.size() == 1;
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (!compact && i) out += ' ';
        out += m.letter_names()[w[i]];
    }
    return out;
}

Word parse_word(const AutomaticAlgebra& m, const std::vector<std::string>& names) {
    Word w;
    for (const auto& n : names) {
        auto a = m.find_letter(n);
        if (!a) fail(ErrorKind::ParseError, "unknown letter '" + n + "'");
        w.push_back(*a);
    }
    return w;
}

Word parse_word_compact(const AutomaticAlgebra& m, const std::string& s) {
    std::vector<std::string> names;
    for (char ch : s) names.emplace_back(1, ch);
    return parse_word(m, names);
}

AutomaticAlgebra build_algebra(std::vector<std::string> states, std::vector<std::string> letters,
                               const std::vector<Edge>& edges) {
    auto index_of = [](const std::vector<std::string>& v, const std::string& n) -> int {
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] == n) return static_cast<int>(i);
        return -1;
    };
    std::vector<int> delta(states.size() * letters.size(), AutomaticAlgebra::kUndefined);
    for (const auto& e : edges) {
        int q = index_of(states, e.from), a = index_of(letters, e.letter), r = index_of(states, e.to);
        if (q < 0 || a < 0 || r < 0)
            fail(ErrorKind::ParseError, "edge " + e.from + " " + e.letter + " " + e.to + " names an undeclared symbol");
        int& slot = delta[static_cast<size_t>(q) * letters.size() + a];
        if (slot != AutomaticAlgebra::kUndefined && slot != r)
            fail(ErrorKind::ConflictingTransition, e.from + " " + e.letter + " has two targets");
        slot = r;
    }
    return AutomaticAlgebra(std::move(states), std::move(letters), std::move(delta));
}

Groupoid as_groupoid(const AutomaticAlgebra& m) {
    Groupoid g;
    g.n = m.size();
    g.table.resize(static_cast<size_t>(g.n) * g.n);
    for (int x = 0; x < g.n; ++x)
        for (int y = 0; y < g.n; ++y) g.table[static_cast<size_t>(x) * g.n + y] = m.mul(x, y);
    for (int c = 0; c < g.n; ++c) g.labels.push_back(m.code_name(c));
    return g;
}

}  // namespace autalg
