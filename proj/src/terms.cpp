#include "autalg/terms.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "autalg/error.hpp"

namespace autalg {

GroupoidTerm GroupoidTerm::variable(std::string v) {
    GroupoidTerm t;
    t.var = std::move(v);
    return t;
}

GroupoidTerm GroupoidTerm::prod(GroupoidTerm l, GroupoidTerm r) {
    GroupoidTerm t;
    t.left = std::make_shared<const GroupoidTerm>(std::move(l));
    t.right = std::make_shared<const GroupoidTerm>(std::move(r));
    return t;
}

std::string GroupoidTerm::to_string() const {
    if (is_var()) return var;
    std::string r = right->is_var() ? right->to_string() : "(" + right->to_string() + ")";
    return left->to_string() + "*" + r;
}

GroupoidTerm NormalTerm::to_term() const {
    if (zero) {
        auto x = GroupoidTerm::variable("x");
        return GroupoidTerm::prod(x, GroupoidTerm::prod(x, x));
    }
    GroupoidTerm t = GroupoidTerm::variable(head);
    for (const auto& v : tail) t = GroupoidTerm::prod(t, GroupoidTerm::variable(v));
    return t;
}

std::string NormalTerm::to_string() const {
    if (zero) return "0";
    std::string s = head;
    for (const auto& v : tail) s += "*" + v;
    return s;
}

namespace {

struct Token {
    enum Kind { Ident, Star, LParen, RParen, End } kind;
    std::string text;
    size_t pos;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Single-character mode splits identifier runs into one variable per
// character; it is used when no run is longer than one character or when the
// source has no '*' at all.
std::vector<Token> tokenize(const std::string& src, size_t base, bool single_char) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '*') {
            out.push_back({Token::Star, "*", base + i});
            ++i;
        } else if (c == '(') {
            out.push_back({Token::LParen, "(", base + i});
            ++i;
        } else if (c == ')') {
            out.push_back({Token::RParen, ")", base + i});
            ++i;
        } else if (ident_char(c)) {
            size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            if (single_char) {
                for (size_t k = i; k < j; ++k) out.push_back({Token::Ident, std::string(1, src[k]), base + k});
            } else {
                out.push_back({Token::Ident, src.substr(i, j - i), base + i});
            }
            i = j;
        } else {
            fail(ErrorKind::SyntaxError, "unexpected character '" + std::string(1, c) + "' at position " +
                                             std::to_string(base + i));
        }
    }
    out.push_back({Token::End, "", base + src.size()});
    return out;
}

bool choose_single_char(const std::string& whole) {
    if (whole.find('*') == std::string::npos) return true;
    size_t run = 0;
    for (char c : whole) {
        run = ident_char(c) ? run + 1 : 0;
        if (run > 1) return false;
    }
    return true;
}

class Parser {
public:
    Parser(std::vector<Token> toks, bool single_char) : toks_(std::move(toks)), single_(single_char) {}

    GroupoidTerm parse_all() {
        GroupoidTerm t = term();
        if (peek().kind != Token::End) error("unexpected '" + peek().text + "'");
        return t;
    }

private:
    const Token& peek() const { return toks_[i_]; }
    [[noreturn]] void error(const std::string& why) const {
        fail(ErrorKind::SyntaxError, why + " at position " + std::to_string(peek().pos));
    }

    GroupoidTerm term() {
        GroupoidTerm t = atom();
        for (;;) {
            if (peek().kind == Token::Star) {
                ++i_;
                t = GroupoidTerm::prod(std::move(t), atom());
            } else if (peek().kind == Token::Ident || peek().kind == Token::LParen) {
                if (!single_) error("juxtaposition needs single-character variables; use '*'");
                t = GroupoidTerm::prod(std::move(t), atom());
            } else {
                return t;
            }
        }
    }

    GroupoidTerm atom() {
        const Token& tk = peek();
        if (tk.kind == Token::Ident) {
            ++i_;
            return GroupoidTerm::variable(tk.text);
        }
        if (tk.kind == Token::LParen) {
            ++i_;
            GroupoidTerm t = term();
            if (peek().kind != Token::RParen) error("expected ')'");
            ++i_;
            return t;
        }
        error(tk.kind == Token::End ? "unexpected end of input" : "unexpected '" + tk.text + "'");
    }

    std::vector<Token> toks_;
    bool single_;
    size_t i_ = 0;
};

GroupoidTerm parse_piece(const std::string& piece, size_t base, bool single_char) {
    return Parser(tokenize(piece, base, single_char), single_char).parse_all();
}

std::vector<std::pair<std::string, size_t>> split_on(const std::string& s, size_t base, const std::string& sep) {
    std::vector<std::pair<std::string, size_t>> out;
    size_t start = 0;
    for (;;) {
        size_t k = s.find(sep, start);
        if (k == std::string::npos) {
            out.push_back({s.substr(start), base + start});
            return out;
        }
        out.push_back({s.substr(start, k - start), base + start});
        start = k + sep.size();
    }
}

Equation parse_eq(const std::string& s, size_t base, bool single_char) {
    auto sides = split_on(s, base, "=");
    if (sides.size() != 2)
        fail(ErrorKind::SyntaxError, "expected exactly one '=' in equation at position " + std::to_string(base));
    return {normalize(parse_piece(sides[0].first, sides[0].second, single_char)),
            normalize(parse_piece(sides[1].first, sides[1].second, single_char))};
}

}  // namespace

GroupoidTerm parse_term(const std::string& src) { return parse_piece(src, 0, choose_single_char(src)); }

NormalTerm normalize(const GroupoidTerm& t) {
    if (t.is_var()) return NormalTerm::chain(t.var);
    // a product is never a letter, so anything times a product is 0
    if (!t.right->is_var()) return NormalTerm::zero_equivalent();
    NormalTerm l = normalize(*t.left);
    if (l.zero) return l;
    l.tail.push_back(t.right->var);
    return l;
}

NormalTerm parse_and_normalize(const std::string& src) { return normalize(parse_term(src)); }

QuasiIdentity parse_quasi_identity(const std::string& src) {
    bool single = choose_single_char(src);
    QuasiIdentity qi;
    size_t arrow = src.find("=>");
    if (arrow == std::string::npos) {
        qi.conclusion = parse_eq(src, 0, single);
        return qi;
    }
    if (src.find("=>", arrow + 2) != std::string::npos)
        fail(ErrorKind::SyntaxError, "more than one '=>' at position " + std::to_string(src.find("=>", arrow + 2)));
    for (auto& [piece, off] : split_on(src.substr(0, arrow), 0, "&")) qi.premises.push_back(parse_eq(piece, off, single));
    qi.conclusion = parse_eq(src.substr(arrow + 2), arrow + 2, single);
    return qi;
}

namespace {

int lookup(const Assignment& a, const std::string& v) {
    for (const auto& [name, val] : a)
        if (name == v) return val;
    fail(ErrorKind::PreconditionViolated, "variable '" + v + "' is unassigned");
}

}  // namespace

int eval_term(const AutomaticAlgebra& m, const GroupoidTerm& t, const Assignment& a) {
    if (t.is_var()) return lookup(a, t.var);
    return m.mul(eval_term(m, *t.left, a), eval_term(m, *t.right, a));
}

int eval_normal(const AutomaticAlgebra& m, const NormalTerm& t, const Assignment& a) {
    if (t.zero) return m.zero_code();
    int x = lookup(a, t.head);
    for (const auto& v : t.tail) x = m.mul(x, lookup(a, v));
    return x;
}

std::vector<std::string> variables_of(const std::vector<Equation>& eqs) {
    std::vector<std::string> out;
    auto add = [&](const std::string& v) {
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    };
    for (const auto& [l, r] : eqs)
        for (const NormalTerm* t : {&l, &r}) {
            if (t->zero) continue;
            add(t->head);
            for (const auto& v : t->tail) add(v);
        }
    return out;
}

namespace {

// Visits assignments in lexicographic order; stops when f returns true.
template <class F>
std::optional<Assignment> search_assignments(const AutomaticAlgebra& m, const std::vector<std::string>& vars, F f) {
    Assignment a;
    for (const auto& v : vars) a.push_back({v, 0});
    const int n = m.size();
    for (;;) {
        if (f(a)) return a;
        int k = static_cast<int>(a.size()) - 1;
        while (k >= 0 && a[k].second == n - 1) {
            a[k].second = 0;
            --k;
        }
        if (k < 0) return std::nullopt;
        ++a[k].second;
    }
}

}  // namespace

std::optional<Assignment> check_identity(const AutomaticAlgebra& m, const NormalTerm& lhs, const NormalTerm& rhs) {
    auto vars = variables_of({{lhs, rhs}});
    return search_assignments(m, vars, [&](const Assignment& a) {
        return eval_normal(m, lhs, a) != eval_normal(m, rhs, a);
    });
}

std::optional<Assignment> check_quasi_identity(const AutomaticAlgebra& m, const QuasiIdentity& qi) {
    std::vector<Equation> all = qi.premises;
    all.push_back(qi.conclusion);
    auto vars = variables_of(all);
    return search_assignments(m, vars, [&](const Assignment& a) {
        for (const auto& [l, r] : qi.premises)
            if (eval_normal(m, l, a) != eval_normal(m, r, a)) return false;
        return eval_normal(m, qi.conclusion.first, a) != eval_normal(m, qi.conclusion.second, a);
    });
}

std::string assignment_string(const AutomaticAlgebra& m, const Assignment& a) {
    std::string s;
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) s += ", ";
        s += a[i].first + "=" + m.code_name(a[i].second);
    }
    return s;
}

std::optional<OrderWitness> order_sensitivity(const AutomaticAlgebra& m) {
    const int nq = m.num_states(), ns = m.num_letters();
    const int Z = nq;  // index used for 0 inside the pair automaton
    auto step = [&](int x, int a) {
        if (x == Z) return Z;
        int t = m.delta(x, a);
        return t == AutomaticAlgebra::kUndefined ? Z : t;
    };
    const int width = nq + 1;
    for (int s = 0; s < nq; ++s)
        for (int a = 0; a < ns; ++a)
            for (int b = a + 1; b < ns; ++b) {
                int x = step(step(s, a), b), y = step(step(s, b), a);
                if (x == Z && y == Z) continue;
                // breadth-first search for a common suffix killing exactly one side
                std::vector<int> parent(width * width, -2), via(width * width, -1);
                std::vector<int> queue{x * width + y};
                parent[x * width + y] = -1;
                int found = -1;
                for (size_t h = 0; h < queue.size() && found < 0; ++h) {
                    int cur = queue[h];
                    int cx = cur / width, cy = cur % width;
                    if ((cx == Z) != (cy == Z)) {
                        found = cur;
                        break;
                    }
                    for (int c = 0; c < ns; ++c) {
                        int nx = step(cx, c), ny = step(cy, c);
                        if (nx == Z && ny == Z) continue;
                        int nxt = nx * width + ny;
                        if (parent[nxt] != -2) continue;
                        parent[nxt] = cur;
                        via[nxt] = c;
                        queue.push_back(nxt);
                    }
                }
                if (found < 0) continue;
                Word suffix;
                for (int cur = found; parent[cur] != -1; cur = parent[cur]) suffix.push_back(via[cur]);
                std::reverse(suffix.begin(), suffix.end());
                Word ab{a, b}, ba{b, a};
                ab.insert(ab.end(), suffix.begin(), suffix.end());
                ba.insert(ba.end(), suffix.begin(), suffix.end());
                bool ab_killed = (found / width) == Z;
                OrderWitness w;
                w.state = s;
                w.killed = ab_killed ? ab : ba;
                w.survives = ab_killed ? ba : ab;
                return w;
            }
    return std::nullopt;
}

std::optional<OrderWitness> order_sensitivity_bounded(const AutomaticAlgebra& m, int max_len) {
    const int ns = m.num_letters();
    for (int q = 0; q < m.num_states(); ++q) {
        // letter multiset -> first killed word, first surviving word
        std::map<std::vector<int>, std::pair<std::optional<Word>, std::optional<Word>>> seen;
        Word w;
        std::vector<int> counts(ns, 0);
        std::optional<OrderWitness> hit;
        auto visit = [&](auto&& self, int cur) -> void {
            if (hit) return;
            auto& slot = seen[counts];
            if (cur == AutomaticAlgebra::kUndefined) {
                if (!slot.first) slot.first = w;
            } else if (!slot.second) {
                slot.second = w;
            }
            if (slot.first && slot.second) {
                hit = OrderWitness{q, *slot.first, *slot.second};
                return;
            }
            if (static_cast<int>(w.size()) == max_len) return;
            for (int a = 0; a < ns; ++a) {
                w.push_back(a);
                ++counts[a];
                self(self, cur == AutomaticAlgebra::kUndefined ? cur : m.delta(cur, a));
                --counts[a];
                w.pop_back();
                if (hit) return;
            }
        };
        visit(visit, q);
        if (hit) return hit;
    }
    return std::nullopt;
}

}  // namespace autalg
