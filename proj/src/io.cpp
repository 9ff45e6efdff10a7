#include "autalg/io.hpp"

#include <set>
#include <sstream>
#include <vector>

#include "autalg/error.hpp"

namespace autalg {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
    std::string body = line.substr(0, line.find('#'));
    std::istringstream in(body);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

[[noreturn]] void parse_fail(int line, const std::string& why) {
    fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + why);
}

void check_names(int line, const std::vector<std::string>& names, std::set<std::string>& seen) {
    for (const auto& n : names) {
        if (n == "0") fail(ErrorKind::ReservedName, "line " + std::to_string(line) + ": the name 0 is reserved");
        for (char ch : n) {
            bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '_';
            if (!ok) parse_fail(line, "bad name '" + n + "'");
        }
        if (!seen.insert(n).second) parse_fail(line, "duplicate name '" + n + "'");
    }
}

}  // namespace

AutomaticAlgebra parse_algebra_file(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_states = false, have_letters = false;
    std::vector<std::string> states, letters;
    std::set<std::string> seen;
    std::vector<Edge> edges;
    std::vector<int> edge_lines;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = tokens_of(line);
        if (tok.empty()) continue;
        const std::string& kw = tok[0];
        std::vector<std::string> rest(tok.begin() + 1, tok.end());
        if (kw == "states") {
            if (have_states) parse_fail(lineno, "second 'states' line");
            if (!edges.empty()) parse_fail(lineno, "'states' must precede all 'trans' lines");
            check_names(lineno, rest, seen);
            states = rest;
            have_states = true;
        } else if (kw == "letters") {
            if (have_letters) parse_fail(lineno, "second 'letters' line");
            if (!edges.empty()) parse_fail(lineno, "'letters' must precede all 'trans' lines");
            check_names(lineno, rest, seen);
            letters = rest;
            have_letters = true;
        } else if (kw == "trans") {
            if (!have_states || !have_letters) parse_fail(lineno, "'trans' before 'states' and 'letters'");
            if (rest.size() != 3) parse_fail(lineno, "'trans' takes exactly three names");
            edges.push_back({rest[0], rest[1], rest[2]});
            edge_lines.push_back(lineno);
        } else {
            parse_fail(lineno, "unknown keyword '" + kw + "'");
        }
    }
    if (!have_states) parse_fail(lineno, "missing 'states' line");
    if (!have_letters) parse_fail(lineno, "missing 'letters' line");

    auto index_of = [](const std::vector<std::string>& v, const std::string& n) -> int {
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] == n) return static_cast<int>(i);
        return -1;
    };
    std::vector<int> delta(states.size() * letters.size(), AutomaticAlgebra::kUndefined);
    for (size_t k = 0; k < edges.size(); ++k) {
        const auto& e = edges[k];
        int q = index_of(states, e.from), a = index_of(letters, e.letter), r = index_of(states, e.to);
        if (e.from == "0" || e.to == "0" || e.letter == "0")
            fail(ErrorKind::ReservedName, "line " + std::to_string(edge_lines[k]) + ": 0 cannot appear in a transition");
        if (q < 0) parse_fail(edge_lines[k], "unknown state '" + e.from + "'");
        if (a < 0) parse_fail(edge_lines[k], "unknown letter '" + e.letter + "'");
        if (r < 0) parse_fail(edge_lines[k], "unknown state '" + e.to + "'");
        int& slot = delta[static_cast<size_t>(q) * letters.size() + a];
        if (slot != AutomaticAlgebra::kUndefined && slot != r)
            fail(ErrorKind::ConflictingTransition,
                 "line " + std::to_string(edge_lines[k]) + ": " + e.from + " " + e.letter + " already goes to " +
                     states[slot]);
        slot = r;
    }
    return AutomaticAlgebra(std::move(states), std::move(letters), std::move(delta));
}

std::string emit_algebra_file(const AutomaticAlgebra& m) {
    std::ostringstream out;
    out << "states";
    for (const auto& s : m.state_names()) out << ' ' << s;
    out << "\nletters";
    for (const auto& a : m.letter_names()) out << ' ' << a;
    out << '\n';
    for (int q = 0; q < m.num_states(); ++q)
        for (int a = 0; a < m.num_letters(); ++a) {
            int t = m.delta(q, a);
            if (t != AutomaticAlgebra::kUndefined)
                out << "trans " << m.state_names()[q] << ' ' << m.letter_names()[a] << ' ' << m.state_names()[t]
                    << '\n';
        }
    return out.str();
}

}  // namespace autalg
