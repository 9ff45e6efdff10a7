#include <string>

#include "autalg/algebra.hpp"
#include "autalg/classifier.hpp"
#include "autalg/error.hpp"

namespace autalg {

namespace {

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void expect_arity(const std::string& name, const std::vector<long>& params, size_t n) {
    if (params.size() != n)
        fail(ErrorKind::BadParams, name + " expects " + std::to_string(n) + " parameter(s), got " +
                                       std::to_string(params.size()));
}

AutomaticAlgebra make_f(long m) {
    if (m < 0) fail(ErrorKind::BadParams, "F needs m >= 0");
    std::vector<std::string> st{"q", "r"};
    for (long i = 1; i <= m; ++i) st.push_back("s" + std::to_string(i));
    std::vector<Edge> e{{"q", "a", "r"}};
    if (m >= 1) {
        e.push_back({"r", "a", "s1"});
        for (long i = 1; i <= m; ++i)
            e.push_back({"s" + std::to_string(i), "a", "s" + std::to_string(i == m ? 1 : i + 1)});
    }
    return build_algebra(st, {"a"}, e);
}

AutomaticAlgebra make_n(long i) {
    std::vector<std::string> q{"q", "r"};
    switch (i) {
        case 0: return build_algebra(q, {"a"}, {{"q", "a", "r"}});
        case 1: return build_algebra(q, {"a", "b"}, {{"q", "a", "r"}, {"r", "a", "r"}, {"r", "b", "r"}});
        case 2: return build_algebra(q, {"a", "b"}, {{"q", "a", "r"}, {"r", "a", "q"}, {"r", "b", "r"}});
        case 3: return build_algebra(q, {"a", "b"}, {{"q", "a", "r"}, {"r", "a", "r"}, {"q", "b", "q"}});
        case 4:
            return build_algebra(q, {"a", "b"},
                                 {{"q", "a", "r"}, {"r", "a", "r"}, {"q", "b", "r"}, {"r", "b", "q"}});
        case 5:
            return build_algebra(q, {"a", "b", "c"},
                                 {{"q", "a", "r"},
                                  {"r", "a", "r"},
                                  {"r", "b", "q"},
                                  {"q", "b", "q"},
                                  {"q", "c", "q"},
                                  {"r", "c", "r"}});
        default: fail(ErrorKind::BadParams, "N takes an index in 0..5");
    }
}

}  // namespace

AutomaticAlgebra cycle_pair(long p, const std::string& prefix, const std::string& b, const std::string& c) {
    if (p < 3 || !is_prime(p)) fail(ErrorKind::BadParams, "C needs an odd prime, got " + std::to_string(p));
    std::vector<std::string> st;
    std::vector<Edge> e;
    for (long i = 1; i <= p; ++i) st.push_back(prefix + std::to_string(i));
    for (long i = 1; i <= p; ++i) {
        long nxt = i % p + 1;
        e.push_back({st[i - 1], b, st[nxt - 1]});
        e.push_back({st[nxt - 1], c, st[i - 1]});
    }
    return build_algebra(st, {b, c}, e);
}

std::vector<std::string> catalog_names() {
    return {"B", "L", "L3star", "R", "F", "N", "C", "chain", "C3id", "T1", "T2", "K1", "K2", "K3"};
}

AutomaticAlgebra catalog(const std::string& name, const std::vector<long>& params) {
    std::vector<std::string> qrs{"q", "r", "s"}, abc{"a", "b", "c"}, qr{"q", "r"};
    if (name == "B") {
        expect_arity(name, params, 0);
        return build_algebra(qrs, abc, {{"q", "a", "r"}, {"r", "b", "r"}, {"r", "c", "s"}});
    }
    if (name == "L") {
        expect_arity(name, params, 0);
        return build_algebra(qrs, abc,
                             {{"q", "a", "q"},
                              {"q", "b", "q"},
                              {"q", "c", "q"},
                              {"r", "a", "q"},
                              {"r", "b", "r"},
                              {"r", "c", "s"},
                              {"s", "a", "s"},
                              {"s", "b", "s"},
                              {"s", "c", "s"}});
    }
    if (name == "L3star") {
        expect_arity(name, params, 0);
        return build_algebra(qrs, abc,
                             {{"q", "a", "r"},
                              {"r", "a", "r"},
                              {"s", "a", "r"},
                              {"r", "b", "s"},
                              {"s", "b", "s"},
                              {"q", "c", "q"},
                              {"r", "c", "q"}});
    }
    if (name == "R") {
        expect_arity(name, params, 0);
        return build_algebra(qr, abc, {{"r", "a", "q"}, {"r", "b", "r"}, {"q", "c", "q"}});
    }
    if (name == "F") {
        expect_arity(name, params, 1);
        return make_f(params[0]);
    }
    if (name == "N") {
        expect_arity(name, params, 1);
        return make_n(params[0]);
    }
    if (name == "C") {
        expect_arity(name, params, 1);
        return cycle_pair(params[0], "", "b", "c");
    }
    if (name == "chain") {
        expect_arity(name, params, 1);
        if (params[0] < 1) fail(ErrorKind::BadParams, "chain needs n >= 1");
        return gen_chain(static_cast<int>(params[0]));
    }
    if (name == "C3id") {
        expect_arity(name, params, 0);
        return build_algebra({"1", "2", "3"}, {"b", "c", "i"},
                             {{"1", "b", "2"},
                              {"2", "b", "3"},
                              {"3", "b", "1"},
                              {"2", "c", "1"},
                              {"3", "c", "2"},
                              {"1", "c", "3"},
                              {"1", "i", "1"},
                              {"2", "i", "2"},
                              {"3", "i", "3"}});
    }
    // 2-state algebras that survive the |Q| = 2 classification
    if (name == "T1") {
        expect_arity(name, params, 0);
        return build_algebra(qr, {"a"}, {{"q", "a", "r"}, {"r", "a", "q"}});
    }
    if (name == "T2") {
        expect_arity(name, params, 0);
        return build_algebra(qr, {"a", "b"}, {{"q", "a", "r"}, {"r", "a", "q"}, {"q", "b", "q"}, {"r", "b", "r"}});
    }
    if (name == "K1") {
        expect_arity(name, params, 0);
        return build_algebra(qr, {"a"}, {{"r", "a", "q"}, {"q", "a", "q"}});
    }
    if (name == "K2") {
        expect_arity(name, params, 0);
        return build_algebra(qr, {"a", "b"}, {{"r", "a", "q"}, {"q", "a", "q"}, {"q", "b", "r"}, {"r", "b", "r"}});
    }
    if (name == "K3") {
        expect_arity(name, params, 0);
        return build_algebra(qr, {"a", "b"}, {{"r", "a", "q"}, {"q", "a", "q"}, {"q", "b", "q"}, {"r", "b", "r"}});
    }
    fail(ErrorKind::UnknownName, "no catalog algebra named '" + name + "'");
}

}  // namespace autalg
