#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "autalg/autalg.h"

namespace {

// RAII holders over the C handles
struct Algebra {
    autalg_algebra* p = nullptr;
    ~Algebra() { autalg_free(p); }
};

struct Text {
    char* p = nullptr;
    ~Text() { autalg_string_free(p); }
};

int report(autalg_status st) {
    if (st != AUTALG_OK) std::cerr << "error: " << autalg_last_error() << "\n";
    return static_cast<int>(st);
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read " << path << "\n";
        return false;
    }
    std::ostringstream s;
    s << in.rdbuf();
    out = s.str();
    return true;
}

// exit code, or -1 when the algebra was loaded
int load(const std::string& path, Algebra& a) {
    std::string text;
    if (!read_file(path, text)) return AUTALG_USAGE;
    autalg_status st = autalg_parse(text.c_str(), &a.p);
    if (st != AUTALG_OK) {
        std::cerr << path << ": ";
        return report(st);
    }
    return -1;
}

int print(autalg_status st, const Text& t) {
    if (st == AUTALG_OK && t.p) std::cout << t.p;
    return report(st);
}

const char* outcome_short(autalg_outcome o) {
    switch (o) {
        case AUTALG_DUALIZABLE: return "D";
        case AUTALG_NON_DUALIZABLE: return "ND";
        default: return "?";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"automatic algebra toolkit: classification, certificates and witness truncations"};
    app.require_subcommand(1);
    app.fallthrough();
    uint64_t seed = 1;
    size_t max_elements = 0;
    app.add_option("--seed", seed, "seed for random suites");
    app.add_option("--max-elements", max_elements, "cap on algebra sizes for searches (0 = default)");

    std::string file, file2, expr, name;
    std::vector<std::string> params;
    bool json = false, emit = false;
    int n = 0, size = 4, k = 3, count = 100;

    auto* classify = app.add_subcommand("classify", "classify an algebra file");
    classify->add_option("FILE", file)->required();
    classify->add_flag("--json", json, "print the JSON verdict");

    auto* analyze = app.add_subcommand("analyze", "structural report");
    analyze->add_option("FILE", file)->required();

    auto* normalize = app.add_subcommand("normalize", "apply the reductions and print the result");
    normalize->add_option("FILE", file)->required();

    auto* cat = app.add_subcommand("catalog", "named algebras");
    cat->add_option("NAME", name)->required();
    cat->add_option("PARAMS", params);
    cat->add_flag("--emit", emit, "print the algebra file");

    auto* chain = app.add_subcommand("chain", "classify M_1..M_N of the alternating chain");
    chain->add_option("N", n)->required()->check(CLI::Range(1, 64));

    auto* check_eq = app.add_subcommand("check-eq", "check an identity or quasi-identity");
    check_eq->add_option("FILE", file)->required();
    check_eq->add_option("EXPR", expr)->required();

    auto* embed = app.add_subcommand("embed", "search an embedding of FILE1 into FILE2");
    embed->add_option("FILE1", file)->required();
    embed->add_option("FILE2", file2)->required();

    std::string base_file;
    auto* witness = app.add_subcommand("witness", "verify a finite truncation of a construction");
    witness->add_option("NAME", name)->required();
    witness->add_option("PARAMS", params);
    witness->add_option("--size", size, "truncation size N")->required();
    witness->add_option("--base", base_file, "base algebra file");

    std::string which;
    auto* probe = app.add_subcommand("probe", "local evaluation probe (F0 or N0sq)");
    probe->add_option("WHICH", which)->required();
    probe->add_option("-k", k, "locality")->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify-cert", "re-check a JSON verdict against an algebra");
    verify->add_option("FILE", file)->required();
    verify->add_option("CERT_FILE", file2)->required();

    auto* random = app.add_subcommand("random", "seeded random suite");
    random->add_option("--count", count, "number of algebras")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : AUTALG_USAGE;
    }

    if (classify->parsed()) {
        Algebra a;
        if (int rc = load(file, a); rc >= 0) return rc;
        Text t;
        return print(autalg_classify(a.p, json ? 1 : 0, &t.p, nullptr), t);
    }
    if (analyze->parsed()) {
        Algebra a;
        if (int rc = load(file, a); rc >= 0) return rc;
        Text t;
        return print(autalg_analyze(a.p, &t.p), t);
    }
    if (normalize->parsed()) {
        Algebra a;
        if (int rc = load(file, a); rc >= 0) return rc;
        Text t;
        return print(autalg_normalize(a.p, &t.p), t);
    }
    if (cat->parsed()) {
        std::vector<long> ps;
        for (const auto& p : params) {
            try {
                size_t used = 0;
                ps.push_back(std::stol(p, &used));
                if (used != p.size()) throw std::invalid_argument(p);
            } catch (const std::exception&) {
                std::cerr << "error: catalog parameter " << p << " is not an integer\n";
                return AUTALG_USAGE;
            }
        }
        Algebra a;
        if (autalg_status st = autalg_catalog(name.c_str(), ps.data(), ps.size(), &a.p); st != AUTALG_OK)
            return report(st);
        Text t;
        if (emit) return print(autalg_emit(a.p, &t.p), t);
        return print(autalg_classify(a.p, 0, &t.p, nullptr), t);
    }
    if (chain->parsed()) {
        for (int i = 1; i <= n; ++i) {
            Algebra a;
            if (autalg_status st = autalg_gen_chain(i, &a.p); st != AUTALG_OK) return report(st);
            int nq = 0, ns = 0;
            autalg_size(a.p, &nq, &ns);
            Text t;
            autalg_outcome o = AUTALG_UNKNOWN;
            if (autalg_status st = autalg_classify(a.p, 0, &t.p, &o); st != AUTALG_OK) return report(st);
            std::string text = t.p, rule;
            if (auto pos = text.find("rule "); pos != std::string::npos)
                rule = text.substr(pos + 5, text.find('\n', pos) - pos - 5);
            std::cout << "M_" << i << " states " << nq << " letters " << ns << " " << outcome_short(o) << " " << rule
                      << "\n";
        }
        return 0;
    }
    if (check_eq->parsed()) {
        Algebra a;
        if (int rc = load(file, a); rc >= 0) return rc;
        Text t;
        return print(autalg_check_equation(a.p, expr.c_str(), nullptr, &t.p), t);
    }
    if (embed->parsed()) {
        Algebra a, b;
        if (int rc = load(file, a); rc >= 0) return rc;
        if (int rc = load(file2, b); rc >= 0) return rc;
        Text t;
        return print(autalg_embed(a.p, b.p, max_elements, nullptr, &t.p), t);
    }
    if (witness->parsed()) {
        Algebra base;
        if (!base_file.empty())
            if (int rc = load(base_file, base); rc >= 0) return rc;
        std::vector<const char*> ps;
        for (const auto& p : params) ps.push_back(p.c_str());
        Text t;
        return print(autalg_witness(name.c_str(), ps.data(), ps.size(), size, base.p, max_elements, &t.p), t);
    }
    if (probe->parsed()) {
        Text t;
        return print(autalg_local_probe(which.c_str(), k, &t.p), t);
    }
    if (verify->parsed()) {
        Algebra a;
        if (int rc = load(file, a); rc >= 0) return rc;
        std::string cert;
        if (!read_file(file2, cert)) return AUTALG_USAGE;
        Text t;
        int ok = 0;
        autalg_status st = autalg_verify_certificate(a.p, cert.c_str(), &ok, &t.p);
        if (st != AUTALG_OK) return report(st);
        std::cout << t.p;
        return ok ? 0 : AUTALG_PRECONDITION;
    }
    if (random->parsed()) {
        Text t;
        autalg_status st = autalg_random_suite(seed, count, &t.p);
        if (st != AUTALG_OK) std::cerr << "seed " << seed << "\n";
        return print(st, t);
    }
    return AUTALG_USAGE;
}
