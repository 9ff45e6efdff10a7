#include "autalg/autalg.h"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "autalg/algebra.hpp"
#include "autalg/classifier.hpp"
#include "autalg/error.hpp"
#include "autalg/io.hpp"
#include "autalg/powers.hpp"
#include "autalg/random.hpp"
#include "autalg/structure.hpp"
#include "autalg/terms.hpp"
#include "autalg/witness.hpp"

struct autalg_algebra {
    autalg::AutomaticAlgebra m;
};

namespace {

using namespace autalg;

thread_local std::string g_error;
thread_local std::string g_kind;

autalg_status guarded(const std::function<void()>& body) {
    g_error.clear();
    g_kind.clear();
    try {
        body();
        return AUTALG_OK;
    } catch (const Error& e) {
        g_error = e.what();
        g_kind = error_kind_name(e.kind());
        return static_cast<autalg_status>(exit_code_for(e.kind()));
    } catch (const nlohmann::json::exception& e) {
        g_error = std::string("ParseError: ") + e.what();
        g_kind = "ParseError";
        return AUTALG_PARSE;
    } catch (const std::exception& e) {
        g_error = std::string("InternalInconsistency: ") + e.what();
        g_kind = "InternalInconsistency";
        return AUTALG_INTERNAL;
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

void need(const void* p, const char* what) {
    if (!p) fail(ErrorKind::Usage, std::string(what) + " is null");
}

std::string state_set(const AutomaticAlgebra& m, const std::vector<int>& qs) {
    std::string out = "{";
    for (size_t i = 0; i < qs.size(); ++i) out += (i ? " " : "") + m.state_names()[qs[i]];
    return out + "}";
}

std::string letter_set(const AutomaticAlgebra& m, const std::vector<int>& as) {
    std::string out = "{";
    for (size_t i = 0; i < as.size(); ++i) out += (i ? " " : "") + m.letter_names()[as[i]];
    return out + "}";
}

// verdicts known from the literature that the rule engine does not derive
std::string reported_note(const AutomaticAlgebra& m) {
    if (m.same_table(catalog("L")))
        return "reported (not derived): non_dualizable; no rule in this engine decides L, see the witness "
               "ex_all4_L for the finite identity checks";
    return "";
}

std::string classify_text(const AutomaticAlgebra& m, const Verdict& v) {
    std::ostringstream out;
    out << "verdict " << outcome_name(v.outcome) << "\n";
    out << "rule " << v.rule << "\n";
    out << "certificate " << v.certificate.dump() << "\n";
    out << "trace\n";
    for (const auto& t : v.trace)
        out << "  " << t.rule << " " << (t.fired ? "fired" : "-") << (t.detail.empty() ? "" : ": " + t.detail)
            << "\n";
    std::string note = reported_note(m);
    if (!note.empty()) out << "note " << note << "\n";
    return out.str();
}

std::string analyze_text(const AutomaticAlgebra& m) {
    std::ostringstream out;
    out << "== size\n";
    out << "states " << m.num_states() << ", letters " << m.num_letters() << ", total "
        << (m.is_total() ? "yes" : "no") << "\n";

    out << "== components\n";
    auto comps = components(m);
    for (size_t i = 0; i < comps.size(); ++i) out << i << " " << state_set(m, comps[i]) << "\n";

    out << "== letter sets\n";
    auto ls = letter_sets(m);
    for (int a = 0; a < m.num_letters(); ++a)
        out << m.letter_names()[a] << " dom " << state_set(m, ls[a].dom) << " ran " << state_set(m, ls[a].ran)
            << " ks " << state_set(m, ls[a].ks) << "\n";

    out << "== whiskery\n";
    if (auto w = whiskery_check(m))
        out << "fails: " << m.letter_names()[w->letter] << " at " << m.state_names()[w->state] << ", F_"
            << w->embedding.m << " embeds\n";
    else
        out << "holds (direct, quasi-equation and F_m embedding agree)\n";

    out << "== rankill\n";
    if (auto r = rankill_check(m))
        out << "case " << r->case_no << ": letter " << m.letter_names()[r->letter] << ", state "
            << m.state_names()[r->state] << ", word \"" << word_string(m, r->word) << "\"\n";
    else
        out << "none\n";

    out << "== order sensitivity\n";
    if (auto o = order_sensitivity(m))
        out << "sensitive at " << m.state_names()[o->state] << ": \"" << word_string(m, o->killed)
            << "\" kills, \"" << word_string(m, o->survives) << "\" survives\n";
    else
        out << "insensitive\n";

    out << "== permutation profile\n";
    auto p = permutation_profile(m);
    out << "permutational " << (p.permutational ? "yes" : "no") << ", commuting " << (p.commuting ? "yes" : "no")
        << "\n";
    for (size_t i = 0; i < p.per_component.size(); ++i) {
        const auto& c = p.per_component[i];
        out << "component " << i << " total " << letter_set(m, c.total) << " undefined " << letter_set(m, c.undefined)
            << " partial " << letter_set(m, c.partial) << "\n";
    }

    out << "== letter-affine\n";
    auto la = letter_affine_analysis(m);
    if (la.affine) {
        out << "affine yes\n";
        for (size_t i = 0; i < la.groups.size(); ++i) {
            const auto& g = la.groups[i];
            out << "component " << i << " " << state_set(m, g.states) << " exponent " << g.exponent << " |H| "
                << g.subgroup_h.size() << " decomposition";
            for (const auto& f : g.decomposition) out << " Z" << f.order;
            out << "\n";
            for (size_t k = 0; k < g.letters.size(); ++k)
                out << "  " << m.letter_names()[g.letters[k]] << " -> " << g.group.labels[g.letter_images[k]] << "\n";
            if (!g.dropped_letters.empty()) out << "  dropped " << letter_set(m, g.dropped_letters) << "\n";
        }
    } else {
        out << "affine no: " << la.reason << "\n";
    }

    out << "== nondcomm\n";
    if (p.permutational && p.commuting) {
        if (auto w = nondcomm_check(m))
            out << "witness b " << m.letter_names()[w->b] << ", c " << m.letter_names()[w->c] << ", m " << w->m
                << "\n";
        else
            out << "no witness\n";
    } else {
        out << "not applicable\n";
    }
    return out.str();
}

std::string normalize_text(const AutomaticAlgebra& m) {
    auto [n, steps] = normalize_algebra(m);
    std::ostringstream out;
    out << "steps " << steps.size() << "\n";
    for (const auto& s : steps) out << step_kind_name(s.kind) << " removed " << s.removed << " kept " << s.kept << "\n";
    out << "--- normalized ---\n" << emit_algebra_file(n);
    return out.str();
}

std::string random_suite(uint64_t seed, int count) {
    if (count < 1) fail(ErrorKind::BadParams, "count must be positive");
    Rng rng(seed);
    std::map<std::string, int> by_outcome;
    int order_checked = 0;
    for (int i = 0; i < count; ++i) {
        AutomaticAlgebra m = random_algebra(rng, 4, 3);
        whiskery_check(m);  // throws on disagreement
        Verdict v = classify(m);
        auto check = verify_certificate(m, verdict_to_json(v));
        if (v.outcome != Outcome::Unknown && !check.ok)
            fail(ErrorKind::InternalInconsistency, "certificate rejected for random algebra " + std::to_string(i) +
                                                       ": " + check.reason + "\n" + emit_algebra_file(m));
        if (m.num_states() <= 3 && m.num_letters() <= 2) {
            bool fast = order_sensitivity(m).has_value();
            bool slow = order_sensitivity_bounded(m, 6).has_value();
            if (fast != slow)
                fail(ErrorKind::InternalInconsistency,
                     "order sensitivity disagrees with the length-6 search\n" + emit_algebra_file(m));
            ++order_checked;
        }
        ++by_outcome[outcome_name(v.outcome)];
    }
    std::ostringstream out;
    out << "seed " << seed << "\n";
    out << "algebras " << count << "\n";
    for (const auto& [k, n] : by_outcome) out << k << " " << n << "\n";
    out << "order sensitivity cross-checked " << order_checked << "\n";
    out << "all certificates verified, whiskery conditions agree\n";
    return out.str();
}

}  // namespace

extern "C" {

const char* autalg_last_error(void) { return g_error.c_str(); }
const char* autalg_last_error_kind(void) { return g_kind.c_str(); }

void autalg_string_free(char* s) { std::free(s); }

autalg_status autalg_parse(const char* text, autalg_algebra** out) {
    return guarded([&] {
        need(text, "text");
        need(out, "out");
        *out = new autalg_algebra{parse_algebra_file(text)};
    });
}

autalg_status autalg_catalog(const char* name, const long* params, size_t nparams, autalg_algebra** out) {
    return guarded([&] {
        need(name, "name");
        need(out, "out");
        if (nparams) need(params, "params");
        std::vector<long> ps(params, params + nparams);
        *out = new autalg_algebra{catalog(name, ps)};
    });
}

autalg_status autalg_gen_chain(int n, autalg_algebra** out) {
    return guarded([&] {
        need(out, "out");
        *out = new autalg_algebra{gen_chain(n)};
    });
}

void autalg_free(autalg_algebra* m) { delete m; }

autalg_status autalg_emit(const autalg_algebra* m, char** out) {
    return guarded([&] {
        need(m, "algebra");
        need(out, "out");
        *out = dup(emit_algebra_file(m->m));
    });
}

autalg_status autalg_size(const autalg_algebra* m, int* states, int* letters) {
    return guarded([&] {
        need(m, "algebra");
        if (states) *states = m->m.num_states();
        if (letters) *letters = m->m.num_letters();
    });
}

autalg_status autalg_classify(const autalg_algebra* m, int json, char** out, autalg_outcome* outcome) {
    return guarded([&] {
        need(m, "algebra");
        need(out, "out");
        Verdict v = classify(m->m);
        std::string text = json ? verdict_to_json(v).dump(2) + "\n" : classify_text(m->m, v);
        if (outcome) *outcome = static_cast<autalg_outcome>(v.outcome);
        *out = dup(text);
    });
}

autalg_status autalg_analyze(const autalg_algebra* m, char** out) {
    return guarded([&] {
        need(m, "algebra");
        need(out, "out");
        *out = dup(analyze_text(m->m));
    });
}

autalg_status autalg_normalize(const autalg_algebra* m, char** out) {
    return guarded([&] {
        need(m, "algebra");
        need(out, "out");
        *out = dup(normalize_text(m->m));
    });
}

autalg_status autalg_check_equation(const autalg_algebra* m, const char* expr, int* holds, char** out) {
    return guarded([&] {
        need(m, "algebra");
        need(expr, "expression");
        need(out, "out");
        QuasiIdentity qi = parse_quasi_identity(expr);
        auto cex = qi.premises.empty() ? check_identity(m->m, qi.conclusion.first, qi.conclusion.second)
                                       : check_quasi_identity(m->m, qi);
        if (holds) *holds = cex ? 0 : 1;
        *out = dup(cex ? "fails: " + assignment_string(m->m, *cex) + "\n" : std::string("holds\n"));
    });
}

autalg_status autalg_embed(const autalg_algebra* a, const autalg_algebra* b, size_t max_elements, int* found,
                           char** out) {
    return guarded([&] {
        need(a, "source algebra");
        need(b, "target algebra");
        need(out, "out");
        HomOptions opt;
        opt.injective_only = true;
        opt.limit = 1;
        if (max_elements) opt.max_elements = max_elements;
        auto homs = enumerate_homs(as_groupoid(a->m), as_groupoid(b->m), opt);
        if (found) *found = homs.empty() ? 0 : 1;
        std::ostringstream s;
        if (homs.empty()) {
            s << "no embedding\n";
        } else {
            s << "embedding\n";
            for (int x = 0; x < a->m.size(); ++x) s << a->m.code_name(x) << " -> " << b->m.code_name(homs[0][x]) << "\n";
        }
        *out = dup(s.str());
    });
}

autalg_status autalg_verify_certificate(const autalg_algebra* m, const char* cert_json, int* ok, char** out) {
    return guarded([&] {
        need(m, "algebra");
        need(cert_json, "certificate");
        need(out, "out");
        Json j = Json::parse(cert_json);
        auto r = verify_certificate(m->m, j);
        if (ok) *ok = r.ok ? 1 : 0;
        *out = dup((r.ok ? "accepted: " : "rejected: ") + r.reason + "\n");
    });
}

autalg_status autalg_witness(const char* name, const char* const* params, size_t nparams, int size,
                             const autalg_algebra* base, size_t max_elements, char** out) {
    return guarded([&] {
        need(name, "name");
        need(out, "out");
        if (nparams) need(params, "params");
        std::vector<std::string> ps(params, params + nparams);
        std::optional<AutomaticAlgebra> b;
        if (base) b = base->m;
        if (!max_elements) max_elements = 128;
        ConstructionSpec sp = build_truncation(name, ps, size, b);
        ConstructionReport rep = verify_construction(sp);
        std::string text = rep.text;
        if (sp.elements.size() <= max_elements) {
            text += kernel_block_analysis(sp, sp.nu, max_elements).text;
        } else {
            text += "kernel analysis skipped: |A| = " + std::to_string(sp.elements.size()) +
                    " exceeds --max-elements " + std::to_string(max_elements) + "\n";
        }
        *out = dup(text);
    });
}

autalg_status autalg_local_probe(const char* which, int k, char** out) {
    return guarded([&] {
        need(which, "which");
        need(out, "out");
        std::string w = which;
        LocalEvalReport r;
        if (w == "F0") {
            AutomaticAlgebra m = catalog("F", {0});
            std::vector<PowerElement> a;
            for (int c = 0; c < m.size(); ++c) a.push_back(PowerElement{{c}});
            r = local_eval_probe(m, a, k);
        } else if (w == "N0sq") {
            r = local_eval_probe(catalog("N", {0}), n0_square_probe_algebra(), k);
        } else {
            fail(ErrorKind::UnknownName, "probe must be F0 or N0sq");
        }
        if (r.letter_range_violations)
            fail(ErrorKind::PropositionViolated, "3-local map with a letter in range is not an evaluation\n" + r.text);
        *out = dup(r.text);
    });
}

autalg_status autalg_random_suite(uint64_t seed, int count, char** out) {
    return guarded([&] {
        need(out, "out");
        *out = dup(random_suite(seed, count));
    });
}

}  // extern "C"
