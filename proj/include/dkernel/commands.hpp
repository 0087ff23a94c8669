#pragma once

#include <map>
#include <string>
#include <vector>

#include "prolongation.hpp"
#include "report.hpp"
#include "specfile.hpp"

namespace dk {

using Flags = std::map<std::string, std::string>;

namespace detail {

inline const std::string& require_flag(const Flags& f, const std::string& name) {
    auto it = f.find(name);
    if (it == f.end()) throw DomainError("missing --" + name);
    return it->second;
}

inline const DeltaIdealCandidate& pick_candidate(BuiltSpec& spec, const Flags& f,
                                                 const std::string& key) {
    auto it = f.find(key);
    if (it != f.end()) return spec.candidate(it->second);
    if (spec.candidates().size() == 1) return spec.candidates().front();
    throw DomainError("missing --" + key);
}

inline std::string join_names(const std::vector<std::string>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i];
    return s.empty() ? "none" : s;
}

inline void set_check(Report& rep, const std::string& key, const CheckResult& r) {
    rep.set(key, r.ok);
    if (!r.ok && !r.certificate.empty()) rep.set(key + "_certificate", r.certificate);
}

} // namespace detail

inline void cmd_prolong(BuiltSpec& spec, Report& rep) {
    const AlgebraPtr& a = spec.algebra();
    ProlongedRing pr = prolong_ring(a);
    std::vector<std::string> vars;
    for (int v : pr.algebra->main_vars()) vars.push_back(pr.algebra->table()->name(v));
    rep.set("vars", detail::join_names(vars));
    Ideal tau = prolongation_ideal(Ideal::make(a, std::vector<Poly>{}));
    rep.set("relations", tau.generators().empty() ? "none" : tau.to_string());
    if (spec.has_delta()) {
        std::vector<std::string> sec;
        for (int v : a->main_vars())
            sec.push_back(prime_name(a->table()->name(v)) + " = " +
                          spec.delta().image(v).to_string());
        rep.set("section", detail::join_names(sec));
    }
}

inline void cmd_check_d_subvariety(BuiltSpec& spec, const Flags& flags, Report& rep) {
    AffineDVariety V = AffineDVariety::from_derivation(spec.delta());
    const DeltaIdealCandidate& c = detail::pick_candidate(spec, flags, "ideal");
    rep.set("ideal", c.name + " = " + c.ideal.to_string());
    CheckResult direct = is_d_subvariety(V, c.ideal);
    CheckResult oracle = is_d_subvariety_oracle(V, c.ideal);
    detail::set_check(rep, "direct", direct);
    detail::set_check(rep, "oracle", oracle);
    rep.set("agree", direct.ok == oracle.ok);
    rep.set_verdict(direct.ok);
}

inline void cmd_check_d_point(BuiltSpec& spec, const Flags& flags, Report& rep) {
    AffineDVariety V = AffineDVariety::from_derivation(spec.delta());
    AlgebraPtr params = parameter_algebra(spec.algebra());
    std::map<std::string, AlgebraElement> coords;
    std::vector<std::string> echo;
    for (auto& part : detail::split_list(detail::require_flag(flags, "at"), ',', 0)) {
        auto [name, value] = detail::split_eq(part, 0);
        coords[name] = AlgebraElement(params, parse_poly(value, params->table()));
        echo.push_back(name + " = " + coords[name].to_string());
    }
    rep.set("point", detail::join_names(echo));
    ConstantPointReport r = is_constant_d_point(V, coords);
    rep.set("on_variety", r.on_variety);
    rep.set("constant", r.constant);
    if (!r.certificate.empty()) rep.set("certificate", r.certificate);
    rep.set_verdict(r.on_variety && r.constant);
}

inline void cmd_check_d_group(BuiltSpec& spec, Report& rep) {
    CheckResult r = check_d_group(spec.dvariety());
    detail::set_check(rep, "d_group", r);
    rep.set_verdict(r.ok);
}

inline void cmd_check_twisted(BuiltSpec& spec, const Flags& flags, Report& rep) {
    AlgebraElement a = spec.element(detail::require_flag(flags, "a"));
    rep.set("a", a.to_string());
    CheckResult r = check_twisted_d_group(spec.dvariety(), a);
    detail::set_check(rep, "twisted_d_group", r);
    rep.set_verdict(r.ok);
}

inline void cmd_check_coderivation(BuiltSpec& spec, const Flags& flags, Report& rep) {
    AlgebraElement a = spec.element(detail::require_flag(flags, "a"));
    rep.set("a", a.to_string());
    CheckResult r = check_a_coderivation(spec.hopf(), spec.delta(), a);
    detail::set_check(rep, "coderivation", r);
    rep.set_verdict(r.ok);
}

inline void cmd_check_hopf_axioms(BuiltSpec& spec, Report& rep) {
    const Hopf& h = spec.hopf();
    CheckResult co = check_coassociativity(h);
    CheckResult cu = check_counit(h);
    CheckResult an = check_antipode(h);
    detail::set_check(rep, "coassociativity", co);
    detail::set_check(rep, "counit", cu);
    detail::set_check(rep, "antipode", an);
    rep.set_verdict(co.ok && cu.ok && an.ok);
}

inline void cmd_magic(BuiltSpec& spec, const Flags& flags, Report& rep) {
    AlgebraElement a = spec.element(detail::require_flag(flags, "a"));
    rep.set("a", a.to_string());
    MagicFit fit = fit_magic_constant(spec.delta(), a);
    rep.set("found", fit.found);
    if (fit.found) {
        rep.set("c", fit.constant.to_string());
        if (fit.underdetermined) rep.set("underdetermined", true);
    } else {
        rep.set("residual", fit.residual.to_string());
    }
    bool ok = fit.found;
    auto it = flags.find("c");
    if (it != flags.end()) {
        bool matches =
            fit.found && fit.constant == AlgebraElement::variable(spec.algebra(), it->second);
        rep.set("expected", it->second);
        rep.set("matches", matches);
        ok = ok && matches;
    }
    rep.set_verdict(ok);
}

inline void cmd_pi(BuiltSpec& spec, const Flags& flags, Report& rep) {
    AlgebraElement a = spec.element(detail::require_flag(flags, "a"));
    rep.set("a", a.to_string());
    PiReport r = build_pi(spec.dvariety(), a);
    rep.set("c", r.magic.constant.to_string());
    const AlgebraPtr& e = r.pi.source();
    for (int v : e->primary_vars())
        rep.set("pi(" + e->table()->name(v) + ")", r.pi.image(v).to_string());
    detail::set_check(rep, "twisted", r.twisted);
    detail::set_check(rep, "homomorphism", r.homomorphism);
    detail::set_check(rep, "d_morphism", r.d_morphism);
    rep.set_verdict(r.ok);
}

inline void cmd_ore_mul(BuiltSpec& spec, const Flags& flags, Report& rep) {
    const OreRingPtr& R = spec.ore();
    OrePoly p = parse_ore_poly(R, detail::require_flag(flags, "p"));
    OrePoly q = parse_ore_poly(R, detail::require_flag(flags, "q"));
    OrePoly prod = ore_mul(p, q);
    rep.set("p", p.to_string());
    rep.set("q", q.to_string());
    rep.set("product", prod.to_string());
    rep.set("degree", static_cast<long>(prod.degree()));
}

inline void cmd_ore_inner(BuiltSpec& spec, const Flags& flags, Report& rep) {
    const OreRingPtr& R = spec.ore();
    AlgebraElement f = [&] {
        auto it = flags.find("f");
        if (it != flags.end()) return spec.element(it->second);
        const auto& pv = spec.algebra()->primary_vars();
        if (pv.empty()) throw DomainError("no generators to probe; pass --f");
        return AlgebraElement::variable(spec.algebra(), pv.front());
    }();
    rep.set("f", f.to_string());
    auto w = detect_inner(R, f);
    rep.set("found", w.has_value());
    bool ok = false;
    if (w) {
        rep.set("a", w->a.to_string());
        rep.set("verified", w->verified);
        if (!w->verified && !w->certificate.empty()) rep.set("certificate", w->certificate);
        if (w->verified) {
            ChangeOfVariable cv = change_of_variable_inner(R, w->a);
            detail::set_check(rep, "twist_identity", cv.twist_identity);
            ok = cv.twist_identity.ok;
        }
    }
    rep.set_verdict(ok);
}

inline void cmd_ore_shape(BuiltSpec& spec, Report& rep) {
    const OreRingPtr& R = spec.ore();
    const Hopf& h = spec.hopf();
    if (!spec.doc().coproduct_x) throw DomainError("spec has no coproduct_x line");
    DoubledOrePoly dx =
        parse_doubled_x(h, spec.doc().coproduct_x->value, spec.doc().coproduct_x->line);
    CoproductShape shape = check_coproduct_shape(R, h, dx);
    rep.set("s", shape.s.to_string());
    rep.set("t", shape.t.to_string());
    rep.set("v", shape.v.to_string());
    rep.set("w", shape.w.to_string());
    rep.set("v_zero", shape.v_zero);
    rep.set("s_ok", shape.s_ok);
    rep.set("t_ok", shape.t_ok);
    if (shape.a) rep.set("a", shape.a->to_string());
    if (shape.b) rep.set("b", shape.b->to_string());
    if (!shape.note.empty()) rep.set("note", shape.note);
    rep.set("conforming", shape.conforming);
    rep.set_verdict(shape.conforming);
}

inline void cmd_dme(BuiltSpec& spec, const std::string& sub, const Flags& flags, Report& rep) {
    if (sub == "delta-ideal") {
        const DeltaIdealCandidate& P = detail::pick_candidate(spec, flags, "ideal");
        rep.set("ideal", P.name + " = " + P.ideal.to_string());
        rep.set("claimed_prime", P.claimed_prime);
        CheckResult r = is_delta_ideal(P.ideal, spec.delta());
        detail::set_check(rep, "delta_ideal", r);
        rep.set_verdict(r.ok);
    } else if (sub == "sigma-delta-ideal") {
        const DeltaIdealCandidate& P = detail::pick_candidate(spec, flags, "ideal");
        rep.set("ideal", P.name + " = " + P.ideal.to_string());
        CheckResult r = is_sigma_delta_ideal(P.ideal, spec.sigma(), spec.delta());
        detail::set_check(rep, "sigma_delta_ideal", r);
        rep.set_verdict(r.ok);
    } else if (sub == "locally-closed") {
        const DeltaIdealCandidate& P = detail::pick_candidate(spec, flags, "p");
        rep.set("p", P.name + " = " + P.ideal.to_string());
        std::vector<DeltaIdealCandidate> family;
        std::vector<std::string> names;
        for (auto& c : spec.candidates())
            if (c.name != P.name) {
                family.push_back(c);
                names.push_back(c.name);
            }
        rep.set("family", detail::join_names(names));
        LocallyClosedReport r = check_locally_closed_among(P, family, spec.delta());
        rep.set("empty_family", r.empty_family);
        if (!r.used.empty()) rep.set("used", detail::join_names(r.used));
        if (r.intersection) rep.set("intersection", r.intersection->to_string());
        if (!r.witness.empty()) rep.set("witness", r.witness);
        rep.set_verdict(r.verdict);
    } else if (sub == "rationality") {
        const DeltaIdealCandidate& P = detail::pick_candidate(spec, flags, "p");
        rep.set("p", P.name + " = " + P.ideal.to_string());
        AlgebraElement num = spec.element(detail::require_flag(flags, "num"));
        AlgebraElement den = spec.element(detail::require_flag(flags, "den"));
        rep.set("fraction", "(" + num.to_string() + ") / (" + den.to_string() + ")");
        RationalityReport r = check_rationality_witness(P, num, den, spec.delta());
        const char* verdict = nullptr;
        switch (r.verdict) {
            case RationalityVerdict::NotConstant: verdict = "not_constant"; break;
            case RationalityVerdict::ConstantScalar: verdict = "constant_scalar"; break;
            case RationalityVerdict::ConstantNonScalar: verdict = "constant_non_scalar"; break;
            case RationalityVerdict::ConstantAmbiguous: verdict = "constant_ambiguous"; break;
        }
        rep.set("kind", verdict);
        if (!r.lambda.empty()) rep.set("lambda", r.lambda);
        if (!r.detail.empty()) rep.set("detail", r.detail);
        rep.set("refutes", r.refutes);
        rep.set_verdict(!r.refutes);
    } else if (sub == "primitivity") {
        const DeltaIdealCandidate& P = detail::pick_candidate(spec, flags, "p");
        std::vector<AlgebraElement> mgens;
        for (auto& g : detail::split_list(detail::require_flag(flags, "m"), ',', 0))
            mgens.push_back(spec.element(g));
        Ideal m = Ideal::make(spec.algebra(), mgens);
        rep.set("p", P.name + " = " + P.ideal.to_string());
        rep.set("m", m.to_string());
        PrimitivityReport r = check_primitivity_witness(P, m, spec.candidates(), spec.delta());
        if (!r.intervening.empty()) rep.set("intervening", r.intervening);
        rep.set_verdict(r.verdict);
    } else {
        throw DomainError("unknown dme subcheck '" + sub + "'");
    }
}

// Dispatch.  Throws DomainError / ParseError / ResourceExhausted; the caller turns
// those into exit code 2.
inline Report run_command(BuiltSpec& spec, const std::vector<std::string>& words,
                          const Flags& flags) {
    std::string cmd;
    for (std::size_t i = 0; i < words.size(); ++i) cmd += (i ? " " : "") + words[i];
    Report rep;
    rep.set("command", cmd);
    auto it = flags.find("spec");
    if (it != flags.end()) rep.set("spec", it->second);

    if (cmd == "prolong") cmd_prolong(spec, rep);
    else if (cmd == "check d-subvariety") cmd_check_d_subvariety(spec, flags, rep);
    else if (cmd == "check d-point") cmd_check_d_point(spec, flags, rep);
    else if (cmd == "check d-group") cmd_check_d_group(spec, rep);
    else if (cmd == "check twisted") cmd_check_twisted(spec, flags, rep);
    else if (cmd == "check coderivation") cmd_check_coderivation(spec, flags, rep);
    else if (cmd == "check hopf-axioms") cmd_check_hopf_axioms(spec, rep);
    else if (cmd == "magic") cmd_magic(spec, flags, rep);
    else if (cmd == "pi") cmd_pi(spec, flags, rep);
    else if (cmd == "ore mul") cmd_ore_mul(spec, flags, rep);
    else if (cmd == "ore inner") cmd_ore_inner(spec, flags, rep);
    else if (cmd == "ore shape") cmd_ore_shape(spec, rep);
    else if (words.size() == 2 && words[0] == "dme") cmd_dme(spec, words[1], flags, rep);
    else throw DomainError("unknown command '" + cmd + "'");
    return rep;
}

} // namespace dk
