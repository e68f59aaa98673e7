#include "thuefib/certificate.hpp"

#include <fstream>
#include <stdexcept>

namespace thuefib::pipe {

using nlohmann::ordered_json;

namespace {

std::string zs(const mpz_class& z) { return z.get_str(); }
mpz_class sz(const std::string& s) { return mpz_class(s); }

ordered_json rows_json(const red::IntLattice& l) {
    ordered_json out = ordered_json::array();
    for (auto& r : l.rows) {
        ordered_json row = ordered_json::array();
        for (auto& v : r) row.push_back(zs(v));
        out.push_back(row);
    }
    return out;
}

red::IntLattice rows_from(const ordered_json& j) {
    red::IntLattice l;
    for (auto& r : j) {
        std::vector<mpz_class> row;
        for (auto& v : r) row.push_back(sz(v.get<std::string>()));
        l.rows.push_back(std::move(row));
    }
    return l;
}

ordered_json rat_json(const mpq_class& q) {
    return ordered_json{{"num", zs(q.get_num())}, {"den", zs(q.get_den())}};
}

mpq_class rat_from(const ordered_json& j) {
    mpq_class q(sz(j.at("num").get<std::string>()), sz(j.at("den").get<std::string>()));
    q.canonicalize();
    return q;
}

ordered_json step_json(const red::ReductionState& st) {
    return ordered_json{
        {"c", zs(st.c)},
        {"basis", rows_json(st.input)},
        {"reduced", rows_json(st.reduced)},
        {"c4_sq", zs(st.c4_sq)},
        {"gs_min_sq", rat_json(st.gs_min_sq)},
        {"s_up", zs(st.s_up)},
        {"t_up", zs(st.t_up)},
        {"new_bound", st.new_bound},
        {"cert_bound", st.cert_bound},
    };
}

red::ReductionState step_from(const ordered_json& j) {
    red::ReductionState st;
    st.c = sz(j.at("c").get<std::string>());
    st.input = rows_from(j.at("basis"));
    st.reduced = rows_from(j.at("reduced"));
    st.c4_sq = sz(j.at("c4_sq").get<std::string>());
    st.gs_min_sq = rat_from(j.at("gs_min_sq"));
    st.s_up = sz(j.at("s_up").get<std::string>());
    st.t_up = sz(j.at("t_up").get<std::string>());
    st.new_bound = j.at("new_bound").get<long>();
    st.cert_bound = j.at("cert_bound").get<long>();
    st.cond_ok = st.cert_ok = true;
    return st;
}

ordered_json case_json(const red::CaseOutcome& oc) {
    ordered_json trail = ordered_json::array();
    for (auto& t : oc.shrink_trail)
        trail.push_back(ordered_json{{"box", t.first}, {"logy_up", t.second}});
    ordered_json survivors = ordered_json::array();
    for (auto& sv : oc.survivors)
        survivors.push_back(ordered_json{{"b1", sv.b1},
                                         {"b2", sv.b2},
                                         {"sign", sv.sign},
                                         {"has_xy", sv.has_xy},
                                         {"x", sv.has_xy ? zs(sv.x) : ""},
                                         {"y", sv.has_xy ? zs(sv.y) : ""},
                                         {"nontrivial", sv.nontrivial}});
    return ordered_json{
        {"j", oc.j},
        {"k", oc.k},
        {"l", oc.l},
        {"step", step_json(oc.state)},
        {"n_tilde", oc.n_tilde},
        {"excluded", oc.excluded},
        {"enumerated", oc.enumerated},
        {"b_box", zs(oc.b_box)},
        {"shrink_trail", trail},
        {"survivors", survivors},
    };
}

red::CaseOutcome case_from(const ordered_json& j) {
    red::CaseOutcome oc;
    oc.j = j.at("j").get<int>();
    oc.k = j.at("k").get<int>();
    oc.l = j.at("l").get<int>();
    oc.state = step_from(j.at("step"));
    oc.n_tilde = j.at("n_tilde").get<long>();
    oc.excluded = j.at("excluded").get<bool>();
    oc.enumerated = j.at("enumerated").get<bool>();
    oc.b_box = sz(j.at("b_box").get<std::string>());
    for (auto& t : j.at("shrink_trail"))
        oc.shrink_trail.emplace_back(t.at("box").get<std::string>(),
                                     t.at("logy_up").get<std::string>());
    for (auto& s : j.at("survivors")) {
        red::Survivor sv;
        sv.b1 = s.at("b1").get<long>();
        sv.b2 = s.at("b2").get<long>();
        sv.sign = s.at("sign").get<int>();
        sv.has_xy = s.at("has_xy").get<bool>();
        if (sv.has_xy) {
            sv.x = sz(s.at("x").get<std::string>());
            sv.y = sz(s.at("y").get<std::string>());
        }
        sv.nontrivial = s.at("nontrivial").get<bool>();
        oc.survivors.push_back(std::move(sv));
    }
    return oc;
}

ordered_json per_n_json(const red::PerN& pn) {
    ordered_json cases = ordered_json::array();
    for (auto& c : pn.cases) cases.push_back(case_json(c));
    return ordered_json{{"n", pn.n},
                        {"eliminated", pn.eliminated},
                        {"n_tilde", pn.n_tilde},
                        {"b_box", zs(pn.b_box)},
                        {"cases", cases}};
}

red::PerN per_n_from(const ordered_json& j) {
    red::PerN pn;
    pn.n = j.at("n").get<long>();
    pn.eliminated = j.at("eliminated").get<bool>();
    pn.n_tilde = j.at("n_tilde").get<long>();
    pn.b_box = sz(j.at("b_box").get<std::string>());
    for (auto& c : j.at("cases")) pn.cases.push_back(case_from(c));
    return pn;
}

ordered_json phase_json(const red::PhaseResult& pr) {
    ordered_json per_n = ordered_json::array();
    for (auto& pn : pr.per_n) per_n.push_back(per_n_json(pn));
    return ordered_json{
        {"lo", pr.lo}, {"hi", pr.hi}, {"threshold", pr.threshold}, {"per_n", per_n}};
}

red::PhaseResult phase_from(const ordered_json& j) {
    red::PhaseResult pr;
    pr.lo = j.at("lo").get<long>();
    pr.hi = j.at("hi").get<long>();
    pr.threshold = j.at("threshold").get<long>();
    for (auto& pn : j.at("per_n")) pr.per_n.push_back(per_n_from(pn));
    return pr;
}

ordered_json solved_json(const SolvedEntry& se) {
    ordered_json sols = ordered_json::array();
    for (auto& s : se.set.solutions)
        sols.push_back(ordered_json{
            {"x", zs(s.x)}, {"y", zs(s.y)}, {"value", s.value}, {"trivial", s.trivial}});
    return ordered_json{{"n", se.n}, {"provenance", se.provenance}, {"solutions", sols}};
}

SolvedEntry solved_from(const ordered_json& j) {
    SolvedEntry se;
    se.n = j.at("n").get<long>();
    se.provenance = j.at("provenance").get<std::string>();
    se.set.n = se.n;
    for (auto& s : j.at("solutions")) {
        solver::Solution sol;
        sol.x = sz(s.at("x").get<std::string>());
        sol.y = sz(s.at("y").get<std::string>());
        sol.value = s.at("value").get<int>();
        sol.trivial = s.at("trivial").get<bool>();
        se.set.solutions.push_back(std::move(sol));
    }
    return se;
}

}  // namespace

ordered_json to_json(const Certificate& cert) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["generator"] = ordered_json{{"name", "thuefib"}, {"version", kVersion}};
    j["config"] = ordered_json{
        {"precision_bits", cert.config.precision_bits},
        {"lll_delta", cert.config.lll_delta.get_str()},
        {"rounding", "half-away-from-zero"},
        {"jobs", cert.config.jobs},
        {"max_n", cert.config.max_n},
    };
    j["partial"] = cert.partial;
    j["initial_bound"] = zs(cert.initial_bound);
    ordered_json chain = ordered_json::array();
    for (long b : cert.phase1_chain) chain.push_back(b);
    ordered_json steps = ordered_json::array();
    for (auto& st : cert.phase1_steps) steps.push_back(step_json(st));
    j["phase1"] = ordered_json{{"chain", chain}, {"steps", steps}};
    j["phase2"] = phase_json(cert.phase2);
    ordered_json conv = ordered_json::array();
    for (auto& [n, pass] : cert.convergent_results)
        conv.push_back(ordered_json{{"n", n}, {"pass", pass}});
    j["convergent"] = ordered_json{
        {"lo", cert.convergent_lo}, {"hi", cert.convergent_hi}, {"per_n", conv}};
    j["phase3"] = phase_json(cert.phase3);
    ordered_json boxes = ordered_json::array();
    for (auto& pn : cert.small_boxes) boxes.push_back(per_n_json(pn));
    j["small_n_boxes"] = boxes;
    ordered_json solved = ordered_json::array();
    for (auto& se : cert.solved) solved.push_back(solved_json(se));
    j["solved"] = solved;
    ordered_json elim = ordered_json::array();
    for (auto& er : cert.eliminated)
        elim.push_back(ordered_json{{"lo", zs(er.lo)}, {"hi", zs(er.hi)}, {"by", er.by}});
    j["eliminated"] = elim;
    return j;
}

Certificate from_json(const ordered_json& j) {
    if (j.at("schema_version").get<int>() != kSchemaVersion)
        throw std::runtime_error("certificate: unsupported schema version");
    Certificate cert;
    cert.partial = j.at("partial").get<bool>();
    cert.config.precision_bits = j.at("config").at("precision_bits").get<long>();
    cert.config.lll_delta = mpq_class(j.at("config").at("lll_delta").get<std::string>());
    cert.config.jobs = j.at("config").at("jobs").get<int>();
    cert.config.max_n = j.at("config").at("max_n").get<long>();
    cert.initial_bound = sz(j.at("initial_bound").get<std::string>());
    for (auto& b : j.at("phase1").at("chain")) cert.phase1_chain.push_back(b.get<long>());
    for (auto& st : j.at("phase1").at("steps")) cert.phase1_steps.push_back(step_from(st));
    cert.phase2 = phase_from(j.at("phase2"));
    cert.convergent_lo = j.at("convergent").at("lo").get<long>();
    cert.convergent_hi = j.at("convergent").at("hi").get<long>();
    for (auto& c : j.at("convergent").at("per_n"))
        cert.convergent_results.emplace_back(c.at("n").get<long>(), c.at("pass").get<bool>());
    cert.phase3 = phase_from(j.at("phase3"));
    for (auto& pn : j.at("small_n_boxes")) cert.small_boxes.push_back(per_n_from(pn));
    for (auto& se : j.at("solved")) cert.solved.push_back(solved_from(se));
    for (auto& er : j.at("eliminated"))
        cert.eliminated.push_back(EliminatedRange{sz(er.at("lo").get<std::string>()),
                                                  sz(er.at("hi").get<std::string>()),
                                                  er.at("by").get<std::string>()});
    return cert;
}

void write_certificate(const Certificate& cert, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open certificate path for writing: " + path);
    out << to_json(cert).dump(1) << "\n";
}

Certificate read_certificate(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open certificate: " + path);
    ordered_json j;
    in >> j;
    return from_json(j);
}

namespace {

void verify_solution_set(VerifyReport& rep, const SolvedEntry& se) {
    seq::ThueInstance inst = seq::ThueInstance::make(se.n);
    std::string tag = "n=" + std::to_string(se.n) + ": ";
    for (const auto& s : se.set.solutions) {
        ++rep.checks;
        mpz_class v = inst.form_value(s.x, s.y);
        if (v != s.value || (v != 1 && v != -1))
            rep.fail(tag + "solution (" + s.x.get_str() + "," + s.y.get_str() +
                     ") does not verify");
        if (s.trivial != (::abs(s.y) <= 1)) rep.fail(tag + "bad trivial flag");
        if (!se.set.contains(-s.x, -s.y)) rep.fail(tag + "not closed under negation");
    }
    auto expect = [&](const mpz_class& x, const mpz_class& y) {
        ++rep.checks;
        if (!se.set.contains(x, y)) rep.fail(tag + "missing trivial solution");
    };
    expect(1, 0);
    expect(0, 1);
    expect(inst.fib, 1);
    expect(inst.luc, 1);
    for (size_t i = 1; i < se.set.solutions.size(); ++i) {
        if (se.set.solutions[i] == se.set.solutions[i - 1])
            rep.fail(tag + "duplicate solutions");
    }
}

void verify_reduction_step(VerifyReport& rep, const red::ReductionState& st,
                           const std::string& tag) {
    ++rep.checks;
    mpz_class d_in = red::det(st.input);
    mpz_class d_out = red::det(st.reduced);
    if (d_in != d_out && d_in != -d_out) rep.fail(tag + "determinant not preserved");
    if (!red::is_lll_reduced(st.reduced)) rep.fail(tag + "output not LLL-reduced");
    if (red::max_row_norm_sq(st.reduced) != st.c4_sq) rep.fail(tag + "c4_sq mismatch");
    mpq_class need = mpq_class(st.t_up) * mpq_class(st.t_up) + mpq_class(st.s_up);
    if (mpq_class(st.c4_sq) < need) rep.fail(tag + "c4^2 >= T^2 + S fails");
    if (red::min_gs_norm_sq(st.reduced) < st.gs_min_sq)
        rep.fail(tag + "gs_min_sq overstated");
    if (st.gs_min_sq < need) rep.fail(tag + "certified length condition fails");
}

void verify_case(VerifyReport& rep, long n, const red::CaseOutcome& oc) {
    std::string tag = "n=" + std::to_string(n) + " case j=" + std::to_string(oc.j) + ": ";
    verify_reduction_step(rep, oc.state, tag);
    // Survivor recoveries re-verify exactly; an excluded case may carry no
    // nontrivial survivor.
    seq::ThueInstance inst = seq::ThueInstance::make(n);
    for (const auto& sv : oc.survivors) {
        ++rep.checks;
        if (!sv.has_xy) continue;
        mpz_class v = inst.form_value(sv.x, sv.y);
        if (v != 1 && v != -1) rep.fail(tag + "survivor does not verify");
        if (sv.nontrivial != (::abs(sv.y) >= 2)) rep.fail(tag + "bad survivor flag");
        if (sv.nontrivial && oc.excluded)
            rep.fail(tag + "excluded case carries a nontrivial survivor");
    }
}

}  // namespace

VerifyReport verify(const Certificate& cert) {
    VerifyReport rep;
    for (const auto& se : cert.solved) verify_solution_set(rep, se);

    if (cert.partial) return rep;

    for (size_t i = 0; i < cert.phase1_steps.size(); ++i)
        verify_reduction_step(rep, cert.phase1_steps[i],
                              "phase1 step " + std::to_string(i) + ": ");

    // Chain must be nonincreasing and start at the initial bound.
    for (size_t i = 1; i < cert.phase1_chain.size(); ++i) {
        ++rep.checks;
        if (cert.phase1_chain[i] > cert.phase1_chain[i - 1])
            rep.fail("phase1 chain increases");
    }
    if (!cert.phase1_chain.empty() &&
        mpz_class(cert.phase1_chain.front()) != cert.initial_bound)
        rep.fail("phase1 chain does not start at the initial bound");

    for (const auto& pn : cert.phase2.per_n)
        for (const auto& oc : pn.cases) verify_case(rep, pn.n, oc);
    for (const auto& pn : cert.phase3.per_n)
        for (const auto& oc : pn.cases) verify_case(rep, pn.n, oc);
    for (const auto& pn : cert.small_boxes)
        for (const auto& oc : pn.cases) verify_case(rep, pn.n, oc);

    // Convergent flags must cover the phase3 range and all pass.
    ++rep.checks;
    if (cert.convergent_lo > cert.phase3.lo || cert.convergent_hi < cert.phase3.hi)
        rep.fail("convergent check does not cover the phase3 range");
    for (auto& [n, pass] : cert.convergent_results)
        if (!pass) rep.fail("convergent check failed at n=" + std::to_string(n));

    // Coverage: solved n plus eliminated ranges partition [1, initial_bound].
    ++rep.checks;
    mpz_class next = 1;
    for (const auto& se : cert.solved) {
        if (mpz_class(se.n) != next) {
            rep.fail("coverage gap before n=" + std::to_string(se.n));
            return rep;
        }
        next += 1;
    }
    for (const auto& er : cert.eliminated) {
        if (er.lo != next) {
            rep.fail("coverage gap at " + er.lo.get_str());
            return rep;
        }
        next = er.hi + 1;
    }
    if (next != cert.initial_bound + 1)
        rep.fail("coverage stops at " + next.get_str() + " instead of the initial bound");
    return rep;
}

}  // namespace thuefib::pipe
