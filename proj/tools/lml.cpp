/*
   Copyright 2026 the lml authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// lml: exact symbolic computation for the affine charts of local models:
// alcove combinatorics, Groebner-based ideal checks, chart builders and
// theorem-level verification harnesses. Exit codes: 0 success/pass,
// 1 verification failure, 2 usage error, 3 budget exceeded.

#include <CLI11.hpp>

#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include <lml/json_io.hpp>
#include <lml/lift.hpp>
#include <lml/verify.hpp>
#include <lml/veronese.hpp>

namespace {

using namespace lml;

struct CliState {
    Config cfg = Config::from_env();
    bool budget_explicit = false;
    bool json_output = false;
    std::string out_path;
    std::string command_line;
    int exit_code = 0;
    detail::Stopwatch clock;

    Budget budget() const { return Budget{cfg.budget, 0}; }

    RunManifest manifest(json params) const {
        RunManifest m;
        m.command = command_line;
        m.params = std::move(params);
        m.budget = cfg.budget;
        if (!out_path.empty()) m.outputs.push_back(out_path);
        m.ms = clock.ms();
        return m;
    }

    void emit(json payload, json params) {
        RunManifest m = manifest(std::move(params));
        if (!out_path.empty()) {
            write_artifact(out_path, payload, m);
            std::cout << "wrote " << out_path << "\n";
        } else if (json_output) {
            payload["manifest"] = m.to_json();
            std::cout << payload.dump(2) << "\n";
        }
    }
};

void print_report(const VerificationReport& rep) {
    std::cout << rep.theorem << ": " << rep.status;
    if (!rep.params.empty()) {
        std::cout << " (";
        bool first = true;
        for (const auto& [k, v] : rep.params) {
            if (!first) std::cout << ", ";
            std::cout << k << "=" << v;
            first = false;
        }
        std::cout << ")";
    }
    std::cout << " [" << rep.ms << " ms]\n";
    for (const auto& e : rep.evidence) {
        std::cout << "  " << (e.ok ? "pass" : "FAIL") << "  " << e.name;
        if (!e.detail.empty()) std::cout << "  -- " << e.detail;
        std::cout << "\n";
    }
}

int finish_report(CliState& st, const VerificationReport& rep, json params) {
    if (st.json_output || !st.out_path.empty()) {
        st.emit(report_to_json(rep), std::move(params));
        if (st.out_path.empty() && !st.json_output) print_report(rep);
    }
    if (!st.json_output) print_report(rep);
    if (rep.status == "pass") return 0;
    if (rep.status == "budget") return 3;
    return 1;
}

ChartPresentation build_chart_by_case(const std::string& cs, long long n, long long r,
                                      long long p, const std::string& eps, bool literal) {
    RootNormalization norm =
        literal ? RootNormalization::literal_alpha : RootNormalization::product_normalized;
    if (cs == "gl" || cs == "gl-iwahori") return build_gl_iwahori(n, r);
    if (cs == "gl-matrix" || cs == "gl-iwahori-matrix") return build_gl_iwahori_matrix(n, r);
    if (cs == "gl-pro-p") return build_gl_pro_p(ModelParams(n, r, p), norm);
    if (cs == "gl-component") {
        long long e = eps == "+1" || eps == "1" ? 1 : eps == "-1" ? -1 : std::stoll(eps);
        return build_component(ModelParams(n, r, p), e);
    }
    if (cs == "gl-component-xform" || cs == "c1") return component_chart_r1((std::size_t)n, p);
    if (cs == "gsp" || cs == "gsp-iwahori") return build_gsp_iwahori(n);
    if (cs == "gsp-hs") return build_gsp_hs(n, p);
    if (cs == "gsp-shadrach") return build_gsp_shadrach(n, p);
    if (cs == "worst-fiber") return worst_fiber(build_gl_pro_p(ModelParams(n, r, p), norm));
    if (cs == "normalization") return normalization_presentation((std::size_t)n, p);
    if (cs == "elliptic-B") return build_elliptic_triangle(p).base;
    if (cs == "elliptic-sh") return build_elliptic_triangle(p).sh;
    if (cs == "elliptic-hs") return build_elliptic_triangle(p).hs;
    if (cs == "elliptic-prime") return build_elliptic_triangle(p).prime;
    throw CLI::ValidationError("--case", "unknown chart case '" + cs + "'");
}

MonomialOrder order_by_name(const std::string& name) {
    if (name == "degrevlex") return MonomialOrder::degrevlex();
    if (name == "lex") return MonomialOrder::lex();
    throw CLI::ValidationError("--order", "unknown order '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace lml;
    CliState st;
    {
        std::ostringstream cmd;
        for (int i = 0; i < argc; ++i) cmd << (i ? " " : "") << argv[i];
        st.command_line = cmd.str();
    }

    CLI::App app{"exact verification toolkit for local-model chart presentations"};
    app.require_subcommand(1);
    app.add_option("--budget", st.cfg.budget, "reduction-step budget for basis computations")
        ->envname("LML_BUDGET");
    app.add_option("--threads", st.cfg.threads,
                   "worker threads (results are identical for every value)")
        ->envname("LML_THREADS");
    app.add_flag("--json", st.json_output, "machine-readable output");

    long long n = 3, r = 1, p = st.cfg.prime, g = 2, i_index = 0;
    long long D = -1;
    int K = st.cfg.precision;
    std::string eps = "+1", chart_case = "gl", order_name = "degrevlex";
    std::string ideal_path, ideal2_path, poly_text, map_path, file_path, vars_csv;
    std::string torsion_case = "c1";
    bool gsp_flag = false, extreme_flag = false, literal_roots = false, wide = false;

    // ----- alcove -----
    auto* alcove = app.add_subcommand("alcove", "alcove combinatorics");
    alcove->require_subcommand(1);
    auto* al_enum = alcove->add_subcommand("enum", "enumerate minuscule alcoves");
    al_enum->add_option("--n", n)->required();
    al_enum->add_option("--r", r)->required();
    al_enum->add_flag("--gsp", gsp_flag, "keep only G-alcoves (n is the full rank 2n)");
    al_enum->add_flag("--extreme", extreme_flag, "keep only extreme alcoves");
    al_enum->add_option("-o,--out", st.out_path);
    auto* al_adm = alcove->add_subcommand("adm", "admissible set Adm(omega_r)");
    al_adm->add_option("--n", n)->required();
    al_adm->add_option("--r", r)->required();
    al_adm->add_option("-o,--out", st.out_path);
    auto* al_check = alcove->add_subcommand("check", "validate alcoves from a JSON file");
    al_check->add_option("file", file_path)->required();

    // ----- chart -----
    auto* chart = app.add_subcommand("chart", "chart presentations");
    auto* ch_build = chart->add_subcommand("build", "build a catalogued presentation");
    ch_build->add_option("--case", chart_case)->required();
    ch_build->add_option("--n", n)->required();
    ch_build->add_option("--r", r);
    ch_build->add_option("--p", p);
    ch_build->add_option("--eps", eps, "+1, -1, or a cyclotomic order dividing g");
    ch_build->add_flag("--literal-roots", literal_roots,
                       "keep u_i^{p-1} - a^{i+1}_{n-r,r} verbatim (no sign normalization)");
    ch_build->add_option("-o,--out", st.out_path)->required();

    // ----- ideal -----
    auto* ideal = app.add_subcommand("ideal", "Groebner-based ideal operations");
    ideal->require_subcommand(1);
    auto add_ideal_common = [&](CLI::App* sub, bool needs_poly, bool needs_second = false) {
        sub->add_option("--ideal", ideal_path)->required();
        if (needs_poly) sub->add_option("--poly", poly_text)->required();
        if (needs_second) sub->add_option("--ideal2", ideal2_path)->required();
        sub->add_option("-o,--out", st.out_path);
    };
    auto* id_gb = ideal->add_subcommand("gb", "reduced Groebner basis");
    add_ideal_common(id_gb, false);
    id_gb->add_option("--order", order_name);
    auto* id_nf = ideal->add_subcommand("nf", "normal form of a polynomial");
    add_ideal_common(id_nf, true);
    auto* id_member = ideal->add_subcommand("member", "ideal membership (exit 1 if not)");
    add_ideal_common(id_member, true);
    auto* id_colon = ideal->add_subcommand("colon", "colon ideal I : f");
    add_ideal_common(id_colon, true);
    auto* id_sat = ideal->add_subcommand("saturate", "saturation I : f^inf");
    add_ideal_common(id_sat, true);
    auto* id_sum = ideal->add_subcommand("sum", "ideal sum");
    add_ideal_common(id_sum, false, true);
    auto* id_equal = ideal->add_subcommand("equal", "ideal equality (exit 1 if not)");
    add_ideal_common(id_equal, false, true);
    auto* id_elim = ideal->add_subcommand("eliminate", "eliminate variables");
    add_ideal_common(id_elim, false);
    id_elim->add_option("--vars", vars_csv, "comma-separated variables to eliminate")->required();

    // ----- hom -----
    auto* hom = app.add_subcommand("hom", "ring homomorphisms");
    hom->require_subcommand(1);
    auto* hom_ker = hom->add_subcommand("kernel", "kernel via elimination");
    hom_ker->add_option("--map", map_path)->required();
    hom_ker->add_option("-o,--out", st.out_path);
    auto* hom_chk = hom->add_subcommand("check", "well-definedness on quotients (exit 1 if not)");
    hom_chk->add_option("--map", map_path)->required();

    // ----- veronese -----
    auto* ver = app.add_subcommand("veronese", "Veronese subring machinery");
    ver->require_subcommand(1);
    auto* ve_gens = ver->add_subcommand("gens", "sorted-binomial generators");
    ve_gens->add_option("--n", n)->required();
    ve_gens->add_option("--g", g)->required();
    ve_gens->add_flag("--wide", wide, "emit the sum-condition generating set instead");
    ve_gens->add_option("-o,--out", st.out_path);
    auto* ve_sort = ver->add_subcommand("check-sort", "exhaustive sort lemma (exit 1 if false)");
    ve_sort->add_option("--n", n)->required();
    ve_sort->add_option("--g", g)->required();
    auto* ve_norm = ver->add_subcommand("normalization", "normalization presentation");
    ve_norm->add_option("--n", n)->required();
    ve_norm->add_option("--p", p)->required();
    ve_norm->add_option("-o,--out", st.out_path);

    // ----- verify -----
    auto* verify = app.add_subcommand("verify", "theorem-level verification harnesses");
    verify->require_subcommand(1);
    auto add_verify_common = [&](CLI::App* sub) {
        sub->add_option("--n", n);
        sub->add_option("--r", r);
        sub->add_option("--p", p);
        sub->add_option("--i", i_index);
        sub->add_option("--pk", K);
        sub->add_option("--D", D);
        sub->add_option("--json-out,--out", st.out_path, "write the report JSON here");
        return sub;
    };
    auto* vf_kr = add_verify_common(verify->add_subcommand("kr", "permissible = admissible"));
    auto* vf_van = add_verify_common(verify->add_subcommand("vanishing", "vanishing criterion"));
    auto* vf_tor = add_verify_common(verify->add_subcommand("torsion", "p-torsion witness"));
    vf_tor->add_option("--case", torsion_case, "c1 or hs");
    auto* vf_spl = add_verify_common(verify->add_subcommand("splitting", "component splitting"));
    auto* vf_non = add_verify_common(verify->add_subcommand("nonnormal", "non-normality witness"));
    auto* vf_dri = add_verify_common(verify->add_subcommand("drinfeld", "regular Drinfeld case"));
    auto* vf_hs = add_verify_common(verify->add_subcommand("hs", "Haines-Stroh theorem"));
    auto* vf_nor = add_verify_common(verify->add_subcommand("normalization", "normalization"));
    auto* vf_sort = add_verify_common(verify->add_subcommand("sort-lemma", "Veronese suite"));
    auto* vf_lift = add_verify_common(verify->add_subcommand("lift", "mod p^K lifting battery"));
    auto* vf_ell = add_verify_common(verify->add_subcommand("elliptic", "elliptic triangle"));
    auto* vf_wf = add_verify_common(verify->add_subcommand("worst-fiber", "worst fiber basis"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    st.budget_explicit = app.count("--budget") > 0;

    try {
        // ----- alcove -----
        if (al_enum->parsed()) {
            std::vector<Alcove> xs;
            if (gsp_flag)
                xs = enumerate_g_minuscule((std::size_t)n);
            else if (extreme_flag)
                xs = extreme_alcoves((std::size_t)n, r);
            else
                xs = enumerate_minuscule((std::size_t)n, r);
            json arr = json::array();
            for (const auto& x : xs) arr.push_back(alcove_to_json(x));
            json payload{{"alcoves", arr}, {"count", xs.size()}};
            st.emit(payload, json{{"n", n}, {"r", r}, {"gsp", gsp_flag}, {"extreme", extreme_flag}});
            std::cout << xs.size() << " alcoves (n=" << n << ", r=" << r
                      << (gsp_flag ? ", G-alcoves" : "") << (extreme_flag ? ", extreme" : "")
                      << ")\n";
            return 0;
        }
        if (al_adm->parsed()) {
            auto adm = admissible_set((std::size_t)n, r);
            json arr = json::array();
            for (const auto& w : adm) {
                json e;
                e["nu"] = w.nu;
                e["sigma"] = w.sigma;
                e["length"] = weyl::length(w);
                arr.push_back(e);
            }
            st.emit(json{{"elements", arr}, {"count", adm.size()}}, json{{"n", n}, {"r", r}});
            std::cout << adm.size() << " admissible elements (n=" << n << ", r=" << r << ")\n";
            return 0;
        }
        if (al_check->parsed()) {
            json j = load_json(file_path);
            const json& list = j.contains("alcoves") ? j.at("alcoves") : j;
            std::size_t count = 0, bad = 0;
            for (const auto& entry : list) {
                try {
                    Alcove x = alcove_from_json(entry);
                    ++count;
                    (void)x;
                } catch (const AlcoveError& e) {
                    ++bad;
                    std::cout << "invalid: " << e.what() << "\n";
                }
            }
            std::cout << count << " valid, " << bad << " invalid\n";
            return bad == 0 ? 0 : 1;
        }

        // ----- chart -----
        if (ch_build->parsed()) {
            ChartPresentation ch = build_chart_by_case(chart_case, n, r, p, eps, literal_roots);
            st.emit(chart_to_json(ch),
                    json{{"case", chart_case}, {"n", n}, {"r", r}, {"p", p}, {"eps", eps}});
            std::cout << ch.case_tag << ": " << ch.ring->nvars() << " variables, "
                      << ch.gens.size() << " generators\n";
            return 0;
        }

        // ----- ideal -----
        if (id_gb->parsed() || id_nf->parsed() || id_member->parsed() || id_colon->parsed() ||
            id_sat->parsed() || id_sum->parsed() || id_equal->parsed() || id_elim->parsed()) {
            ParsedIdeal I = ideal_from_json(load_json(ideal_path));
            Budget budget = st.budget();
            json params{{"ideal", ideal_path}};
            // The rational and prime-field paths are the same code on
            // different coefficient types.
            auto run = [&](auto&& tag) -> int {
                using F = std::decay_t<decltype(tag)>;
                IdealPtr<F> II;
                if constexpr (std::is_same_v<F, Rational>)
                    II = I.q;
                else
                    II = I.fp;
                if (id_gb->parsed()) {
                    auto basis = groebner_basis(II, order_by_name(order_name), budget);
                    json arr = json::array();
                    for (const auto& b : basis) arr.push_back(b.format());
                    st.emit(json{{"ring", ring_to_json(II->ring())}, {"gens", arr}}, params);
                    std::cout << basis.size() << " basis elements\n";
                    for (const auto& b : basis) std::cout << "  " << b.format() << "\n";
                    return 0;
                }
                if (id_nf->parsed() || id_member->parsed()) {
                    auto f = parse_poly<F>(II->ring(), poly_text);
                    auto nf = normal_form(f, II, budget);
                    if (id_nf->parsed()) {
                        st.emit(json{{"normal_form", nf.format()}}, params);
                        std::cout << nf.format() << "\n";
                        return 0;
                    }
                    bool member = nf.is_zero();
                    std::cout << (member ? "member" : "not a member") << "\n";
                    return member ? 0 : 1;
                }
                if (id_colon->parsed() || id_sat->parsed()) {
                    auto f = parse_poly<F>(II->ring(), poly_text);
                    IdealPtr<F> res = id_colon->parsed() ? ideal_colon(II, f, budget)
                                                         : ideal_saturate(II, f, budget);
                    st.emit(ideal_to_json(res), params);
                    std::cout << res->gens().size() << " generators\n";
                    return 0;
                }
                if (id_sum->parsed() || id_equal->parsed()) {
                    ParsedIdeal J = ideal_from_json(load_json(ideal2_path));
                    IdealPtr<F> JJ;
                    if constexpr (std::is_same_v<F, Rational>)
                        JJ = J.q;
                    else
                        JJ = J.fp;
                    if (!JJ) throw std::invalid_argument("ideal coefficient domains differ");
                    if (id_sum->parsed()) {
                        st.emit(ideal_to_json(ideal_sum(II, JJ)), params);
                        return 0;
                    }
                    bool eq = ideal_equal(II, JJ, budget);
                    std::cout << (eq ? "equal" : "not equal") << "\n";
                    return eq ? 0 : 1;
                }
                if (id_elim->parsed()) {
                    std::vector<bool> elim(II->ring()->nvars(), false);
                    std::stringstream ss(vars_csv);
                    std::string name;
                    while (std::getline(ss, name, ','))
                        elim[II->ring()->var_index(name)] = true;
                    IdealPtr<F> res = ideal_eliminate(II, elim, budget);
                    st.emit(ideal_to_json(res), params);
                    std::cout << res->gens().size() << " generators\n";
                    return 0;
                }
                return 2;
            };
            return I.is_rational() ? run(Rational{}) : run(Fp{0, 2});
        }

        // ----- hom -----
        if (hom_ker->parsed() || hom_chk->parsed()) {
            json j = load_json(map_path);
            RingPtr src = ring_from_json(j.at("source"));
            RingPtr tgt = ring_from_json(j.at("target"));
            std::vector<QPoly> images;
            for (const auto& s : j.at("images")) images.push_back(parse_q(tgt, s.get<std::string>()));
            QHom phi(src, tgt, images);
            auto parse_gens = [&](const RingPtr& ring, const char* key) -> QIdealPtr {
                std::vector<QPoly> gens;
                if (j.contains(key))
                    for (const auto& s : j.at(key)) gens.push_back(parse_q(ring, s.get<std::string>()));
                if (gens.empty()) gens.push_back(QPoly::zero(ring));
                return make_ideal(ring, std::move(gens));
            };
            Budget budget = st.budget();
            if (hom_ker->parsed()) {
                QIdealPtr tgt_ideal =
                    j.contains("target_ideal") ? parse_gens(tgt, "target_ideal") : nullptr;
                QIdealPtr ker = hom_kernel(phi, tgt_ideal, budget);
                st.emit(ideal_to_json(ker), json{{"map", map_path}});
                std::cout << ker->gens().size() << " kernel generators\n";
                for (const auto& g2 : ker->gens()) std::cout << "  " << g2.format() << "\n";
                return 0;
            }
            bool ok = hom_check(phi, parse_gens(src, "source_ideal"),
                                parse_gens(tgt, "target_ideal"), budget);
            std::cout << (ok ? "well-defined" : "not well-defined") << "\n";
            return ok ? 0 : 1;
        }

        // ----- veronese -----
        if (ve_gens->parsed()) {
            QIdealPtr I = wide ? sum_condition_binomials((std::size_t)n, g)
                               : sorted_binomials((std::size_t)n, g);
            st.emit(ideal_to_json(I), json{{"n", n}, {"g", g}, {"wide", wide}});
            std::cout << I->gens().size() << " generators\n";
            return 0;
        }
        if (ve_sort->parsed()) {
            bool ok = lemma_sort_check((std::size_t)n, g);
            std::cout << (ok ? "sort lemma holds" : "sort lemma FAILS") << " (n=" << n
                      << ", g=" << g << ")\n";
            return ok ? 0 : 1;
        }
        if (ve_norm->parsed()) {
            ChartPresentation ch = normalization_presentation((std::size_t)n, p);
            st.emit(chart_to_json(ch), json{{"n", n}, {"p", p}});
            std::cout << "normalization: " << ch.ring->nvars() << " variables, "
                      << ch.gens.size() << " generators\n";
            return 0;
        }

        // ----- verify -----
        Budget budget = st.budget();
        json vparams{{"n", n}, {"r", r}, {"p", p}};
        if (vf_kr->parsed()) return finish_report(st, verify_kr(n, budget), vparams);
        if (vf_van->parsed()) return finish_report(st, verify_vanishing(n, r, p), vparams);
        if (vf_tor->parsed()) {
            VerificationReport rep = torsion_case == "hs"
                                         ? verify_torsion_hs(n, p, budget)
                                         : verify_torsion_c1(ModelParams(n, r, p), budget);
            return finish_report(st, rep, vparams);
        }
        if (vf_spl->parsed())
            return finish_report(st, verify_splitting(ModelParams(n, r, p), budget), vparams);
        if (vf_non->parsed())
            return finish_report(st, verify_nonnormality(n, r, i_index, p), vparams);
        if (vf_dri->parsed()) return finish_report(st, verify_drinfeld(n, p, budget), vparams);
        if (vf_hs->parsed()) {
            if (p >= 5 && !st.budget_explicit) {
                budget.limit = 2000000000;  // flagged long-running job
                std::cout << "note: p >= 5 engages the long-run budget ("
                          << budget.limit << " steps)\n";
            }
            return finish_report(st, verify_hs(n, p, budget), vparams);
        }
        if (vf_nor->parsed()) {
            long long bound = D > 0 ? D : 2 * gcd_ll(p - 1, n - 1) * n;
            return finish_report(st, verify_normalization(n, p, bound, budget), vparams);
        }
        if (vf_sort->parsed()) return finish_report(st, verify_sort_suite(budget), vparams);
        if (vf_lift->parsed()) return finish_report(st, verify_lift_battery(K), vparams);
        if (vf_ell->parsed()) return finish_report(st, verify_elliptic(p, budget), vparams);
        if (vf_wf->parsed())
            return finish_report(st, verify_worst_fiber(ModelParams(n, r, p), budget), vparams);

        std::cerr << "no subcommand executed\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
