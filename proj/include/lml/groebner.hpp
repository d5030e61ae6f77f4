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

#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "ideal.hpp"
#include "polynomial.hpp"

namespace lml {

template <class F>
using TermVec = std::vector<Term<F>>;

namespace gb {

template <class F>
TermVec<F> resorted(const Polynomial<F>& p, const MonomialOrder& ord) {
    TermVec<F> v = p.terms();
    std::sort(v.begin(), v.end(),
              [&](const Term<F>& a, const Term<F>& b) { return ord.greater(a.mono, b.mono); });
    return v;
}

template <class F>
Polynomial<F> to_poly(const RingPtr& ring, TermVec<F> v) {
    return Polynomial<F>::from_terms(ring, std::move(v));
}

/// h - c * m * g, all term vectors sorted descending under ord.
template <class F>
TermVec<F> subtract_scaled(const TermVec<F>& h, const F& c, const Monomial& m,
                           const TermVec<F>& g, const MonomialOrder& ord) {
    TermVec<F> out;
    out.reserve(h.size() + g.size());
    std::size_t i = 0, j = 0;
    while (i < h.size() || j < g.size()) {
        if (j == g.size()) {
            out.push_back(h[i++]);
            continue;
        }
        Monomial gm = g[j].mono * m;
        if (i == h.size()) {
            out.push_back({gm, -(c * g[j].coeff)});
            ++j;
        } else if (ord.greater(h[i].mono, gm)) {
            out.push_back(h[i++]);
        } else if (ord.greater(gm, h[i].mono)) {
            out.push_back({gm, -(c * g[j].coeff)});
            ++j;
        } else {
            F v = h[i].coeff - c * g[j].coeff;
            if (!v.is_zero()) out.push_back({h[i].mono, v});
            ++i;
            ++j;
        }
    }
    return out;
}

/// Full multivariate division: remainder of f by G. Tie-break when several
/// leading monomials divide: the divisor with the smallest leading monomial
/// wins, then the smallest index. This pins down one deterministic reduction
/// path.
template <class F>
TermVec<F> normal_form(TermVec<F> f, const std::vector<TermVec<F>>& G, const MonomialOrder& ord,
                       Budget& budget) {
    TermVec<F> rem;
    while (!f.empty()) {
        const Term<F>& lead = f.front();
        int best = -1;
        for (std::size_t k = 0; k < G.size(); ++k) {
            if (G[k].empty() || !G[k].front().mono.divides(lead.mono)) continue;
            if (best < 0 || ord.less(G[k].front().mono, G[best].front().mono)) {
                best = static_cast<int>(k);
            }
        }
        if (best < 0) {
            rem.push_back(lead);
            f.erase(f.begin());
            continue;
        }
        budget.tick();
        const TermVec<F>& g = G[best];
        F c = lead.coeff / g.front().coeff;
        Monomial m = lead.mono.quotient(g.front().mono);
        f = subtract_scaled(f, c, m, g, ord);
    }
    return rem;
}

/// (l/LM(f))*f/lc(f) - (l/LM(g))*g/lc(g) with l = lcm of the leading monomials.
template <class F>
TermVec<F> s_polynomial(const TermVec<F>& f, const TermVec<F>& g, const MonomialOrder& ord,
                        Budget& budget) {
    budget.tick();
    Monomial l = f.front().mono.lcm(g.front().mono);
    TermVec<F> left = subtract_scaled(TermVec<F>{}, -(f.front().coeff.inv()),
                                      l.quotient(f.front().mono), f, ord);
    return subtract_scaled(left, g.front().coeff.inv(), l.quotient(g.front().mono), g, ord);
}

struct SPair {
    int i, j;
    Monomial lcm;
    int64_t deg;
};

/// Buchberger with the coprimality and chain criteria and a budgeted,
/// degree-ordered pair queue. Returns the unique reduced basis, monic,
/// sorted by ascending leading monomial.
template <class F>
std::vector<TermVec<F>> buchberger(std::vector<TermVec<F>> G, const MonomialOrder& ord,
                                   Budget& budget) {
    G.erase(std::remove_if(G.begin(), G.end(), [](const TermVec<F>& v) { return v.empty(); }),
            G.end());
    auto pair_less = [&](const SPair& a, const SPair& b) {
        if (a.deg != b.deg) return a.deg < b.deg;
        int c = ord.cmp(a.lcm, b.lcm);
        if (c) return c < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };
    std::vector<SPair> queue;
    std::set<std::pair<int, int>> pending;
    auto heap_cmp = [&](const SPair& a, const SPair& b) { return pair_less(b, a); };
    auto push_pairs = [&](int k) {
        for (int i = 0; i < k; ++i) {
            Monomial l = G[i].front().mono.lcm(G[k].front().mono);
            queue.push_back(SPair{i, k, l, l.degree()});
            std::push_heap(queue.begin(), queue.end(), heap_cmp);
            pending.emplace(i, k);
        }
    };
    for (int k = 0; k < static_cast<int>(G.size()); ++k) push_pairs(k);
    while (!queue.empty()) {
        std::pop_heap(queue.begin(), queue.end(), heap_cmp);
        SPair pr = queue.back();
        queue.pop_back();
        pending.erase({pr.i, pr.j});
        const Monomial& mi = G[pr.i].front().mono;
        const Monomial& mj = G[pr.j].front().mono;
        if (mi.coprime_with(mj)) continue;  // Buchberger's first criterion
        bool chained = false;
        for (int k = 0; k < static_cast<int>(G.size()) && !chained; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!G[k].front().mono.divides(pr.lcm)) continue;
            auto key_ik = std::minmax(pr.i, k);
            auto key_jk = std::minmax(pr.j, k);
            if (!pending.count({key_ik.first, key_ik.second}) &&
                !pending.count({key_jk.first, key_jk.second}))
                chained = true;  // chain criterion
        }
        if (chained) continue;
        Monomial l = pr.lcm;
        TermVec<F> left = subtract_scaled(TermVec<F>{}, -(G[pr.i].front().coeff.inv()),
                                          l.quotient(mi), G[pr.i], ord);
        TermVec<F> s =
            subtract_scaled(left, G[pr.j].front().coeff.inv(), l.quotient(mj), G[pr.j], ord);
        TermVec<F> r = normal_form(std::move(s), G, ord, budget);
        if (!r.empty()) {
            G.push_back(std::move(r));
            push_pairs(static_cast<int>(G.size()) - 1);
        }
    }

    // minimalize
    std::vector<int> idx(G.size());
    for (std::size_t i = 0; i < G.size(); ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return ord.less(G[a].front().mono, G[b].front().mono); });
    std::vector<TermVec<F>> minimal;
    for (int i : idx) {
        bool divisible = false;
        for (const auto& h : minimal)
            if (h.front().mono.divides(G[i].front().mono)) {
                divisible = true;
                break;
            }
        if (!divisible) minimal.push_back(G[i]);
    }
    // tail-reduce and make monic
    std::vector<TermVec<F>> reduced(minimal.size());
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<TermVec<F>> others;
        others.reserve(minimal.size() - 1);
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        TermVec<F> r = normal_form(minimal[i], others, ord, budget);
        F lc = r.front().coeff;
        if (!lc.is_one())
            for (auto& t : r) t.coeff = t.coeff / lc;
        reduced[i] = std::move(r);
    }
    std::sort(reduced.begin(), reduced.end(), [&](const TermVec<F>& a, const TermVec<F>& b) {
        return ord.less(a.front().mono, b.front().mono);
    });
    return reduced;
}

}  // namespace gb

/// Reduced Groebner basis of I for the given order, cached on the ideal.
template <class F>
std::vector<Polynomial<F>> groebner_basis(const IdealPtr<F>& I, const MonomialOrder& order,
                                          Budget& budget) {
    order.validate(I->ring()->nvars());
    if (auto hit = I->cache_lookup(order.key())) return *hit;
    std::vector<TermVec<F>> in;
    in.reserve(I->gens().size());
    for (const auto& g : I->gens()) in.push_back(gb::resorted(g, order));
    std::vector<TermVec<F>> out = gb::buchberger(std::move(in), order, budget);
    auto basis = std::make_shared<std::vector<Polynomial<F>>>();
    basis->reserve(out.size());
    for (auto& v : out) basis->push_back(gb::to_poly(I->ring(), std::move(v)));
    I->cache_store(order.key(), basis);
    return *basis;
}

template <class F>
std::vector<Polynomial<F>> groebner_basis(const IdealPtr<F>& I, Budget& budget) {
    return groebner_basis(I, I->ring()->order(), budget);
}

/// Remainder of f modulo I under full reduction by the reduced basis.
/// Zero iff f lies in I.
template <class F>
Polynomial<F> normal_form(const Polynomial<F>& f, const IdealPtr<F>& I,
                          const MonomialOrder& order, Budget& budget) {
    std::vector<Polynomial<F>> basis = groebner_basis(I, order, budget);
    std::vector<TermVec<F>> G;
    G.reserve(basis.size());
    for (const auto& g : basis) G.push_back(gb::resorted(g, order));
    TermVec<F> r = gb::normal_form(gb::resorted(f, order), G, order, budget);
    return gb::to_poly(f.ring(), std::move(r));
}

template <class F>
Polynomial<F> normal_form(const Polynomial<F>& f, const IdealPtr<F>& I, Budget& budget) {
    return normal_form(f, I, I->ring()->order(), budget);
}

template <class F>
bool ideal_member(const Polynomial<F>& f, const IdealPtr<F>& I, Budget& budget) {
    return normal_form(f, I, budget).is_zero();
}

template <class F>
bool is_unit_ideal(const IdealPtr<F>& I, Budget& budget) {
    Polynomial<F> one = Polynomial<F>::constant(I->ring(), FieldOps<F>::one(I->ring()->coeff()));
    return ideal_member(one, I, budget);
}

template <class F>
IdealPtr<F> ideal_sum(const IdealPtr<F>& I, const IdealPtr<F>& J) {
    if (!I->ring()->same_as(*J->ring())) throw std::invalid_argument("ideal sum: ring mismatch");
    std::vector<Polynomial<F>> gens = I->gens();
    gens.insert(gens.end(), J->gens().begin(), J->gens().end());
    return make_ideal(I->ring(), std::move(gens));
}

template <class F>
bool ideal_contains(const IdealPtr<F>& big, const IdealPtr<F>& small, Budget& budget) {
    for (const auto& g : small->gens())
        if (!ideal_member(g, big, budget)) return false;
    return true;
}

template <class F>
bool ideal_equal(const IdealPtr<F>& I, const IdealPtr<F>& J, Budget& budget) {
    return ideal_contains(I, J, budget) && ideal_contains(J, I, budget);
}

/// Move a polynomial into another ring along an index map
/// (index_map[src_var] = target var, or -1 when the variable must not occur).
template <class F>
Polynomial<F> transport(const Polynomial<F>& f, const RingPtr& target,
                        const std::vector<int>& index_map) {
    std::vector<Term<F>> terms;
    terms.reserve(f.nterms());
    for (const auto& t : f.terms()) {
        Monomial m(target->nvars());
        for (std::size_t i = 0; i < t.mono.nvars(); ++i) {
            if (t.mono[i] == 0) continue;
            if (index_map[i] < 0)
                throw std::invalid_argument("transport: polynomial uses a dropped variable");
            m[static_cast<std::size_t>(index_map[i])] += t.mono[i];
        }
        terms.push_back({std::move(m), t.coeff});
    }
    return Polynomial<F>::from_terms(target, std::move(terms));
}

inline std::string fresh_name(const std::string& base, const std::vector<std::string>& taken) {
    auto used = [&](const std::string& s) {
        return std::find(taken.begin(), taken.end(), s) != taken.end();
    };
    if (!used(base)) return base;
    for (int k = 1;; ++k) {
        std::string cand = base + "_" + std::to_string(k);
        if (!used(cand)) return cand;
    }
}

/// I ∩ J by the single-tag trick: eliminate w from w·I + (1-w)·J.
template <class F>
IdealPtr<F> ideal_intersect(const IdealPtr<F>& I, const IdealPtr<F>& J, Budget& budget) {
    const RingPtr& R = I->ring();
    if (!R->same_as(*J->ring())) throw std::invalid_argument("intersect: ring mismatch");
    std::vector<std::string> vars = R->vars();
    std::string w = fresh_name("w", vars);
    vars.push_back(w);
    std::size_t wi = vars.size() - 1;
    std::vector<bool> elim(vars.size(), false);
    elim[wi] = true;
    RingPtr P = make_ring(vars, R->coeff(), MonomialOrder::elimination(elim));
    std::vector<int> up(R->nvars());
    for (std::size_t i = 0; i < R->nvars(); ++i) up[i] = static_cast<int>(i);
    Polynomial<F> wpoly = Polynomial<F>::variable(P, wi);
    Polynomial<F> one = Polynomial<F>::constant(P, FieldOps<F>::one(P->coeff()));
    std::vector<Polynomial<F>> gens;
    for (const auto& g : I->gens()) gens.push_back(wpoly * transport(g, P, up));
    for (const auto& h : J->gens()) gens.push_back((one - wpoly) * transport(h, P, up));
    IdealPtr<F> K = make_ideal(P, std::move(gens));
    std::vector<Polynomial<F>> basis = groebner_basis(K, P->order(), budget);
    std::vector<bool> keep(P->nvars(), true);
    keep[wi] = false;
    std::vector<int> down(P->nvars(), -1);
    for (std::size_t i = 0; i < R->nvars(); ++i) down[i] = static_cast<int>(i);
    std::vector<Polynomial<F>> out;
    for (const auto& b : basis)
        if (b.supported_on(keep)) out.push_back(transport(b, R, down));
    return make_ideal(R, std::move(out));
}

/// Exact division g / f; reports failure instead of leaving a remainder.
template <class F>
std::optional<Polynomial<F>> exact_divide(const Polynomial<F>& g, const Polynomial<F>& f) {
    const MonomialOrder& ord = g.ring()->order();
    TermVec<F> rem = gb::resorted(g, ord);
    TermVec<F> d = gb::resorted(f, ord);
    if (d.empty()) return std::nullopt;
    std::vector<Term<F>> q;
    while (!rem.empty()) {
        if (!d.front().mono.divides(rem.front().mono)) return std::nullopt;
        F c = rem.front().coeff / d.front().coeff;
        Monomial m = rem.front().mono.quotient(d.front().mono);
        q.push_back({m, c});
        rem = gb::subtract_scaled(rem, c, m, d, ord);
    }
    return Polynomial<F>::from_terms(g.ring(), std::move(q));
}

/// Colon ideal I : f.
template <class F>
IdealPtr<F> ideal_colon(const IdealPtr<F>& I, const Polynomial<F>& f, Budget& budget) {
    IdealPtr<F> fI = make_ideal(I->ring(), std::vector<Polynomial<F>>{f});
    IdealPtr<F> K = ideal_intersect(I, fI, budget);
    std::vector<Polynomial<F>> gens;
    for (const auto& g : K->gens()) {
        auto q = exact_divide(g, f);
        if (!q) throw std::logic_error("colon: intersection generator not divisible");
        if (!q->is_zero()) gens.push_back(*q);
    }
    if (gens.empty()) gens.push_back(Polynomial<F>::zero(I->ring()));
    return make_ideal(I->ring(), std::move(gens));
}

/// Saturation I : f^inf as iterated colon until stabilization.
template <class F>
IdealPtr<F> ideal_saturate(const IdealPtr<F>& I, const Polynomial<F>& f, Budget& budget) {
    IdealPtr<F> cur = I;
    for (;;) {
        budget.tick();
        IdealPtr<F> next = ideal_colon(cur, f, budget);
        if (ideal_contains(cur, next, budget)) return cur;
        cur = next;
    }
}

/// I ∩ k[kept variables]; generators of the result only involve variables
/// with eliminate[i] == false.
template <class F>
IdealPtr<F> ideal_eliminate(const IdealPtr<F>& I, const std::vector<bool>& eliminate,
                            Budget& budget) {
    const RingPtr& R = I->ring();
    if (eliminate.size() != R->nvars())
        throw std::invalid_argument("eliminate: flag per variable required");
    MonomialOrder elim_order = MonomialOrder::elimination(eliminate);
    std::vector<Polynomial<F>> basis = groebner_basis(I, elim_order, budget);
    std::vector<bool> keep(R->nvars());
    for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = !eliminate[i];
    std::vector<Polynomial<F>> out;
    for (const auto& b : basis)
        if (b.supported_on(keep)) out.push_back(b);
    return make_ideal(R, std::move(out));
}

/// Kernel of a ring map source -> target/target_ideal via the graph ideal.
template <class F>
IdealPtr<F> hom_kernel(const RingHom<F>& phi, const IdealPtr<F>& target_ideal, Budget& budget) {
    const RingPtr& S = phi.source;
    const RingPtr& T = phi.target;
    std::vector<std::string> vars;
    std::vector<std::string> tnames = T->vars();
    vars.reserve(S->nvars() + T->nvars());
    std::vector<std::string> taken = tnames;
    for (std::size_t i = 0; i < S->nvars(); ++i) {
        std::string nm = fresh_name(S->var_name(i), taken);
        taken.push_back(nm);
        vars.push_back(nm);
    }
    std::size_t nsrc = vars.size();
    vars.insert(vars.end(), tnames.begin(), tnames.end());
    std::vector<bool> elim(vars.size(), false);
    for (std::size_t j = nsrc; j < vars.size(); ++j) elim[j] = true;
    RingPtr P = make_ring(vars, T->coeff(), MonomialOrder::elimination(elim));
    std::vector<int> smap(S->nvars()), tmap(T->nvars());
    for (std::size_t i = 0; i < S->nvars(); ++i) smap[i] = static_cast<int>(i);
    for (std::size_t j = 0; j < T->nvars(); ++j) tmap[j] = static_cast<int>(nsrc + j);
    std::vector<Polynomial<F>> gens;
    for (std::size_t i = 0; i < S->nvars(); ++i) {
        gens.push_back(Polynomial<F>::variable(P, i) - transport(phi.images[i], P, tmap));
    }
    if (target_ideal)
        for (const auto& g : target_ideal->gens()) gens.push_back(transport(g, P, tmap));
    IdealPtr<F> G = make_ideal(P, std::move(gens));
    std::vector<Polynomial<F>> basis = groebner_basis(G, P->order(), budget);
    std::vector<bool> keep(P->nvars(), false);
    for (std::size_t i = 0; i < nsrc; ++i) keep[i] = true;
    std::vector<int> down(P->nvars(), -1);
    for (std::size_t i = 0; i < nsrc; ++i) down[i] = static_cast<int>(i);
    std::vector<Polynomial<F>> out;
    for (const auto& b : basis)
        if (b.supported_on(keep)) out.push_back(transport(b, S, down));
    return make_ideal(S, std::move(out));
}

template <class F>
IdealPtr<F> hom_kernel(const RingHom<F>& phi, Budget& budget) {
    return hom_kernel(phi, IdealPtr<F>{}, budget);
}

/// Does phi send source_ideal into target_ideal? (Well-definedness of the
/// induced map on quotients.)
template <class F>
bool hom_check(const RingHom<F>& phi, const IdealPtr<F>& source_ideal,
               const IdealPtr<F>& target_ideal, Budget& budget) {
    for (const auto& g : source_ideal->gens()) {
        if (!ideal_member(phi.apply(g), target_ideal, budget)) return false;
    }
    return true;
}

/// Localization by f: same generators in a ring with one more variable s and
/// the extra relation s*f - 1.
template <class F>
IdealPtr<F> invert_element(const IdealPtr<F>& I, const Polynomial<F>& f,
                           std::string* inverse_name = nullptr) {
    const RingPtr& R = I->ring();
    std::vector<std::string> vars = R->vars();
    std::string s = fresh_name("s", vars);
    if (inverse_name) *inverse_name = s;
    vars.push_back(s);
    RingPtr P = make_ring(vars, R->coeff(), R->order());
    std::vector<int> up(R->nvars());
    for (std::size_t i = 0; i < R->nvars(); ++i) up[i] = static_cast<int>(i);
    std::vector<Polynomial<F>> gens;
    for (const auto& g : I->gens()) gens.push_back(transport(g, P, up));
    Polynomial<F> one = Polynomial<F>::constant(P, FieldOps<F>::one(P->coeff()));
    gens.push_back(Polynomial<F>::variable(P, P->nvars() - 1) * transport(f, P, up) - one);
    return make_ideal(P, std::move(gens));
}

}  // namespace lml
