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
#include <map>
#include <string>
#include <vector>

#include "charts.hpp"
#include "groebner.hpp"
#include "ideal.hpp"

namespace lml {

/// Exponent vector c with nonnegative entries summing to g.
using VIndex = std::vector<long long>;

/// Weakly increasing string over the alphabet {1..n}: coordinate i of the
/// index contributes c_i copies of the symbol i+1.
using SortedString = std::vector<int>;

inline SortedString str_of(const VIndex& c) {
    SortedString s;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (long long k = 0; k < c[i]; ++k) s.push_back((int)i + 1);
    return s;
}

inline VIndex str_inverse(const SortedString& s, std::size_t n) {
    VIndex c(n, 0);
    for (int sym : s) c[(std::size_t)(sym - 1)] += 1;
    return c;
}

/// All c in Z^n_{>=0} with sum g, lexicographically decreasing.
inline std::vector<VIndex> index_set(std::size_t n, long long g) {
    std::vector<VIndex> out;
    VIndex cur(n, 0);
    std::function<void(std::size_t, long long)> rec = [&](std::size_t pos, long long left) {
        if (pos + 1 == n) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (long long v = left; v >= 0; --v) {
            cur[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    if (n > 0) rec(0, g);
    return out;
}

/// The sort of a pair: interleave the two strings, sort, and split into odd
/// and even positions.
inline std::pair<VIndex, VIndex> sort_pair(const VIndex& c1, const VIndex& c2) {
    std::size_t n = c1.size();
    SortedString merged = str_of(c1);
    SortedString s2 = str_of(c2);
    merged.insert(merged.end(), s2.begin(), s2.end());
    std::sort(merged.begin(), merged.end());
    SortedString odd, even;
    for (std::size_t i = 0; i < merged.size(); ++i)
        ((i % 2 == 0) ? odd : even).push_back(merged[i]);
    return {str_inverse(odd, n), str_inverse(even, n)};
}

/// Exhaustive check of the sort lemma on A x A: sorts agree iff the sums
/// agree, and sort is idempotent.
inline bool lemma_sort_check(std::size_t n, long long g) {
    std::vector<VIndex> A = index_set(n, g);
    auto add = [](const VIndex& a, const VIndex& b) {
        VIndex s = a;
        for (std::size_t i = 0; i < b.size(); ++i) s[i] += b[i];
        return s;
    };
    std::vector<std::pair<VIndex, VIndex>> pairs;
    for (const auto& c1 : A)
        for (const auto& c2 : A) pairs.push_back({c1, c2});
    for (const auto& [c1, c2] : pairs) {
        auto s = sort_pair(c1, c2);
        if (add(s.first, s.second) != add(c1, c2)) return false;
        if (sort_pair(s.first, s.second) != s) return false;  // idempotence
    }
    for (const auto& [c1, c2] : pairs)
        for (const auto& [c3, c4] : pairs) {
            bool sums = add(c1, c2) == add(c3, c4);
            bool sorts = sort_pair(c1, c2) == sort_pair(c3, c4);
            if (sums != sorts) return false;
        }
    return true;
}

inline std::string vindex_var(const VIndex& c) {
    std::string s = "u";
    for (long long v : c) s += "_" + std::to_string(v);
    return s;
}

/// Ring Q[u_c | c in A] (plus t when with_t).
inline RingPtr veronese_ring(std::size_t n, long long g, bool with_t) {
    std::vector<std::string> vars;
    for (const auto& c : index_set(n, g)) vars.push_back(vindex_var(c));
    if (with_t) vars.push_back("t");
    return make_ring(vars, CoeffDomain::rationals());
}

/// The sorted binomials u_{c1} u_{c2} - u_{c3} u_{c4} with
/// (c3, c4) = sort(c1, c2), self-sorted pairs dropped.
inline QIdealPtr sorted_binomials(std::size_t n, long long g, RingPtr ring = nullptr) {
    if (!ring) ring = veronese_ring(n, g, false);
    std::vector<VIndex> A = index_set(n, g);
    std::vector<QPoly> gens;
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = i; j < A.size(); ++j) {
            auto [c3, c4] = sort_pair(A[i], A[j]);
            bool same = (c3 == A[i] && c4 == A[j]) || (c3 == A[j] && c4 == A[i]);
            if (same) continue;
            QPoly lhs = QPoly::variable(ring, vindex_var(A[i])) *
                        QPoly::variable(ring, vindex_var(A[j]));
            QPoly rhs = QPoly::variable(ring, vindex_var(c3)) *
                        QPoly::variable(ring, vindex_var(c4));
            gens.push_back(lhs - rhs);
        }
    if (gens.empty()) gens.push_back(QPoly::zero(ring));
    return make_ideal(ring, std::move(gens));
}

/// The wider generating set of the final presentation: all binomials
/// u_{c1} u_{c2} - u_{c3} u_{c4} with c1 + c2 = c3 + c4.
inline QIdealPtr sum_condition_binomials(std::size_t n, long long g, RingPtr ring = nullptr) {
    if (!ring) ring = veronese_ring(n, g, false);
    std::vector<VIndex> A = index_set(n, g);
    auto add = [](const VIndex& a, const VIndex& b) {
        VIndex s = a;
        for (std::size_t i = 0; i < b.size(); ++i) s[i] += b[i];
        return s;
    };
    std::vector<QPoly> gens;
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = i; j < A.size(); ++j)
            for (std::size_t k = i; k < A.size(); ++k)
                for (std::size_t l = k; l < A.size(); ++l) {
                    if (std::make_pair(i, j) >= std::make_pair(k, l)) continue;
                    if (add(A[i], A[j]) != add(A[k], A[l])) continue;
                    QPoly e = QPoly::variable(ring, vindex_var(A[i])) *
                                  QPoly::variable(ring, vindex_var(A[j])) -
                              QPoly::variable(ring, vindex_var(A[k])) *
                                  QPoly::variable(ring, vindex_var(A[l]));
                    if (!e.is_zero()) gens.push_back(e);
                }
    if (gens.empty()) gens.push_back(QPoly::zero(ring));
    return make_ideal(ring, std::move(gens));
}

/// The monomial map u_c -> u_0^{c_0} ... u_{n-1}^{c_{n-1}} whose kernel the
/// sorted binomials present.
inline QHom veronese_monomial_map(std::size_t n, long long g, RingPtr source = nullptr) {
    if (!source) source = veronese_ring(n, g, false);
    std::vector<std::string> tvars;
    for (std::size_t i = 0; i < n; ++i) tvars.push_back("u" + std::to_string(i));
    RingPtr target = make_ring(tvars, CoeffDomain::rationals());
    std::vector<QPoly> images;
    for (const auto& c : index_set(n, g)) {
        QPoly m = QPoly::constant(target, Rational(1));
        for (std::size_t i = 0; i < n; ++i)
            m = m * QPoly::variable(target, "u" + std::to_string(i)).pow(c[i]);
        images.push_back(m);
    }
    return QHom(source, target, std::move(images));
}

/// Elimination-based kernel of the monomial map; the independent oracle for
/// the sorted-binomial presentation.
inline QIdealPtr veronese_kernel_oracle(std::size_t n, long long g, Budget& budget) {
    RingPtr source = veronese_ring(n, g, false);
    QHom phi = veronese_monomial_map(n, g, source);
    return hom_kernel(phi, budget);
}

/// Presentation of the normalization in the signature (1, n-1) case:
/// sorted binomials plus (u_{c^{(0)}} ... u_{c^{(n-1)}})^h - t.
inline ChartPresentation normalization_presentation(std::size_t n, long long p) {
    if (!is_prime_ll(p) || p < 3)
        throw std::invalid_argument("normalization: odd prime required");
    long long g = gcd_ll(p - 1, (long long)n - 1);
    long long h = (p - 1) / g;
    ChartPresentation ch;
    ch.case_tag = "normalization";
    ch.params.n = (long long)n;
    ch.params.r = 1;
    ch.params.p = p;
    ch.params.g = g;
    ch.params.h = h;
    ch.params.m = ((long long)n - 1) / g;
    ch.ring = veronese_ring(n, g, true);
    QIdealPtr bin = sorted_binomials(n, g, nullptr);
    std::vector<int> up(bin->ring()->nvars());
    for (std::size_t i = 0; i < bin->ring()->nvars(); ++i)
        up[i] = (int)ch.ring->var_index(bin->ring()->var_name(i));
    for (const auto& b : bin->gens())
        if (!b.is_zero()) ch.gens.push_back(transport(b, ch.ring, up));
    QPoly prod = QPoly::constant(ch.ring, Rational(1));
    for (std::size_t i = 0; i < n; ++i) {
        VIndex ci(n, 0);
        ci[i] = g;
        prod = prod * QPoly::variable(ch.ring, vindex_var(ci));
    }
    QPoly extra = prod.pow(h) - QPoly::variable(ch.ring, "t");
    ch.named["monomial_relation"] = extra;
    ch.gens.push_back(extra);
    return ch;
}

/// C^{(n-1)} in its variable-free form Q[u_0..u_{n-1}, t]/((prod u)^{p-1}-t).
inline ChartPresentation drinfeld_regular_chart(std::size_t n, long long p) {
    ChartPresentation ch;
    ch.case_tag = "gl-component";
    ch.params.n = (long long)n;
    ch.params.r = (long long)n - 1;
    ch.params.p = p;
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < n; ++i) vars.push_back("u" + std::to_string(i));
    vars.push_back("t");
    ch.ring = make_ring(vars, CoeffDomain::rationals());
    QPoly prod = QPoly::constant(ch.ring, Rational(1));
    for (std::size_t i = 0; i < n; ++i)
        prod = prod * QPoly::variable(ch.ring, "u" + std::to_string(i));
    ch.gens.push_back(prod.pow(p - 1) - QPoly::variable(ch.ring, "t"));
    return ch;
}

/// psi: the normalization presentation onto the subring of C^{(n-1)}
/// generated by the degree-g monomials.
inline QHom normalization_psi(std::size_t n, long long p) {
    ChartPresentation nor = normalization_presentation(n, p);
    ChartPresentation tgt = drinfeld_regular_chart(n, p);
    long long g = nor.params.g;
    std::vector<QPoly> images;
    for (const auto& c : index_set(n, g)) {
        QPoly m = QPoly::constant(tgt.ring, Rational(1));
        for (std::size_t i = 0; i < n; ++i)
            m = m * QPoly::variable(tgt.ring, "u" + std::to_string(i)).pow(c[i]);
        images.push_back(m);
    }
    images.push_back(QPoly::variable(tgt.ring, "t"));
    return QHom(nor.ring, tgt.ring, std::move(images));
}

/// C^{(1)} = C_1 in x-form: Q[x_i, v_i, t] with x_0...x_{n-1} = t,
/// v_i^{p-1} = prod_{j != i} x_j and the component relation
/// (v_0...v_{n-1})^h = t^m.
inline ChartPresentation component_chart_r1(std::size_t n, long long p) {
    if (!is_prime_ll(p) || p < 3) throw std::invalid_argument("C1 chart: odd prime required");
    ChartPresentation ch;
    ch.case_tag = "gl-component";
    ch.params = ModelParams((long long)n, 1, p);
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i) vars.push_back("v" + std::to_string(i));
    vars.push_back("t");
    ch.ring = make_ring(vars, CoeffDomain::rationals());
    QPoly t = QPoly::variable(ch.ring, "t");
    QPoly prod_x = QPoly::constant(ch.ring, Rational(1));
    QPoly prod_v = QPoly::constant(ch.ring, Rational(1));
    for (std::size_t i = 0; i < n; ++i) {
        prod_x = prod_x * QPoly::variable(ch.ring, "x" + std::to_string(i));
        prod_v = prod_v * QPoly::variable(ch.ring, "v" + std::to_string(i));
    }
    ch.gens.push_back(prod_x - t);
    for (std::size_t i = 0; i < n; ++i) {
        QPoly alpha = QPoly::constant(ch.ring, Rational(1));
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) alpha = alpha * QPoly::variable(ch.ring, "x" + std::to_string(j));
        ch.named["alpha_" + std::to_string(i)] = alpha;
        ch.gens.push_back(QPoly::variable(ch.ring, "v" + std::to_string(i)).pow(p - 1) - alpha);
    }
    QPoly f1 = prod_v.pow(ch.params.h) - t.pow(ch.params.m);
    ch.named["f_1"] = f1;
    ch.gens.push_back(f1);
    return ch;
}

/// f: C_1 -> C^{(n-1)}, x_i -> u_i^{p-1}, v_i -> u_0...û_i...u_{n-1}.
inline QHom f_map(std::size_t n, long long p) {
    ChartPresentation src = component_chart_r1(n, p);
    ChartPresentation tgt = drinfeld_regular_chart(n, p);
    std::vector<QPoly> images;
    for (std::size_t i = 0; i < n; ++i)
        images.push_back(QPoly::variable(tgt.ring, "u" + std::to_string(i)).pow(p - 1));
    for (std::size_t i = 0; i < n; ++i) {
        QPoly m = QPoly::constant(tgt.ring, Rational(1));
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) m = m * QPoly::variable(tgt.ring, "u" + std::to_string(j));
        images.push_back(m);
    }
    images.push_back(QPoly::variable(tgt.ring, "t"));
    return QHom(src.ring, tgt.ring, std::move(images));
}

/// Bounded-degree verification of the two infinite-degree statements about
/// the Veronese subring V = span of monomials of degree divisible by g:
///  (a) a monomial of degree <= D is a product of degree-g monomials iff g
///      divides its degree;
///  (b) solutions q (with t-powers up to t_bound) of
///      ((u_0..u_{n-1})^{p-1} - t) q in V have q in V; checked by exact
///      linear algebra on monomial coefficients.
struct ImageMembershipReport {
    bool product_criterion_ok = true;
    bool kernel_criterion_ok = true;
    std::size_t monomials_checked = 0;
    std::size_t kernel_dimension = 0;

    bool ok() const { return product_criterion_ok && kernel_criterion_ok; }
};

inline ImageMembershipReport image_membership(std::size_t n, long long p, long long D) {
    long long g = gcd_ll(p - 1, (long long)n - 1);
    ImageMembershipReport rep;

    // enumerate monomials of degree <= D
    std::vector<std::vector<long long>> monos;
    std::vector<long long> cur(n, 0);
    std::function<void(std::size_t, long long)> rec = [&](std::size_t pos, long long left) {
        if (pos == n) {
            monos.push_back(cur);
            return;
        }
        for (long long v = 0; v <= left; ++v) {
            cur[pos] = v;
            rec(pos + 1, left - v);
        }
        cur[pos] = 0;
    };
    rec(0, D);

    // (a) greedy decomposition into degree-g blocks exists iff g | degree
    for (const auto& m : monos) {
        long long deg = 0;
        for (long long v : m) deg += v;
        bool divisible = deg % g == 0;
        // peel off degree-g pieces greedily
        std::vector<long long> rem = m;
        bool decomposed = true;
        long long left = deg;
        while (left > 0) {
            long long need = g;
            for (std::size_t i = 0; i < n && need > 0; ++i) {
                long long take = std::min(need, rem[i]);
                rem[i] -= take;
                need -= take;
            }
            if (need > 0) {
                decomposed = false;
                break;
            }
            left -= g;
        }
        if (left != 0) decomposed = false;
        if (decomposed != divisible) {
            rep.product_criterion_ok = false;
            break;
        }
        ++rep.monomials_checked;
    }

    // (b) kernel criterion. q = sum_k t^k q_k with u-degree <= D and
    // t-degree <= T; f = (prod u)^{p-1} q - t q lies in V iff every
    // t-homogeneous component of f has all u-monomials of degree divisible
    // by g. The coefficient of u^c t^k in f is a_{c-(p-1)*1, k} - a_{c, k-1},
    // so each bad monomial c contributes pure difference constraints. The
    // bounded system is exactly characterized, and it suffices to check that
    // every bad unknown a_{b,k} is forced to zero: union the equalities and
    // see whether each bad unknown's class is pinned.
    long long T = D / ((long long)n * (p - 1)) + 2;
    std::map<std::vector<long long>, std::size_t> mono_index;
    for (std::size_t i = 0; i < monos.size(); ++i) mono_index[monos[i]] = i;
    std::size_t nm = monos.size();
    auto var_id = [&](std::size_t mi, long long k) { return (std::size_t)k * nm + mi; };
    std::size_t nvars = (std::size_t)(T + 1) * nm;

    std::vector<std::size_t> parent(nvars);
    std::vector<bool> pinned(nvars, false);
    for (std::size_t i = 0; i < nvars; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        parent[a] = b;
        if (pinned[a]) pinned[b] = true;
    };

    auto shifted = [&](const std::vector<long long>& c) {
        std::vector<long long> s = c;
        for (auto& v : s) {
            v -= (p - 1);
            if (v < 0) return std::vector<long long>{};
        }
        return s;
    };
    std::vector<std::vector<long long>> fmonos;
    std::function<void(std::size_t, long long)> rec2 = [&](std::size_t pos, long long left) {
        if (pos == n) {
            fmonos.push_back(cur);
            return;
        }
        for (long long v = 0; v <= left; ++v) {
            cur[pos] = v;
            rec2(pos + 1, left - v);
        }
        cur[pos] = 0;
    };
    cur.assign(n, 0);
    rec2(0, D + (long long)n * (p - 1));
    for (const auto& c : fmonos) {
        long long deg = 0;
        for (long long v : c) deg += v;
        if (deg % g == 0) continue;  // good monomial of f, no constraint
        auto s = shifted(c);
        bool has_s = !s.empty() && mono_index.count(s);
        bool has_c = mono_index.count(c) != 0;
        for (long long k = 0; k <= T + 1; ++k) {
            bool s_in = k <= T && has_s;
            bool c_in = k >= 1 && k - 1 <= T && has_c;
            if (s_in && c_in) {
                unite(var_id(mono_index[s], k), var_id(mono_index[c], k - 1));
            } else if (s_in) {
                pinned[find(var_id(mono_index[s], k))] = true;
            } else if (c_in) {
                pinned[find(var_id(mono_index[c], k - 1))] = true;
            }
        }
    }
    auto bad = [&](std::size_t vid) {
        std::size_t mi = vid % nm;
        long long deg = 0;
        for (long long v : monos[mi]) deg += v;
        return deg % g != 0;
    };
    rep.kernel_dimension = 0;
    std::set<std::size_t> free_roots;
    for (std::size_t v = 0; v < nvars; ++v) {
        std::size_t root = find(v);
        if (!pinned[root]) free_roots.insert(root);
        if (bad(v) && !pinned[root]) {
            rep.kernel_criterion_ok = false;
        }
    }
    rep.kernel_dimension = free_roots.size();
    return rep;
}

}  // namespace lml
