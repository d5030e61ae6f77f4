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

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "alcove.hpp"
#include "fp.hpp"
#include "groebner.hpp"
#include "ideal.hpp"
#include "polynomial.hpp"

namespace lml {

inline long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

inline bool is_prime_ll(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// Parameters (n, r, p) of a unitary chart, with the derived quantities
/// g = gcd(p-1, n-r), h = (p-1)/g, m = (n-r)/g. For GSp charts r = n.
struct ModelParams {
    long long n = 0, r = 0, p = 0;
    long long g = 1, h = 1, m = 0;

    ModelParams() = default;
    ModelParams(long long n_, long long r_, long long p_) : n(n_), r(r_), p(p_) {
        if (p < 3 || !is_prime_ll(p)) throw std::invalid_argument("params: p must be an odd prime");
        if (r < 0 || r > n) throw std::invalid_argument("params: r out of range");
        long long nr = n - r;
        g = nr == 0 ? p - 1 : gcd_ll(p - 1, nr);
        h = (p - 1) / g;
        m = nr / g;
    }
};

/// A catalogued quotient-ring presentation: case tag, parameters, ring,
/// generators, plus named distinguished elements (alpha_i, beta_i, f_eps,
/// torsion witnesses, ...).
struct ChartPresentation {
    std::string case_tag;
    ModelParams params;
    RingPtr ring;
    std::vector<QPoly> gens;
    std::map<std::string, QPoly> named;

    QIdealPtr ideal() const { return make_ideal(ring, gens); }

    const QPoly& named_at(const std::string& key) const {
        auto it = named.find(key);
        if (it == named.end())
            throw std::invalid_argument("chart: no named element '" + key + "'");
        return it->second;
    }
};

namespace charts {

inline std::string gl_var(long long i, long long j, long long k) {
    return "a" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k);
}

inline std::string gl_matrix_var(long long i, long long k) {
    return "a" + std::to_string(i) + "_" + std::to_string(k);
}

using PolyMat = std::vector<std::vector<QPoly>>;

inline PolyMat mat_mul(const PolyMat& A, const PolyMat& B) {
    std::size_t n = A.size(), m = B[0].size(), k = B.size();
    const RingPtr& ring = A[0][0].ring();
    PolyMat C(n, std::vector<QPoly>(m, QPoly::zero(ring)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (A[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j) C[i][j] = C[i][j] + A[i][l] * B[l][j];
        }
    return C;
}

}  // namespace charts

/// Iwahori chart B of the unitary local model: the three displayed relation
/// families among the a^i_{jk} (superscripts mod n, a^n = a^0), with p
/// written as t.
inline ChartPresentation build_gl_iwahori(long long n, long long r) {
    if (r < 1 || r > n - 1) throw std::invalid_argument("gl chart: need 1 <= r <= n-1");
    ChartPresentation ch;
    ch.case_tag = "gl-iwahori";
    ch.params.n = n;
    ch.params.r = r;
    std::vector<std::string> vars;
    for (long long i = 0; i < n; ++i)
        for (long long j = 1; j <= n - r; ++j)
            for (long long k = 1; k <= r; ++k) vars.push_back(charts::gl_var(i, j, k));
    vars.push_back("t");
    ch.ring = make_ring(vars, CoeffDomain::rationals());
    auto a = [&](long long i, long long j, long long k) {
        return QPoly::variable(ch.ring, charts::gl_var(((i % n) + n) % n, j, k));
    };
    QPoly t = QPoly::variable(ch.ring, "t");
    for (long long i = 0; i < n; ++i) {
        for (long long j = 1; j <= n - r - 1; ++j)
            ch.gens.push_back(a(i + 1, j, r) * a(i, 1, 1) - a(i, j + 1, 1));
        ch.gens.push_back(a(i + 1, n - r, r) * a(i, 1, 1) - t);
        for (long long j = 1; j <= n - r - 1; ++j)
            for (long long k = 2; k <= r; ++k)
                ch.gens.push_back(a(i, j + 1, k) - (a(i + 1, j, k - 1) + a(i + 1, j, r) * a(i, 1, k)));
        for (long long k = 2; k <= r; ++k)
            ch.gens.push_back(a(i + 1, n - r, k - 1) + a(i + 1, n - r, r) * a(i, 1, k));
    }
    for (long long i = 0; i < n; ++i) {
        ch.named["alpha_" + std::to_string(i)] = a(i + 1, n - r, r);
        ch.named["beta_" + std::to_string(i)] = a(i, 1, 1);
    }
    return ch;
}

/// Matrix presentation of B: entries of every cyclic product
/// A_{i-1}...A_0 A_{n-1}...A_i - t*Id, A_i the companion-shaped matrices.
/// (The displayed equation omits "-p" on the middle products; all cyclic
/// rotations are treated alike here.)
inline ChartPresentation build_gl_iwahori_matrix(long long n, long long r) {
    if (r < 1 || r > n - 1) throw std::invalid_argument("gl matrix chart: need 1 <= r <= n-1");
    ChartPresentation ch;
    ch.case_tag = "gl-iwahori-matrix";
    ch.params.n = n;
    ch.params.r = r;
    std::vector<std::string> vars;
    for (long long i = 0; i < n; ++i)
        for (long long k = 1; k <= r; ++k) vars.push_back(charts::gl_matrix_var(i, k));
    vars.push_back("t");
    ch.ring = make_ring(vars, CoeffDomain::rationals());
    QPoly zero = QPoly::zero(ch.ring);
    QPoly one = QPoly::constant(ch.ring, Rational(1));
    QPoly t = QPoly::variable(ch.ring, "t");
    auto companion = [&](long long i) {
        charts::PolyMat A((std::size_t)r, std::vector<QPoly>((std::size_t)r, zero));
        for (long long k = 0; k + 1 < r; ++k) A[k][k + 1] = one;
        for (long long k = 1; k <= r; ++k)
            A[r - 1][k - 1] = QPoly::variable(ch.ring, charts::gl_matrix_var(i, k));
        return A;
    };
    for (long long s = 0; s < n; ++s) {
        // A_{s-1} ... A_0 A_{n-1} ... A_s
        charts::PolyMat P = companion(((s - 1) % n + n) % n);
        for (long long step = 1; step < n; ++step) {
            long long idx = ((s - 1 - step) % n + n) % n;
            P = charts::mat_mul(P, companion(idx));
        }
        for (long long row = 0; row < r; ++row)
            for (long long col = 0; col < r; ++col) {
                QPoly e = P[row][col];
                if (row == col) e = e - t;
                if (e.is_zero()) continue;
                bool dup = false;
                for (const auto& gprev : ch.gens)
                    if (gprev == e) {
                        dup = true;
                        break;
                    }
                if (!dup) ch.gens.push_back(e);
            }
    }
    return ch;
}

/// Which element the root variables u_i extract roots of. In the Iwahori
/// chart the cyclic product of the coordinates alpha_i = a^{i+1}_{n-r,r} is
/// (-1)^{n(r+1)} t^{n-r}; the quotient-map determinants multiply to exactly
/// t^{n-r}. When n is odd and r even the two differ, and taking roots of the
/// literal alpha_i contradicts (u_0...u_{n-1})^{p-1} = t^{n-r}. The default
/// flips the sign of the root targets in precisely that case; literal_alpha
/// keeps u_i^{p-1} - a^{i+1}_{n-r,r} verbatim.
enum class RootNormalization { product_normalized, literal_alpha };

/// Pro-p Iwahori chart C: Iwahori chart plus (p-1)-th roots u_i of the
/// determinant coordinates.
inline ChartPresentation build_gl_pro_p(
    const ModelParams& pr, RootNormalization norm = RootNormalization::product_normalized) {
    if (pr.r < 1 || pr.r > pr.n - 1)
        throw std::invalid_argument("pro-p chart: need 1 <= r <= n-1");
    ChartPresentation base = build_gl_iwahori(pr.n, pr.r);
    ChartPresentation ch;
    ch.case_tag = "gl-pro-p";
    ch.params = pr;
    std::vector<std::string> vars;
    for (const auto& v : base.ring->vars())
        if (v != "t") vars.push_back(v);
    for (long long i = 0; i < pr.n; ++i) vars.push_back("u" + std::to_string(i));
    vars.push_back("t");
    ch.ring = make_ring(vars, CoeffDomain::rationals());
    std::vector<int> up(base.ring->nvars());
    for (std::size_t i = 0; i < base.ring->nvars(); ++i)
        up[i] = (int)ch.ring->var_index(base.ring->var_name(i));
    for (const auto& g : base.gens) ch.gens.push_back(transport(g, ch.ring, up));
    for (auto& [k, v] : base.named) ch.named[k] = transport(v, ch.ring, up);

    QPoly t = QPoly::variable(ch.ring, "t");
    bool flip = pr.n % 2 == 1 && pr.r % 2 == 0 && norm == RootNormalization::product_normalized;
    Rational sigma(flip ? -1 : 1);
    QPoly prod_u = QPoly::constant(ch.ring, Rational(1));
    for (long long i = 0; i < pr.n; ++i) {
        QPoly u = QPoly::variable(ch.ring, "u" + std::to_string(i));
        QPoly target = ch.named_at("alpha_" + std::to_string(i)).scaled(sigma);
        ch.named["root_target_" + std::to_string(i)] = target;
        ch.gens.push_back(u.pow(pr.p - 1) - target);
        prod_u = prod_u * u;
    }
    for (long long i = 0; i < pr.n; ++i)
        ch.named["x_" + std::to_string(i)] = ch.named_at("beta_" + std::to_string(i));
    ch.named["f_1"] = prod_u.pow(pr.h) - t.pow(pr.m);
    if (pr.g >= 2) {
        // (u_1...u_{n-1})^h - sigma^m beta_0^m u_0^{m(p-1)-h}, the p-torsion
        // witness; t^m times it is sigma^m beta_0^m u_0^{m(p-1)-h} f_1
        QPoly tail = QPoly::constant(ch.ring, Rational(1));
        for (long long i = 1; i < pr.n; ++i)
            tail = tail * QPoly::variable(ch.ring, "u" + std::to_string(i));
        QPoly u0 = QPoly::variable(ch.ring, "u0");
        Rational sm = pr.m % 2 == 0 ? Rational(1) : sigma;
        ch.named["witness"] =
            tail.pow(pr.h) -
            ch.named_at("beta_0").pow(pr.m).scaled(sm) * u0.pow(pr.m * (pr.p - 1) - pr.h);
    }
    return ch;
}

namespace charts {

/// Coefficient vector of the d-th cyclotomic polynomial, ascending degree.
inline std::vector<long long> cyclotomic_coeffs(long long d) {
    // Phi_d = (x^d - 1) / prod_{d' | d, d' < d} Phi_{d'}
    auto divide = [](std::vector<long long> num, const std::vector<long long>& den) {
        std::vector<long long> q(num.size() - den.size() + 1, 0);
        for (long long i = (long long)q.size() - 1; i >= 0; --i) {
            long long c = num[i + den.size() - 1] / den.back();
            q[i] = c;
            for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
        }
        return q;
    };
    std::vector<long long> num((std::size_t)d + 1, 0);
    num[0] = -1;
    num[(std::size_t)d] = 1;
    for (long long dd = 1; dd < d; ++dd) {
        if (d % dd) continue;
        num = divide(num, cyclotomic_coeffs(dd));
    }
    return num;
}

}  // namespace charts

/// Irreducible-component chart C_eps = C/(f_eps). eps is +1, -1, or the
/// order d of a primitive root of unity, in which case a variable e with
/// the d-th cyclotomic relation is adjoined and f_eps = (prod u)^h - e*t^m.
inline ChartPresentation build_component(const ModelParams& pr, long long eps) {
    ChartPresentation ch = build_gl_pro_p(pr);
    ch.case_tag = "gl-component";
    QPoly t = QPoly::variable(ch.ring, "t");
    QPoly prod_u = QPoly::constant(ch.ring, Rational(1));
    for (long long i = 0; i < pr.n; ++i)
        prod_u = prod_u * QPoly::variable(ch.ring, "u" + std::to_string(i));
    if (eps == 1 || eps == -1) {
        QPoly f = prod_u.pow(pr.h) - t.pow(pr.m).scaled(Rational(eps));
        ch.named["f_eps"] = f;
        ch.gens.push_back(f);
        return ch;
    }
    long long d = eps;
    if (d < 3 || pr.g % d != 0)
        throw std::invalid_argument("component: cyclotomic order must divide g and exceed 2");
    std::vector<std::string> vars = ch.ring->vars();
    std::string ename = fresh_name("e", vars);
    vars.push_back(ename);
    RingPtr R = make_ring(vars, CoeffDomain::rationals());
    std::vector<int> up(ch.ring->nvars());
    for (std::size_t i = 0; i < ch.ring->nvars(); ++i) up[i] = (int)i;
    std::vector<QPoly> gens;
    for (const auto& g : ch.gens) gens.push_back(transport(g, R, up));
    std::map<std::string, QPoly> named;
    for (auto& [k, v] : ch.named) named[k] = transport(v, R, up);
    QPoly e = QPoly::variable(R, ename);
    std::vector<long long> cyc = charts::cyclotomic_coeffs(d);
    QPoly phi = QPoly::zero(R);
    for (std::size_t i = 0; i < cyc.size(); ++i)
        phi = phi + e.pow((long long)i).scaled(Rational(cyc[i]));
    gens.push_back(phi);
    QPoly tp = QPoly::variable(R, "t");
    QPoly pu = QPoly::constant(R, Rational(1));
    for (long long i = 0; i < pr.n; ++i) pu = pu * QPoly::variable(R, "u" + std::to_string(i));
    QPoly f = pu.pow(pr.h) - e * tp.pow(pr.m);
    named["f_eps"] = f;
    named["cyclotomic"] = phi;
    gens.push_back(f);
    ch.ring = R;
    ch.gens = std::move(gens);
    ch.named = std::move(named);
    return ch;
}

/// Fiber of the pro-p chart over the worst point: the ideal gains all
/// Iwahori variables. Reduced basis should be {a-vars, t, u_i^(p-1)}.
inline ChartPresentation worst_fiber(const ChartPresentation& pro_p) {
    if (pro_p.case_tag != "gl-pro-p" && pro_p.case_tag != "gl-component")
        throw std::invalid_argument("worst_fiber: pro-p chart required");
    ChartPresentation ch = pro_p;
    ch.case_tag = "worst-fiber";
    for (const auto& v : ch.ring->vars()) {
        if (v[0] == 'a') ch.gens.push_back(QPoly::variable(ch.ring, v));
    }
    return ch;
}

/// GSp Iwahori chart: variables a^i_{jk}, i = 0..n, j,k = 1..n, with the
/// isotropy identification a^i_{jk} = a^i_{n+1-k,n+1-j} applied at i = 0, n
/// (lexicographically smaller index pair kept). Generators are all entries
/// of phi_i M_i - M_{i+1} A_i for i = 0..n-1.
inline ChartPresentation build_gsp_iwahori(long long n) {
    if (n < 1) throw std::invalid_argument("gsp chart: n >= 1");
    ChartPresentation ch;
    ch.case_tag = "gsp-iwahori";
    ch.params.n = n;
    ch.params.r = n;
    auto canonical = [&](long long i, long long j, long long k) {
        if (i == 0 || i == n) {
            long long j2 = n + 1 - k, k2 = n + 1 - j;
            if (std::make_pair(j2, k2) < std::make_pair(j, k)) return std::make_pair(j2, k2);
        }
        return std::make_pair(j, k);
    };
    std::vector<std::string> vars;
    for (long long i = 0; i <= n; ++i)
        for (long long j = 1; j <= n; ++j)
            for (long long k = 1; k <= n; ++k) {
                if (canonical(i, j, k) == std::make_pair(j, k))
                    vars.push_back(charts::gl_var(i, j, k));
            }
    vars.push_back("t");
    ch.ring = make_ring(vars, CoeffDomain::rationals());
    auto a = [&](long long i, long long j, long long k) {
        auto [cj, ck] = canonical(i, j, k);
        return QPoly::variable(ch.ring, charts::gl_var(i, cj, ck));
    };
    QPoly zero = QPoly::zero(ch.ring);
    QPoly one = QPoly::constant(ch.ring, Rational(1));
    QPoly t = QPoly::variable(ch.ring, "t");

    // M_i: 2n x n; rows i..i+n-1 (0-based, mod 2n) are the identity, row
    // (i+n+j-1) mod 2n is a^i_{j,.}.
    auto chain_matrix = [&](long long i) {
        charts::PolyMat M((std::size_t)(2 * n), std::vector<QPoly>((std::size_t)n, zero));
        for (long long k = 0; k < n; ++k) M[(i + k) % (2 * n)][k] = one;
        for (long long j = 1; j <= n; ++j)
            for (long long k = 1; k <= n; ++k)
                M[(i + n + j - 1) % (2 * n)][k - 1] = a(i, j, k);
        return M;
    };
    auto companion = [&](long long i) {
        charts::PolyMat A((std::size_t)n, std::vector<QPoly>((std::size_t)n, zero));
        for (long long k = 0; k + 1 < n; ++k) A[k][k + 1] = one;
        for (long long k = 1; k <= n; ++k) A[n - 1][k - 1] = a(i, 1, k);
        return A;
    };
    for (long long i = 0; i < n; ++i) {
        charts::PolyMat lhs = chain_matrix(i);
        for (long long col = 0; col < n; ++col) lhs[i][col] = lhs[i][col] * t;  // phi_i
        charts::PolyMat rhs = charts::mat_mul(chain_matrix(i + 1), companion(i));
        for (long long row = 0; row < 2 * n; ++row)
            for (long long col = 0; col < n; ++col) {
                QPoly e = lhs[row][col] - rhs[row][col];
                if (e.is_zero()) continue;
                bool dup = false;
                for (const auto& gprev : ch.gens)
                    if (gprev == e || gprev == -e) {
                        dup = true;
                        break;
                    }
                if (!dup) ch.gens.push_back(e);
            }
    }
    for (long long i = 0; i < n; ++i) {
        ch.named["alpha_" + std::to_string(i)] = a(i + 1, n, n);
        ch.named["beta_" + std::to_string(i)] = a(i, 1, 1);
    }
    if (n >= 2) {
        ch.named["lemma_identity"] = a(1, n, n) * a(0, 1, 2) + a(2, n - 1, n) * a(1, 1, 1);
        ch.named["lemma_identity_as_displayed"] =
            a(1, n, n) * a(0, 1, 2) + a(2, n - 1, 1) * a(1, 1, 1);
    }
    return ch;
}

/// Haines-Stroh chart: GSp Iwahori chart plus u_i, v_i with
/// u_i^(p-1) = a^{i+1}_{nn}, v_i^(p-1) = a^i_{11} and the ties
/// u_0 v_0 = u_i v_i.
inline ChartPresentation build_gsp_hs(long long n, long long p) {
    ModelParams pr;
    pr.n = n;
    pr.r = n;
    pr.p = p;
    if (!is_prime_ll(p) || p < 3) throw std::invalid_argument("gsp-hs: odd prime required");
    ChartPresentation base = build_gsp_iwahori(n);
    ChartPresentation ch;
    ch.case_tag = "gsp-hs";
    ch.params = pr;
    std::vector<std::string> vars;
    for (const auto& v : base.ring->vars())
        if (v != "t") vars.push_back(v);
    for (long long i = 0; i < n; ++i) {
        vars.push_back("u" + std::to_string(i));
        vars.push_back("v" + std::to_string(i));
    }
    vars.push_back("t");
    ch.ring = make_ring(vars, CoeffDomain::rationals());
    std::vector<int> up(base.ring->nvars());
    for (std::size_t i = 0; i < base.ring->nvars(); ++i)
        up[i] = (int)ch.ring->var_index(base.ring->var_name(i));
    for (const auto& g : base.gens) ch.gens.push_back(transport(g, ch.ring, up));
    for (auto& [k, v] : base.named) ch.named[k] = transport(v, ch.ring, up);
    auto u = [&](long long i) { return QPoly::variable(ch.ring, "u" + std::to_string(i)); };
    auto v = [&](long long i) { return QPoly::variable(ch.ring, "v" + std::to_string(i)); };
    for (long long i = 0; i < n; ++i) {
        ch.gens.push_back(u(i).pow(p - 1) - ch.named_at("alpha_" + std::to_string(i)));
        ch.gens.push_back(v(i).pow(p - 1) - ch.named_at("beta_" + std::to_string(i)));
    }
    for (long long i = 1; i < n; ++i) ch.gens.push_back(u(0) * v(0) - u(i) * v(i));
    if (n >= 2) {
        // a^0_{12} u_0 u_1^{p-2} + a^2_{n-1,n} v_0^{p-2} v_1, fetched through
        // the same canonicalization as the base chart
        QPoly a012 = transport(
            QPoly::variable(base.ring, charts::gl_var(0, 1, 2)), ch.ring, up);
        QPoly a2 = transport(QPoly::variable(base.ring, [&] {
                                 long long i = 2, j = n - 1, k = n;
                                 if (i == 0 || i == n) {
                                     long long j2 = n + 1 - k, k2 = n + 1 - j;
                                     if (std::make_pair(j2, k2) < std::make_pair(j, k)) {
                                         j = j2;
                                         k = k2;
                                     }
                                 }
                                 return charts::gl_var(i, j, k);
                             }()),
                             ch.ring, up);
        ch.named["witness"] = a012 * u(0) * u(1).pow(p - 2) + a2 * v(0).pow(p - 2) * v(1);
    }
    return ch;
}

/// Shadrach's Siegel chart: GSp Iwahori chart plus u_i and one extra root w
/// of t: u_i^(p-1) = a^{i+1}_{nn}, w^(p-1) = t.
inline ChartPresentation build_gsp_shadrach(long long n, long long p) {
    if (!is_prime_ll(p) || p < 3) throw std::invalid_argument("gsp-shadrach: odd prime required");
    ChartPresentation base = build_gsp_iwahori(n);
    ChartPresentation ch;
    ch.case_tag = "gsp-shadrach";
    ch.params.n = n;
    ch.params.r = n;
    ch.params.p = p;
    std::vector<std::string> vars;
    for (const auto& v : base.ring->vars())
        if (v != "t") vars.push_back(v);
    for (long long i = 0; i < n; ++i) vars.push_back("u" + std::to_string(i));
    vars.push_back("w");
    vars.push_back("t");
    ch.ring = make_ring(vars, CoeffDomain::rationals());
    std::vector<int> up(base.ring->nvars());
    for (std::size_t i = 0; i < base.ring->nvars(); ++i)
        up[i] = (int)ch.ring->var_index(base.ring->var_name(i));
    for (const auto& g : base.gens) ch.gens.push_back(transport(g, ch.ring, up));
    for (auto& [k, v] : base.named) ch.named[k] = transport(v, ch.ring, up);
    for (long long i = 0; i < n; ++i) {
        QPoly u = QPoly::variable(ch.ring, "u" + std::to_string(i));
        ch.gens.push_back(u.pow(p - 1) - ch.named_at("alpha_" + std::to_string(i)));
    }
    QPoly w = QPoly::variable(ch.ring, "w");
    ch.gens.push_back(w.pow(p - 1) - QPoly::variable(ch.ring, "t"));
    return ch;
}

/// The three elliptic-curve charts over B = Q[x,y,t]/(xy - t) and the ring
/// maps between them.
struct EllipticTriangle {
    ChartPresentation base;    // B
    ChartPresentation sh;     // B[u,w]/(u^{p-1}-x, w^{p-1}-t)
    ChartPresentation hs;     // B[u,v]/(u^{p-1}-x, v^{p-1}-y)
    ChartPresentation prime;  // B[u]/(u^{p-1}-x)
    QHom sh_to_hs;            // w -> uv
    QHom prime_to_sh;
    QHom prime_to_hs;

    EllipticTriangle(ChartPresentation b, ChartPresentation s, ChartPresentation h,
                     ChartPresentation pr, QHom s2h, QHom p2s, QHom p2h)
        : base(std::move(b)),
          sh(std::move(s)),
          hs(std::move(h)),
          prime(std::move(pr)),
          sh_to_hs(std::move(s2h)),
          prime_to_sh(std::move(p2s)),
          prime_to_hs(std::move(p2h)) {}
};

inline EllipticTriangle build_elliptic_triangle(long long p) {
    if (!is_prime_ll(p) || p < 3) throw std::invalid_argument("elliptic: odd prime required");
    auto mk = [&](const std::vector<std::string>& vars, const std::string& tag,
                  const std::vector<std::string>& gens) {
        ChartPresentation ch;
        ch.case_tag = tag;
        ch.params.n = 1;
        ch.params.r = 1;
        ch.params.p = p;
        ch.ring = make_ring(vars, CoeffDomain::rationals());
        for (const auto& g : gens) ch.gens.push_back(parse_q(ch.ring, g));
        return ch;
    };
    std::string pm1 = std::to_string(p - 1);
    ChartPresentation B = mk({"x", "y", "t"}, "elliptic-B", {"x*y - t"});
    ChartPresentation sh = mk({"x", "y", "u", "w", "t"}, "elliptic-sh",
                              {"x*y - t", "u^" + pm1 + " - x", "w^" + pm1 + " - t"});
    ChartPresentation hs = mk({"x", "y", "u", "v", "t"}, "elliptic-hs",
                              {"x*y - t", "u^" + pm1 + " - x", "v^" + pm1 + " - y"});
    ChartPresentation prime =
        mk({"x", "y", "u", "t"}, "elliptic-prime", {"x*y - t", "u^" + pm1 + " - x"});
    auto var = [](const ChartPresentation& c, const std::string& v) {
        return QPoly::variable(c.ring, v);
    };
    QHom s2h(sh.ring, hs.ring,
             {var(hs, "x"), var(hs, "y"), var(hs, "u"), var(hs, "u") * var(hs, "v"),
              var(hs, "t")});
    QHom p2s(prime.ring, sh.ring, {var(sh, "x"), var(sh, "y"), var(sh, "u"), var(sh, "t")});
    QHom p2h(prime.ring, hs.ring, {var(hs, "x"), var(hs, "y"), var(hs, "u"), var(hs, "t")});
    return EllipticTriangle(std::move(B), std::move(sh), std::move(hs), std::move(prime),
                            std::move(s2h), std::move(p2s), std::move(p2h));
}

// ---------------------------------------------------------------------------
// F_p point machinery on minuscule alcoves
// ---------------------------------------------------------------------------

/// F^x_i: the coordinate subspace spanned by e_j with t^x_i(j) = 1, as an
/// n x r column matrix over F_p.
inline std::vector<FpMatrix> base_point(const Alcove& x, long long p) {
    if (!x.is_minuscule()) throw std::invalid_argument("base_point: minuscule alcove required");
    std::size_t n = x.n();
    std::vector<FpMatrix> out;
    for (std::size_t i = 0; i < n; ++i) {
        IntVec t = x.diff(i);
        std::size_t r = 0;
        for (long long v : t) r += (v == 1);
        FpMatrix M(n, r, p);
        std::size_t col = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (t[j] == 1) M.at(j, col++) = Fp(1, p);
        out.push_back(M);
    }
    return out;
}

/// Does the base point of x satisfy the direct-sum condition cutting out the
/// open chart U_y?  F^x_i + span(e_j : t^y_i(j) = 0) must be all of F_p^n.
inline bool chart_membership(const Alcove& x, const Alcove& y, long long p) {
    if (x.n() != y.n()) throw std::invalid_argument("chart_membership: rank mismatch");
    if (!x.is_minuscule() || !y.is_minuscule())
        throw std::invalid_argument("chart_membership: minuscule alcoves required");
    std::size_t n = x.n();
    std::vector<FpMatrix> F = base_point(x, p);
    for (std::size_t i = 0; i < n; ++i) {
        IntVec ty = y.diff(i);
        std::vector<std::size_t> zeros;
        for (std::size_t j = 0; j < n; ++j)
            if (ty[j] == 0) zeros.push_back(j);
        FpMatrix M(n, F[i].cols() + zeros.size(), p);
        for (std::size_t rr = 0; rr < n; ++rr)
            for (std::size_t cc = 0; cc < F[i].cols(); ++cc) M.at(rr, cc) = F[i].at(rr, cc);
        for (std::size_t jz = 0; jz < zeros.size(); ++jz)
            M.at(zeros[jz], F[i].cols() + jz) = Fp(1, p);
        if (M.rank() != n) return false;
    }
    return true;
}

/// phi_i over F_p: the identity with a zero (the reduction of p) in slot i.
inline FpMatrix phi_matrix(std::size_t n, std::size_t i, long long p) {
    FpMatrix M = FpMatrix::identity(n, p);
    M.at(i, i) = Fp(0, p);
    return M;
}

struct VanishingPattern {
    std::vector<bool> alpha_nonzero;
    std::vector<bool> beta_nonzero;

    friend bool operator==(const VanishingPattern& a, const VanishingPattern& b) {
        return a.alpha_nonzero == b.alpha_nonzero && a.beta_nonzero == b.beta_nonzero;
    }
};

/// Linear-algebra route: alpha_i != 0 iff the induced map on quotients is an
/// isomorphism (phi_i(F_p^n) + F_{i+1} full), beta_i != 0 iff phi_i restricts
/// to an isomorphism F_i -> F_{i+1}.
inline VanishingPattern vanishing_pattern(const Alcove& x, long long p) {
    std::size_t n = x.n();
    std::vector<FpMatrix> F = base_point(x, p);
    VanishingPattern out;
    for (std::size_t i = 0; i < n; ++i) {
        const FpMatrix& next = F[(i + 1) % n];
        FpMatrix phi = phi_matrix(n, i, p);
        // surjectivity onto the quotient: [phi | F_{i+1}] has full row rank
        FpMatrix aug(n, n + next.cols(), p);
        for (std::size_t rr = 0; rr < n; ++rr) {
            for (std::size_t cc = 0; cc < n; ++cc) aug.at(rr, cc) = phi.at(rr, cc);
            for (std::size_t cc = 0; cc < next.cols(); ++cc)
                aug.at(rr, n + cc) = next.at(rr, cc);
        }
        out.alpha_nonzero.push_back(aug.rank() == n);
        // restriction iso: phi * F_i keeps rank r (image lands in F_{i+1}
        // automatically for points of the model)
        FpMatrix img = phi.mul(F[i]);
        out.beta_nonzero.push_back(img.rank() == F[i].cols());
    }
    return out;
}

/// Difference-vector route of the same dichotomy:
/// alpha_i != 0 iff t^x_{i+1}(i+1) = 1, beta_i != 0 iff t^x_i(i+1) = 0
/// (1-based coordinates; rows mod n with t_n = t_0).
inline VanishingPattern combinatorial_vanishing(const Alcove& x) {
    std::size_t n = x.n();
    VanishingPattern out;
    for (std::size_t i = 0; i < n; ++i) {
        IntVec t_next = x.diff((i + 1) % n);
        IntVec t_i = x.diff(i);
        out.alpha_nonzero.push_back(t_next[i] == 1);
        out.beta_nonzero.push_back(t_i[i] == 0);
    }
    return out;
}

/// Explicit F_p point of the Iwahori chart U_tau realizing a vanishing
/// pattern with all alpha_i = 0: backtracking over the first-row variables
/// a^i_{1k}; the deeper rows are determined by the chart relations. Returns
/// the full variable assignment (t = 0 implicitly) or nothing.
inline std::optional<std::map<std::string, Fp>> solve_pattern_point(
    long long n, long long r, long long p, const std::vector<bool>& beta_nonzero) {
    // values[i][j][k] with j,k 1-based; first rows j = 1 searched, the rest
    // derived level by level from
    //   a^i_{j+1,1} = a^{i+1}_{j,r} a^i_{11}
    //   a^i_{j+1,k} = a^{i+1}_{j,k-1} + a^{i+1}_{j,r} a^i_{1k}   (k >= 2)
    std::vector<std::vector<std::vector<Fp>>> val(
        (std::size_t)n, std::vector<std::vector<Fp>>((std::size_t)(n - r) + 1,
                                                     std::vector<Fp>((std::size_t)r + 1, Fp(0, p))));
    std::vector<std::pair<long long, long long>> slots;  // (i, k) first-row slots
    for (long long i = 0; i < n; ++i)
        for (long long k = 1; k <= r; ++k) slots.push_back({i, k});

    auto try_complete = [&]() -> bool {
        for (long long j = 1; j <= n - r - 1; ++j) {
            for (long long i = 0; i < n; ++i) {
                long long ip = (i + 1) % n;
                val[i][j + 1][1] = val[ip][j][r] * val[i][1][1];
                for (long long k = 2; k <= r; ++k)
                    val[i][j + 1][k] = val[ip][j][k - 1] + val[ip][j][r] * val[i][1][k];
            }
        }
        // remaining relations: a^{i+1}_{n-r,r} a^i_{11} = t = 0 and
        // a^{i+1}_{n-r,k-1} + a^{i+1}_{n-r,r} a^i_{1k} = 0
        for (long long i = 0; i < n; ++i) {
            long long ip = (i + 1) % n;
            if (!(val[ip][n - r][r] * val[i][1][1]).is_zero()) return false;
            for (long long k = 2; k <= r; ++k)
                if (!(val[ip][n - r][k - 1] + val[ip][n - r][r] * val[i][1][k]).is_zero())
                    return false;
        }
        // pattern: alpha_i = a^{i+1}_{n-r,r} all zero, beta per request
        for (long long i = 0; i < n; ++i) {
            long long ip = (i + 1) % n;
            if (!val[ip][n - r][r].is_zero()) return false;
            bool bnz = !val[i][1][1].is_zero();
            if (bnz != (bool)beta_nonzero[(std::size_t)i]) return false;
        }
        return true;
    };

    std::function<bool(std::size_t)> dfs = [&](std::size_t s) -> bool {
        if (s == slots.size()) return try_complete();
        auto [i, k] = slots[s];
        if (k == 1) {
            if (beta_nonzero[(std::size_t)i]) {
                for (long long v = 1; v < p; ++v) {
                    val[i][1][1] = Fp(v, p);
                    if (dfs(s + 1)) return true;
                }
            } else {
                val[i][1][1] = Fp(0, p);
                return dfs(s + 1);
            }
            return false;
        }
        for (long long v = 0; v < p; ++v) {
            val[i][1][k] = Fp(v, p);
            if (dfs(s + 1)) return true;
        }
        return false;
    };

    if (!dfs(0)) return std::nullopt;
    std::map<std::string, Fp> out;
    for (long long i = 0; i < n; ++i)
        for (long long j = 1; j <= n - r; ++j)
            for (long long k = 1; k <= r; ++k) out[charts::gl_var(i, j, k)] = val[i][j][k];
    return out;
}

/// Evaluate every generator of a chart at an F_p assignment (unlisted
/// variables default to zero, including t). True iff all vanish.
inline bool satisfies_chart(const ChartPresentation& ch, const std::map<std::string, Fp>& point,
                            long long p) {
    std::vector<Fp> values(ch.ring->nvars(), Fp(0, p));
    for (const auto& [name, v] : point) values[ch.ring->var_index(name)] = v;
    for (const auto& g : ch.gens)
        if (!evaluate_fp(g, values, p).is_zero()) return false;
    return true;
}

/// Value of a named chart element at an F_p assignment.
inline Fp evaluate_named(const ChartPresentation& ch, const std::string& key,
                         const std::map<std::string, Fp>& point, long long p) {
    std::vector<Fp> values(ch.ring->nvars(), Fp(0, p));
    for (const auto& [name, v] : point) values[ch.ring->var_index(name)] = v;
    return evaluate_fp(ch.named_at(key), values, p);
}

/// Are the two Iwahori presentations of B the same ring?  The first-row
/// variables a^i_{1k} correspond to a^i_k; every other variable must reduce
/// to a polynomial in them, and the contracted ideal must equal the matrix
/// ideal.
inline bool presentation_equivalence(const ChartPresentation& gl, const ChartPresentation& mat,
                                     Budget& budget) {
    long long n = gl.params.n, r = gl.params.r;
    std::vector<bool> elim(gl.ring->nvars(), false);
    for (long long i = 0; i < n; ++i)
        for (long long j = 2; j <= n - r; ++j)
            for (long long k = 1; k <= r; ++k)
                elim[gl.ring->var_index(charts::gl_var(i, j, k))] = true;

    // surjectivity: deeper rows must reduce into the first-row subring
    QIdealPtr I = gl.ideal();
    MonomialOrder elim_order = MonomialOrder::elimination(elim);
    std::vector<bool> keep(gl.ring->nvars());
    for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = !elim[i];
    for (std::size_t vi = 0; vi < gl.ring->nvars(); ++vi) {
        if (!elim[vi]) continue;
        QPoly nf = normal_form(QPoly::variable(gl.ring, vi), I, elim_order, budget);
        if (!nf.supported_on(keep)) return false;
    }

    QIdealPtr contracted = ideal_eliminate(I, elim, budget);
    std::vector<int> down(gl.ring->nvars(), -1);
    for (long long i = 0; i < n; ++i)
        for (long long k = 1; k <= r; ++k)
            down[gl.ring->var_index(charts::gl_var(i, 1, k))] =
                (int)mat.ring->var_index(charts::gl_matrix_var(i, k));
    down[gl.ring->var_index("t")] = (int)mat.ring->var_index("t");
    std::vector<QPoly> moved;
    for (const auto& g : contracted->gens()) moved.push_back(transport(g, mat.ring, down));
    QIdealPtr J = mat.ideal();
    return ideal_equal(make_ideal(mat.ring, moved), J, budget);
}

}  // namespace lml
