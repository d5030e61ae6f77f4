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

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "charts.hpp"
#include "padic.hpp"
#include "veronese.hpp"

namespace lml {

/// Evaluate a rational-coefficient polynomial at ramified-ring values
/// (t evaluates to p).
inline RamifiedRing::Elt evaluate_ram(const QPoly& f, const RamifiedRing& R,
                                      const std::vector<RamifiedRing::Elt>& values) {
    RamifiedRing::Elt acc = R.zero();
    long long pk = pow_ll(R.p(), R.precision());
    for (const auto& term : f.terms()) {
        long long den = mpz_class(term.coeff.den() % static_cast<long>(pk)).get_si();
        long long num = mpz_class(term.coeff.num() % static_cast<long>(pk)).get_si();
        if (den % R.p() == 0)
            throw std::domain_error("evaluate_ram: denominator divisible by p");
        RamifiedRing::Elt v =
            R.mul(R.from_integer(num), R.inv(R.from_integer(den)));
        for (std::size_t i = 0; i < values.size(); ++i)
            for (int32_t k = 0; k < term.mono[i]; ++k) v = R.mul(v, values[i]);
        acc = R.add(acc, v);
    }
    return acc;
}

/// All chart generators vanish mod p^K at the assignment (t -> p).
inline bool chart_vanishes_ram(const ChartPresentation& ch, const RamifiedRing& R,
                               const std::map<std::string, RamifiedRing::Elt>& point, int K) {
    std::vector<RamifiedRing::Elt> values(ch.ring->nvars(), R.zero());
    for (const auto& [name, v] : point) values[ch.ring->var_index(name)] = v;
    values[ch.ring->var_index("t")] = R.from_integer(R.p());
    for (const auto& g : ch.gens)
        if (!R.vanishes_mod(evaluate_ram(g, R, values), K)) return false;
    return true;
}

namespace liftdetail {

inline long long teich_value(long long a, long long p, int K) {
    return teichmuller(a, p, K).value;
}

inline long long inv_mod(long long a, long long m) {
    long long t0 = 0, t1 = 1, r0 = m, r1 = ((a % m) + m) % m;
    while (r1 != 0) {
        long long q = r0 / r1;
        long long tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    return ((t0 % m) + m) % m;
}

}  // namespace liftdetail

/// Lift an F_p point of the signature-(1, n-1) component chart C_1 (x-form:
/// variables x_i, v_i) to the ramified ring, following the correction recipe:
/// lift freely, solve roots by Hensel, and fix the component constraint by
/// multiplying one vanishing coordinate with a root of unity.
inline LiftOutcome lift_component_r1(const ChartPresentation& c1,
                                     const std::map<std::string, Fp>& point, int K) {
    long long n = c1.params.n, p = c1.params.p;
    long long h = c1.params.h, m = c1.params.m;
    LiftOutcome out;
    std::vector<long long> xb((std::size_t)n), vb((std::size_t)n);
    for (long long i = 0; i < n; ++i) {
        xb[(std::size_t)i] = point.at("x" + std::to_string(i)).value();
        vb[(std::size_t)i] = point.at("v" + std::to_string(i)).value();
    }
    std::vector<long long> zeros;
    for (long long i = 0; i < n; ++i)
        if (xb[(std::size_t)i] == 0) zeros.push_back(i);

    auto record = [&](const RamifiedRing& R, std::map<std::string, RamifiedRing::Elt>& coords) {
        out.ramification = R.ramification();
        out.unit_c = R.unit_c();
        out.lifted = true;
        out.verified = chart_vanishes_ram(c1, R, coords, K);
        for (const auto& [k, v] : coords) out.coordinates[k] = v.a;
    };

    if (zeros.size() == (std::size_t)n) {
        // all-zero point: no unit coordinate to correct, so the root-of-unity
        // recipe does not apply; the direct lift assigns theta-powers, with
        // the root variables becoming roots of t.
        out.branch = "all-zero-direct";
        int e = (int)(n * (p - 1));
        RamifiedRing R(p, K, e, 1);
        std::map<std::string, RamifiedRing::Elt> coords;
        for (long long i = 0; i < n; ++i) {
            coords["x" + std::to_string(i)] = R.theta_power((int)(p - 1));
            coords["v" + std::to_string(i)] = R.theta_power((int)(n - 1));
        }
        record(R, coords);
        return out;
    }
    if (zeros.size() == 1) {
        out.branch = "one-zero-correction";
        long long j = zeros[0];
        long long a = 0;
        for (long long i = 0; i < n; ++i) {
            if (i == j) continue;
            if (a == 0) a = xb[(std::size_t)i];
            if (xb[(std::size_t)i] != a) {
                out.failure = "unit coordinates with distinct residues: the single-uniformizer "
                              "recipe cannot match x" +
                              std::to_string(i);
                return out;
            }
        }
        long long pK = pow_ll(p, K);
        long long ta = liftdetail::teich_value(a, p, K);
        long long c = liftdetail::inv_mod(ta, pK);
        RamifiedRing R(p, K, (int)(p - 1), c);
        std::map<std::string, RamifiedRing::Elt> coords;
        RamifiedRing::Elt prod_units = R.from_integer(1);
        for (long long i = 0; i < n; ++i) {
            if (i == j) continue;
            coords["x" + std::to_string(i)] = R.from_integer(ta);
            prod_units = R.mul(prod_units, R.from_integer(ta));
        }
        coords["x" + std::to_string(j)] =
            R.mul(R.from_integer(p), R.inv(prod_units));  // makes prod x = p exact
        // unit root at j
        RamifiedRing::Elt vroot;
        if (!R.root_p_minus_1(prod_units, vb[(std::size_t)j], vroot)) {
            out.failure = "v" + std::to_string(j) + "^(p-1) = alpha_j has no Hensel solution";
            return out;
        }
        coords["v" + std::to_string(j)] = vroot;
        // vanishing roots: v_i = theta * w_i with w_i^(p-1) = alpha_i / theta^(p-1)
        std::vector<long long> others;
        for (long long i = 0; i < n; ++i)
            if (i != j) others.push_back(i);
        for (long long i : others) {
            // alpha_i = prod_{k != i} x_k; by construction alpha_i/theta^{p-1} = 1
            coords["v" + std::to_string(i)] = R.mul_theta(R.from_integer(1));
        }
        // component constraint: (prod v)^h = t^m; correct one vanishing
        // coordinate by zeta in mu_{p-1} with zeta^h fixing the unit defect
        std::vector<RamifiedRing::Elt> vals(c1.ring->nvars(), R.zero());
        auto load = [&] {
            for (const auto& [k2, v2] : coords) vals[c1.ring->var_index(k2)] = v2;
            vals[c1.ring->var_index("t")] = R.from_integer(p);
        };
        load();
        RamifiedRing::Elt f1 = evaluate_ram(c1.named_at("f_1"), R, vals);
        if (!R.is_zero(f1)) {
            bool fixed = false;
            for (long long b = 1; b < p && !fixed; ++b) {
                long long zeta = liftdetail::teich_value(b, p, K);
                RamifiedRing::Elt cand =
                    R.mul(R.from_integer(zeta), coords["v" + std::to_string(others[0])]);
                auto saved = coords["v" + std::to_string(others[0])];
                coords["v" + std::to_string(others[0])] = cand;
                load();
                if (R.is_zero(evaluate_ram(c1.named_at("f_1"), R, vals)))
                    fixed = true;
                else
                    coords["v" + std::to_string(others[0])] = saved;
            }
            if (!fixed) {
                out.failure = "no root of unity fixes the component constraint";
                return out;
            }
        }
        record(R, coords);
        return out;
    }
    if (zeros.size() == 2 && n == 3) {
        out.branch = "two-zero-deeper-ramification";
        long long j3 = -1;
        for (long long i = 0; i < n; ++i)
            if (xb[(std::size_t)i] != 0) j3 = i;
        long long mval = xb[(std::size_t)j3];
        if (mod_pow_ll(mval, (p - 1) / 2, p) != 1 && p != 2) {
            // eta^(p-1) = teich(m) needs m to be a (p-1)-th power residue
            out.failure = "unit coordinate " + std::to_string(mval) +
                          " is not a (p-1)-th power residue; no lift over this residue field";
            return out;
        }
        long long pK = pow_ll(p, K);
        long long tm = liftdetail::teich_value(mval, p, K);
        long long c = liftdetail::inv_mod(tm, pK);
        RamifiedRing R(p, K, (int)(2 * (p - 1)), c);
        std::map<std::string, RamifiedRing::Elt> coords;
        long long j1 = zeros[0], j2 = zeros[1];
        coords["x" + std::to_string(j1)] = R.theta_power((int)(p - 1));
        coords["x" + std::to_string(j2)] = R.theta_power((int)(p - 1));
        coords["x" + std::to_string(j3)] = R.from_integer(tm);
        // v_{j3}^(p-1) = theta^{2(p-1)}; v_{j1}, v_{j2} = theta * eta with
        // eta^(p-1) = teich(m)
        RamifiedRing::Elt eta;
        long long eta0 = 0;
        for (long long b = 1; b < p && eta0 == 0; ++b)
            if (mod_pow_ll(b, p - 1, p) == (tm % p)) eta0 = b;  // always b^(p-1)=1
        if (!R.root_p_minus_1(R.from_integer(tm), 1, eta)) {
            out.failure = "eta^(p-1) = teich(m) has no solution";
            return out;
        }
        coords["v" + std::to_string(j1)] = R.mul_theta(eta);
        coords["v" + std::to_string(j2)] = R.mul_theta(eta);
        coords["v" + std::to_string(j3)] = R.theta_power(2);
        // fix f_1 by a root of unity on v_{j3} (a vanishing coordinate)
        std::vector<RamifiedRing::Elt> vals(c1.ring->nvars(), R.zero());
        auto load = [&] {
            for (const auto& [k2, v2] : coords) vals[c1.ring->var_index(k2)] = v2;
            vals[c1.ring->var_index("t")] = R.from_integer(p);
        };
        load();
        if (!R.is_zero(evaluate_ram(c1.named_at("f_1"), R, vals))) {
            bool fixed = false;
            for (long long b = 1; b < p && !fixed; ++b) {
                long long zeta = liftdetail::teich_value(b, p, K);
                auto saved = coords["v" + std::to_string(j3)];
                coords["v" + std::to_string(j3)] = R.mul(R.from_integer(zeta), saved);
                load();
                if (R.is_zero(evaluate_ram(c1.named_at("f_1"), R, vals)))
                    fixed = true;
                else
                    coords["v" + std::to_string(j3)] = saved;
            }
            if (!fixed) {
                out.failure = "no root of unity fixes the component constraint";
                return out;
            }
        }
        record(R, coords);
        return out;
    }
    out.failure = "no recipe branch covers this zero pattern (" +
                  std::to_string(zeros.size()) + " vanishing x-coordinates)";
    return out;
}

/// Lift an F_p point of the n = 2 Haines-Stroh chart with every v_i a unit
/// (so every u_i vanishes mod p): the solved form of the chart makes all
/// coordinates explicit, with u_i = theta / v_i tying u_0 v_0 = u_1 v_1 = theta.
inline LiftOutcome lift_hs_n2(const ChartPresentation& hs, const std::map<std::string, Fp>& point,
                              int K) {
    long long p = hs.params.p;
    LiftOutcome out;
    out.branch = "hs-all-v-units";
    for (int i = 0; i < 2; ++i) {
        if (point.at("v" + std::to_string(i)).is_zero()) {
            out.failure = "recipe needs both v_i to be units";
            return out;
        }
        if (!point.at("u" + std::to_string(i)).is_zero()) {
            out.failure = "recipe needs both u_i to vanish mod p";
            return out;
        }
    }
    RamifiedRing R(p, K, (int)(p - 1), 1);
    auto T = [&](long long a) { return R.from_integer(liftdetail::teich_value(a, p, K)); };
    std::map<std::string, RamifiedRing::Elt> co;
    RamifiedRing::Elt v0 = T(point.at("v0").value());
    RamifiedRing::Elt v1 = T(point.at("v1").value());
    co["v0"] = v0;
    co["v1"] = v1;
    co["u0"] = R.mul_theta(R.inv(v0));
    co["u1"] = R.mul_theta(R.inv(v1));
    RamifiedRing::Elt pe = R.from_integer(p);
    RamifiedRing::Elt v0sq = R.pow(v0, p - 1);
    RamifiedRing::Elt v1sq = R.pow(v1, p - 1);
    co["a0_1_1"] = v0sq;                      // x = beta_0
    co["a1_1_1"] = v1sq;                      // beta_1
    co["a1_2_2"] = R.mul(pe, R.inv(v0sq));    // alpha_0
    co["a2_1_1"] = R.mul(pe, R.inv(v1sq));    // alpha_1 = q
    long long ybar = point.at("a0_1_2").value();
    long long a112bar = point.at("a1_1_2").value();
    if (ybar != 0 && a112bar != 0) {
        out.failure = "a0_1_2 and a1_1_2 both units: inconsistent with x = a1_1_1 + a1_1_2*y";
        return out;
    }
    RamifiedRing::Elt y = ybar ? T(ybar) : R.zero();
    RamifiedRing::Elt a112 = a112bar ? T(a112bar) : R.zero();
    co["a0_1_2"] = y;
    co["a1_1_2"] = a112;
    co["a0_2_1"] = R.mul(a112, co["a0_1_1"]);                     // z = a1_1_2 * x
    co["a1_2_1"] = R.neg(R.mul(co["a1_2_2"], y));                 // -alpha_0 * y
    co["a2_1_2"] = R.mul(co["a1_2_1"], R.inv(co["a1_1_1"]));      // r
    co["a2_2_1"] = R.neg(R.mul(co["a2_1_1"], co["a1_1_2"]));      // s = -q * a1_1_2
    out.ramification = R.ramification();
    out.unit_c = R.unit_c();
    out.lifted = true;
    out.verified = chart_vanishes_ram(hs, R, co, K);
    for (const auto& [k, v] : co) out.coordinates[k] = v.a;
    return out;
}

/// Brute-force enumeration of the F_p points of a small chart (t = 0).
inline std::vector<std::map<std::string, Fp>> enumerate_fp_points(const ChartPresentation& ch,
                                                                  long long p,
                                                                  std::size_t max_vars = 12) {
    std::vector<std::string> vars;
    for (const auto& v : ch.ring->vars())
        if (v != "t") vars.push_back(v);
    if (vars.size() > max_vars)
        throw std::invalid_argument("enumerate_fp_points: too many variables");
    std::vector<std::map<std::string, Fp>> out;
    std::vector<Fp> assign(vars.size(), Fp(0, p));
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == vars.size()) {
            std::map<std::string, Fp> pt;
            for (std::size_t k = 0; k < vars.size(); ++k) pt[vars[k]] = assign[k];
            if (satisfies_chart(ch, pt, p)) out.push_back(pt);
            return;
        }
        for (long long v = 0; v < p; ++v) {
            assign[i] = Fp(v, p);
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

}  // namespace lml
