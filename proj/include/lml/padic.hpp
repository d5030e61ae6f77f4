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
#include <string>
#include <vector>

#include "fp.hpp"

namespace lml {

/// Integer mod p^K.
struct PadicApprox {
    long long p = 0;
    int K = 0;
    long long modulus = 0;  // p^K
    long long value = 0;
};

inline long long pow_ll(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

/// The Teichmuller representative: the unique (p-1)-th root of unity mod p^K
/// congruent to a mod p. Computed as the limit of a^(p^k).
inline PadicApprox teichmuller(long long a, long long p, int K) {
    long long pK = pow_ll(p, K);
    long long x = ((a % pK) + pK) % pK;
    if (x % p == 0) throw std::invalid_argument("teichmuller: unit required");
    for (;;) {
        long long next = mod_pow_ll(x, p, pK);
        if (next == x) break;
        x = next;
    }
    return PadicApprox{p, K, pK, x};
}

/// The ramified coefficient ring (Z/p^K)[theta]/(theta^e - c p): elements are
/// theta-polynomials of degree < e. theta acts as an e-th root of the unit
/// multiple c*p, which is what the lifting recipes need for coordinates of
/// fractional valuation. e = 1 recovers plain Z/p^K arithmetic.
class RamifiedRing {
   public:
    RamifiedRing(long long p, int K, int e, long long unit_c = 1)
        : p_(p), K_(K), e_(e), pK_(pow_ll(p, K)), c_(((unit_c % pK_) + pK_) % pK_) {
        if (e < 1) throw std::invalid_argument("ramified ring: e >= 1");
        if (c_ % p == 0) throw std::invalid_argument("ramified ring: c must be a unit");
    }

    long long p() const { return p_; }
    int precision() const { return K_; }
    int ramification() const { return e_; }
    long long unit_c() const { return c_; }

    struct Elt {
        std::vector<long long> a;  // a[i] = coefficient of theta^i
    };

    Elt zero() const { return Elt{std::vector<long long>((std::size_t)e_, 0)}; }

    Elt from_integer(long long v) const {
        Elt x = zero();
        x.a[0] = norm(v);
        return x;
    }

    Elt theta_power(int k) const {
        Elt t = from_integer(1);
        for (int i = 0; i < k; ++i) t = mul_theta(t);
        return t;
    }

    Elt add(const Elt& x, const Elt& y) const {
        Elt z = zero();
        for (int i = 0; i < e_; ++i) z.a[i] = norm(x.a[i] + y.a[i]);
        return z;
    }

    Elt sub(const Elt& x, const Elt& y) const {
        Elt z = zero();
        for (int i = 0; i < e_; ++i) z.a[i] = norm(x.a[i] - y.a[i]);
        return z;
    }

    Elt neg(const Elt& x) const { return sub(zero(), x); }

    Elt mul(const Elt& x, const Elt& y) const {
        std::vector<long long> conv((std::size_t)(2 * e_), 0);
        for (int i = 0; i < e_; ++i) {
            if (x.a[i] == 0) continue;
            for (int j = 0; j < e_; ++j)
                conv[i + j] = norm(conv[i + j] + mulmod(x.a[i], y.a[j]));
        }
        Elt z = zero();
        for (int i = 2 * e_ - 1; i >= e_; --i) {
            // theta^e = c p
            conv[i - e_] = norm(conv[i - e_] + mulmod(conv[i], mulmod(c_, p_ % pK_)));
            conv[i] = 0;
        }
        for (int i = 0; i < e_; ++i) z.a[i] = conv[i];
        return z;
    }

    Elt mul_theta(const Elt& x) const {
        Elt z = zero();
        for (int i = 0; i + 1 < e_; ++i) z.a[i + 1] = x.a[i];
        z.a[0] = mulmod(x.a[e_ - 1], mulmod(c_, p_ % pK_));
        return z;
    }

    Elt pow(const Elt& x, long long n) const {
        Elt r = from_integer(1);
        Elt b = x;
        while (n > 0) {
            if (n & 1) r = mul(r, b);
            b = mul(b, b);
            n >>= 1;
        }
        return r;
    }

    bool is_zero(const Elt& x) const {
        for (long long v : x.a)
            if (v != 0) return false;
        return true;
    }

    /// Lies in p^K' * R (all coefficients divisible by p^K')?
    bool vanishes_mod(const Elt& x, int Kp) const {
        long long m = pow_ll(p_, Kp);
        for (long long v : x.a)
            if (v % m != 0) return false;
        return true;
    }

    bool is_unit(const Elt& x) const { return x.a[0] % p_ != 0; }

    Elt inv(const Elt& x) const {
        if (!is_unit(x)) throw std::domain_error("ramified ring: inverse of non-unit");
        // Newton: y <- y (2 - x y), starting from the residue inverse
        long long y0 = mod_pow_ll(x.a[0] % p_, p_ - 2, p_);
        Elt y = from_integer(y0);
        for (int it = 0; it < 2 * (K_ + e_) + 4; ++it) {
            Elt t = sub(from_integer(2), mul(x, y));
            y = mul(y, t);
            if (is_zero(sub(mul(x, y), from_integer(1)))) break;
        }
        return y;
    }

    /// Residue in F_p (image under theta -> 0).
    long long residue(const Elt& x) const { return ((x.a[0] % p_) + p_) % p_; }

    /// Hensel-solve y^(p-1) = a for a unit a whose residue is a (p-1)-th
    /// power; y0 is the residue of the desired root.
    bool root_p_minus_1(const Elt& a, long long y0, Elt& out) const {
        if (!is_unit(a)) return false;
        if (mod_pow_ll(y0, p_ - 1, p_) != residue(a)) return false;
        Elt y = from_integer(y0);
        for (int it = 0; it < 2 * (K_ + e_) + 8; ++it) {
            Elt f = sub(pow(y, p_ - 1), a);
            if (is_zero(f)) break;
            // y -= f / ((p-1) y^(p-2))
            Elt d = mul(from_integer(p_ - 1), pow(y, p_ - 2));
            y = sub(y, mul(f, inv(d)));
        }
        out = y;
        return is_zero(sub(pow(y, p_ - 1), a));
    }

   private:
    long long norm(long long v) const {
        v %= pK_;
        if (v < 0) v += pK_;
        return v;
    }
    long long mulmod(long long x, long long y) const {
        // p^K <= 5^8 < 2^19, so no overflow concerns at these sizes
        return norm((x % pK_) * (y % pK_));
    }

    long long p_;
    int K_;
    int e_;
    long long pK_;
    long long c_;
};

/// Result of a lifting attempt: which branch of the recipe fired, the
/// ramification used, and whether all generators vanished.
struct LiftOutcome {
    bool lifted = false;
    bool verified = false;  // all generators zero in the ramified ring
    std::string branch;
    std::string failure;
    int ramification = 1;
    long long unit_c = 1;
    std::map<std::string, std::vector<long long>> coordinates;  // theta-coeffs
};

}  // namespace lml
