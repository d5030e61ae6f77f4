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
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lml {

using IntVec = std::vector<long long>;

struct AlcoveError : std::invalid_argument {
    int failing_index;
    AlcoveError(const std::string& what, int idx)
        : std::invalid_argument(what + " (row " + std::to_string(idx) + ")"), failing_index(idx) {}
};

/// omega_i = (1^(i), 0^(n-i)).
inline IntVec omega_row(std::size_t n, std::size_t i) {
    IntVec v(n, 0);
    for (std::size_t c = 0; c < i; ++c) v[c] = 1;
    return v;
}

/// Alcove for GL_n: n integer vectors x_0..x_{n-1} with
///   x_0 <= x_1 <= ... <= x_{n-1} <= x_0 + 1 componentwise, and
///   sum(x_{i+1}) = sum(x_i) + 1 (x_n = x_0 + 1).
class Alcove {
   public:
    Alcove() = default;

    /// Validates both axioms; throws AlcoveError with the failing row.
    explicit Alcove(std::vector<IntVec> rows) : rows_(std::move(rows)) {
        std::size_t n = rows_.size();
        if (n == 0) throw AlcoveError("alcove: empty", 0);
        for (std::size_t i = 0; i < n; ++i)
            if (rows_[i].size() != n) throw AlcoveError("alcove: row length != n", (int)i);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t c = 0; c < n; ++c)
                if (rows_[i][c] > rows_[i + 1][c])
                    throw AlcoveError("alcove: chain condition x_i <= x_{i+1} fails", (int)(i + 1));
        }
        for (std::size_t c = 0; c < n; ++c)
            if (rows_[n - 1][c] > rows_[0][c] + 1)
                throw AlcoveError("alcove: wrap condition x_{n-1} <= x_0 + 1 fails", (int)(n - 1));
        for (std::size_t i = 0; i < n; ++i) {
            long long s = row_sum(i);
            long long s_next = (i + 1 < n) ? row_sum(i + 1) : row_sum(0) + (long long)n;
            if (s_next != s + 1)
                throw AlcoveError("alcove: size increment fails", (int)((i + 1) % n));
        }
    }

    std::size_t n() const { return rows_.size(); }
    const std::vector<IntVec>& rows() const { return rows_; }
    const IntVec& row(std::size_t i) const { return rows_[i]; }

    long long row_sum(std::size_t i) const {
        return std::accumulate(rows_[i].begin(), rows_[i].end(), 0LL);
    }

    /// sum(x_0).
    long long size() const { return row_sum(0); }

    /// t_i = x_i - omega_i.
    IntVec diff(std::size_t i) const {
        IntVec t = rows_[i];
        for (std::size_t c = 0; c < i; ++c) t[c] -= 1;
        return t;
    }

    std::vector<IntVec> diffs() const {
        std::vector<IntVec> d(n());
        for (std::size_t i = 0; i < n(); ++i) d[i] = diff(i);
        return d;
    }

    bool is_minuscule() const {
        for (std::size_t i = 0; i < n(); ++i)
            for (long long v : diff(i))
                if (v < 0 || v > 1) return false;
        return true;
    }

    bool is_extreme() const {
        if (!is_minuscule()) return false;
        IntVec t0 = diff(0);
        for (std::size_t i = 1; i < n(); ++i)
            if (diff(i) != t0) return false;
        return true;
    }

    friend bool operator==(const Alcove& a, const Alcove& b) { return a.rows_ == b.rows_; }
    friend bool operator<(const Alcove& a, const Alcove& b) { return a.rows_ < b.rows_; }

   private:
    std::vector<IntVec> rows_;
};

/// Minuscule alcove from its difference vectors.
inline Alcove alcove_from_diffs(const std::vector<IntVec>& t) {
    std::size_t n = t.size();
    std::vector<IntVec> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        rows[i] = omega_row(n, i);
        for (std::size_t c = 0; c < n; ++c) rows[i][c] += t[i][c];
    }
    return Alcove(rows);
}

inline Alcove base_alcove(std::size_t n) {
    std::vector<IntVec> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = omega_row(n, i);
    return Alcove(rows);
}

/// The worst alcove tau: t_i^tau has ones at positions i, ..., i+r-1 mod n.
inline Alcove worst_alcove(std::size_t n, std::size_t r) {
    std::vector<IntVec> t(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < r; ++k) t[i][(i + k) % n] = 1;
    return alcove_from_diffs(t);
}

/// Element t_nu * w of the extended affine Weyl group Z^n x S_n, acting on
/// alcoves by (nu, sigma) . (x_i)_i = (nu + sigma.x_i)_i where
/// (sigma.v)(sigma(c)) = v(c).
struct WeylElement {
    IntVec nu;               // translation part
    std::vector<int> sigma;  // permutation, sigma[i] = image of i (0-based)

    std::size_t n() const { return nu.size(); }

    static WeylElement identity(std::size_t n) {
        WeylElement w;
        w.nu.assign(n, 0);
        w.sigma.resize(n);
        std::iota(w.sigma.begin(), w.sigma.end(), 0);
        return w;
    }

    static WeylElement translation(IntVec v) {
        WeylElement w = identity(v.size());
        w.nu = std::move(v);
        return w;
    }

    IntVec permute(const IntVec& v) const {
        IntVec out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[sigma[i]] = v[i];
        return out;
    }

    IntVec apply(const IntVec& v) const {
        IntVec out = permute(v);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += nu[i];
        return out;
    }

    /// (this * o) acts as: first o, then this.
    WeylElement operator*(const WeylElement& o) const {
        WeylElement r;
        r.nu = apply(o.nu);
        r.sigma.resize(sigma.size());
        for (std::size_t i = 0; i < sigma.size(); ++i) r.sigma[i] = sigma[o.sigma[i]];
        return r;
    }

    WeylElement inverse() const {
        WeylElement r;
        r.sigma.resize(sigma.size());
        for (std::size_t i = 0; i < sigma.size(); ++i) r.sigma[sigma[i]] = (int)i;
        r.nu.resize(nu.size());
        IntVec m(nu.size());
        for (std::size_t i = 0; i < nu.size(); ++i) m[r.sigma[i]] = -nu[i];
        r.nu = m;
        return r;
    }

    /// Image in the component group Omega (identified with Z for GL_n).
    long long omega_component() const {
        return std::accumulate(nu.begin(), nu.end(), 0LL);
    }

    friend bool operator==(const WeylElement& a, const WeylElement& b) {
        return a.nu == b.nu && a.sigma == b.sigma;
    }
    friend bool operator<(const WeylElement& a, const WeylElement& b) {
        if (a.nu != b.nu) return a.nu < b.nu;
        return a.sigma < b.sigma;
    }
};

inline Alcove act_on_alcove(const WeylElement& w, const Alcove& x) {
    std::vector<IntVec> rows(x.n());
    for (std::size_t i = 0; i < x.n(); ++i) rows[i] = w.apply(x.row(i));
    return Alcove(rows);
}

/// The unique w with w . omega = x (simple transitivity).
inline WeylElement alcove_to_weyl(const Alcove& x) {
    std::size_t n = x.n();
    WeylElement w;
    w.nu = x.row(0);
    w.sigma.assign(n, -1);
    std::vector<bool> taken(n, false);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        // x_{i+1} - x_i = e_{sigma(i)}
        int pos = -1;
        for (std::size_t c = 0; c < n; ++c) {
            long long d = x.row(i + 1)[c] - x.row(i)[c];
            if (d == 1 && pos < 0)
                pos = (int)c;
            else if (d != 0)
                throw std::invalid_argument("alcove_to_weyl: malformed alcove");
        }
        w.sigma[i] = pos;
        taken[pos] = true;
    }
    for (std::size_t c = 0; c < n; ++c)
        if (!taken[c]) w.sigma[n - 1] = (int)c;
    return w;
}

namespace weyl {

/// n times the barycenter of the base alcove: (n-1, n-2, ..., 0).
inline IntVec scaled_base_barycenter(std::size_t n) {
    IntVec b(n);
    for (std::size_t c = 0; c < n; ++c) b[c] = (long long)(n - 1 - c);
    return b;
}

inline long long multiples_strictly_between(long long a, long long b, long long n) {
    if (a > b) std::swap(a, b);
    if (a == b) return 0;
    // count k with a < n*k < b
    auto fdiv = [](long long x, long long m) {
        long long q = x / m;
        if ((x % m) && ((x < 0) != (m < 0))) --q;
        return q;
    };
    return fdiv(b - 1, n) - fdiv(a, n);
}

/// Length = number of affine root hyperplanes H_{e_c - e_d, k} separating
/// the open base alcove from its image, counted at the barycenter.
inline long long length(const WeylElement& w) {
    std::size_t n = w.n();
    IntVec b0 = scaled_base_barycenter(n);
    IntVec b = w.permute(b0);
    for (std::size_t i = 0; i < n; ++i) b[i] += (long long)n * w.nu[i];
    long long len = 0;
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d)
            len += multiples_strictly_between(b0[c] - b0[d], b[c] - b[d], (long long)n);
    return len;
}

/// Simple reflections s_1..s_{n-1} (adjacent transpositions) and the affine
/// reflection s_0 through { v(1) - v(n) = 1 }.
inline WeylElement simple_reflection(std::size_t n, std::size_t i) {
    WeylElement s = WeylElement::identity(n);
    if (i == 0) {
        s.nu[0] = 1;
        s.nu[n - 1] = -1;
        std::swap(s.sigma[0], s.sigma[n - 1]);
    } else {
        std::swap(s.sigma[i - 1], s.sigma[i]);
    }
    return s;
}

/// Generator of Omega: rho . omega is the rotated base alcove; rho^n = t_1.
inline WeylElement omega_rotation(std::size_t n) {
    WeylElement r = WeylElement::identity(n);
    r.nu[0] = 1;
    for (std::size_t i = 0; i < n; ++i) r.sigma[i] = (int)((i + 1) % n);
    return r;
}

inline WeylElement omega_rotation_power(std::size_t n, long long k) {
    WeylElement rho = omega_rotation(n);
    WeylElement acc = WeylElement::identity(n);
    WeylElement base = k >= 0 ? rho : rho.inverse();
    long long e = k >= 0 ? k : -k;
    for (long long i = 0; i < e; ++i) acc = acc * base;
    return acc;
}

struct ReducedWord {
    long long omega_power = 0;      // rho^k prefix
    std::vector<int> letters;       // simple reflection indices, left to right
};

/// Greedy descent: repeatedly strip a right descent (smallest index). Each
/// step drops the length by exactly one.
inline ReducedWord reduced_word(const WeylElement& w) {
    std::size_t n = w.n();
    ReducedWord rw;
    rw.omega_power = w.omega_component();
    WeylElement u = omega_rotation_power(n, -rw.omega_power) * w;
    if (u.omega_component() != 0)
        throw std::logic_error("reduced_word: affine part has nonzero component");
    std::vector<int> reversed;
    long long lu = length(u);
    while (lu > 0) {
        bool found = false;
        for (std::size_t i = 0; i < n && !found; ++i) {
            WeylElement us = u * simple_reflection(n, i);
            long long l = length(us);
            if (l < lu) {
                reversed.push_back((int)i);
                u = us;
                lu = l;
                found = true;
            }
        }
        if (!found) throw std::logic_error("reduced_word: no descent found");
    }
    rw.letters.assign(reversed.rbegin(), reversed.rend());
    return rw;
}

inline WeylElement from_word(std::size_t n, const ReducedWord& rw) {
    WeylElement w = omega_rotation_power(n, rw.omega_power);
    for (int i : rw.letters) w = w * simple_reflection(n, (std::size_t)i);
    return w;
}

/// Bruhat order on the extended group: elements of different Omega
/// components are incomparable; on the affine part, the recursive descent
/// criterion with memoization.
class BruhatOrder {
   public:
    bool leq(const WeylElement& u, const WeylElement& v) {
        if (u.n() != v.n()) throw std::invalid_argument("bruhat: rank mismatch");
        long long ku = u.omega_component(), kv = v.omega_component();
        if (ku != kv) return false;
        std::size_t n = u.n();
        WeylElement ru = omega_rotation_power(n, -ku) * u;
        WeylElement rv = omega_rotation_power(n, -kv) * v;
        return leq_affine(ru, rv);
    }

   private:
    bool leq_affine(const WeylElement& u, const WeylElement& v) {
        if (u == v) return true;
        long long lu = length(u), lv = length(v);
        if (lu >= lv) return false;
        auto key = std::make_pair(serialize(u), serialize(v));
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        std::size_t n = u.n();
        int desc = -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (length(v * simple_reflection(n, i)) < lv) {
                desc = (int)i;
                break;
            }
        }
        if (desc < 0) return false;  // v = id handled by lu >= lv
        WeylElement s = simple_reflection(n, (std::size_t)desc);
        WeylElement vs = v * s;
        WeylElement us = u * s;
        WeylElement u2 = (length(us) < lu) ? us : u;
        bool r = leq_affine(u2, vs);
        memo_.emplace(key, r);
        return r;
    }

    static std::string serialize(const WeylElement& w) {
        std::string s;
        for (long long x : w.nu) s += std::to_string(x) + ",";
        s += "|";
        for (int x : w.sigma) s += std::to_string(x) + ",";
        return s;
    }

    std::map<std::pair<std::string, std::string>, bool> memo_;
};

}  // namespace weyl

/// All minuscule alcoves of size r: 0/1 difference rows with constant sum r,
/// where from row i to row i+1 (cyclically) a one may leave only position
/// i+1 ... in 1-based terms; position i in the 0-based encoding below.
inline std::vector<Alcove> enumerate_minuscule(std::size_t n, long long r) {
    std::vector<Alcove> out;
    if (r < 0 || r > (long long)n) return out;
    std::vector<IntVec> rows;

    // Step condition between difference rows j and j+1 (cyclically): a one
    // may only leave coordinate j (0-based), anything may be raised.
    auto step_ok = [&](const IntVec& a, const IntVec& b, std::size_t drop_coord) {
        for (std::size_t c = 0; c < n; ++c) {
            if (c == drop_coord) continue;
            if (a[c] > b[c]) return false;
        }
        return true;
    };

    std::vector<IntVec> candidates;  // all 0/1 rows of weight r
    IntVec cur(n, 0);
    std::function<void(std::size_t, long long)> gen = [&](std::size_t pos, long long left) {
        if ((long long)(n - pos) < left) return;
        if (pos == n) {
            if (left == 0) candidates.push_back(cur);
            return;
        }
        cur[pos] = 0;
        gen(pos + 1, left);
        if (left > 0) {
            cur[pos] = 1;
            gen(pos + 1, left - 1);
            cur[pos] = 0;
        }
    };
    gen(0, r);

    std::vector<IntVec> chain;
    std::function<void(std::size_t)> dfs = [&](std::size_t i) {
        if (i == n) {
            if (step_ok(chain[n - 1], chain[0], n - 1)) out.push_back(alcove_from_diffs(chain));
            return;
        }
        for (const auto& c : candidates) {
            if (i > 0 && !step_ok(chain[i - 1], c, i - 1)) continue;
            chain.push_back(c);
            dfs(i + 1);
            chain.pop_back();
        }
    };
    dfs(0);
    std::sort(out.begin(), out.end());
    return out;
}

/// Minuscule alcoves with constant difference vector; there are C(n, r).
inline std::vector<Alcove> extreme_alcoves(std::size_t n, long long r) {
    std::vector<Alcove> out;
    if (r < 0 || r > (long long)n) return out;
    IntVec cur(n, 0);
    std::function<void(std::size_t, long long)> gen = [&](std::size_t pos, long long left) {
        if ((long long)(n - pos) < left) return;
        if (pos == n) {
            if (left == 0) out.push_back(alcove_from_diffs(std::vector<IntVec>(n, cur)));
            return;
        }
        cur[pos] = 0;
        gen(pos + 1, left);
        if (left > 0) {
            cur[pos] = 1;
            gen(pos + 1, left - 1);
            cur[pos] = 0;
        }
    };
    gen(0, r);
    std::sort(out.begin(), out.end());
    return out;
}

/// Adm(omega_r): downward Bruhat closure of the W-orbit translations
/// t_{tau(omega_r)}, computed through the subword property.
inline std::set<WeylElement> admissible_set(std::size_t n, long long r) {
    std::set<WeylElement> out;
    if (r < 0 || r > (long long)n) return out;
    // distinct permutations of (1^r, 0^(n-r))
    std::vector<IntVec> orbit;
    IntVec mu(n, 0);
    for (long long i = 0; i < r; ++i) mu[n - 1 - i] = 1;  // start from sorted ascending
    std::sort(mu.begin(), mu.end());
    do {
        orbit.push_back(mu);
    } while (std::next_permutation(mu.begin(), mu.end()));

    for (const auto& v : orbit) {
        WeylElement t = WeylElement::translation(v);
        weyl::ReducedWord rw = weyl::reduced_word(t);
        std::size_t len = rw.letters.size();
        for (std::uint64_t mask = 0; mask < (1ull << len); ++mask) {
            WeylElement w = weyl::omega_rotation_power(n, rw.omega_power);
            for (std::size_t i = 0; i < len; ++i)
                if (mask & (1ull << i)) w = w * weyl::simple_reflection(n, (std::size_t)rw.letters[i]);
            out.insert(w);
        }
    }
    return out;
}

/// theta(x)(c) = -x(2n-1-c), the duality used for GSp alcoves.
inline IntVec theta(const IntVec& v) {
    IntVec out(v.size());
    for (std::size_t c = 0; c < v.size(); ++c) out[c] = -v[v.size() - 1 - c];
    return out;
}

/// G-alcove condition for GSp_{2n}: x_{2n-i} = d + theta(x_i) for a single
/// integer d, reading x_{2n} as x_0 + 1. d is solved from coordinate sums,
/// never searched.
inline bool is_g_alcove(const Alcove& x) {
    std::size_t m = x.n();  // m = 2n
    if (m % 2 != 0) return false;
    // solve d from i = 0: sum(x_0 + 1) = m*d - sum(x_0)
    long long s0 = x.row_sum(0);
    long long num = (s0 + (long long)m) + s0;
    if (num % (long long)m != 0) return false;
    long long d = num / (long long)m;
    for (std::size_t i = 0; i < m; ++i) {
        IntVec lhs;
        if (i == 0) {
            lhs = x.row(0);
            for (auto& v : lhs) v += 1;
        } else {
            lhs = x.row(m - i);
        }
        IntVec rhs = theta(x.row(i));
        for (auto& v : rhs) v += d;
        if (lhs != rhs) return false;
    }
    return true;
}

/// Minuscule size-n G-alcoves for GSp_{2n} (argument is 2n).
inline std::vector<Alcove> enumerate_g_minuscule(std::size_t two_n) {
    std::vector<Alcove> out;
    if (two_n % 2 != 0) throw std::invalid_argument("enumerate_g_minuscule: even rank required");
    for (const auto& x : enumerate_minuscule(two_n, (long long)(two_n / 2)))
        if (is_g_alcove(x)) out.push_back(x);
    return out;
}

}  // namespace lml
