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
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "fp.hpp"
#include "rational.hpp"
#include "ring.hpp"

namespace lml {

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

/// Field glue: building scalars of either coefficient field from literals.
template <class F>
struct FieldOps;

template <>
struct FieldOps<Rational> {
    static Rational one(const CoeffDomain&) { return Rational(1); }
    static Rational from_integer(const std::string& digits, const CoeffDomain&) {
        return Rational(mpz_class(digits, 10));
    }
    static Rational fraction(const Rational& num, const Rational& den, const CoeffDomain&,
                             std::size_t) {
        return num / den;
    }
};

template <>
struct FieldOps<Fp> {
    static Fp one(const CoeffDomain& d) { return Fp(1, d.characteristic); }
    static Fp from_integer(const std::string& digits, const CoeffDomain& d) {
        mpz_class z(digits, 10);
        mpz_class r = z % static_cast<long>(d.characteristic);
        return Fp(r.get_si(), d.characteristic);
    }
    static Fp fraction(const Fp& num, const Fp& den, const CoeffDomain&, std::size_t pos) {
        if (den.is_zero())
            throw ParseError("denominator not invertible in prime field", pos);
        return num / den;
    }
};

template <class F>
struct Term {
    Monomial mono;
    F coeff;
};

/// Multivariate polynomial in canonical form: terms strictly descending in
/// the ring's monomial order, no zero coefficients. Two polynomials over the
/// same ring are equal iff their term sequences are identical.
template <class F>
class Polynomial {
   public:
    Polynomial() = default;
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

    static Polynomial zero(RingPtr ring) { return Polynomial(std::move(ring)); }

    static Polynomial constant(RingPtr ring, const F& c) {
        Polynomial p(std::move(ring));
        if (!c.is_zero()) p.terms_.push_back({Monomial(p.ring_->nvars()), c});
        return p;
    }

    static Polynomial variable(RingPtr ring, std::size_t i) {
        Polynomial p(ring);
        Monomial m(ring->nvars());
        m[i] = 1;
        p.terms_.push_back({m, FieldOps<F>::one(ring->coeff())});
        return p;
    }

    static Polynomial variable(RingPtr ring, const std::string& name) {
        return variable(ring, ring->var_index(name));
    }

    static Polynomial term(RingPtr ring, Monomial m, const F& c) {
        Polynomial p(std::move(ring));
        if (!c.is_zero()) p.terms_.push_back({std::move(m), c});
        return p;
    }

    static Polynomial from_terms(RingPtr ring, std::vector<Term<F>> terms) {
        Polynomial p(std::move(ring));
        p.terms_ = std::move(terms);
        p.normalize();
        return p;
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term<F>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t nterms() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_constant());
    }

    int64_t total_degree() const {
        int64_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.degree());
        return d;
    }

    /// Leading term with respect to the ring's own order.
    const Term<F>& leading_term() const {
        if (terms_.empty()) throw std::domain_error("poly: leading term of zero");
        return terms_.front();
    }

    bool supported_on(const std::vector<bool>& allowed) const {
        for (const auto& t : terms_)
            if (!t.mono.supported_on(allowed)) return false;
        return true;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (!a.ring_->same_as(*b.ring_)) return false;
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff)
                return false;
        return true;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        a.check_ring(b);
        Polynomial r(a.ring_);
        r.terms_ = merge_terms(a.terms_, b.terms_, a.ring_->order(), false);
        return r;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        a.check_ring(b);
        Polynomial r(a.ring_);
        r.terms_ = merge_terms(a.terms_, b.terms_, a.ring_->order(), true);
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_ring(b);
        Polynomial r(a.ring_);
        std::vector<Term<F>> acc;
        acc.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_) acc.push_back({ta.mono * tb.mono, ta.coeff * tb.coeff});
        r.terms_ = std::move(acc);
        r.normalize();
        return r;
    }

    Polynomial scaled(const F& c) const {
        if (c.is_zero()) return zero(ring_);
        Polynomial r = *this;
        for (auto& t : r.terms_) t.coeff = t.coeff * c;
        return r;
    }

    Polynomial pow(long long e) const {
        if (e < 0) throw std::domain_error("poly: pow with negative exponent");
        Polynomial r = constant(ring_, FieldOps<F>::one(ring_->coeff()));
        Polynomial base = *this;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = (e >>= 1) ? base * base : base;
        }
        return r;
    }

    /// Ring homomorphism application: variable i goes to images[i].
    Polynomial substitute(const RingPtr& target, const std::vector<Polynomial>& images) const {
        if (images.size() != ring_->nvars())
            throw std::invalid_argument("substitute: one image per source variable required");
        if (!(ring_->coeff() == target->coeff()))
            throw std::invalid_argument("substitute: coefficient domains differ");
        Polynomial acc = zero(target);
        for (const auto& t : terms_) {
            Polynomial prod = constant(target, t.coeff);
            for (std::size_t i = 0; i < ring_->nvars(); ++i) {
                if (t.mono[i] > 0) prod = prod * images[i].pow(t.mono[i]);
            }
            acc = acc + prod;
        }
        return acc;
    }

    /// Full evaluation at field scalars, one per variable.
    F evaluate(const std::vector<F>& values) const {
        if (values.size() != ring_->nvars())
            throw std::invalid_argument("evaluate: one value per variable required");
        F one = FieldOps<F>::one(ring_->coeff());
        F sum = one - one;
        for (const auto& t : terms_) {
            F v = t.coeff;
            for (std::size_t i = 0; i < values.size(); ++i)
                for (int32_t k = 0; k < t.mono[i]; ++k) v = v * values[i];
            sum = sum + v;
        }
        return sum;
    }

    /// Canonical text form; parse(format(f)) == f.
    std::string format() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            std::string c = terms_[i].coeff.str();
            bool neg = !c.empty() && c[0] == '-';
            std::string mag = neg ? c.substr(1) : c;
            if (i == 0) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            const Monomial& m = terms_[i].mono;
            if (m.is_constant()) {
                out += mag;
                continue;
            }
            bool printed = false;
            if (mag != "1") {
                out += mag;
                printed = true;
            }
            for (std::size_t v = 0; v < m.nvars(); ++v) {
                if (m[v] == 0) continue;
                if (printed) out += "*";
                out += ring_->var_name(v);
                if (m[v] > 1) out += "^" + std::to_string(m[v]);
                printed = true;
            }
        }
        return out;
    }

   private:
    void check_ring(const Polynomial& o) const {
        if (ring_ != o.ring_ && !ring_->same_as(*o.ring_))
            throw std::invalid_argument("poly: ring mismatch");
    }

    static std::vector<Term<F>> merge_terms(const std::vector<Term<F>>& a,
                                            const std::vector<Term<F>>& b,
                                            const MonomialOrder& ord, bool subtract) {
        std::vector<Term<F>> out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && ord.greater(a[i].mono, b[j].mono))) {
                out.push_back(a[i++]);
            } else if (i == a.size() || ord.greater(b[j].mono, a[i].mono)) {
                Term<F> t = b[j++];
                if (subtract) t.coeff = -t.coeff;
                out.push_back(t);
            } else {
                F c = subtract ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
                if (!c.is_zero()) out.push_back({a[i].mono, c});
                ++i;
                ++j;
            }
        }
        return out;
    }

    void normalize() {
        const MonomialOrder& ord = ring_->order();
        std::sort(terms_.begin(), terms_.end(),
                  [&](const Term<F>& x, const Term<F>& y) { return ord.greater(x.mono, y.mono); });
        std::vector<Term<F>> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().mono == t.mono) {
                out.back().coeff += t.coeff;
                if (out.back().coeff.is_zero()) out.pop_back();
            } else if (!t.coeff.is_zero()) {
                out.push_back(std::move(t));
            }
        }
        terms_ = std::move(out);
    }

    RingPtr ring_;
    std::vector<Term<F>> terms_;
};

namespace detail {

template <class F>
class PolyParser {
   public:
    PolyParser(RingPtr ring, const std::string& text) : ring_(std::move(ring)), s_(text) {}

    Polynomial<F> run() {
        skip_ws();
        Polynomial<F> acc = parse_term();
        skip_ws();
        while (pos_ < s_.size()) {
            char op = s_[pos_];
            if (op != '+' && op != '-') throw ParseError("expected '+' or '-'", pos_);
            ++pos_;
            skip_ws();
            Polynomial<F> t = parse_term();
            acc = (op == '+') ? acc + t : acc - t;
            skip_ws();
        }
        return acc;
    }

   private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool at_integer() {
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }

    bool at_variable() {
        return pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]));
    }

    std::string read_digits() {
        std::size_t start = pos_;
        while (at_integer()) ++pos_;
        if (start == pos_) throw ParseError("expected integer", pos_);
        return s_.substr(start, pos_ - start);
    }

    Polynomial<F> parse_term() {
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
            neg = s_[pos_] == '-';
            ++pos_;
            skip_ws();
        }
        const CoeffDomain& dom = ring_->coeff();
        F coeff = FieldOps<F>::one(dom);
        bool saw_anything = false;
        if (at_integer()) {
            saw_anything = true;
            coeff = FieldOps<F>::from_integer(read_digits(), dom);
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '/') {
                std::size_t slash = pos_;
                ++pos_;
                skip_ws();
                F den = FieldOps<F>::from_integer(read_digits(), dom);
                coeff = FieldOps<F>::fraction(coeff, den, dom, slash);
                skip_ws();
            }
        }
        Monomial mono(ring_->nvars());
        bool expect_factor = false;
        while (true) {
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                skip_ws();
                expect_factor = true;
            }
            if (!at_variable()) {
                if (expect_factor) throw ParseError("expected variable after '*'", pos_);
                break;
            }
            saw_anything = true;
            expect_factor = false;
            parse_factor(mono);
        }
        if (!saw_anything) throw ParseError("expected term", pos_);
        Polynomial<F> t = Polynomial<F>::term(ring_, mono, coeff);
        return neg ? -t : t;
    }

    void parse_factor(Monomial& mono) {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        if (!ring_->has_var(name)) throw ParseError("unknown variable '" + name + "'", start);
        std::size_t idx = ring_->var_index(name);
        long long exp = 1;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            skip_ws();
            exp = std::stoll(read_digits());
        }
        mono[idx] += static_cast<int32_t>(exp);
    }

    RingPtr ring_;
    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse the documented polynomial grammar:
///   expression = term (("+"|"-") term)*
///   term       = [sign] [integer | integer "/" integer] ("*"? factor)*
///   factor     = variable ("^" natural)?
template <class F>
Polynomial<F> parse_poly(const RingPtr& ring, const std::string& text) {
    return detail::PolyParser<F>(ring, text).run();
}

inline Polynomial<Rational> parse_q(const RingPtr& ring, const std::string& text) {
    return parse_poly<Rational>(ring, text);
}

/// Push a rational-coefficient polynomial into F_p (used when testing chart
/// relations at F_p points; t is a variable like any other and the caller
/// decides its value). Fails if a denominator is divisible by p.
inline Polynomial<Fp> to_prime_field(const Polynomial<Rational>& f, const RingPtr& fp_ring) {
    long long p = fp_ring->coeff().characteristic;
    std::vector<Term<Fp>> terms;
    terms.reserve(f.nterms());
    for (const auto& t : f.terms()) {
        mpz_class num = t.coeff.num() % static_cast<long>(p);
        mpz_class den = t.coeff.den() % static_cast<long>(p);
        if (den == 0) throw std::domain_error("to_prime_field: denominator divisible by p");
        Fp c = Fp(num.get_si(), p) / Fp(den.get_si(), p);
        if (!c.is_zero()) terms.push_back({t.mono, c});
    }
    return Polynomial<Fp>::from_terms(fp_ring, std::move(terms));
}

/// Evaluate a rational polynomial at an F_p point.
inline Fp evaluate_fp(const Polynomial<Rational>& f, const std::vector<Fp>& values, long long p) {
    Fp acc(0, p);
    for (const auto& t : f.terms()) {
        mpz_class num = t.coeff.num() % static_cast<long>(p);
        mpz_class den = t.coeff.den() % static_cast<long>(p);
        if (den == 0) throw std::domain_error("evaluate_fp: denominator divisible by p");
        Fp v = Fp(num.get_si(), p) / Fp(den.get_si(), p);
        for (std::size_t i = 0; i < values.size(); ++i)
            for (int32_t k = 0; k < t.mono[i]; ++k) v *= values[i];
        acc += v;
    }
    return acc;
}

using QPoly = Polynomial<Rational>;
using FpPoly = Polynomial<Fp>;

}  // namespace lml
