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

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace lml {

/// Exponent vector. Length always equals the variable count of the ring the
/// monomial lives in.
class Monomial {
   public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
    explicit Monomial(std::vector<int32_t> e) : e_(std::move(e)) {
        for (int32_t x : e_)
            if (x < 0) throw std::invalid_argument("monomial: negative exponent");
    }

    std::size_t nvars() const { return e_.size(); }
    int32_t operator[](std::size_t i) const { return e_[i]; }
    int32_t& operator[](std::size_t i) { return e_[i]; }
    const std::vector<int32_t>& exps() const { return e_; }

    int64_t degree() const { return std::accumulate(e_.begin(), e_.end(), int64_t{0}); }

    bool is_constant() const {
        for (int32_t x : e_)
            if (x) return false;
        return true;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e_ != b.e_; }

    Monomial operator*(const Monomial& o) const {
        Monomial r = *this;
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
        return r;
    }

    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }

    /// this / o; requires o.divides(*this).
    Monomial quotient(const Monomial& o) const {
        Monomial r = *this;
        for (std::size_t i = 0; i < e_.size(); ++i) {
            r.e_[i] -= o.e_[i];
            if (r.e_[i] < 0) throw std::domain_error("monomial: inexact division");
        }
        return r;
    }

    Monomial lcm(const Monomial& o) const {
        Monomial r = *this;
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (o.e_[i] > r.e_[i]) r.e_[i] = o.e_[i];
        return r;
    }

    bool coprime_with(const Monomial& o) const {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > 0 && o.e_[i] > 0) return false;
        return true;
    }

    /// True if the monomial only involves variables flagged in `allowed`.
    bool supported_on(const std::vector<bool>& allowed) const {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > 0 && !allowed[i]) return false;
        return true;
    }

   private:
    std::vector<int32_t> e_;
};

}  // namespace lml
