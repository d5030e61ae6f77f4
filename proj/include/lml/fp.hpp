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
#include <stdexcept>
#include <string>
#include <vector>

namespace lml {

inline long long mod_pow_ll(long long base, long long exp, long long m) {
    long long r = 1 % m;
    base %= m;
    if (base < 0) base += m;
    while (exp > 0) {
        if (exp & 1) r = (r * base) % m;
        base = (base * base) % m;
        exp >>= 1;
    }
    return r;
}

/// Prime-field scalar. The modulus travels with the value so that mixed-ring
/// bugs fail loudly instead of silently wrapping at the wrong prime.
class Fp {
   public:
    Fp() : v_(0), p_(0) {}
    Fp(long long v, long long p) : p_(p) {
        if (p < 2) throw std::invalid_argument("Fp: modulus must be >= 2");
        v_ = v % p;
        if (v_ < 0) v_ += p;
    }

    long long value() const { return v_; }
    long long modulus() const { return p_; }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Fp operator-() const { return Fp(p_ - v_, p_); }
    Fp& operator+=(const Fp& o) { check(o); v_ = (v_ + o.v_) % p_; return *this; }
    Fp& operator-=(const Fp& o) { check(o); v_ = (v_ - o.v_ + p_) % p_; return *this; }
    Fp& operator*=(const Fp& o) { check(o); v_ = (v_ * o.v_) % p_; return *this; }
    Fp& operator/=(const Fp& o) { return (*this) *= o.inv(); }

    friend Fp operator+(Fp a, const Fp& b) { return a += b; }
    friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
    friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
    friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
    friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_ && a.p_ == b.p_; }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    Fp inv() const {
        if (v_ == 0) throw std::domain_error("Fp: inverse of zero");
        return Fp(mod_pow_ll(v_, p_ - 2, p_), p_);  // p prime
    }

    std::string str() const { return std::to_string(v_); }

   private:
    void check(const Fp& o) const {
        if (p_ != o.p_) throw std::invalid_argument("Fp: modulus mismatch");
    }
    long long v_;
    long long p_;
};

/// Dense matrix over F_p with exact Gaussian elimination. Sizes here are tiny
/// (n <= 8), so no effort is spent on anything clever.
class FpMatrix {
   public:
    FpMatrix(std::size_t rows, std::size_t cols, long long p)
        : rows_(rows), cols_(cols), p_(p), a_(rows * cols, Fp(0, p)) {}

    static FpMatrix identity(std::size_t n, long long p) {
        FpMatrix m(n, n, p);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Fp(1, p);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    long long modulus() const { return p_; }

    Fp& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Fp& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    friend bool operator==(const FpMatrix& x, const FpMatrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.p_ == y.p_ && x.a_ == y.a_;
    }

    FpMatrix mul(const FpMatrix& o) const {
        if (cols_ != o.rows_ || p_ != o.p_)
            throw std::invalid_argument("FpMatrix: dimension mismatch in mul");
        FpMatrix r(rows_, o.cols_, p_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                if (at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r.at(i, j) += at(i, k) * o.at(k, j);
            }
        return r;
    }

    /// Row echelon form in place; returns rank.
    std::size_t echelonize() {
        std::size_t rank = 0;
        for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
            std::size_t piv = rank;
            while (piv < rows_ && at(piv, col).is_zero()) ++piv;
            if (piv == rows_) continue;
            swap_rows(piv, rank);
            Fp inv = at(rank, col).inv();
            for (std::size_t j = col; j < cols_; ++j) at(rank, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == rank || at(i, col).is_zero()) continue;
                Fp f = at(i, col);
                for (std::size_t j = col; j < cols_; ++j) at(i, j) -= f * at(rank, j);
            }
            ++rank;
        }
        return rank;
    }

    std::size_t rank() const {
        FpMatrix m = *this;
        return m.echelonize();
    }

    /// Kernel basis, one column per basis vector.
    FpMatrix kernel() const {
        FpMatrix m = *this;
        m.echelonize();
        std::vector<long long> pivot_of_col(cols_, -1);
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            if (!m.at(r, c).is_zero()) pivot_of_col[c] = static_cast<long long>(r++);
        }
        std::vector<std::size_t> free_cols;
        for (std::size_t c = 0; c < cols_; ++c)
            if (pivot_of_col[c] < 0) free_cols.push_back(c);
        FpMatrix ker(cols_, free_cols.size(), p_);
        for (std::size_t j = 0; j < free_cols.size(); ++j) {
            std::size_t fc = free_cols[j];
            ker.at(fc, j) = Fp(1, p_);
            for (std::size_t c = 0; c < cols_; ++c) {
                if (pivot_of_col[c] >= 0)
                    ker.at(c, j) = -m.at(static_cast<std::size_t>(pivot_of_col[c]), fc);
            }
        }
        return ker;
    }

    /// One solution of A x = b, if any.
    bool solve(const FpMatrix& b, FpMatrix& x_out) const {
        if (b.rows_ != rows_ || b.cols_ != 1 || b.p_ != p_)
            throw std::invalid_argument("FpMatrix: dimension mismatch in solve");
        FpMatrix aug(rows_, cols_ + 1, p_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = b.at(i, 0);
        }
        aug.echelonize();
        FpMatrix x(cols_, 1, p_);
        for (std::size_t i = 0; i < rows_; ++i) {
            std::size_t lead = 0;
            while (lead < cols_ + 1 && aug.at(i, lead).is_zero()) ++lead;
            if (lead == cols_) return false;  // 0 = 1 row
            if (lead == cols_ + 1) continue;
            x.at(lead, 0) = aug.at(i, cols_);
        }
        x_out = x;
        return true;
    }

    bool is_isomorphism() const { return rows_ == cols_ && rank() == rows_; }

   private:
    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    }

    std::size_t rows_, cols_;
    long long p_;
    std::vector<Fp> a_;
};

}  // namespace lml
