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

#include <stdexcept>
#include <string>
#include <vector>

#include "monomial.hpp"

namespace lml {

/// Monomial orders: lex, degrevlex and block orders (degrevlex inside each
/// block, blocks compared left to right). Elimination puts the variables to
/// be eliminated in the first block.
class MonomialOrder {
   public:
    enum class Kind { lex, degrevlex, block };

    MonomialOrder() : kind_(Kind::degrevlex) {}

    static MonomialOrder lex() { return MonomialOrder(Kind::lex); }
    static MonomialOrder degrevlex() { return MonomialOrder(Kind::degrevlex); }

    /// blocks must partition {0, ..., nvars-1}.
    static MonomialOrder block(std::vector<std::vector<std::size_t>> blocks) {
        MonomialOrder o(Kind::block);
        o.blocks_ = std::move(blocks);
        return o;
    }

    /// Elimination order for the flagged variables: [eliminated | kept].
    static MonomialOrder elimination(const std::vector<bool>& eliminate) {
        std::vector<std::size_t> first, second;
        for (std::size_t i = 0; i < eliminate.size(); ++i)
            (eliminate[i] ? first : second).push_back(i);
        return block({first, second});
    }

    Kind kind() const { return kind_; }
    const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }

    void validate(std::size_t nvars) const {
        if (kind_ != Kind::block) return;
        std::vector<int> seen(nvars, 0);
        for (const auto& b : blocks_)
            for (std::size_t i : b) {
                if (i >= nvars || seen[i]++)
                    throw std::invalid_argument("order: blocks must partition the variables");
            }
        for (int s : seen)
            if (!s) throw std::invalid_argument("order: blocks must cover all variables");
    }

    /// Strict "a comes after b", i.e. a < b in the order.
    bool less(const Monomial& a, const Monomial& b) const { return cmp(a, b) < 0; }
    bool greater(const Monomial& a, const Monomial& b) const { return cmp(a, b) > 0; }

    /// -1 / 0 / +1.
    int cmp(const Monomial& a, const Monomial& b) const {
        switch (kind_) {
            case Kind::lex:
                return cmp_lex(a, b);
            case Kind::degrevlex:
                return cmp_degrevlex_all(a, b);
            case Kind::block: {
                for (const auto& blk : blocks_) {
                    int c = cmp_degrevlex_subset(a, b, blk);
                    if (c) return c;
                }
                return 0;
            }
        }
        return 0;
    }

    /// Stable identity used as a cache key.
    std::string key() const {
        switch (kind_) {
            case Kind::lex:
                return "lex";
            case Kind::degrevlex:
                return "degrevlex";
            case Kind::block: {
                std::string s = "block";
                for (const auto& b : blocks_) {
                    s += '[';
                    for (std::size_t i : b) s += std::to_string(i) + ',';
                    s += ']';
                }
                return s;
            }
        }
        return "?";
    }

   private:
    explicit MonomialOrder(Kind k) : kind_(k) {}

    static int cmp_lex(const Monomial& a, const Monomial& b) {
        for (std::size_t i = 0; i < a.nvars(); ++i) {
            if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        }
        return 0;
    }

    static int cmp_degrevlex_all(const Monomial& a, const Monomial& b) {
        int64_t da = a.degree(), db = b.degree();
        if (da != db) return da > db ? 1 : -1;
        // revlex tie break: last variable where they differ, smaller exponent wins
        for (std::size_t i = a.nvars(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
        }
        return 0;
    }

    static int cmp_degrevlex_subset(const Monomial& a, const Monomial& b,
                                    const std::vector<std::size_t>& vars) {
        int64_t da = 0, db = 0;
        for (std::size_t i : vars) {
            da += a[i];
            db += b[i];
        }
        if (da != db) return da > db ? 1 : -1;
        for (std::size_t k = vars.size(); k-- > 0;) {
            std::size_t i = vars[k];
            if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
        }
        return 0;
    }

    Kind kind_;
    std::vector<std::vector<std::size_t>> blocks_;
};

}  // namespace lml
