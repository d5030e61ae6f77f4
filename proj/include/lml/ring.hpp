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

#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "order.hpp"

namespace lml {

/// Coefficient domain: the rationals, or a prime field. Z_p itself is never a
/// coefficient domain here; integral statements are modeled over Q with the
/// distinguished indeterminate t standing for p.
struct CoeffDomain {
    enum class Kind { rationals, prime_field };

    Kind kind = Kind::rationals;
    long long characteristic = 0;  // 0 for Q, the prime for F_p

    static CoeffDomain rationals() { return CoeffDomain{Kind::rationals, 0}; }
    static CoeffDomain prime_field(long long p) {
        if (p < 2) throw std::invalid_argument("coeff: characteristic must be a prime >= 2");
        return CoeffDomain{Kind::prime_field, p};
    }

    bool operator==(const CoeffDomain& o) const {
        return kind == o.kind && characteristic == o.characteristic;
    }
};

inline bool valid_variable_name(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

/// Polynomial ring: ordered variable list, coefficient domain, active
/// monomial order. Immutable after construction; share by shared_ptr.
class PolyRing {
   public:
    PolyRing(std::vector<std::string> vars, CoeffDomain coeff,
             MonomialOrder order = MonomialOrder::degrevlex())
        : vars_(std::move(vars)), coeff_(coeff), order_(std::move(order)) {
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (!valid_variable_name(vars_[i]))
                throw std::invalid_argument("ring: bad variable name '" + vars_[i] + "'");
            if (!index_.emplace(vars_[i], i).second)
                throw std::invalid_argument("ring: duplicate variable '" + vars_[i] + "'");
        }
        order_.validate(vars_.size());
    }

    std::size_t nvars() const { return vars_.size(); }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::string& var_name(std::size_t i) const { return vars_.at(i); }
    const CoeffDomain& coeff() const { return coeff_; }
    const MonomialOrder& order() const { return order_; }

    bool has_var(const std::string& name) const { return index_.count(name) != 0; }

    std::size_t var_index(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end())
            throw std::invalid_argument("ring: unknown variable '" + name + "'");
        return it->second;
    }

    /// Structural equality; rings constructed independently compare equal.
    bool same_as(const PolyRing& o) const {
        return vars_ == o.vars_ && coeff_ == o.coeff_ && order_.key() == o.order_.key();
    }

   private:
    std::vector<std::string> vars_;
    CoeffDomain coeff_;
    MonomialOrder order_;
    std::unordered_map<std::string, std::size_t> index_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

inline RingPtr make_ring(std::vector<std::string> vars, CoeffDomain coeff,
                         MonomialOrder order = MonomialOrder::degrevlex()) {
    return std::make_shared<const PolyRing>(std::move(vars), coeff, std::move(order));
}

/// Same variables and coefficients, different active order.
inline RingPtr with_order(const RingPtr& ring, MonomialOrder order) {
    return make_ring(ring->vars(), ring->coeff(), std::move(order));
}

}  // namespace lml
