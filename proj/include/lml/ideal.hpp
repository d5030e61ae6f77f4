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
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "polynomial.hpp"

namespace lml {

/// Ideal given by generators, with a per-order cache of reduced Groebner
/// bases. The cache is safe for concurrent use; values handed out are
/// immutable snapshots.
template <class F>
class Ideal {
   public:
    Ideal() = default;
    Ideal(RingPtr ring, std::vector<Polynomial<F>> gens)
        : ring_(std::move(ring)), gens_(std::move(gens)) {
        for (const auto& g : gens_)
            if (!g.ring()->same_as(*ring_))
                throw std::invalid_argument("ideal: generator from a different ring");
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Polynomial<F>>& gens() const { return gens_; }

    bool cached(const std::string& order_key) const {
        std::lock_guard<std::mutex> lk(mu_);
        return cache_.count(order_key) != 0;
    }

    std::shared_ptr<const std::vector<Polynomial<F>>> cache_lookup(
        const std::string& order_key) const {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = cache_.find(order_key);
        return it == cache_.end() ? nullptr : it->second;
    }

    void cache_store(const std::string& order_key,
                     std::shared_ptr<const std::vector<Polynomial<F>>> basis) const {
        std::lock_guard<std::mutex> lk(mu_);
        cache_.emplace(order_key, std::move(basis));
    }

   private:
    RingPtr ring_;
    std::vector<Polynomial<F>> gens_;
    mutable std::mutex mu_;
    mutable std::map<std::string, std::shared_ptr<const std::vector<Polynomial<F>>>> cache_;
};

template <class F>
using IdealPtr = std::shared_ptr<Ideal<F>>;

template <class F>
IdealPtr<F> make_ideal(RingPtr ring, std::vector<Polynomial<F>> gens) {
    return std::make_shared<Ideal<F>>(std::move(ring), std::move(gens));
}

using QIdeal = Ideal<Rational>;
using QIdealPtr = IdealPtr<Rational>;

/// Ring homomorphism determined by one target image per source variable.
template <class F>
struct RingHom {
    RingPtr source;
    RingPtr target;
    std::vector<Polynomial<F>> images;

    RingHom(RingPtr src, RingPtr tgt, std::vector<Polynomial<F>> imgs)
        : source(std::move(src)), target(std::move(tgt)), images(std::move(imgs)) {
        if (images.size() != source->nvars())
            throw std::invalid_argument("hom: one image per source variable required");
    }

    Polynomial<F> apply(const Polynomial<F>& f) const { return f.substitute(target, images); }

    /// this after other: (this ∘ other)(x) = this(other(x)).
    RingHom compose_after(const RingHom& other) const {
        if (!other.target->same_as(*source))
            throw std::invalid_argument("hom: composition rings do not match");
        std::vector<Polynomial<F>> imgs;
        imgs.reserve(other.images.size());
        for (const auto& im : other.images) imgs.push_back(apply(im));
        return RingHom(other.source, target, std::move(imgs));
    }
};

using QHom = RingHom<Rational>;

}  // namespace lml
