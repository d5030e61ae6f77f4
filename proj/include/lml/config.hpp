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

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace lml {

inline constexpr const char* kVersion = "0.1.0";

/// Resource ceiling for basis computations. Exceeding it raises
/// BudgetExceeded; callers must treat that as "undecided", never as a result.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct Budget {
    long long limit = 1000000;
    long long used = 0;

    void tick(long long n = 1) {
        used += n;
        if (used > limit)
            throw BudgetExceeded("reduction budget exceeded (" + std::to_string(limit) + " steps)");
    }
};

/// Environment-backed defaults. Flags override env, env overrides defaults.
struct Config {
    long long budget = 1000000;   // LML_BUDGET
    long long prime = 3;          // LML_P
    int precision = 4;            // LML_PK, modulus exponent K
    int threads = 0;              // LML_THREADS, 0 = hardware default
    long long degree_bound = -1;  // LML_D, -1 = derive 2*g*n per instance

    static long long env_ll(const char* name, long long dflt) {
        const char* v = std::getenv(name);
        if (!v || !*v) return dflt;
        char* end = nullptr;
        long long r = std::strtoll(v, &end, 10);
        if (end == v || *end != '\0')
            throw std::invalid_argument(std::string("non-numeric value in $") + name);
        return r;
    }

    static Config from_env() {
        Config c;
        c.budget = env_ll("LML_BUDGET", c.budget);
        c.prime = env_ll("LML_P", c.prime);
        c.precision = static_cast<int>(env_ll("LML_PK", c.precision));
        c.threads = static_cast<int>(env_ll("LML_THREADS", c.threads));
        c.degree_bound = env_ll("LML_D", c.degree_bound);
        return c;
    }

    Budget make_budget() const { return Budget{budget, 0}; }
};

}  // namespace lml
