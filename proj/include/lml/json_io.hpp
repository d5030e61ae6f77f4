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

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "alcove.hpp"
#include "charts.hpp"
#include "config.hpp"
#include "ideal.hpp"
#include "verify.hpp"

namespace lml {

using nlohmann::json;

/// Reproducibility record written into every output artifact.
struct RunManifest {
    std::string command;
    json params = json::object();
    std::string version = kVersion;
    long long budget = 0;
    std::vector<std::string> outputs;
    long long ms = 0;

    json to_json() const {
        return json{{"command", command}, {"params", params},   {"version", version},
                    {"budgets", json{{"reduction_steps", budget}}},
                    {"outputs", outputs}, {"ms", ms}};
    }
};

inline json ring_to_json(const RingPtr& ring) {
    json j;
    j["vars"] = ring->vars();
    if (ring->coeff().kind == CoeffDomain::Kind::rationals) {
        j["coeff"] = "QQ";
    } else {
        j["coeff"] = "Fp";
        j["p"] = ring->coeff().characteristic;
    }
    return j;
}

inline RingPtr ring_from_json(const json& j) {
    std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
    std::string coeff = j.at("coeff").get<std::string>();
    if (coeff == "QQ") return make_ring(vars, CoeffDomain::rationals());
    if (coeff == "Fp")
        return make_ring(vars, CoeffDomain::prime_field(j.at("p").get<long long>()));
    throw std::invalid_argument("ring json: coeff must be \"QQ\" or \"Fp\"");
}

template <class F>
json ideal_to_json(const IdealPtr<F>& I) {
    json j;
    j["ring"] = ring_to_json(I->ring());
    json gens = json::array();
    for (const auto& g : I->gens()) gens.push_back(g.format());
    j["gens"] = gens;
    return j;
}

/// The ideal schema is field-agnostic; parse whichever coefficient domain
/// the ring declares.
struct ParsedIdeal {
    RingPtr ring;
    QIdealPtr q;            // set when coeff = QQ
    IdealPtr<Fp> fp;        // set when coeff = Fp
    bool is_rational() const { return (bool)q; }
};

inline ParsedIdeal ideal_from_json(const json& j) {
    ParsedIdeal out;
    out.ring = ring_from_json(j.at("ring"));
    std::vector<std::string> texts = j.at("gens").get<std::vector<std::string>>();
    if (out.ring->coeff().kind == CoeffDomain::Kind::rationals) {
        std::vector<QPoly> gens;
        for (const auto& s : texts) gens.push_back(parse_poly<Rational>(out.ring, s));
        out.q = make_ideal(out.ring, std::move(gens));
    } else {
        std::vector<FpPoly> gens;
        for (const auto& s : texts) gens.push_back(parse_poly<Fp>(out.ring, s));
        out.fp = make_ideal(out.ring, std::move(gens));
    }
    return out;
}

inline json chart_to_json(const ChartPresentation& ch) {
    json j;
    j["case"] = ch.case_tag;
    j["params"] = json{{"n", ch.params.n}, {"r", ch.params.r}, {"p", ch.params.p},
                       {"g", ch.params.g}, {"h", ch.params.h}, {"m", ch.params.m}};
    j["ring"] = ring_to_json(ch.ring);
    json gens = json::array();
    for (const auto& g : ch.gens) gens.push_back(g.format());
    j["gens"] = gens;
    json named = json::object();
    for (const auto& [k, v] : ch.named) named[k] = v.format();
    j["named"] = named;
    return j;
}

inline json alcove_to_json(const Alcove& x) {
    json rows = json::array();
    for (const auto& r : x.rows()) rows.push_back(r);
    return rows;
}

inline Alcove alcove_from_json(const json& j) {
    std::vector<IntVec> rows;
    for (const auto& r : j) rows.push_back(r.get<IntVec>());
    return Alcove(rows);
}

inline json report_to_json(const VerificationReport& rep) {
    json j;
    j["theorem"] = rep.theorem;
    j["params"] = rep.params;
    j["status"] = rep.status;
    json ev = json::array();
    for (const auto& e : rep.evidence)
        ev.push_back(json{{"name", e.name}, {"ok", e.ok}, {"detail", e.detail}});
    j["evidence"] = ev;
    j["ms"] = rep.ms;
    return j;
}

/// Atomic write: the file either has the full new content or is untouched.
inline void write_artifact(const std::string& path, json payload, const RunManifest& manifest) {
    payload["manifest"] = manifest.to_json();
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << payload.dump(2) << "\n";
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move " + tmp + " into place");
}

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

}  // namespace lml
