#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "capax/config_search.hpp"
#include "capax/errors.hpp"
#include "capax/march.hpp"
#include "capax/topfull.hpp"

namespace capax {

using json = nlohmann::ordered_json;

// Tour certificate wire format:
//   {"rule": string, "d": int, "p": int, "length": int, "tracks": [[v,...],...]}
// Field names and order are fixed; d is the claimed minimum distance.
inline json tour_certificate(const March& f, MovementRule rule, int claimed_min) {
    json j;
    j["rule"] = to_string(rule);
    j["d"] = claimed_min;
    j["p"] = f.players();
    j["length"] = f.length();
    j["tracks"] = f.tracks;
    return j;
}

struct ParsedCertificate {
    March march;
    MovementRule rule = MovementRule::direct;
    int claimed_min = 1;
};

inline ParsedCertificate parse_tour_certificate(const json& j) {
    if (!j.is_object()) throw ParseError(1, "certificate must be a JSON object");
    for (const char* key : {"rule", "d", "p", "length", "tracks"})
        if (!j.contains(key))
            throw ParseError(1, std::string("certificate missing field \"") + key + "\"");

    auto rule = movement_rule_from_string(j["rule"].get<std::string>());
    if (!rule) throw ParseError(1, "unknown movement rule \"" + j["rule"].get<std::string>() + "\"");

    ParsedCertificate cert;
    cert.rule = *rule;
    cert.claimed_min = j["d"].get<int>();
    try {
        cert.march = march_from_tracks(j["tracks"].get<std::vector<std::vector<int>>>());
    } catch (const PreconditionError& e) {
        throw ParseError(1, e.what());
    }
    if (cert.march.players() != j["p"].get<int>())
        throw ParseError(1, "certificate p does not match track count");
    if (cert.march.length() != j["length"].get<long>())
        throw ParseError(1, "certificate length does not match tracks");
    return cert;
}

inline json validation_report_json(const ValidationReport& rep) {
    json j;
    j["positions_well_formed"] = rep.positions_well_formed;
    j["is_valid_for_rule"] = rep.is_valid_for_rule;
    j["is_collision_free"] = rep.is_collision_free;
    if (rep.positions_well_formed) {
        if (rep.min_distance)
            j["min_distance"] = *rep.min_distance;
        else
            j["min_distance"] = "infinite";
    }
    j["is_tour"] = rep.is_tour;
    if (rep.required_min) {
        j["required_min"] = *rep.required_min;
        j["meets_required_min"] = rep.meets_required_min;
    }
    if (rep.first_violation) {
        j["first_violation"] = {{"step", rep.first_violation->step},
                                {"description", rep.first_violation->description}};
    }
    return j;
}

inline json capacity_report_json(const CapacityReport& rep) {
    json j;
    j["capacity"] = rep.capacity;
    j["rule"] = to_string(rep.rule);
    j["d"] = rep.min_distance;
    j["below_two_flag"] = rep.below_two_flag;
    j["config_nodes"] = rep.config_nodes;
    j["config_edges"] = rep.config_edges;
    if (rep.witness) j["witness"] = tour_certificate(*rep.witness, rep.rule, rep.min_distance);
    return j;
}

inline json topfull_verdict_json(const TopfullVerdict& verdict) {
    json j;
    j["variant"] = to_string(verdict.variant);
    j["is_topfull"] = verdict.is_topfull;
    if (verdict.witness) j["witness"] = tour_certificate(*verdict.witness, verdict.variant, 1);
    if (verdict.obstruction) {
        json o;
        switch (verdict.obstruction->kind) {
            case Obstruction::Kind::leaf:
                o["type"] = "leaf";
                o["vertex"] = verdict.obstruction->vertex;
                break;
            case Obstruction::Kind::cut_vertex:
                o["type"] = "cut_vertex";
                o["vertex"] = verdict.obstruction->vertex;
                break;
            case Obstruction::Kind::disconnected_covered_subgraph:
                o["type"] = "disconnected_covered_subgraph";
                o["covered_edges"] = verdict.obstruction->covered;
                break;
        }
        j["obstruction"] = o;
    }
    return j;
}

}  // namespace capax
