// Versioned JSON documents for certificates and instances.
//
// Every document is {"format": "thompson-certificate", "version": 1,
// "type": ..., ...}. Serialization is deterministic (ordered keys, two-space
// indentation) so equal certificates produce byte-identical files. Parsing
// is strict: a document must equal the re-serialization of what it parses to.

#pragma once

#include <string>

#include <json.hpp>

#include "thompson/fgen.hpp"
#include "thompson/vdyn.hpp"

namespace thompson::cert {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormat = "thompson-certificate";
inline constexpr int kVersion = 1;

// Fixed brute-force horizons used when verifying documents.
inline constexpr long kWanderingHorizon = 50;
inline constexpr long kPingPongPowers = 25;

Json to_json(const TreeDiagram& d);
TreeDiagram diagram_from_json(const Json& j);

Json to_json(const GenerationCertificate& c);
GenerationCertificate generation_from_json(const Json& j);

Json to_json(const WanderingCertificate& c);
WanderingCertificate wandering_from_json(const Json& j);

Json to_json(const ConjugatedWandering& c);
ConjugatedWandering conjugated_from_json(const Json& j);

Json to_json(const PingPongInstance& inst);
PingPongInstance pingpong_from_json(const Json& j);

RegionSet parse_region(std::string_view text);

/// Wraps a body with the format header.
Json document(const std::string& type, Json body);
Json generation_document(const GenerationCertificate& c);
Json wandering_document(const WanderingCertificate& c);
Json suite_document(const std::vector<Json>& documents);

struct FreeProductParams {
  std::size_t max_len = 10;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
};
Json pingpong_t_document(const PingPongInstance& inst, const FreeProductParams& params);
Json orbit_v_document(const PingPongInstance& inst, std::size_t max_word_len);

/// Deterministic text form of a document (ends with a newline).
std::string dump(const Json& doc);

struct Outcome {
  bool ok = true;
  std::string message;  // violated clause on failure, summary on success
};

/// Parses and re-verifies a document of any type.
Outcome verify_document(const Json& doc);
Outcome verify_text(const std::string& text);

}  // namespace thompson::cert
