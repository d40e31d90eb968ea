#pragma once

#include <optional>
#include <string>

#include "noisyor/diagnosis.hpp"
#include "noisyor/network.hpp"
#include "noisyor/reliability.hpp"

namespace noisyor {

/// A circuit section together with its fault-model settings.
struct CircuitSection {
  Circuit circuit;
  FaultModel fault_model;
};

// In-memory form of the serialized document: a (possibly empty) network plus
// optional graph and circuit sections sharing one file. The `variables` and
// `nodes` arrays correspond one to one; the graph and circuit sections build
// their networks on demand and declare no variables of their own.
struct Document {
  std::string description;  // empty = omitted
  Network network;
  std::optional<LinkGraph> graph;
  std::optional<CircuitSection> circuit;
};

/// Throws ParseError with line/column context on malformed input.
Document parse_document(const std::string& text);
Document load_document(const std::string& path);

// Deterministic emitter: fixed key order, two-space indentation,
// probabilities with 17 significant digits so doubles round-trip exactly.
std::string serialize_document(const Document& doc);

}  // namespace noisyor
