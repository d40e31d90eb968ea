#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "noisyor/inference.hpp"
#include "noisyor/network.hpp"

namespace noisyor {

enum class GateKind { And, Or, Not, Nand, Nor, Xor, TruthTable };

std::optional<GateKind> gate_kind_from_name(std::string_view name);
std::string gate_kind_name(GateKind kind);

/// Flat Boolean truth table for the kind over `input_count` inputs, in the
/// canonical layout. Not defined for GateKind::TruthTable.
std::vector<int> gate_truth_table(GateKind kind, int input_count);

struct CircuitGate {
  std::string name;  // also names the output wire
  GateKind kind = GateKind::TruthTable;
  std::vector<std::string> inputs;  // primary inputs or other gates' outputs
  std::vector<int> table;           // used when kind == TruthTable
};

/// A combinational circuit whose wires fail independently. A wire is named
/// by its driver (a primary input or a gate); when it fans out, each branch
/// carries its own independent failure event with the same probability.
struct Circuit {
  std::vector<std::string> primary_inputs;
  std::vector<CircuitGate> gates;
  double default_line_failure = 0.0;
  std::map<std::string, double> line_failure;  // per-wire override

  double line_failure_for(const std::string& wire) const;
};

struct DeviceFailure {
  double probability = 0.0;
  int failed_state = 0;  // output state the broken device gets stuck at
};

struct FaultModel {
  /// State a failed line delivers downstream (0 = failed-at-false).
  int line_fault_state = 0;
  std::map<std::string, DeviceFailure> device_failure;  // keyed by gate name
};

// One Boolean variable per primary input (uniform marginal) and per gate
// output. Each gate becomes a noisy gate whose function is its truth table
// and whose per-input inhibitors put the wire's failure probability on the
// fault state. A gate with a device-failure entry grows an extra
// "<name>_fault" parent: when set, the output is pinned to the failed state;
// its own line never fails. Gates come out compiled.
Network build_circuit_model(const Circuit& circuit,
                            const FaultModel& fault_model = {},
                            const CompileOptions& opts = {});

/// Posterior marginals over the requested wires and fault variables.
MarginalSet diagnose(const Network& net, const Evidence& evidence,
                     const std::vector<std::string>& targets = {},
                     const CompileOptions& opts = {});

}  // namespace noisyor
