#include "noisyor/diagnosis.hpp"

#include <set>
#include <stdexcept>

#include "noisyor/error.hpp"
#include "noisyor/indexing.hpp"

namespace noisyor {

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
  if (name == "and") return GateKind::And;
  if (name == "or") return GateKind::Or;
  if (name == "not") return GateKind::Not;
  if (name == "nand") return GateKind::Nand;
  if (name == "nor") return GateKind::Nor;
  if (name == "xor") return GateKind::Xor;
  if (name == "truth_table") return GateKind::TruthTable;
  return std::nullopt;
}

std::string gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::And: return "and";
    case GateKind::Or: return "or";
    case GateKind::Not: return "not";
    case GateKind::Nand: return "nand";
    case GateKind::Nor: return "nor";
    case GateKind::Xor: return "xor";
    case GateKind::TruthTable: return "truth_table";
  }
  return "truth_table";
}

std::vector<int> gate_truth_table(GateKind kind, int input_count) {
  if (kind == GateKind::TruthTable)
    throw std::invalid_argument("explicit truth table required");
  if (kind == GateKind::Not && input_count != 1)
    throw std::invalid_argument("not gate takes exactly one input");
  if (input_count < 1)
    throw std::invalid_argument("gate needs at least one input");

  const std::vector<int> cards(static_cast<std::size_t>(input_count), 2);
  std::vector<int> table;
  table.reserve(std::size_t{1} << input_count);
  std::vector<int> u(cards.size(), 0);
  do {
    int ones = 0;
    for (int bit : u) ones += bit;
    int out = 0;
    switch (kind) {
      case GateKind::And: out = (ones == input_count) ? 1 : 0; break;
      case GateKind::Or: out = (ones > 0) ? 1 : 0; break;
      case GateKind::Not: out = 1 - u[0]; break;
      case GateKind::Nand: out = (ones == input_count) ? 0 : 1; break;
      case GateKind::Nor: out = (ones > 0) ? 0 : 1; break;
      case GateKind::Xor: out = ones % 2; break;
      case GateKind::TruthTable: break;
    }
    table.push_back(out);
  } while (next_assignment(u, cards));
  return table;
}

double Circuit::line_failure_for(const std::string& wire) const {
  const auto it = line_failure.find(wire);
  return it == line_failure.end() ? default_line_failure : it->second;
}

namespace {

void check_circuit(const Circuit& circuit, const FaultModel& fault_model) {
  std::set<std::string> wires;
  for (const auto& in : circuit.primary_inputs)
    if (!wires.insert(in).second)
      throw std::invalid_argument("duplicate primary input '" + in + "'");
  for (const auto& gate : circuit.gates)
    if (!wires.insert(gate.name).second)
      throw std::invalid_argument("duplicate wire name '" + gate.name + "'");
  for (const auto& gate : circuit.gates)
    for (const auto& in : gate.inputs)
      if (!wires.count(in))
        throw std::invalid_argument("gate '" + gate.name +
                                    "' reads unknown wire '" + in + "'");
  for (const auto& [wire, p] : circuit.line_failure) {
    if (!wires.count(wire))
      throw std::invalid_argument("line failure given for unknown wire '" +
                                  wire + "'");
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("line failure for '" + wire +
                                  "' outside [0, 1]");
  }
  if (!(circuit.default_line_failure >= 0.0 &&
        circuit.default_line_failure <= 1.0))
    throw std::invalid_argument("default line failure outside [0, 1]");
  if (fault_model.line_fault_state != 0 && fault_model.line_fault_state != 1)
    throw std::invalid_argument("line fault state must be 0 or 1");
  for (const auto& [gate, df] : fault_model.device_failure) {
    if (!(df.probability >= 0.0 && df.probability <= 1.0))
      throw std::invalid_argument("device failure probability for '" + gate +
                                  "' outside [0, 1]");
    if (df.failed_state != 0 && df.failed_state != 1)
      throw std::invalid_argument("device failed state must be 0 or 1");
    bool known = false;
    for (const auto& g : circuit.gates)
      if (g.name == gate) known = true;
    if (!known)
      throw std::invalid_argument("device failure given for unknown gate '" +
                                  gate + "'");
  }
}

std::string fault_variable_name(const Circuit& circuit,
                                const std::string& gate_name) {
  std::string name = gate_name + "_fault";
  auto taken = [&](const std::string& candidate) {
    for (const auto& in : circuit.primary_inputs)
      if (in == candidate) return true;
    for (const auto& g : circuit.gates)
      if (g.name == candidate) return true;
    return false;
  };
  while (taken(name)) name += "_";
  return name;
}

}  // namespace

Network build_circuit_model(const Circuit& circuit,
                            const FaultModel& fault_model,
                            const CompileOptions& opts) {
  check_circuit(circuit, fault_model);

  Network net;
  for (const auto& in : circuit.primary_inputs) {
    Variable var = Variable::boolean(in);
    net.add_node({var, {}, Factor({var}, {0.5, 0.5})});
  }

  for (const auto& gate : circuit.gates) {
    std::vector<int> base_table = gate.kind == GateKind::TruthTable
                                      ? gate.table
                                      : gate_truth_table(
                                            gate.kind,
                                            static_cast<int>(gate.inputs.size()));

    const auto fault_it = fault_model.device_failure.find(gate.name);
    const bool has_fault = fault_it != fault_model.device_failure.end();

    NoisyGateSpec spec;
    std::vector<std::string> parent_names;
    for (const auto& in : gate.inputs) {
      spec.inputs.push_back(Variable::boolean(in));
      std::vector<double> inh(2, 0.0);
      inh[static_cast<std::size_t>(fault_model.line_fault_state)] =
          circuit.line_failure_for(in);
      spec.inhibitors.push_back(InhibitorVector(std::move(inh)));
      parent_names.push_back(in);
    }

    std::vector<int> cards(gate.inputs.size(), 2);
    std::vector<int> table = base_table;
    if (has_fault) {
      // Extended device: an extra last input selects between the original
      // table (ok) and the pinned failed state (failed). Its line is exact.
      const std::string fault_name = fault_variable_name(circuit, gate.name);
      Variable fault_var(fault_name, {"ok", "failed"});
      net.add_node({fault_var,
                    {},
                    Factor({fault_var}, {1.0 - fault_it->second.probability,
                                         fault_it->second.probability})});
      spec.inputs.push_back(fault_var);
      spec.inhibitors.push_back(InhibitorVector({0.0, 0.0}));
      parent_names.push_back(fault_name);
      cards.push_back(2);

      table.resize(base_table.size() * 2);
      for (std::size_t i = 0; i < base_table.size(); ++i) {
        table[i * 2] = base_table[i];
        table[i * 2 + 1] = fault_it->second.failed_state;
      }
    }

    Variable out_var = Variable::boolean(gate.name);
    spec.function =
        std::make_shared<TruthTableFunction>(std::move(cards), 2, std::move(table));
    spec.output = out_var;

    NodeSpec node{out_var, std::move(parent_names), std::move(spec)};
    node.backing = choose_compiler(std::get<NoisyGateSpec>(node.backing), opts);
    net.add_node(std::move(node));
  }

  // Gates may be listed in any order; reject feedback loops.
  topological_order(net);
  return net;
}

MarginalSet diagnose(const Network& net, const Evidence& evidence,
                     const std::vector<std::string>& targets,
                     const CompileOptions& opts) {
  return eliminate(net, evidence, targets, opts);
}

}  // namespace noisyor
