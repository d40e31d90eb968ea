#include "noisyor/document.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "noisyor/error.hpp"

namespace noisyor {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& context, const std::string& what) {
  throw ParseError(context.empty() ? what : context + ": " + what);
}

const json& member(const json& obj, const std::string& context,
                   const char* key) {
  if (!obj.is_object()) fail(context, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(context, std::string("missing key '") + key + "'");
  return *it;
}

std::string get_string(const json& obj, const std::string& context,
                       const char* key) {
  const json& v = member(obj, context, key);
  if (!v.is_string()) fail(context, std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

double get_number(const json& v, const std::string& context) {
  if (!v.is_number()) fail(context, "expected a number");
  return v.get<double>();
}

std::vector<double> get_number_array(const json& v,
                                     const std::string& context) {
  if (!v.is_array()) fail(context, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(get_number(e, context));
  return out;
}

std::vector<int> get_int_array(const json& v, const std::string& context) {
  if (!v.is_array()) fail(context, "expected an array of integers");
  std::vector<int> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number_integer()) fail(context, "expected an integer");
    out.push_back(e.get<int>());
  }
  return out;
}

int boolean_state(const json& v, const std::string& context) {
  if (v.is_string()) {
    if (v == "false") return 0;
    if (v == "true") return 1;
    fail(context, "expected \"false\" or \"true\"");
  }
  if (v.is_number_integer()) {
    const int state = v.get<int>();
    if (state == 0 || state == 1) return state;
  }
  fail(context, "expected a Boolean state");
}

GateFunctionPtr make_function(const json& spec, const std::string& context,
                              const std::vector<int>& input_cards,
                              int output_card) {
  const std::string kind = get_string(spec, context, "kind");
  try {
    if (kind == "or") {
      for (int m : input_cards)
        if (m != 2) fail(context, "'or' needs Boolean inputs");
      if (output_card != 2) fail(context, "'or' needs a Boolean output");
      return std::make_shared<BooleanOrFunction>(
          static_cast<int>(input_cards.size()));
    }
    if (kind == "weighted_average")
      return std::make_shared<WeightedAverageFunction>(input_cards,
                                                       output_card);
    if (kind == "add")
      return std::make_shared<IntegerAddFunction>(input_cards, output_card);
    if (kind == "truth_table")
      return std::make_shared<TruthTableFunction>(
          input_cards, output_card,
          get_int_array(member(spec, context, "table"), context + ".table"));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    fail(context, e.what());
  }
  fail(context, "unknown function kind '" + kind + "'");
}

Network parse_network(const json& doc) {
  std::map<std::string, Variable> variables;
  std::vector<std::string> declared_order;
  if (doc.contains("variables")) {
    const json& vars = doc["variables"];
    if (!vars.is_array()) fail("variables", "expected an array");
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const std::string context = "variables[" + std::to_string(i) + "]";
      const std::string name = get_string(vars[i], context, "name");
      const json& states = member(vars[i], context, "states");
      if (!states.is_array() || states.empty())
        fail(context, "'states' must be a nonempty array");
      std::vector<std::string> labels;
      for (const auto& s : states) {
        if (!s.is_string()) fail(context, "state labels must be strings");
        labels.push_back(s.get<std::string>());
      }
      try {
        if (!variables.emplace(name, Variable(name, std::move(labels))).second)
          fail(context, "duplicate variable '" + name + "'");
      } catch (const std::invalid_argument& e) {
        fail(context, e.what());
      }
      declared_order.push_back(name);
    }
  }

  Network net;
  std::size_t node_count = 0;
  if (doc.contains("nodes")) {
    const json& nodes = doc["nodes"];
    if (!nodes.is_array()) fail("nodes", "expected an array");
    node_count = nodes.size();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const std::string context = "nodes[" + std::to_string(i) + "]";
      const std::string name = get_string(nodes[i], context, "variable");
      const auto var_it = variables.find(name);
      if (var_it == variables.end())
        fail(context, "undeclared variable '" + name + "'");
      const Variable& var = var_it->second;

      std::vector<std::string> parents;
      std::vector<Variable> parent_vars;
      std::vector<int> parent_cards;
      const json& parents_json = member(nodes[i], context, "parents");
      if (!parents_json.is_array()) fail(context, "'parents' must be an array");
      for (const auto& p : parents_json) {
        if (!p.is_string()) fail(context, "parent names must be strings");
        const auto it = variables.find(p.get<std::string>());
        if (it == variables.end())
          fail(context, "undeclared parent '" + p.get<std::string>() + "'");
        parents.push_back(it->first);
        parent_vars.push_back(it->second);
        parent_cards.push_back(it->second.cardinality());
      }

      const json& backing = member(nodes[i], context, "backing");
      NodeSpec node{var, parents, Factor()};
      if (backing.contains("cpt")) {
        std::vector<Variable> scope = parent_vars;
        scope.push_back(var);
        try {
          node.backing = Factor(std::move(scope),
                                get_number_array(backing["cpt"],
                                                 context + ".backing.cpt"));
        } catch (const std::invalid_argument& e) {
          fail(context, e.what());
        }
      } else if (backing.contains("noisy_gate")) {
        const json& gate = backing["noisy_gate"];
        const std::string gate_context = context + ".backing.noisy_gate";
        NoisyGateSpec spec;
        spec.inputs = parent_vars;
        spec.output = var;
        spec.function = make_function(member(gate, gate_context, "function"),
                                      gate_context + ".function", parent_cards,
                                      var.cardinality());
        const json& inhibitors = member(gate, gate_context, "inhibitors");
        if (!inhibitors.is_array() || inhibitors.size() != parents.size())
          fail(gate_context, "'inhibitors' must hold one array per parent");
        for (std::size_t k = 0; k < inhibitors.size(); ++k) {
          try {
            spec.inhibitors.push_back(InhibitorVector(get_number_array(
                inhibitors[k], gate_context + ".inhibitors")));
          } catch (const std::invalid_argument& e) {
            fail(gate_context, e.what());
          }
          if (spec.inhibitors.back().size() != parent_cards[k])
            fail(gate_context, "inhibitor vector for '" + parents[k] +
                                   "' has the wrong length");
        }
        node.backing = std::move(spec);
      } else {
        fail(context, "backing must contain 'cpt' or 'noisy_gate'");
      }

      try {
        net.add_node(std::move(node));
      } catch (const std::invalid_argument& e) {
        fail(context, e.what());
      }
    }
  }

  if (node_count != declared_order.size())
    fail("variables", "every declared variable needs exactly one node");
  return net;
}

LinkGraph parse_graph(const json& section) {
  const std::string context = "graph";
  LinkGraph g;
  if (section.contains("nodes")) {
    const json& nodes = section["nodes"];
    if (!nodes.is_array()) fail(context, "'nodes' must be an array");
    for (const auto& n : nodes) {
      if (!n.is_string()) fail(context, "node names must be strings");
      g.nodes.push_back(n.get<std::string>());
    }
  }
  const json& links = member(section, context, "links");
  if (!links.is_array()) fail(context, "'links' must be an array");
  for (std::size_t i = 0; i < links.size(); ++i) {
    const std::string link_context = "graph.links[" + std::to_string(i) + "]";
    Link link;
    link.from = get_string(links[i], link_context, "from");
    link.to = get_string(links[i], link_context, "to");
    link.failure =
        get_number(member(links[i], link_context, "failure"), link_context);
    if (!(link.failure >= 0.0 && link.failure <= 1.0))
      fail(link_context, "failure probability outside [0, 1]");
    g.links.push_back(std::move(link));
  }
  g.source = get_string(section, context, "source");
  g.target = get_string(section, context, "target");

  // Canonical node list: declared names first, then any endpoint or terminal
  // seen in encounter order, so reserialization is stable.
  std::vector<std::string> names = g.nodes;
  auto intern = [&](const std::string& name) {
    for (const auto& n : names)
      if (n == name) return;
    names.push_back(name);
  };
  for (const auto& link : g.links) {
    intern(link.from);
    intern(link.to);
  }
  intern(g.source);
  intern(g.target);
  g.nodes = std::move(names);
  return g;
}

CircuitSection parse_circuit(const json& section) {
  const std::string context = "circuit";
  CircuitSection out;
  const json& inputs = member(section, context, "inputs");
  if (!inputs.is_array()) fail(context, "'inputs' must be an array");
  for (const auto& in : inputs) {
    if (!in.is_string()) fail(context, "input names must be strings");
    out.circuit.primary_inputs.push_back(in.get<std::string>());
  }

  const json& gates = member(section, context, "gates");
  if (!gates.is_array()) fail(context, "'gates' must be an array");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const std::string gate_context = "circuit.gates[" + std::to_string(i) + "]";
    CircuitGate gate;
    gate.name = get_string(gates[i], gate_context, "name");
    const std::string kind_name = get_string(gates[i], gate_context, "kind");
    const auto kind = gate_kind_from_name(kind_name);
    if (!kind) fail(gate_context, "unknown gate kind '" + kind_name + "'");
    gate.kind = *kind;
    const json& gate_inputs = member(gates[i], gate_context, "inputs");
    if (!gate_inputs.is_array()) fail(gate_context, "'inputs' must be an array");
    for (const auto& in : gate_inputs) {
      if (!in.is_string()) fail(gate_context, "input names must be strings");
      gate.inputs.push_back(in.get<std::string>());
    }
    if (gate.kind == GateKind::TruthTable) {
      gate.table = get_int_array(member(gates[i], gate_context, "table"),
                                 gate_context + ".table");
      if (gate.table.size() != (std::size_t{1} << gate.inputs.size()))
        fail(gate_context, "truth table length must be 2^inputs");
      for (int e : gate.table)
        if (e != 0 && e != 1) fail(gate_context, "truth table entries must be 0 or 1");
    }
    out.circuit.gates.push_back(std::move(gate));
  }

  if (section.contains("line_failure")) {
    const json& lf = section["line_failure"];
    if (!lf.is_object()) fail(context, "'line_failure' must be an object");
    for (const auto& [key, value] : lf.items()) {
      const double p = get_number(value, "circuit.line_failure." + key);
      if (key == "default")
        out.circuit.default_line_failure = p;
      else
        out.circuit.line_failure[key] = p;
    }
  }

  if (section.contains("fault_state"))
    out.fault_model.line_fault_state =
        boolean_state(section["fault_state"], "circuit.fault_state");

  if (section.contains("device_failure")) {
    const json& df = section["device_failure"];
    if (!df.is_object()) fail(context, "'device_failure' must be an object");
    for (const auto& [gate, entry] : df.items()) {
      const std::string df_context = "circuit.device_failure." + gate;
      DeviceFailure d;
      d.probability =
          get_number(member(entry, df_context, "probability"), df_context);
      d.failed_state = boolean_state(member(entry, df_context, "failed_state"),
                                     df_context + ".failed_state");
      out.fault_model.device_failure[gate] = d;
    }
  }
  return out;
}

// Formats a double with 17 significant digits; integers keep a trailing ".0"
// so the value reads back as a number with the same type.
std::string format_probability(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  std::string s = buffer;
  if (s.find_first_of(".eEnN") == std::string::npos) s += ".0";
  return s;
}

std::string quote(const std::string& s) { return json(s).dump(); }

class Emitter {
 public:
  std::string take() { return std::move(out_); }

  void line(int indent, const std::string& text) {
    out_.append(static_cast<std::size_t>(indent) * 2, ' ');
    out_ += text;
    out_ += '\n';
  }

 private:
  std::string out_;
};

std::string probability_array(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_probability(values[i]);
  }
  out += "]";
  return out;
}

std::string int_array(const std::vector<int>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(values[i]);
  }
  out += "]";
  return out;
}

std::string string_array(const std::vector<std::string>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += quote(values[i]);
  }
  out += "]";
  return out;
}

void emit_network(Emitter& e, const Network& net, bool more_sections) {
  e.line(1, "\"variables\": [");
  for (std::size_t i = 0; i < net.nodes().size(); ++i) {
    const auto& var = net.nodes()[i].variable;
    e.line(2, "{\"name\": " + quote(var.name) +
               ", \"states\": " + string_array(var.states) + "}" +
               (i + 1 < net.size() ? "," : ""));
  }
  e.line(1, "],");
  e.line(1, "\"nodes\": [");
  for (std::size_t i = 0; i < net.nodes().size(); ++i) {
    const auto& node = net.nodes()[i];
    e.line(2, "{");
    e.line(3, "\"variable\": " + quote(node.variable.name) + ",");
    e.line(3, "\"parents\": " + string_array(node.parents) + ",");
    if (node.is_explicit()) {
      e.line(3, "\"backing\": {\"cpt\": " +
                 probability_array(node.cpt().table()) + "}");
    } else {
      const auto& gate = node.gate();
      e.line(3, "\"backing\": {\"noisy_gate\": {");
      std::string function = "\"function\": {\"kind\": \"" +
                             gate.function->kind() + "\"";
      if (const auto* tt =
              dynamic_cast<const TruthTableFunction*>(gate.function.get()))
        function += ", \"table\": " + int_array(tt->table());
      function += "},";
      e.line(4, function);
      e.line(4, "\"inhibitors\": [");
      for (std::size_t k = 0; k < gate.inhibitors.size(); ++k)
        e.line(5, probability_array(gate.inhibitors[k].probs()) +
                   (k + 1 < gate.inhibitors.size() ? "," : ""));
      e.line(4, "]");
      e.line(3, "}}");
    }
    e.line(2, std::string("}") + (i + 1 < net.size() ? "," : ""));
  }
  e.line(1, std::string("]") + (more_sections ? "," : ""));
}

void emit_graph(Emitter& e, const LinkGraph& g, bool more_sections) {
  e.line(1, "\"graph\": {");
  e.line(2, "\"nodes\": " + string_array(g.nodes) + ",");
  e.line(2, "\"links\": [");
  for (std::size_t i = 0; i < g.links.size(); ++i)
    e.line(3, "{\"from\": " + quote(g.links[i].from) +
               ", \"to\": " + quote(g.links[i].to) + ", \"failure\": " +
               format_probability(g.links[i].failure) + "}" +
               (i + 1 < g.links.size() ? "," : ""));
  e.line(2, "],");
  e.line(2, "\"source\": " + quote(g.source) + ",");
  e.line(2, "\"target\": " + quote(g.target));
  e.line(1, std::string("}") + (more_sections ? "," : ""));
}

void emit_circuit(Emitter& e, const CircuitSection& section) {
  const Circuit& c = section.circuit;
  e.line(1, "\"circuit\": {");
  e.line(2, "\"inputs\": " + string_array(c.primary_inputs) + ",");
  e.line(2, "\"gates\": [");
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const auto& gate = c.gates[i];
    std::string text = "{\"name\": " + quote(gate.name) + ", \"kind\": \"" +
                       gate_kind_name(gate.kind) +
                       "\", \"inputs\": " + string_array(gate.inputs);
    if (gate.kind == GateKind::TruthTable)
      text += ", \"table\": " + int_array(gate.table);
    text += "}";
    if (i + 1 < c.gates.size()) text += ",";
    e.line(3, text);
  }
  e.line(2, "],");
  std::string line_failure =
      "\"line_failure\": {\"default\": " +
      format_probability(c.default_line_failure);
  for (const auto& [wire, p] : c.line_failure)
    line_failure += ", " + quote(wire) + ": " + format_probability(p);
  line_failure += "},";
  e.line(2, line_failure);
  e.line(2, std::string("\"fault_state\": ") +
             (section.fault_model.line_fault_state == 0 ? "\"false\""
                                                        : "\"true\"") +
             (section.fault_model.device_failure.empty() ? "" : ","));
  if (!section.fault_model.device_failure.empty()) {
    e.line(2, "\"device_failure\": {");
    std::size_t i = 0;
    for (const auto& [gate, df] : section.fault_model.device_failure) {
      ++i;
      e.line(3, quote(gate) + ": {\"probability\": " +
                 format_probability(df.probability) + ", \"failed_state\": " +
                 (df.failed_state == 0 ? "\"false\"" : "\"true\"") + "}" +
                 (i < section.fault_model.device_failure.size() ? "," : ""));
    }
    e.line(2, "}");
  }
  e.line(1, "}");
}

}  // namespace

Document parse_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line/column for a usable message.
    std::size_t line = 1, column = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 <= limit && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("parse error at line " + std::to_string(line) +
                     ", column " + std::to_string(column) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("document must be a JSON object");

  Document out;
  if (doc.contains("description")) {
    if (!doc["description"].is_string())
      throw ParseError("description: expected a string");
    out.description = doc["description"].get<std::string>();
  }
  out.network = parse_network(doc);
  if (doc.contains("graph")) out.graph = parse_graph(doc["graph"]);
  if (doc.contains("circuit")) out.circuit = parse_circuit(doc["circuit"]);
  return out;
}

Document load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str());
}

std::string serialize_document(const Document& doc) {
  Emitter e;
  e.line(0, "{");
  const bool has_graph = doc.graph.has_value();
  const bool has_circuit = doc.circuit.has_value();
  if (!doc.description.empty())
    e.line(1, "\"description\": " + quote(doc.description) + ",");
  emit_network(e, doc.network, has_graph || has_circuit);
  if (has_graph) emit_graph(e, *doc.graph, has_circuit);
  if (has_circuit) emit_circuit(e, *doc.circuit);
  e.line(0, "}");
  return e.take();
}

}  // namespace noisyor
