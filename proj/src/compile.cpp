#include "noisyor/compile.hpp"

#include <stdexcept>
#include <string>

#include "noisyor/error.hpp"
#include "noisyor/indexing.hpp"

namespace noisyor {

namespace {

void require_valid(const NoisyGateSpec& spec) {
  const auto problems = spec.validate();
  if (!problems.empty())
    throw std::invalid_argument("invalid gate for '" + spec.output.name +
                                "': " + problems.front());
}

void require_within_budget(const NoisyGateSpec& spec, std::uint64_t budget) {
  const std::uint64_t s = spec.joint_input_size();
  if (s > budget)
    throw BudgetExceededError("gate for '" + spec.output.name + "' has " +
                              std::to_string(s) +
                              " joint input states, budget is " +
                              std::to_string(budget));
}

std::vector<Variable> cpt_scope(const NoisyGateSpec& spec) {
  std::vector<Variable> vars = spec.inputs;
  vars.push_back(spec.output);
  return vars;
}

// Row-major m x m matrices of line probabilities, entry [u*m + v] being the
// probability the line delivers v given input u.
std::vector<std::vector<double>> line_matrices(const NoisyGateSpec& spec) {
  std::vector<std::vector<double>> lines;
  lines.reserve(spec.inputs.size());
  for (std::size_t i = 0; i < spec.inputs.size(); ++i) {
    const int m = spec.inputs[i].cardinality();
    const auto& inh = spec.inhibitors[i];
    std::vector<double> line(static_cast<std::size_t>(m) *
                             static_cast<std::size_t>(m));
    for (int u = 0; u < m; ++u)
      for (int v = 0; v < m; ++v)
        line[static_cast<std::size_t>(u * m + v)] =
            (u == v) ? inh.nofail() + inh.probs()[static_cast<std::size_t>(v)]
                     : inh.probs()[static_cast<std::size_t>(v)];
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace

Factor compile_general(const NoisyGateSpec& spec, const CompileOptions& opts,
                       CompileStats* stats) {
  require_valid(spec);
  require_within_budget(spec, opts.budget);

  const auto cards = spec.input_cardinalities();
  const int n = static_cast<int>(cards.size());
  const auto s = static_cast<std::size_t>(spec.joint_input_size());
  const auto mx = static_cast<std::size_t>(spec.output.cardinality());
  const auto lines = line_matrices(spec);

  std::vector<double> table(s * mx, 0.0);
  CompileStats local;
  CompileStats& st = stats ? *stats : local;
  st = CompileStats{};
  st.path = opts.use_invert ? CompilePath::GeneralInvert : CompilePath::General;

  if (!opts.use_invert) {
    // Function values cached over the transmitted-state space (one eval per
    // state instead of one per state per row).
    std::vector<int> fval(s);
    {
      std::vector<int> t(cards.size(), 0);
      std::size_t flat = 0;
      do {
        fval[flat++] = spec.function->eval(t);
      } while (next_assignment(t, cards));
    }

    std::vector<int> u(cards.size(), 0);
    std::size_t row = 0;
    do {
      ++st.parent_configs;
      double* out = table.data() + row * mx;
      std::vector<int> t(cards.size(), 0);
      std::size_t flat = 0;
      do {
        ++st.inner_iterations;
        double p = 1.0;
        for (int i = 0; i < n; ++i) {
          const int m = cards[static_cast<std::size_t>(i)];
          p *= lines[static_cast<std::size_t>(i)]
                    [static_cast<std::size_t>(u[static_cast<std::size_t>(i)] * m +
                                              t[static_cast<std::size_t>(i)])];
        }
        out[static_cast<std::size_t>(fval[flat++])] += p;
      } while (next_assignment(t, cards));
      ++row;
    } while (next_assignment(u, cards));
  } else {
    // Preimages gathered once; each row then visits every transmitted state
    // exactly once, grouped by output state.
    std::vector<std::vector<std::vector<int>>> preimages;
    preimages.reserve(mx);
    for (std::size_t x = 0; x < mx; ++x)
      preimages.push_back(
          invert_preimages(*spec.function, static_cast<int>(x), opts.budget));

    std::vector<int> u(cards.size(), 0);
    std::size_t row = 0;
    do {
      ++st.parent_configs;
      double* out = table.data() + row * mx;
      for (std::size_t x = 0; x < mx; ++x) {
        double sum = 0.0;
        for (const auto& t : preimages[x]) {
          double p = 1.0;
          for (int i = 0; i < n; ++i) {
            const int m = cards[static_cast<std::size_t>(i)];
            p *= lines[static_cast<std::size_t>(i)]
                      [static_cast<std::size_t>(
                          u[static_cast<std::size_t>(i)] * m +
                          t[static_cast<std::size_t>(i)])];
          }
          sum += p;
        }
        out[x] = sum;
      }
      ++row;
    } while (next_assignment(u, cards));
  }

  return Factor(cpt_scope(spec), std::move(table));
}

bool qualifies_boolean_noisy_or(const NoisyGateSpec& spec) {
  if (!spec.function || spec.function->kind() != "or") return false;
  if (spec.output.cardinality() != 2) return false;
  if (spec.inputs.empty() || spec.inhibitors.size() != spec.inputs.size())
    return false;
  for (std::size_t i = 0; i < spec.inputs.size(); ++i) {
    if (spec.inputs[i].cardinality() != 2) return false;
    if (spec.inhibitors[i].size() != 2) return false;
    if (spec.inhibitors[i].probs()[1] != 0.0) return false;
  }
  return true;
}

bool qualifies_nary_boolean_output(const NoisyGateSpec& spec) {
  if (!spec.function || spec.function->kind() != "weighted_average")
    return false;
  if (spec.output.cardinality() != 2) return false;
  if (spec.inputs.empty() || spec.inhibitors.size() != spec.inputs.size())
    return false;
  for (std::size_t i = 0; i < spec.inputs.size(); ++i) {
    if (spec.inputs[i].cardinality() < 2) return false;
    if (spec.inhibitors[i].size() != spec.inputs[i].cardinality())
      return false;
    const auto& probs = spec.inhibitors[i].probs();
    for (std::size_t j = 1; j < probs.size(); ++j)
      if (probs[j] != 0.0) return false;
  }
  return true;
}

namespace {

// Shared body of the two product-form fast paths: P(false|u) is the product
// of q_i over inputs satisfying `counts(u_i)`.
Factor compile_product_form(const NoisyGateSpec& spec, CompilePath path,
                            CompileStats* stats) {
  const auto cards = spec.input_cardinalities();
  const int n = static_cast<int>(cards.size());
  const auto s = static_cast<std::size_t>(spec.joint_input_size());

  std::vector<double> q(spec.inhibitors.size());
  for (std::size_t i = 0; i < spec.inhibitors.size(); ++i)
    q[i] = spec.inhibitors[i].probs()[0];

  CompileStats local;
  CompileStats& st = stats ? *stats : local;
  st = CompileStats{};
  st.path = path;

  std::vector<double> table(s * 2, 0.0);
  std::vector<int> u(cards.size(), 0);
  std::size_t row = 0;
  do {
    ++st.parent_configs;
    double p_false = 1.0;
    for (int i = 0; i < n; ++i)
      if (u[static_cast<std::size_t>(i)] != 0)
        p_false *= q[static_cast<std::size_t>(i)];
    table[row * 2] = p_false;
    table[row * 2 + 1] = 1.0 - p_false;
    ++row;
  } while (next_assignment(u, cards));

  return Factor(cpt_scope(spec), std::move(table));
}

}  // namespace

Factor compile_boolean_noisy_or(const NoisyGateSpec& spec,
                                const CompileOptions& opts,
                                CompileStats* stats) {
  require_valid(spec);
  require_within_budget(spec, opts.budget);
  if (!qualifies_boolean_noisy_or(spec))
    throw std::invalid_argument(
        "gate for '" + spec.output.name +
        "' is not an all-Boolean noisy-or with (q, 0) inhibitors");
  return compile_product_form(spec, CompilePath::BooleanOr, stats);
}

Factor compile_nary_boolean_output(const NoisyGateSpec& spec,
                                   const CompileOptions& opts,
                                   CompileStats* stats) {
  require_valid(spec);
  require_within_budget(spec, opts.budget);
  if (!qualifies_nary_boolean_output(spec))
    throw std::invalid_argument(
        "gate for '" + spec.output.name +
        "' is not a weighted-average gate with Boolean output and "
        "state-0 inhibitors");
  return compile_product_form(spec, CompilePath::NaryBooleanOutput, stats);
}

Factor choose_compiler(const NoisyGateSpec& spec, const CompileOptions& opts,
                       CompileStats* stats) {
  if (qualifies_boolean_noisy_or(spec))
    return compile_boolean_noisy_or(spec, opts, stats);
  if (qualifies_nary_boolean_output(spec))
    return compile_nary_boolean_output(spec, opts, stats);
  return compile_general(spec, opts, stats);
}

PositivityReport check_strict_positivity(const NoisyGateSpec& spec,
                                         const CompileOptions& opts) {
  require_valid(spec);
  PositivityReport report;
  report.onto = check_onto(*spec.function, opts.budget);
  report.all_inhibitors_positive = true;
  for (const auto& inh : spec.inhibitors)
    for (double p : inh.probs())
      if (!(p > 0.0)) report.all_inhibitors_positive = false;
  const Factor cpt = compile_general(spec, opts);
  report.table_strictly_positive = true;
  for (double p : cpt.table())
    if (!(p > 0.0)) report.table_strictly_positive = false;
  return report;
}

}  // namespace noisyor
