#pragma once

#include <cstdint>

#include "noisyor/factor.hpp"
#include "noisyor/noisy_gate.hpp"

namespace noisyor {

struct CompileOptions {
  /// Maximum joint input states (S) a single gate may enumerate.
  std::uint64_t budget = kDefaultEnumerationBudget;
  /// Iterate the function's preimages per output state instead of scanning
  /// the whole transmitted-state space. Same table up to summation order.
  bool use_invert = false;
};

enum class CompilePath { General, GeneralInvert, BooleanOr, NaryBooleanOutput };

/// Cost accounting, filled in when a compiler is handed a CompileStats.
struct CompileStats {
  CompilePath path = CompilePath::General;
  std::uint64_t parent_configs = 0;    // outer passes, one per joint input state
  std::uint64_t inner_iterations = 0;  // transmitted states visited (general path)
};

// Compiles a gate into its conditional probability table, a Factor over
// [inputs..., output]. The general algorithm zeroes each row, then scans the
// transmitted-state space once per joint input state u, accumulating the
// product of per-line probabilities onto the cell the function selects:
//
//   for each u:            (S passes)
//     for each u':         (S iterations each)
//       table[u, F(u')] += prod_i P_i(u'_i | u_i)
//
// u' is enumerated in canonical order, so tables are reproducible bit for
// bit. With opts.use_invert the inner scan is replaced by one walk over each
// output state's preimage; the result agrees within reordering error only.
Factor compile_general(const NoisyGateSpec& spec,
                       const CompileOptions& opts = {},
                       CompileStats* stats = nullptr);

// Fast path for the all-Boolean noisy-or: OR function with inhibitors of the
// form (q_i, 0). P(false|u) is the product of q_i over the true inputs (an
// empty product for all-false u), so one pass per input state suffices and
// the transmitted-state space is never enumerated. The budget still applies:
// the table has S rows either way.
Factor compile_boolean_noisy_or(const NoisyGateSpec& spec,
                                const CompileOptions& opts = {},
                                CompileStats* stats = nullptr);

// Fast path for n-ary inputs with a Boolean output: the weighted-average
// function with inhibitors concentrated on state 0. A line delivers state 0
// with probability q_i when its input is nonzero (and always when it is 0),
// and the function outputs 0 exactly on the all-zero tuple, so P(false|u) is
// the product of q_i over the inputs with nonzero state index.
Factor compile_nary_boolean_output(const NoisyGateSpec& spec,
                                   const CompileOptions& opts = {},
                                   CompileStats* stats = nullptr);

bool qualifies_boolean_noisy_or(const NoisyGateSpec& spec);
bool qualifies_nary_boolean_output(const NoisyGateSpec& spec);

/// First applicable of: compile_boolean_noisy_or, compile_nary_boolean_output,
/// compile_general. All paths agree within 1e-12.
Factor choose_compiler(const NoisyGateSpec& spec,
                       const CompileOptions& opts = {},
                       CompileStats* stats = nullptr);

struct PositivityReport {
  bool onto = false;
  bool all_inhibitors_positive = false;
  bool table_strictly_positive = false;
};

// Strict positivity of the compiled table: the function mapping onto the
// output is necessary; every inhibitor probability strictly positive is
// sufficient (given onto). The report carries the observed truth of all
// three, checked against the actual compiled table.
PositivityReport check_strict_positivity(const NoisyGateSpec& spec,
                                         const CompileOptions& opts = {});

}  // namespace noisyor
