#pragma once

// Deliberately naive reference implementations used by tests and the
// `verify` command. Every value is computed from first principles with plain
// nested loops over explicitly materialized state spaces; nothing in here
// shares a code path with the compilers or the elimination engine it checks.

#include <cstdint>
#include <string>
#include <vector>

#include "noisyor/network.hpp"
#include "noisyor/noisy_gate.hpp"
#include "noisyor/reliability.hpp"

namespace noisyor::oracle {

/// Each table cell computed independently: for every (input state, output
/// state) pair, scan the whole transmitted-state space, test membership in
/// the preimage, and sum the products of per-line probabilities.
Factor brute_force_cpt(const NoisyGateSpec& spec,
                       std::uint64_t budget = kDefaultEnumerationBudget);

/// Materializes the full joint as the product of all node CPTs (gates via
/// brute_force_cpt), zeroes evidence-inconsistent entries, sums onto the
/// target, renormalizes.
std::vector<double> brute_force_marginal(
    const Network& net, const Evidence& evidence, const std::string& target,
    std::uint64_t max_joint_states = kDefaultEnumerationBudget);

struct LinkStateSummary {
  double connectivity = 0.0;      // P(at least one live source-target path)
  std::vector<double> histogram;  // P(exactly k live paths), k = 0..max
};

/// Enumerates all 2^L up/down link configurations, weighing each by its
/// probability and counting the live source-target paths it leaves.
LinkStateSummary enumerate_link_states(const LinkGraph& g, int max_links = 24);

/// Multi-source variant: paths may originate at any listed node.
LinkStateSummary enumerate_link_states(const LinkGraph& g,
                                       const std::vector<std::string>& sources,
                                       int max_links = 24);

}  // namespace noisyor::oracle
