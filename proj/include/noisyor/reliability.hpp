#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "noisyor/network.hpp"

namespace noisyor {

struct Link {
  std::string from;
  std::string to;
  double failure = 0.0;  // probability the link is down
};

/// A directed acyclic graph of unreliable links with designated terminals.
struct LinkGraph {
  std::vector<std::string> nodes;
  std::vector<Link> links;
  std::string source;
  std::string target;
};

// Number of source-to-node paths: 1 at the source, the sum over parents
// elsewhere, computed in graph order. Unreachable nodes get 0. Counts
// saturate at 2^62 rather than wrap.
std::map<std::string, std::uint64_t> annotate_path_counts(const LinkGraph& g);

// Two-terminal connectivity model over the source and its descendants: one
// Boolean variable per node, a Boolean OR gate over each node's in-links,
// each link's failure probability becoming the inhibitor for the false
// state. Gates come out compiled; the root gets a uniform marginal (any
// strictly positive one gives the same answers once the root is observed).
Network build_connectivity_model(const LinkGraph& g,
                                 const CompileOptions& opts = {});

/// Bel(target = true) with the source clamped true: the probability that a
/// live directed path exists.
double query_connectivity(const Network& net, const std::string& source,
                          const std::string& target);

// Path-count model: node U gets n_U + 1 states, integer addition combines
// the parents' counts, and each link's inhibitor forces a failed link to
// transmit zero paths. Node cardinalities beyond `cardinality_cap` are
// refused.
Network build_path_count_model(const LinkGraph& g, int cardinality_cap = 1024,
                               const CompileOptions& opts = {});

/// Bel(target) with the source clamped to one path: the distribution over
/// the number of simultaneously live source-target paths.
std::vector<double> query_path_distribution(const Network& net,
                                            const std::string& source,
                                            const std::string& target);

// "Any node in S" variants. A synthetic super source is wired to each listed
// node with a failure-free link; clamp it and query as usual.
struct MultiSourceModel {
  Network network;
  std::string super_source;
};

MultiSourceModel build_connectivity_model_multi(
    const LinkGraph& g, const std::vector<std::string>& sources,
    const CompileOptions& opts = {});

MultiSourceModel build_path_count_model_multi(
    const LinkGraph& g, const std::vector<std::string>& sources,
    int cardinality_cap = 1024, const CompileOptions& opts = {});

}  // namespace noisyor
