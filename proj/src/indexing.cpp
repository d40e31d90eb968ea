#include "noisyor/indexing.hpp"

#include <stdexcept>
#include <string>

namespace noisyor {

std::size_t mixed_radix_index(std::span<const int> indices,
                              std::span<const int> radices) {
  if (indices.size() != radices.size())
    throw std::invalid_argument("mixed_radix_index: rank mismatch");
  std::size_t flat = 0;
  for (std::size_t d = 0; d < indices.size(); ++d) {
    if (indices[d] < 0 || indices[d] >= radices[d])
      throw std::out_of_range("mixed_radix_index: digit " + std::to_string(d) +
                              " out of range");
    flat = flat * static_cast<std::size_t>(radices[d]) +
           static_cast<std::size_t>(indices[d]);
  }
  return flat;
}

std::vector<int> mixed_radix_decode(std::size_t flat,
                                    std::span<const int> radices) {
  std::vector<int> indices(radices.size(), 0);
  for (std::size_t d = radices.size(); d-- > 0;) {
    const auto radix = static_cast<std::size_t>(radices[d]);
    indices[d] = static_cast<int>(flat % radix);
    flat /= radix;
  }
  if (flat != 0)
    throw std::out_of_range("mixed_radix_decode: flat index out of range");
  return indices;
}

bool next_assignment(std::span<int> indices, std::span<const int> radices) {
  for (std::size_t d = indices.size(); d-- > 0;) {
    if (++indices[d] < radices[d]) return true;
    indices[d] = 0;
  }
  return false;
}

std::uint64_t joint_size(std::span<const int> radices) {
  std::uint64_t prod = 1;
  for (int r : radices) {
    if (r <= 0) throw std::invalid_argument("joint_size: nonpositive radix");
    const auto u = static_cast<std::uint64_t>(r);
    if (prod > kJointSizeSaturated / u) return kJointSizeSaturated;
    prod *= u;
  }
  return prod;
}

}  // namespace noisyor
