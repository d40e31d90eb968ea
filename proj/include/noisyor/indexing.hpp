#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace noisyor {

// Canonical flat layout used by every table in the library: mixed radix with
// the LAST position varying fastest. mixed_radix_index is a bijection onto
// [0, prod(radices)).

std::size_t mixed_radix_index(std::span<const int> indices,
                              std::span<const int> radices);

std::vector<int> mixed_radix_decode(std::size_t flat,
                                    std::span<const int> radices);

// Advances `indices` to the next assignment in canonical order. Returns false
// (with `indices` reset to all-zero) after the last assignment. An empty
// index vector has exactly one assignment, so the idiom is do/while.
bool next_assignment(std::span<int> indices, std::span<const int> radices);

// Product of the radices, saturating at 2^62 so results stay comparable
// against any realistic budget.
std::uint64_t joint_size(std::span<const int> radices);

inline constexpr std::uint64_t kJointSizeSaturated = std::uint64_t{1} << 62;

}  // namespace noisyor
