#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hmgf/group.hpp"

namespace hmgf {

struct BatchEntry {
  std::string instance;
  Query query;
  // Absent when the solver returned nothing.
  std::map<std::string, std::optional<Solution>, std::less<>> solutions;
  std::optional<Solution> optimal;
};

using Batch = std::vector<BatchEntry>;

// Share of returned solutions that satisfy the hop and size constraints.
// Throws std::invalid_argument when the solver returned nothing on every
// instance.
double fea_ratio(const Batch& b, std::string_view solver);

struct ObjRatio {
  double mean = 0.0;
  std::size_t counted = 0;
  std::size_t zero_optimum = 0;  // excluded: ratio undefined
};

// Mean of sigma / optimal sigma, with a missing solution scoring 0.
// Throws std::invalid_argument if an entry lacks its optimal solution or no
// entry has a positive optimum.
ObjRatio obj_ratio(const Batch& b, std::string_view solver);

}  // namespace hmgf
