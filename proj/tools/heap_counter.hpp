#pragma once

#include <cstddef>

// Live and peak bytes obtained through the global operator new of this binary.
namespace heap {

std::size_t current();
std::size_t peak();
// Starts a new peak window at the current level and returns that level.
std::size_t reset_peak();

}  // namespace heap
