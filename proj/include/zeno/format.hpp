#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace zeno::fmt {

// Shortest general representation at 12 significant digits, '.' decimal, locale independent.
std::string num(double x);
std::string num(std::uint64_t x);

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t x);

// Writes rows of pre-formatted cells as CSV with '\n' line ends.
void write_csv_row(std::ostream& os, const std::vector<std::string>& cells);

}  // namespace zeno::fmt
