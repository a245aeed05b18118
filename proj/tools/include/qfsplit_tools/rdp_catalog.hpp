#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qfsplit::tools {

/// One row of the non-taut rational double point table, with the height the
/// closed form predicts. For the D-families n and r are the family indices.
struct RdpRow {
  std::uint32_t p = 2;
  std::string type;
  std::string poly;
  unsigned expected = 0;
  unsigned n = 0;
  unsigned r = 0;
};

/// ceil(log2(k)) for k >= 1.
unsigned ceil_log2(unsigned k);

/// The E-rows for the requested primes and, at p = 2, the D_{2n}^r and
/// D_{2n+1}^r families for 2 <= n <= n_bound, 0 <= r <= n - 1.
std::vector<RdpRow> rdp_rows(const std::vector<std::uint32_t>& primes, unsigned n_bound);

/// Number of distinct table entries (D-families counted once each).
inline constexpr std::size_t kRdpTableEntries = 24;

}  // namespace qfsplit::tools
