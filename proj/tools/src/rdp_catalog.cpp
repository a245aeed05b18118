#include "qfsplit_tools/rdp_catalog.hpp"

#include <algorithm>

namespace qfsplit::tools {

unsigned ceil_log2(unsigned k) {
  unsigned b = 0;
  while ((1u << b) < k) ++b;
  return b;
}

namespace {

std::string ypow(unsigned e) {
  if (e == 0) return "";
  if (e == 1) return "*y";
  return "*y^" + std::to_string(e);
}

void d_family(std::vector<RdpRow>& out, unsigned n_bound) {
  for (unsigned n = 2; n <= n_bound; ++n) {
    for (unsigned r = 0; r < n; ++r) {
      RdpRow row;
      row.type = "D" + std::to_string(2 * n) + "^" + std::to_string(r);
      row.poly = "z^2+x^2*y+x" + ypow(n);
      if (r > 0) row.poly += "+x" + ypow(n - r) + "*z";
      row.expected = ceil_log2(n - r) + 1;
      row.n = n;
      row.r = r;
      out.push_back(row);
    }
  }
  for (unsigned n = 2; n <= n_bound; ++n) {
    for (unsigned r = 0; r < n; ++r) {
      RdpRow row;
      row.type = "D" + std::to_string(2 * n + 1) + "^" + std::to_string(r);
      row.poly = "z^2+x^2*y+y^" + std::to_string(n) + "*z";
      if (r > 0) row.poly += "+x" + ypow(n - r) + "*z";
      row.expected = ceil_log2(n - r) + 1;
      row.n = n;
      row.r = r;
      out.push_back(row);
    }
  }
}

struct Fixed {
  std::uint32_t p;
  const char* type;
  const char* poly;
  unsigned expected;
};

constexpr Fixed kERows[] = {
    {2, "E6^0", "z^2+x^3+y^2*z", 2},
    {2, "E6^1", "z^2+x^3+y^2*z+x*y*z", 1},
    {2, "E7^0", "z^2+x^3+x*y^3", 4},
    {2, "E7^1", "z^2+x^3+x*y^3+x^2*y*z", 3},
    {2, "E7^2", "z^2+x^3+x*y^3+y^3*z", 2},
    {2, "E7^3", "z^2+x^3+x*y^3+x*y*z", 1},
    {2, "E8^0", "z^2+x^3+y^5", 4},
    {2, "E8^1", "z^2+x^3+y^5+x*y^3*z", 4},
    {2, "E8^2", "z^2+x^3+y^5+x*y^2*z", 3},
    {2, "E8^3", "z^2+x^3+y^5+y^3*z", 2},
    {2, "E8^4", "z^2+x^3+y^5+x*y*z", 1},
    {3, "E6^0", "z^2+x^3+y^4", 2},
    {3, "E6^1", "z^2+x^3+y^4+x^2*y^2", 1},
    {3, "E7^0", "z^2+x^3+x*y^3", 2},
    {3, "E7^1", "z^2+x^3+x*y^3+x^2*y^2", 1},
    {3, "E8^0", "z^2+x^3+y^5", 3},
    {3, "E8^1", "z^2+x^3+y^5+x^2*y^3", 2},
    {3, "E8^2", "z^2+x^3+y^5+x^2*y^2", 1},
    {5, "E8^0", "z^2+x^3+y^5", 2},
    {5, "E8^1", "z^2+x^3+y^5+x*y^4", 1},
};

}  // namespace

std::vector<RdpRow> rdp_rows(const std::vector<std::uint32_t>& primes, unsigned n_bound) {
  auto wanted = [&](std::uint32_t p) { return std::find(primes.begin(), primes.end(), p) != primes.end(); };
  std::vector<RdpRow> out;
  if (wanted(2)) d_family(out, n_bound);
  for (const Fixed& e : kERows) {
    if (!wanted(e.p)) continue;
    out.push_back(RdpRow{e.p, e.type, e.poly, e.expected, 0, 0});
  }
  return out;
}

}  // namespace qfsplit::tools
