#pragma once

#include "qfsplit/criteria.hpp"
#include "qfsplit/polynomial.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <json.hpp>

namespace qfsplit {

/// The family of all degree-N forms in N variables, G = sum a_i m_i, with the
/// coefficient variables a_i adjoined after the x-variables.
class FamilyContext {
 public:
  FamilyContext(std::uint32_t p, std::size_t n);

  std::uint32_t p() const { return p_; }
  std::size_t n() const { return n_; }
  /// Degree-N monomials in the x-variables, in descending grevlex order.
  const std::vector<Monomial>& monomials() const { return monomials_; }
  std::size_t size() const { return monomials_.size(); }

  /// x-variables followed by a_0, ..., a_(M-1).
  const RingPtr& family_ring() const { return family_ring_; }
  /// The x-variables only.
  const RingPtr& base_ring() const { return base_ring_; }
  const Polynomial& generic() const { return generic_; }

  /// Index of the coefficient variable of a given x-monomial.
  std::optional<std::size_t> index_of(const Monomial& m) const;
  /// Member of the family at a coefficient vector, in the base ring.
  Polynomial member(std::span<const Coeff> coeffs) const;
  /// Whether m = x_1^N or x_1 does not divide m.
  bool in_restricted_subfamily(std::size_t i) const;

 private:
  std::uint32_t p_;
  std::size_t n_;
  std::vector<Monomial> monomials_;
  RingPtr family_ring_;
  RingPtr base_ring_;
  Polynomial generic_;
};

/// b_1, ..., b_(h-1): b_i is the coefficient of (x_1...x_N)^(p^i - 1) in
/// G_i = G^(p-1) D(G^(p-1))^(1 + ... + p^(i-2)), where D is Delta_1 with each
/// x-monomial group (coefficient a polynomial in the a_i) lifted as one
/// element. Each b_i is a form of degree p^i - 1 in the a_i.
struct StrataPolynomials {
  std::vector<Polynomial> b;
};

StrataPolynomials strata_polynomials(const FamilyContext& ctx, unsigned h_max);

struct StrataProfile {
  /// Height is at least this: the largest h with b_1 = ... = b_(h-1) = 0.
  unsigned at_least = 1;
  /// Set when some b_i is nonzero: then the height equals at_least.
  bool exact = false;
  std::vector<Coeff> values;
};

StrataProfile specialize(const FamilyContext& ctx, const StrataPolynomials& strata, std::span<const Coeff> point);

/// Whether f has a singular F_p-rational point on its projective zero set.
bool has_singular_rational_point(const Polynomial& f);

struct SampleRow {
  std::vector<Coeff> coeffs;
  StrataProfile profile;
  std::optional<unsigned> height;
  bool singular_point = false;
};

struct SearchOptions {
  std::uint64_t samples = 1000;
  std::uint64_t seed = 1;
  bool smoothness_check = true;
  bool restricted_subfamily = false;
  /// Strata polynomials used as a pre-filter (computed when h_max > 1).
  unsigned prefilter_levels = 0;
};

struct SearchOutcome {
  std::optional<Polynomial> witness;
  std::optional<HeightResult> result;
  std::vector<SampleRow> rows;
};

/// Samples coefficient vectors until one gives height exactly target_h.
SearchOutcome search_height(const FamilyContext& ctx, unsigned target_h, const SearchOptions& options);

void write_rows_csv(std::ostream& out, const FamilyContext& ctx, const std::vector<SampleRow>& rows);
nlohmann::json rows_to_json(const FamilyContext& ctx, const std::vector<SampleRow>& rows);

}  // namespace qfsplit
