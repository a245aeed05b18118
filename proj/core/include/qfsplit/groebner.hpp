#pragma once

#include "qfsplit/polynomial.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfsplit {

/// Thrown when a Groebner computation exceeds its step budget.
class GbBudgetExceeded : public std::runtime_error {
 public:
  explicit GbBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct GbOptions {
  /// Reduction steps (one monomial-multiple subtraction each) plus S-pairs.
  std::uint64_t step_budget = 200'000'000;
  /// Re-check that every S-polynomial of the output reduces to zero.
  bool verify_postcondition = false;
};

/// Defaults seen by new threads; set once at startup (CLI flags, test main).
GbOptions& gb_process_defaults();
/// Defaults of the calling thread, copied from the process defaults on first
/// use. Batch workers adjust these per job.
GbOptions& gb_defaults();

/// Counters of the calling thread, accumulated across computations.
struct GbStats {
  std::uint64_t reductions = 0;
  std::uint64_t pairs = 0;
  std::uint64_t bases = 0;
};
GbStats& gb_stats();

/// Reduced Groebner basis: monic, inter-reduced, sorted ascending by leading
/// monomial. Polynomials are stored canonically (grevlex term order) whatever
/// the order the basis was computed for.
struct GroebnerBasis {
  RingPtr ring;
  MonomialOrder order = MonomialOrder::grevlex();
  std::vector<Polynomial> elements;
};

GroebnerBasis buchberger(const RingPtr& ring, std::span<const Polynomial> generators,
                         MonomialOrder order = MonomialOrder::grevlex(),
                         const GbOptions& options = gb_defaults());

/// Fully reduced remainder of `a` modulo a Groebner basis.
Polynomial normal_form(const Polynomial& a, const GroebnerBasis& gb);

/// Leading term of `a` under `order`.
Term leading_term(const Polynomial& a, const MonomialOrder& order);

/// Ideal given by generators, with the reduced grevlex basis cached on first
/// use. Copies share the cache.
class Ideal {
 public:
  explicit Ideal(RingPtr ring, std::vector<Polynomial> generators = {});

  const RingPtr& ring_ptr() const { return ring_; }
  const Ring& ring() const { return *ring_; }
  const std::vector<Polynomial>& generators() const { return generators_; }

  const GroebnerBasis& groebner() const;
  bool contains(const Polynomial& a) const;
  /// other is a subset of this ideal.
  bool contains(const Ideal& other) const;
  bool is_zero() const { return generators_.empty(); }
  bool is_unit() const;

  /// The ideal generated by the reduced basis.
  Ideal reduced() const;

 private:
  RingPtr ring_;
  std::vector<Polynomial> generators_;
  mutable std::shared_ptr<const GroebnerBasis> gb_;
};

Ideal operator+(const Ideal& a, const Ideal& b);
/// Ideal generated by all pairwise products of generators.
Ideal operator*(const Ideal& a, const Ideal& b);

bool ideal_membership(const Polynomial& a, const Ideal& ideal);
bool ideal_equal(const Ideal& a, const Ideal& b);

/// Exact quotient a / b; throws std::invalid_argument if b does not divide a.
Polynomial divide_exact(const Polynomial& a, const Polynomial& b);

/// I cap J via an auxiliary variable t: the part of (t I, (1 - t) J) free of t.
Ideal intersect(const Ideal& a, const Ideal& b);
/// (I : g) = (I cap (g)) / g.
Ideal colon_ideal(const Ideal& a, const Polynomial& g);
/// (I : J) as the intersection of (I : g) over the generators g of J.
Ideal colon_ideal(const Ideal& a, const Ideal& b);

/// Expresses `a` modulo (tracked + untracked): returns cofactors c with
/// a - sum c_i tracked_i in (untracked), or nothing if a is not in the sum.
std::optional<std::vector<Polynomial>> lift(const Polynomial& a,
                                            std::span<const Polynomial> tracked,
                                            std::span<const Polynomial> untracked,
                                            const GbOptions& options = gb_defaults());

}  // namespace qfsplit
