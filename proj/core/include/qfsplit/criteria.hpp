#pragma once

#include "qfsplit/frobenius.hpp"
#include "qfsplit/groebner.hpp"
#include "qfsplit/polynomial.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qfsplit {

/// A complete intersection S/(f'_1, ..., f'_m) over F_p, optionally graded.
/// The generators are assumed to form a regular sequence in the maximal
/// ideal; this is not checked.
struct Problem {
  RingPtr ring;
  std::vector<Polynomial> generators;
  std::optional<Grading> grading;

  Problem(RingPtr ring, std::vector<Polynomial> generators, std::optional<Grading> grading = std::nullopt);

  std::uint32_t p() const { return ring->characteristic(); }
  /// f = f'_1 ... f'_m.
  const Polynomial& product() const { return product_; }
  const Ideal& ideal() const { return ideal_; }

 private:
  Polynomial product_;
  Ideal ideal_;
};

enum class Verdict { Finite, Infinite, LowerBound, Unknown };
std::string to_string(Verdict v);

/// Level n and the nonzero coefficient of (x_1...x_N)^(p^n - 1) in f_n.
struct CoefficientWitness {
  unsigned level = 0;
  Coeff value = 0;
};

/// g_1 in I_1, u(F_*g_l) = 0, g_(l+1) - theta(F_*g_l) in I_1, g_n outside m^[p].
struct ChainWitness {
  std::vector<Polynomial> chain;
};

/// The fixed point of J_0 = (I^[p] : I), J_(k+1) = J_k + theta(F_*J_k cap Ker u).
struct IInftyStabilized {
  std::vector<Polynomial> generators;
  unsigned iterations = 0;
  bool inside_frobenius_max = true;
};

enum class NonQfsTest {
  /// f^(p-2) in m^[p].
  PowerPMinus2,
  /// (f^(p-2), I^[p]) f^(p(p-2)) Delta_1(f) in m^[p^2] and f^(p-1) in m^[p].
  DeltaProduct,
  /// I_inf inside m^[p].
  IInfinity,
};
std::string to_string(NonQfsTest t);

struct NonQfsCertificate {
  NonQfsTest test;
};

/// A user-supplied ideal J with theta(F_*J cap Ker u) + I_1 in J, J in m^[p].
struct FixedPointEnclosure {
  std::vector<Polynomial> generators;
};

struct NoCertificate {};

using Certificate = std::variant<NoCertificate, CoefficientWitness, ChainWitness, IInftyStabilized,
                                 NonQfsCertificate, FixedPointEnclosure>;
std::string certificate_kind(const Certificate& c);

struct HeightResult {
  Verdict verdict = Verdict::Unknown;
  /// Finite: the height. LowerBound: levels 1..n were checked, the height exceeds n.
  unsigned n = 0;
  Certificate certificate;
  std::string route;
  std::string diagnostic;
  GbStats steps;
  double wall_time_ms = 0;
};

/// I_1 = (f^(p-1)) + (f'_1^p, ..., f'_m^p).
Ideal fedder_ideal(const Problem& problem);
/// (I^[p] : I); for a hypersurface this is (f^(p-1)) without a colon computation.
Ideal frobenius_colon(const Problem& problem);

/// F-split iff f^(p-1) lies outside m^[p].
bool fedder_fsplit(const Problem& problem);

/// Whether the graded Calabi-Yau route applies: homogeneous generators with
/// total degree equal to the degree of x_1 ... x_N. Sets `reason` otherwise.
bool graded_cy_applicable(const Problem& problem, const Grading& grading, std::string* reason = nullptr);

/// f_n = f^(p-1) Delta_1(f^(p-1))^(1 + p + ... + p^(n-2)), truncated to
/// exponents <= p^n - 1. With prune_to_target, terms that can no longer reach
/// (x_1...x_N)^(p^n-1) are dropped along the way.
Polynomial cy_chain_polynomial(const Polynomial& f, unsigned n, bool prune_to_target);

HeightResult height_graded_cy(const Problem& problem, const Grading& grading, unsigned n_max);

struct LocalOptions {
  unsigned n_max = 10;
  bool extract_chain = true;
  GbOptions gb = gb_defaults();
};

/// The I_n chain. LowerBound results carry an IInftyStabilized certificate
/// when the chain became stationary inside m^[p].
HeightResult height_local(const Problem& problem, const LocalOptions& options = {});

struct QfsDecision {
  bool quasi_f_split = false;
  /// First level whose ideal leaves m^[p].
  std::optional<unsigned> height;
  IInftyStabilized certificate;
};

/// Iterates until the ideal leaves m^[p] or becomes stationary.
QfsDecision qfs_decide(const Problem& problem, const GbOptions& gb = gb_defaults());

std::optional<NonQfsCertificate> non_qfs_quick(const Problem& problem);

struct Check {
  bool ok = true;
  /// 1-based chain step or generator index of the failure, 0 when global.
  std::size_t step = 0;
  std::string reason;
  explicit operator bool() const { return ok; }
};

Check verify_witness_chain(const Problem& problem, const std::vector<Polynomial>& chain);
Check verify_infinity_certificate(const Problem& problem, const std::vector<Polynomial>& j_generators);
Check verify_coefficient_witness(const Problem& problem, const CoefficientWitness& w);
Check verify_non_qfs(const Problem& problem, const NonQfsCertificate& c);
/// Dispatches on the certificate carried by `result`.
Check verify_result(const Problem& problem, const HeightResult& result);

/// Recovers an explicit chain g_1, ..., g_n for a problem of height n by
/// lifting through the I_n levels.
std::vector<Polynomial> extract_chain(const Problem& problem, unsigned n, const GbOptions& gb = gb_defaults());

/// Ring with the variables of x followed by those of y (names must be disjoint).
RingPtr join_rings(const Ring& x, const Ring& y);
/// Image of a under the inclusion of its ring as the leading (or trailing) block.
Polynomial embed_block(const Polynomial& a, const RingPtr& joint, std::size_t offset);

/// Witness chain for X x Y from a chain for X and the equation f_Y of an
/// F-split factor: F_l = g_l y_l with y_1 = f_Y^(p-1) and
/// y_(l+1) = f_Y^(p-1) u(F_*y_l). Throws InputError when y_n falls in m^[p].
std::vector<Polynomial> product_witness(const std::vector<Polynomial>& gs, const Polynomial& f_y,
                                        const RingPtr& joint);

struct HeightOptions {
  unsigned n_max = 10;
  /// Try the graded Calabi-Yau route (with the standard grading if none given).
  bool graded_route = true;
  bool extract_chain = true;
  /// Also run the local chain when the graded route answered, and compare.
  bool cross_check = false;
  GbOptions gb = gb_defaults();
};

HeightResult height(const Problem& problem, const HeightOptions& options = {});

}  // namespace qfsplit
