#include "qfsplit/strata.hpp"

#include "qfsplit/frobenius.hpp"
#include "qfsplit/witt.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <ostream>
#include <random>

namespace qfsplit {
namespace {

std::vector<std::string> base_names(std::size_t n) {
  static const char* small[] = {"x", "y", "z", "w"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(n <= 4 ? std::string(small[i]) : "x" + std::to_string(i + 1));
  return out;
}

void enumerate_monomials(std::size_t n, std::int64_t degree, std::vector<Monomial>& out) {
  std::vector<Monomial::Exponent> e(n, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i + 1 == n) {
      e[i] = static_cast<Monomial::Exponent>(left);
      out.emplace_back(std::span<const Monomial::Exponent>(e));
      return;
    }
    for (std::int64_t k = left; k >= 0; --k) {
      e[i] = static_cast<Monomial::Exponent>(k);
      rec(i + 1, left - k);
    }
  };
  rec(0, degree);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return grevlex_compare(a, b) > 0; });
}

}  // namespace

FamilyContext::FamilyContext(std::uint32_t p, std::size_t n)
    : p_(p), n_(n), generic_(make_ring(p, {"_"})) {
  if (n == 0) throw InputError("family needs at least one variable");
  enumerate_monomials(n, static_cast<std::int64_t>(n), monomials_);
  std::vector<std::string> names = base_names(n);
  base_ring_ = make_ring(p, names);
  for (std::size_t i = 0; i < monomials_.size(); ++i) names.push_back("a" + std::to_string(i));
  family_ring_ = make_ring(p, names);
  std::vector<Term> terms;
  const std::size_t total = family_ring_->nvars();
  for (std::size_t i = 0; i < monomials_.size(); ++i) {
    Monomial m(total);
    for (std::size_t v = 0; v < n; ++v) m.set(v, monomials_[i][v]);
    m.set(n + i, 1);
    terms.push_back({std::move(m), 1});
  }
  generic_ = Polynomial::from_terms(family_ring_, std::move(terms));
}

std::optional<std::size_t> FamilyContext::index_of(const Monomial& m) const {
  for (std::size_t i = 0; i < monomials_.size(); ++i) {
    if (monomials_[i] == m) return i;
  }
  return std::nullopt;
}

Polynomial FamilyContext::member(std::span<const Coeff> coeffs) const {
  if (coeffs.size() != monomials_.size()) throw InputError("coefficient vector has the wrong length");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < monomials_.size(); ++i) {
    const Coeff c = base_ring_->field.from_int(static_cast<std::int64_t>(coeffs[i]));
    if (c != 0) terms.push_back({monomials_[i], c});
  }
  return Polynomial::from_terms(base_ring_, std::move(terms));
}

bool FamilyContext::in_restricted_subfamily(std::size_t i) const {
  const Monomial& m = monomials_[i];
  return m[0] == 0 || m[0] == static_cast<Monomial::Exponent>(n_);
}

StrataPolynomials strata_polynomials(const FamilyContext& ctx, unsigned h_max) {
  StrataPolynomials out;
  if (h_max <= 1) return out;
  const std::uint32_t p = ctx.p();
  const std::size_t n = ctx.n();
  const RingPtr& ring = ctx.family_ring();
  const std::size_t total = ring->nvars();
  const Polynomial g1 = power(ctx.generic(), p - 1);
  const Polynomial d = delta1_grouped(g1, n);
  constexpr auto kUncapped = std::numeric_limits<Monomial::Exponent>::max();
  for (unsigned level = 1; level < h_max; ++level) {
    std::int64_t q = 1;
    for (unsigned k = 0; k < level; ++k) q *= p;
    if (q - 1 > kUncapped) throw std::overflow_error("level too large");
    const auto top = static_cast<Monomial::Exponent>(q - 1);
    Monomial cap(total);
    for (std::size_t v = 0; v < total; ++v) cap.set(v, v < n ? top : kUncapped);
    std::vector<Polynomial> factors;
    for (unsigned k = 0; k + 2 <= level; ++k) factors.push_back(frobenius_power(d, k));
    // Floor on the x-exponents: what the remaining factors can still add.
    std::vector<std::vector<std::int64_t>> remaining(factors.size() + 1, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = factors.size(); i-- > 0;) {
      const Monomial mx = factors[i].is_zero() ? Monomial(total) : factors[i].max_exponents();
      for (std::size_t v = 0; v < n; ++v) remaining[i][v] = remaining[i + 1][v] + mx[v];
    }
    auto prune = [&](const Polynomial& x, std::size_t next) {
      Monomial floor(total);
      for (std::size_t v = 0; v < n; ++v) {
        floor.set(v, static_cast<Monomial::Exponent>(std::max<std::int64_t>(0, top - remaining[next][v])));
      }
      return box_filter(x, floor, cap);
    };
    Polynomial acc = prune(g1, 0);
    for (std::size_t i = 0; i < factors.size(); ++i) acc = prune(capped_multiply(acc, factors[i], cap), i + 1);
    std::vector<Term> b;
    for (const Term& t : acc.terms()) {
      bool hit = true;
      for (std::size_t v = 0; v < n && hit; ++v) hit = t.mono[v] == top;
      if (!hit) continue;
      Monomial m = t.mono;
      for (std::size_t v = 0; v < n; ++v) m.set(v, 0);
      b.push_back({std::move(m), t.coeff});
    }
    out.b.push_back(Polynomial::from_terms(ring, std::move(b)));
  }
  return out;
}

StrataProfile specialize(const FamilyContext& ctx, const StrataPolynomials& strata, std::span<const Coeff> point) {
  if (point.size() != ctx.size()) throw InputError("point has the wrong length");
  const std::size_t total = ctx.family_ring()->nvars();
  std::vector<Coeff> full(total, 0);
  for (std::size_t i = 0; i < point.size(); ++i) full[ctx.n() + i] = ctx.family_ring()->field.from_int(point[i]);
  StrataProfile prof;
  prof.at_least = 1;
  for (const Polynomial& b : strata.b) {
    const Coeff v = evaluate(b, full);
    prof.values.push_back(v);
    if (prof.exact) continue;
    if (v != 0) {
      prof.exact = true;
    } else {
      ++prof.at_least;
    }
  }
  return prof;
}

bool has_singular_rational_point(const Polynomial& f) {
  const std::size_t n = f.ring().nvars();
  const std::uint32_t p = f.ring().characteristic();
  std::vector<Polynomial> grads;
  for (std::size_t i = 0; i < n; ++i) grads.push_back(derivative(f, i));
  // Projective points: first nonzero coordinate equal to 1.
  std::vector<Coeff> pt(n, 0);
  for (std::size_t lead = 0; lead < n; ++lead) {
    std::fill(pt.begin(), pt.end(), 0);
    pt[lead] = 1;
    const std::size_t free = n - lead - 1;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < free; ++i) count *= p;
    for (std::uint64_t k = 0; k < count; ++k) {
      std::uint64_t r = k;
      for (std::size_t i = lead + 1; i < n; ++i) {
        pt[i] = static_cast<Coeff>(r % p);
        r /= p;
      }
      if (evaluate(f, pt) != 0) continue;
      const bool singular = std::all_of(grads.begin(), grads.end(), [&](const Polynomial& g) { return evaluate(g, pt) == 0; });
      if (singular) return true;
    }
  }
  return false;
}

SearchOutcome search_height(const FamilyContext& ctx, unsigned target_h, const SearchOptions& options) {
  if (target_h == 0) throw InputError("target height must be positive");
  SearchOutcome out;
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<Coeff> dist(0, ctx.p() - 1);
  const StrataPolynomials strata =
      options.prefilter_levels > 1 ? strata_polynomials(ctx, options.prefilter_levels) : StrataPolynomials{};
  for (std::uint64_t s = 0; s < options.samples; ++s) {
    SampleRow row;
    row.coeffs.resize(ctx.size());
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      const bool allowed = !options.restricted_subfamily || ctx.in_restricted_subfamily(i);
      row.coeffs[i] = allowed ? dist(rng) : 0;
    }
    row.profile = specialize(ctx, strata, row.coeffs);
    const Polynomial f = ctx.member(row.coeffs);
    const bool skip_by_profile = row.profile.exact ? row.profile.at_least != target_h : false;
    if (f.is_zero() || skip_by_profile) {
      out.rows.push_back(std::move(row));
      continue;
    }
    if (options.smoothness_check && has_singular_rational_point(f)) {
      row.singular_point = true;
      out.rows.push_back(std::move(row));
      continue;
    }
    const Problem problem(ctx.base_ring(), {f}, Grading::standard(ctx.n()));
    HeightResult r = height_graded_cy(problem, Grading::standard(ctx.n()), target_h);
    if (r.verdict == Verdict::Finite) row.height = r.n;
    const bool hit = r.verdict == Verdict::Finite && r.n == target_h;
    out.rows.push_back(std::move(row));
    if (hit) {
      out.witness = f;
      out.result = std::move(r);
      break;
    }
  }
  return out;
}

void write_rows_csv(std::ostream& out, const FamilyContext& ctx, const std::vector<SampleRow>& rows) {
  out << "sample";
  for (std::size_t i = 0; i < ctx.size(); ++i) out << ",a" << i;
  out << ",profile_at_least,profile_exact,singular_point,height\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const SampleRow& r = rows[k];
    out << k;
    for (Coeff c : r.coeffs) out << ',' << c;
    out << ',' << r.profile.at_least << ',' << (r.profile.exact ? 1 : 0) << ',' << (r.singular_point ? 1 : 0) << ',';
    if (r.height) out << *r.height;
    out << '\n';
  }
}

nlohmann::json rows_to_json(const FamilyContext& ctx, const std::vector<SampleRow>& rows) {
  nlohmann::json monos = nlohmann::json::array();
  for (const Monomial& m : ctx.monomials()) monos.push_back(monomial_to_string(m, *ctx.base_ring()));
  nlohmann::json arr = nlohmann::json::array();
  for (const SampleRow& r : rows) {
    nlohmann::json row{{"coefficients", r.coeffs},
                       {"profile_at_least", r.profile.at_least},
                       {"profile_exact", r.profile.exact},
                       {"singular_point", r.singular_point}};
    row["height"] = r.height ? nlohmann::json(*r.height) : nlohmann::json(nullptr);
    arr.push_back(std::move(row));
  }
  return {{"monomials", monos}, {"rows", arr}};
}

}  // namespace qfsplit
