#pragma once

// Buchberger core shared by plain bases, the Ker(u) intersection and lifting.
// Every basis element carries a payload that follows it through S-pairs and
// reductions; the payload type supplies the matching linear operations.

#include "qfsplit/groebner.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>
#include <unordered_set>

namespace qfsplit::detail {

using TermVec = std::vector<Term>;

TermVec to_ordered(const Polynomial& a, const MonomialOrder& order);
Polynomial from_ordered(const RingPtr& ring, TermVec terms, const MonomialOrder& order);

/// out = a[a_from..] - c * q * g[g_from..], all sorted descending by `order`.
void merge_sub(const TermVec& a, std::size_t a_from, Coeff c, const Monomial& q, const TermVec& g,
               std::size_t g_from, const PrimeField& field, const MonomialOrder& order, TermVec& out);

/// Throws std::logic_error unless every S-polynomial of `basis` reduces to zero.
void check_postcondition(const std::vector<TermVec>& basis, const RingPtr& ring, const MonomialOrder& order);

struct NoPayload {
  NoPayload times_term(Coeff, const Monomial&) const { return {}; }
  void sub_scaled(Coeff, const Monomial&, const NoPayload&) {}
  void scale(Coeff) {}
};

template <class Payload>
struct GbElement {
  TermVec poly;  // monic, sorted by the engine order
  Payload payload;
  std::uint64_t mask = 0;
  bool redundant = false;
  const Monomial& lm() const { return poly.front().mono; }
};

template <class Payload>
class GbEngine {
 public:
  GbEngine(RingPtr ring, MonomialOrder order, const GbOptions& options)
      : ring_(std::move(ring)), field_(ring_->field), order_(order), options_(options) {}

  /// Called with the payload of every input or S-polynomial reducing to zero.
  std::function<void(Payload&&)> on_zero;
  /// When set, called for coprime pairs (i, j) instead of dropping them silently.
  std::function<void(std::size_t, std::size_t)> on_coprime;

  const MonomialOrder& order() const { return order_; }
  const PrimeField& field() const { return field_; }
  std::vector<GbElement<Payload>>& elements() { return elements_; }
  std::uint64_t steps() const { return steps_; }

  void add(TermVec poly, Payload payload) {
    reduce(poly, payload);
    if (poly.empty()) {
      if (on_zero) on_zero(std::move(payload));
      return;
    }
    insert(std::move(poly), std::move(payload));
  }

  void run() {
    while (!pending_.empty()) {
      Pair pr = pending_.top();
      pending_.pop();
      pending_keys_.erase(key(pr.i, pr.j));
      if (chain_criterion(pr)) continue;
      charge();
      ++gb_stats().pairs;
      const auto& gi = elements_[pr.i];
      const auto& gj = elements_[pr.j];
      const Monomial qi = pr.lcm.quotient(gi.lm());
      const Monomial qj = pr.lcm.quotient(gj.lm());
      TermVec s;
      {
        TermVec left;
        left.reserve(gi.poly.size());
        for (std::size_t k = 1; k < gi.poly.size(); ++k) left.push_back({gi.poly[k].mono * qi, gi.poly[k].coeff});
        merge_sub(left, 0, 1, qj, gj.poly, 1, field_, order_, s);
      }
      Payload payload = gi.payload.times_term(1, qi);
      payload.sub_scaled(1, qj, gj.payload);
      add(std::move(s), std::move(payload));
    }
  }

  /// Full reduction by the non-redundant elements, tracking the payload.
  void reduce(TermVec& f, Payload& payload) {
    TermVec rem;
    TermVec buf;
    std::size_t pos = 0;
    while (pos < f.size()) {
      const std::ptrdiff_t idx = find_divisor(f[pos].mono);
      if (idx < 0) {
        rem.push_back(std::move(f[pos]));
        ++pos;
        continue;
      }
      charge();
      ++gb_stats().reductions;
      const auto& g = elements_[static_cast<std::size_t>(idx)];
      const Monomial q = f[pos].mono.quotient(g.lm());
      const Coeff c = f[pos].coeff;
      merge_sub(f, pos + 1, c, q, g.poly, 1, field_, order_, buf);
      std::swap(f, buf);
      pos = 0;
      payload.sub_scaled(c, q, g.payload);
    }
    f = std::move(rem);
  }

  /// The current basis without redundant elements, as stored.
  std::vector<TermVec> basis_polys() const {
    std::vector<TermVec> out;
    for (const auto& e : elements_) {
      if (!e.redundant) out.push_back(e.poly);
    }
    return out;
  }

  /// Minimal, tail-reduced, ascending-sorted basis (payloads dropped).
  std::vector<TermVec> reduced_basis() {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (!elements_[i].redundant) keep.push_back(i);
    }
    std::vector<TermVec> out;
    for (std::size_t i : keep) {
      TermVec tail(elements_[i].poly.begin() + 1, elements_[i].poly.end());
      Payload scratch;
      reduce(tail, scratch);
      TermVec full;
      full.reserve(tail.size() + 1);
      full.push_back(elements_[i].poly.front());
      for (auto& t : tail) full.push_back(std::move(t));
      out.push_back(std::move(full));
    }
    std::sort(out.begin(), out.end(), [&](const TermVec& a, const TermVec& b) {
      return order_.compare(a.front().mono, b.front().mono) < 0;
    });
    return out;
  }

 private:
  struct Pair {
    std::size_t i;
    std::size_t j;
    Monomial lcm;
  };

  struct PairLater {
    const MonomialOrder* order;
    bool operator()(const Pair& a, const Pair& b) const {
      if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() > b.lcm.degree();
      const int c = order->compare(a.lcm, b.lcm);
      if (c != 0) return c > 0;
      if (a.j != b.j) return a.j > b.j;
      return a.i > b.i;
    }
  };

  static std::uint64_t key(std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(j);
  }

  void charge() {
    if (++steps_ > options_.step_budget) {
      std::ostringstream msg;
      msg << "Groebner step budget of " << options_.step_budget << " exceeded (basis size "
          << elements_.size() << ", pending pairs " << pending_.size() << ")";
      throw GbBudgetExceeded(msg.str());
    }
  }

  std::ptrdiff_t find_divisor(const Monomial& m) const {
    const std::uint64_t mask = m.support_mask();
    for (std::size_t k = 0; k < elements_.size(); ++k) {
      const auto& g = elements_[k];
      if (g.redundant || (g.mask & ~mask) != 0) continue;
      if (g.lm().divides(m)) return static_cast<std::ptrdiff_t>(k);
    }
    return -1;
  }

  void insert(TermVec poly, Payload payload) {
    const Coeff lead = poly.front().coeff;
    if (lead != 1) {
      const Coeff inv = field_.inv(lead);
      for (Term& t : poly) t.coeff = field_.mul(t.coeff, inv);
      payload.scale(inv);
    }
    const std::size_t k = elements_.size();
    GbElement<Payload> e;
    e.mask = poly.front().mono.support_mask();
    e.poly = std::move(poly);
    e.payload = std::move(payload);
    for (auto& g : elements_) {
      if (!g.redundant && e.lm().divides(g.lm())) g.redundant = true;
    }
    elements_.push_back(std::move(e));
    const Monomial& lk = elements_[k].lm();
    for (std::size_t i = 0; i < k; ++i) {
      const Monomial& li = elements_[i].lm();
      if (coprime(li, lk)) {
        if (on_coprime) on_coprime(i, k);
        continue;
      }
      pending_.push(Pair{i, k, lcm(li, lk)});
      pending_keys_.insert(key(i, k));
    }
  }

  // Buchberger's second criterion: some other leading monomial divides the
  // lcm and both connecting pairs are already treated.
  bool chain_criterion(const Pair& pr) const {
    for (std::size_t k = 0; k < elements_.size(); ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!elements_[k].lm().divides(pr.lcm)) continue;
      if (pending_keys_.count(key(pr.i, k)) || pending_keys_.count(key(k, pr.j))) continue;
      return true;
    }
    return false;
  }

  RingPtr ring_;
  const PrimeField& field_;
  MonomialOrder order_;
  GbOptions options_;
  std::uint64_t steps_ = 0;
  std::vector<GbElement<Payload>> elements_;
  std::priority_queue<Pair, std::vector<Pair>, PairLater> pending_{PairLater{&order_}};
  std::unordered_set<std::uint64_t> pending_keys_;
};

}  // namespace qfsplit::detail
