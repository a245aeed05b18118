#include "qfsplit/module.hpp"

#include "gb_engine.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <unordered_set>

namespace qfsplit {
namespace {

FreeModuleVector vector_times_term(const FreeModuleVector& v, const Monomial& m, Coeff c) {
  FreeModuleVector out(v.ring_ptr());
  for (const auto& [alpha, h] : v.components()) out.add(alpha, h.times_term(m, c));
  return out;
}

// Payload for the syzygy route: the theta image and/or the reconstructed
// polynomial of the module element riding along with its u-component.
struct FrobTrack {
  std::optional<Polynomial> image;
  std::optional<Polynomial> recon;
  unsigned p = 0;

  FrobTrack times_term(Coeff c, const Monomial& m) const {
    FrobTrack out{std::nullopt, std::nullopt, p};
    if (image) out.image = image->times_term(m, c);
    if (recon) out.recon = recon->times_term(m.pow(p), c);
    return out;
  }
  void sub_scaled(Coeff c, const Monomial& m, const FrobTrack& other) {
    if (image && !other.image->is_zero()) *image -= other.image->times_term(m, c);
    if (recon && !other.recon->is_zero()) *recon -= other.recon->times_term(m.pow(p), c);
  }
  void scale(Coeff c) {
    if (image) image = image->scaled(c);
    if (recon) recon = recon->scaled(c);
  }
  FrobTrack times_poly(const Polynomial& q) const {
    FrobTrack out{std::nullopt, std::nullopt, p};
    if (image) out.image = *image * q;
    if (recon) out.recon = *recon * frobenius_power(q);
    return out;
  }
  void sub(const FrobTrack& other) {
    if (image) *image -= *other.image;
    if (recon) *recon -= *other.recon;
  }
};

// Runs the syzygy route and returns the payloads of the kernel generators.
std::vector<FrobTrack> kernel_payloads(const Ideal& ideal, const ThetaMap* theta, bool keep_recon,
                                       const GbOptions& options) {
  const RingPtr& ring = ideal.ring_ptr();
  const unsigned p = ring->characteristic();
  const std::size_t n = ring->nvars();
  const MonomialOrder order = MonomialOrder::grevlex();

  struct Input {
    Polynomial u;
    FrobTrack track;
  };
  std::vector<Input> inputs;
  const std::vector<Polynomial>& gens = ideal.groebner().elements;
  // Enumerate all residues beta in [0, p-1]^n.
  std::vector<Monomial::Exponent> beta(n, 0);
  for (const Polynomial& g : gens) {
    std::fill(beta.begin(), beta.end(), 0);
    while (true) {
      const Monomial xb{std::span<const Monomial::Exponent>(beta)};
      const Polynomial shifted = g.times_term(xb, 1);
      FrobTrack track{std::nullopt, std::nullopt, p};
      if (theta) track.image = theta->apply(shifted);
      if (keep_recon) track.recon = shifted;
      inputs.push_back({u_map(shifted), std::move(track)});
      std::size_t i = 0;
      while (i < n && beta[i] == static_cast<Monomial::Exponent>(p - 1)) beta[i++] = 0;
      if (i == n) break;
      ++beta[i];
    }
  }
  std::stable_sort(inputs.begin(), inputs.end(), [](const Input& a, const Input& b) {
    return a.u.degree() < b.u.degree();
  });

  std::vector<FrobTrack> kernel;
  detail::GbEngine<FrobTrack> eng(ring, order, options);
  eng.on_zero = [&](FrobTrack&& t) { kernel.push_back(std::move(t)); };
  eng.on_coprime = [&](std::size_t i, std::size_t j) {
    auto& els = eng.elements();
    const Polynomial ui = Polynomial::from_sorted_terms(ring, els[i].poly);
    const Polynomial uj = Polynomial::from_sorted_terms(ring, els[j].poly);
    FrobTrack k = els[i].payload.times_poly(uj);
    k.sub(els[j].payload.times_poly(ui));
    kernel.push_back(std::move(k));
  };
  for (Input& in : inputs) {
    eng.add(detail::to_ordered(in.u, order), std::move(in.track));
  }
  eng.run();
  if (options.verify_postcondition) detail::check_postcondition(eng.basis_polys(), ring, order);
  return kernel;
}

}  // namespace

ModuleTerm module_leading_term(const FreeModuleVector& v) {
  if (v.is_zero()) throw std::invalid_argument("leading term of zero vector");
  const auto& last = *v.components().rbegin();
  return {last.first, last.second.leading_term()};
}

FreeModuleVector module_normal_form(const FreeModuleVector& v, const std::vector<FreeModuleVector>& gb) {
  FreeModuleVector rem(v.ring_ptr());
  FreeModuleVector cur = v;
  while (!cur.is_zero()) {
    const ModuleTerm lt = module_leading_term(cur);
    const PrimeField& field = v.ring_ptr()->field;
    bool reduced = false;
    for (const FreeModuleVector& g : gb) {
      const ModuleTerm gl = module_leading_term(g);
      if (!(gl.position == lt.position) || !gl.term.mono.divides(lt.term.mono)) continue;
      const Coeff c = field.mul(lt.term.coeff, field.inv(gl.term.coeff));
      cur -= vector_times_term(g, lt.term.mono.quotient(gl.term.mono), c);
      reduced = true;
      break;
    }
    if (!reduced) {
      FreeModuleVector single(v.ring_ptr());
      single.add(lt.position, Polynomial::monomial(v.ring_ptr(), lt.term.mono, lt.term.coeff));
      rem += single;
      cur -= single;
    }
  }
  return rem;
}

std::vector<FreeModuleVector> module_buchberger(const std::vector<FreeModuleVector>& gens,
                                                const ModuleOrder& order, const GbOptions& options) {
  if (order.base.kind() != MonomialOrder::Kind::Grevlex) {
    throw std::invalid_argument("module_buchberger supports the grevlex base order");
  }
  std::uint64_t steps = 0;
  auto charge = [&](std::size_t basis, std::size_t pairs) {
    if (++steps > options.step_budget) {
      std::ostringstream msg;
      msg << "module Groebner step budget of " << options.step_budget << " exceeded (basis size " << basis
          << ", pending pairs " << pairs << ")";
      throw GbBudgetExceeded(msg.str());
    }
  };
  // Top-reduce against the current basis.
  std::vector<FreeModuleVector> basis;
  auto top_reduce = [&](FreeModuleVector v, std::size_t pairs) {
    while (!v.is_zero()) {
      const ModuleTerm lt = module_leading_term(v);
      const FreeModuleVector* hit = nullptr;
      for (const FreeModuleVector& g : basis) {
        const ModuleTerm gl = module_leading_term(g);
        if (gl.position == lt.position && gl.term.mono.divides(lt.term.mono)) {
          hit = &g;
          break;
        }
      }
      if (!hit) break;
      charge(basis.size(), pairs);
      const ModuleTerm gl = module_leading_term(*hit);
      const PrimeField& field = v.ring_ptr()->field;
      const Coeff c = field.mul(lt.term.coeff, field.inv(gl.term.coeff));
      v -= vector_times_term(*hit, lt.term.mono.quotient(gl.term.mono), c);
    }
    return v;
  };
  auto normalize = [](FreeModuleVector v) {
    const ModuleTerm lt = module_leading_term(v);
    const Coeff inv = v.ring_ptr()->field.inv(lt.term.coeff);
    if (inv == 1) return v;
    FreeModuleVector out(v.ring_ptr());
    for (const auto& [alpha, h] : v.components()) out.add(alpha, h.scaled(inv));
    return out;
  };

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  auto push = [&](FreeModuleVector v) {
    v = top_reduce(std::move(v), pairs.size());
    if (v.is_zero()) return;
    v = normalize(std::move(v));
    const std::size_t k = basis.size();
    const Monomial pos = module_leading_term(v).position;
    basis.push_back(std::move(v));
    for (std::size_t i = 0; i < k; ++i) {
      if (module_leading_term(basis[i]).position == pos) pairs.emplace_back(i, k);
    }
  };
  for (const FreeModuleVector& g : gens) {
    if (!g.is_zero()) push(g);
  }
  while (!pairs.empty()) {
    auto [i, j] = pairs.front();
    pairs.erase(pairs.begin());
    charge(basis.size(), pairs.size());
    const ModuleTerm li = module_leading_term(basis[i]);
    const ModuleTerm lj = module_leading_term(basis[j]);
    const Monomial l = lcm(li.term.mono, lj.term.mono);
    FreeModuleVector s = vector_times_term(basis[i], l.quotient(li.term.mono), 1);
    s -= vector_times_term(basis[j], l.quotient(lj.term.mono), 1);
    push(std::move(s));
  }
  if (options.verify_postcondition) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = i + 1; j < basis.size(); ++j) {
        const ModuleTerm li = module_leading_term(basis[i]);
        const ModuleTerm lj = module_leading_term(basis[j]);
        if (!(li.position == lj.position)) continue;
        const Monomial l = lcm(li.term.mono, lj.term.mono);
        FreeModuleVector s = vector_times_term(basis[i], l.quotient(li.term.mono), 1);
        s -= vector_times_term(basis[j], l.quotient(lj.term.mono), 1);
        if (!module_normal_form(s, basis).is_zero()) {
          throw std::logic_error("module Groebner postcondition violated");
        }
      }
    }
  }
  return basis;
}

std::vector<FreeModuleVector> frobenius_module_generators(const Ideal& ideal) {
  const RingPtr& ring = ideal.ring_ptr();
  const unsigned p = ring->characteristic();
  const std::size_t n = ring->nvars();
  std::vector<FreeModuleVector> out;
  std::vector<Monomial::Exponent> beta(n, 0);
  for (const Polynomial& g : ideal.groebner().elements) {
    std::fill(beta.begin(), beta.end(), 0);
    while (true) {
      const Monomial xb{std::span<const Monomial::Exponent>(beta)};
      out.push_back(frobenius_decompose(g.times_term(xb, 1)));
      std::size_t i = 0;
      while (i < n && beta[i] == static_cast<Monomial::Exponent>(p - 1)) beta[i++] = 0;
      if (i == n) break;
      ++beta[i];
    }
  }
  return out;
}

std::vector<FreeModuleVector> frobenius_module_intersect_keru(const Ideal& ideal, const GbOptions& options) {
  std::vector<FreeModuleVector> out;
  for (FrobTrack& t : kernel_payloads(ideal, nullptr, true, options)) {
    if (!t.recon->is_zero()) out.push_back(frobenius_decompose(*t.recon));
  }
  return out;
}

std::vector<FreeModuleVector> frobenius_module_intersect_keru_pot(const Ideal& ideal,
                                                                  const GbOptions& options) {
  const Monomial top = top_residue(ideal.ring());
  std::vector<FreeModuleVector> out;
  for (FreeModuleVector& v : module_buchberger(frobenius_module_generators(ideal), {}, options)) {
    if (v.component(top).is_zero()) out.push_back(std::move(v));
  }
  return out;
}

KernelThetaImages theta_of_frobenius_kernel(const Ideal& ideal, const ThetaMap& theta, bool keep_preimages,
                                            const GbOptions& options) {
  KernelThetaImages out;
  std::unordered_set<std::string> seen;
  for (FrobTrack& t : kernel_payloads(ideal, &theta, keep_preimages, options)) {
    if (t.image->is_zero()) continue;
    Polynomial img = *t.image;
    const Coeff inv = img.field().inv(img.leading_term().coeff);
    if (!keep_preimages) {
      img = img.scaled(inv);
      if (!seen.insert(img.to_string()).second) continue;
      out.images.push_back(std::move(img));
    } else {
      out.images.push_back(img.scaled(inv));
      out.preimages.push_back(t.recon->scaled(inv));
    }
  }
  return out;
}

}  // namespace qfsplit
