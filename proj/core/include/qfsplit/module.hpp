#pragma once

#include "qfsplit/frobenius.hpp"
#include "qfsplit/groebner.hpp"

#include <vector>

namespace qfsplit {

/// Position-over-term order on the free module indexed by residues: positions
/// compare lexicographically (so the u-position (p-1, ..., p-1) is the
/// greatest), ties by grevlex inside the position.
struct ModuleOrder {
  MonomialOrder base = MonomialOrder::grevlex();
};

struct ModuleTerm {
  Monomial position;
  Term term;
};

/// Leading (position, term) of a nonzero vector.
ModuleTerm module_leading_term(const FreeModuleVector& v);

/// Groebner basis of a submodule under the position-over-term order.
std::vector<FreeModuleVector> module_buchberger(const std::vector<FreeModuleVector>& gens,
                                                const ModuleOrder& order = {},
                                                const GbOptions& options = gb_defaults());

/// Remainder of v after division by a module Groebner basis.
FreeModuleVector module_normal_form(const FreeModuleVector& v,
                                    const std::vector<FreeModuleVector>& gb);

/// Generators of F_*I as a module: F_*(x^beta g) for every residue beta and
/// every generator g of the reduced basis of I.
std::vector<FreeModuleVector> frobenius_module_generators(const Ideal& ideal);

/// Generators of F_*I cap Ker(u), computed by the syzygy route: a Groebner
/// basis of the u-components carrying the full vectors along, with every
/// reduction to zero and every coprime pair contributing a kernel vector.
std::vector<FreeModuleVector> frobenius_module_intersect_keru(const Ideal& ideal,
                                                              const GbOptions& options = gb_defaults());

/// Same intersection by a full module Groebner basis, keeping the members
/// whose u-component vanishes. Slower; used to cross-check the syzygy route.
std::vector<FreeModuleVector> frobenius_module_intersect_keru_pot(const Ideal& ideal,
                                                                  const GbOptions& options = gb_defaults());

/// theta images of generators of F_*I cap Ker(u), deduplicated, in the order
/// they were found. With keep_preimages, preimages[i] is the element h of I
/// with F_*h the kernel generator and theta(F_*h) = images[i].
struct KernelThetaImages {
  std::vector<Polynomial> images;
  std::vector<Polynomial> preimages;
};

KernelThetaImages theta_of_frobenius_kernel(const Ideal& ideal, const ThetaMap& theta,
                                            bool keep_preimages,
                                            const GbOptions& options = gb_defaults());

}  // namespace qfsplit
