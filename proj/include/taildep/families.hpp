#pragma once

#include <optional>
#include <string>

#include "taildep/copula.hpp"
#include "taildep/tdf.hpp"

namespace taildep {

// A parsed family expression. Some families are analytic-only (no sampler);
// some lack a closed-form tail dependence function (no analytic measures).
struct FamilyModel {
    std::string canonical;
    std::optional<Copula> copula;
    std::optional<TailDependenceFunction> tdf;
};

// Grammar (case-insensitive, '-' and '_' interchangeable):
//   pi | m | w
//   frechet(alpha,beta) | mo(a,b) | smo(a,b)
//   clayton(theta) | gumbel(theta) | sgumbel(theta)
//   singular(theta) | smix(w1,theta1,w2,theta2) | t(nu,rho)
//   asym_gumbel(alpha,beta,theta) | asym_galambos(alpha,beta,theta)   [analytic only]
//   pickands(path.csv)                                                 [analytic only]
//   rot(sigma1|sigma2|tau|sigma1sigma2, FAMILY)
//   mix(w1,FAMILY; w2,FAMILY; ...)
FamilyModel parse_family(const std::string& text);

} // namespace taildep
