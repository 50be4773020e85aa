#pragma once

// Univariate polynomials over F_p, coefficients stored low degree first with
// no trailing zeros (the zero polynomial is empty).

#include <vector>

#include "gmorita/field.hpp"

namespace gmorita::poly {

using Poly = std::vector<Scalar>;

void trim(Poly& f);
Poly mul(const PrimeField& F, const Poly& a, const Poly& b);
Poly sub(const PrimeField& F, const Poly& a, const Poly& b);
Poly mod(const PrimeField& F, Poly a, const Poly& m);
Poly divide(const PrimeField& F, Poly a, const Poly& m);
Poly monic(const PrimeField& F, Poly f);
Poly gcd(const PrimeField& F, Poly a, Poly b);
Poly powmod(const PrimeField& F, Poly base, std::uint64_t e, const Poly& m);
Scalar eval(const PrimeField& F, const Poly& f, Scalar x);

/// All roots of f in F_p, sorted, assuming f is squarefree. Throws if f does not
/// split into distinct linear factors.
std::vector<Scalar> split_roots(const PrimeField& F, const Poly& f);

} // namespace gmorita::poly
