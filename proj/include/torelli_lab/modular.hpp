#pragma once

// Coprimality certificates by reduction modulo word-size primes. A gcd of
// degree 0 modulo p, with both leading coefficients surviving reduction,
// proves the gcd over Q is constant. Any other outcome is inconclusive.

#include "torelli_lab/binform.hpp"

namespace torelli::modular {

// true: certified coprime over Q. false: no certificate found.
bool certify_coprime(const RationalPoly& a, const RationalPoly& b);

}  // namespace torelli::modular
