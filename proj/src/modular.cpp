#include "torelli_lab/modular.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace torelli::modular {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr std::array<u64, 3> kPrimes = {
    2305843009213693951ULL,  // 2^61 - 1
    4611686018427387847ULL,  // largest prime below 2^62
    1000000000000000003ULL,
};

u64 mulmod(u64 a, u64 b, u64 p) {
  return static_cast<u64>(static_cast<u128>(a) * b % p);
}

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

u64 reduce(const mpz_class& z, u64 p) {
  mpz_class r;
  mpz_class pz;
  mpz_import(pz.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &p);
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), pz.get_mpz_t());
  u64 out = 0;
  std::size_t count = 0;
  mpz_export(&out, &count, 1, sizeof(u64), 0, 0, r.get_mpz_t());
  return count == 0 ? 0 : out;
}

// Reduction of a rational polynomial; nullopt if some denominator vanishes
// mod p. Trailing zeros are kept so the caller can compare degrees.
std::optional<std::vector<u64>> reduce(const RationalPoly& f, u64 p) {
  std::vector<u64> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    u64 den = reduce(f[i].get_den(), p);
    if (den == 0) return std::nullopt;
    out[i] = mulmod(reduce(f[i].get_num(), p), invmod(den, p), p);
  }
  return out;
}

void trim(std::vector<u64>& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Degree of gcd over F_p.
int gcd_degree(std::vector<u64> a, std::vector<u64> b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a <- a mod b
    u64 inv_lead = invmod(b.back(), p);
    while (a.size() >= b.size()) {
      u64 factor = mulmod(a.back(), inv_lead, p);
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) {
        u64 sub = mulmod(factor, b[i], p);
        u64& slot = a[shift + i];
        slot = slot >= sub ? slot - sub : slot + (p - sub);
      }
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

}  // namespace

bool certify_coprime(const RationalPoly& a, const RationalPoly& b) {
  if (a.empty() || b.empty()) return false;
  for (u64 p : kPrimes) {
    auto ra = reduce(a, p);
    auto rb = reduce(b, p);
    if (!ra || !rb) continue;
    if (ra->back() == 0 || rb->back() == 0) continue;  // degree dropped
    if (gcd_degree(*ra, *rb, p) == 0) return true;
  }
  return false;
}

}  // namespace torelli::modular
