#include "torelli_lab/surface.hpp"

#include <algorithm>
#include <random>

#include "torelli_lab/ramlocus.hpp"

namespace torelli {

Invariants invariants_for(int h, int q) {
  Invariants inv;
  inv.h = h;
  inv.q = q;
  inv.chi = h + 1 - q;
  inv.N = 10 * h + 8 * (1 - q);
  inv.c2 = 12 * inv.chi;
  inv.deg_phi = 24 * inv.chi;
  inv.deg_canonical_curve = h + q - 1;
  inv.inequality_gate = 8 * h > 10 * (q - 1);
  inv.genus_bound = h >= q + 3;
  return inv;
}

WeierstrassSurface::WeierstrassSurface(int dL, RationalForm g4, RationalForm g6, int q)
    : q_(q), dL_(dL), g4_(std::move(g4)), g6_(std::move(g6)) {
  if (q != 0) throw DomainError("base curves of genus q != 0 are unimplemented");
  if (dL < 1) throw DomainError("deg L must be positive");
  if (g4_.degree() != 4 * dL || g6_.degree() != 6 * dL) {
    throw DomainError("g4, g6 must have degrees 4 dL and 6 dL");
  }
}

Invariants invariants(const WeierstrassSurface& s) {
  return invariants_for(s.h(), s.q());
}

RationalForm discriminant(const WeierstrassSurface& s) {
  RationalForm delta = power(s.g4(), 3) - ExactRational(27) * power(s.g6(), 2);
  if (delta.is_zero()) {
    throw DomainError(
        "discriminant vanishes identically (isotrivial or degenerate family)");
  }
  return delta;
}

int FiberReport::total_delta() const {
  int total = 0;
  for (const auto& f : fibers) total += f.delta_val;
  return total;
}

namespace {

std::vector<Complex> numeric_roots(const RationalPoly& monic_factor) {
  std::vector<Complex> c;
  c.reserve(monic_factor.size());
  for (const auto& r : monic_factor) c.emplace_back(r.get_d(), 0.0);
  return aberth_roots(c);
}

void add_fibers(FiberReport& report, const RationalPoly& factor, int mult,
                bool g4_zero) {
  // exact zeros at the origin are split off so the point is exactly 0
  RationalPoly f = factor;
  if (!f.empty() && sgn(f[0]) == 0) {
    f.erase(f.begin());
    report.fibers.push_back({ProjectivePointP1::affine(0.0), mult, g4_zero,
                             g4_zero ? KodairaKind::additive_other : KodairaKind::I_n});
  }
  if (f.size() <= 1) return;
  for (const Complex& z : numeric_roots(upoly::monic(f))) {
    report.fibers.push_back({ProjectivePointP1::affine(z), mult, g4_zero,
                             g4_zero ? KodairaKind::additive_other : KodairaKind::I_n});
  }
}

}  // namespace

FiberReport classify_fibers(const WeierstrassSurface& s) {
  const RationalForm delta = discriminant(s);
  FiberReport report;

  if (int inf = delta.multiplicity_at_infinity(); inf > 0) {
    const bool g4_zero = s.g4().multiplicity_at_infinity() > 0;
    report.fibers.push_back({ProjectivePointP1::infinity(), inf, g4_zero,
                             g4_zero ? KodairaKind::additive_other : KodairaKind::I_n});
  }

  const RationalPoly p = affine_poly(delta);
  const RationalPoly g4 = affine_poly(s.g4());
  std::vector<std::pair<RationalPoly, int>> factors;
  if (upoly::is_squarefree(p)) {
    if (p.size() > 1) factors.emplace_back(upoly::monic(p), 1);
  } else {
    factors = upoly::squarefree_decomposition(p);
  }
  for (const auto& [factor, mult] : factors) {
    if (g4.empty() || !upoly::are_coprime(factor, g4)) {
      const RationalPoly shared = g4.empty() ? factor : upoly::gcd(factor, g4);
      add_fibers(report, shared, mult, true);
      add_fibers(report, upoly::divmod(factor, shared).first, mult, false);
    } else {
      add_fibers(report, factor, mult, false);
    }
  }

  report.all_I1 = std::all_of(report.fibers.begin(), report.fibers.end(),
                              [](const FiberEntry& f) {
                                return f.kodaira == KodairaKind::I_n && f.delta_val == 1;
                              });
  report.I2_count = static_cast<int>(std::count_if(
      report.fibers.begin(), report.fibers.end(), [](const FiberEntry& f) {
        return f.kodaira == KodairaKind::I_n && f.delta_val == 2;
      }));
  return report;
}

namespace {

RationalForm random_form(std::mt19937_64& rng, int degree) {
  std::uniform_int_distribution<int> coeff(-20, 20);
  RationalForm f(degree);
  for (int k = 0; k <= degree; ++k) f[k] = coeff(rng);
  while (sgn(f[degree]) == 0) f[degree] = coeff(rng);
  return f;
}

void require_genus(int h) {
  if (h < 3) {
    throw DomainError("h = " + std::to_string(h) +
                      " fails the gate h >= q + 3 (q = 0)");
  }
}

// Exact genericity test used by the rejection loop; no root finding.
bool exact_general(const WeierstrassSurface& s) {
  const RationalForm delta = power(s.g4(), 3) - ExactRational(27) * power(s.g6(), 2);
  if (delta.is_zero()) return false;
  const RationalForm w = transvectant_first(s.g4(), s.g6());
  if (w.is_zero()) return false;
  return form_is_squarefree(delta) && forms_are_coprime(delta, s.g4()) &&
         form_is_squarefree(w) && forms_are_coprime(w, delta);
}

// Polynomial of degree < 2r with prescribed values and first derivatives,
// solved exactly on the confluent Vandermonde system.
RationalPoly hermite_interpolate(const std::vector<ExactRational>& points,
                                 const std::vector<ExactRational>& values,
                                 const std::vector<ExactRational>& slopes) {
  const std::size_t r = points.size();
  const std::size_t n = 2 * r;
  std::vector<std::vector<ExactRational>> a(n, std::vector<ExactRational>(n + 1));
  for (std::size_t i = 0; i < r; ++i) {
    ExactRational pw = 1;
    for (std::size_t k = 0; k < n; ++k) {
      a[2 * i][k] = pw;
      pw *= points[i];
    }
    pw = 1;
    for (std::size_t k = 1; k < n; ++k) {
      a[2 * i + 1][k] = pw * static_cast<long>(k);
      pw *= points[i];
    }
    a[2 * i][n] = values[i];
    a[2 * i + 1][n] = slopes[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(a[piv][col]) == 0) ++piv;
    if (piv == n) throw DomainError("Hermite system is singular (repeated point?)");
    std::swap(a[piv], a[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || sgn(a[row][col]) == 0) continue;
      ExactRational f = a[row][col] / a[col][col];
      for (std::size_t k = col; k <= n; ++k) a[row][k] -= f * a[col][k];
    }
  }
  RationalPoly out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k][n] / a[k][k];
  upoly::trim(out);
  return out;
}

// H + prod (z - p_i)^2 * R with R random of the remaining degree.
RationalForm hermite_fill(std::mt19937_64& rng, int degree,
                          const std::vector<ExactRational>& points,
                          const std::vector<ExactRational>& values,
                          const std::vector<ExactRational>& slopes) {
  RationalPoly base{1};
  for (const auto& p : points) {
    base = upoly::mul(base, RationalPoly{-p, 1});
    base = upoly::mul(base, RationalPoly{-p, 1});
  }
  const int free_degree = degree - upoly::degree(base);
  const RationalForm fill = random_form(rng, free_degree);
  RationalPoly total = upoly::add(hermite_interpolate(points, values, slopes),
                                  upoly::mul(base, affine_poly(fill)));
  return RationalForm::from_affine(std::move(total), degree);
}

}  // namespace

WeierstrassSurface make_random_general(int h, std::uint64_t seed) {
  require_genus(h);
  const int dL = h + 1;
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
    WeierstrassSurface s(dL, random_form(rng, 4 * dL), random_form(rng, 6 * dL));
    if (exact_general(s)) return s;
  }
  throw NumericalError("make_random_general: rejection budget exhausted");
}

WeierstrassSurface make_with_I2(int h, const std::vector<ExactRational>& points,
                                std::uint64_t seed) {
  require_genus(h);
  if (points.size() > 4) throw DomainError("at most 4 prescribed I2 points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j]) throw DomainError("prescribed I2 points must be distinct");
    }
  }
  const int dL = h + 1;
  // 2r interpolation conditions per form; always satisfiable for h >= 3, r <= 4
  if (2 * static_cast<int>(points.size()) > 4 * dL) {
    throw DomainError("not enough interpolation freedom");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 3), slope(-20, 20);

  for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
    std::vector<ExactRational> a0, a1, b0, b1;
    for (std::size_t i = 0; i < points.size(); ++i) {
      int n = 0;
      while (n == 0) n = num(rng);
      ExactRational s(n, den(rng));
      s.canonicalize();
      ExactRational slope_a = slope(rng);
      a0.push_back(3 * s * s);
      b0.push_back(s * s * s);
      a1.push_back(slope_a);
      b1.push_back(slope_a * s / 2);
    }
    WeierstrassSurface surf(dL, hermite_fill(rng, 4 * dL, points, a0, a1),
                            hermite_fill(rng, 6 * dL, points, b0, b1));

    const RationalForm delta =
        power(surf.g4(), 3) - ExactRational(27) * power(surf.g6(), 2);
    if (delta.is_zero()) continue;
    const RationalForm w = transvectant_first(surf.g4(), surf.g6());
    if (w.is_zero()) continue;
    const RationalPoly dp = affine_poly(delta);
    const RationalPoly wp = affine_poly(w);
    bool ok = true;
    for (const auto& p : points) {
      if (upoly::valuation_at(dp, p) != 2 || upoly::valuation_at(wp, p) < 1) {
        ok = false;
        break;
      }
    }
    if (ok) return surf;
  }
  throw NumericalError("make_with_I2: rejection budget exhausted");
}

}  // namespace torelli
