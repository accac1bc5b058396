#include "torelli_lab/binform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "torelli_lab/modular.hpp"

namespace torelli {

namespace upoly {

void trim(RationalPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int degree(const RationalPoly& p) { return static_cast<int>(p.size()) - 1; }

bool is_zero(const RationalPoly& p) { return p.empty(); }

bool is_constant(const RationalPoly& p) { return p.size() == 1; }

RationalPoly derivative(const RationalPoly& p) {
  if (p.size() <= 1) return {};
  RationalPoly d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = p[k] * static_cast<long>(k);
  trim(d);
  return d;
}

RationalPoly add(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

RationalPoly sub(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

RationalPoly mul(const RationalPoly& a, const RationalPoly& b) {
  if (a.empty() || b.empty()) return {};
  RationalPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

RationalPoly scale(const RationalPoly& a, const ExactRational& s) {
  if (sgn(s) == 0) return {};
  RationalPoly r = a;
  for (auto& c : r) c *= s;
  return r;
}

std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a,
                                             const RationalPoly& b) {
  if (b.empty()) throw DomainError("polynomial division by zero");
  RationalPoly rem = a;
  trim(rem);
  if (rem.size() < b.size()) return {{}, rem};
  RationalPoly quot(rem.size() - b.size() + 1);
  const ExactRational inv_lead = 1 / b.back();
  while (!rem.empty() && rem.size() >= b.size()) {
    std::size_t shift = rem.size() - b.size();
    ExactRational factor = rem.back() * inv_lead;
    quot[shift] = factor;
    for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] -= factor * b[i];
    rem.pop_back();  // leading term cancels exactly
    trim(rem);
  }
  trim(quot);
  return {quot, rem};
}

RationalPoly monic(const RationalPoly& a) {
  if (a.empty()) return a;
  return scale(a, 1 / a.back());
}

RationalPoly gcd(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly x = a, y = b;
  trim(x);
  trim(y);
  while (!y.empty()) {
    RationalPoly r = divmod(x, y).second;
    x = std::move(y);
    y = monic(r);
  }
  return monic(x);
}

ExactRational eval(const RationalPoly& p, const ExactRational& x) {
  ExactRational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int valuation_at(const RationalPoly& p, const ExactRational& x) {
  if (p.empty()) throw DomainError("valuation of the zero polynomial");
  RationalPoly cur = p;
  int v = 0;
  while (cur.size() > 1) {
    // synthetic division by (z - x)
    RationalPoly q(cur.size() - 1);
    ExactRational carry = 0;
    for (std::size_t i = cur.size(); i-- > 1;) {
      carry = carry * x + cur[i];
      q[i - 1] = carry;
    }
    ExactRational remainder = carry * x + cur[0];
    if (sgn(remainder) != 0) break;
    cur = std::move(q);
    ++v;
  }
  return v;
}

std::vector<std::pair<RationalPoly, int>> squarefree_decomposition(
    const RationalPoly& p) {
  std::vector<std::pair<RationalPoly, int>> out;
  RationalPoly f = p;
  trim(f);
  if (f.size() <= 1) return out;
  RationalPoly fp = derivative(f);
  RationalPoly g = gcd(f, fp);
  RationalPoly c = divmod(f, g).first;
  RationalPoly d = sub(divmod(fp, g).first, derivative(c));
  for (int i = 1; c.size() > 1; ++i) {
    RationalPoly a = gcd(c, d);
    if (a.size() > 1) out.emplace_back(monic(a), i);
    c = divmod(c, a).first;
    d = sub(divmod(d, a).first, derivative(c));
  }
  return out;
}

bool is_squarefree(const RationalPoly& p) {
  if (p.size() <= 2) return true;
  RationalPoly dp = derivative(p);
  if (modular::certify_coprime(p, dp)) return true;
  return gcd(p, dp).size() == 1;
}

bool are_coprime(const RationalPoly& a, const RationalPoly& b) {
  if (a.empty() || b.empty()) {
    throw DomainError("coprimality with the zero polynomial");
  }
  if (a.size() == 1 || b.size() == 1) return true;
  if (modular::certify_coprime(a, b)) return true;
  return gcd(a, b).size() == 1;
}

}  // namespace upoly

ComplexForm to_complex(const RationalForm& f) {
  std::vector<Complex> c;
  c.reserve(f.coeffs().size());
  for (const auto& r : f.coeffs()) c.emplace_back(r.get_d(), 0.0);
  return ComplexForm(std::move(c));
}

RationalPoly affine_poly(const RationalForm& f) {
  RationalPoly p = f.coeffs();
  upoly::trim(p);
  return p;
}

ProjectivePointP1::ProjectivePointP1(Complex z0, Complex z1) {
  const double n = std::hypot(std::abs(z0), std::abs(z1));
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw DomainError("projective point needs finite, not both zero coordinates");
  }
  z0 /= n;
  z1 /= n;
  const Complex lead = std::abs(z0) > 0.0 ? z0 : z1;
  const Complex phase = std::conj(lead) / std::abs(lead);
  z0_ = z0 * phase;
  z1_ = z1 * phase;
  if (std::abs(z0) > 0.0) {
    z0_ = Complex(std::abs(z0), 0.0);
  } else {
    z0_ = Complex(0.0);
    z1_ = Complex(1.0);
  }
}

Complex ProjectivePointP1::affine_coordinate() const {
  if (is_infinity()) throw DomainError("affine coordinate of the point at infinity");
  return z1_ / z0_;
}

double chordal_distance(const ProjectivePointP1& p, const ProjectivePointP1& q) {
  return std::min(1.0, std::abs(p.z0() * q.z1() - p.z1() * q.z0()));
}

int DivisorP1::degree() const {
  int d = 0;
  for (const auto& p : points) d += p.multiplicity;
  return d;
}

Complex eval(const ComplexForm& f, const ProjectivePointP1& p) {
  // Horner in the ratio, scaled by powers of the dominant coordinate.
  const int d = f.degree();
  const Complex z0 = p.z0(), z1 = p.z1();
  Complex acc(0.0);
  if (std::abs(z0) >= std::abs(z1)) {
    const Complex r = z1 / z0;
    for (int k = d; k >= 0; --k) acc = acc * r + f[k];
    return acc * std::pow(z0, d);
  }
  const Complex r = z0 / z1;
  for (int k = 0; k <= d; ++k) acc = acc * r + f[k];
  return acc * std::pow(z1, d);
}

Complex eval(const RationalForm& f, const ProjectivePointP1& p) {
  return eval(to_complex(f), p);
}

namespace {

// p(z)/p'(z), evaluated through the reversed polynomial when |z| > 1.
Complex newton_ratio(std::span<const Complex> a, Complex z) {
  const int n = static_cast<int>(a.size()) - 1;
  if (std::abs(z) <= 1.0) {
    Complex p = a[n], dp = 0.0;
    for (int k = n - 1; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + a[k];
    }
    return p / dp;
  }
  const Complex w = 1.0 / z;
  Complex r = a[0], dr = 0.0;
  for (int k = 1; k <= n; ++k) {
    dr = dr * w + r;
    r = r * w + a[k];
  }
  // p'/p = w (n - w r'/r)
  return 1.0 / (w * (static_cast<double>(n) - w * dr / r));
}

}  // namespace

std::vector<Complex> aberth_roots(std::span<const Complex> ascending,
                                  const AberthOptions& opts) {
  std::size_t lo = 0;
  while (lo < ascending.size() && ascending[lo] == Complex(0.0)) ++lo;
  std::size_t hi = ascending.size();
  while (hi > lo && ascending[hi - 1] == Complex(0.0)) --hi;
  if (hi == lo) throw DomainError("roots of the zero polynomial");
  if (hi != ascending.size()) {
    throw DomainError("aberth_roots needs a nonzero leading coefficient");
  }
  std::vector<Complex> roots(lo, Complex(0.0));
  std::span<const Complex> a = ascending.subspan(lo, hi - lo);
  const int n = static_cast<int>(a.size()) - 1;
  if (n == 0) return roots;
  if (n == 1) {
    roots.push_back(-a[0] / a[1]);
    return roots;
  }

  const double radius = std::pow(std::abs(a[0]) / std::abs(a[n]), 1.0 / n);
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n + 0.4;
    const double rk = radius * (1.0 + 0.01 * std::sin(3.1 * k));
    z[k] = std::polar(rk, angle);
  }

  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    bool all_done = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      const Complex ratio = newton_ratio(a, z[i]);
      Complex sum = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      }
      Complex step = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
        step = Complex(1e-8 * (1.0 + std::abs(z[i])), 0.0);
      }
      z[i] -= step;
      if (std::abs(step) <= opts.step_tol * std::max(std::abs(z[i]), 1e-300)) {
        done[i] = true;
      } else {
        all_done = false;
      }
    }
    if (all_done) break;
  }
  for (int i = 0; i < n; ++i) {
    for (int polish = 0; polish < 2; ++polish) {
      const Complex ratio = newton_ratio(a, z[i]);
      if (std::isfinite(ratio.real()) && std::isfinite(ratio.imag()) &&
          std::abs(ratio) < 1e-6 * (1.0 + std::abs(z[i]))) {
        z[i] -= ratio;
      }
    }
    if (!std::isfinite(z[i].real()) || !std::isfinite(z[i].imag())) {
      throw NumericalError("aberth iteration diverged");
    }
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

namespace {

void append_roots(DivisorP1& out, const std::vector<Complex>& roots, int mult) {
  for (const Complex& r : roots) {
    out.points.push_back({ProjectivePointP1::affine(r), mult});
  }
}

}  // namespace

DivisorP1 roots_projective(const RationalForm& f) {
  if (f.is_zero()) throw DomainError("roots of the zero form");
  DivisorP1 out;
  if (int inf = f.multiplicity_at_infinity(); inf > 0) {
    out.points.push_back({ProjectivePointP1::infinity(), inf});
  }
  RationalPoly p = affine_poly(f);
  std::size_t zeros = 0;
  while (zeros < p.size() && sgn(p[zeros]) == 0) ++zeros;
  if (zeros > 0) {
    out.points.push_back({ProjectivePointP1::affine(0.0), static_cast<int>(zeros)});
    p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(zeros));
  }
  if (p.size() <= 1) return out;

  std::vector<std::pair<RationalPoly, int>> factors;
  if (upoly::is_squarefree(p)) {
    factors.emplace_back(upoly::monic(p), 1);
  } else {
    factors = upoly::squarefree_decomposition(p);
  }
  for (const auto& [factor, mult] : factors) {
    std::vector<Complex> c;
    c.reserve(factor.size());
    for (const auto& r : factor) c.emplace_back(r.get_d(), 0.0);
    append_roots(out, aberth_roots(c), mult);
  }
  return out;
}

DivisorP1 roots_projective(const ComplexForm& f, double cluster_tol) {
  if (f.is_zero()) throw DomainError("roots of the zero form");
  DivisorP1 raw;
  if (int inf = f.multiplicity_at_infinity(); inf > 0) {
    raw.points.push_back({ProjectivePointP1::infinity(), inf});
  }
  const int ad = f.affine_degree();
  if (ad > 0) {
    std::vector<Complex> c(f.coeffs().begin(), f.coeffs().begin() + ad + 1);
    append_roots(raw, aberth_roots(c), 1);
  }

  // single-linkage clustering in chordal distance
  const std::size_t n = raw.points.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (chordal_distance(raw.points[i].point, raw.points[j].point) < cluster_tol) {
        parent[find(i)] = find(j);
      }
    }
  }
  DivisorP1 out;
  std::vector<int> slot(n, -1);
  std::vector<Complex> sum0(n), sum1(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.points.size());
      out.points.push_back({raw.points[i].point, 0});
    }
    auto& dp = out.points[static_cast<std::size_t>(slot[r])];
    dp.multiplicity += raw.points[i].multiplicity;
    sum0[r] += raw.points[i].point.z0() * static_cast<double>(raw.points[i].multiplicity);
    sum1[r] += raw.points[i].point.z1() * static_cast<double>(raw.points[i].multiplicity);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (slot[i] >= 0 && find(i) == i) {
      out.points[static_cast<std::size_t>(slot[i])].point =
          ProjectivePointP1(sum0[i], sum1[i]);
    }
  }
  return out;
}

bool form_is_squarefree(const RationalForm& f) {
  if (f.is_zero()) throw DomainError("squarefree test of the zero form");
  if (f.multiplicity_at_infinity() > 1) return false;
  return upoly::is_squarefree(affine_poly(f));
}

bool forms_are_coprime(const RationalForm& f, const RationalForm& g) {
  if (f.is_zero() || g.is_zero()) throw DomainError("coprimality with the zero form");
  if (f.multiplicity_at_infinity() > 0 && g.multiplicity_at_infinity() > 0) {
    return false;
  }
  return upoly::are_coprime(affine_poly(f), affine_poly(g));
}

std::pair<bool, bool> squarefree_and_coprime(const RationalForm& f,
                                             const RationalForm& g) {
  return {form_is_squarefree(f), forms_are_coprime(f, g)};
}

}  // namespace torelli
