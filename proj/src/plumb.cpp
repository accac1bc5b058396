#include "torelli_lab/plumb.hpp"

#include <random>

#include "torelli_lab/error.hpp"

namespace torelli {

namespace {

constexpr int kLow = JetSeries::kDefaultLowCut;
constexpr int kHigh = JetSeries::kDefaultHighCut;
constexpr int kSlack = 2;

JetSeries mono(const ExactRational& c, int e, int t_order = 0) {
  return JetSeries::monomial(c, e, t_order, kLow, kHigh);
}

void require_window(int max_order) {
  // the chain reaches q^{max_order} at the top and q^{-3} at the bottom
  if (max_order + kSlack > kHigh || -3 - kSlack < kLow) {
    throw WindowError("window overflow: order " + std::to_string(max_order) +
                      " needs exponents up to " + std::to_string(max_order + kSlack));
  }
}

CheckResult compare(const JetSeries& got, const JetSeries& want,
                    const std::string& what) {
  CheckResult r;
  for (int e = kLow; e <= kHigh; ++e) {
    if (got.coefficient(e, 0) != want.coefficient(e, 0) ||
        got.coefficient(e, 1) != want.coefficient(e, 1)) {
      r.pass = false;
      r.first_discrepant_exponent = e;
      r.detail = what + ": q^" + std::to_string(e) + " chain " +
                 got.coefficient(e, 0).get_str() + " vs closed form " +
                 want.coefficient(e, 0).get_str();
      return r;
    }
  }
  return r;
}

}  // namespace

ExactRational JetCoefficients::at(int m, int n) const {
  auto it = b.find({m, n});
  return it == b.end() ? ExactRational(0) : it->second;
}

void JetCoefficients::set(int m, int n, const ExactRational& value) {
  if (m < 0 || n < 0 || m + n > max_order) {
    throw DomainError("jet index (" + std::to_string(m) + ", " + std::to_string(n) +
                      ") outside m, n >= 0, m + n <= " + std::to_string(max_order));
  }
  if (sgn(value) == 0) {
    b.erase({m, n});
  } else {
    b[{m, n}] = value;
  }
}

JetCoefficients JetCoefficients::scaled(const ExactRational& c) const {
  JetCoefficients out;
  out.max_order = max_order;
  for (const auto& [mn, v] : b) out.set(mn.first, mn.second, c * v);
  return out;
}

JetCoefficients random_jet(std::uint64_t seed, int max_order) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-9, 9);
  JetCoefficients b;
  b.max_order = max_order;
  for (int m = 0; m <= max_order; ++m) {
    for (int n = 0; m + n <= max_order; ++n) b.set(m, n, coeff(rng));
  }
  return b;
}

ResiduePair residue_pair(const JetCoefficients& b) {
  require_window(b.max_order);
  const JetSeries q = mono(1, 1);
  const JetSeries t_over_q2 = mono(1, -2, 1);
  const JetSeries v = q * sqrt_one_minus(t_over_q2);

  JetSeries sum(kLow, kHigh);
  for (const auto& [mn, c] : b.b) {
    const auto [m, n] = mn;
    sum = sum + c * (mono(1, m) * pow(v, n - 1));
  }
  const JetSeries omega_t = ExactRational(-1, 2) * ((q + v) * sum);
  return {omega_t.t0_part(), omega_t.t1_part()};
}

ClosedForms closed_forms(const JetCoefficients& b) {
  require_window(b.max_order);
  ClosedForms cf{JetSeries(kLow, kHigh), JetSeries(kLow, kHigh)};
  for (const auto& [mn, c] : b.b) {
    const auto [m, n] = mn;
    cf.omega.add_term(m + n, 0, -c);
    cf.eta.add_term(m + n - 2, 0, ExactRational(2 * n - 1, 4) * c);
  }
  return cf;
}

CheckResult check_closed_forms(const JetCoefficients& b) {
  const ResiduePair chain = residue_pair(b);
  const ClosedForms cf = closed_forms(b);
  CheckResult r = compare(chain.omega, cf.omega, "omega");
  if (!r.pass) return r;
  return compare(chain.eta, cf.eta, "eta");
}

CheckResult check_leading_term(const JetCoefficients& b) {
  const ResiduePair chain = residue_pair(b);
  const ExactRational omega_a = -b.at(0, 0);
  const ExactRational want = ExactRational(1, 4) * omega_a;
  CheckResult r;
  const ExactRational got = chain.eta.coefficient(-2, 0);
  if (got != want) {
    r.pass = false;
    r.first_discrepant_exponent = -2;
    r.detail = "leading coefficient " + got.get_str() + " vs 1/4 omega(a) = " +
               want.get_str();
  }
  for (int e = kLow; e < -2; ++e) {
    if (sgn(chain.eta.coefficient(e, 0)) != 0) {
      r.pass = false;
      r.first_discrepant_exponent = e;
      r.detail = "eta has a pole of order > 2";
      break;
    }
  }
  return r;
}

ExactRational residue_coefficient(const JetCoefficients& b) {
  return residue_pair(b).eta.coefficient(-1, 0);
}

CheckResult check_residue_law(const JetCoefficients& b) {
  const ExactRational got = residue_coefficient(b);
  const ExactRational want = (b.at(0, 1) - b.at(1, 0)) / 4;
  CheckResult r;
  if (got != want) {
    r.pass = false;
    r.first_discrepant_exponent = -1;
    r.detail = "residue " + got.get_str() + " vs (b01 - b10)/4 = " + want.get_str();
  }
  return r;
}

ProportionalityResult check_eta_proportionality(
    const std::vector<JetCoefficients>& b_list) {
  ProportionalityResult out;
  std::vector<JetSeries> etas;
  std::optional<JetSeries> eta_a;
  for (const auto& b : b_list) {
    etas.push_back(residue_pair(b).eta);
    out.ratios.push_back(-b.at(0, 0));
    if (!eta_a && sgn(b.at(0, 0)) != 0) {
      eta_a = (1 / out.ratios.back()) * etas.back();
    }
  }
  if (!eta_a) {
    // every omega(a) vanishes: proportionality forces every eta to vanish
    for (std::size_t j = 0; j < etas.size(); ++j) {
      if (!etas[j].is_zero()) {
        out.pass = false;
        out.detail = "entry " + std::to_string(j) + " has omega(a) = 0 but eta != 0";
        return out;
      }
    }
    return out;
  }
  for (std::size_t j = 0; j < etas.size(); ++j) {
    if (!(etas[j] == out.ratios[j] * *eta_a)) {
      out.pass = false;
      out.detail = "entry " + std::to_string(j) + " is not omega(a) * eta_a";
      return out;
    }
  }
  return out;
}

}  // namespace torelli
