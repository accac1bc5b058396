#include "torelli_lab/scalar_series.hpp"

#include <algorithm>
#include <sstream>

#include "torelli_lab/error.hpp"

namespace torelli {

std::string to_string(const ExactRational& r) { return r.get_str(); }

ExactRational parse_rational(const std::string& text) {
  ExactRational r;
  if (text.empty() || r.set_str(text, 10) != 0) {
    throw DomainError("not a rational number: '" + text + "'");
  }
  if (sgn(r.get_den()) == 0) throw DomainError("zero denominator: " + text);
  r.canonicalize();
  return r;
}

JetSeries::JetSeries(int low_cut, int high_cut)
    : low_cut_(low_cut), high_cut_(high_cut) {
  if (low_cut > high_cut) throw DomainError("empty series window");
}

JetSeries JetSeries::monomial(const ExactRational& c, int exponent,
                              int t_order, int low_cut, int high_cut) {
  JetSeries s(low_cut, high_cut);
  s.add_term(exponent, t_order, c);
  return s;
}

void JetSeries::add_term(int exponent, int t_order, const ExactRational& c) {
  if (t_order != 0 && t_order != 1) {
    throw DomainError("t-order must be 0 or 1");
  }
  if (exponent < low_cut_ || exponent > high_cut_) {
    throw WindowError("exponent " + std::to_string(exponent) +
                      " outside window [" + std::to_string(low_cut_) + ", " +
                      std::to_string(high_cut_) + "]");
  }
  if (t_order == 0) {
    accumulate(exponent, c, ExactRational(0));
  } else {
    accumulate(exponent, ExactRational(0), c);
  }
}

void JetSeries::accumulate(int exponent, const ExactRational& c0,
                           const ExactRational& c1) {
  if (sgn(c0) == 0 && sgn(c1) == 0) return;
  if (exponent > high_cut_) return;
  if (exponent < low_cut_) {
    throw WindowError("window underflow: nonzero term at q^" +
                      std::to_string(exponent) + " below low cut " +
                      std::to_string(low_cut_));
  }
  auto& slot = terms_[exponent];
  slot.c0 += c0;
  slot.c1 += c1;
  if (slot.is_zero()) terms_.erase(exponent);
}

ExactRational JetSeries::coefficient(int exponent, int t_order) const {
  if (t_order != 0 && t_order != 1) {
    throw DomainError("t-order must be 0 or 1");
  }
  if (exponent < low_cut_ || exponent > high_cut_) {
    throw WindowError("coefficient of q^" + std::to_string(exponent) +
                      " requested outside window");
  }
  auto it = terms_.find(exponent);
  if (it == terms_.end()) return ExactRational(0);
  return t_order == 0 ? it->second.c0 : it->second.c1;
}

JetSeries JetSeries::t0_part() const {
  JetSeries r(low_cut_, high_cut_);
  for (const auto& [e, c] : terms_) r.accumulate(e, c.c0, 0);
  return r;
}

JetSeries JetSeries::t1_part() const {
  JetSeries r(low_cut_, high_cut_);
  for (const auto& [e, c] : terms_) r.accumulate(e, c.c1, 0);
  return r;
}

namespace {

JetSeries empty_like(const JetSeries& a, const JetSeries& b) {
  return JetSeries(std::max(a.low_cut(), b.low_cut()),
                   std::min(a.high_cut(), b.high_cut()));
}

}  // namespace

JetSeries operator+(const JetSeries& a, const JetSeries& b) {
  JetSeries r = empty_like(a, b);
  for (const auto& [e, c] : a.terms_) r.accumulate(e, c.c0, c.c1);
  for (const auto& [e, c] : b.terms_) r.accumulate(e, c.c0, c.c1);
  return r;
}

JetSeries operator-(const JetSeries& a, const JetSeries& b) { return a + (-b); }

JetSeries JetSeries::operator-() const {
  JetSeries r(low_cut_, high_cut_);
  for (const auto& [e, c] : terms_) r.terms_[e] = JetCoeff{-c.c0, -c.c1};
  return r;
}

JetSeries operator*(const JetSeries& a, const JetSeries& b) {
  JetSeries r = empty_like(a, b);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      // (a0 + t a1)(b0 + t b1) = a0 b0 + t (a0 b1 + a1 b0) mod t^2
      r.accumulate(ea + eb, ca.c0 * cb.c0, ca.c0 * cb.c1 + ca.c1 * cb.c0);
    }
  }
  return r;
}

JetSeries operator*(const ExactRational& s, const JetSeries& a) {
  JetSeries r(a.low_cut(), a.high_cut());
  if (sgn(s) == 0) return r;
  for (const auto& [e, c] : a.terms_) r.terms_[e] = JetCoeff{s * c.c0, s * c.c1};
  return r;
}

bool JetSeries::operator==(const JetSeries& other) const {
  return terms_ == other.terms_;
}

std::string JetSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (int k = 0; k < 2; ++k) {
      const ExactRational& v = k == 0 ? c.c0 : c.c1;
      if (sgn(v) == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << v.get_str() << ")";
      if (k == 1) os << "*t";
      if (e != 0) os << "*q^" << e;
    }
  }
  return os.str();
}

JetSeries series_mul(const JetSeries& a, const JetSeries& b) { return a * b; }

JetSeries sqrt_one_minus(const JetSeries& u) {
  for (const auto& [e, c] : u.terms()) {
    if (sgn(c.c0) != 0) {
      throw DomainError(
          "sqrt_one_minus: argument has a nonzero t^0 part at q^" +
          std::to_string(e));
    }
  }
  JetSeries one = JetSeries::constant(1, u.low_cut(), u.high_cut());
  return one - ExactRational(1, 2) * u;
}

JetSeries inverse(const JetSeries& s) {
  int lead = 0;
  ExactRational lead_coeff;
  int count = 0;
  for (const auto& [e, c] : s.terms()) {
    if (sgn(c.c0) != 0) {
      lead = e;
      lead_coeff = c.c0;
      ++count;
    }
  }
  if (count != 1) {
    throw DomainError("inverse: t^0 part must be a single nonzero monomial");
  }
  // (c q^k + t r)^{-1} = c^{-1} q^{-k} - t r c^{-2} q^{-2k}
  ExactRational inv = 1 / lead_coeff;
  JetSeries r(s.low_cut(), s.high_cut());
  r.add_term(-lead, 0, inv);
  JetSeries scale = JetSeries::monomial(-inv * inv, -2 * lead, 0, s.low_cut(),
                                        s.high_cut());
  return r + scale * JetSeries::monomial(1, 0, 1, s.low_cut(), s.high_cut()) *
                 s.t1_part();
}

JetSeries pow(const JetSeries& s, int n) {
  JetSeries base = n < 0 ? inverse(s) : s;
  JetSeries r = JetSeries::constant(1, s.low_cut(), s.high_cut());
  for (int k = 0; k < (n < 0 ? -n : n); ++k) r = r * base;
  return r;
}

ExactRational coefficient(const JetSeries& s, int exponent, int t_order) {
  return s.coefficient(exponent, t_order);
}

}  // namespace torelli
