#pragma once

// Exact rationals and truncated Laurent series c0(q) + t*c1(q) in a local
// coordinate q, computed modulo t^2.

#include <gmpxx.h>

#include <map>
#include <string>

namespace torelli {

using ExactRational = mpq_class;

// Canonical lowest-terms text ("-3/4", "5"); parse accepts "p/q" or "p".
std::string to_string(const ExactRational& r);
ExactRational parse_rational(const std::string& text);

struct JetCoeff {
  ExactRational c0;  // t^0 part
  ExactRational c1;  // t^1 part

  bool is_zero() const { return sgn(c0) == 0 && sgn(c1) == 0; }
  bool operator==(const JetCoeff&) const = default;
};

class JetSeries {
 public:
  static constexpr int kDefaultLowCut = -8;
  static constexpr int kDefaultHighCut = 12;

  explicit JetSeries(int low_cut = kDefaultLowCut,
                     int high_cut = kDefaultHighCut);

  // c * t^t_order * q^exponent
  static JetSeries monomial(const ExactRational& c, int exponent, int t_order,
                            int low_cut = kDefaultLowCut,
                            int high_cut = kDefaultHighCut);
  static JetSeries constant(const ExactRational& c,
                            int low_cut = kDefaultLowCut,
                            int high_cut = kDefaultHighCut) {
    return monomial(c, 0, 0, low_cut, high_cut);
  }

  int low_cut() const { return low_cut_; }
  int high_cut() const { return high_cut_; }
  const std::map<int, JetCoeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Adds c*t^t_order*q^exponent. Throws WindowError outside the window.
  void add_term(int exponent, int t_order, const ExactRational& c);

  // Stored coefficient of t^t_order q^exponent (zero when absent).
  ExactRational coefficient(int exponent, int t_order) const;

  // Split c0 + t*c1 into its two t-parts, each as a series with no t.
  JetSeries t0_part() const;
  JetSeries t1_part() const;

  // Result windows are the intersection of the operand windows. Terms that
  // would land above high_cut are dropped; nonzero terms below low_cut
  // raise WindowError.
  friend JetSeries operator+(const JetSeries& a, const JetSeries& b);
  friend JetSeries operator-(const JetSeries& a, const JetSeries& b);
  friend JetSeries operator*(const JetSeries& a, const JetSeries& b);
  friend JetSeries operator*(const ExactRational& s, const JetSeries& a);
  JetSeries operator-() const;

  bool operator==(const JetSeries& other) const;

  std::string to_string() const;

 private:
  void accumulate(int exponent, const ExactRational& c0,
                  const ExactRational& c1);

  int low_cut_;
  int high_cut_;
  std::map<int, JetCoeff> terms_;
};

JetSeries series_mul(const JetSeries& a, const JetSeries& b);

// Square root of 1 - u for u with vanishing t^0 part: 1 - u/2 (mod t^2).
JetSeries sqrt_one_minus(const JetSeries& u);

// Multiplicative inverse of a series whose t^0 part is a single monomial
// c*q^k: (c q^k)^{-1} (1 - t*c1/(c q^k)).
JetSeries inverse(const JetSeries& s);

// Integer power; negative exponents go through inverse().
JetSeries pow(const JetSeries& s, int n);

ExactRational coefficient(const JetSeries& s, int exponent, int t_order);

}  // namespace torelli
