#include "sstpca/lowdeg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sstpca/error.hpp"
#include "sstpca/tensor.hpp"

namespace sstpca {
namespace {

/// even_all_count(m, j) for even m <= m_max and j <= j_max, filled by the
/// recursion on the count of the last letter.
class EvenCountTable {
 public:
  EvenCountTable(std::uint32_t m_max, std::uint32_t j_max)
      : half_(m_max / 2 + 1), rows_(j_max + 1, std::vector<BigInt>(half_)) {
    std::vector<std::vector<BigInt>> choose(2 * half_);
    for (std::uint32_t m = 0; m < 2 * half_; ++m) {
      choose[m].resize(m + 1);
      choose[m][0] = choose[m][m] = 1;
      for (std::uint32_t c = 1; c < m; ++c) choose[m][c] = choose[m - 1][c - 1] + choose[m - 1][c];
    }
    rows_[0][0] = 1;
    for (std::uint32_t j = 1; j <= j_max; ++j) {
      for (std::uint32_t h = 0; h < half_; ++h) {
        BigInt sum = 0;
        for (std::uint32_t c = 0; c <= h; ++c) sum += choose[2 * h][2 * c] * rows_[j - 1][h - c];
        rows_[j][h] = std::move(sum);
      }
    }
  }

  BigInt all(std::uint32_t m, std::uint32_t j) const {
    if (m % 2 != 0) return 0;
    return rows_.at(j).at(m / 2);
  }

  BigInt surjective(std::uint32_t m, std::uint32_t s) const {
    if (m % 2 != 0 || s > m / 2) return 0;
    BigInt sum = 0;
    BigInt c = 1;  // C(s, j)
    for (std::uint32_t j = 0; j <= s; ++j) {
      const BigInt term = c * all(m, j);
      if ((s - j) % 2 == 0) {
        sum += term;
      } else {
        sum -= term;
      }
      c = c * (s - j) / (j + 1);
    }
    return sum;
  }

 private:
  std::uint32_t half_;
  std::vector<std::vector<BigInt>> rows_;
};

BigInt factorial(std::uint32_t d) {
  BigInt f = 1;
  for (std::uint32_t i = 2; i <= d; ++i) f *= i;
  return f;
}

Rational rational_pow(const Rational& base, std::uint64_t e) {
  Rational result = 1;
  Rational b = base;
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

std::uint32_t s_max(std::uint32_t n, std::uint64_t pd) {
  return static_cast<std::uint32_t>(std::min<std::uint64_t>(pd / 2, n));
}

Rational degree_term_with(const EvenCountTable& table, std::uint32_t n, std::uint32_t k,
                          std::uint32_t p, std::uint32_t d) {
  const std::uint64_t pd = std::uint64_t{p} * d;
  if (pd % 2 != 0) return 0;
  const Rational ratio{BigInt(k), BigInt(n)};
  const Rational ratio2 = ratio * ratio;
  Rational sum = 0;
  Rational power = 1;
  for (std::uint32_t s = 1; s <= s_max(n, pd); ++s) {
    power *= ratio2;
    sum += Rational(binomial(n, s) * table.surjective(static_cast<std::uint32_t>(pd), s)) * power;
  }
  return sum / Rational(factorial(d));
}

double log_degree_term_with(const EvenCountTable& table, std::uint32_t n, std::uint32_t k,
                            std::uint32_t p, std::uint32_t d) {
  const std::uint64_t pd = std::uint64_t{p} * d;
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  if (pd % 2 != 0) return neg_inf;
  const double log_ratio = std::log(static_cast<double>(k)) - std::log(static_cast<double>(n));
  std::vector<double> logs;
  for (std::uint32_t s = 1; s <= s_max(n, pd); ++s) {
    const BigInt count = table.surjective(static_cast<std::uint32_t>(pd), s);
    if (count == 0) continue;
    logs.push_back(log_bigint(binomial(n, s)) + 2.0 * s * log_ratio + log_bigint(count));
  }
  if (logs.empty()) return neg_inf;
  const double top = *std::max_element(logs.begin(), logs.end());
  double acc = 0.0;
  for (const double l : logs) acc += std::exp(l - top);
  return top + std::log(acc) - std::lgamma(static_cast<double>(d) + 1.0);
}

}  // namespace

BigInt binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    result *= n - r + i;
    result /= i;
  }
  return result;
}

BigInt even_all_count(std::uint32_t m, std::uint32_t j) {
  if (m % 2 != 0) return 0;
  return EvenCountTable(m, j).all(m, j);
}

BigInt even_surj_count(std::uint32_t m, std::uint32_t s) {
  if (m % 2 != 0 || s > m / 2) return 0;
  return EvenCountTable(m, s).surjective(m, s);
}

Rational degree_term(std::uint32_t n, std::uint32_t k, std::uint32_t p, std::uint32_t d) {
  const std::uint64_t pd = std::uint64_t{p} * d;
  if (pd % 2 != 0) return 0;
  const EvenCountTable table(static_cast<std::uint32_t>(pd), s_max(n, pd));
  return degree_term_with(table, n, k, p, d);
}

double log_degree_term(std::uint32_t n, std::uint32_t k, std::uint32_t p, std::uint32_t d) {
  const std::uint64_t pd = std::uint64_t{p} * d;
  if (pd % 2 != 0) return -std::numeric_limits<double>::infinity();
  const EvenCountTable table(static_cast<std::uint32_t>(pd), s_max(n, pd));
  return log_degree_term_with(table, n, k, p, d);
}

double log_bigint(const BigInt& x) {
  if (x <= 0) throw ParameterError("log of a non-positive integer");
  const auto bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 53) return std::log(x.convert_to<double>());
  const auto shift = bits - 53;
  const BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::numbers::ln2;
}

Rational to_rational(double x) {
  if (!std::isfinite(x)) throw ParameterError("cannot convert a non-finite value to a rational");
  if (x == 0.0) return 0;
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);  // x = mantissa * 2^exponent, |mantissa| in [0.5, 1)
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational result{BigInt(scaled)};
  if (exponent > 0) {
    result *= Rational(BigInt(1) << exponent);
  } else if (exponent < 0) {
    result /= Rational(BigInt(1) << -exponent);
  }
  return result;
}

void LowDegParams::validate() const {
  if (n < 1) throw ParameterError("n must be positive");
  if (k < 1 || k > n) throw ParameterError("k must satisfy 1 <= k <= n");
  if (p < 2) throw ParameterError("p must be at least 2");
  if (D < 1) throw ParameterError("D must be at least 1");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ParameterError("lambda must be finite and >= 0");
}

ChiSqReport chi_squared_exact(const LowDegParams& params, Arithmetic arithmetic) {
  params.validate();
  const std::uint64_t pD = std::uint64_t{params.p} * params.D;
  if (arithmetic == Arithmetic::automatic) {
    arithmetic = pD <= kAutoExactLimit ? Arithmetic::exact_rational : Arithmetic::log_float;
  }
  if (arithmetic == Arithmetic::exact_rational && pD > kExactDegreeLimit) {
    throw OverflowError("exact arithmetic refused for p*D = " + std::to_string(pD) +
                        "; use log-float");
  }

  ChiSqReport report;
  report.arithmetic = arithmetic;
  report.d_le_2n_over_p = params.d_le_2n_over_p();
  report.per_degree.assign(params.D, 0.0);
  const EvenCountTable table(static_cast<std::uint32_t>(pD), s_max(params.n, pD));

  if (arithmetic == Arithmetic::exact_rational) {
    const Rational lambda2 = rational_pow(to_rational(params.lambda), 2);
    const Rational k_factor = rational_pow(Rational(BigInt(1), BigInt(params.k)), params.p);
    Rational total = 0;
    Rational weight = 1;
    for (std::uint32_t d = 1; d <= params.D; ++d) {
      weight *= lambda2 * k_factor;
      const Rational term = weight * degree_term_with(table, params.n, params.k, params.p, d);
      report.exact_per_degree.push_back(term);
      report.per_degree[d - 1] = term.convert_to<double>();
      total += term;
    }
    report.exact_total = total;
    report.total = total.convert_to<double>();
    return report;
  }

  if (params.lambda > 0.0) {
    const double log_lambda = std::log(params.lambda);
    const double log_k = std::log(static_cast<double>(params.k));
    for (std::uint32_t d = 1; d <= params.D; ++d) {
      const double lt = log_degree_term_with(table, params.n, params.k, params.p, d);
      if (std::isinf(lt)) continue;
      report.per_degree[d - 1] = std::exp(2.0 * d * log_lambda - double(params.p) * d * log_k + lt);
    }
  }
  for (const double v : report.per_degree) report.total += v;
  return report;
}

Rational chi_squared_oracle(const LowDegParams& params) {
  params.validate();
  const std::uint64_t entries = checked_entry_count(params.n, params.p, kDefaultEntryCap);
  BigInt visits = 0;
  for (std::uint32_t d = 1; d <= params.D; ++d) visits += binomial(entries + d - 1, d);
  if (visits > kOracleGuard) {
    throw GuardError("oracle would enumerate " + visits.str() + " multisets (limit " +
                     std::to_string(kOracleGuard) + ")");
  }

  const std::uint32_t n = params.n;
  const std::uint32_t D = params.D;
  std::vector<MultiIndex> coords(entries);
  for (std::uint64_t e = 0; e < entries; ++e) coords[e] = unflatten(e, n, params.p);

  // weight[d][s] accumulates D!/prod(alpha_i!) over even multisets of size d touching s coordinates.
  const BigInt d_factorial = factorial(D);
  std::vector<std::vector<BigInt>> weight(D + 1, std::vector<BigInt>(n + 1));
  std::vector<std::uint32_t> usage(n + 1, 0);
  std::vector<std::uint32_t> multiplicity(entries, 0);

  auto visit = [&](std::uint32_t size, const BigInt& denom) {
    std::uint32_t s = 0;
    for (std::uint32_t j = 1; j <= n; ++j) {
      if (usage[j] % 2 != 0) return;
      if (usage[j] > 0) ++s;
    }
    weight[size][s] += d_factorial / denom;
  };

  // Multisets as non-decreasing entry sequences; denom tracks prod alpha_i!.
  auto extend = [&](auto&& self, std::uint64_t first, std::uint32_t size, const BigInt& denom) -> void {
    if (size == D) return;
    for (std::uint64_t e = first; e < entries; ++e) {
      for (const auto c : coords[e]) ++usage[c];
      const BigInt next = denom * (++multiplicity[e]);
      visit(size + 1, next);
      self(self, e, size + 1, next);
      --multiplicity[e];
      for (const auto c : coords[e]) --usage[c];
    }
  };
  extend(extend, 0, 0, BigInt(1));

  const Rational lambda2 = rational_pow(to_rational(params.lambda), 2);
  const Rational ratio2 = rational_pow(Rational(BigInt(params.k), BigInt(n)), 2);
  Rational total = 0;
  for (std::uint32_t d = 1; d <= D; ++d) {
    const Rational scale = rational_pow(lambda2, d) / rational_pow(Rational(params.k), std::uint64_t{params.p} * d);
    Rational inner = 0;
    for (std::uint32_t s = 1; s <= n; ++s) {
      if (weight[d][s] != 0) inner += Rational(weight[d][s]) * rational_pow(ratio2, s);
    }
    total += scale * inner / Rational(d_factorial);
  }
  return total;
}

double lower_bound_lambda(std::uint32_t n, std::uint32_t k, std::uint32_t p, std::uint32_t D,
                          double eps) {
  if (eps <= 0.0) return 0.0;
  const double pD = static_cast<double>(p) * D;
  const double prefactor = std::sqrt(eps * D / (std::numbers::e * std::pow(4.0, p)));
  const double dense = std::pow(n / pD, p / 4.0);
  const double log_term =
      std::abs(std::log(n * pD / (std::numbers::e * static_cast<double>(k) * k)));
  const double sparse = std::pow(k / pD * (1.0 + log_term), p / 2.0);
  return prefactor * std::min(dense, sparse);
}

UpperBoundReport upper_bound_lambda(std::uint32_t n, std::uint32_t k, std::uint32_t p,
                                    std::uint32_t D, double eps) {
  UpperBoundReport report;
  const double pD = static_cast<double>(p) * D;
  const double eps_factor = std::pow(eps, 1.0 / (2.0 * D));
  const double root_d = std::sqrt(static_cast<double>(D));
  const bool even = D % 2 == 0;

  report.regime1 = eps_factor * std::exp(p / 2.0) * root_d * std::pow(n / pD, p / 4.0);
  report.regime1_valid = even;

  const double log_nk = std::log(static_cast<double>(n) / k);
  report.regime2 = eps_factor * root_d * std::pow(k / pD * log_nk, p / 2.0);
  const double root_np = std::sqrt(static_cast<double>(n) * p);
  const double log_np = std::log(static_cast<double>(n) / p);
  const bool window = log_nk > 0.0 &&
                      root_np * std::numbers::e * root_d / log_nk <= k && k <= root_np;
  report.regime2_valid = even && p <= n &&
                         D <= log_np * log_np / (4.0 * std::numbers::e * std::numbers::e) && window;

  if (report.regime1_valid && (!report.regime2_valid || report.regime1 <= report.regime2)) {
    report.regime = 1;
    report.lambda = report.regime1;
  } else if (report.regime2_valid) {
    report.regime = 2;
    report.lambda = report.regime2;
  } else {
    report.lambda = std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

}  // namespace sstpca
