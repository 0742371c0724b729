#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "thorin/quadrature.hpp"

namespace thorin {

class RandomStream;
class MixingLaw;

struct PointMass { double a; };
// Density alpha sin(pi alpha)/((1-alpha) pi) x^{a-1}(1-x)^{a-1} / ((1-x)^{2a} - 2 (1-x)^a x^a cos(pi a) + x^{2a}).
struct GAlpha { double alpha; };
struct ArcSine {};
struct Uniform01 {};
// mu + 1/(1 + exp(pi C)), C standard Cauchy.
struct ShiftedG0 { double mu; };
// (S/S')^mu for independent mu-stable S, S'.
struct ZRatio { double mu; };
// gamma_1 / gamma_m.
struct ParetoRatio { double m; };
// gamma_1^{1/alpha}.
struct GammaPower { double alpha; };
struct Stable { double alpha; };
struct Reciprocal { std::shared_ptr<const MixingLaw> inner; };
struct TableData {
  std::vector<double> p;
  std::vector<double> x;
};
struct QuantileTable { std::shared_ptr<const TableData> data; };

struct Support {
  double lo;
  double hi;
};

class MixingLaw {
 public:
  using Family = std::variant<PointMass, GAlpha, ArcSine, Uniform01, ShiftedG0, ZRatio, ParetoRatio,
                              GammaPower, Stable, Reciprocal, QuantileTable>;

  static MixingLaw point(double a);
  static MixingLaw galpha(double alpha);
  static MixingLaw arcsine();
  static MixingLaw uniform();
  static MixingLaw g0shift(double mu);
  static MixingLaw zratio(double mu);
  static MixingLaw pareto(double m);
  static MixingLaw gamma_power(double alpha);
  static MixingLaw stable(double alpha);
  static MixingLaw reciprocal(const MixingLaw& inner);
  // Monotone piecewise-linear quantile through (p_i, x_i); p must run from 0 to 1.
  static MixingLaw table(std::vector<double> p, std::vector<double> x);
  static MixingLaw table_from_csv(const std::string& path);

  // Grammar: point:a | galpha:a | arcsine | uniform | g0shift:mu | zratio:mu |
  // pareto:m | gammapow:a | stable:a | reciprocal(<spec>) | table:path.csv
  static MixingLaw parse(std::string_view spec);

  double pdf(double x) const;
  double cdf(double x) const;
  double quantile(double p) const;
  // quantile(1 - s), accurate for small s.
  double quantile_upper(double s) const;
  double log_moment() const;
  double mean() const;
  double mean_inverse() const;
  double sample(RandomStream& rng) const;

  // E h(G), computed over the quantile representation.
  quad::Result expect(const std::function<double(double)>& h) const;

  Support support() const;
  bool has_density() const;
  bool is_atom() const { return std::holds_alternative<PointMass>(family_); }
  // E log+(1/G) < inf and E log+ G < inf respectively.
  bool log_integrable_below() const;
  bool log_integrable_above() const;

  std::string name() const;
  const Family& family() const { return family_; }
  template <class T>
  const T* as() const { return std::get_if<T>(&family_); }
  // For Reciprocal, the wrapped law; otherwise nullptr.
  const MixingLaw* inner() const;

 private:
  explicit MixingLaw(Family f) : family_(std::move(f)) {}
  Family family_;
};

}  // namespace thorin
