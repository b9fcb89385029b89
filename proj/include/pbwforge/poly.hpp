#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pbwforge/field.hpp"

namespace pbw {

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

// Coefficient field plus an ordered list of parameter names. The order fixes
// the monomial order and therefore every printed form.
class PolyRing {
 public:
  static RingPtr make(unsigned conductor, std::vector<std::string> vars);

  const CyclotomicField& field() const { return *field_; }
  unsigned conductor() const { return field_->conductor(); }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  std::optional<std::size_t> index_of(const std::string& name) const;
  const std::string& generator_name() const { return gen_; }

  bool same_as(const PolyRing& o) const { return field_ == o.field_ && vars_ == o.vars_; }

 private:
  PolyRing(const CyclotomicField& f, std::vector<std::string> vars);
  const CyclotomicField* field_;
  std::vector<std::string> vars_;
  std::string gen_ = "z";
};

using Exponents = std::vector<std::uint16_t>;

// Graded lexicographic, largest first.
struct MonomialGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

class Polynomial {
 public:
  using Terms = std::map<Exponents, FieldElement, MonomialGreater>;

  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
  static Polynomial constant(RingPtr ring, const FieldElement& c);
  static Polynomial constant(RingPtr ring, const mpq_class& c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial variable(RingPtr ring, const std::string& name);

  const RingPtr& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  FieldElement constant_value() const;  // requires is_constant()
  std::size_t total_degree() const;
  unsigned degree_in(std::size_t var) const;
  bool involves(std::size_t var) const { return degree_in(var) > 0; }
  const Exponents& leading_monomial() const { return terms_.begin()->first; }
  const FieldElement& leading_coefficient() const { return terms_.begin()->second; }

  void add_term(const Exponents& e, const FieldElement& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const FieldElement& c) const;
  Polynomial pow(unsigned e) const;

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  // Coefficients with respect to one variable, keyed by its exponent.
  std::map<unsigned, Polynomial> coefficients_in(std::size_t var) const;
  Polynomial monic() const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  Terms terms_;
};

// Throws if b does not divide a exactly.
Polynomial exact_divide(const Polynomial& a, const Polynomial& b);
// Monic gcd over the coefficient field.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

// A ratio num/den kept in lowest terms with a monic denominator; this is the
// canonical form, so equality is structural.
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(RingPtr ring);
  explicit RationalFunction(const Polynomial& p);
  RationalFunction(const Polynomial& num, const Polynomial& den);
  static RationalFunction constant(RingPtr ring, const FieldElement& c);
  static RationalFunction constant(RingPtr ring, const mpq_class& c);
  static RationalFunction variable(RingPtr ring, const std::string& name);

  const RingPtr& ring() const { return num_.ring(); }
  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  FieldElement constant_value() const;

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  RationalFunction inverse() const;

  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void canonicalize();
  Polynomial num_, den_;
};

using Bindings = std::map<std::string, RationalFunction>;

// Throws std::domain_error if a denominator vanishes after substitution.
RationalFunction substitute(const RationalFunction& p, const Bindings& bindings);
Polynomial substitute_poly_to_poly(const Polynomial& p, const std::map<std::size_t, Polynomial>& bindings);

// Moves a value into another ring whose variable list contains all variables
// used by the value.
RationalFunction change_ring(const RationalFunction& p, const RingPtr& target);

struct LinearSystem {
  std::vector<std::vector<RationalFunction>> matrix;  // one row per nonzero equation
  std::vector<RationalFunction> rhs;
  std::vector<std::size_t> source;  // index of the originating equation
};

// eqs[i] == matrix[i] * unknowns - rhs[i]. Zero equations are dropped.
LinearSystem linear_extract(const std::vector<RationalFunction>& eqs,
                            const std::vector<std::string>& unknowns);

// Recursive-descent parser for + - * / ^ and parentheses. The identifier "z"
// denotes the field generator; other identifiers must be ring variables.
RationalFunction parse_expression(const RingPtr& ring, const std::string& text);
FieldElement parse_field_element(const CyclotomicField& field, const std::string& text);

}  // namespace pbw
