#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace pbw {

// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
std::vector<mpz_class> cyclotomic_polynomial(unsigned n);
// Same polynomial computed by exact division, bypassing the shipped table.
std::vector<mpz_class> cyclotomic_polynomial_uncached(unsigned n);

unsigned euler_phi(unsigned n);

// Q(zeta_n). Instances are interned and live for the whole program.
class CyclotomicField {
 public:
  static const CyclotomicField& of(unsigned conductor);

  unsigned conductor() const { return n_; }
  std::size_t degree() const { return deg_; }
  const std::vector<mpz_class>& modulus() const { return modulus_; }
  // reduced_power(k) is zeta^k written in the power basis, 0 <= k < 2*degree.
  const std::vector<mpq_class>& reduced_power(std::size_t k) const { return powers_[k]; }

 private:
  explicit CyclotomicField(unsigned n);
  unsigned n_;
  std::size_t deg_;
  std::vector<mpz_class> modulus_;
  std::vector<std::vector<mpq_class>> powers_;
};

class FieldElement {
 public:
  FieldElement() = default;  // detached zero, only useful as a placeholder
  explicit FieldElement(const CyclotomicField& field);
  FieldElement(const CyclotomicField& field, const mpq_class& value);
  FieldElement(const CyclotomicField& field, std::vector<mpq_class> coeffs);

  static FieldElement zero(const CyclotomicField& f) { return FieldElement(f); }
  static FieldElement one(const CyclotomicField& f) { return FieldElement(f, mpq_class(1)); }
  static FieldElement generator(const CyclotomicField& f);

  const CyclotomicField& field() const { return *field_; }
  const CyclotomicField* field_ptr() const { return field_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;  // only the constant coefficient may be nonzero
  const mpq_class& rational_part() const { return c_[0]; }

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  FieldElement& operator*=(const mpq_class& q);

  FieldElement inverse() const;
  FieldElement pow(long e) const;

  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  // "1/2 + 3/2*z^2"; the generator prints as `gen`.
  std::string to_string(const std::string& gen = "z") const;
  // Number of nonzero power-basis coefficients.
  std::size_t term_count() const;

 private:
  void check_same(const FieldElement& o) const;
  const CyclotomicField* field_ = nullptr;
  std::vector<mpq_class> c_;
};

std::string rational_to_string(const mpq_class& q);

}  // namespace pbw
