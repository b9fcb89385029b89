#include "pbwforge/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace pbw {

namespace {

using ZPoly = std::vector<mpz_class>;

void trim(ZPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Exact division of integer polynomials with monic divisor.
ZPoly divide_monic(ZPoly num, const ZPoly& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) return {0};
  ZPoly q(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    mpz_class c = num[k];
    if (c == 0) continue;
    q[k - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
  }
  trim(num);
  if (!(num.size() == 1 && num[0] == 0)) throw std::logic_error("cyclotomic division not exact");
  trim(q);
  return q;
}

const std::map<unsigned, ZPoly>& shipped_tables() {
  static const std::map<unsigned, ZPoly> t = {
      {1, {-1, 1}},
      {2, {1, 1}},
      {3, {1, 1, 1}},
      {4, {1, 0, 1}},
      {5, {1, 1, 1, 1, 1}},
      {6, {1, -1, 1}},
      {7, {1, 1, 1, 1, 1, 1, 1}},
      {8, {1, 0, 0, 0, 1}},
      {9, {1, 0, 0, 1, 0, 0, 1}},
      {10, {1, -1, 1, -1, 1}},
      {11, {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}},
      {12, {1, 0, -1, 0, 1}},
  };
  return t;
}

ZPoly compute_cyclotomic(unsigned n) {
  ZPoly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) p = divide_monic(p, compute_cyclotomic(d));
  return p;
}

}  // namespace

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  unsigned m = n;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

std::vector<mpz_class> cyclotomic_polynomial(unsigned n) {
  if (n == 0) throw std::invalid_argument("conductor must be positive");
  auto it = shipped_tables().find(n);
  if (it != shipped_tables().end()) return it->second;
  return compute_cyclotomic(n);
}

// Exposed for the table self-check in the tests.
std::vector<mpz_class> cyclotomic_polynomial_uncached(unsigned n) { return compute_cyclotomic(n); }

CyclotomicField::CyclotomicField(unsigned n) : n_(n) {
  modulus_ = cyclotomic_polynomial(n);
  deg_ = modulus_.size() - 1;
  powers_.assign(2 * deg_, std::vector<mpq_class>(deg_, 0));
  for (std::size_t k = 0; k < deg_; ++k) powers_[k][k] = 1;
  // zeta^deg = -sum modulus[j] zeta^j, then multiply by zeta repeatedly.
  for (std::size_t k = deg_; k < 2 * deg_; ++k) {
    const auto& prev = powers_[k - 1];
    std::vector<mpq_class> cur(deg_, 0);
    mpq_class top = prev[deg_ - 1];
    for (std::size_t j = deg_ - 1; j > 0; --j) cur[j] = prev[j - 1];
    for (std::size_t j = 0; j < deg_; ++j) cur[j] -= top * mpq_class(modulus_[j]);
    powers_[k] = std::move(cur);
  }
}

const CyclotomicField& CyclotomicField::of(unsigned conductor) {
  static std::mutex mu;
  static std::map<unsigned, std::unique_ptr<CyclotomicField>> registry;
  if (conductor == 0) throw std::invalid_argument("conductor must be positive");
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = registry[conductor];
  if (!slot) slot.reset(new CyclotomicField(conductor));
  return *slot;
}

FieldElement::FieldElement(const CyclotomicField& field) : field_(&field), c_(field.degree(), 0) {}

FieldElement::FieldElement(const CyclotomicField& field, const mpq_class& value)
    : field_(&field), c_(field.degree(), 0) {
  c_[0] = value;
}

FieldElement::FieldElement(const CyclotomicField& field, std::vector<mpq_class> coeffs)
    : field_(&field), c_(field.degree(), 0) {
  // Arbitrary-length input in powers of zeta, reduced here.
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    if (k < 2 * field.degree()) {
      const auto& row = field.reduced_power(k);
      for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += coeffs[k] * row[j];
    } else {
      FieldElement z = generator(field).pow(static_cast<long>(k));
      for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += coeffs[k] * z.c_[j];
    }
  }
  for (auto& q : c_) q.canonicalize();
}

FieldElement FieldElement::generator(const CyclotomicField& f) {
  const auto& row = f.reduced_power(1 < 2 * f.degree() ? 1 : 0);
  return FieldElement(f, std::vector<mpq_class>(row.begin(), row.end()));
}

void FieldElement::check_same(const FieldElement& o) const {
  if (field_ != o.field_) throw std::invalid_argument("field mismatch in arithmetic");
}

bool FieldElement::is_zero() const {
  for (const auto& q : c_)
    if (q != 0) return false;
  return true;
}

bool FieldElement::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  for (std::size_t j = 1; j < c_.size(); ++j)
    if (c_[j] != 0) return false;
  return true;
}

bool FieldElement::is_rational() const {
  for (std::size_t j = 1; j < c_.size(); ++j)
    if (c_[j] != 0) return false;
  return true;
}

std::size_t FieldElement::term_count() const {
  std::size_t n = 0;
  for (const auto& q : c_) n += (q != 0);
  return n;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  if (!field_) return *this = o;
  if (!o.field_) return *this;
  check_same(o);
  for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  if (!field_) return *this = -o;
  if (!o.field_) return *this;
  check_same(o);
  for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
  return *this;
}

FieldElement& FieldElement::operator*=(const mpq_class& q) {
  for (auto& c : c_) c *= q;
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  if (!field_ || !o.field_) {
    if (!field_ && o.field_) *this = zero(*o.field_);
    return *this;
  }
  check_same(o);
  const std::size_t d = c_.size();
  if (d == 1) {
    c_[0] *= o.c_[0];
    return *this;
  }
  std::vector<mpq_class> conv(2 * d - 1, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j)
      if (o.c_[j] != 0) conv[i + j] += c_[i] * o.c_[j];
  }
  std::vector<mpq_class> out(conv.begin(), conv.begin() + static_cast<std::ptrdiff_t>(d));
  for (std::size_t k = d; k < conv.size(); ++k) {
    if (conv[k] == 0) continue;
    const auto& row = field_->reduced_power(k);
    for (std::size_t j = 0; j < d; ++j)
      if (row[j] != 0) out[j] += conv[k] * row[j];
  }
  c_ = std::move(out);
  return *this;
}

FieldElement FieldElement::inverse() const {
  if (!field_ || is_zero()) throw std::domain_error("division by zero in cyclotomic field");
  const std::size_t d = c_.size();
  if (d == 1) return FieldElement(*field_, 1 / c_[0]);
  // Solve M u = e_0 where column k of M is this * zeta^k.
  std::vector<std::vector<mpq_class>> m(d, std::vector<mpq_class>(d + 1, 0));
  FieldElement col = *this;
  const FieldElement z = generator(*field_);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t r = 0; r < d; ++r) m[r][k] = col.c_[r];
    col *= z;
  }
  m[0][d] = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && m[piv][c] == 0) ++piv;
    if (piv == d) throw std::logic_error("singular multiplication matrix");
    std::swap(m[piv], m[c]);
    mpq_class inv = 1 / m[c][c];
    for (std::size_t j = c; j <= d; ++j) m[c][j] *= inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || m[r][c] == 0) continue;
      mpq_class f = m[r][c];
      for (std::size_t j = c; j <= d; ++j) m[r][j] -= f * m[c][j];
    }
  }
  std::vector<mpq_class> u(d);
  for (std::size_t r = 0; r < d; ++r) u[r] = m[r][d];
  FieldElement out(*field_);
  out.c_ = std::move(u);
  return out;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  if (!o.field_ || o.is_zero()) throw std::domain_error("division by zero in cyclotomic field");
  if (!field_) {
    *this = zero(*o.field_);
    return *this;
  }
  return *this *= o.inverse();
}

FieldElement FieldElement::pow(long e) const {
  if (!field_) throw std::invalid_argument("pow of detached element");
  FieldElement base = e < 0 ? inverse() : *this;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  FieldElement acc = one(*field_);
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

bool FieldElement::operator==(const FieldElement& o) const {
  if (field_ == o.field_) return c_ == o.c_;
  // A detached placeholder equals any zero.
  if (!field_) return o.is_zero();
  if (!o.field_) return is_zero();
  return false;
}

std::string rational_to_string(const mpq_class& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string FieldElement::to_string(const std::string& gen) const {
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const mpq_class& q = c_[k];
    if (q == 0) continue;
    const bool neg = q < 0;
    mpq_class a = neg ? mpq_class(-q) : q;
    std::string mono;
    if (k == 1) mono = gen;
    if (k > 1) mono = gen + "^" + std::to_string(k);
    std::string term;
    if (mono.empty()) term = rational_to_string(a);
    else if (a == 1) term = mono;
    else term = rational_to_string(a) + "*" + mono;
    if (out.empty()) out = neg ? "-" + term : term;
    else out += (neg ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace pbw
