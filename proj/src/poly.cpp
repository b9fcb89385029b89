#include "pbwforge/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace pbw {

// ---------------------------------------------------------------- PolyRing

PolyRing::PolyRing(const CyclotomicField& f, std::vector<std::string> vars)
    : field_(&f), vars_(std::move(vars)) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == gen_) throw std::invalid_argument("parameter name clashes with the field generator");
    for (std::size_t j = 0; j < i; ++j)
      if (vars_[i] == vars_[j]) throw std::invalid_argument("duplicate parameter name " + vars_[i]);
  }
}

RingPtr PolyRing::make(unsigned conductor, std::vector<std::string> vars) {
  return RingPtr(new PolyRing(CyclotomicField::of(conductor), std::move(vars)));
}

std::optional<std::size_t> PolyRing::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

bool MonomialGreater::operator()(const Exponents& a, const Exponents& b) const {
  unsigned da = 0, db = 0;
  for (auto e : a) da += e;
  for (auto e : b) db += e;
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

// ---------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(RingPtr ring, const FieldElement& c) {
  Polynomial p(ring);
  p.add_term(Exponents(ring->nvars(), 0), c);
  return p;
}

Polynomial Polynomial::constant(RingPtr ring, const mpq_class& c) {
  const CyclotomicField& f = ring->field();
  return constant(std::move(ring), FieldElement(f, c));
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->nvars()) throw std::out_of_range("variable index");
  Exponents e(ring->nvars(), 0);
  e[index] = 1;
  Polynomial p(ring);
  p.add_term(e, FieldElement::one(ring->field()));
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, const std::string& name) {
  auto idx = ring->index_of(name);
  if (!idx) throw std::invalid_argument("unknown parameter " + name);
  return variable(std::move(ring), *idx);
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (auto e : terms_.begin()->first)
    if (e) return false;
  return true;
}

FieldElement Polynomial::constant_value() const {
  if (!is_constant()) throw std::logic_error("polynomial is not constant");
  if (terms_.empty()) return FieldElement::zero(ring_->field());
  return terms_.begin()->second;
}

std::size_t Polynomial::total_degree() const {
  if (terms_.empty()) return 0;
  std::size_t d = 0;
  for (auto e : terms_.begin()->first) d += e;
  return d;
}

unsigned Polynomial::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max<unsigned>(d, e[var]);
  return d;
}

void Polynomial::add_term(const Exponents& e, const FieldElement& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (!ring_) ring_ = o.ring_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (!ring_) ring_ = o.ring_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r(a.ring_ ? a.ring_ : b.ring_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  const std::size_t n = a.terms_.begin()->first.size();
  Exponents e(n);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < n; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      r.add_term(e, ca * cb);
    }
  return r;
}

Polynomial Polynomial::scaled(const FieldElement& c) const {
  Polynomial r(ring_);
  if (c.is_zero()) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial acc = constant(ring_, mpq_class(1));
  Polynomial base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

std::map<unsigned, Polynomial> Polynomial::coefficients_in(std::size_t var) const {
  std::map<unsigned, Polynomial> out;
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    rest[var] = 0;
    auto [it, fresh] = out.try_emplace(e[var], Polynomial(ring_));
    it->second.add_term(rest, c);
  }
  return out;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  return scaled(leading_coefficient().inverse());
}

namespace {

std::string monomial_string(const PolyRing& ring, const Exponents& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    if (!s.empty()) s += "*";
    s += ring.vars()[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

// Appends one signed term to `out`.
void append_term(std::string& out, const FieldElement& c, const std::string& mono, bool only_term) {
  std::string body;
  bool negative = false;
  if (c.term_count() == 1) {
    std::size_t k = 0;
    while (c.coeffs()[k] == 0) ++k;
    mpq_class a = c.coeffs()[k];
    negative = a < 0;
    if (negative) a = -a;
    std::vector<std::string> parts;
    if (a != 1) parts.push_back(rational_to_string(a));
    if (k == 1) parts.push_back("z");
    if (k > 1) parts.push_back("z^" + std::to_string(k));
    if (!mono.empty()) parts.push_back(mono);
    if (parts.empty()) parts.push_back("1");
    for (std::size_t i = 0; i < parts.size(); ++i) body += (i ? "*" : "") + parts[i];
  } else {
    if (mono.empty() && only_term) body = c.to_string();
    else body = "(" + c.to_string() + ")" + (mono.empty() ? "" : "*" + mono);
  }
  if (out.empty()) out = negative ? "-" + body : body;
  else out += (negative ? " - " : " + ") + body;
}

}  // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) append_term(out, c, monomial_string(*ring_, e), terms_.size() == 1);
  return out;
}

Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  Polynomial q(a.ring()), r = a;
  const Exponents& eb = b.leading_monomial();
  const FieldElement inv = b.leading_coefficient().inverse();
  while (!r.is_zero()) {
    Exponents er = r.leading_monomial();
    for (std::size_t i = 0; i < er.size(); ++i) {
      if (er[i] < eb[i]) throw std::logic_error("polynomial division is not exact");
      er[i] = static_cast<std::uint16_t>(er[i] - eb[i]);
    }
    Polynomial t(a.ring());
    t.add_term(er, r.leading_coefficient() * inv);
    q += t;
    r -= t * b;
  }
  return q;
}

namespace {

int lowest_variable(const Polynomial& p) {
  int best = -1;
  for (const auto& [e, c] : p.terms())
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] && (best < 0 || static_cast<int>(i) < best)) best = static_cast<int>(i);
  return best;
}

Polynomial one_like(const Polynomial& p) { return Polynomial::constant(p.ring(), mpq_class(1)); }

Polynomial content_in(const Polynomial& p, std::size_t var) {
  Polynomial g(p.ring());
  for (const auto& [k, c] : p.coefficients_in(var)) {
    g = poly_gcd(g, c);
    if (g.is_constant()) return one_like(p);
  }
  return g;
}

Polynomial leading_coeff_in(const Polynomial& p, std::size_t var) {
  auto cs = p.coefficients_in(var);
  return cs.rbegin()->second;
}

Polynomial x_power(const RingPtr& ring, std::size_t var, unsigned k) {
  Exponents e(ring->nvars(), 0);
  e[var] = static_cast<std::uint16_t>(k);
  Polynomial p(ring);
  p.add_term(e, FieldElement::one(ring->field()));
  return p;
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var) {
  const unsigned db = b.degree_in(var);
  const Polynomial lb = leading_coeff_in(b, var);
  Polynomial r = a;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    const unsigned dr = r.degree_in(var);
    Polynomial lr = leading_coeff_in(r, var);
    r = lb * r - lr * x_power(a.ring(), var, dr - db) * b;
  }
  return r;
}

Polynomial primitive_part(const Polynomial& p, std::size_t var) {
  return exact_divide(p, content_in(p, var));
}

}  // namespace

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return one_like(a);
  const int va = lowest_variable(a), vb = lowest_variable(b);
  const std::size_t x = static_cast<std::size_t>(std::min(va, vb));
  if (!a.involves(x)) return poly_gcd(a, content_in(b, x));
  if (!b.involves(x)) return poly_gcd(content_in(a, x), b);
  Polynomial ca = content_in(a, x), cb = content_in(b, x);
  Polynomial g = poly_gcd(ca, cb);
  Polynomial p = exact_divide(a, ca), q = exact_divide(b, cb);
  if (p.degree_in(x) < q.degree_in(x)) std::swap(p, q);
  while (true) {
    Polynomial r = pseudo_remainder(p, q, x);
    if (r.is_zero()) break;
    if (r.degree_in(x) == 0) return g.monic();
    p = std::move(q);
    q = primitive_part(r, x);
  }
  return (g * primitive_part(q, x)).monic();
}

// ---------------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(RingPtr ring)
    : num_(ring), den_(Polynomial::constant(ring, mpq_class(1))) {}

RationalFunction::RationalFunction(const Polynomial& p)
    : num_(p), den_(Polynomial::constant(p.ring(), mpq_class(1))) {}

RationalFunction::RationalFunction(const Polynomial& num, const Polynomial& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  canonicalize();
}

RationalFunction RationalFunction::constant(RingPtr ring, const FieldElement& c) {
  return RationalFunction(Polynomial::constant(std::move(ring), c));
}

RationalFunction RationalFunction::constant(RingPtr ring, const mpq_class& c) {
  return RationalFunction(Polynomial::constant(std::move(ring), c));
}

RationalFunction RationalFunction::variable(RingPtr ring, const std::string& name) {
  return RationalFunction(Polynomial::variable(std::move(ring), name));
}

bool RationalFunction::is_one() const {
  return den_.is_constant() && num_.is_constant() && !num_.is_zero() && num_.constant_value().is_one();
}

FieldElement RationalFunction::constant_value() const {
  if (!is_constant()) throw std::logic_error("rational function is not constant");
  return num_.constant_value();  // den is monic, hence 1
}

void RationalFunction::canonicalize() {
  if (num_.is_zero()) {
    den_ = Polynomial::constant(num_.ring() ? num_.ring() : den_.ring(), mpq_class(1));
    return;
  }
  if (!den_.is_constant()) {
    Polynomial g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = exact_divide(num_, g);
      den_ = exact_divide(den_, g);
    }
  }
  FieldElement lc = den_.leading_coefficient();
  if (!lc.is_one()) {
    FieldElement inv = lc.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (!num_.ring()) return *this = o;
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_constant()) canonicalize();
    else if (num_.is_zero()) canonicalize();
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  canonicalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (!num_.ring()) return *this = RationalFunction(o.ring());
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = RationalFunction(o.ring());
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  if (!den_.is_constant()) canonicalize();
  return *this;
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw std::domain_error("division by the zero rational function");
  return RationalFunction(den_, num_);
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) { return *this *= o.inverse(); }

std::string RationalFunction::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  std::string n = num_.to_string();
  if (num_.terms().size() > 1) n = "(" + n + ")";
  std::string d = den_.to_string();
  if (den_.terms().size() > 1 || d.find('*') != std::string::npos || d.find('^') != std::string::npos)
    d = "(" + d + ")";
  return n + "/" + d;
}

// ---------------------------------------------------------------- substitution

namespace {

RationalFunction evaluate_polynomial(const Polynomial& p, const RingPtr& ring,
                                     const std::vector<std::optional<RationalFunction>>& values) {
  RationalFunction acc(ring);
  std::vector<std::vector<RationalFunction>> power_cache(values.size());
  for (const auto& [e, c] : p.terms()) {
    Exponents rest(ring->nvars(), 0);
    RationalFunction term = RationalFunction::constant(ring, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (values[i]) {
        auto& cache = power_cache[i];
        if (cache.empty()) cache.push_back(RationalFunction::constant(ring, mpq_class(1)));
        while (cache.size() <= e[i]) cache.push_back(cache.back() * *values[i]);
        term *= cache[e[i]];
      } else {
        auto idx = ring->index_of(p.ring()->vars()[i]);
        if (!idx) throw std::invalid_argument("parameter missing from target ring: " + p.ring()->vars()[i]);
        rest[*idx] = e[i];
      }
    }
    Polynomial mono(ring);
    mono.add_term(rest, FieldElement::one(ring->field()));
    acc += term * RationalFunction(mono);
  }
  return acc;
}

}  // namespace

RationalFunction substitute(const RationalFunction& p, const Bindings& bindings) {
  const RingPtr& ring = p.ring();
  std::vector<std::optional<RationalFunction>> values(ring->nvars());
  bool any = false;
  for (const auto& [name, val] : bindings) {
    auto idx = ring->index_of(name);
    if (!idx) continue;
    values[*idx] = val.ring() == ring || val.ring()->same_as(*ring) ? val : change_ring(val, ring);
    any = true;
  }
  if (!any) return p;
  RationalFunction n = evaluate_polynomial(p.num(), ring, values);
  RationalFunction d = evaluate_polynomial(p.den(), ring, values);
  if (d.is_zero()) throw std::domain_error("denominator vanishes after substitution");
  return n / d;
}

Polynomial substitute_poly_to_poly(const Polynomial& p, const std::map<std::size_t, Polynomial>& bindings) {
  Polynomial acc(p.ring());
  for (const auto& [e, c] : p.terms()) {
    Exponents rest = e;
    Polynomial term = Polynomial::constant(p.ring(), c);
    for (const auto& [var, val] : bindings) {
      if (!e[var]) continue;
      term = term * val.pow(e[var]);
      rest[var] = 0;
    }
    Polynomial mono(p.ring());
    mono.add_term(rest, FieldElement::one(p.ring()->field()));
    acc += term * mono;
  }
  return acc;
}

RationalFunction change_ring(const RationalFunction& p, const RingPtr& target) {
  if (p.ring() == target) return p;
  if (p.ring()->conductor() != target->conductor()) throw std::invalid_argument("field mismatch when changing ring");
  std::vector<std::optional<RationalFunction>> none(p.ring()->nvars());
  RationalFunction n = evaluate_polynomial(p.num(), target, none);
  RationalFunction d = evaluate_polynomial(p.den(), target, none);
  return n / d;
}

// ---------------------------------------------------------------- linear_extract

LinearSystem linear_extract(const std::vector<RationalFunction>& eqs, const std::vector<std::string>& unknowns) {
  LinearSystem sys;
  if (eqs.empty()) return sys;
  const RingPtr& ring = eqs.front().ring();
  std::vector<std::size_t> idx;
  for (const auto& u : unknowns) {
    auto i = ring->index_of(u);
    if (!i) throw std::invalid_argument("unknown " + u + " is not a ring parameter");
    idx.push_back(*i);
  }
  for (std::size_t k = 0; k < eqs.size(); ++k) {
    const RationalFunction& eq = eqs[k];
    if (eq.is_zero()) continue;
    for (std::size_t j = 0; j < idx.size(); ++j)
      if (eq.den().involves(idx[j]))
        throw std::invalid_argument("equation " + std::to_string(k) + " is not affine in " + unknowns[j] +
                                    " (appears in a denominator)");
    std::vector<Polynomial> coeff(idx.size(), Polynomial(ring));
    Polynomial constant(ring);
    for (const auto& [e, c] : eq.num().terms()) {
      int hit = -1;
      for (std::size_t j = 0; j < idx.size(); ++j) {
        if (!e[idx[j]]) continue;
        if (e[idx[j]] > 1 || hit >= 0)
          throw std::invalid_argument("equation " + std::to_string(k) + " is nonlinear in " + unknowns[j]);
        hit = static_cast<int>(j);
      }
      if (hit < 0) {
        constant.add_term(e, c);
      } else {
        Exponents rest = e;
        rest[idx[static_cast<std::size_t>(hit)]] = 0;
        coeff[static_cast<std::size_t>(hit)].add_term(rest, c);
      }
    }
    std::vector<RationalFunction> row;
    for (auto& c : coeff) row.emplace_back(c, eq.den());
    sys.matrix.push_back(std::move(row));
    sys.rhs.push_back(-RationalFunction(constant, eq.den()));
    sys.source.push_back(k);
  }
  return sys;
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  Parser(const RingPtr& ring, const std::string& text) : ring_(ring), s_(text) {}

  RationalFunction parse() {
    RationalFunction v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cannot parse '" + s_ + "' at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  RationalFunction expr() {
    RationalFunction acc = term();
    while (true) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else return acc;
    }
  }
  RationalFunction term() {
    RationalFunction acc = unary();
    while (true) {
      if (eat('*')) acc *= unary();
      else if (eat('/')) {
        RationalFunction d = unary();
        if (d.is_zero()) fail("division by zero");
        acc /= d;
      } else return acc;
    }
  }
  RationalFunction unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  RationalFunction power() {
    RationalFunction base = atom();
    if (!eat('^')) return base;
    bool neg = eat('-');
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    long e = std::stol(s_.substr(start, pos_ - start));
    RationalFunction acc = RationalFunction::constant(ring_, mpq_class(1));
    for (long i = 0; i < e; ++i) acc *= base;
    return neg ? acc.inverse() : acc;
  }
  RationalFunction atom() {
    skip();
    if (eat('(')) {
      RationalFunction v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RationalFunction::constant(ring_, mpq_class(mpz_class(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name == ring_->generator_name())
        return RationalFunction::constant(ring_, FieldElement::generator(ring_->field()));
      if (!ring_->index_of(name)) fail("unknown identifier " + name);
      return RationalFunction::variable(ring_, name);
    }
    fail("unexpected character");
  }

  const RingPtr& ring_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_expression(const RingPtr& ring, const std::string& text) { return Parser(ring, text).parse(); }

FieldElement parse_field_element(const CyclotomicField& field, const std::string& text) {
  RingPtr ring = PolyRing::make(field.conductor(), {});
  RationalFunction v = parse_expression(ring, text);
  return v.constant_value();
}

}  // namespace pbw
