#include <random>

#include "doctest.h"
#include "pbwforge/field.hpp"
#include "pbwforge/poly.hpp"

using namespace pbw;

namespace {

FieldElement random_element(const CyclotomicField& f, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  std::vector<mpq_class> c(f.degree());
  for (auto& x : c) {
    x = mpq_class(num(rng), den(rng));
    x.canonicalize();
  }
  return FieldElement(f, c);
}

RationalFunction rf(const RingPtr& r, const std::string& s) { return parse_expression(r, s); }

}  // namespace

TEST_SUITE("exactmath") {
  TEST_CASE("cyclotomic tables agree with exact division") {
    for (unsigned n = 1; n <= 12; ++n) CHECK(cyclotomic_polynomial(n) == cyclotomic_polynomial_uncached(n));
    CHECK(cyclotomic_polynomial(8) == std::vector<mpz_class>{1, 0, 0, 0, 1});
    CHECK(cyclotomic_polynomial(3) == std::vector<mpz_class>{1, 1, 1});
    CHECK(euler_phi(12) == 4);
    CHECK(cyclotomic_polynomial(15).size() == 9);
  }

  TEST_CASE("identities in Q(zeta_3) and Q(zeta_8)") {
    const auto& e = CyclotomicField::of(3);
    FieldElement z = FieldElement::generator(e), one = FieldElement::one(e);
    CHECK((z * z + z + one).is_zero());
    CHECK((one + z).inverse() == -z);
    CHECK(z.pow(3).is_one());
    CHECK(z.pow(-1) == z * z);

    const auto& h = CyclotomicField::of(8);
    FieldElement w = FieldElement::generator(h);
    CHECK((w.pow(4) + FieldElement::one(h)).is_zero());
    CHECK(w.pow(8).is_one());
    CHECK((w * w).to_string() == "z^2");
    CHECK(FieldElement(h, {mpq_class(1, 2), 0, mpq_class(3, 2), 0}).to_string() == "1/2 + 3/2*z^2");
  }

  TEST_CASE("field axioms hold on random elements") {
    std::mt19937 rng(7);
    for (unsigned n : {1u, 3u, 5u, 8u, 12u}) {
      const auto& f = CyclotomicField::of(n);
      for (int t = 0; t < 25; ++t) {
        FieldElement a = random_element(f, rng), b = random_element(f, rng), c = random_element(f, rng);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
        if (!b.is_zero()) CHECK((a / b) * b == a);
      }
    }
  }

  TEST_CASE("polynomial arithmetic and printing") {
    auto r = PolyRing::make(3, {"beta", "gamma"});
    auto b = Polynomial::variable(r, "beta"), g = Polynomial::variable(r, "gamma");
    Polynomial lhs = (b + g) * (b - g);
    CHECK(lhs == b * b - g * g);
    CHECK(lhs.to_string() == "beta^2 - gamma^2");
    CHECK(poly_gcd(lhs, b + g) == b + g);
    CHECK(exact_divide(lhs, b - g) == b + g);
    CHECK_THROWS(exact_divide(lhs, b + b * g));
  }

  TEST_CASE("rational functions are canonical") {
    auto r = PolyRing::make(3, {"beta", "gamma"});
    RationalFunction v = rf(r, "gamma*z/(1+z)");
    CHECK(v == rf(r, "-z^2*gamma"));
    CHECK(v.to_string() == "(1 + z)*gamma");  // -z^2 = 1 + z in the power basis
    RationalFunction q = rf(r, "(beta^2-gamma^2)/(2*beta+2*gamma)");
    CHECK(q == rf(r, "1/2*beta - 1/2*gamma"));
    RationalFunction s = rf(r, "1/beta + 1/gamma");
    CHECK(s.to_string() == "(beta + gamma)/(beta*gamma)");
    CHECK((s - rf(r, "(beta+gamma)/(beta*gamma)")).is_zero());
    CHECK_THROWS(rf(r, "1/0"));
    CHECK_THROWS(rf(r, "delta"));
  }

  TEST_CASE("substitution commutes with arithmetic") {
    auto r = PolyRing::make(8, {"a", "b", "c"});
    std::vector<std::string> exprs = {"a^2 - z*b", "(a+b)/(c-1)", "z^3*a*b*c + 2", "1/(a+z)"};
    Bindings bind = {{"a", rf(r, "b + 1")}, {"c", rf(r, "z")}};
    for (const auto& x : exprs)
      for (const auto& y : exprs) {
        auto p = rf(r, x), q = rf(r, y);
        CHECK(substitute(p * q, bind) == substitute(p, bind) * substitute(q, bind));
        CHECK(substitute(p + q, bind) == substitute(p, bind) + substitute(q, bind));
      }
    CHECK_THROWS_AS(substitute(rf(r, "1/(c-z)"), bind), std::domain_error);
  }

  TEST_CASE("linear extraction") {
    auto r = PolyRing::make(1, {"a", "b", "x", "y"});
    std::vector<RationalFunction> eqs = {rf(r, "a*x + 2*y - b"), rf(r, "0"), rf(r, "x - y + 3")};
    auto sys = linear_extract(eqs, {"x", "y"});
    REQUIRE(sys.matrix.size() == 2);
    CHECK(sys.source == std::vector<std::size_t>{0, 2});
    CHECK(sys.matrix[0][0] == rf(r, "a"));
    CHECK(sys.matrix[0][1] == rf(r, "2"));
    CHECK(sys.rhs[0] == rf(r, "b"));
    CHECK(sys.rhs[1] == rf(r, "-3"));
    CHECK_THROWS_WITH(linear_extract({rf(r, "x*y")}, {"x", "y"}), doctest::Contains("0"));
    CHECK_THROWS(linear_extract({rf(r, "1/x")}, {"x"}));
  }
}
