#include <random>

#include "doctest.h"
#include "pbwforge/exterior.hpp"

using namespace pbw;

namespace {

const CyclotomicField& Q() { return CyclotomicField::of(1); }
const CyclotomicField& E() { return CyclotomicField::of(3); }

Subspace type_e_relations() {
  Alphabet A(2);
  return Subspace::from_vectors(2, 3, E(), {numvec_from_pairs(A, E(), {{"yyy", "1"}, {"xxx", "1"}}),
                                            numvec_from_pairs(A, E(), {{"yyx", "1"}, {"yxy", "z"}, {"xyy", "z^2"}})});
}

Subspace random_subspace(int v, unsigned d, std::size_t k, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-2, 2);
  const std::uint64_t n = Alphabet(v).power(d);
  Subspace s(v, d, Q());
  for (std::size_t i = 0; i < k; ++i) {
    NumVec x;
    for (std::uint64_t w = 0; w < n; ++w)
      if (int c = coef(rng); c && w % 3 != i % 3) x.emplace(w, FieldElement(Q(), c));
    s.add(x);
  }
  return s;
}

LinMap<FieldElement> random_map(int v, unsigned in, unsigned out, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  Alphabet A(v);
  LinMap<FieldElement> m{v, in, out, {}};
  for (std::uint64_t w = 0; w < A.power(in); ++w) {
    NumVec img;
    for (std::uint64_t u = 0; u < A.power(out); ++u)
      if (int c = coef(rng)) img.emplace(u, FieldElement(Q(), c));
    m.set(w, img);
  }
  return m;
}

// Flattened coordinates of an exterior map, for rank computations.
NumVec flatten(const ExtMap<FieldElement>& f, std::uint64_t width) {
  NumVec out;
  for (std::size_t i = 0; i < f.rows.size(); ++i)
    for (const auto& [k, c] : f.rows[i]) out.emplace(i * width + k, c);
  return out;
}

}  // namespace

TEST_SUITE("tensorspace") {
  TEST_CASE("words encode deglex order") {
    Alphabet A(3);
    CHECK(A.parse("xzy") < A.parse("yxx"));
    CHECK(A.parse("zz") < A.parse("xxx"));
    CHECK(A.to_string(A.parse("zyx")) == "zyx");
    CHECK(A.concat(A.parse("xy"), A.parse("z")) == A.parse("xyz"));
    CHECK(A.sub(A.parse("xyzzy"), 1, 3) == A.parse("yzz"));
    CHECK(A.piece_size(4) == 81);
    CHECK_THROWS(Alphabet(10).piece_size(8));
  }

  TEST_CASE("subspace_from_vectors") {
    Alphabet A(2);
    auto comm = numvec_from_pairs(A, Q(), {{"xy", "1"}, {"yx", "-1"}});
    auto anti = numvec_from_pairs(A, Q(), {{"yx", "1"}, {"xy", "-1"}});
    CHECK(Subspace::from_vectors(2, 2, Q(), {comm}).dim() == 1);
    CHECK(Subspace::from_vectors(2, 2, Q(), {comm, anti}).dim() == 1);
    CHECK(type_e_relations().dim() == 2);
    Tensor<FieldElement> a = tensor_from_pairs(A, Q(), {{"xy", "1"}}), b = tensor_from_pairs(A, Q(), {{"xyx", "1"}});
    CHECK_THROWS(Subspace::from_tensors(A, Q(), {a, b}));
    auto g = tensor_from_pairs(A, E(), {{"yyx", "1"}, {"yxy", "z"}, {"xyy", "z^2"}});
    // Coefficients print in the power basis 1, z of Q(z_3), where z^2 = -1 - z.
    CHECK(tensor_to_pairs(A, g) == WordCoeffs{{"xyy", "-1 - z"}, {"yxy", "z"}, {"yyx", "1"}});
  }

  TEST_CASE("overlap of type E is spanned by w") {
    Alphabet A(2);
    Subspace R = type_e_relations();
    Subspace ov = subspace_intersect(tensor_subspace(R, 1, 0), tensor_subspace(R, 0, 1));
    REQUIRE(ov.dim() == 1);
    auto w = numvec_from_pairs(A, E(), {{"yyyx", "1"}, {"yyxy", "z"}, {"yxyy", "z^2"}, {"xyyy", "1"}, {"xxxx", "1"}});
    CHECK(ov.contains(w));
    CHECK(ov.basis().front() == w);
    CHECK(subspace_intersect(R, R) == R);
  }

  TEST_CASE("overlap of exterior relations is the next exterior power") {
    for (int v = 3; v <= 5; ++v)
      for (unsigned N = 2; N <= 3; ++N) {
        Subspace R = antisymmetrizer(v, N, Q());
        Subspace ov = subspace_intersect(tensor_subspace(R, 1, 0), tensor_subspace(R, 0, 1));
        CHECK(ov.dim() == binomial(static_cast<unsigned>(v), N + 1));
        CHECK(ov == antisymmetrizer(v, N + 1, Q()));
      }
  }

  TEST_CASE("tensor_subspace") {
    Alphabet A(2);
    Subspace R = Subspace::from_vectors(2, 2, Q(), {numvec_from_pairs(A, Q(), {{"xy", "1"}, {"yx", "-1"}})});
    CHECK(tensor_subspace(R, 1, 0).dim() == 2);
    CHECK(tensor_subspace(R, 0, 0) == R);
    Subspace S = perp_space(type_e_relations());
    CHECK(S.dim() == 6);
    Subspace S1 = tensor_subspace(S, 0, 1);
    // Rank of the explicit products s·x_i.
    std::vector<NumVec> products;
    for (const auto& s : S.basis())
      for (std::uint64_t i = 0; i < 2; ++i) {
        NumVec y;
        for (const auto& [k, c] : s) y.emplace(2 * k + i, c);
        products.push_back(y);
      }
    CHECK(sparse_rank(products) == 12);
    CHECK(S1.dim() == 12);
    for (const auto& y : products) CHECK(S1.contains(y));
  }

  TEST_CASE("antisymmetrizer and symmetrizer") {
    Alphabet A(2);
    auto a22 = antisymmetrizer(2, 2, Q());
    CHECK(a22 == Subspace::from_vectors(2, 2, Q(), {numvec_from_pairs(A, Q(), {{"xy", "1"}, {"yx", "-1"}})}));
    auto a33 = antisymmetrizer(3, 3, Q());
    REQUIRE(a33.dim() == 1);
    CHECK(a33.basis().front().size() == 6);
    CHECK(antisymmetrizer(2, 3, Q()).dim() == 0);
    auto s22 = symmetrizer(2, 2, Q());
    CHECK(s22 == Subspace::from_vectors(2, 2, Q(),
                                        {numvec_from_pairs(A, Q(), {{"xx", "1"}}),
                                         numvec_from_pairs(A, Q(), {{"xy", "1"}, {"yx", "1"}}),
                                         numvec_from_pairs(A, Q(), {{"yy", "1"}})}));
    for (unsigned N = 0; N <= 4; ++N) CHECK(symmetrizer(1, N, Q()).dim() == 1);
    CHECK(symmetrizer(2, 3, Q()).dim() == 4);
    CHECK(symmetrizer(3, 3, Q()).dim() == 10);
  }

  TEST_CASE("perp_space") {
    Alphabet A(2);
    Subspace R = antisymmetrizer(2, 2, Q());
    CHECK(perp_space(R) == symmetrizer(2, 2, Q()));
    for (int v = 2; v <= 3; ++v) CHECK(perp_space(antisymmetrizer(v, 2, Q())) == symmetrizer(v, 2, Q()));
    CHECK(perp_space(Subspace::full(2, 3, Q())).dim() == 0);
    Subspace RE = type_e_relations(), SE = perp_space(RE);
    for (const auto& s : SE.basis())
      for (const auto& r : RE.basis()) {
        FieldElement dot = FieldElement::zero(E());
        for (const auto& [k, c] : s)
          if (auto it = r.find(k); it != r.end()) dot += c * it->second;
        CHECK(dot.is_zero());
      }
  }

  TEST_CASE("sum and intersection dimensions agree") {
    std::mt19937 rng(11);
    for (int t = 0; t < 20; ++t) {
      Subspace U = random_subspace(2, 3, 1 + t % 5, rng), W = random_subspace(2, 3, 1 + (t * 7) % 6, rng);
      CHECK(subspace_sum(U, W).dim() + subspace_intersect(U, W).dim() == U.dim() + W.dim());
      CHECK(U.contains(subspace_intersect(U, W)));
      CHECK(W.contains(subspace_intersect(U, W)));
    }
  }

  TEST_CASE("map composition, tensor and restriction") {
    std::mt19937 rng(3);
    auto phi = random_map(2, 2, 0, rng);
    auto id = identity_map(2, 1, FieldElement::one(Q()));
    auto t = map_tensor(id, phi);
    CHECK(t.in_deg == 3);
    CHECK(t.out_deg == 1);
    auto f = random_map(2, 2, 1, rng);
    CHECK(map_compose(f, identity_map(2, 2, FieldElement::one(Q()))) == f);
    CHECK(map_compose(identity_map(2, 1, FieldElement::one(Q())), f) == f);
    Alphabet A(2);
    std::vector<Factor<FieldElement>> fs = {{&id, 0}, {&phi, 0}};
    for (std::uint64_t w = 0; w < 8; ++w) {
      NumVec e{{w, FieldElement::one(Q())}};
      CHECK(t.apply(e) == apply_factors(A, fs, e));
    }
  }

  TEST_CASE("bracket on the type E overlap gives the eight monomial equations") {
    auto ring = PolyRing::make(3, {"a11", "a12", "a13", "a14", "b11", "b12", "b13", "b14"});
    auto var = [&](const std::string& n) { return RationalFunction::variable(ring, n); };
    const RationalFunction one = RationalFunction::constant(ring, mpq_class(1));
    Alphabet A(2);
    Subspace R = type_e_relations();
    std::vector<NumVec> gens = {numvec_from_pairs(A, E(), {{"yyy", "1"}, {"xxx", "1"}}),
                                numvec_from_pairs(A, E(), {{"yyx", "1"}, {"yxy", "z"}, {"xyy", "z^2"}})};
    std::vector<SparseVec<RationalFunction>> images(2);
    for (std::uint64_t m = 0; m < 4; ++m) {
      images[0].emplace(m, var("a1" + std::to_string(m + 1)));
      images[1].emplace(m, var("b1" + std::to_string(m + 1)));
    }
    auto alpha = extend_from_relations(R, gens, images, 2, one);
    CHECK(alpha.apply(lift_vec(gens[0], one)) == images[0]);
    CHECK(alpha.apply(lift_vec(gens[1], one)) == images[1]);
    Subspace ov = subspace_intersect(tensor_subspace(R, 1, 0), tensor_subspace(R, 0, 1));
    auto br = bracket(alpha, R, ov, one);
    REQUIRE(br.size() == 1);
    auto coef = [&](const std::string& w) {
      auto it = br[0].find(A.parse(w).idx);
      return it == br[0].end() ? RationalFunction(ring) : it->second;
    };
    auto rf = [&](const std::string& s) { return parse_expression(ring, s); };
    CHECK(coef("xxx").is_zero());
    CHECK(coef("xxy") == rf("a12 - z*b11"));
    CHECK(coef("xyx") == rf("a13 - a12"));
    CHECK(coef("xyy") == rf("a14 - z*b12"));
    CHECK(coef("yxx") == rf("b11 - a13"));
    CHECK(coef("yxy") == rf("b12 - z*b13"));
    CHECK(coef("yyx") == rf("b13 - a14"));
    CHECK(coef("yyy") == rf("b14 - z*b14"));

    LinMap<RationalFunction> zero{2, 3, 2, {}};
    for (const auto& y : bracket(zero, R, ov, one)) CHECK(y.empty());
  }

  TEST_CASE("so(3) bracket maps the exterior overlap into R") {
    Alphabet A(3);
    const FieldElement one = FieldElement::one(Q());
    ExtMap<FieldElement> L{3, 2, 1, {}};
    // Basis order xy, xz, yz: [x,y] = z, [x,z] = -y, [y,z] = x.
    L.rows = {NumVec{{2, one}}, NumVec{{1, -one}}, NumVec{{0, one}}};
    Subspace R = antisymmetrizer(3, 2, Q());
    auto Lt = ext_to_tensor(L, one);
    std::vector<NumVec> gens = R.basis(), images;
    for (const auto& g : gens) images.push_back(Lt.apply(g));
    auto alpha = extend_from_relations(R, gens, images, 1, one);
    auto br = bracket(alpha, R, antisymmetrizer(3, 3, Q()), one);
    REQUIRE(br.size() == 1);
    CHECK(R.contains(br[0]));
  }

  TEST_CASE("T_a is injective when v >= a+p+r") {
    const FieldElement one = FieldElement::one(Q());
    CHECK(op_Ta(ExtMap<FieldElement>{3, 1, 0, {NumVec{}, NumVec{}, NumVec{}}}, 1).is_zero());
    for (int v = 1; v <= 5; ++v)
      for (unsigned a = 0; static_cast<int>(a) <= v; ++a)
        for (unsigned p = 0; static_cast<int>(a + p) <= v; ++p)
          for (unsigned r = 0; static_cast<int>(a + p + r) <= v; ++r) {
            ExteriorBasis src(v, p), dst(v, r), tdst(v, a + r);
            std::vector<NumVec> images;
            for (std::size_t i = 0; i < src.size(); ++i)
              for (std::size_t k = 0; k < dst.size(); ++k) {
                ExtMap<FieldElement> phi{v, p, r, std::vector<NumVec>(src.size())};
                phi.rows[i].emplace(k, one);
                images.push_back(flatten(op_Ta(phi, a), tdst.size()));
              }
            CAPTURE(v);
            CAPTURE(a);
            CAPTURE(p);
            CAPTURE(r);
            CHECK(sparse_rank(images) == src.size() * dst.size());
          }
    // v = 2, a = 1 on linear forms: both images are nonzero and independent.
    ExtMap<FieldElement> lx{2, 1, 0, {NumVec{{0, one}}, NumVec{}}}, ly{2, 1, 0, {NumVec{}, NumVec{{0, one}}}};
    CHECK(sparse_rank(std::vector<NumVec>{flatten(op_Ta(lx, 1), 2), flatten(op_Ta(ly, 1), 2)}) == 2);
  }

  TEST_CASE("underline operators") {
    std::mt19937 rng(5);
    const FieldElement one = FieldElement::one(Q());
    Alphabet A(3);
    auto L = random_map(3, 2, 1, rng);
    auto id2 = identity_map(3, 2, one);
    CHECK(op_underline(L, 0, 1, one) == L);
    auto u11 = op_underline(L, 1, 1, one);
    auto expect = materialize<FieldElement>(3, {{1, {{&id2, 0}, {&L, 0}}}, {1, {{&L, 0}, {&id2, 0}}}}, one);
    CHECK(u11 == expect);
    auto pm2 = op_pm_underline(L, 2, one);
    auto expect_pm = materialize<FieldElement>(
        3, {{1, {{nullptr, 2}, {&L, 0}}}, {-1, {{nullptr, 1}, {&L, 0}, {nullptr, 1}}}, {1, {{&L, 0}, {nullptr, 2}}}},
        one);
    CHECK(pm2 == expect_pm);
  }

  TEST_CASE("[1, underline{1^{2c}L}] equals underline{±1^{2c+1}L}") {
    std::mt19937 rng(17);
    const FieldElement one = FieldElement::one(Q());
    for (int v = 2; v <= 4; ++v)
      for (unsigned c = 0; c <= 2; ++c) {
        auto L = random_map(v, 2, 1, rng);
        auto id = identity_map(v, 1, one);
        auto u = op_underline(L, c, 1, one);
        CHECK(map_bracket(id, u, one) == op_pm_underline(L, 2 * c + 1, one));
      }
  }

  TEST_CASE("kernel and image laws for maps on exterior powers") {
    const FieldElement one = FieldElement::one(Q());
    // Coordinates of 1^{N-s} ⊗ Φ for each basis form Φ of Hom(∧^s V, k).
    auto phi_family = [&](int v, unsigned N, unsigned s) {
      std::vector<NumVec> fam;
      ExteriorBasis B(v, s);
      for (std::size_t k = 0; k < B.size(); ++k) {
        ExtMap<FieldElement> phi{v, s, 0, std::vector<NumVec>(B.size())};
        phi.rows[k].emplace(0, one);
        auto pt = ext_to_tensor(phi, one);
        auto alpha = materialize<FieldElement>(v, {{1, {{nullptr, N - s}, {&pt, 0}}}}, one);
        fam.push_back(wedge_coordinates(alpha, N));
      }
      return fam;
    };
    auto satisfies = [](const std::vector<NumVec>& rows, const NumVec& x) {
      for (const auto& r : rows) {
        FieldElement dot = FieldElement::zero(Q());
        for (const auto& [k, c] : r)
          if (auto it = x.find(k); it != x.end()) dot += c * it->second;
        if (!dot.is_zero()) return false;
      }
      return true;
    };
    auto check_characterization = [&](const std::vector<NumVec>& rows, std::uint64_t ncols,
                                      const std::vector<NumVec>& family) {
      auto ker = kernel_basis(rows, ncols, one);
      CHECK(ker.size() == sparse_rank(family));
      for (const auto& x : family) CHECK(satisfies(rows, x));
      // Same dimension and one inclusion: the kernel is exactly the family.
      std::vector<NumVec> both = family;
      both.insert(both.end(), ker.begin(), ker.end());
      CHECK(sparse_rank(both) == ker.size());
    };

    struct Case {
      int v;
      unsigned N, s;
    };
    for (Case c : {Case{5, 3, 2}, Case{6, 4, 2}}) {
      const unsigned m = c.N - c.s;
      const std::uint64_t ncols = binomial(static_cast<unsigned>(c.v), c.N) * Alphabet(c.v).power(m);
      auto fam = phi_family(c.v, c.N, c.s);
      CHECK(fam.size() == binomial(static_cast<unsigned>(c.v), c.s));
      const int sign = c.s % 2 ? 1 : -1;  // (-1)^{s-1}
      check_characterization(wedge_condition_rows(c.v, c.N, m, 1, sign, false, Q()), ncols, fam);
    }
    {
      const int v = 5;
      const unsigned N = 3, s = 2, m = 1;
      const std::uint64_t ncols = binomial(v, N) * Alphabet(v).power(m);
      check_characterization(wedge_condition_rows(v, N, m, 1, 0, true, Q()), ncols, phi_family(v, N, s));
    }
    {
      // N = 2p + s + 1 with s = 1, p = 1: {1, α} alternating iff α = underline{1^2 L}.
      const int v = 6;
      const unsigned N = 4, s = 1, m = 3;
      const std::uint64_t ncols = binomial(v, N) * Alphabet(v).power(m);
      std::vector<NumVec> fam;
      ExteriorBasis B2(v, 2);
      for (std::size_t k = 0; k < B2.size(); ++k)
        for (int out = 0; out < v; ++out) {
          ExtMap<FieldElement> L{v, 2, 1, std::vector<NumVec>(B2.size())};
          L.rows[k].emplace(static_cast<std::uint64_t>(out), one);
          auto Lt = ext_to_tensor(L, one);
          fam.push_back(wedge_coordinates(op_underline(Lt, 1, 1, one), N));
        }
      CHECK(sparse_rank(fam) == B2.size() * v);
      check_characterization(wedge_condition_rows(v, N, m, 1, -1, true, Q()), ncols, fam);
      (void)s;
    }
  }

  TEST_CASE("exact sequence 0 -> wedge^p V -> A_p -> S_p V -> 0 for A = T(V)/(xyt - txy)") {
    auto r22 = exact_sequence_check(2, 2);
    CHECK(r22.dim_A == 4);
    CHECK(r22.exact);
    auto r23 = exact_sequence_check(2, 3);
    CHECK(r23.dim_A == 4);
    CHECK(r23.exact);
    auto r33 = exact_sequence_check(3, 3);
    CHECK(r33.dim_A == 11);
    CHECK(r33.exact);
  }
}
