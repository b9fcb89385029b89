#include "pbwforge/wedgedef.hpp"

#include <deque>

namespace pbw {

ExtForm zero_ext_map(int v, unsigned p, unsigned r) {
  return ExtForm{v, p, r, std::vector<SparseVec<FieldElement>>(ExteriorBasis(v, p).size())};
}

ExtForm random_ext_map(int v, unsigned p, unsigned r, const CyclotomicField& field, std::mt19937_64& rng,
                       int range) {
  ExtForm out = zero_ext_map(v, p, r);
  const std::size_t targets = ExteriorBasis(v, r).size();
  std::uniform_int_distribution<int> coef(-range, range);
  for (auto& row : out.rows)
    for (std::size_t k = 0; k < targets; ++k)
      if (const int c = coef(rng)) row.emplace(k, FieldElement(field, c));
  return out;
}

namespace {

struct Term {
  FieldElement coef;
  std::vector<Factor<FieldElement>> factors;
};

// Owns the tensor realizations that Factor pointers refer to.
class Realizer {
 public:
  Realizer(int v, const CyclotomicField& field) : v_(v), one_(FieldElement::one(field)) {
    unit_ = &store_.emplace_back(LinMap<FieldElement>{v, 0, 0, {{0, SparseVec<FieldElement>{{0, one_}}}}});
  }
  const LinMap<FieldElement>* unit() const { return unit_; }
  const LinMap<FieldElement>* add(const ExtForm& f) { return &store_.emplace_back(ext_to_tensor(f, one_)); }
  const LinMap<FieldElement>* add(LinMap<FieldElement> m) { return &store_.emplace_back(std::move(m)); }
  const FieldElement& one() const { return one_; }

 private:
  int v_;
  FieldElement one_;
  std::deque<LinMap<FieldElement>> store_;
  const LinMap<FieldElement>* unit_;
};

void push_identity(std::vector<Factor<FieldElement>>& fs, unsigned width) {
  if (width) fs.push_back({nullptr, width});
}

// Every interleaving of a identity pairs and b copies of L, followed by tail.
void push_underline(std::vector<Term>& out, const FieldElement& coef, const LinMap<FieldElement>* L, unsigned a,
                    unsigned b, const LinMap<FieldElement>* tail) {
  std::vector<bool> is_l(a + b, false);
  std::fill(is_l.end() - b, is_l.end(), true);
  do {
    Term t{coef, {}};
    for (bool l : is_l) {
      if (l) t.factors.push_back({L, 0});
      else push_identity(t.factors, 2);
    }
    if (tail) t.factors.push_back({tail, 0});
    out.push_back(std::move(t));
  } while (std::next_permutation(is_l.begin(), is_l.end()));
}

void check_form(const ExtForm& f, int v, unsigned p, unsigned r, const char* name) {
  if (f.v != v || f.p != p || f.r != r || f.rows.size() != ExteriorBasis(v, p).size())
    throw std::invalid_argument(std::string("wedge data: ") + name + " has the wrong shape");
}

void check_dimension(int v, unsigned N, const WedgeOptions& opt, std::vector<std::string>& warnings) {
  if (v < 1) throw std::invalid_argument("wedge data: need v >= 1");
  if (N == 2) return;  // the classical Lie case holds for every v
  if (static_cast<unsigned>(v) == N + 1) throw std::invalid_argument("wedge data: v = N+1 is not covered");
  if (static_cast<unsigned>(v) <= N) {
    if (!opt.allow_small_v) throw std::invalid_argument("wedge data: v <= N needs allow_small_v");
    warnings.push_back("v <= N: every α list is PBW here, the construction is one choice among many");
  }
}

WedgeBuild assemble(int v, unsigned N, const CyclotomicField& field, const std::vector<std::vector<Term>>& alpha_terms,
                    std::vector<std::string> warnings) {
  Alphabet A(v);
  ExteriorBasis top(v, N);
  std::vector<NumVec> gens;
  for (std::size_t k = 0; k < top.size(); ++k) gens.push_back(wedge_vector(A, top.subset(k), field));
  std::vector<std::vector<SparseVec<FieldElement>>> alpha(N);
  for (unsigned i = 0; i < N; ++i)
    for (const auto& g : gens) {
      const SparseVec<FieldElement> e = lift_vec(g, FieldElement::one(field));
      SparseVec<FieldElement> img;
      for (const auto& t : alpha_terms[i]) sparse_add(img, apply_factors(A, t.factors, e), t.coef);
      alpha[i].push_back(std::move(img));
    }
  return {make_deformation<FieldElement>(v, N, field, std::move(gens), std::move(alpha), FieldElement::one(field)),
          std::move(warnings)};
}

ExtForm unit_form(int v, const CyclotomicField& field) {
  return ExtForm{v, 0, 0, {SparseVec<FieldElement>{{0, FieldElement::one(field)}}}};
}

}  // namespace

WedgeBuild build_alpha_odd(const OddNData& in, const WedgeOptions& opt) {
  if (!in.field) throw std::invalid_argument("wedge data: missing field");
  if (in.N % 2 == 0) throw std::invalid_argument("build_alpha_odd: N must be odd");
  std::vector<std::string> warnings;
  check_dimension(in.v, in.N, opt, warnings);
  check_form(in.l, in.v, 1, 0, "l");
  for (const auto& [deg, f] : in.forms) {
    if (deg % 2 || deg < 2 || deg >= in.N) throw std::invalid_argument("build_alpha_odd: forms need even 2 <= 2r < N");
    check_form(f, in.v, deg, 0, "Φ");
  }
  Realizer real(in.v, *in.field);
  const auto* l = real.add(in.l);
  auto phi = [&](unsigned deg) -> const LinMap<FieldElement>* {
    if (deg == 0) return real.unit();
    auto it = in.forms.find(deg);
    return it == in.forms.end() ? nullptr : real.add(it->second);
  };
  std::vector<std::vector<Term>> terms(in.N);
  for (unsigned i = 1; i <= in.N; ++i) {
    const unsigned deg = i % 2 ? i - 1 : i;
    const auto* form = phi(deg);
    if (!form) continue;
    Term t{real.one(), {}};
    push_identity(t.factors, in.N - i);
    if (i % 2) t.factors.push_back({l, 0});
    t.factors.push_back({form, 0});
    terms[i - 1].push_back(std::move(t));
  }
  return assemble(in.v, in.N, *in.field, terms, std::move(warnings));
}

WedgeBuild build_alpha_even(const EvenNData& in, const WedgeOptions& opt) {
  if (!in.field) throw std::invalid_argument("wedge data: missing field");
  if (in.N % 2 || in.N < 2) throw std::invalid_argument("build_alpha_even: N must be even and >= 2");
  std::vector<std::string> warnings;
  check_dimension(in.v, in.N, opt, warnings);
  check_form(in.L, in.v, 2, 1, "L");
  const unsigned n = in.N / 2;
  for (const auto& [deg, f] : in.forms) {
    if (deg % 2 || deg < 2 || deg >= in.N) throw std::invalid_argument("build_alpha_even: forms need even 2 <= 2r < N");
    check_form(f, in.v, deg, 0, "Φ");
  }
  if (in.top) check_form(*in.top, in.v, in.N, 0, "Φ_N");

  if (opt.skip_conditions) warnings.push_back("side conditions on L and Φ were not checked");
  else if (!jacobi_check(in.L).pass) throw WedgeConditionError("jacobi", 0, "build_alpha_even: L fails the Jacobi identity");
  for (const auto& [deg, f] : in.forms)
    if (!opt.skip_conditions && !gen_jacobi_check(in.L, f).pass)
      throw WedgeConditionError("generalized_jacobi", deg,
                                "build_alpha_even: L∘Φ_" + std::to_string(deg) + "∘L is not zero");
  if (!opt.skip_conditions && in.top && !top_form_check(in.L, *in.top).pass)
    throw WedgeConditionError("top_form", in.N, "build_alpha_even: Φ_N(1^{N-1}⊗L) is not zero");

  Realizer real(in.v, *in.field);
  // ½·sgn·L on words, so that L applied to e_ab = x_a x_b - x_b x_a is L(x_a ∧ x_b).
  auto half = ext_to_tensor(in.L, real.one());
  const FieldElement one_half = real.one() / FieldElement(*in.field, 2);
  for (auto& [w, col] : half.cols)
    for (auto& [k, c] : col) c *= one_half;
  const auto* L = real.add(std::move(half));
  std::map<unsigned, const LinMap<FieldElement>*> phi{{0, nullptr}};
  for (const auto& [deg, f] : in.forms) phi[deg] = real.add(f);

  std::vector<std::vector<Term>> terms(in.N);
  auto underline_sum = [&](std::vector<Term>& out, unsigned r, int shift) {
    // shift = 0 for α_{2r}, 1 for α_{2r+1}.
    for (unsigned t = 0; t <= r; ++t) {
      const int a = static_cast<int>(n) - 2 * static_cast<int>(r) - shift + static_cast<int>(t);
      auto it = phi.find(2 * t);
      if (a < 0 || it == phi.end()) continue;
      push_underline(out, real.one(), L, static_cast<unsigned>(a), 2 * (r - t) + shift, it->second);
    }
  };
  for (unsigned i = 1; i < in.N; ++i) {
    const unsigned r = i / 2;
    if (i % 2 == 0) {
      underline_sum(terms[i - 1], r, 0);
      continue;
    }
    underline_sum(terms[i - 1], r, 1);
    auto it = phi.find(2 * r);
    if (r == 0 || it == phi.end()) continue;
    // Φ_{2r}(1^{2r-1} ⊗ L) : V^{⊗(2r+1)} → k.
    const auto inner = materialize<FieldElement>(in.v, {{1, {{nullptr, 2 * r - 1}, {L, 0}}}}, real.one());
    const auto* contracted = real.add(map_compose(*it->second, inner));
    Term t{FieldElement(*in.field, static_cast<long>(r)), {}};
    push_identity(t.factors, in.N - 2 * r - 1);
    t.factors.push_back({contracted, 0});
    terms[i - 1].push_back(std::move(t));
  }
  if (in.top) terms[in.N - 1].push_back(Term{real.one(), {{real.add(*in.top), 0}}});
  return assemble(in.v, in.N, *in.field, terms, std::move(warnings));
}

JacobiVerdict gen_jacobi_check(const ExtForm& L, const ExtForm& phi) {
  if (L.p != 2 || L.r != 1) throw std::invalid_argument("gen_jacobi_check: L must map ∧²V to V");
  if (phi.r != 0 || phi.p % 2 || phi.v != L.v) throw std::invalid_argument("gen_jacobi_check: Φ must be an even form");
  if (phi.p > 0 && !jacobi_check(L).pass) throw std::invalid_argument("gen_jacobi_check: L fails the Jacobi identity");
  JacobiVerdict out;
  out.degree = phi.p;
  out.composite = ext_compose(L, ext_compose(op_Ta(phi, 2), op_Ta(L, phi.p + 1)));
  out.pass = out.composite.is_zero();
  return out;
}

JacobiVerdict jacobi_check(const ExtForm& L) {
  if (L.rows.empty()) throw std::invalid_argument("jacobi_check: empty bracket");
  const FieldElement* sample = nullptr;
  for (const auto& row : L.rows)
    if (!row.empty()) sample = &row.begin()->second;
  if (!sample) return JacobiVerdict{true, 0, zero_ext_map(L.v, 3, 1)};
  return gen_jacobi_check(L, unit_form(L.v, sample->field()));
}

JacobiVerdict top_form_check(const ExtForm& L, const ExtForm& top) {
  if (top.r != 0 || top.p < 1 || top.v != L.v) throw std::invalid_argument("top_form_check: shape mismatch");
  JacobiVerdict out;
  out.degree = top.p;
  out.composite = ext_compose(top, op_Ta(L, top.p - 1));
  out.pass = out.composite.is_zero();
  return out;
}

PbwReport verify_symmetric_relations(const NumericDeformation& data, unsigned maxdeg, unsigned margin) {
  const Subspace R = data.relations();
  const Subspace sym = symmetrizer(data.v, data.N, *data.field);
  if (!(R.contains(sym) && sym.contains(R)))
    throw std::invalid_argument("verify_symmetric_relations: relations are not S^N(V)");
  return pbw_verify(data, maxdeg, margin);
}

}  // namespace pbw
