#include "pbwforge/artinschelter.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace pbw {

namespace {

struct TagName {
  ASTag tag;
  const char* name;
};

constexpr TagName kTagNames[] = {
    {ASTag::E, "E"},         {ASTag::H, "H"},
    {ASTag::A, "A"},         {ASTag::S1, "S1"},
    {ASTag::S1_alpha1, "S1_alpha1"}, {ASTag::S1_alpha1_aMinus2, "S1_alpha1_aMinus2"},
    {ASTag::S2, "S2"},       {ASTag::S2_plus1, "S2_plus1"},
    {ASTag::S2_minus1, "S2_minus1"}, {ASTag::S2prime, "S2prime"},
};

using Coeffs = std::vector<std::pair<std::string, std::string>>;  // word, coefficient

// Relations in the generic form of their family; branches specialize them.
struct FamilyText {
  unsigned conductor;
  std::vector<std::string> generic_params;
  std::map<std::string, std::string> specialization;
  Coeffs f, g, w;
};

FamilyText family_text(ASTag tag) {
  const Coeffs s1_f{{"xyy", "alpha"}, {"yyx", "alpha^2"}, {"yxy", "a*alpha"}};
  const Coeffs s1_g{{"xxy", "1"}, {"yxx", "alpha"}, {"xyx", "a"}};
  const Coeffs s1_w{{"xxyy", "1"}, {"xyyx", "alpha"}, {"yyxx", "alpha^2"},
                    {"yxxy", "alpha"}, {"xyxy", "a"}, {"yxyx", "a*alpha"}};
  const Coeffs s2_f{{"xyy", "1"}, {"yyx", "alpha"}};
  const Coeffs s2_g{{"xxy", "-alpha"}, {"yxx", "alpha^2"}};
  const Coeffs s2_w{{"xxyy", "1"}, {"xyyx", "alpha"}, {"yyxx", "alpha^2"}, {"yxxy", "-alpha"}};
  switch (tag) {
    case ASTag::E:
      return {3, {}, {},
              {{"yyy", "1"}, {"xxx", "1"}},
              {{"yyx", "1"}, {"yxy", "z"}, {"xyy", "z^2"}},
              {{"yyyx", "1"}, {"yyxy", "z"}, {"yxyy", "z^2"}, {"xyyy", "1"}, {"xxxx", "1"}}};
    case ASTag::H:
      return {8, {}, {},
              {{"yyy", "-z^3"}, {"yxx", "z^2"}, {"xyx", "z"}, {"xxy", "1"}},
              {{"yyx", "1"}, {"yxy", "-z"}, {"xyy", "z^2"}, {"xxx", "z^3"}},
              {{"yyyx", "1"}, {"yyxy", "-z"}, {"yxyy", "z^2"}, {"xyyy", "-z^3"},
               {"xxxy", "1"}, {"xxyx", "z"}, {"xyxx", "z^2"}, {"yxxx", "z^3"}}};
    case ASTag::A:
      return {1, {"a", "b"}, {},
              {{"yyx", "a"}, {"yxy", "b"}, {"xyy", "a"}, {"xxx", "1"}},
              {{"yyy", "1"}, {"yxx", "a"}, {"xyx", "b"}, {"xxy", "a"}},
              {{"yyyy", "1"}, {"xxyy", "a"}, {"xyyx", "a"}, {"yyxx", "a"}, {"yxxy", "a"},
               {"xyxy", "b"}, {"yxyx", "b"}, {"xxxx", "1"}}};
    case ASTag::S1: return {1, {"a", "alpha"}, {}, s1_f, s1_g, s1_w};
    case ASTag::S1_alpha1: return {1, {"a", "alpha"}, {{"alpha", "1"}}, s1_f, s1_g, s1_w};
    case ASTag::S1_alpha1_aMinus2: return {1, {"a", "alpha"}, {{"alpha", "1"}, {"a", "-2"}}, s1_f, s1_g, s1_w};
    case ASTag::S2: return {1, {"alpha"}, {}, s2_f, s2_g, s2_w};
    case ASTag::S2_plus1: return {1, {"alpha"}, {{"alpha", "1"}}, s2_f, s2_g, s2_w};
    case ASTag::S2_minus1: return {1, {"alpha"}, {{"alpha", "-1"}}, s2_f, s2_g, s2_w};
    case ASTag::S2prime:
      return {1, {}, {},
              {{"yyx", "1"}, {"xyy", "1"}, {"xxx", "1"}},
              {{"yxx", "1"}, {"xxy", "-1"}},
              {{"xxyy", "1"}, {"xyyx", "1"}, {"yyxx", "1"}, {"yxxy", "-1"}, {"xxxx", "1"}}};
  }
  throw std::logic_error("unknown family tag");
}

const Alphabet& two_letters() {
  static const Alphabet A(2);
  return A;
}

std::vector<std::string> solve_order() {
  auto names = as_coefficient_names();
  names.push_back("beta");
  names.push_back("gamma");
  return names;
}

// Generic parameters values away from every branch locus (α ≠ 0, ±1, a ≠ -2).
const std::map<std::string, long>& nominal_parameters() {
  static const std::map<std::string, long> values{{"a", 3}, {"alpha", 2}, {"b", 5}};
  return values;
}

RationalFunction zero_of(const RingPtr& ring) { return RationalFunction(ring); }

RationalFunction var(const RingPtr& ring, const std::string& name) { return RationalFunction::variable(ring, name); }

SymTensor parse_tensor(const RingPtr& ring, const Coeffs& cs, const Bindings& spec) {
  SymTensor out;
  for (const auto& [word, coef] : cs) {
    RationalFunction c = substitute(parse_expression(ring, coef), spec);
    tensor_add(out, two_letters().parse(word), c);
  }
  return out;
}

SymTensor letter(const RingPtr& ring, int i) {
  return SymTensor{{two_letters().letter(i), RationalFunction::constant(ring, mpq_class(1))}};
}

SymTensor mul(const SymTensor& a, const SymTensor& b) { return tensor_mul(two_letters(), a, b); }

SymTensor combine(const SymTensor& a, const RationalFunction& ca, const SymTensor& b, const RationalFunction& cb) {
  SymTensor out;
  tensor_add(out, a, ca);
  tensor_add(out, b, cb);
  return out;
}

RationalFunction coefficient(const SymTensor& t, const Word& w, const RingPtr& ring) {
  auto it = t.find(w);
  return it == t.end() ? zero_of(ring) : it->second;
}

// Solves w = Σ_j c_j·u_j over the four products of a letter with f or g.
std::array<SymTensor, 2> linear_expression(const RingPtr& ring, const std::array<SymTensor, 2>& rel,
                                           const SymTensor& w, bool letter_left) {
  std::vector<SymTensor> cols;
  for (int j = 0; j < 2; ++j)
    for (int l = 0; l < 2; ++l)
      cols.push_back(letter_left ? mul(letter(ring, l), rel[static_cast<std::size_t>(j)])
                                 : mul(rel[static_cast<std::size_t>(j)], letter(ring, l)));
  std::vector<std::vector<RationalFunction>> m;
  std::vector<RationalFunction> rhs;
  for (std::uint64_t k = 0; k < two_letters().power(4); ++k) {
    const Word word{4, k};
    std::vector<RationalFunction> row;
    for (const auto& c : cols) row.push_back(coefficient(c, word, ring));
    m.push_back(std::move(row));
    rhs.push_back(coefficient(w, word, ring));
  }
  const auto sol = solve_dense(m, rhs, cols.size(), zero_of(ring));
  if (!sol.inconsistent.empty() || !sol.free_columns.empty())
    throw std::logic_error("family data: w is not uniquely a combination of f and g");
  std::array<SymTensor, 2> out;
  for (std::size_t i = 0; i < sol.pivots.size(); ++i) {
    const std::size_t col = sol.pivots[i];
    tensor_add(out[col / 2], two_letters().letter(static_cast<int>(col % 2)), sol.reduced_rhs[i]);
  }
  return out;
}

NumVec numeric_vector(const SymTensor& t, const Bindings& point) {
  NumVec out;
  for (const auto& [w, c] : t) sparse_add(out, w.idx, substitute(c, point).constant_value());
  return out;
}

std::string word_label(const Word& w) {
  if (w.len == 0) return "1";
  const std::string s = two_letters().to_string(w);
  std::string out;
  for (std::size_t i = 0; i < s.size();) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    out += s[i];
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

// α_k applied to f (j = 0) or g (j = 1), with symbolic coefficients.
SymTensor alpha_image(const RingPtr& ring, unsigned k, int j) {
  const std::string p = j == 0 ? "a" : "b";
  SymTensor out;
  const unsigned len = 3 - k;
  for (std::uint64_t i = 0; i < two_letters().power(len); ++i) {
    const std::string name = len == 0 ? p + "3" : p + std::to_string(k) + std::to_string(i + 1);
    tensor_add(out, Word{len, i}, var(ring, name));
  }
  return out;
}

bool involves_any(const Polynomial& p, const std::vector<std::size_t>& vars) {
  return std::any_of(vars.begin(), vars.end(), [&](std::size_t v) { return p.involves(v); });
}

// ---------------------------------------------------------------- spans

// Splits a polynomial into solve-variable monomials with coefficients in the
// remaining (parameter) variables.
std::map<Exponents, Polynomial> split(const Polynomial& p, const std::vector<bool>& is_solve) {
  std::map<Exponents, Polynomial> out;
  for (const auto& [e, c] : p.terms()) {
    Exponents outer(e.size(), 0), inner(e.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) (is_solve[i] ? outer : inner)[i] = e[i];
    auto it = out.try_emplace(outer, Polynomial(p.ring())).first;
    it->second.add_term(inner, c);
  }
  return out;
}

// Linear span over the parameter field of generator polynomials, keyed by
// solve-variable monomials.
class MonomialSpan {
 public:
  MonomialSpan(RingPtr ring, std::vector<bool> is_solve) : ring_(std::move(ring)), is_solve_(std::move(is_solve)) {}

  void add(const Polynomial& p) { ech_.insert(to_sparse(p)); }
  bool contains(const Polynomial& p) { return ech_.contains(to_sparse(p)); }
  Echelon<RationalFunction>& echelon() { return ech_; }
  const std::map<std::uint64_t, Exponents>& monomials() const { return by_index_; }

  SparseVec<RationalFunction> to_sparse(const Polynomial& p) {
    SparseVec<RationalFunction> out;
    for (auto& [mono, c] : split(p, is_solve_)) {
      auto it = index_.find(mono);
      if (it == index_.end()) {
        it = index_.emplace(mono, index_.size()).first;
        by_index_.emplace(it->second, mono);
      }
      out.emplace(it->second, RationalFunction(c));
    }
    return out;
  }

  // Registers monomials so that larger ones (MonomialGreater) get larger keys.
  void preregister(std::vector<Exponents> monos) {
    std::sort(monos.begin(), monos.end(), [](const Exponents& a, const Exponents& b) { return MonomialGreater{}(b, a); });
    monos.erase(std::unique(monos.begin(), monos.end()), monos.end());
    for (const auto& m : monos) {
      if (index_.count(m)) continue;
      const std::uint64_t k = index_.size();
      index_.emplace(m, k);
      by_index_.emplace(k, m);
    }
  }

  RationalFunction to_function(const SparseVec<RationalFunction>& row) const {
    RationalFunction out = zero_of(ring_);
    for (const auto& [k, c] : row) {
      Polynomial mono(ring_);
      mono.add_term(by_index_.at(k), FieldElement::one(ring_->field()));
      out += c * RationalFunction(mono);
    }
    return out;
  }

 private:
  RingPtr ring_;
  std::vector<bool> is_solve_;
  std::map<Exponents, std::uint64_t> index_;
  std::map<std::uint64_t, Exponents> by_index_;
  Echelon<RationalFunction> ech_;
};

std::vector<bool> solve_mask(const RingPtr& ring) {
  std::vector<bool> mask(ring->nvars(), false);
  for (const auto& n : solve_order())
    if (auto i = ring->index_of(n)) mask[*i] = true;
  return mask;
}

// Monomials of degree <= maxdeg in the given variables.
std::vector<Exponents> monomials_upto(std::size_t nvars, const std::vector<std::size_t>& vars, unsigned maxdeg) {
  std::vector<Exponents> out{Exponents(nvars, 0)};
  std::vector<Exponents> frontier = out;
  for (unsigned d = 1; d <= maxdeg; ++d) {
    std::set<Exponents> next;
    for (const auto& e : frontier)
      for (std::size_t v : vars) {
        Exponents x = e;
        ++x[v];
        next.insert(x);
      }
    frontier.assign(next.begin(), next.end());
    out.insert(out.end(), frontier.begin(), frontier.end());
  }
  return out;
}

// Membership in the span of relations times low-degree monomials.
class RelationIdeal {
 public:
  RelationIdeal(const RingPtr& ring, const std::vector<RationalFunction>& relations,
                const std::vector<std::string>& multiplier_names, unsigned degree = 2)
      : span_(ring, solve_mask(ring)), empty_(relations.empty()) {
    std::vector<std::size_t> vars;
    for (const auto& n : multiplier_names)
      if (auto i = ring->index_of(n)) vars.push_back(*i);
    const auto monos = monomials_upto(ring->nvars(), vars, degree);
    for (const auto& r : relations)
      for (const auto& m : monos) {
        Polynomial mono(ring);
        mono.add_term(m, FieldElement::one(ring->field()));
        span_.add(r.num() * mono);
      }
  }
  bool contains(const RationalFunction& x) {
    if (x.is_zero()) return true;
    if (empty_) return false;
    return span_.contains(x.num());
  }

 private:
  MonomialSpan span_;
  bool empty_;
};

// ---------------------------------------------------------------- elimination

class Eliminator {
 public:
  explicit Eliminator(RingPtr ring) : ring_(std::move(ring)), order_(solve_order()) {
    for (const auto& n : order_)
      if (auto i = ring_->index_of(n)) solve_idx_.push_back(*i);
  }

  RationalFunction apply(const RationalFunction& x) const { return values_.empty() ? x : substitute(x, values_); }

  void bind(const std::string& name, const RationalFunction& value) {
    const Bindings one{{name, value}};
    for (auto& [n, v] : values_) v = substitute(v, one);
    values_[name] = value;
  }

  // Absorbs conditions "c = 0", revisiting the relations after every binding.
  void absorb(std::vector<RationalFunction> pending) {
    while (!pending.empty()) {
      RationalFunction c = apply(pending.back());
      pending.pop_back();
      if (c.is_zero()) continue;
      if (try_solve(c)) {
        pending.insert(pending.end(), relations_.begin(), relations_.end());
        relations_.clear();
        continue;
      }
      if (!involves_any(c.num(), solve_idx_)) {
        if (!contradiction_) contradiction_ = c.to_string() + " = 0";
        continue;
      }
      relations_.push_back(c);
    }
  }

  const Bindings& values() const { return values_; }
  const std::vector<RationalFunction>& relations() const { return relations_; }
  const std::optional<std::string>& contradiction() const { return contradiction_; }

  std::vector<std::string> free_names() const {
    std::vector<std::string> out;
    for (const auto& n : order_)
      if (ring_->index_of(n) && !values_.count(n)) out.push_back(n);
    return out;
  }

 private:
  bool try_solve(const RationalFunction& c) {
    const Polynomial& p = c.num();
    for (std::size_t k = 0; k < order_.size(); ++k) {
      auto idx = ring_->index_of(order_[k]);
      if (!idx || p.degree_in(*idx) != 1) continue;
      auto parts = p.coefficients_in(*idx);
      const Polynomial& lead = parts.at(1);
      if (involves_any(lead, solve_idx_)) continue;
      const Polynomial rest = parts.count(0) ? parts.at(0) : Polynomial(ring_);
      bind(order_[k], -RationalFunction(rest) / RationalFunction(lead));
      return true;
    }
    return false;
  }

  RingPtr ring_;
  std::vector<std::string> order_;
  std::vector<std::size_t> solve_idx_;
  Bindings values_;
  std::vector<RationalFunction> relations_;
  std::optional<std::string> contradiction_;
};

// Canonical basis of the span of the relations: reduced echelon over the
// parameter field, pivots on leading monomials, listed by decreasing pivot.
std::vector<RationalFunction> canonical_relations(const RingPtr& ring, const std::vector<RationalFunction>& rels) {
  if (rels.empty()) return {};
  MonomialSpan span(ring, solve_mask(ring));
  std::vector<Exponents> monos;
  for (const auto& r : rels)
    for (const auto& [m, c] : split(r.num(), solve_mask(ring))) monos.push_back(m);
  span.preregister(monos);
  for (const auto& r : rels) span.add(r.num());
  span.echelon().make_reduced();
  std::vector<RationalFunction> out;
  const auto& rows = span.echelon().rows();
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) out.push_back(span.to_function(it->second));
  return out;
}

SolvedTable finish(const ASFamily& fam, const Eliminator& el) {
  SolvedTable t;
  t.tag = fam.tag;
  t.ring = fam.ring;
  t.values = el.values();
  t.free = el.free_names();
  t.relations = canonical_relations(fam.ring, el.relations());
  t.contradiction = el.contradiction();
  t.stage4_residual = zero_of(fam.ring);
  return t;
}

}  // namespace

// ---------------------------------------------------------------- public API

const std::vector<ASTag>& all_as_tags() {
  static const std::vector<ASTag> tags = [] {
    std::vector<ASTag> out;
    for (const auto& t : kTagNames) out.push_back(t.tag);
    return out;
  }();
  return tags;
}

std::string as_tag_name(ASTag tag) {
  for (const auto& t : kTagNames)
    if (t.tag == tag) return t.name;
  throw std::logic_error("unknown family tag");
}

std::optional<ASTag> parse_as_tag(const std::string& name) {
  for (const auto& t : kTagNames)
    if (name == t.name) return t.tag;
  return std::nullopt;
}

const std::vector<std::string>& as_coefficient_names() {
  static const std::vector<std::string> names{"a11", "a12", "a13", "a14", "b11", "b12", "b13",
                                              "b14", "a21", "a22", "b21", "b22", "a3",  "b3"};
  return names;
}

ASFamily family_data(ASTag tag) {
  const FamilyText text = family_text(tag);
  ASFamily fam;
  fam.tag = tag;
  fam.specialization = text.specialization;
  std::vector<std::string> vars = solve_order();
  for (const auto& p : text.generic_params)
    if (!text.specialization.count(p)) fam.parameters.push_back(p);
  vars.insert(vars.end(), fam.parameters.begin(), fam.parameters.end());
  fam.ring = PolyRing::make(text.conductor, vars);

  // Parse in the generic ring, specialize, then move to the branch ring.
  std::vector<std::string> generic_vars = solve_order();
  generic_vars.insert(generic_vars.end(), text.generic_params.begin(), text.generic_params.end());
  const RingPtr generic = PolyRing::make(text.conductor, generic_vars);
  Bindings spec;
  for (const auto& [name, value] : text.specialization) spec[name] = parse_expression(generic, value);
  auto load = [&](const Coeffs& cs) {
    SymTensor out;
    for (auto& [w, c] : parse_tensor(generic, cs, spec)) out.emplace(w, change_ring(c, fam.ring));
    return out;
  };
  fam.f = load(text.f);
  fam.g = load(text.g);
  fam.w = load(text.w);

  const std::array<SymTensor, 2> rel{fam.f, fam.g};
  fam.left = linear_expression(fam.ring, rel, fam.w, true);
  fam.right = linear_expression(fam.ring, rel, fam.w, false);
  const RationalFunction one = RationalFunction::constant(fam.ring, mpq_class(1));
  const SymTensor lhs = combine(mul(fam.left[0], fam.f), one, mul(fam.left[1], fam.g), one);
  const SymTensor rhs = combine(mul(fam.f, fam.right[0]), one, mul(fam.g, fam.right[1]), one);
  if (lhs != fam.w || rhs != fam.w) throw std::logic_error("family data: expansion of w does not reproduce w");

  Bindings point;
  for (const auto& p : fam.parameters)
    point[p] = RationalFunction::constant(fam.ring, mpq_class(nominal_parameters().at(p)));
  const CyclotomicField& F = fam.ring->field();
  const Subspace R = Subspace::from_vectors(2, 3, F, {numeric_vector(fam.f, point), numeric_vector(fam.g, point)});
  const Subspace O = overlap_space(R);
  if (R.dim() != 2 || O.dim() != 1 || !O.contains(numeric_vector(fam.w, point)))
    throw std::logic_error("family data: w does not span the overlap space");
  return fam;
}

std::vector<EquationStage> derive_equations(const ASFamily& fam) {
  const RingPtr& ring = fam.ring;
  const std::array<SymTensor, 2> rel{fam.f, fam.g};
  const RationalFunction one = RationalFunction::constant(ring, mpq_class(1));
  const RationalFunction beta = var(ring, "beta"), gamma = var(ring, "gamma");
  std::vector<EquationStage> stages;
  SymTensor lower = combine(fam.f, beta, fam.g, gamma);  // α_{k-1}(βf + γg), α_0 = 1
  for (unsigned k = 1; k <= 4; ++k) {
    EquationStage st;
    st.stage = k;
    SymTensor eq = lower;
    if (k <= 3) {
      for (int j = 0; j < 2; ++j) {
        const SymTensor img = alpha_image(ring, k, j);
        tensor_add(eq, mul(fam.left[static_cast<std::size_t>(j)], img), -one);
        tensor_add(eq, mul(img, fam.right[static_cast<std::size_t>(j)]), one);
        for (const auto& [w, c] : img)
          for (const auto& [e, d] : c.num().terms()) {
            (void)d;
            for (std::size_t i = 0; i < e.size(); ++i)
              if (e[i] && std::find(st.unknowns.begin(), st.unknowns.end(), ring->vars()[i]) == st.unknowns.end())
                st.unknowns.push_back(ring->vars()[i]);
          }
      }
      // a before b, index order.
      std::stable_sort(st.unknowns.begin(), st.unknowns.end(),
                       [](const std::string& x, const std::string& y) { return x[0] < y[0]; });
    }
    const unsigned len = 4 - k;
    for (std::uint64_t i = 0; i < two_letters().power(len); ++i) {
      const Word w{len, i};
      st.labels.push_back(word_label(w));
      st.equations.push_back(coefficient(eq, w, ring));
    }
    if (!st.unknowns.empty()) {
      try {
        (void)linear_extract(st.equations, st.unknowns);
      } catch (const std::invalid_argument& e) {
        throw std::runtime_error("stage " + std::to_string(k) + " is not affine in its unknowns: " + e.what());
      }
    }
    if (k <= 3) {
      SymTensor next;
      tensor_add(next, alpha_image(ring, k, 0), beta);
      tensor_add(next, alpha_image(ring, k, 1), gamma);
      lower = std::move(next);
    }
    stages.push_back(std::move(st));
  }
  return stages;
}

SolvedTable staged_solve(const ASFamily& fam) {
  const auto stages = derive_equations(fam);
  Eliminator el(fam.ring);
  const RationalFunction zero = zero_of(fam.ring);
  RationalFunction stage4 = zero;
  for (const auto& st : stages) {
    std::vector<RationalFunction> eqs;
    for (const auto& e : st.equations) eqs.push_back(el.apply(e));
    if (st.unknowns.empty()) {
      if (st.stage == 4)
        for (const auto& e : eqs) stage4 += e;
      el.absorb(eqs);
      continue;
    }
    const LinearSystem sys = linear_extract(eqs, st.unknowns);
    if (sys.matrix.empty()) continue;
    const auto sol = solve_dense(sys.matrix, sys.rhs, st.unknowns.size(), zero);
    for (std::size_t i = 0; i < sol.pivots.size(); ++i) {
      RationalFunction value = sol.reduced_rhs[i];
      for (std::size_t j : sol.free_columns)
        if (!sol.reduced[i][j].is_zero()) value -= sol.reduced[i][j] * var(fam.ring, st.unknowns[j]);
      el.bind(st.unknowns[sol.pivots[i]], value);
    }
    el.absorb(sol.inconsistent);
  }
  SolvedTable t = finish(fam, el);
  t.stage4_residual = stage4;
  return t;
}

TableVerdict verify_table(const ASFamily& fam, const SolvedTable& table) {
  TableVerdict out;
  for (const auto& [name, value] : table.values)
    for (const auto& [other, v2] : table.values) {
      auto idx = fam.ring->index_of(other);
      if (idx && value.num().involves(*idx)) {
        out.pass = false;
        out.residuals.push_back({0, name, "value refers to the determined name " + other});
      }
    }
  RelationIdeal ideal(fam.ring, table.relations, table.free);
  for (const auto& st : derive_equations(fam))
    for (std::size_t i = 0; i < st.equations.size(); ++i) {
      const RationalFunction r = substitute(st.equations[i], table.values);
      if (ideal.contains(r)) continue;
      out.pass = false;
      out.residuals.push_back({st.stage, st.labels[i], r.to_string()});
    }
  return out;
}

ReferenceTable reference_table(ASTag tag) {
  ReferenceTable ref;
  auto eq = [&](const std::string& l, const std::string& r) { ref.equalities.emplace_back(l, r); };
  // a = b = c → a = b, b = c.
  auto chain = [&](std::initializer_list<const char*> xs) {
    std::vector<std::string> v(xs.begin(), xs.end());
    for (std::size_t i = 0; i + 1 < v.size(); ++i) eq(v[i], v[i + 1]);
  };
  switch (tag) {
    case ASTag::E:
      ref.explicit_values = true;
      ref.free = {"a11", "a21", "a3", "gamma"};
      eq("beta", "0");
      for (const char* n : {"a12", "a13", "b11", "b14", "b21", "b22", "b3"}) eq(n, "0");
      eq("b12", "gamma*z/(1+z)");
      eq("b13", "-gamma*z/(1+z)");
      eq("a14", "gamma*(1+2*z^2)/(z+1)");
      eq("a22", "gamma^2*z/(1+z)");
      break;
    case ASTag::H:
      ref.explicit_values = true;
      ref.free = {"beta", "gamma"};
      eq("a11", "1/2*gamma*(z^3-z^2-z-1)");
      eq("a12", "-1/2*beta*(3*z^3+3*z^2+3*z+1)");
      eq("a13", "-1/2*beta*(3*z^3+3*z^2-z-3)");
      eq("a14", "3/2*gamma*(z^3+z^2-z+1)");
      eq("a21", "gamma*beta*z*(z^2+2*z+1)");
      eq("a22", "3/2*beta^2*z^3-3/2*z*beta^2-2*beta^2+3/2*gamma^2*z^3-3*gamma^2*z^2+3/2*gamma^2*z");
      eq("a3",
         "-1/2*gamma*(2*beta^2*z^3+2*gamma^2*z^3+beta^2*z^2-gamma^2*z^2-z*beta^2-gamma^2*z-2*beta^2+2*gamma^2)");
      eq("b11", "-3/2*beta*(z^3-z^2-z-1)");
      eq("b12", "1/2*gamma*(3*z^3-3*z^2-z+3)");
      eq("b13", "1/2*gamma*(3*z^3-3*z^2+3*z-1)");
      eq("b14", "-1/2*beta*(z^3+z^2-z+1)");
      eq("b21", "-3/2*beta^2*z^3-3*beta^2*z^2+3/2*gamma^2*z-3/2*gamma^2*z^3-2*gamma^2-3/2*z*beta^2");
      eq("b22", "-gamma*beta*z*(z^2-2*z+1)");
      eq("b3",
         "1/2*beta*(2*beta^2*z^3+2*gamma^2*z^3+beta^2*z^2-gamma^2*z^2-z*beta^2-gamma^2*z-2*beta^2+2*gamma^2)");
      break;
    case ASTag::A:
      eq("beta", "0");
      eq("gamma", "0");
      chain({"a14", "b13", "b12"});
      chain({"a13", "a12", "b11"});
      eq("b21", "a22");
      break;
    case ASTag::S1:
      ref.explicit_values = true;
      ref.free = {"b21", "beta", "gamma"};
      eq("a11", "0");
      eq("a12", "-gamma*(2+a)*alpha/(alpha-1)");
      eq("a13", "-gamma*(2*alpha+a)*alpha/(alpha-1)");
      eq("a14", "beta*alpha^2*(1+a+alpha)/(alpha-1)");
      eq("a21", "gamma^2*(1+a+alpha)*alpha/(alpha-1)^2");
      eq("a22", "alpha*b21");
      eq("a3",
         "-gamma*(beta*gamma*alpha+beta*gamma*alpha*a+alpha^2*beta*gamma+b21-2*b21*alpha+b21*alpha^2)*alpha/"
         "(alpha-1)^3");
      eq("b11", "-gamma*(1+a+alpha)/(alpha-1)");
      eq("b12", "alpha*beta*(2+a)/(alpha-1)");
      eq("b13", "alpha*beta*(2*alpha+a)/(alpha-1)");
      eq("b14", "0");
      eq("b22", "beta^2*alpha^2*(1+a+alpha)/(alpha-1)^2");
      eq("b3",
         "beta*(alpha*b21-2*alpha*b21*alpha+alpha*b21*alpha^2+alpha^2*beta*gamma+alpha^2*beta*gamma*a+"
         "alpha^3*beta*gamma)/(alpha-1)^3");
      break;
    case ASTag::S1_alpha1:
      eq("gamma", "0");
      eq("beta", "0");
      chain({"b11", "a12", "a13"});
      chain({"b12", "b13", "a14"});
      eq("a22", "b21");
      break;
    case ASTag::S1_alpha1_aMinus2:
      eq("a12", "b11+gamma");
      eq("a13", "b11-gamma");
      eq("b12", "a14-beta");
      eq("b13", "a14+beta");
      eq("beta*a14+gamma*b14", "0");
      eq("beta*a14+gamma*b14", "0");
      eq("beta*a12+gamma*b12", "0");
      eq("beta*a13+gamma*b13", "0");
      eq("beta*b11+gamma*a14", "0");
      eq("beta*a21+gamma*b21", "0");
      eq("beta*a22+gamma*b22", "0");
      eq("b21", "a22");
      eq("beta^2*a21", "gamma^2*b22");
      eq("beta*a3+gamma*b3", "0");
      break;
    case ASTag::S2:
      ref.explicit_values = true;
      ref.free = {"beta", "gamma"};
      eq("a11", "0");
      eq("a12", "-2*alpha*gamma/(1+alpha)");
      eq("a13", "-2*alpha^2*gamma/(1+alpha)");
      eq("a14", "(1+alpha)*beta/(alpha-1)");
      eq("a21", "alpha^2*gamma^2/(1+alpha)");
      eq("a22", "2*alpha*beta*gamma/(1-alpha)");
      eq("a3", "alpha^2*beta*gamma^2/(alpha^2-1)");
      eq("b11", "alpha^2*gamma*(1-alpha)/(1+alpha)");
      eq("b12", "2*beta*alpha/(1-alpha)");
      eq("b13", "2*beta*alpha^2/(alpha-1)");
      eq("b14", "0");
      eq("b21", "-2*alpha^2*beta*gamma/(1+alpha)");
      eq("b22", "alpha*beta^2/(alpha-1)");
      eq("b3", "alpha^2*beta^2*gamma/(1-alpha^2)");
      break;
    case ASTag::S2_plus1:
    case ASTag::S2prime:
      for (const char* n : {tag == ASTag::S2_plus1 ? "beta" : "gamma", "b11", "b14", "b21", "b22", "b3"}) eq(n, "0");
      chain({"a12", "a13", "-gamma"});
      chain({"a14", "b13", "-b12"});
      eq("a22", "gamma*b12");
      break;
    case ASTag::S2_minus1:
      for (const char* n : {"gamma", "a11", "a14", "a21", "a22", "a3"}) eq(n, "0");
      chain({"b12", "b13", "-beta"});
      chain({"b11", "a12", "-a13"});
      eq("b21", "beta*a13");
      break;
  }
  return ref;
}

SolvedTable table_from_equalities(const ASFamily& fam, const ReferenceTable& ref) {
  Eliminator el(fam.ring);
  std::vector<RationalFunction> conds;
  for (const auto& [l, r] : ref.equalities)
    conds.push_back(parse_expression(fam.ring, l) - parse_expression(fam.ring, r));
  // Process in the listed order.
  std::reverse(conds.begin(), conds.end());
  el.absorb(conds);
  return finish(fam, el);
}

TableComparison compare_tables(const ASFamily& fam, const SolvedTable& solved, const ReferenceTable& ref) {
  TableComparison out;
  const SolvedTable theirs = table_from_equalities(fam, ref);
  {
    RelationIdeal ideal(fam.ring, solved.relations, solved.free);
    for (const auto& [l, r] : ref.equalities) {
      const RationalFunction d = parse_expression(fam.ring, l) - parse_expression(fam.ring, r);
      if (!ideal.contains(substitute(d, solved.values))) out.reference_not_implied.push_back(l + " = " + r);
    }
  }
  {
    RelationIdeal ideal(fam.ring, theirs.relations, theirs.free);
    for (const auto& [name, value] : solved.values) {
      const RationalFunction d = var(fam.ring, name) - value;
      if (!ideal.contains(substitute(d, theirs.values)))
        out.solver_not_implied.push_back(name + " = " + value.to_string());
    }
    for (const auto& r : solved.relations)
      if (!ideal.contains(substitute(r, theirs.values))) out.solver_not_implied.push_back(r.to_string() + " = 0");
  }
  if (ref.explicit_values) {
    for (const auto& [l, r] : ref.equalities) {
      auto it = solved.values.find(l);
      const RationalFunction expect = parse_expression(fam.ring, r);
      if (it == solved.values.end()) out.entry_mismatches.push_back(l + ": free in the solver, " + expect.to_string());
      else if (it->second != expect)
        out.entry_mismatches.push_back(l + ": " + it->second.to_string() + " vs " + expect.to_string());
    }
    std::vector<std::string> a = solved.free, b = ref.free;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    out.free_match = a == b;
  }
  return out;
}

std::string table_document(const ASFamily& fam, const SolvedTable& table, const TableVerdict& verdict) {
  nlohmann::json doc;
  doc["family"] = as_tag_name(fam.tag);
  doc["field"] = {{"conductor", fam.ring->conductor()}, {"generator", fam.ring->generator_name()}};
  doc["parameters"] = fam.parameters;
  doc["specialization"] = nlohmann::json::object();
  for (const auto& [k, v] : fam.specialization) doc["specialization"][k] = v;
  doc["free"] = table.free;
  doc["values"] = nlohmann::json::object();
  for (const auto& [k, v] : table.values) doc["values"][k] = v.to_string();
  doc["relations"] = nlohmann::json::array();
  for (const auto& r : table.relations) doc["relations"].push_back(r.to_string());
  doc["stage4_residual"] = table.stage4_residual.to_string();
  if (table.contradiction) doc["contradiction"] = *table.contradiction;
  doc["verdict"] = verdict.pass && table.consistent() ? "pass" : "fail";
  return doc.dump(2) + "\n";
}

Bindings numeric_point(const ASFamily& fam, const SolvedTable& table, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> small(1, 5);
  for (int attempt = 0; attempt < 50; ++attempt) {
    Eliminator el(fam.ring);
    for (const auto& [name, value] : table.values) el.bind(name, value);
    // Parameters stay away from branch loci: a ≠ -2, α ∉ {0, ±1}.
    for (const auto& p : fam.parameters) el.bind(p, RationalFunction::constant(fam.ring, mpq_class(small(rng) + 1)));
    for (const char* n : {"beta", "gamma"})
      if (std::find(table.free.begin(), table.free.end(), n) != table.free.end())
        el.bind(n, RationalFunction::constant(fam.ring, mpq_class(small(rng))));
    el.absorb(table.relations);
    for (const auto& n : el.free_names()) el.bind(n, RationalFunction::constant(fam.ring, mpq_class(small(rng) - 3)));
    el.absorb(table.relations);
    if (!el.relations().empty() || el.contradiction()) continue;
    bool all_constant = true;
    for (const auto& [n, v] : el.values()) all_constant = all_constant && v.is_constant();
    if (all_constant) return el.values();
  }
  throw std::runtime_error("numeric_point: no point satisfies the relations");
}

NumericDeformation specialize(const ASFamily& fam, const SolvedTable& table, const Bindings& point) {
  Bindings full = point;
  for (const auto& [name, value] : table.values)
    if (!full.count(name)) full[name] = substitute(value, point);
  auto eval = [&](const RationalFunction& x) {
    const RationalFunction v = substitute(x, full);
    if (!v.is_constant()) throw std::invalid_argument("specialize: point leaves " + v.to_string() + " symbolic");
    return v.constant_value();
  };
  std::vector<NumVec> gens;
  for (const auto* t : {&fam.f, &fam.g}) {
    NumVec v;
    for (const auto& [w, c] : *t) sparse_add(v, w.idx, eval(c));
    gens.push_back(std::move(v));
  }
  std::vector<std::vector<SparseVec<FieldElement>>> alpha(3);
  for (unsigned k = 1; k <= 3; ++k)
    for (int j = 0; j < 2; ++j) {
      SparseVec<FieldElement> img;
      for (const auto& [w, c] : alpha_image(fam.ring, k, j)) sparse_add(img, w.idx, eval(c));
      alpha[k - 1].push_back(std::move(img));
    }
  const CyclotomicField& F = fam.ring->field();
  return make_deformation<FieldElement>(2, 3, F, std::move(gens), std::move(alpha), FieldElement::one(F));
}

}  // namespace pbw
