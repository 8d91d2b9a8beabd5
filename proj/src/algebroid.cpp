#include "lbcm/algebroid.hpp"

namespace lbcm {

Algebroid::Algebroid(Space space)
    : space_(space),
      anchor_(space.base(), space.rank(), space.base().size()),
      table_(space.rank(), std::vector<Section>(space.rank(), Section::zero(space, 1))) {}

Algebroid::Algebroid(Space space, PolyMatrix anchor, std::vector<std::vector<Section>> table)
    : space_(std::move(space)), anchor_(std::move(anchor)), table_(std::move(table)) {
  if (anchor_.rows() != rank() || anchor_.cols() != base().size())
    throw StructureError("anchor matrix has wrong shape for " + space_.name());
  if (table_.size() != rank()) throw StructureError("bracket table has wrong shape");
  for (const auto& row : table_) {
    if (row.size() != rank()) throw StructureError("bracket table has wrong shape");
    for (const auto& c : row) require_section(c, "bracket table entry");
  }
}

void Algebroid::set_anchor(std::size_t i, std::size_t var, Poly value) {
  anchor_(i, var) = std::move(value);
}

void Algebroid::set_bracket(std::size_t i, std::size_t j, const Section& value) {
  require_section(value, "bracket value");
  table_[i][j] = value;
  table_[j][i] = -value;
}

void Algebroid::set_bracket_entry(std::size_t i, std::size_t j, const Section& value) {
  require_section(value, "bracket value");
  table_[i][j] = value;
}

void Algebroid::require_section(const Section& x, const char* what) const {
  if (!(x.space() == space_) || x.degree() != 1)
    throw StructureError(std::string(what) + ": expected a section of " + space_.name() + ", got degree " +
                         std::to_string(x.degree()) + " element of " + x.space().name());
}

void Algebroid::require_form(const GradedElement& w, const char* what) const {
  if (!(w.space().frame == space_.frame) || w.space().variance == space_.variance)
    throw StructureError(std::string(what) + ": expected a form on " + space_.name() + ", got element of " +
                         w.space().name());
}

Poly Algebroid::anchor_apply(const Section& x, const Poly& f) const {
  require_section(x, "anchor_apply");
  Poly out(base());
  if (f.is_constant()) return out;
  for (const auto& [k, xi] : x.components()) {
    const std::size_t i = k[0];
    for (std::size_t var = 0; var < base().size(); ++var) {
      const Poly& a = anchor_(i, var);
      if (a.is_zero()) continue;
      out += xi * a * f.partial(var);
    }
  }
  return out;
}

std::vector<Poly> anchor_vector(const Algebroid& a, const Section& x) {
  std::vector<Poly> out;
  for (std::size_t k = 0; k < a.base().size(); ++k) out.push_back(a.anchor_apply(x, Poly::variable(a.base(), k)));
  return out;
}

Section Algebroid::bracket(const Section& x, const Section& y) const {
  require_section(x, "bracket");
  require_section(y, "bracket");
  Section out = zero_section();
  for (const auto& [ki, xi] : x.components()) {
    for (const auto& [kj, yj] : y.components()) {
      const Section& c = table_[ki[0]][kj[0]];
      if (!c.is_zero()) out += (xi * yj) * c;
    }
  }
  for (const auto& [kj, yj] : y.components()) out.add_term(kj, anchor_apply(x, yj));
  for (const auto& [ki, xi] : x.components()) out.add_term(ki, -anchor_apply(y, xi));
  return out;
}

Poly Algebroid::eval_with_section(const GradedElement& omega, const Section& x, const IndexTuple& rest) const {
  Poly out(base());
  for (const auto& [k, xl] : x.components()) {
    IndexTuple t;
    t.reserve(rest.size() + 1);
    t.push_back(k[0]);
    t.insert(t.end(), rest.begin(), rest.end());
    Poly v = omega.evaluate(std::move(t));
    if (!v.is_zero()) out += xl * v;
  }
  return out;
}

GradedElement Algebroid::differential(const GradedElement& omega) const {
  require_form(omega, "differential");
  const std::size_t k = omega.degree();
  GradedElement out(omega.space(), k + 1);
  if (k + 1 > rank()) return out;
  for (const auto& tuple : increasing_tuples(rank(), k + 1)) {
    Poly val(base());
    // sum_a (-1)^a rho(e_{I_a}) omega(I \ a)
    for (std::size_t a = 0; a <= k; ++a) {
      IndexTuple rest = tuple;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(a));
      const Poly w = omega.component(rest);
      if (w.is_constant()) continue;
      Poly term = anchor_apply(basis(tuple[a]), w);
      if (a % 2) val -= term; else val += term;
    }
    // sum_{a<b} (-1)^{a+b} omega([e_{I_a}, e_{I_b}], I \ {a,b})
    for (std::size_t a = 0; a <= k; ++a) {
      for (std::size_t b = a + 1; b <= k; ++b) {
        const Section& c = table_[tuple[a]][tuple[b]];
        if (c.is_zero()) continue;
        IndexTuple rest;
        for (std::size_t t = 0; t <= k; ++t)
          if (t != a && t != b) rest.push_back(tuple[t]);
        Poly term = eval_with_section(omega, c, rest);
        if ((a + b) % 2) val -= term; else val += term;
      }
    }
    out.add_term(tuple, val);
  }
  return out;
}

GradedElement Algebroid::lie_derivative(const Section& x, const GradedElement& omega) const {
  require_section(x, "lie_derivative");
  require_form(omega, "lie_derivative");
  GradedElement out = contract(x, differential(omega));
  if (omega.degree() > 0) out += differential(contract(x, omega));
  return out;
}

GradedElement Algebroid::ad_basis(std::size_t i, const GradedElement& q) const {
  GradedElement out(space_, q.degree());
  const Section ei = basis(i);
  for (const auto& [kj, qj] : q.components()) {
    out.add_term(kj, anchor_apply(ei, qj));
    for (std::size_t b = 0; b < kj.size(); ++b) {
      const Section& c = table_[i][kj[b]];
      for (const auto& [kl, cl] : c.components()) {
        IndexTuple t = kj;
        t[b] = kl[0];
        out.add_term(std::move(t), qj * cl);
      }
    }
  }
  return out;
}

GradedElement Algebroid::ad_function(const Poly& f, const GradedElement& q) const {
  // [f, q e_J] = -q iota_{df} e_J
  GradedElement out(space_, q.degree() == 0 ? 0 : q.degree() - 1);
  if (q.degree() == 0 || f.is_constant()) return out;
  std::vector<Poly> rho_f(rank(), Poly(base()));
  for (std::size_t i = 0; i < rank(); ++i) rho_f[i] = anchor_apply(basis(i), f);
  for (const auto& [kj, qj] : q.components()) {
    for (std::size_t b = 0; b < kj.size(); ++b) {
      if (rho_f[kj[b]].is_zero()) continue;
      IndexTuple rest = kj;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(b));
      Poly term = qj * rho_f[kj[b]];
      out.add_term(std::move(rest), (b % 2 == 0) ? -term : term);
    }
  }
  return out;
}

GradedElement Algebroid::schouten(const GradedElement& p, const GradedElement& q) const {
  if (!(p.space() == space_) || !(q.space() == space_))
    throw StructureError("schouten: multivectors must live on " + space_.name());
  if (p.degree() + q.degree() == 0) return GradedElement(space_, 0);
  const std::size_t out_deg = p.degree() + q.degree() - 1;
  GradedElement out(space_, out_deg);
  if (out_deg > rank()) return out;
  const bool q_even_shift = (q.degree() % 2) == 1;  // (|Q|-1) even
  for (const auto& [ki, pi] : p.components()) {
    const std::size_t k = ki.size();
    // Factor 0: the coefficient function.
    {
      GradedElement fq = ad_function(pi, q);
      if (!fq.is_zero()) {
        GradedElement term = wedge(fq, GradedElement::basis(space_, ki));
        const bool neg = !q_even_shift && (k % 2 == 1);
        if (neg) out -= term; else out += term;
      }
    }
    // Factors 1..k: basis vectors of the P term.
    for (std::size_t a = 0; a < k; ++a) {
      GradedElement adq = ad_basis(ki[a], q);
      if (adq.is_zero()) continue;
      IndexTuple prefix(ki.begin(), ki.begin() + static_cast<std::ptrdiff_t>(a));
      IndexTuple suffix(ki.begin() + static_cast<std::ptrdiff_t>(a + 1), ki.end());
      GradedElement pre = pi * GradedElement::basis(space_, prefix);
      GradedElement term = wedge(wedge(pre, adq), GradedElement::basis(space_, suffix));
      const std::size_t after = k - a - 1;
      const bool neg = !q_even_shift && (after % 2 == 1);
      if (neg) out -= term; else out += term;
    }
  }
  return out;
}

Algebroid Algebroid::permuted(const Space& target, const std::vector<std::size_t>& perm) const {
  if (target.rank() != rank() || perm.size() != rank()) throw StructureError("permuted: rank mismatch");
  Algebroid out(target);
  for (std::size_t i = 0; i < rank(); ++i) {
    for (std::size_t v = 0; v < base().size(); ++v) out.anchor_(perm[i], v) = anchor_(i, v);
    for (std::size_t j = 0; j < rank(); ++j) out.table_[perm[i]][perm[j]] = lbcm::permute(table_[i][j], target, perm);
  }
  return out;
}

std::vector<Poly> multipliers(const Base& base) {
  std::vector<Poly> out{Poly::constant(base, 1)};
  for (std::size_t k = 0; k < base.size(); ++k) out.push_back(Poly::variable(base, k));
  return out;
}

std::string multiplier_label(const Poly& f) {
  return f.to_string();
}

std::string multiplier_context(const Poly& f1, const Poly& f2) {
  if (f1.is_constant() && f2.is_constant()) return {};
  return "f=(" + multiplier_label(f1) + "," + multiplier_label(f2) + ")";
}

void scaled_basis(const Space& s, const std::function<void(std::size_t, const Poly&, const Section&)>& fn) {
  for (const auto& f : multipliers(s.base()))
    for (std::size_t i = 0; i < s.rank(); ++i) fn(i, f, f * Section::basis(s, i));
}

CheckReport check_algebroid(const Algebroid& a, const std::string& name) {
  CheckReport rep(name.empty() ? a.space().name() : name);
  const std::size_t n = a.rank();

  rep.begin("antisymmetry", "[e_i,e_j] + [e_j,e_i] = 0");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      rep.count();
      Section r = a.structure(i, j) + a.structure(j, i);
      if (!r.is_zero()) rep.fail(witness({i, j}), r.to_string());
    }
  rep.finish();

  rep.begin("jacobi", "[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] = 0");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        rep.count();
        const Section ei = a.basis(i), ej = a.basis(j), ek = a.basis(k);
        Section r = a.bracket(ei, a.bracket(ej, ek)) + a.bracket(ej, a.bracket(ek, ei)) +
                    a.bracket(ek, a.bracket(ei, ej));
        if (!r.is_zero()) rep.fail(witness({i, j, k}), r.to_string());
      }
  rep.finish();

  rep.begin("anchor-homomorphism", "rho([e_i,e_j]) x_k = [rho(e_i), rho(e_j)] x_k");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < a.base().size(); ++k) {
        rep.count();
        const Section ei = a.basis(i), ej = a.basis(j);
        const Poly xk = Poly::variable(a.base(), k);
        Poly r = a.anchor_apply(a.bracket(ei, ej), xk) -
                 (a.anchor_apply(ei, a.anchor_apply(ej, xk)) - a.anchor_apply(ej, a.anchor_apply(ei, xk)));
        if (!r.is_zero()) rep.fail(witness({i, j}), r.to_string(), "f=" + a.base().name(k));
      }
  rep.finish();
  return rep;
}

Algebroid direct_sum(const Algebroid& a, const Algebroid& b) {
  const Space sum{direct_sum_frame({a.space(), b.space()}), Variance::primal};
  Algebroid out(sum);
  const std::size_t m = a.rank();
  for (std::size_t i = 0; i < a.rank(); ++i) {
    for (std::size_t v = 0; v < a.base().size(); ++v) out.set_anchor(i, v, a.anchor()(i, v));
    for (std::size_t j = 0; j < a.rank(); ++j) out.set_bracket_entry(i, j, embed(a.structure(i, j), sum, 0));
  }
  for (std::size_t i = 0; i < b.rank(); ++i) {
    for (std::size_t v = 0; v < b.base().size(); ++v) out.set_anchor(m + i, v, b.anchor()(i, v));
    for (std::size_t j = 0; j < b.rank(); ++j) out.set_bracket_entry(m + i, m + j, embed(b.structure(i, j), sum, m));
  }
  return out;
}

}  // namespace lbcm
