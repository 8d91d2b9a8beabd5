#include "lbcm/exterior.hpp"

#include <algorithm>
#include <sstream>

namespace lbcm {

int sort_with_sign(IndexTuple& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  return sign;
}

GradedElement::GradedElement(Space space, std::size_t degree) : space_(std::move(space)), degree_(degree) {}

GradedElement GradedElement::scalar(const Space& space, const Poly& f) {
  GradedElement out(space, 0);
  if (!f.is_zero()) out.comps_.emplace(IndexTuple{}, f);
  return out;
}

GradedElement GradedElement::basis(const Space& space, std::size_t i) {
  return basis(space, IndexTuple{static_cast<std::uint8_t>(i)});
}

GradedElement GradedElement::basis(const Space& space, IndexTuple indices) {
  GradedElement out(space, indices.size());
  out.add_term(std::move(indices), Poly::constant(space.base(), 1));
  return out;
}

Poly GradedElement::component(const IndexTuple& increasing) const {
  auto it = comps_.find(increasing);
  return it == comps_.end() ? Poly(space_.base()) : it->second;
}

Poly GradedElement::coeff(std::size_t i) const {
  return component(IndexTuple{static_cast<std::uint8_t>(i)});
}

Poly GradedElement::evaluate(IndexTuple indices) const {
  const int s = sort_with_sign(indices);
  if (s == 0) return Poly(space_.base());
  Poly c = component(indices);
  return s < 0 ? -c : c;
}

void GradedElement::add_term(IndexTuple indices, const Poly& c) {
  if (c.is_zero()) return;
  if (indices.size() != degree_) throw StructureError("term degree does not match element degree");
  for (auto i : indices)
    if (i >= space_.rank()) throw StructureError("basis index out of range for " + space_.name());
  const int s = sort_with_sign(indices);
  if (s == 0) return;
  auto [it, inserted] = comps_.try_emplace(indices, s > 0 ? c : -c);
  if (!inserted) {
    if (s > 0) it->second += c; else it->second -= c;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

void GradedElement::require_compatible(const GradedElement& other) const {
  if (!(space_ == other.space_)) throw StructureError("frame/variance mismatch: " + space_.name() + " vs " + other.space_.name());
  if (degree_ != other.degree_) throw StructureError("degree mismatch in graded sum");
}

GradedElement& GradedElement::operator+=(const GradedElement& other) {
  require_compatible(other);
  for (const auto& [k, c] : other.comps_) add_term(k, c);
  return *this;
}

GradedElement& GradedElement::operator-=(const GradedElement& other) {
  require_compatible(other);
  for (const auto& [k, c] : other.comps_) add_term(k, -c);
  return *this;
}

GradedElement GradedElement::operator-() const {
  GradedElement out = *this;
  for (auto& [k, c] : out.comps_) c = -c;
  return out;
}

GradedElement operator*(const Poly& f, const GradedElement& a) {
  GradedElement out(a.space_, a.degree_);
  if (f.is_zero()) return out;
  for (const auto& [k, c] : a.comps_) {
    Poly p = f * c;
    if (!p.is_zero()) out.comps_.emplace(k, std::move(p));
  }
  return out;
}

GradedElement operator*(const Rational& q, const GradedElement& a) {
  GradedElement out(a.space_, a.degree_);
  if (q == 0) return out;
  for (const auto& [k, c] : a.comps_) out.comps_.emplace(k, c * q);
  return out;
}

bool operator==(const GradedElement& a, const GradedElement& b) {
  return a.space_ == b.space_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
}

std::string GradedElement::to_string() const {
  if (comps_.empty()) return "0";
  const char* star = space_.variance == Variance::dual ? "*" : "";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : comps_) {
    std::string basis;
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (i) basis += "^";
      basis += "e" + std::to_string(k[i] + 1) + star;
    }
    std::string coeff = c.to_string();
    const bool multi = c.terms().size() > 1;
    const bool neg = !multi && coeff[0] == '-';
    if (!first) {
      os << (neg ? " - " : " + ");
      if (neg) coeff.erase(0, 1);
    }
    first = false;
    if (basis.empty()) {
      os << (multi ? "(" + coeff + ")" : coeff);
    } else if (coeff == "1") {
      os << basis;
    } else if (coeff == "-1") {
      os << "-" << basis;
    } else {
      os << (multi ? "(" + coeff + ")" : coeff) << "*" << basis;
    }
  }
  return os.str();
}

GradedElement wedge(const GradedElement& a, const GradedElement& b) {
  if (!(a.space() == b.space())) throw StructureError("wedge: frame/variance mismatch");
  const std::size_t deg = a.degree() + b.degree();
  if (deg > a.space().rank()) return GradedElement(a.space(), deg);
  GradedElement out(a.space(), deg);
  for (const auto& [ka, ca] : a.components()) {
    for (const auto& [kb, cb] : b.components()) {
      IndexTuple k = ka;
      k.insert(k.end(), kb.begin(), kb.end());
      out.add_term(std::move(k), ca * cb);
    }
  }
  return out;
}

GradedElement contract(const GradedElement& x, const GradedElement& omega) {
  if (x.degree() != 1) throw StructureError("contract: contracting element must have degree 1");
  if (!(x.space().frame == omega.space().frame) || x.space().variance == omega.space().variance)
    throw StructureError("contract: needs the same frame with opposite variance");
  if (omega.degree() == 0) throw StructureError("contract: target has degree 0");
  GradedElement out(omega.space(), omega.degree() - 1);
  for (const auto& [k, c] : omega.components()) {
    // iota_{e_l}(e_I*) for l = I[p] gives (-1)^p e_{I \ p}*.
    for (std::size_t p = 0; p < k.size(); ++p) {
      const Poly xl = x.coeff(k[p]);
      if (xl.is_zero()) continue;
      IndexTuple rest = k;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
      Poly term = xl * c;
      out.add_term(std::move(rest), (p % 2 == 0) ? term : -term);
    }
  }
  return out;
}

Poly pair(const GradedElement& a, const GradedElement& b) {
  if (a.degree() != 1 || b.degree() != 1) throw StructureError("pair: degree-1 arguments required");
  return pair_full(a, b);
}

Poly pair_full(const GradedElement& a, const GradedElement& b) {
  if (!(a.space().frame == b.space().frame) || a.space().variance == b.space().variance)
    throw StructureError("pair: variance mismatch");
  if (a.degree() != b.degree()) throw StructureError("pair: degree mismatch");
  Poly out(a.space().base());
  for (const auto& [k, c] : a.components()) {
    auto it = b.components().find(k);
    if (it != b.components().end()) out += c * it->second;
  }
  return out;
}

GradedElement reframe(const GradedElement& x, const Space& target) {
  if (target.rank() != x.space().rank()) throw StructureError("reframe: rank mismatch");
  GradedElement out(target, x.degree());
  for (const auto& [k, c] : x.components()) out.add_term(k, c);
  return out;
}

GradedElement embed(const GradedElement& x, const Space& sum, std::size_t offset) {
  GradedElement out(sum, x.degree());
  for (const auto& [k, c] : x.components()) {
    IndexTuple shifted = k;
    for (auto& i : shifted) i = static_cast<std::uint8_t>(i + offset);
    out.add_term(std::move(shifted), c);
  }
  return out;
}

GradedElement restrict_block(const GradedElement& x, const Space& target, std::size_t offset) {
  GradedElement out(target, x.degree());
  for (const auto& [k, c] : x.components()) {
    bool inside = true;
    IndexTuple shifted = k;
    for (auto& i : shifted) {
      if (i < offset || i >= offset + target.rank()) {
        inside = false;
        break;
      }
      i = static_cast<std::uint8_t>(i - offset);
    }
    if (inside) out.add_term(std::move(shifted), c);
  }
  return out;
}

GradedElement permute(const GradedElement& x, const Space& target, const std::vector<std::size_t>& perm) {
  GradedElement out(target, x.degree());
  for (const auto& [k, c] : x.components()) {
    IndexTuple mapped = k;
    for (auto& i : mapped) i = static_cast<std::uint8_t>(perm.at(i));
    out.add_term(std::move(mapped), c);
  }
  return out;
}

std::vector<IndexTuple> increasing_tuples(std::size_t n, std::size_t k) {
  std::vector<IndexTuple> out;
  if (k > n) return out;
  IndexTuple cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = static_cast<std::uint8_t>(i);
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = static_cast<std::uint8_t>(cur[j - 1] + 1);
  }
  return out;
}

std::string space_ident(const Space& s) {
  return s.variance == Variance::primal ? s.frame.name : s.frame.name + "_star";
}

Frame direct_sum_frame(const std::vector<Space>& blocks) {
  Frame f;
  if (blocks.empty()) return f;
  f.base = blocks.front().base();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (!(blocks[i].base() == f.base)) throw StructureError("direct sum over different bases");
    if (i) f.name += "_";
    f.name += space_ident(blocks[i]);
    f.rank += blocks[i].rank();
  }
  return f;
}

}  // namespace lbcm
