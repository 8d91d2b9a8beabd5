#include "lbcm/ring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace lbcm {

namespace {

const std::shared_ptr<const std::vector<std::string>>& point_vars() {
  static const auto empty = std::make_shared<const std::vector<std::string>>();
  return empty;
}

std::size_t degree_of(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::size_t{0});
}

}  // namespace

Base::Base() : vars_(point_vars()) {}

Base::Base(std::vector<std::string> names)
    : vars_(names.empty() ? point_vars()
                          : std::make_shared<const std::vector<std::string>>(std::move(names))) {}

bool GrlexDescending::operator()(const Exponents& a, const Exponents& b) const {
  const auto da = degree_of(a);
  const auto db = degree_of(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::string to_string(const Rational& q) {
  return q.get_str();
}

Poly::Poly() = default;

Poly::Poly(Base base) : base_(std::move(base)) {}

Poly Poly::constant(const Base& base, const Rational& value) {
  Poly p(base);
  p.add_term(Exponents(base.size(), 0), value);
  return p;
}

Poly Poly::variable(const Base& base, std::size_t index) {
  if (index >= base.size()) throw StructureError("variable index out of range");
  Exponents e(base.size(), 0);
  e[index] = 1;
  return monomial(base, std::move(e), 1);
}

Poly Poly::monomial(const Base& base, Exponents exps, const Rational& coeff) {
  if (exps.size() != base.size()) throw StructureError("exponent vector length does not match base");
  Poly p(base);
  p.add_term(exps, coeff);
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && degree_of(terms_.begin()->first) == 0;
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Exponents(base_.size(), 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

std::size_t Poly::total_degree() const {
  return terms_.empty() ? 0 : degree_of(terms_.begin()->first);
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Poly::require_same_base(const Poly& other) const {
  if (!(base_ == other.base_)) throw StructureError("polynomial variable-list mismatch");
}

// The zero polynomial of any base is absorbed silently so that default
// constructed zeros can seed accumulators; nonzero mismatches still throw.
namespace {
bool adopt_base(Base& mine, bool mine_zero, const Poly& other) {
  if (other.is_zero()) return true;
  if (mine_zero) {
    mine = other.base();
  }
  return false;
}
}  // namespace

Poly Poly::partial(std::size_t var_index) const {
  if (var_index >= base_.size()) throw StructureError("partial derivative index out of range");
  Poly out(base_);
  for (const auto& [e, c] : terms_) {
    if (e[var_index] == 0) continue;
    Exponents d = e;
    --d[var_index];
    out.add_term(d, c * e[var_index]);
  }
  return out;
}

Rational Poly::evaluate(const std::vector<Rational>& point) const {
  if (point.size() != base_.size()) throw StructureError("evaluation point has wrong dimension");
  Rational out = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::uint16_t k = 0; k < e[i]; ++k) t *= point[i];
    out += t;
  }
  return out;
}

Poly& Poly::operator+=(const Poly& other) {
  if (adopt_base(base_, terms_.empty(), other)) return *this;
  require_same_base(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (adopt_base(base_, terms_.empty(), other)) return *this;
  require_same_base(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero()) return a;
  if (b.is_zero()) return b;
  a.require_same_base(b);
  Poly out(a.base_);
  const std::size_t n = a.base_.size();
  Exponents e(n);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < n; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Poly& Poly::operator*=(const Poly& other) {
  *this = *this * other;
  return *this;
}

Poly& Poly::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.empty() && b.terms_.empty()) return true;
  return a.base_ == b.base_ && a.terms_ == b.terms_;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || degree_of(e) == 0) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << base_.name(i);
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

PolyMatrix::PolyMatrix(const Base& base, std::size_t rows, std::size_t cols)
    : base_(base), rows_(rows), cols_(cols), data_(rows * cols, Poly(base)) {}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(base_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

PolyMatrix PolyMatrix::operator-() const {
  PolyMatrix out = *this;
  for (auto& p : out.data_) p = -p;
  return out;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) throw StructureError("matrix dimension mismatch");
  PolyMatrix out(a.base_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Poly& p) { return p.is_zero(); });
}

bool PolyMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

PolyMatrix PolyMatrix::identity(const Base& base, std::size_t n) {
  PolyMatrix m(base, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly::constant(base, 1);
  return m;
}

bool invert_over_polynomials(const PolyMatrix& m, PolyMatrix& inverse) {
  if (m.rows() != m.cols()) return false;
  const std::size_t n = m.rows();
  // Gauss-Jordan restricted to constant pivots. Complete for every metric the
  // constructions here produce (constant pairings); other unimodular matrices
  // may be rejected.
  PolyMatrix a = m;
  PolyMatrix inv = PolyMatrix::identity(m.base(), n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t r = col; r < n; ++r) {
      if (!a(r, col).is_zero() && a(r, col).is_constant()) {
        pivot = r;
        break;
      }
    }
    if (pivot == n) return false;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const Rational scale = 1 / a(col, col).constant_term();
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) *= scale;
      inv(col, c) *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      const Poly factor = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= factor * a(col, c);
        inv(r, c) -= factor * inv(col, c);
      }
    }
  }
  inverse = std::move(inv);
  return true;
}

}  // namespace lbcm
