// Exact scalar arithmetic: rationals and multivariate polynomials over Q.
//
// A Poly models a smooth function on the base manifold. Every Poly carries
// the ordered list of base coordinates it lives over; binary operations on
// polynomials over different coordinate lists throw StructureError.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace lbcm {

using Rational = mpq_class;

/// Raised when operands live over incompatible frames, bases or degrees.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered list of base coordinate names. Cheap to copy; compares by content.
class Base {
 public:
  Base();
  explicit Base(std::vector<std::string> names);

  std::size_t size() const { return vars_->size(); }
  const std::vector<std::string>& names() const { return *vars_; }
  const std::string& name(std::size_t i) const { return (*vars_)[i]; }

  friend bool operator==(const Base& a, const Base& b) {
    return a.vars_ == b.vars_ || *a.vars_ == *b.vars_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> vars_;
};

using Exponents = std::vector<std::uint16_t>;

/// Graded-lex descending: higher total degree first, then lexicographically
/// larger exponent vectors (x1 > x2 > ...) first.
struct GrlexDescending {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

class Poly {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexDescending>;

  Poly();  // zero over the point base
  explicit Poly(Base base);

  static Poly zero(const Base& base) { return Poly(base); }
  static Poly constant(const Base& base, const Rational& value);
  static Poly variable(const Base& base, std::size_t index);
  static Poly monomial(const Base& base, Exponents exps, const Rational& coeff);

  const Base& base() const { return base_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (coefficient of the empty monomial).
  Rational constant_term() const;
  std::size_t total_degree() const;

  Poly partial(std::size_t var_index) const;
  /// Value at a point of Q^n (one coordinate per base variable).
  Rational evaluate(const std::vector<Rational>& point) const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Rational& scalar);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  Poly operator-() const;

  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Canonical rendering, e.g. "3/2*x1^2*x2 - x2 + 1"; zero renders as "0".
  std::string to_string() const;

 private:
  void require_same_base(const Poly& other) const;
  void add_term(const Exponents& e, const Rational& c);

  Base base_;
  TermMap terms_;
};

std::string to_string(const Rational& q);

// These mirror poly_add / poly_mul / poly_partial.
inline Poly poly_add(const Poly& a, const Poly& b) { return a + b; }
inline Poly poly_mul(const Poly& a, const Poly& b) { return a * b; }
inline Poly poly_partial(const Poly& p, std::size_t i) { return p.partial(i); }

/// Dense row-major matrix of polynomials over a common base.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(const Base& base, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Base& base() const { return base_; }

  Poly& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Poly& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  PolyMatrix transpose() const;
  PolyMatrix operator-() const;
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

  bool is_zero() const;
  bool is_symmetric() const;

  static PolyMatrix identity(const Base& base, std::size_t n);

 private:
  Base base_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Poly> data_;
};

/// Inverse over the polynomial ring. Returns false when the determinant is not
/// a nonzero constant (the inverse would not be polynomial).
bool invert_over_polynomials(const PolyMatrix& m, PolyMatrix& inverse);

}  // namespace lbcm
