#include "lbcm/doubles.hpp"

namespace lbcm {

namespace {

std::string pair_label(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

// rho_P(X)(rho_Q(Y) x_k) - rho_Q(Y)(rho_P(X) x_k) on every coordinate.
std::vector<Poly> commutator_on_coordinates(const Algebroid& a, const Section& x, const Algebroid& b, const Section& y) {
  std::vector<Poly> out;
  for (std::size_t k = 0; k < a.base().size(); ++k) {
    const Poly xk = Poly::variable(a.base(), k);
    out.push_back(a.anchor_apply(x, b.anchor_apply(y, xk)) - b.anchor_apply(y, a.anchor_apply(x, xk)));
  }
  return out;
}

std::string render_vector(const Base& base, const std::vector<Poly>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + v[k].to_string() + ")*d/d" + base.name(k);
  }
  return out.empty() ? "0" : out;
}

// Second half of a matched-pair compatibility: X > [Y1, Y2] against the
// bracket on the other side.
void matched_bracket_law(CheckReport& rep, const Algebroid& P, const Algebroid& Q, const ActionTable& p_on_q,
                         const ActionTable& q_on_p) {
  for (std::size_t i = 0; i < P.rank(); ++i)
    for (std::size_t a = 0; a < Q.rank(); ++a)
      scaled_basis(Q.space(), [&](std::size_t b, const Poly& f, const Section& y2) {
        if (f.is_constant() && b <= a) return;
        rep.count();
        const Section x = P.basis(i), y1 = Q.basis(a);
        Section r = p_on_q.apply(x, Q.bracket(y1, y2)) - Q.bracket(p_on_q.apply(x, y1), y2) -
                    Q.bracket(y1, p_on_q.apply(x, y2)) - p_on_q.apply(q_on_p.apply(y2, x), y1) +
                    p_on_q.apply(q_on_p.apply(y1, x), y2);
        if (!r.is_zero()) rep.fail(witness({i, a, b}), r.to_string(), f.is_constant() ? "" : "f=" + multiplier_label(f));
      });
}

using QMatrix = std::vector<std::vector<Rational>>;

// Basis of {v : m v = 0}.
std::vector<std::vector<Rational>> nullspace(QMatrix m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const Rational s = 1 / m[row][c];
    for (auto& v : m[row]) v *= s;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] -= f * m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  std::vector<std::vector<Rational>> out;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

CheckReport check_matched_pair(const MatchedPair& mp, const std::string& name) {
  const Algebroid& P = mp.P;
  const Algebroid& Q = mp.Q;
  CheckReport rep(name.empty() ? P.space().name() + " |><| " + Q.space().name() : name);
  if (!(mp.p_on_q.actor().space() == P.space()) || !(mp.p_on_q.target() == Q.space()) ||
      !(mp.q_on_p.actor().space() == Q.space()) || !(mp.q_on_p.target() == P.space()))
    throw StructureError("matched pair actions are not wired between " + P.space().name() + " and " + Q.space().name());
  const ActionTable pq = mp.p_on_q.with_actor(P);
  const ActionTable qp = mp.q_on_p.with_actor(Q);

  rep.begin("MP1", "rho_Q(X > Y) - rho_P(Y > X) = [rho_P(X), rho_Q(Y)]");
  scaled_basis(P.space(), [&](std::size_t i, const Poly& f1, const Section& x) {
    scaled_basis(Q.space(), [&](std::size_t a, const Poly& f2, const Section& y) {
      rep.count();
      std::vector<Poly> lhs = anchor_vector(Q, pq.apply(x, y));
      const std::vector<Poly> back = anchor_vector(P, qp.apply(y, x));
      const std::vector<Poly> rhs = commutator_on_coordinates(P, x, Q, y);
      bool ok = true;
      for (std::size_t k = 0; k < lhs.size(); ++k) {
        lhs[k] = lhs[k] - back[k] - rhs[k];
        ok = ok && lhs[k].is_zero();
      }
      if (!ok) rep.fail(witness({i, a}), render_vector(P.base(), lhs), multiplier_context(f1, f2));
    });
  });
  rep.finish();

  rep.begin("MP2", "X > [Y1,Y2] = [X > Y1, Y2] + [Y1, X > Y2] + (Y2 > X) > Y1 - (Y1 > X) > Y2");
  matched_bracket_law(rep, P, Q, pq, qp);
  rep.finish();

  rep.begin("MP3", "Y > [X1,X2] = [Y > X1, X2] + [X1, Y > X2] + (X2 > Y) > X1 - (X1 > Y) > X2");
  matched_bracket_law(rep, Q, P, qp, pq);
  rep.finish();

  rep.absorb(check_representation(pq), "P-action");
  rep.absorb(check_representation(qp), "Q-action");
  rep.absorb(check_algebroid(P), "P");
  rep.absorb(check_algebroid(Q), "Q");
  return rep;
}

Algebroid build_double_unchecked(const MatchedPair& mp) {
  const Space sum{direct_sum_frame({mp.P.space(), mp.Q.space()}), Variance::primal};
  Algebroid out = direct_sum(mp.P, mp.Q);
  const std::size_t m = mp.P.rank();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t b = 0; b < mp.Q.rank(); ++b)
      out.set_bracket(i, m + b, embed(mp.p_on_q.entry(i, b), sum, m) - embed(mp.q_on_p.entry(b, i), sum, 0));
  return out;
}

Algebroid build_double(const MatchedPair& mp) {
  if (!check_matched_pair(mp).passed()) throw ConstructionError("build_double: input is not a matched pair");
  return build_double_unchecked(mp);
}

MatchedPair decompose(const Algebroid& L, const std::vector<std::size_t>& p_idx, const std::vector<std::size_t>& q_idx,
                      const Space& p_space, const Space& q_space) {
  if (p_idx.size() != p_space.rank() || q_idx.size() != q_space.rank() || p_idx.size() + q_idx.size() != L.rank())
    throw StructureError("decompose: index sets do not match the target ranks");
  std::vector<int> where(L.rank(), -1);
  for (std::size_t i = 0; i < p_idx.size(); ++i) where.at(p_idx[i]) = static_cast<int>(i);
  for (std::size_t i = 0; i < q_idx.size(); ++i) {
    if (where.at(q_idx[i]) != -1) throw StructureError("decompose: index sets overlap");
    where[q_idx[i]] = static_cast<int>(p_idx.size() + i);
  }

  // Splits a section of L into its P and Q parts.
  auto split = [&](const Section& s) {
    Section p(p_space, 1), q(q_space, 1);
    for (const auto& [k, c] : s.components()) {
      const int w = where[k[0]];
      if (w < static_cast<int>(p_idx.size())) p.add_term({static_cast<std::uint8_t>(w)}, c);
      else q.add_term({static_cast<std::uint8_t>(w - p_idx.size())}, c);
    }
    return std::pair{p, q};
  };

  auto half = [&](const std::vector<std::size_t>& idx, const Space& space, bool first) {
    Algebroid out(space);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t v = 0; v < L.base().size(); ++v) out.set_anchor(i, v, L.anchor()(idx[i], v));
      for (std::size_t j = 0; j < idx.size(); ++j) {
        auto [p, q] = split(L.structure(idx[i], idx[j]));
        if (!(first ? q : p).is_zero())
          throw ConstructionError("decompose: " + space.name() + " is not closed under the bracket at " + pair_label(i, j));
        out.set_bracket_entry(i, j, first ? p : q);
      }
    }
    return out;
  };

  MatchedPair mp{half(p_idx, p_space, true), half(q_idx, q_space, false), {}, {}};
  mp.p_on_q = ActionTable(mp.P, q_space);
  mp.q_on_p = ActionTable(mp.Q, p_space);
  for (std::size_t i = 0; i < p_idx.size(); ++i)
    for (std::size_t b = 0; b < q_idx.size(); ++b) {
      auto [p, q] = split(L.structure(p_idx[i], q_idx[b]));
      mp.p_on_q.set(i, b, q);
      mp.q_on_p.set(b, i, -p);
    }
  return mp;
}

Algebroid exact_dual(const Algebroid& a, const GradedElement& lambda) {
  if (!(lambda.space() == a.space()) || lambda.degree() != 2)
    throw StructureError("exact_dual: expected a bivector on " + a.space().name());
  Algebroid out(a.space().dual());
  for (std::size_t i = 0; i < a.rank(); ++i) {
    const Section xi = out.basis(i);
    const Section sx = contract(xi, lambda);
    for (std::size_t v = 0; v < a.base().size(); ++v) out.set_anchor(i, v, a.anchor_apply(sx, Poly::variable(a.base(), v)));
    const GradedElement dxi = a.differential(xi);
    for (std::size_t j = 0; j < a.rank(); ++j) {
      const Section eta = out.basis(j);
      out.set_bracket_entry(i, j, a.lie_derivative(sx, eta) - contract(contract(eta, lambda), dxi));
    }
  }
  return out;
}

CheckReport check_bialgebroid(const Bialgebroid& b, const std::string& name) {
  const Algebroid& A = b.A;
  const Algebroid& As = b.A_star;
  if (!(As.space() == A.space().dual())) throw StructureError("bialgebroid: A* must live on " + A.space().dual().name());
  CheckReport rep(name.empty() ? "(" + A.space().name() + ", " + As.space().name() + ")" : name);

  rep.begin("bialgebroid:sections", "d*[X,Y] = [d*X, Y] + [X, d*Y]");
  scaled_basis(A.space(), [&](std::size_t i, const Poly& f1, const Section& x) {
    scaled_basis(A.space(), [&](std::size_t j, const Poly& f2, const Section& y) {
      if (f1.is_constant() && f2.is_constant() && j <= i) return;
      rep.count();
      GradedElement r = As.differential(A.bracket(x, y)) - A.schouten(As.differential(x), y) -
                        A.schouten(x, As.differential(y));
      if (!r.is_zero()) rep.fail(witness({i, j}), r.to_string(), multiplier_context(f1, f2));
    });
  });
  rep.finish();

  rep.begin("bialgebroid:functions", "d*[X,f] = [d*X, f] + [X, d*f]");
  scaled_basis(A.space(), [&](std::size_t i, const Poly& f1, const Section& x) {
    for (std::size_t k = 0; k < A.base().size(); ++k) {
      rep.count();
      const GradedElement f = GradedElement::scalar(A.space(), Poly::variable(A.base(), k));
      GradedElement r = As.differential(A.schouten(x, f)) - A.schouten(As.differential(x), f) -
                        A.schouten(x, As.differential(f));
      if (!r.is_zero())
        rep.fail(witness({i}), r.to_string(), "f=(" + multiplier_label(f1) + "," + A.base().name(k) + ")");
    }
  });
  rep.finish();

  rep.absorb(check_algebroid(A), "A");
  rep.absorb(check_algebroid(As), "A*");
  return rep;
}

CourantStructure::CourantStructure(Space space, PolyMatrix metric, PolyMatrix anchor,
                                   std::vector<std::vector<Section>> dorfman)
    : space_(std::move(space)), metric_(std::move(metric)), anchor_(std::move(anchor)), table_(std::move(dorfman)) {
  const std::size_t r = space_.rank();
  if (metric_.rows() != r || metric_.cols() != r) throw StructureError("metric has wrong shape");
  if (!metric_.is_symmetric()) throw StructureError("metric is not symmetric");
  if (!invert_over_polynomials(metric_, inverse_)) throw StructureError("metric is not invertible over the base ring");
  if (anchor_.rows() != r || anchor_.cols() != space_.base().size()) throw StructureError("anchor has wrong shape");
  if (table_.size() != r) throw StructureError("Dorfman table has wrong shape");
  for (const auto& row : table_) {
    if (row.size() != r) throw StructureError("Dorfman table has wrong shape");
    for (const auto& s : row)
      if (!(s.space() == space_) || s.degree() != 1) throw StructureError("Dorfman table entry is not a section");
  }
}

Poly CourantStructure::anchor_apply(const Section& x, const Poly& f) const {
  Poly out = Poly::zero(base());
  for (const auto& [k, c] : x.components())
    for (std::size_t v = 0; v < base().size(); ++v)
      if (!anchor_(k[0], v).is_zero()) out += c * anchor_(k[0], v) * f.partial(v);
  return out;
}

Poly CourantStructure::pairing(const Section& x, const Section& y) const {
  Poly out = Poly::zero(base());
  for (const auto& [ka, ca] : x.components())
    for (const auto& [kb, cb] : y.components())
      if (!metric_(ka[0], kb[0]).is_zero()) out += ca * cb * metric_(ka[0], kb[0]);
  return out;
}

Section CourantStructure::D(const Poly& f) const {
  Section out(space_, 1);
  for (std::size_t a = 0; a < rank(); ++a) {
    const Poly va = anchor_apply(basis(a), f);
    if (va.is_zero()) continue;
    for (std::size_t b = 0; b < rank(); ++b)
      if (!inverse_(b, a).is_zero()) out.add_term({static_cast<std::uint8_t>(b)}, inverse_(b, a) * va);
  }
  return out;
}

Section CourantStructure::dorfman(const Section& x, const Section& y) const {
  Section out(space_, 1);
  for (const auto& [ka, xa] : x.components()) {
    const Section ea = basis(ka[0]);
    for (const auto& [kb, yb] : y.components()) {
      out += (xa * yb) * table_[ka[0]][kb[0]];
      if (!metric_(ka[0], kb[0]).is_zero()) out += (yb * metric_(ka[0], kb[0])) * D(xa);
    }
    for (const auto& [kb, yb] : y.components()) {
      out.add_term(kb, xa * anchor_apply(ea, yb));
      out.add_term(ka, -(yb * anchor_apply(basis(kb[0]), xa)));
    }
  }
  return out;
}

CourantStructure build_courant_double(const Bialgebroid& b) {
  const Algebroid& A = b.A;
  const Algebroid& As = b.A_star;
  if (!(As.space() == A.space().dual())) throw StructureError("courant double: A* must live on " + A.space().dual().name());
  const std::size_t r = A.rank();
  const Space E{direct_sum_frame({A.space(), As.space()}), Variance::primal};
  const Base& base = A.base();

  PolyMatrix metric(base, 2 * r, 2 * r);
  for (std::size_t i = 0; i < r; ++i) metric(i, r + i) = metric(r + i, i) = Poly::constant(base, 1);
  PolyMatrix anchor(base, 2 * r, base.size());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t v = 0; v < base.size(); ++v) {
      anchor(i, v) = A.anchor()(i, v);
      anchor(r + i, v) = As.anchor()(i, v);
    }

  std::vector<std::vector<Section>> table(2 * r, std::vector<Section>(2 * r, Section::zero(E, 1)));
  for (std::size_t i = 0; i < r; ++i) {
    const Section x = A.basis(i), xi = As.basis(i);
    const GradedElement dsx = As.differential(x);
    const GradedElement dxi = A.differential(xi);
    for (std::size_t j = 0; j < r; ++j) {
      const Section y = A.basis(j), eta = As.basis(j);
      table[i][j] = embed(A.bracket(x, y), E, 0);
      table[i][r + j] = embed(A.lie_derivative(x, eta), E, r) - embed(contract(eta, dsx), E, 0);
      table[r + i][j] = embed(As.lie_derivative(xi, y), E, 0) - embed(contract(y, dxi), E, r);
      table[r + i][r + j] = embed(As.bracket(xi, eta), E, r);
    }
  }
  return CourantStructure(E, metric, anchor, table);
}

CheckReport check_courant(const CourantStructure& c, const std::string& name) {
  CheckReport rep(name.empty() ? c.space().name() : name);
  const std::size_t n = c.rank();
  const Base& base = c.base();

  auto coordinates = [&] {
    std::vector<Poly> out;
    for (std::size_t k = 0; k < base.size(); ++k) out.push_back(Poly::variable(base, k));
    return out;
  }();

  // Triples of basis sections with at most one slot scaled by a coordinate.
  auto for_triples = [&](const std::function<void(std::size_t, std::size_t, std::size_t, const Section&,
                                                   const Section&, const Section&, const std::string&)>& fn) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const Section x = c.basis(i), y = c.basis(j), z = c.basis(k);
          fn(i, j, k, x, y, z, "");
          for (const auto& f : coordinates) {
            const std::string l = multiplier_label(f);
            fn(i, j, k, f * x, y, z, "f=(" + l + ",1,1)");
            fn(i, j, k, x, f * y, z, "f=(1," + l + ",1)");
            fn(i, j, k, x, y, f * z, "f=(1,1," + l + ")");
          }
        }
  };

  rep.begin("CA:1", "x o (y o z) = (x o y) o z + y o (x o z)");
  for_triples([&](std::size_t i, std::size_t j, std::size_t k, const Section& x, const Section& y, const Section& z,
                  const std::string& ctx) {
    rep.count();
    Section r = c.dorfman(x, c.dorfman(y, z)) - c.dorfman(c.dorfman(x, y), z) - c.dorfman(y, c.dorfman(x, z));
    if (!r.is_zero()) rep.fail(witness({i, j, k}), r.to_string(), ctx);
  });
  rep.finish();

  rep.begin("CA:2", "rho(x o y) = [rho(x), rho(y)]");
  scaled_basis(c.space(), [&](std::size_t i, const Poly& f1, const Section& x) {
    scaled_basis(c.space(), [&](std::size_t j, const Poly& f2, const Section& y) {
      rep.count();
      std::vector<Poly> res;
      bool ok = true;
      for (const auto& xk : coordinates) {
        Poly r = c.anchor_apply(c.dorfman(x, y), xk) - c.anchor_apply(x, c.anchor_apply(y, xk)) +
                 c.anchor_apply(y, c.anchor_apply(x, xk));
        ok = ok && r.is_zero();
        res.push_back(r);
      }
      if (!ok) rep.fail(witness({i, j}), render_vector(base, res), multiplier_context(f1, f2));
    });
  });
  rep.finish();

  rep.begin("CA:3", "x o (f y) = f (x o y) + (rho(x) f) y");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& f : coordinates) {
        rep.count();
        const Section x = c.basis(i), y = c.basis(j);
        Section r = c.dorfman(x, f * y) - f * c.dorfman(x, y) - c.anchor_apply(x, f) * y;
        if (!r.is_zero()) rep.fail(witness({i, j}), r.to_string(), "f=" + multiplier_label(f));
      }
  rep.finish();

  rep.begin("CA:4", "x o y + y o x = D<x, y>");
  scaled_basis(c.space(), [&](std::size_t i, const Poly& f1, const Section& x) {
    scaled_basis(c.space(), [&](std::size_t j, const Poly& f2, const Section& y) {
      rep.count();
      Section r = c.dorfman(x, y) + c.dorfman(y, x) - c.D(c.pairing(x, y));
      if (!r.is_zero()) rep.fail(witness({i, j}), r.to_string(), multiplier_context(f1, f2));
    });
  });
  rep.finish();

  rep.begin("CA:5", "rho(D f) = 0");
  for (const auto& f : coordinates)
    for (const auto& g : coordinates) {
      rep.count();
      Poly r = c.anchor_apply(c.D(f), g);
      if (!r.is_zero()) rep.fail({}, r.to_string(), "f=" + multiplier_label(f) + ", g=" + multiplier_label(g));
    }
  rep.finish();

  rep.begin("CA:6", "rho(x)<y, z> = <x o y, z> + <y, x o z>");
  for_triples([&](std::size_t i, std::size_t j, std::size_t k, const Section& x, const Section& y, const Section& z,
                  const std::string& ctx) {
    rep.count();
    Poly r = c.anchor_apply(x, c.pairing(y, z)) - c.pairing(c.dorfman(x, y), z) - c.pairing(y, c.dorfman(x, z));
    if (!r.is_zero()) rep.fail(witness({i, j, k}), r.to_string(), ctx);
  });
  rep.finish();
  return rep;
}

CheckReport check_dirac(const CourantStructure& c, const std::vector<std::size_t>& sub, const std::string& name) {
  CheckReport rep(name.empty() ? "subbundle of " + c.space().name() : name);
  std::vector<bool> in(c.rank(), false);
  for (auto s : sub) in.at(s) = true;

  rep.add("dimension", "2 rank(L) = rank(E)", 2 * sub.size() == c.rank(),
          2 * sub.size() == c.rank() ? "" : std::to_string(sub.size()) + " of " + std::to_string(c.rank()));

  rep.begin("isotropy", "<x, y> = 0 on L");
  for (std::size_t a = 0; a < sub.size(); ++a)
    for (std::size_t b = a; b < sub.size(); ++b) {
      rep.count();
      Poly r = c.pairing(c.basis(sub[a]), c.basis(sub[b]));
      if (!r.is_zero()) rep.fail(witness({sub[a], sub[b]}), r.to_string());
    }
  rep.finish();

  rep.begin("closure", "x o y in L for x, y in L");
  for (auto a : sub)
    for (auto b : sub) {
      rep.count();
      Section out(c.space(), 1);
      for (const auto& [k, v] : c.structure(a, b).components())
        if (!in[k[0]]) out.add_term(k, v);
      if (!out.is_zero()) rep.fail(witness({a, b}), out.to_string());
    }
  rep.finish();
  return rep;
}

bool kernel_coisotropic(const PolyMatrix& anchor, const PolyMatrix& metric, const std::vector<std::vector<Rational>>& points) {
  const std::size_t r = anchor.rows();
  const std::size_t n = anchor.cols();
  if (metric.rows() != r || metric.cols() != r) throw StructureError("kernel_coisotropic: metric has wrong shape");
  for (const auto& pt : points) {
    QMatrix at(n, std::vector<Rational>(r));  // rho^T at the point
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t v = 0; v < n; ++v) at[v][a] = anchor(a, v).evaluate(pt);
    QMatrix g(r, std::vector<Rational>(r));
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) g[a][b] = metric(a, b).evaluate(pt);

    const auto kernel = nullspace(at, r);
    QMatrix kg(kernel.size(), std::vector<Rational>(r, Rational(0)));
    for (std::size_t i = 0; i < kernel.size(); ++i)
      for (std::size_t b = 0; b < r; ++b)
        for (std::size_t a = 0; a < r; ++a) kg[i][b] += kernel[i][a] * g[a][b];
    for (const auto& v : nullspace(kg, r))
      for (std::size_t k = 0; k < n; ++k) {
        Rational s = 0;
        for (std::size_t a = 0; a < r; ++a) s += at[k][a] * v[a];
        if (s != 0) return false;
      }
  }
  return true;
}

Algebroid dual_semidirect(const CrossedModule& cm, const CrossedModule& dual) {
  if (!(dual.theta.space() == cm.g.space().dual()) || !(dual.g.space() == cm.theta.space().dual()))
    throw StructureError("dual_semidirect: crossed modules are not on dual frames");
  const std::size_t m = cm.g.rank(), k = cm.theta.rank();
  const Space A{direct_sum_frame({cm.g.space(), cm.theta.space()}), Variance::primal};
  std::vector<std::size_t> perm(m + k);
  for (std::size_t a = 0; a < k; ++a) perm[a] = m + a;
  for (std::size_t i = 0; i < m; ++i) perm[k + i] = i;
  return semidirect_unchecked(dual).permuted(A.dual(), perm);
}

Section vee_g(const CrossedModule& cm, const CrossedModule& dual, const Section& x, const Section& xi) {
  const ActionTable on_g = dual_action(dual.action);
  Section out(cm.theta.space(), 1);
  for (std::size_t b = 0; b < cm.theta.rank(); ++b)
    out.add_term({static_cast<std::uint8_t>(b)}, pair(xi, on_g.apply(dual.g.basis(b), x)));
  return out;
}

Section vee_theta(const CrossedModule& cm, const CrossedModule& dual, const Section& alpha, const Section& u) {
  const ActionTable on_theta_dual = dual_action(cm.action);
  Section out(dual.theta.space(), 1);
  for (std::size_t i = 0; i < cm.g.rank(); ++i)
    out.add_term({static_cast<std::uint8_t>(i)}, pair(u, on_theta_dual.apply(cm.g.basis(i), alpha)));
  return out;
}

VeeTables vee_operators(const CrossedModule& cm, const CrossedModule& dual) {
  VeeTables t;
  const std::size_t m = cm.g.rank(), k = cm.theta.rank();
  t.g_gstar.assign(m, std::vector<Section>(m));
  t.thetastar_theta.assign(k, std::vector<Section>(k));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) t.g_gstar[i][j] = vee_g(cm, dual, cm.g.basis(i), dual.theta.basis(j));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) t.thetastar_theta[a][b] = vee_theta(cm, dual, dual.g.basis(a), cm.theta.basis(b));
  return t;
}

CheckReport check_restricted_brackets(const CrossedModule& cm, const CrossedModule& dual, const std::string& name) {
  CheckReport rep(name.empty() ? "restricted brackets on " + cm.g.space().name() + " + " + cm.theta.space().name() : name);
  const Algebroid A = semidirect_unchecked(cm);
  const CourantStructure E = build_courant_double({A, dual_semidirect(cm, dual)});
  const std::size_t m = cm.g.rank(), k = cm.theta.rank(), r = m + k;
  const Space& S = E.space();
  const Space gs = cm.g.space().dual(), ts = cm.theta.space().dual();
  const ActionTable g_on_ts = dual_action(cm.action);
  const ActionTable ts_on_g = dual_action(dual.action);

  rep.begin("g-gstar", "x o xi = L_x xi - L_xi x + x v xi");
  scaled_basis(cm.g.space(), [&](std::size_t i, const Poly& f1, const Section& x) {
    scaled_basis(gs, [&](std::size_t j, const Poly& f2, const Section& xi) {
      rep.count();
      Section expect = embed(cm.g.lie_derivative(x, xi), S, r) - embed(dual.theta.lie_derivative(xi, x), S, 0) +
                       embed(vee_g(cm, dual, x, xi), S, m);
      Section res = E.dorfman(embed(x, S, 0), embed(xi, S, r)) - expect;
      if (!res.is_zero()) rep.fail(witness({i, j}), res.to_string(), multiplier_context(f1, f2));
    });
  });
  rep.finish();

  rep.begin("thetastar-theta", "alpha o u = L_alpha u - L_u alpha + alpha v u");
  scaled_basis(ts, [&](std::size_t a, const Poly& f1, const Section& alpha) {
    scaled_basis(cm.theta.space(), [&](std::size_t b, const Poly& f2, const Section& u) {
      rep.count();
      Section expect = embed(dual.g.lie_derivative(alpha, u), S, m) -
                       embed(cm.theta.lie_derivative(u, alpha), S, r + m) + embed(vee_theta(cm, dual, alpha, u), S, r);
      Section res = E.dorfman(embed(alpha, S, r + m), embed(u, S, m)) - expect;
      if (!res.is_zero()) rep.fail(witness({a, b}), res.to_string(), multiplier_context(f1, f2));
    });
  });
  rep.finish();

  rep.begin("g-thetastar", "x o alpha = x > alpha - alpha > x");
  scaled_basis(cm.g.space(), [&](std::size_t i, const Poly& f1, const Section& x) {
    scaled_basis(ts, [&](std::size_t a, const Poly& f2, const Section& alpha) {
      rep.count();
      Section expect = embed(g_on_ts.apply(x, alpha), S, r + m) - embed(ts_on_g.apply(alpha, x), S, 0);
      Section res = E.dorfman(embed(x, S, 0), embed(alpha, S, r + m)) - expect;
      if (!res.is_zero()) rep.fail(witness({i, a}), res.to_string(), multiplier_context(f1, f2));
    });
  });
  rep.finish();

  rep.begin("gstar-theta", "xi o u = 0 and u o xi = 0");
  scaled_basis(gs, [&](std::size_t j, const Poly& f1, const Section& xi) {
    scaled_basis(cm.theta.space(), [&](std::size_t b, const Poly& f2, const Section& u) {
      rep.count();
      const Section exi = embed(xi, S, r), eu = embed(u, S, m);
      Section res = E.dorfman(exi, eu);
      if (!res.is_zero()) rep.fail(witness({j, b}), res.to_string(), multiplier_context(f1, f2));
      res = E.dorfman(eu, exi);
      if (!res.is_zero()) rep.fail(witness({b, j}), res.to_string(), "reversed " + multiplier_context(f1, f2));
    });
  });
  rep.finish();
  return rep;
}

}  // namespace lbcm
