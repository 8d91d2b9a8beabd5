#include "lbcm/sdl.hpp"

namespace lbcm::sdl {

namespace {

Section to_section(const Space& s, const Combination& c) {
  Section out(s, 1);
  for (const auto& [k, p] : c) out.add_term({static_cast<std::uint8_t>(k - 1)}, p);
  return out;
}

Combination to_combination(const Section& s) {
  Combination out;
  for (const auto& [key, p] : s.components()) out[key[0] + 1] = p;
  return out;
}

std::vector<std::size_t> zero_based(const std::vector<int>& idx) {
  std::vector<std::size_t> out;
  for (int i : idx) out.push_back(static_cast<std::size_t>(i - 1));
  return out;
}

std::vector<int> one_based(const std::vector<std::size_t>& idx) {
  std::vector<int> out;
  for (auto i : idx) out.push_back(static_cast<int>(i) + 1);
  return out;
}

}  // namespace

Model::Model(SdlDocument doc) : doc_(std::move(doc)) {}

Space Model::space(const std::string& bundle) const {
  const BundleDecl& d = doc_.bundles.at(bundle);
  if (!d.dual_of.empty()) return space(d.dual_of).dual();
  return Space{Frame{bundle, static_cast<std::size_t>(d.rank), doc_.base}, Variance::primal};
}

Algebroid Model::algebroid(const std::string& bundle) const {
  Algebroid a(space(bundle));
  if (auto it = doc_.anchors.find(bundle); it != doc_.anchors.end())
    for (const auto& [i, vf] : it->second)
      for (const auto& [k, p] : vf) a.set_anchor(i - 1, k - 1, p);
  if (auto it = doc_.brackets.find(bundle); it != doc_.brackets.end()) {
    for (const auto& [key, v] : it->second) {
      const Section s = to_section(a.space(), v);
      if (!it->second.count({key.second, key.first})) a.set_bracket(key.first - 1, key.second - 1, s);
    }
    for (const auto& [key, v] : it->second) a.set_bracket_entry(key.first - 1, key.second - 1, to_section(a.space(), v));
  }
  return a;
}

ActionTable Model::action(const std::string& name) const {
  const ActionBlock& b = doc_.actions.at(name);
  ActionTable act(algebroid(b.actor), space(b.target));
  for (const auto& [key, v] : b.entries) act.set(key.first - 1, key.second - 1, to_section(act.target(), v));
  return act;
}

PolyMatrix Model::map(const std::string& name) const {
  const MapBlock& b = doc_.maps.at(name);
  PolyMatrix m(doc_.base, doc_.bundles.at(b.source).rank, doc_.bundles.at(b.target).rank);
  for (const auto& [i, v] : b.entries)
    for (const auto& [k, p] : v) m(i - 1, k - 1) = p;
  return m;
}

PolyMatrix Model::form(const std::string& name) const {
  const FormBlock& b = doc_.forms.at(name);
  const int n = doc_.bundles.at(b.bundle).rank;
  PolyMatrix m(doc_.base, n, n);
  for (const auto& [key, p] : b.entries) m(key.first - 1, key.second - 1) = m(key.second - 1, key.first - 1) = p;
  return m;
}

GradedElement Model::multivector(const std::string& name) const {
  const MultivectorBlock& b = doc_.multivectors.at(name);
  GradedElement w(space(b.bundle), b.degree);
  for (const auto& [key, p] : b.entries) {
    IndexTuple t;
    for (int i : key) t.push_back(static_cast<std::uint8_t>(i - 1));
    w.add_term(t, p);
  }
  return w;
}

const StructureDecl& Model::structure(const std::string& name) const {
  auto it = doc_.structures.find(name);
  if (it == doc_.structures.end()) throw StructureError("no structure named '" + name + "'");
  return it->second;
}

namespace {

const StructureDecl& expect_kind(const Model& m, const std::string& name, const std::string& kind) {
  const StructureDecl& s = m.structure(name);
  if (s.kind != kind) throw StructureError("'" + name + "' is a " + s.kind + ", not a " + kind);
  return s;
}

}  // namespace

CrossedModule Model::crossed_module(const std::string& name) const {
  const auto& a = expect_kind(*this, name, "crossed_module").args;
  return CrossedModule{algebroid(a[0].name), algebroid(a[1].name), map(a[2].name), action(a[3].name)};
}

MatchedPair Model::matched_pair(const std::string& name) const {
  const auto& a = expect_kind(*this, name, "matched_pair").args;
  return MatchedPair{algebroid(a[0].name), algebroid(a[1].name), action(a[2].name), action(a[3].name)};
}

Bialgebroid Model::bialgebroid(const std::string& name) const {
  const auto& a = expect_kind(*this, name, "bialgebroid").args;
  return Bialgebroid{algebroid(a[0].name), algebroid(a[1].name)};
}

BicrossedModule Model::bicrossed(const std::string& name) const {
  const auto& a = expect_kind(*this, name, "bicrossed").args;
  return BicrossedModule{crossed_module(a[0].name), crossed_module(a[1].name)};
}

CoquadraticAlgebroid Model::coquadratic(const std::string& name) const {
  const auto& a = expect_kind(*this, name, "coquadratic").args;
  return CoquadraticAlgebroid{algebroid(a[0].name), form(a[1].name)};
}

ManinTriple Model::manin_triple(const std::string& name) const {
  const auto& a = expect_kind(*this, name, "manin_triple").args;
  return ManinTriple{{algebroid(a[0].name), form(a[1].name)},
                     zero_based(a[3].indices),
                     zero_based(a[5].indices),
                     space(a[2].name),
                     space(a[4].name)};
}

CrossedModuleRMatrix Model::rmatrix(const std::string& name) const {
  const auto& a = expect_kind(*this, name, "rmatrix").args;
  return CrossedModuleRMatrix{crossed_module(a[0].name), multivector(a[1].name)};
}

CourantStructure Model::courant(const std::string& name) const {
  const auto& a = expect_kind(*this, name, "courant").args;
  const std::string& e = a[0].name;
  const Space s = space(e);
  std::vector<std::vector<Section>> table(s.rank(), std::vector<Section>(s.rank(), Section::zero(s, 1)));
  if (auto it = doc_.brackets.find(e); it != doc_.brackets.end())
    for (const auto& [key, v] : it->second) table[key.first - 1][key.second - 1] = to_section(s, v);
  return CourantStructure(s, form(a[1].name), algebroid(e).anchor(), table);
}

std::vector<std::vector<std::size_t>> Model::courant_halves(const std::string& name) const {
  const auto& a = expect_kind(*this, name, "courant").args;
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 2; i < a.size(); ++i) out.push_back(zero_based(a[i].indices));
  return out;
}

std::pair<MatchedPair, PolyMatrix> Model::invariant_h(const std::string& name) const {
  const auto& a = expect_kind(*this, name, "invariant_h").args;
  return {matched_pair(a[0].name), map(a[1].name)};
}

// ---- Emitter -------------------------------------------------------------------

Emitter::Emitter(const Base& base) { doc_.base = base; }

std::string Emitter::fresh(const std::string& want) {
  auto taken = [&](const std::string& n) {
    return doc_.bundles.count(n) || doc_.actions.count(n) || doc_.maps.count(n) || doc_.forms.count(n) ||
           doc_.multivectors.count(n) || doc_.structures.count(n);
  };
  std::string n = want;
  for (int k = 2; taken(n); ++k) n = want + "_" + std::to_string(k);
  return n;
}

std::string Emitter::space(const Space& s) {
  const std::string& primal = s.frame.name;
  auto it = doc_.bundles.find(primal);
  if (it == doc_.bundles.end()) {
    doc_.bundles[primal] = BundleDecl{static_cast<int>(s.rank()), {}};
  } else if (!it->second.dual_of.empty() || it->second.rank != static_cast<int>(s.rank())) {
    throw StructureError("frame name '" + primal + "' is already used by another bundle");
  }
  if (s.variance == Variance::primal) return primal;
  for (const auto& [name, d] : doc_.bundles)
    if (d.dual_of == primal) return name;
  const std::string name = fresh(primal + "_star");
  doc_.bundles[name] = BundleDecl{static_cast<int>(s.rank()), primal};
  return name;
}

std::string Emitter::algebroid(const Algebroid& a) {
  const std::string b = space(a.space());
  if (doc_.anchors.count(b) || doc_.brackets.count(b)) return b;
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t v = 0; v < a.base().size(); ++v)
      if (!a.anchor()(i, v).is_zero()) doc_.anchors[b][static_cast<int>(i) + 1][static_cast<int>(v) + 1] = a.anchor()(i, v);
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) {
      const Section& s = a.structure(i, j);
      const bool skew = s == -a.structure(j, i);
      // Entries below the diagonal are written only where antisymmetry fails.
      if ((i < j && !s.is_zero()) || (i >= j && !skew))
        doc_.brackets[b][{static_cast<int>(i) + 1, static_cast<int>(j) + 1}] = to_combination(s);
      if (i < j && s.is_zero() && !skew)
        doc_.brackets[b][{static_cast<int>(i) + 1, static_cast<int>(j) + 1}] = {};
    }
  return b;
}

std::string Emitter::action(const std::string& name, const ActionTable& act) {
  const std::string n = fresh(name);
  ActionBlock blk{algebroid(act.actor()), space(act.target()), {}};
  for (std::size_t i = 0; i < act.actor().rank(); ++i)
    for (std::size_t a = 0; a < act.target().rank(); ++a)
      if (!act.entry(i, a).is_zero())
        blk.entries[{static_cast<int>(i) + 1, static_cast<int>(a) + 1}] = to_combination(act.entry(i, a));
  doc_.actions[n] = blk;
  return n;
}

std::string Emitter::map(const std::string& name, const Space& source, const Space& target, const PolyMatrix& m) {
  const std::string n = fresh(name);
  MapBlock blk{space(source), space(target), {}};
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k)
      if (!m(i, k).is_zero()) blk.entries[static_cast<int>(i) + 1][static_cast<int>(k) + 1] = m(i, k);
  doc_.maps[n] = blk;
  return n;
}

std::string Emitter::form(const std::string& name, const Space& on, const PolyMatrix& m) {
  const std::string n = fresh(name);
  FormBlock blk{space(on), {}};
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) blk.entries[{static_cast<int>(i) + 1, static_cast<int>(j) + 1}] = m(i, j);
  doc_.forms[n] = blk;
  return n;
}

std::string Emitter::multivector(const std::string& name, const GradedElement& w) {
  const std::string n = fresh(name);
  MultivectorBlock blk{space(w.space()), static_cast<int>(w.degree()), {}};
  for (const auto& [key, p] : w.components()) {
    std::vector<int> k;
    for (auto i : key) k.push_back(i + 1);
    blk.entries[k] = p;
  }
  doc_.multivectors[n] = blk;
  return n;
}

void Emitter::structure(const std::string& name, const std::string& kind, std::vector<StructureArg> args) {
  doc_.structures[fresh(name)] = StructureDecl{kind, std::move(args)};
}

std::string Emitter::crossed_module(const std::string& name, const CrossedModule& cm) {
  const std::string n = fresh(name);
  const std::string th = algebroid(cm.theta), g = algebroid(cm.g);
  const std::string phi = map("phi_" + n, cm.theta.space(), cm.g.space(), cm.phi);
  const std::string act = action("act_" + n, cm.action);
  structure(n, "crossed_module", {{th, {}}, {g, {}}, {phi, {}}, {act, {}}});
  return n;
}

void Emitter::bicrossed(const std::string& name, const BicrossedModule& b) {
  const std::string n = fresh(name);
  const std::string cm = crossed_module(n + "_cm", b.cm);
  const std::string d = crossed_module(n + "_dual", b.dual_cm);
  structure(n, "bicrossed", {{cm, {}}, {d, {}}});
}

void Emitter::manin_triple(const std::string& name, const ManinTriple& mt) {
  const std::string n = fresh(name);
  const std::string k = algebroid(mt.K.K);
  const std::string c = form("C_" + n, mt.K.K.space(), mt.K.C);
  const std::string p = space(mt.p_space), q = space(mt.q_space);
  structure(n, "manin_triple", {{k, {}}, {c, {}}, {p, {}}, {{}, one_based(mt.P)}, {q, {}}, {{}, one_based(mt.Q)}});
}

void Emitter::courant(const std::string& name, const CourantStructure& c,
                      const std::vector<std::vector<std::size_t>>& halves) {
  const std::string n = fresh(name);
  const std::string e = space(c.space());
  for (std::size_t i = 0; i < c.rank(); ++i)
    for (std::size_t v = 0; v < c.base().size(); ++v)
      if (!c.anchor()(i, v).is_zero()) doc_.anchors[e][static_cast<int>(i) + 1][static_cast<int>(v) + 1] = c.anchor()(i, v);
  for (std::size_t i = 0; i < c.rank(); ++i)
    for (std::size_t j = 0; j < c.rank(); ++j)
      if (!c.structure(i, j).is_zero())
        doc_.brackets[e][{static_cast<int>(i) + 1, static_cast<int>(j) + 1}] = to_combination(c.structure(i, j));
  const std::string g = form("G_" + n, c.space(), c.metric());
  std::vector<StructureArg> args{{e, {}}, {g, {}}};
  for (const auto& h : halves) args.push_back({{}, one_based(h)});
  structure(n, "courant", args);
}

}  // namespace lbcm::sdl
