// Structure-definition language: a line-oriented text format for fixture data.
//
//   base x1, x2;
//   bundle g 3;                      bundle gs = dual g;
//   anchor g: e1 = d/dx1;            bracket g: [1,2] = -e3;
//   action act: g > theta;           action act: [1,1] = x1*e1;
//   map phi: theta -> g;             map phi: e1 = e3;
//   form C on K;                     form C: [1,2] = 1;
//   multivector r on theta 2;        multivector r: [1,2] = 1;
//   structure cm = crossed_module(theta, g, phi, act);
//
// Indices are 1-based. Algebroid brackets are completed by antisymmetry;
// a courant structure reads its bundle's bracket entries as given.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lbcm/bicrossed.hpp"

namespace lbcm::sdl {

struct Pos {
  int line = 0;
  int col = 0;
};

enum class DiagKind { lexical, syntactic, referential, dimensional };

struct Diagnostic {
  DiagKind kind;
  Pos pos;
  std::string message;
};

std::string kind_name(DiagKind k);
/// "file:line:col: dimensional error: ..."
std::string format(const Diagnostic& d, const std::string& file);

/// Sum of coefficient * basis element, keyed by 1-based index (e_k or d/dx_k).
using Combination = std::map<int, Poly>;
using IndexPair = std::pair<int, int>;

struct BundleDecl {
  int rank = 0;
  std::string dual_of;  // empty for a primal bundle
  friend bool operator==(const BundleDecl&, const BundleDecl&) = default;
};

struct ActionBlock {
  std::string actor, target;
  std::map<IndexPair, Combination> entries;
  friend bool operator==(const ActionBlock&, const ActionBlock&) = default;
};

struct MapBlock {
  std::string source, target;
  std::map<int, Combination> entries;
  friend bool operator==(const MapBlock&, const MapBlock&) = default;
};

struct FormBlock {
  std::string bundle;
  std::map<IndexPair, Poly> entries;  // first <= second
  friend bool operator==(const FormBlock&, const FormBlock&) = default;
};

struct MultivectorBlock {
  std::string bundle;
  int degree = 0;
  std::map<std::vector<int>, Poly> entries;  // strictly increasing indices
  friend bool operator==(const MultivectorBlock&, const MultivectorBlock&) = default;
};

struct StructureArg {
  std::string name;          // empty for an index list
  std::vector<int> indices;
  friend bool operator==(const StructureArg&, const StructureArg&) = default;
};

struct StructureDecl {
  std::string kind;
  std::vector<StructureArg> args;
  friend bool operator==(const StructureDecl&, const StructureDecl&) = default;
};

struct SdlDocument {
  Base base;
  std::map<std::string, BundleDecl> bundles;
  std::map<std::string, std::map<int, Combination>> anchors;  // keys: e_i, then d/dx_k
  std::map<std::string, std::map<IndexPair, Combination>> brackets;
  std::map<std::string, ActionBlock> actions;
  std::map<std::string, MapBlock> maps;
  std::map<std::string, FormBlock> forms;
  std::map<std::string, MultivectorBlock> multivectors;
  std::map<std::string, StructureDecl> structures;
  std::map<std::string, Pos> positions;  // declaration sites; ignored by ==

  friend bool operator==(const SdlDocument& a, const SdlDocument& b) {
    return a.base == b.base && a.bundles == b.bundles && a.anchors == b.anchors && a.brackets == b.brackets &&
           a.actions == b.actions && a.maps == b.maps && a.forms == b.forms && a.multivectors == b.multivectors &&
           a.structures == b.structures;
  }
};

struct ParseResult {
  std::optional<SdlDocument> doc;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return doc.has_value(); }
};

ParseResult parse(std::string_view text);
std::string print(const SdlDocument& doc);

// ---- Documents to kernel objects ---------------------------------------------

/// Structure kinds and the kernel objects they denote. The document must have
/// come out of parse(), which validated every reference and rank.
class Model {
 public:
  explicit Model(SdlDocument doc);

  const SdlDocument& doc() const { return doc_; }

  Space space(const std::string& bundle) const;
  /// Bracket completed by antisymmetry.
  Algebroid algebroid(const std::string& bundle) const;
  ActionTable action(const std::string& name) const;
  PolyMatrix map(const std::string& name) const;
  PolyMatrix form(const std::string& name) const;
  GradedElement multivector(const std::string& name) const;

  const StructureDecl& structure(const std::string& name) const;
  CrossedModule crossed_module(const std::string& name) const;
  MatchedPair matched_pair(const std::string& name) const;
  Bialgebroid bialgebroid(const std::string& name) const;
  BicrossedModule bicrossed(const std::string& name) const;
  CoquadraticAlgebroid coquadratic(const std::string& name) const;
  ManinTriple manin_triple(const std::string& name) const;
  CrossedModuleRMatrix rmatrix(const std::string& name) const;
  /// Throws StructureError on a degenerate metric.
  CourantStructure courant(const std::string& name) const;
  /// 0-based index lists following the metric.
  std::vector<std::vector<std::size_t>> courant_halves(const std::string& name) const;
  std::pair<MatchedPair, PolyMatrix> invariant_h(const std::string& name) const;

 private:
  SdlDocument doc_;
};

// ---- Kernel objects to documents ---------------------------------------------

/// Accumulates kernel objects into a document, naming spaces after their
/// frames (a dual space gets the suffix "_star").
class Emitter {
 public:
  explicit Emitter(const Base& base);

  std::string space(const Space& s);
  /// Declares the algebroid's bundle and its anchor and bracket entries.
  std::string algebroid(const Algebroid& a);
  std::string action(const std::string& name, const ActionTable& act);
  std::string map(const std::string& name, const Space& source, const Space& target, const PolyMatrix& m);
  std::string form(const std::string& name, const Space& on, const PolyMatrix& m);
  std::string multivector(const std::string& name, const GradedElement& w);
  void structure(const std::string& name, const std::string& kind, std::vector<StructureArg> args);

  std::string crossed_module(const std::string& name, const CrossedModule& cm);
  void bicrossed(const std::string& name, const BicrossedModule& b);
  void manin_triple(const std::string& name, const ManinTriple& mt);
  void courant(const std::string& name, const CourantStructure& c, const std::vector<std::vector<std::size_t>>& halves);

  const SdlDocument& doc() const { return doc_; }

 private:
  std::string fresh(const std::string& want);
  SdlDocument doc_;
};

// ---- Reports and the command line ----------------------------------------------

struct StructureResult {
  std::string name;
  std::string kind;
  std::vector<CheckReport> reports;
  bool passed() const;
};

std::string text_report(const std::string& file, const std::vector<StructureResult>& results);
/// Structured report; field names are versioned by "schema".
std::string json_report(const std::string& file, const std::vector<StructureResult>& results);

/// All applicable checkers for one structure.
StructureResult check_structure(const Model& m, const std::string& name);

}  // namespace lbcm::sdl
