#include <algorithm>
#include <cctype>
#include <set>

#include "lbcm/sdl.hpp"

namespace lbcm::sdl {

std::string kind_name(DiagKind k) {
  switch (k) {
    case DiagKind::lexical: return "lexical";
    case DiagKind::syntactic: return "syntactic";
    case DiagKind::referential: return "referential";
    case DiagKind::dimensional: return "dimensional";
  }
  return "unknown";
}

std::string format(const Diagnostic& d, const std::string& file) {
  return file + ":" + std::to_string(d.pos.line) + ":" + std::to_string(d.pos.col) + ": " + kind_name(d.kind) +
         " error: " + d.message;
}

namespace {

enum class Tok { ident, number, punct, end };

struct Token {
  Tok kind;
  std::string text;
  Pos pos;
};

std::vector<Token> lex(std::string_view src, std::vector<Diagnostic>& diags) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    const Pos pos{line, col};
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::ident, std::string(src.substr(i, j - i)), pos});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && (std::isalpha(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        diags.push_back({DiagKind::lexical, pos, "malformed number"});
        while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
        advance(j - i);
        continue;
      }
      out.push_back({Tok::number, std::string(src.substr(i, j - i)), pos});
      advance(j - i);
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::punct, "->", pos});
      advance(2);
    } else if (std::string_view(";:,[]()=+-*/^>").find(c) != std::string_view::npos) {
      out.push_back({Tok::punct, std::string(1, c), pos});
      advance(1);
    } else {
      std::string shown = std::isprint(static_cast<unsigned char>(c)) ? std::string(1, c) : "\\x" + std::to_string(+c);
      diags.push_back({DiagKind::lexical, pos, "unexpected character '" + shown + "'"});
      advance(1);
    }
  }
  out.push_back({Tok::end, "", {line, col}});
  return out;
}

struct ParseFailure {
  Diagnostic diag;
};

bool basis_name(const std::string& s, int& index) {
  if (s.size() < 2 || s[0] != 'e') return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  if (s.size() > 6) {
    index = 1 << 30;
    return true;
  }
  index = std::stoi(s.substr(1));
  return true;
}

const std::set<std::string> kKeywords = {"base", "bundle", "anchor", "bracket", "action", "map",
                                         "form", "multivector", "structure", "dual", "on"};

enum class Ctx { scalar, section, vfield };

// key 0 = scalar part; key k > 0 = k-th basis element.
using Expr = std::map<int, Poly>;

class Parser {
 public:
  Parser(std::vector<Token> toks, std::vector<Diagnostic>& diags) : t_(std::move(toks)), diags_(diags) {}

  SdlDocument run() {
    while (peek().kind != Tok::end) {
      const std::size_t start = i_;
      try {
        statement();
      } catch (const ParseFailure& f) {
        diags_.push_back(f.diag);
        i_ = std::max(i_, start + 1);
        while (peek().kind != Tok::end && !(peek(-1).kind == Tok::punct && peek(-1).text == ";")) ++i_;
      }
      started_ = true;
    }
    validate_structures();
    return std::move(doc_);
  }

 private:
  const Token& peek(int off = 0) const {
    const std::size_t k = static_cast<std::size_t>(static_cast<long>(i_) + off);
    return t_[std::min(k, t_.size() - 1)];
  }
  const Token& next() { return t_[std::min(i_++, t_.size() - 1)]; }
  bool at(const char* p) const { return peek().kind == Tok::punct && peek().text == p; }
  bool accept(const char* p) {
    if (!at(p)) return false;
    ++i_;
    return true;
  }

  [[noreturn]] void fail(DiagKind k, Pos p, std::string msg) const { throw ParseFailure{{k, p, std::move(msg)}}; }
  [[noreturn]] void expected(const std::string& what) const {
    const Token& t = peek();
    fail(DiagKind::syntactic, t.pos, "expected " + what + ", found " + (t.kind == Tok::end ? "end of input" : "'" + t.text + "'"));
  }

  const Token& expect(const char* p) {
    if (!at(p)) expected(std::string("'") + p + "'");
    return next();
  }
  const Token& ident(const std::string& what) {
    if (peek().kind != Tok::ident) expected(what);
    return next();
  }
  int integer(const std::string& what) {
    if (peek().kind != Tok::number) expected(what);
    const Token& t = next();
    if (t.text.size() > 6) fail(DiagKind::dimensional, t.pos, "index " + t.text + " out of range");
    return std::stoi(t.text);
  }

  void declare(const Token& name, const std::string& key) {
    int dummy = 0;
    if (kKeywords.count(name.text) || basis_name(name.text, dummy))
      fail(DiagKind::syntactic, name.pos, "'" + name.text + "' is reserved");
    if (names_.count(name.text)) fail(DiagKind::referential, name.pos, "duplicate name '" + name.text + "'");
    names_[name.text] = key;
    doc_.positions[key + ":" + name.text] = name.pos;
  }

  const std::string& kind_of(const Token& name) const {
    static const std::string none;
    auto it = names_.find(name.text);
    return it == names_.end() ? none : it->second;
  }

  const BundleDecl& bundle_ref(const Token& name) {
    if (kind_of(name) != "bundle") fail(DiagKind::referential, name.pos, "undefined bundle '" + name.text + "'");
    return doc_.bundles.at(name.text);
  }

  int index_in(int rank, const std::string& what) {
    const Pos p = peek().pos;
    const int k = integer("an index");
    if (k < 1 || k > rank)
      fail(DiagKind::dimensional, p, "index " + std::to_string(k) + " out of range for " + what + " (rank " +
                                         std::to_string(rank) + ")");
    return k;
  }

  IndexPair index_pair(int r1, const std::string& w1, int r2, const std::string& w2) {
    expect("[");
    const int a = index_in(r1, w1);
    expect(",");
    const int b = index_in(r2, w2);
    expect("]");
    return {a, b};
  }

  // ---- expressions ----

  Poly constant(const Rational& q) const { return Poly::constant(doc_.base, q); }

  Expr product(const Expr& a, const Expr& b, Pos p) const {
    Expr out;
    for (const auto& [ka, ca] : a)
      for (const auto& [kb, cb] : b) {
        if (ka && kb) fail(DiagKind::syntactic, p, "product of two basis elements");
        Poly& slot = out.try_emplace(ka + kb, Poly::zero(doc_.base)).first->second;
        slot += ca * cb;
      }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
  }

  static void add_into(Expr& a, const Expr& b, bool negate) {
    for (const auto& [k, c] : b) {
      auto [it, ins] = a.try_emplace(k, negate ? -c : c);
      if (!ins) it->second += negate ? -c : c;
      if (it->second.is_zero()) a.erase(it);
    }
  }

  Expr factor(Ctx ctx, int rank) {
    const Token& t = peek();
    if (accept("(")) {
      Expr e = sum(ctx, rank);
      expect(")");
      return e;
    }
    if (t.kind == Tok::number) {
      next();
      Rational q{mpz_class(t.text)};
      if (accept("/")) {
        const Token& d = peek();
        if (d.kind != Tok::number) expected("a denominator");
        next();
        mpz_class den(d.text);
        if (den == 0) fail(DiagKind::syntactic, d.pos, "zero denominator");
        q = Rational(q.get_num(), den);
        q.canonicalize();
      }
      return q == 0 ? Expr{} : Expr{{0, constant(q)}};
    }
    if (t.kind != Tok::ident) expected("a term");
    next();
    int k = 0;
    if (ctx == Ctx::vfield && t.text == "d" && at("/")) {
      next();
      const Token& v = ident("d/d<variable>");
      const std::string var = v.text.size() > 1 && v.text[0] == 'd' ? v.text.substr(1) : "";
      const auto& names = doc_.base.names();
      const auto it = std::find(names.begin(), names.end(), var);
      if (it == names.end()) fail(DiagKind::referential, v.pos, "unknown base variable in '" + v.text + "'");
      return Expr{{static_cast<int>(it - names.begin()) + 1, constant(1)}};
    }
    if (basis_name(t.text, k)) {
      if (ctx != Ctx::section) fail(DiagKind::syntactic, t.pos, "basis element '" + t.text + "' not allowed here");
      if (k < 1 || k > rank)
        fail(DiagKind::dimensional, t.pos,
             "basis element " + t.text + " out of range for rank " + std::to_string(rank));
      return Expr{{k, constant(1)}};
    }
    const auto& names = doc_.base.names();
    const auto it = std::find(names.begin(), names.end(), t.text);
    if (it == names.end()) fail(DiagKind::referential, t.pos, "unknown variable '" + t.text + "'");
    Exponents e(names.size(), 0);
    int power = 1;
    if (accept("^")) {
      const Token& n = peek();
      if (n.kind != Tok::number) expected("an exponent");
      next();
      if (n.text.size() > 4 || std::stoi(n.text) > 1000) fail(DiagKind::syntactic, n.pos, "exponent too large");
      power = std::stoi(n.text);
    }
    e[it - names.begin()] = static_cast<std::uint16_t>(power);
    return Expr{{0, Poly::monomial(doc_.base, e, 1)}};
  }

  Expr term(Ctx ctx, int rank) {
    Expr e = factor(ctx, rank);
    while (at("*")) {
      const Pos p = next().pos;
      e = product(e, factor(ctx, rank), p);
    }
    return e;
  }

  Expr sum(Ctx ctx, int rank) {
    Expr out;
    bool neg = false;
    if (accept("-")) neg = true;
    else accept("+");
    add_into(out, term(ctx, rank), neg);
    while (at("+") || at("-")) {
      neg = next().text == "-";
      add_into(out, term(ctx, rank), neg);
    }
    return out;
  }

  Poly scalar_value() {
    const Pos p = peek().pos;
    Expr e = sum(Ctx::scalar, 0);
    (void)p;
    return e.count(0) ? e.at(0) : Poly::zero(doc_.base);
  }

  Combination combination(Ctx ctx, int rank) {
    const Pos p = peek().pos;
    Expr e = sum(ctx, rank);
    if (e.count(0))
      fail(DiagKind::syntactic, p,
           ctx == Ctx::vfield ? "expected a combination of d/dx terms" : "expected a combination of basis elements");
    return Combination(e.begin(), e.end());
  }

  // ---- statements ----

  void end_statement() { expect(";"); }

  template <class M, class K, class V>
  void insert_entry(M& m, const K& key, V value, Pos p) {
    if (seen_.count({current_block_, key_string(key)}))
      fail(DiagKind::referential, p, "duplicate entry in '" + current_block_ + "'");
    seen_.insert({current_block_, key_string(key)});
    m[key] = std::move(value);
  }

  static std::string key_string(int k) { return std::to_string(k); }
  static std::string key_string(const IndexPair& k) { return std::to_string(k.first) + "," + std::to_string(k.second); }
  static std::string key_string(const std::vector<int>& k) {
    std::string s;
    for (int i : k) s += std::to_string(i) + ",";
    return s;
  }

  void statement() {
    const Token& kw = ident("a statement keyword");
    const std::string& k = kw.text;
    if (k == "base") return base_stmt(kw);
    started_ = true;
    if (k == "bundle") return bundle_stmt();
    if (k == "anchor") return anchor_stmt();
    if (k == "bracket") return bracket_stmt();
    if (k == "action") return action_stmt();
    if (k == "map") return map_stmt();
    if (k == "form") return form_stmt();
    if (k == "multivector") return multivector_stmt();
    if (k == "structure") return structure_stmt();
    fail(DiagKind::syntactic, kw.pos, "unknown keyword '" + k + "'");
  }

  void base_stmt(const Token& kw) {
    if (started_ || base_seen_) fail(DiagKind::syntactic, kw.pos, "'base' must be the first statement");
    base_seen_ = true;
    std::vector<std::string> vars;
    if (!at(";")) {
      do {
        const Token& v = ident("a variable name");
        int dummy = 0;
        if (v.text == "d" || basis_name(v.text, dummy) || kKeywords.count(v.text))
          fail(DiagKind::syntactic, v.pos, "'" + v.text + "' cannot name a base variable");
        if (std::find(vars.begin(), vars.end(), v.text) != vars.end())
          fail(DiagKind::referential, v.pos, "duplicate base variable '" + v.text + "'");
        vars.push_back(v.text);
      } while (accept(","));
    }
    end_statement();
    doc_.base = Base(vars);
  }

  void bundle_stmt() {
    const Token& name = ident("a bundle name");
    BundleDecl d;
    if (accept("=")) {
      const Token& kw = ident("'dual'");
      if (kw.text != "dual") fail(DiagKind::syntactic, kw.pos, "expected 'dual'");
      const Token& parent = ident("a bundle name");
      d.rank = bundle_ref(parent).rank;
      d.dual_of = parent.text;
    } else {
      const Pos p = peek().pos;
      d.rank = integer("a rank");
      if (d.rank < 1 || d.rank > 255) fail(DiagKind::dimensional, p, "rank must be between 1 and 255");
    }
    end_statement();
    declare(name, "bundle");
    doc_.bundles[name.text] = d;
  }

  void anchor_stmt() {
    const Token& b = ident("a bundle name");
    const BundleDecl& d = bundle_ref(b);
    expect(":");
    const Token& e = ident("a basis element");
    int k = 0;
    if (!basis_name(e.text, k)) fail(DiagKind::syntactic, e.pos, "expected a basis element e<k>");
    if (k < 1 || k > d.rank) fail(DiagKind::dimensional, e.pos, e.text + " out of range for " + b.text);
    expect("=");
    Combination v = combination(Ctx::vfield, 0);
    end_statement();
    current_block_ = "anchor " + b.text;
    insert_entry(doc_.anchors[b.text], k, std::move(v), e.pos);
  }

  void bracket_stmt() {
    const Token& b = ident("a bundle name");
    const BundleDecl& d = bundle_ref(b);
    expect(":");
    const Pos p = peek().pos;
    const IndexPair key = index_pair(d.rank, b.text, d.rank, b.text);
    expect("=");
    Combination v = combination(Ctx::section, d.rank);
    end_statement();
    current_block_ = "bracket " + b.text;
    insert_entry(doc_.brackets[b.text], key, std::move(v), p);
  }

  void action_stmt() {
    const Token& name = ident("an action name");
    expect(":");
    if (at("[")) {
      if (kind_of(name) != "action") fail(DiagKind::referential, name.pos, "undefined action '" + name.text + "'");
      ActionBlock& a = doc_.actions.at(name.text);
      const Pos p = peek().pos;
      const IndexPair key = index_pair(doc_.bundles.at(a.actor).rank, a.actor, doc_.bundles.at(a.target).rank, a.target);
      expect("=");
      Combination v = combination(Ctx::section, doc_.bundles.at(a.target).rank);
      end_statement();
      current_block_ = name.text;
      insert_entry(a.entries, key, std::move(v), p);
      return;
    }
    const Token& actor = ident("an acting bundle");
    bundle_ref(actor);
    expect(">");
    const Token& target = ident("a target bundle");
    bundle_ref(target);
    end_statement();
    declare(name, "action");
    doc_.actions[name.text] = ActionBlock{actor.text, target.text, {}};
  }

  void map_stmt() {
    const Token& name = ident("a map name");
    expect(":");
    int probe = 0;
    if (peek().kind == Tok::ident && basis_name(peek().text, probe)) {
      if (kind_of(name) != "map") fail(DiagKind::referential, name.pos, "undefined map '" + name.text + "'");
      MapBlock& m = doc_.maps.at(name.text);
      const Token& e = ident("a basis element");
      int k = 0;
      if (!basis_name(e.text, k)) fail(DiagKind::syntactic, e.pos, "expected a basis element e<k>");
      if (k < 1 || k > doc_.bundles.at(m.source).rank)
        fail(DiagKind::dimensional, e.pos, e.text + " out of range for " + m.source);
      expect("=");
      Combination v = combination(Ctx::section, doc_.bundles.at(m.target).rank);
      end_statement();
      current_block_ = name.text;
      insert_entry(m.entries, k, std::move(v), e.pos);
      return;
    }
    const Token& source = ident("a source bundle");
    bundle_ref(source);
    expect("->");
    const Token& target = ident("a target bundle");
    bundle_ref(target);
    end_statement();
    declare(name, "map");
    doc_.maps[name.text] = MapBlock{source.text, target.text, {}};
  }

  void form_stmt() {
    const Token& name = ident("a form name");
    if (accept(":")) {
      if (kind_of(name) != "form") fail(DiagKind::referential, name.pos, "undefined form '" + name.text + "'");
      FormBlock& f = doc_.forms.at(name.text);
      const int r = doc_.bundles.at(f.bundle).rank;
      const Pos p = peek().pos;
      IndexPair key = index_pair(r, f.bundle, r, f.bundle);
      if (key.first > key.second) std::swap(key.first, key.second);
      expect("=");
      Poly v = scalar_value();
      end_statement();
      current_block_ = name.text;
      insert_entry(f.entries, key, std::move(v), p);
      return;
    }
    const Token& on = ident("'on'");
    if (on.text != "on") fail(DiagKind::syntactic, on.pos, "expected 'on' or ':'");
    const Token& b = ident("a bundle name");
    bundle_ref(b);
    end_statement();
    declare(name, "form");
    doc_.forms[name.text] = FormBlock{b.text, {}};
  }

  void multivector_stmt() {
    const Token& name = ident("a multivector name");
    if (accept(":")) {
      if (kind_of(name) != "multivector")
        fail(DiagKind::referential, name.pos, "undefined multivector '" + name.text + "'");
      MultivectorBlock& m = doc_.multivectors.at(name.text);
      const int r = doc_.bundles.at(m.bundle).rank;
      const Pos p = peek().pos;
      expect("[");
      std::vector<int> idx;
      if (!at("]")) {
        do idx.push_back(index_in(r, m.bundle));
        while (accept(","));
      }
      expect("]");
      if (static_cast<int>(idx.size()) != m.degree)
        fail(DiagKind::dimensional, p, "expected " + std::to_string(m.degree) + " indices for '" + name.text + "'");
      int sign = 1;
      for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
          if (idx[a] == idx[b]) fail(DiagKind::dimensional, p, "repeated index in a multivector component");
          if (idx[a] > idx[b]) sign = -sign;
        }
      std::sort(idx.begin(), idx.end());
      expect("=");
      Poly v = scalar_value();
      end_statement();
      if (sign < 0) v = -v;
      current_block_ = name.text;
      insert_entry(m.entries, idx, std::move(v), p);
      return;
    }
    const Token& on = ident("'on'");
    if (on.text != "on") fail(DiagKind::syntactic, on.pos, "expected 'on' or ':'");
    const Token& b = ident("a bundle name");
    const BundleDecl& d = bundle_ref(b);
    const Pos p = peek().pos;
    const int degree = integer("a degree");
    if (degree > d.rank) fail(DiagKind::dimensional, p, "degree exceeds the rank of " + b.text);
    end_statement();
    declare(name, "multivector");
    doc_.multivectors[name.text] = MultivectorBlock{b.text, degree, {}};
  }

  void structure_stmt() {
    const Token& name = ident("a structure name");
    expect("=");
    const Token& kind = ident("a structure kind");
    expect("(");
    StructureDecl s{kind.text, {}};
    std::vector<Pos> arg_pos;
    if (!at(")")) {
      do {
        arg_pos.push_back(peek().pos);
        if (accept("[")) {
          StructureArg a;
          if (!at("]")) {
            do {
              const Pos p = peek().pos;
              const int k = integer("an index");
              if (k < 1) fail(DiagKind::dimensional, p, "indices start at 1");
              a.indices.push_back(k);
            } while (accept(","));
          }
          expect("]");
          s.args.push_back(a);
        } else {
          s.args.push_back({ident("an argument").text, {}});
        }
      } while (accept(","));
    }
    expect(")");
    end_statement();
    declare(name, "structure");
    doc_.structures[name.text] = s;
    for (std::size_t a = 0; a < arg_pos.size(); ++a)
      doc_.positions["arg:" + name.text + ":" + std::to_string(a)] = arg_pos[a];
  }

  // ---- structure validation ----

  void report(DiagKind k, const std::string& structure, std::size_t arg, std::string msg) {
    auto it = doc_.positions.find("arg:" + structure + ":" + std::to_string(arg));
    const Pos p = it != doc_.positions.end() ? it->second : doc_.positions.at("structure:" + structure);
    diags_.push_back({k, p, std::move(msg)});
  }

  // Primal frame and variance flag of a bundle.
  std::pair<std::string, bool> resolve(const std::string& b) const {
    bool dual = false;
    std::string cur = b;
    while (!doc_.bundles.at(cur).dual_of.empty()) {
      dual = !dual;
      cur = doc_.bundles.at(cur).dual_of;
    }
    return {cur, dual};
  }
  bool same_space(const std::string& a, const std::string& b) const { return resolve(a) == resolve(b); }
  bool dual_spaces(const std::string& a, const std::string& b) const {
    auto ra = resolve(a), rb = resolve(b);
    return ra.first == rb.first && ra.second != rb.second;
  }
  int rank(const std::string& b) const { return doc_.bundles.at(b).rank; }

  void validate_structures() {
    static const std::map<std::string, std::string> sigs = {
        {"algebroid", "b"},     {"crossed_module", "bbma"}, {"matched_pair", "bbaa"}, {"bialgebroid", "bb"},
        {"bicrossed", "SS"},    {"coquadratic", "bf"},      {"manin_triple", "bfblbl"}, {"rmatrix", "Sv"},
        {"courant", "bf*"},     {"invariant_h", "Sm"}};
    static const std::map<char, std::string> slot_kind = {
        {'b', "bundle"}, {'a', "action"}, {'m', "map"}, {'f', "form"}, {'v', "multivector"}, {'S', "structure"}};

    std::set<std::string> valid;
    // Kinds referencing other structures are validated after their targets.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& [name, s] : doc_.structures) {
        auto sig = sigs.find(s.kind);
        const bool refers = sig != sigs.end() && sig->second.find('S') != std::string::npos;
        if (refers != (pass == 1)) continue;
        if (sig == sigs.end()) {
          diags_.push_back({DiagKind::syntactic, doc_.positions.at("structure:" + name),
                            "unknown structure kind '" + s.kind + "'"});
          continue;
        }
        const std::string& sg = sig->second;
        const bool variadic = sg.back() == '*';
        const std::size_t fixed = variadic ? sg.size() - 1 : sg.size();
        if (s.args.size() < fixed || (!variadic && s.args.size() != fixed)) {
          diags_.push_back({DiagKind::syntactic, doc_.positions.at("structure:" + name),
                            s.kind + " expects " + std::to_string(fixed) + (variadic ? " or more" : "") +
                                " arguments"});
          continue;
        }
        bool ok = true;
        for (std::size_t a = 0; a < s.args.size() && ok; ++a) {
          const char slot = a < fixed ? sg[a] : 'l';
          const StructureArg& arg = s.args[a];
          if (slot == 'l') {
            if (!arg.name.empty()) {
              report(DiagKind::syntactic, name, a, "expected an index list");
              ok = false;
            }
            continue;
          }
          if (arg.name.empty()) {
            report(DiagKind::syntactic, name, a, "expected a name");
            ok = false;
            continue;
          }
          auto it = names_.find(arg.name);
          if (it == names_.end() || it->second != slot_kind.at(slot)) {
            report(DiagKind::referential, name, a, "undefined " + slot_kind.at(slot) + " '" + arg.name + "'");
            ok = false;
          } else if (slot == 'S' && !valid.count(arg.name)) {
            report(DiagKind::referential, name, a, "'" + arg.name + "' is not a valid structure");
            ok = false;
          }
        }
        if (ok && consistent(name, s)) valid.insert(name);
      }
  }

  bool require(bool cond, const std::string& structure, std::size_t arg, const std::string& msg) {
    if (!cond) report(DiagKind::dimensional, structure, arg, msg);
    return cond;
  }

  bool require_kind(const std::string& structure, std::size_t arg, const std::string& target, const std::string& kind) {
    if (doc_.structures.at(target).kind == kind) return true;
    report(DiagKind::referential, structure, arg, "'" + target + "' is not a " + kind);
    return false;
  }

  bool action_between(const std::string& n, std::size_t arg, const std::string& act, const std::string& actor,
                      const std::string& target) {
    const ActionBlock& a = doc_.actions.at(act);
    return require(same_space(a.actor, actor) && same_space(a.target, target), n, arg,
                   "action '" + act + "' must be " + actor + " > " + target);
  }

  bool consistent(const std::string& n, const StructureDecl& s) {
    auto arg = [&](std::size_t i) -> const std::string& { return s.args[i].name; };
    const std::string& k = s.kind;
    if (k == "crossed_module") {
      const MapBlock& m = doc_.maps.at(arg(2));
      return require(same_space(m.source, arg(0)) && same_space(m.target, arg(1)), n, 2,
                     "map '" + arg(2) + "' must be " + arg(0) + " -> " + arg(1)) &&
             action_between(n, 3, arg(3), arg(1), arg(0));
    }
    if (k == "matched_pair")
      return action_between(n, 2, arg(2), arg(0), arg(1)) && action_between(n, 3, arg(3), arg(1), arg(0));
    if (k == "bialgebroid") return require(dual_spaces(arg(0), arg(1)), n, 1, arg(1) + " must be dual to " + arg(0));
    if (k == "coquadratic")
      return require(same_space(doc_.forms.at(arg(1)).bundle, arg(0)), n, 1, "form must live on " + arg(0));
    if (k == "courant") {
      if (!require(same_space(doc_.forms.at(arg(1)).bundle, arg(0)), n, 1, "form must live on " + arg(0))) return false;
      for (std::size_t a = 2; a < s.args.size(); ++a)
        for (int i : s.args[a].indices)
          if (!require(i <= rank(arg(0)), n, a, "index " + std::to_string(i) + " out of range for " + arg(0)))
            return false;
      return true;
    }
    if (k == "manin_triple") {
      if (!require(same_space(doc_.forms.at(arg(1)).bundle, arg(0)), n, 1, "form must live on " + arg(0)))
        return false;
      std::vector<int> seen(rank(arg(0)) + 1, 0);
      for (std::size_t a : {3u, 5u}) {
        if (!require(static_cast<int>(s.args[a].indices.size()) == rank(arg(a - 1)), n, a,
                     "index list length must equal the rank of " + arg(a - 1)))
          return false;
        for (int i : s.args[a].indices) {
          if (!require(i <= rank(arg(0)), n, a, "index " + std::to_string(i) + " out of range for " + arg(0)))
            return false;
          ++seen[i];
        }
      }
      for (int i = 1; i <= rank(arg(0)); ++i)
        if (!require(seen[i] == 1, n, 3, "index lists must partition 1.." + std::to_string(rank(arg(0)))))
          return false;
      return true;
    }
    if (k == "bicrossed") {
      if (!require_kind(n, 0, arg(0), "crossed_module") || !require_kind(n, 1, arg(1), "crossed_module")) return false;
      const auto& a = doc_.structures.at(arg(0)).args;
      const auto& b = doc_.structures.at(arg(1)).args;
      return require(dual_spaces(b[0].name, a[1].name) && dual_spaces(b[1].name, a[0].name), n, 1,
                     "crossed modules must live on dual bundles");
    }
    if (k == "rmatrix") {
      if (!require_kind(n, 0, arg(0), "crossed_module")) return false;
      const MultivectorBlock& r = doc_.multivectors.at(arg(1));
      return require(r.degree == 2 && same_space(r.bundle, doc_.structures.at(arg(0)).args[0].name), n, 1,
                     "r-matrix must be a bivector on the crossed module's theta");
    }
    if (k == "invariant_h") {
      if (!require_kind(n, 0, arg(0), "matched_pair")) return false;
      const auto& mp = doc_.structures.at(arg(0)).args;
      const MapBlock& h = doc_.maps.at(arg(1));
      return require(same_space(h.source, mp[0].name) && same_space(h.target, mp[1].name), n, 1,
                     "h must be a map " + mp[0].name + " -> " + mp[1].name);
    }
    return true;
  }

  std::vector<Token> t_;
  std::size_t i_ = 0;
  std::vector<Diagnostic>& diags_;
  SdlDocument doc_;
  std::map<std::string, std::string> names_;
  std::set<std::pair<std::string, std::string>> seen_;
  std::string current_block_;
  bool started_ = false;
  bool base_seen_ = false;
};

}  // namespace

ParseResult parse(std::string_view text) {
  ParseResult out;
  std::vector<Token> toks = lex(text, out.diagnostics);
  Parser p(std::move(toks), out.diagnostics);
  SdlDocument doc = p.run();
  std::stable_sort(out.diagnostics.begin(), out.diagnostics.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.pos.line, a.pos.col) < std::tie(b.pos.line, b.pos.col);
  });
  if (out.diagnostics.empty()) out.doc = std::move(doc);
  return out;
}

}  // namespace lbcm::sdl
