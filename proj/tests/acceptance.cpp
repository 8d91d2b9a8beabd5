// Acceptance gate: one line per criterion with elapsed time. Exits nonzero if
// any criterion fails or overruns its time budget.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "bicrossed_fixtures.hpp"
#include "lbcm/cli.hpp"
#include "lbcm/sdl.hpp"
#include "sdl_gen.hpp"

using namespace lbcm;
namespace fs = std::filesystem;

namespace {

const fs::path kCorpus = LBCM_CORPUS_DIR;

struct Outcome {
  bool pass = true;
  std::size_t cases = 0;
  std::string note;
  void require(bool ok, const std::string& what) {
    ++cases;
    if (!ok && pass) note = what;
    pass = pass && ok;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> corpus(const std::string& sub) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(kCorpus / sub))
    if (e.path().extension() == ".sdl") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

sdl::Model model(const fs::path& p) { return sdl::Model(*sdl::parse(slurp(p)).doc); }

std::vector<std::string> structures_of(const sdl::Model& m, const std::string& kind) {
  std::vector<std::string> out;
  for (const auto& [n, s] : m.doc().structures)
    if (s.kind == kind) out.push_back(n);
  return out;
}

GradedElement sgn(std::size_t n, const GradedElement& x) { return n % 2 ? -x : x; }

std::vector<std::pair<std::string, Algebroid>> fixture_algebroids() {
  std::vector<std::pair<std::string, Algebroid>> out = {
      {"T(R^2)", fx::tangent(fx::plane())}, {"T(R^3)", fx::tangent(fx::space3())}, {"g2", fx::g2()},
      {"so3", fx::so3()}, {"affine", fx::affine_action()}, {"so3-action", fx::so3_action()}};
  for (const auto& np : fx::valid_pairs()) {
    const BicrossedModule b = np.make();
    out.push_back({np.name + "/g", b.cm.g});
    out.push_back({np.name + "/theta", b.cm.theta});
    out.push_back({np.name + "/g*", b.dual_cm.theta});
    out.push_back({np.name + "/theta*", b.dual_cm.g});
    out.push_back({np.name + "/A", semidirect(b.cm)});
    out.push_back({np.name + "/A*", dual_semidirect(b.cm, b.dual_cm)});
  }
  return out;
}

void kernel_laws_on(Outcome& o, fx::Gen& g, const std::string& name, const Algebroid& a);

Outcome kernel_laws() {
  Outcome o;
  fx::Gen g(101);
  for (const auto& [name, a] : fixture_algebroids()) {
    try {
      kernel_laws_on(o, g, name, a);
    } catch (const std::exception& e) {
      o.require(false, name + ": " + e.what());
    }
  }
  return o;
}

void kernel_laws_on(Outcome& o, fx::Gen& g, const std::string& name, const Algebroid& a) {
  {
    o.require(check_algebroid(a).passed(), name + ": algebroid axioms");
    const Space s = a.space(), forms = s.dual();
    const std::size_t n = a.rank();
    for (int t = 0; t < 3; ++t) {
      const Section x = g.element(s, 1, 1), y = g.element(s, 1, 1), z = g.element(s, 1, 1);
      const Poly f = g.poly(a.base(), 2, 2);
      for (std::size_t k = 0; k + 1 <= n && k <= 2; ++k) {
        const GradedElement w = g.element(forms, k, 1);
        const GradedElement dw = a.differential(w);
        o.require(a.differential(dw).is_zero(), name + ": d^2 = 0");
        const GradedElement u = g.element(forms, 1, 1);
        o.require(a.differential(wedge(w, u)) == wedge(dw, u) + sgn(k, wedge(w, a.differential(u))),
                  name + ": Leibniz for d");
        const GradedElement homotopy = k == 0 ? contract(x, dw) : contract(x, dw) + a.differential(contract(x, w));
        o.require(a.lie_derivative(x, w) == homotopy, name + ": Cartan homotopy");
        if (k >= 1)
          o.require(a.lie_derivative(x, contract(y, w)) - contract(y, a.lie_derivative(x, w)) ==
                        contract(a.bracket(x, y), w),
                    name + ": [L_X, i_Y] = i_[X,Y]");
      }
      o.require(a.bracket(x, f * y) == f * a.bracket(x, y) + a.anchor_apply(x, f) * y, name + ": bracket Leibniz");
      o.require((a.bracket(x, a.bracket(y, z)) + a.bracket(y, a.bracket(z, x)) + a.bracket(z, a.bracket(x, y)))
                    .is_zero(),
                name + ": Jacobi");
      for (std::size_t p = 0; p <= 2 && p <= n; ++p)
        for (std::size_t q = 0; q <= 2 && q <= n; ++q) {
          const std::size_t r = (p + q + t) % 3;
          if (r > n) continue;
          const GradedElement P = g.element(s, p, 1), Q = g.element(s, q, 1), R = g.element(s, r, 1);
          if (q + r >= 1 && p + q >= 1 && p + r >= 1 && p + q + r >= 2 && p + q + r <= n + 2)
            o.require(a.schouten(P, a.schouten(Q, R)) ==
                          a.schouten(a.schouten(P, Q), R) + sgn((p + 1) * (q + 1), a.schouten(Q, a.schouten(P, R))),
                      name + ": graded Jacobi");
          if (q + r <= n && p + q >= 1 && p + r >= 1 && p + q + r <= n + 1)
            o.require(a.schouten(P, wedge(Q, R)) ==
                          wedge(a.schouten(P, Q), R) + sgn((p + 1) * q, wedge(Q, a.schouten(P, R))),
                      name + ": Schouten Leibniz");
        }
    }
  }
}

Outcome symplectic() {
  Outcome o;
  const BicrossedModule b = fx::symplectic_pair();
  o.require(check_algebroid(b.cm.g).passed(), "check_algebroid(g)");
  o.require(check_crossed_module(b.cm).passed(), "check_crossed_module");
  o.require(check_prop51(b.cm, b.dual_cm).passed(), "check_prop51");
  return o;
}

std::vector<std::pair<std::string, BicrossedModule>> all_pairs(bool valid, bool mutated) {
  std::vector<std::pair<std::string, BicrossedModule>> out;
  if (valid)
    for (const auto& np : fx::valid_pairs()) out.push_back({np.name, np.make()});
  if (mutated)
    for (const auto& np : fx::mutated_pairs()) out.push_back({np.name, np.make()});
  for (const char* sub : {"valid", "mutations"}) {
    if ((std::string(sub) == "valid" && !valid) || (std::string(sub) == "mutations" && !mutated)) continue;
    for (const auto& f : corpus(sub)) {
      const sdl::Model m = model(f);
      for (const auto& n : structures_of(m, "bicrossed")) out.push_back({f.filename().string() + ":" + n, m.bicrossed(n)});
    }
  }
  return out;
}

Outcome theorem_agreement() {
  Outcome o;
  for (const auto& [name, b] : all_pairs(true, true)) {
    const Equivalence eq = theorem_sides(b);
    o.require(eq.agree(), name + ": verdicts differ");
  }
  o.require(o.cases >= 6, "fewer than six fixtures");
  return o;
}

Outcome courant_doubles() {
  Outcome o;
  std::vector<std::pair<std::string, Bialgebroid>> bis;
  for (const auto& [name, b] : all_pairs(true, false))
    bis.push_back({name, {semidirect(b.cm), dual_semidirect(b.cm, b.dual_cm)}});
  for (const auto& f : corpus("valid")) {
    const sdl::Model m = model(f);
    for (const auto& n : structures_of(m, "bialgebroid")) bis.push_back({f.filename().string() + ":" + n, m.bialgebroid(n)});
  }
  for (const auto& [name, bi] : bis) {
    const CourantStructure c = build_courant_double(bi);
    const std::size_t n = bi.A.rank();
    std::vector<std::size_t> lo, hi;
    for (std::size_t i = 0; i < n; ++i) {
      lo.push_back(i);
      hi.push_back(n + i);
    }
    o.require(check_courant(c).passed(), name + ": CA axioms");
    o.require(check_dirac(c, lo).passed(), name + ": A is Dirac");
    o.require(check_dirac(c, hi).passed(), name + ": A* is Dirac");
  }
  return o;
}

Outcome restricted_brackets() {
  Outcome o;
  for (const auto& [name, b] : all_pairs(true, false))
    o.require(check_restricted_brackets(b.cm, b.dual_cm).passed(), name);
  return o;
}

Outcome manin_round_trips() {
  Outcome o;
  for (const auto& [name, b] : all_pairs(true, false)) {
    const ManinTriple mt = manin3_reverse(b);
    o.require(manin3(mt) == b, name + ": manin3 o manin3_reverse");
    o.require(manin3_reverse(manin3(mt)) == mt, name + ": manin3_reverse o manin3");
  }
  for (const auto& f : corpus("valid")) {
    const sdl::Model m = model(f);
    for (const auto& n : structures_of(m, "manin_triple")) {
      const ManinTriple mt = m.manin_triple(n);
      o.require(manin3_reverse(manin3(mt)) == mt, f.filename().string() + ": manin3_reverse o manin3");
    }
  }
  return o;
}

Outcome rmatrix_pipeline() {
  Outcome o;
  std::vector<std::pair<std::string, CrossedModuleRMatrix>> rms = {{"F4", fx::rotation_rmatrix()}};
  const sdl::Model m = model(kCorpus / "valid" / "rmatrix_f4.sdl");
  for (const auto& n : structures_of(m, "rmatrix")) rms.push_back({"rmatrix_f4.sdl:" + n, m.rmatrix(n)});
  for (const auto& [name, rm] : rms) {
    const BicrossedModule b = build_from_rmatrix(rm);
    o.require(check_bicrossed(b).passed(), name + ": check_bicrossed");
    o.require(check_rmatrix_double(rm, b).passed(), name + ": exact bialgebroid of r + r'");
  }
  return o;
}

Outcome condition_sets() {
  Outcome o;
  for (const auto& [name, b] : all_pairs(true, true)) {
    for (const CrossedModule* cm : {&b.cm, &b.dual_cm}) {
      const PairingData d{cm->g, cm->theta.space(), cm->action, cm->phi};
      o.require(invariance_sides(d).agree(), name + ": invariance identities");
    }
  }
  const MatchedPair mp = fx::coadjoint_pair();
  for (int code = 0; code < 81; ++code) {
    PolyMatrix B(mp.P.base(), 2, 2);
    int c = code;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        B(i, j) = fx::cst(mp.P.base(), c % 3 - 1);
        c /= 3;
      }
    o.require(pairing_sides(mp, B).agree(), "coadjoint pairing grid");
  }
  const MatchedPair line = fx::line_action_pair();
  for (int k = 0; k < 3; ++k) {
    PolyMatrix B(line.P.base(), 1, 1);
    B(0, 0) = k == 0 ? fx::cst(line.P.base(), 0) : k == 1 ? fx::cst(line.P.base(), 1) : fx::var(line.P.base(), 0);
    o.require(pairing_sides(line, B).agree(), "line pairing");
  }
  return o;
}

Outcome sdl_contract() {
  Outcome o;
  auto run = [](std::vector<std::string> args, std::string* err = nullptr) {
    std::ostringstream out, e;
    const int code = run_cli(args, out, e);
    if (err) *err = e.str();
    return code;
  };
  for (const char* sub : {"valid", "mutations"})
    for (const auto& f : corpus(sub)) {
      const sdl::ParseResult r = sdl::parse(slurp(f));
      if (!r.ok()) {
        o.require(false, f.string() + ": does not parse");
        continue;
      }
      const std::string canon = sdl::print(*r.doc);
      const sdl::ParseResult again = sdl::parse(canon);
      o.require(again.ok() && *again.doc == *r.doc && sdl::print(*again.doc) == canon, f.string() + ": idempotence");
    }
  fx::Gen g(909);
  for (int t = 0; t < 100; ++t) {
    const sdl::SdlDocument doc = fx::random_document(g);
    const std::string text = sdl::print(doc);
    const sdl::ParseResult r = sdl::parse(text);
    o.require(r.ok() && *r.doc == doc && sdl::print(*r.doc) == text, "random document " + std::to_string(t));
  }
  for (const auto& [sub, want] : std::vector<std::pair<std::string, int>>{{"valid", 0}, {"mutations", 1}, {"malformed", 2}})
    for (const auto& f : corpus(sub)) {
      std::string err;
      o.require(run({"check", f.string()}, &err) == want, f.string() + ": exit code");
      if (want != 2) continue;
      const sdl::ParseResult r = sdl::parse(slurp(f));
      bool positioned = !r.ok() && !r.diagnostics.empty();
      for (const auto& d : r.diagnostics) positioned = positioned && d.pos.line > 0 && d.pos.col > 0;
      o.require(positioned && err.find(f.string() + ":") != std::string::npos, f.string() + ": positioned diagnostics");
    }
  return o;
}

struct Criterion {
  int id;
  std::string title;
  std::optional<double> budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "kernel laws: d^2 = 0, Cartan, Leibniz, graded Jacobi on all fixtures", 10.0, kernel_laws},
      {2, "symplectic fixture: algebroid, crossed module, dual compatibility", 1.0, symplectic},
      {3, "bicrossed <=> matched pair verdicts agree on valid and mutated fixtures", 30.0, theorem_agreement},
      {4, "Courant doubles of fixture bialgebroids: CA:1-6 and both Dirac halves", 30.0, courant_doubles},
      {5, "restricted brackets match the Dorfman table", std::nullopt, restricted_brackets},
      {6, "Manin triple round trips are table-level identities", std::nullopt, manin_round_trips},
      {7, "r-matrix pipeline: bicrossed module and exact bialgebroid of r + r'", std::nullopt, rmatrix_pipeline},
      {8, "condition-set verdicts agree with axiom-set verdicts", std::nullopt, condition_sets},
      {9, "SDL idempotence, exit-code contract, positioned diagnostics", std::nullopt, sdl_contract},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = !c.budget_s || secs < *c.budget_s;
    const bool ok = o.pass && in_time;
    failed += !ok;
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.title << "  (" << o.cases << " checks, "
         << std::fixed << std::setprecision(3) << secs << " s";
    if (c.budget_s) line << " / budget " << std::setprecision(0) << *c.budget_s << " s";
    line << ")";
    if (!o.pass) line << "  first failure: " << o.note;
    if (!in_time) line << "  over budget";
    std::cout << line.str() << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failed ? 1 : 0;
}
