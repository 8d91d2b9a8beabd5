#include <sstream>

#include <json.hpp>

#include "lbcm/sdl.hpp"

namespace lbcm::sdl {

bool StructureResult::passed() const {
  for (const auto& r : reports)
    if (!r.passed()) return false;
  return true;
}

namespace {

std::string witness_str(const std::vector<int>& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return "(" + s + ")";
}

// A kernel call that may reject its input outright.
template <class F>
void guarded(std::vector<CheckReport>& out, const std::string& structure, const std::string& id,
             const std::string& law, F&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    CheckReport r(structure);
    r.add(id, law, false, e.what());
    out.push_back(r);
  }
}

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> v;
  for (std::size_t i = lo; i < hi; ++i) v.push_back(i);
  return v;
}

void courant_checks(std::vector<CheckReport>& out, const CourantStructure& c,
                    const std::vector<std::vector<std::size_t>>& halves) {
  out.push_back(check_courant(c));
  for (const auto& h : halves) out.push_back(check_dirac(c, h));
}

}  // namespace

StructureResult check_structure(const Model& m, const std::string& name) {
  const StructureDecl& s = m.structure(name);
  StructureResult res{name, s.kind, {}};
  auto& out = res.reports;
  const std::string& k = s.kind;

  if (k == "algebroid") {
    out.push_back(check_algebroid(m.algebroid(s.args[0].name)));
  } else if (k == "crossed_module") {
    out.push_back(check_crossed_module(m.crossed_module(name)));
  } else if (k == "matched_pair") {
    out.push_back(check_matched_pair(m.matched_pair(name)));
  } else if (k == "bialgebroid") {
    const Bialgebroid b = m.bialgebroid(name);
    out.push_back(check_bialgebroid(b));
    const std::size_t n = b.A.rank();
    courant_checks(out, build_courant_double(b), {range(0, n), range(n, 2 * n)});
  } else if (k == "bicrossed") {
    const BicrossedModule b = m.bicrossed(name);
    guarded(out, name, "wiring", "dual frames and phi_up = -phi^T", [&] { out.push_back(check_bicrossed(b)); });
    out.push_back(check_prop51(b.cm, b.dual_cm));
    out.push_back(check_lemma_identities(b));
    out.push_back(check_restricted_brackets(b.cm, b.dual_cm));
  } else if (k == "coquadratic") {
    out.push_back(check_coquadratic(m.coquadratic(name)));
  } else if (k == "manin_triple") {
    out.push_back(check_manin_triple(m.manin_triple(name)));
  } else if (k == "rmatrix") {
    const CrossedModuleRMatrix rm = m.rmatrix(name);
    out.push_back(check_crossed_module(rm.cm));
    guarded(out, name, "rmatrix-invariance", "x > [r, r] = 0", [&] {
      const BicrossedModule b = build_from_rmatrix(rm);
      CheckReport ok(name);
      ok.add("rmatrix-invariance", "x > [r, r] = 0", true);
      out.push_back(ok);
      out.push_back(check_bicrossed(b));
      out.push_back(check_rmatrix_double(rm, b));
    });
  } else if (k == "courant") {
    guarded(out, name, "metric", "symmetric and invertible over the polynomial ring",
            [&] { courant_checks(out, m.courant(name), m.courant_halves(name)); });
  } else if (k == "invariant_h") {
    const auto [mp, h] = m.invariant_h(name);
    out.push_back(check_matched_pair(mp));
    out.push_back(check_pairing_conditions(mp, h));
  }
  return res;
}

std::string text_report(const std::string& file, const std::vector<StructureResult>& results) {
  std::ostringstream os;
  bool all = true;
  os << "file " << file << "\n";
  for (const auto& s : results) {
    all = all && s.passed();
    os << "structure " << s.name << " (" << s.kind << "): " << (s.passed() ? "PASS" : "FAIL") << "\n";
    for (const auto& r : s.reports) {
      os << "  " << r.structure() << ": " << (r.passed() ? "pass" : "FAIL") << "\n";
      for (const auto& e : r.entries()) {
        os << "    " << (e.pass ? "pass" : "FAIL") << "  " << e.id;
        if (!e.witness.empty()) os << " at " << witness_str(e.witness);
        if (!e.context.empty()) os << " [" << e.context << "]";
        if (e.pass) {
          if (e.cases) os << "  (" << e.cases << " cases)";
        } else {
          os << "  " << e.law << "  residual: " << e.residual;
        }
        os << "\n";
      }
    }
  }
  os << "verdict: " << (all ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string json_report(const std::string& file, const std::vector<StructureResult>& results) {
  using nlohmann::json;
  json structures = json::array();
  bool all = true;
  for (const auto& s : results) {
    all = all && s.passed();
    json reports = json::array();
    for (const auto& r : s.reports) {
      json entries = json::array();
      for (const auto& e : r.entries())
        entries.push_back({{"id", e.id},
                           {"law", e.law},
                           {"status", e.pass ? "pass" : "fail"},
                           {"witness", e.witness},
                           {"context", e.context},
                           {"residual", e.residual},
                           {"cases", e.cases}});
      reports.push_back({{"structure", r.structure()}, {"passed", r.passed()}, {"entries", entries}});
    }
    structures.push_back({{"name", s.name}, {"kind", s.kind}, {"passed", s.passed()}, {"reports", reports}});
  }
  json out{{"schema", "lbcm-report/1"}, {"file", file}, {"passed", all}, {"structures", structures}};
  return out.dump(2) + "\n";
}

}  // namespace lbcm::sdl
