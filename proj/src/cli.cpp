#include "lbcm/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lbcm/sdl.hpp"

namespace lbcm {

namespace {

using namespace sdl;

constexpr int kPass = 0, kFail = 1, kInput = 2;

struct InputError {
  std::string message;
};

Model load(const std::string& path, std::ostream& err) {
  std::ifstream in(path);
  if (!in) throw InputError{path + ": cannot read file"};
  std::stringstream ss;
  ss << in.rdbuf();
  ParseResult r = parse(ss.str());
  if (!r.ok()) {
    for (const auto& d : r.diagnostics) err << format(d, path) << "\n";
    throw InputError{path + ": " + std::to_string(r.diagnostics.size()) + " diagnostic(s)"};
  }
  return Model(std::move(*r.doc));
}

std::vector<std::string> select(const Model& m, const std::string& wanted, const std::vector<std::string>& kinds) {
  std::vector<std::string> out;
  if (!wanted.empty()) {
    auto it = m.doc().structures.find(wanted);
    if (it == m.doc().structures.end()) throw InputError{"no structure named '" + wanted + "'"};
    if (!kinds.empty() && std::find(kinds.begin(), kinds.end(), it->second.kind) == kinds.end())
      throw InputError{"structure '" + wanted + "' is a " + it->second.kind + ", which does not apply here"};
    return {wanted};
  }
  for (const auto& [name, s] : m.doc().structures)
    if (kinds.empty() || std::find(kinds.begin(), kinds.end(), s.kind) != kinds.end()) out.push_back(name);
  return out;
}

void emit(const std::string& file, const std::vector<StructureResult>& results, const std::string& format,
          std::ostream& out) {
  out << (format == "structured" ? json_report(file, results) : text_report(file, results));
}

bool all_pass(const std::vector<StructureResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const StructureResult& r) { return r.passed(); });
}

int cmd_check(const std::vector<std::string>& files, const std::string& structure, const std::string& format,
              std::ostream& out, std::ostream& err) {
  int code = kPass;
  for (const auto& f : files) {
    try {
      const Model m = load(f, err);
      std::vector<StructureResult> results;
      if (m.doc().structures.empty() && structure.empty()) {
        // A bare document: every bundle is read as an algebroid.
        for (const auto& [b, d] : m.doc().bundles)
          results.push_back({b, "algebroid", {check_algebroid(m.algebroid(b))}});
      } else {
        for (const auto& n : select(m, structure, {})) results.push_back(check_structure(m, n));
      }
      emit(f, results, format, out);
      if (!all_pass(results)) code = std::max(code, kFail);
    } catch (const InputError& e) {
      err << e.message << "\n";
      code = kInput;
    }
  }
  return code;
}

// Structures carrying a bicrossed module, built if necessary.
std::optional<BicrossedModule> as_bicrossed(const Model& m, const std::string& name, StructureResult& res) {
  const std::string& kind = m.structure(name).kind;
  try {
    if (kind == "bicrossed") return m.bicrossed(name);
    if (kind == "rmatrix") return build_from_rmatrix(m.rmatrix(name));
    const auto [mp, h] = m.invariant_h(name);
    return build_from_invariant_h(mp, h);
  } catch (const std::exception& e) {
    CheckReport r(name);
    r.add("construction", "input defines a bicrossed module", false, e.what());
    res.reports.push_back(r);
    return std::nullopt;
  }
}

StructureResult theorem_32(const Model& m, const std::string& name) {
  StructureResult res{name, m.structure(name).kind, {}};
  if (auto b = as_bicrossed(m, name, res)) {
    try {
      res.reports.push_back(theorem_sides(*b).summary(name + ": bicrossed <=> matched pair"));
    } catch (const StructureError& e) {
      CheckReport r(name);
      r.add("wiring", "dual frames and phi_up = -phi^T", false, e.what());
      res.reports.push_back(r);
    }
  }
  return res;
}

StructureResult theorem_37(const Model& m, const std::string& name) {
  StructureResult res{name, m.structure(name).kind, {}};
  CheckReport r(name + ": manin3 round trip");
  if (res.kind == "manin_triple") {
    const ManinTriple mt = m.manin_triple(name);
    try {
      const BicrossedModule b = manin3(mt);
      r.add("bicrossed", "manin3(K) is a bialgebroid crossed module", check_bicrossed(b).passed());
      const ManinTriple back = manin3_reverse(b);
      r.add("round-trip", "manin3_reverse(manin3(K)) = K", back == mt);
    } catch (const std::exception& e) {
      r.add("manin3", "K is a co-quadratic Manin triple", false, e.what());
    }
    res.reports.push_back(r);
    return res;
  }
  if (auto b = as_bicrossed(m, name, res)) {
    try {
      const ManinTriple mt = manin3_reverse(*b);
      r.add("manin-triple", "manin3_reverse(b) is a co-quadratic Manin triple", check_manin_triple(mt).passed());
      r.add("round-trip", "manin3(manin3_reverse(b)) = b", manin3(mt) == *b);
    } catch (const std::exception& e) {
      r.add("manin3-reverse", "b is a bialgebroid crossed module", false, e.what());
    }
    res.reports.push_back(r);
  }
  return res;
}

int cmd_verify(const std::string& file, const std::string& theorem, const std::string& structure,
               const std::string& format, std::ostream& out, std::ostream& err) {
  const Model m = load(file, err);
  std::vector<std::string> kinds = {"bicrossed", "rmatrix", "invariant_h"};
  if (theorem == "3.7") kinds.push_back("manin_triple");
  const std::vector<std::string> names = select(m, structure, kinds);
  if (names.empty()) throw InputError{file + ": no structure to which theorem " + theorem + " applies"};
  std::vector<StructureResult> results;
  for (const auto& n : names) results.push_back(theorem == "3.2" ? theorem_32(m, n) : theorem_37(m, n));
  emit(file, results, format, out);
  return all_pass(results) ? kPass : kFail;
}

int cmd_construct(const std::string& file, const std::string& op, const std::string& out_path, bool force,
                  const std::string& structure, std::ostream& out, std::ostream& err) {
  const Model m = load(file, err);
  static const std::map<std::string, std::vector<std::string>> accepts = {
      {"semidirect", {"crossed_module"}},
      {"double", {"matched_pair"}},
      {"courant-double", {"bialgebroid", "bicrossed"}},
      {"manin3", {"manin_triple"}},
      {"manin3-reverse", {"bicrossed"}},
      {"from-rmatrix", {"rmatrix"}},
      {"from-invariant-h", {"invariant_h"}}};
  const std::vector<std::string> names = select(m, structure, accepts.at(op));
  if (names.empty()) throw InputError{file + ": no structure to which --op " + op + " applies"};
  const std::string& name = names.front();
  if (out_path != "-" && std::filesystem::exists(out_path) && !force)
    throw InputError{out_path + ": exists; pass --force to overwrite"};

  Emitter em(m.doc().base);
  try {
    if (op == "semidirect") {
      const std::string b = em.algebroid(semidirect(m.crossed_module(name)));
      em.structure("semidirect", "algebroid", {{b, {}}});
    } else if (op == "double") {
      const std::string b = em.algebroid(build_double(m.matched_pair(name)));
      em.structure("double", "algebroid", {{b, {}}});
    } else if (op == "courant-double") {
      Bialgebroid bi;
      if (m.structure(name).kind == "bialgebroid") {
        bi = m.bialgebroid(name);
      } else {
        const BicrossedModule b = m.bicrossed(name);
        bi = {semidirect(b.cm), dual_semidirect(b.cm, b.dual_cm)};
      }
      const std::size_t n = bi.A.rank();
      std::vector<std::size_t> lo, hi;
      for (std::size_t i = 0; i < n; ++i) {
        lo.push_back(i);
        hi.push_back(n + i);
      }
      em.courant("courant_double", build_courant_double(bi), {lo, hi});
    } else if (op == "manin3") {
      em.bicrossed("bicrossed", manin3(m.manin_triple(name)));
    } else if (op == "manin3-reverse") {
      em.manin_triple("manin_triple", manin3_reverse(m.bicrossed(name)));
    } else if (op == "from-rmatrix") {
      em.bicrossed("bicrossed", build_from_rmatrix(m.rmatrix(name)));
    } else {
      const auto [mp, h] = m.invariant_h(name);
      em.bicrossed("bicrossed", build_from_invariant_h(mp, h));
    }
  } catch (const ConstructionError& e) {
    err << file << ": " << op << " on '" << name << "' failed: " << e.what() << "\n";
    return kFail;
  }

  const std::string text = print(em.doc());
  if (out_path == "-") {
    out << text;
    return kPass;
  }
  std::ofstream o(out_path);
  if (!(o << text)) throw InputError{out_path + ": cannot write file"};
  out << "wrote " << out_path << "\n";
  return kPass;
}

int cmd_fmt(const std::string& file, std::ostream& out, std::ostream& err) {
  out << print(load(file, err).doc());
  return kPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of Lie algebroid crossed modules and their doubles", "lbcm"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--report", format, "Report emitter")->check(CLI::IsMember({"text", "structured"}));
  app.fallthrough();

  std::vector<std::string> files;
  std::string file, structure, theorem, op, out_path;
  bool force = false;

  CLI::App* check = app.add_subcommand("check", "Run every applicable checker");
  check->add_option("files", files, "SDL files")->required();
  check->add_option("--structure", structure, "Only this structure");

  CLI::App* construct = app.add_subcommand("construct", "Emit a constructed structure as SDL");
  construct->add_option("file", file, "SDL file")->required();
  construct->add_option("--op", op, "Construction")
      ->required()
      ->check(CLI::IsMember({"semidirect", "double", "courant-double", "manin3", "manin3-reverse", "from-rmatrix",
                             "from-invariant-h"}));
  construct->add_option("--out", out_path, "Output file, or - for standard output")->required();
  construct->add_flag("--force", force, "Overwrite an existing output file");
  construct->add_option("--structure", structure, "Input structure");

  CLI::App* verify = app.add_subcommand("verify-theorem", "Run a correspondence theorem as a check");
  verify->add_option("file", file, "SDL file")->required();
  verify->add_option("--theorem", theorem, "3.2: bicrossed iff matched pair; 3.7: Manin triple round trip")
      ->required()
      ->check(CLI::IsMember({"3.2", "3.7"}));
  verify->add_option("--structure", structure, "Only this structure");

  CLI::App* fmt = app.add_subcommand("fmt", "Print the canonical form");
  fmt->add_option("file", file, "SDL file")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInput;
  }

  try {
    if (check->parsed()) return cmd_check(files, structure, format, out, err);
    if (construct->parsed()) return cmd_construct(file, op, out_path, force, structure, out, err);
    if (verify->parsed()) return cmd_verify(file, theorem, structure, format, out, err);
    return cmd_fmt(file, out, err);
  } catch (const InputError& e) {
    err << e.message << "\n";
    return kInput;
  } catch (const StructureError& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }
}

}  // namespace lbcm
