#include <functional>
#include <set>
#include <sstream>

#include "lbcm/sdl.hpp"

namespace lbcm::sdl {

namespace {

std::string combination(const Combination& c, const std::function<std::string(int)>& basis) {
  std::string out;
  for (const auto& [k, p] : c) {
    if (p.is_zero()) continue;
    std::string coeff = p.to_string();
    const bool multi = p.terms().size() > 1;
    bool neg = !multi && coeff[0] == '-';
    if (neg) coeff.erase(0, 1);
    std::string term = basis(k);
    if (multi) term = "(" + coeff + ")*" + term;
    else if (coeff != "1") term = coeff + "*" + term;
    if (out.empty()) out = neg ? "-" + term : term;
    else out += (neg ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

std::string section(const Combination& c) {
  return combination(c, [](int k) { return "e" + std::to_string(k); });
}

std::string indices(const std::vector<int>& idx) {
  std::string s = "[";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? ", " : "") + std::to_string(idx[i]);
  return s + "]";
}

std::string pair_str(const IndexPair& p) { return indices({p.first, p.second}); }

}  // namespace

std::string print(const SdlDocument& doc) {
  std::vector<std::string> blocks;
  auto add = [&](const std::ostringstream& os) {
    if (!os.str().empty()) blocks.push_back(os.str());
  };

  if (doc.base.size()) {
    std::ostringstream os;
    os << "base ";
    for (std::size_t i = 0; i < doc.base.size(); ++i) os << (i ? ", " : "") << doc.base.name(i);
    os << ";\n";
    add(os);
  }

  {
    std::ostringstream os;
    std::set<std::string> done;
    for (const auto& [name, b] : doc.bundles)
      if (b.dual_of.empty()) {
        os << "bundle " << name << " " << b.rank << ";\n";
        done.insert(name);
      }
    for (bool progress = true; progress;) {
      progress = false;
      for (const auto& [name, b] : doc.bundles)
        if (!done.count(name) && done.count(b.dual_of)) {
          os << "bundle " << name << " = dual " << b.dual_of << ";\n";
          done.insert(name);
          progress = true;
        }
    }
    add(os);
  }

  {
    std::ostringstream os;
    for (const auto& [b, entries] : doc.anchors)
      for (const auto& [i, vf] : entries)
        os << "anchor " << b << ": e" << i << " = "
           << combination(vf, [&](int k) { return "d/d" + doc.base.name(k - 1); }) << ";\n";
    for (const auto& [b, entries] : doc.brackets)
      for (const auto& [key, v] : entries) os << "bracket " << b << ": " << pair_str(key) << " = " << section(v) << ";\n";
    add(os);
  }

  for (const auto& [name, a] : doc.actions) {
    std::ostringstream os;
    os << "action " << name << ": " << a.actor << " > " << a.target << ";\n";
    for (const auto& [key, v] : a.entries) os << "action " << name << ": " << pair_str(key) << " = " << section(v) << ";\n";
    add(os);
  }
  for (const auto& [name, m] : doc.maps) {
    std::ostringstream os;
    os << "map " << name << ": " << m.source << " -> " << m.target << ";\n";
    for (const auto& [k, v] : m.entries) os << "map " << name << ": e" << k << " = " << section(v) << ";\n";
    add(os);
  }
  for (const auto& [name, f] : doc.forms) {
    std::ostringstream os;
    os << "form " << name << " on " << f.bundle << ";\n";
    for (const auto& [key, v] : f.entries) os << "form " << name << ": " << pair_str(key) << " = " << v.to_string() << ";\n";
    add(os);
  }
  for (const auto& [name, m] : doc.multivectors) {
    std::ostringstream os;
    os << "multivector " << name << " on " << m.bundle << " " << m.degree << ";\n";
    for (const auto& [key, v] : m.entries)
      os << "multivector " << name << ": " << indices(key) << " = " << v.to_string() << ";\n";
    add(os);
  }
  {
    std::ostringstream os;
    for (const auto& [name, s] : doc.structures) {
      os << "structure " << name << " = " << s.kind << "(";
      for (std::size_t i = 0; i < s.args.size(); ++i)
        os << (i ? ", " : "") << (s.args[i].name.empty() ? indices(s.args[i].indices) : s.args[i].name);
      os << ");\n";
    }
    add(os);
  }

  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) out += (i ? "\n" : "") + blocks[i];
  return out;
}

}  // namespace lbcm::sdl
