// Random well-formed SDL documents.

#pragma once

#include "fixtures.hpp"
#include "lbcm/sdl.hpp"

namespace fx {

inline sdl::Combination random_combination(fx::Gen& g, const Base& b, int rank) {
  sdl::Combination c;
  for (int k = 1; k <= rank; ++k)
    if (g.uniform(0, 2) == 0) {
      Poly p = g.poly(b, 2, 2);
      if (!p.is_zero()) c[k] = p;
    }
  return c;
}

inline sdl::SdlDocument random_document(fx::Gen& g) {
  using namespace sdl;
  SdlDocument d;
  const int vars = g.uniform(0, 2);
  std::vector<std::string> names;
  for (int i = 0; i < vars; ++i) names.push_back("x" + std::to_string(i + 1));
  d.base = Base(names);

  std::vector<std::string> bundles;
  const int nb = g.uniform(1, 4);
  for (int i = 1; i <= nb; ++i) {
    const std::string n = "b" + std::to_string(i);
    d.bundles[n] = {g.uniform(1, 3), {}};
    bundles.push_back(n);
    if (g.uniform(0, 1)) {
      d.bundles[n + "_star"] = {d.bundles[n].rank, n};
      bundles.push_back(n + "_star");
    }
  }
  auto pick = [&] { return bundles[g.uniform(0, static_cast<int>(bundles.size()) - 1)]; };
  auto rank = [&](const std::string& b) { return d.bundles.at(b).rank; };

  for (const auto& b : bundles) {
    if (vars && g.uniform(0, 1))
      for (int i = 1; i <= rank(b); ++i)
        if (g.uniform(0, 1)) d.anchors[b][i] = random_combination(g, d.base, vars);
    if (g.uniform(0, 1))
      for (int i = 1; i <= rank(b); ++i)
        for (int j = 1; j <= rank(b); ++j)
          if (g.uniform(0, 2) == 0) d.brackets[b][{i, j}] = random_combination(g, d.base, rank(b));
  }
  const int na = g.uniform(0, 2);
  for (int i = 0; i < na; ++i) {
    ActionBlock a{pick(), pick(), {}};
    for (int x = 1; x <= rank(a.actor); ++x)
      for (int y = 1; y <= rank(a.target); ++y)
        if (g.uniform(0, 2) == 0) a.entries[{x, y}] = random_combination(g, d.base, rank(a.target));
    d.actions["act" + std::to_string(i)] = a;
  }
  const int nm = g.uniform(0, 2);
  for (int i = 0; i < nm; ++i) {
    MapBlock m{pick(), pick(), {}};
    for (int x = 1; x <= rank(m.source); ++x)
      if (g.uniform(0, 1)) m.entries[x] = random_combination(g, d.base, rank(m.target));
    d.maps["map" + std::to_string(i)] = m;
  }
  if (g.uniform(0, 1)) {
    FormBlock f{pick(), {}};
    for (int x = 1; x <= rank(f.bundle); ++x)
      for (int y = x; y <= rank(f.bundle); ++y)
        if (g.uniform(0, 1)) {
          Poly p = g.poly(d.base, 2, 2);
          if (!p.is_zero()) f.entries[{x, y}] = p;
        }
    d.forms["C"] = f;
    d.structures["K"] = {"coquadratic", {{f.bundle, {}}, {"C", {}}}};
    d.structures["E"] = {"courant", {{f.bundle, {}}, {"C", {}}, {{}, {1}}}};
  }
  if (g.uniform(0, 1)) {
    const std::string b = pick();
    MultivectorBlock m{b, g.uniform(1, rank(b)), {}};
    if (m.degree == 1)
      for (int x = 1; x <= rank(b); ++x) m.entries[{x}] = Poly::constant(d.base, g.coeff());
    else {
      std::vector<int> idx;
      for (int x = 1; x <= m.degree; ++x) idx.push_back(x);
      m.entries[idx] = g.poly(d.base) + Poly::constant(d.base, 1);
    }
    d.multivectors["w"] = m;
  }
  d.structures["A"] = {"algebroid", {{pick(), {}}}};
  // A well-typed crossed module on fresh bundles.
  if (g.uniform(0, 1)) {
    d.bundles["th"] = {1, {}};
    d.bundles["gg"] = {2, {}};
    MapBlock m{"th", "gg", {}};
    m.entries[1] = random_combination(g, d.base, 2);
    d.maps["phi"] = m;
    d.actions["rho"] = ActionBlock{"gg", "th", {}};
    d.structures["cm"] = {"crossed_module", {{"th", {}}, {"gg", {}}, {"phi", {}}, {"rho", {}}}};
  }
  return d;
}

}  // namespace fx
