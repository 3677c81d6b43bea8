#include "bsfe/grid.hpp"

#include <algorithm>

#include "bsfe/error.hpp"

namespace bsfe {

std::vector<std::vector<long>> gridPoints(int l, int m) {
  std::vector<std::vector<long>> out;
  if (m < 0) return out;
  std::vector<long> t(l, 0);
  while (true) {
    out.push_back(t);
    int i = l - 1;
    while (i >= 0 && t[i] == m) t[i--] = 0;
    if (i < 0) break;
    ++t[i];
  }
  return out;
}

MultiPoly specializeVariables(const MultiPoly& h, const std::vector<std::string>& names, const std::vector<long>& values) {
  std::map<std::string, Rational> a;
  for (std::size_t i = 0; i < names.size(); ++i) a[names[i]] = values[i];
  return h.evaluate(a);
}

bool gridZeroTest(const MultiPoly& h, const std::vector<std::string>& gridVariables, int m) {
  for (const auto& name : gridVariables) {
    int idx = h.variableIndex(name);
    if (idx >= 0 && h.degreeIn(idx) > m)
      throw InvalidArgument("degree " + std::to_string(h.degreeIn(idx)) + " in " + name + " exceeds grid bound " +
                            std::to_string(m));
  }
  for (const auto& t : gridPoints(static_cast<int>(gridVariables.size()), m))
    if (!specializeVariables(h, gridVariables, t).isZero()) return false;
  return true;
}

MultiPoly interpolateFromGrid(const std::map<std::vector<long>, MultiPoly>& values,
                              const std::vector<std::string>& gridVariables, int m) {
  const int l = static_cast<int>(gridVariables.size());
  auto pts = gridPoints(l, m);
  std::vector<std::string> coeffVars;
  for (const auto& t : pts) {
    auto it = values.find(t);
    if (it == values.end()) throw InvalidArgument("grid value missing at " + formatVector(t));
    for (const auto& v : it->second.variables())
      if (std::find(coeffVars.begin(), coeffVars.end(), v) == coeffVars.end() &&
          std::find(gridVariables.begin(), gridVariables.end(), v) == gridVariables.end())
        coeffVars.push_back(v);
  }
  std::vector<std::string> all = coeffVars;
  all.insert(all.end(), gridVariables.begin(), gridVariables.end());
  // basis[i][k] = Lagrange polynomial in grid variable i equal to 1 at k, 0 at other grid nodes.
  std::vector<std::vector<MultiPoly>> basis(l);
  for (int i = 0; i < l; ++i) {
    MultiPoly s = MultiPoly::variable(all, gridVariables[i]);
    for (int k = 0; k <= m; ++k) {
      MultiPoly lk = MultiPoly::constant(all, 1);
      for (int j = 0; j <= m; ++j) {
        if (j == k) continue;
        lk = lk * (s - MultiPoly::constant(all, j));
        lk *= Rational(1) / Rational(k - j);
      }
      basis[i].push_back(std::move(lk));
    }
  }
  MultiPoly h(all);
  for (const auto& t : pts) {
    const MultiPoly& v = values.at(t);
    if (v.isZero()) continue;
    MultiPoly term = v.embed(all);
    for (int i = 0; i < l; ++i) term = term * basis[i][t[i]];
    h += term;
  }
  return h;
}

}  // namespace bsfe
