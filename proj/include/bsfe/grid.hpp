#pragma once

#include <map>
#include <string>
#include <vector>

#include "bsfe/multipoly.hpp"

namespace bsfe {

/// Points of {0..m}^l in lexicographic order.
std::vector<std::vector<long>> gridPoints(int l, int m);

/// Substitutes integer values for the named variables; the result lives over
/// the remaining variables.
MultiPoly specializeVariables(const MultiPoly& h, const std::vector<std::string>& names, const std::vector<long>& values);

/// Decides h == 0 by evaluating on {0..m}^l in the grid variables. Exact
/// whenever every grid variable has degree <= m in h; larger degrees raise
/// InvalidArgument because the test would be unsound.
bool gridZeroTest(const MultiPoly& h, const std::vector<std::string>& gridVariables, int m);

/// The unique polynomial of degree <= m in each grid variable with the given
/// values on {0..m}^l. Values may carry further variables (the coefficient
/// ring); the result lives over those followed by the grid variables.
MultiPoly interpolateFromGrid(const std::map<std::vector<long>, MultiPoly>& values,
                              const std::vector<std::string>& gridVariables, int m);

}  // namespace bsfe
