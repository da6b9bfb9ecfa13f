#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "semilab/chernoff.hpp"
#include "semilab/funcspace.hpp"
#include "semilab/gamma.hpp"
#include "semilab/generator.hpp"
#include "semilab/grid.hpp"

namespace semilab {

using Json = nlohmann::ordered_json;

/// 17 significant digits; non-finite values print as inf / -inf / nan.
std::string format_number(double v);
/// Number, or the strings "inf" / "-inf" for non-finite values.
Json json_number(double v);

/// Header `x,value,is_neg_inf`.
std::string to_csv(const GridFunction& f);
/// {grid: {dx, span}, values, klass}; -inf stored as "-inf".
Json to_json(const GridFunction& f);
GridFunction grid_function_from_json(const Json& j);

Json to_json(const ConvergenceReport& r);
/// Columns n,h,k,sup_norm,diff_K<radius>...,lip_const,monotone_violation.
std::string to_csv(const ConvergenceReport& r);

Json to_json(const MixedConvergenceReport& r);
Json to_json(const DominationEntry& e);
Json to_json(const LipschitzVerdict& v);
Json to_json(const ComparisonReport& r);
Json to_json(const SupersolutionReport& r);

std::string membership_name(Membership m);
std::string side_name(Side s);

/// Write through a temporary file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace semilab
