#pragma once

#include <string>
#include <string_view>

#include "domove/mip_model.hpp"

/// CPLEX-style LP text for the dominance-move model.
///
/// The emitted dialect is the subset
///   \ comment
///   Minimize
///    obj: <terms>
///   Subject To
///    <name>: <terms> <= | >= | = <rhs>
///   Bounds
///    <lb> <= <name> <= <ub>
///   Binary
///    <name>
///   End
/// Numbers use the shortest decimal form that round-trips exactly, so export
/// is byte-deterministic and parse(export(model)) reproduces the model.
namespace domove {

std::string export_lp(const MipModel& model);

/// Parses text produced by export_lp (canonical variable names and section
/// order). Malformed input raises a std::runtime_error carrying the line
/// number ("lp parse error at line N: ...").
MipModel parse_lp(std::string_view text);

}  // namespace domove
