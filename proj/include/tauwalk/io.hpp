// JSON/CSV plumbing shared by the command-line tool and the tests: potential
// and operator-graph files, partition serialization, atomic report writes.
#pragma once

#include <string>

#include "json.hpp"
#include "tauwalk/glinf.hpp"
#include "tauwalk/numeric.hpp"
#include "tauwalk/partition.hpp"
#include "tauwalk/potential.hpp"

namespace tw {

using Json = nlohmann::ordered_json;

Json partition_json(const Partition& p);
Partition partition_from_json(const Json& j);

// {"kind":"constant_rate","r":"3/2"}, {"kind":"gauss","c":"1/2"},
// {"kind":"table","base":-2,"values":[...],"tail_slope":0.5}; every kind
// accepts "hard_wall": true.
Json potential_json(const Potential& U);
Potential potential_from_json(const Json& j);
Potential load_potential(const std::string& path);

// {"arcs":[{"from":k,"to":i,"weight":w},...],"window":[lo,hi]}
Json graph_json(const GraphOperator<double>& A);
GraphOperator<double> graph_from_json(const Json& j);
GraphOperator<double> load_graph(const std::string& path);

Json load_json(const std::string& path);

// Write-to-temporary-then-rename; the destination is never seen half-written.
void atomic_write(const std::string& path, const std::string& content);

std::string format_float(double v);  // shortest round-trip decimal
std::string format_sig9(double v);   // 9 significant digits, for CSV columns

}  // namespace tw
