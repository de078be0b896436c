#pragma once

#include "qhtk/chain_complex.hpp"
#include "qhtk/cobordism.hpp"
#include "qhtk/equivariant.hpp"
#include "qhtk/hypermatrix.hpp"
#include "qhtk/lattice.hpp"
#include "qhtk/spectral.hpp"
#include "qhtk/struct_ring.hpp"

#include "json.hpp"

#include <string>

namespace qhtk::json_io {

using nlohmann::json;

// Exact values travel as strings ("5", "-4/3"); plain JSON integers are
// accepted on input.
Rat rat_from_json(const json& v);
json rat_to_json(const Rat& r);
json int_to_json(const Int& v);

IntMatrix int_matrix_from_json(const json& v);
json int_matrix_to_json(const IntMatrix& m);

// { "coeff": "Z"|"Q"|"Z2", "dims": [...], "boundaries": [ [[...]], ... ] }
// boundaries list covers degrees 1..n (one fewer entry than dims).
ChainComplex chain_complex_from_json(const json& v);
json chain_complex_to_json(const ChainComplex& c);

// adds "action": [[...]] and boundary entries as [a, b] pairs for a + b*g
GroupRingComplex group_ring_from_json(const json& v);

// base complex fields plus "levels": [[...], ...]
FilteredComplex filtered_from_json(const json& v);

// { "format": [2,2,2], "entries": { "000": "1", ... } }, absent entries are 0
Hypermatrix hypermatrix_from_json(const json& v);
json hypermatrix_to_json(const Hypermatrix& a);

// { "rank": n, "unit": 0, "labels": [...], "mu": <hypermatrix> }
StructRing ring_from_json(const json& v);
json ring_to_json(const StructRing& r);

// ring fields plus "ends": [ { "name", "delta": [[...],[...]], "unit_sign" } ]
CobordismData cobordism_from_json(const json& v);
json cobordism_to_json(const CobordismData& c);

// { "n": 2, "gram": [[...]], "spheres": [[...]], "surgery_classes": [[...]] }
Lattice lattice_from_json(const json& v);

json homology_to_json(const std::vector<HomologyGroup>& h);
json checks_to_json(const std::vector<Check>& checks);
json page_to_json(const Page& p);
json convergence_to_json(const ConvergenceReport& r);
json gw_report_to_json(const GWReport& r);
json cobordism_report_to_json(const CobordismReport& r);
json kernel_point_to_json(const KernelPoint& p);

}  // namespace qhtk::json_io
