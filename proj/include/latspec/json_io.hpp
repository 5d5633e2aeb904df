#pragma once

#include <json.hpp>

#include "latspec/aniso.hpp"
#include "latspec/enumerate.hpp"
#include "latspec/families.hpp"
#include "latspec/spectra.hpp"
#include "latspec/weyl.hpp"

namespace latspec {

using json = nlohmann::ordered_json;

// Lattice file schema: {"dim": d, "basis": [[row0...], [row1...], ...]}
json lattice_to_json(const Lattice& L);
Lattice lattice_from_json(const json& j);

// Decomposition schema:
// {"blocks": [{"basis": [[col-major rows...]], "rate": r}, ...],
//  "classification": {"V": [...], "Vp": [...], "W": [...]}}
json decomposition_to_json(const Decomposition& dec);
Decomposition decomposition_from_json(const json& j);

json point_to_json(const LatticePoint& p);
json prefix_to_json(const OrderedPrefix& prefix);
json spectrum_to_json(const SpectrumPrefix& s);
json minima_to_json(const SuccessiveMinima& sm);
json invariant_to_json(const InvariantReport& rep);
json weyl_report_to_json(const WeylScanReport& rep);
json optimize_report_to_json(const OptimizeReport& rep, bool with_trace = true);
json exponent_fit_to_json(const ExponentFit& fit);
json degeneracy_to_json(const DegeneracyScan& scan);
json aniso_report_to_json(const AnisoReport& rep);

json error_to_json(const Error& e);

}  // namespace latspec
