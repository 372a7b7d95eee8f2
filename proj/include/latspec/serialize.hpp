#pragma once

#include <json.hpp>

#include "latspec/lattice.hpp"
#include "latspec/norton.hpp"
#include "latspec/spectral.hpp"

namespace latspec {

using Json = nlohmann::ordered_json;

Json family_to_json(const Family& f);
Family family_from_json(const Json& j);

Json element_to_json(const LatticeElement& e);
Json lattice_to_json(const GraphLattice& lattice);

Json spectral_table_to_json(const SpectralTable& table);
Json tight_frame_report_to_json(const TightFrameReport& report);
Json norton_report_to_json(const NortonProductReport& report);

}  // namespace latspec
