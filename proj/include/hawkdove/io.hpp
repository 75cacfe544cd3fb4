#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hawkdove/bifurcation.hpp"
#include "hawkdove/integrator.hpp"
#include "hawkdove/nash.hpp"
#include "hawkdove/two_strategy.hpp"

namespace hawkdove::io {

// Shortest text that reads back to the same double (17 significant digits).
std::string format_double(double x);

void write_region_map_csv(std::ostream& os, const RegionMap& m);
RegionMap read_region_map_csv(std::istream& is);

void write_trajectory_csv(std::ostream& os, const Trajectory& t);
std::vector<Sample> read_trajectory_csv(std::istream& is);
void write_trajectory_sidecar(std::ostream& os, const Params& p, const Trajectory& t);

void write_trajectory1d_csv(std::ostream& os, const two::Trajectory1D& t);

void write_nash_json(std::ostream& os, const std::vector<NashReport>& reports);

}  // namespace hawkdove::io
