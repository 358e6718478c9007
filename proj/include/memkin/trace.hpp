#pragma once

#include <string>
#include <vector>

#include "memkin/nucleation.hpp"
#include "memkin/params.hpp"

namespace memkin {

enum class TraceMode { Potentiation, Depression, Cycle, Dc };

const char* mode_name(TraceMode m);

struct ConservationStats {
    double max_current_dev = 0;  // worst relative link-flux disagreement
    double max_norm_dev = 0;     // worst |sum P - 1|
    double max_fraction_dev = 0; // worst |sum f - 1|
};

struct TraceResult {
    TraceMode mode = TraceMode::Potentiation;
    std::vector<double> level;  // pulse index or voltage
    std::vector<double> current;
    std::vector<StateFractions> fractions;
    ModelParams params{};
    ConservationStats conservation;
    std::size_t split = 0;  // cycle traces: first index of the depression segment
};

}  // namespace memkin
