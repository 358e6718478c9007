#pragma once

#include "memkin/params.hpp"
#include "memkin/trace.hpp"

namespace memkin {

struct SweepSpec {
    double V_start = 0, V_stop = 3, V_step = 0.01;
    double dwell_ms = 50;  // metadata only
};

StateFractions dc_fractions(double V, const ModelParams& p);

TraceResult dc_sweep(const SweepSpec& spec, const ModelParams& p);

}  // namespace memkin
