#pragma once
#include "cli/config.hpp"
#include "cli/output.hpp"

namespace helmlab::cli {

// Runs cfg.command, writes its artifacts into out and returns the diagnostics
// that go into the manifest.
Json run_pipeline(const RunConfig& cfg, OutputDir& out);

SampledField make_source(const RunConfig& cfg);

// Profile whose transform is exp(1 - 1/(1 - t^2)), t = (|xi| - center)/width.
SampledField ring_profile(const GridSpec& g, double center, double width);

}  // namespace helmlab::cli
