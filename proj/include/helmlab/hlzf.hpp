#pragma once
#include <iosfwd>
#include <string>
#include "helmlab/grid.hpp"

namespace helmlab {

inline constexpr unsigned hlzf_version = 1;

void write_hlzf(std::ostream& os, const SampledField& f);
SampledField read_hlzf(std::istream& is);
void write_hlzf(const std::string& path, const SampledField& f);
SampledField read_hlzf(const std::string& path);

}  // namespace helmlab
