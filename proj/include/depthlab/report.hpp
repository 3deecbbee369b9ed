#pragma once

#include <map>
#include <string>
#include <vector>

#include "depthlab/analyzer.hpp"

namespace depthlab {

// CSV with a `#`-prefixed key=value config echo, then a header row, then data
// rows with 9-decimal fixed-point reals. Volatile settings (output path, cache
// directory) are deliberately not echoed so reruns compare byte-identical.
std::string render_profile_csv(const DepthProfile& profile);

std::string render_bennett_csv(const std::string& source_label, const RegistrySpec& reg,
                               const std::vector<BennettRow>& rows);

// key=value pairs from the `#` header; the round-trip check rebuilds a config
// from these.
std::map<std::string, std::string> parse_config_echo(const std::string& csv);

std::string strong_side_name(StrongSide side);

}  // namespace depthlab
