#pragma once

// Pure-state files.
//
// JSON: {"twice_l": 2, "amplitudes": [[re, im], ...]} with amplitudes in the
//       order m = l, l-1, ..., -l.
// CSV:  header "l,m,re,im", one row per m, a single l for the whole file.
// Numbers are written with 17 significant digits so files round-trip exactly.

#include <string>
#include <string_view>

#include "wehrl/spin.hpp"

namespace wehrl {

enum class StateFormat { kJson, kCsv };

// Without `normalize` the norm must be 1 within 1e-8; the result is always
// rescaled to unit norm. Throws ParseError (with a line number when known).
PureState parse_state_json(std::string_view text, bool normalize = false);
PureState parse_state_csv(std::string_view text, bool normalize = false);
// Format from the extension (.json / .csv), else from the first non-blank
// character.
PureState load_state(const std::string& path, bool normalize = false);
PureState parse_state(std::string_view text, StateFormat format, bool normalize = false);

std::string format_state_json(const PureState& psi);
std::string format_state_csv(const PureState& psi);
void save_state(const std::string& path, const PureState& psi, StateFormat format);

// Shortest decimal form that still uses 17 significant digits.
std::string format_double(double x);

}  // namespace wehrl
