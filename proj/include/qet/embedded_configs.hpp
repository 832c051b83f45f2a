#pragma once

// Raw copies of the shipped data files, generated into the build tree so the
// library works without a data directory at runtime.
#include "qet/embedded_tech_defaults.hpp"    // qet::embedded::tech_defaults_json
#include "qet/embedded_concat_formulas.hpp"  // qet::embedded::concat_formulas_json
