#pragma once

// Umbrella header: survey disagreement indices and their VAR analysis.

#include "disvar/config.hpp"
#include "disvar/csv.hpp"
#include "disvar/errors.hpp"
#include "disvar/indicators.hpp"
#include "disvar/irf.hpp"
#include "disvar/linalg.hpp"
#include "disvar/minnesota.hpp"
#include "disvar/month.hpp"
#include "disvar/pipeline.hpp"
#include "disvar/rng.hpp"
#include "disvar/series.hpp"
#include "disvar/shares.hpp"
#include "disvar/simulate.hpp"
#include "disvar/stats.hpp"
#include "disvar/svg.hpp"
#include "disvar/var.hpp"
#include "disvar/version.hpp"
