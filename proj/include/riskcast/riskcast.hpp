#pragma once

#include "riskcast/edge.hpp"
#include "riskcast/errors.hpp"
#include "riskcast/hac.hpp"
#include "riskcast/io.hpp"
#include "riskcast/meta.hpp"
#include "riskcast/report.hpp"
#include "riskcast/risk.hpp"
#include "riskcast/rng.hpp"
#include "riskcast/serialize.hpp"
#include "riskcast/series.hpp"
#include "riskcast/simulate.hpp"
