#pragma once

#include "adaptation.hpp"
#include "benchmarks.hpp"
#include "de.hpp"
#include "engine.hpp"
#include "gao.hpp"
#include "means.hpp"
#include "metrics.hpp"
#include "rng.hpp"
#include "run_record.hpp"
